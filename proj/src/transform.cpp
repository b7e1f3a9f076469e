#include <rcmforge/frames.hpp>
#include <rcmforge/transform.hpp>
#include <rcmforge/validate.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace rcm
{

using tl::Formula;

std::string_view to_string( Target target )
{
  return target == Target::MTL ? "MTL" : "CTL";
}

std::optional<Target> target_from_string( std::string_view text )
{
  if ( text == "mtl" || text == "MTL" )
    return Target::MTL;
  if ( text == "ctl" || text == "CTL" )
    return Target::CTL;
  return std::nullopt;
}

std::string_view to_string( Completeness completeness )
{
  return completeness == Completeness::Full ? "Full" : "Partial";
}

namespace
{

constexpr std::array<Rule, 25> kRules{ {
    { 1, "Action", "A: do something", "", true, true },
    { 2, "Condition", "If S", "Action", true, true },
    { 3, "Trigger", "When S", "Action", true, true },
    { 4, "Conditions and triggers", "When S, IF Q", "Action", true, true },
    { 5, "StartUp", "After S", "Pre-condition/action", true, true },
    { 6, "EndUp", "Before S", "Pre-condition/action", true, true },
    { 7, "EndUp", "Until S", "Pre-condition/action", true, true },
    { 8, "StartUp and EndUp", "After Q & Before S", "Pre-condition/action", true, true },
    { 9, "StartUp and EndUp", "After Q Until S; While Z", "Pre-condition/action", true, true },
    { 10, "Pre-elapsed-time", "after c time", "Condition/Action", true, false },
    { 11, "Pre-elapsed-time", "after at-most c time", "Condition/Action", true, false },
    { 12, "Pre-elapsed-time", "after at-least c time", "Condition/Action", true, false },
    { 13, "Pre-elapsed-time", "after less-than c time", "Condition/Action", true, false },
    { 14, "Pre-elapsed-time", "after greater-than c time", "Condition/Action", true, false },
    { 15, "Valid-time", "for c time", "Condition/Trigger/Action", true, false },
    { 16, "Valid-time", "for at-most c time", "Condition/Trigger/Action", true, false },
    { 17, "Valid-time", "for at-least c time", "Condition/Trigger/Action", true, false },
    { 18, "Valid-time", "for less-than c time", "Condition/Trigger/Action", true, false },
    { 19, "Valid-time", "for greater-than c time", "Condition/Trigger/Action", true, false },
    { 20, "In-between-time", "every c time", "Action/Trigger", true, false },
    { 21, "In-between-time", "every at-most c time", "Action/Trigger", true, false },
    { 22, "In-between-time", "every at-least c time", "Action/Trigger", true, false },
    { 23, "In-between-time", "every less-than c time", "Action/Trigger", true, false },
    { 24, "In-between-time", "every greater-than c time", "Action/Trigger", true, false },
    { 25, "Hidden-constraint", "Whose S", "Any component", false, true },
} };

constexpr std::array<TimeRelation, 5> kRelations{ TimeRelation::Exactly, TimeRelation::AtMost, TimeRelation::AtLeast,
                                                  TimeRelation::LessThan, TimeRelation::GreaterThan };

Formula G( Formula f )
{
  return Formula::globally( std::move( f ) );
}

Formula F( Formula f )
{
  return Formula::finally( std::move( f ) );
}

Formula AG( Formula f )
{
  return Formula::all_paths( G( std::move( f ) ) );
}

Formula AF( Formula f )
{
  return Formula::all_paths( F( std::move( f ) ) );
}

Formula outer( Formula f, Target target )
{
  return target == Target::MTL ? G( std::move( f ) ) : AG( std::move( f ) );
}

/* rows 5-9 */
Formula scope_formula( int row, Target target, Formula const& p, Formula const& s, Formula const& q )
{
  auto const not_s = Formula::negation( s );
  if ( target == Target::MTL )
  {
    switch ( row )
    {
    case 5:
      return G( Formula::implies( s, F( p ) ) );
    case 6:
      return Formula::implies( F( s ), Formula::until( F( Formula::disj( p, s ) ), s ) );
    case 7:
      return Formula::until( F( p ), s );
    case 8:
      return G( Formula::implies( Formula::conj( Formula::conj( q, not_s ), F( s ) ),
                                  Formula::until( F( Formula::disj( p, s ) ), s ) ) );
    default:
      return G( Formula::implies( Formula::conj( q, not_s ), F( Formula::until( p, s ) ) ) );
    }
  }
  auto const before = Formula::all_paths(
      Formula::weak_until( Formula::disj( AF( Formula::disj( p, s ) ), AG( not_s ) ), s ) );
  switch ( row )
  {
  case 5:
    return AG( Formula::implies( s, AG( AF( p ) ) ) );
  case 6:
    return before;
  case 7:
    return Formula::all_paths( Formula::until( AF( p ), s ) );
  case 8:
    return AG( Formula::implies( Formula::conj( q, not_s ), before ) );
  default:
    return AG( Formula::implies( Formula::conj( q, not_s ),
                                 Formula::all_paths( Formula::weak_until( AF( Formula::disj( p, s ) ), s ) ) ) );
  }
}

tl::TimeBound bound_of( TimeSpec const& time )
{
  return { time.formal_op ? *time.formal_op : formal_op_of( time.relation ), time.value, time.unit };
}

std::size_t relation_offset( TimeRelation relation )
{
  return static_cast<std::size_t>( std::find( kRelations.begin(), kRelations.end(), relation ) - kRelations.begin() );
}

Property base_property( ComponentKind kind, bool pre_side )
{
  switch ( kind )
  {
  case ComponentKind::Condition:
    return Property::C;
  case ComponentKind::Trigger:
    return Property::T;
  case ComponentKind::Action:
    return Property::A;
  case ComponentKind::ScopeStartup:
    return pre_side ? Property::SP : Property::SA;
  case ComponentKind::ScopeEndup:
    break;
  }
  return pre_side ? Property::EP : Property::EA;
}

/* every string field of the semantics equal to `from` becomes `to` */
FormalSemantics rename_term( FormalSemantics semantics, std::string const& from, std::string const& to )
{
  auto swap = [&]( std::string& s ) {
    if ( s == from )
      s = to;
  };
  std::visit(
      [&]( auto& f ) {
        using T = std::decay_t<decltype( f )>;
        if constexpr ( std::is_same_v<T, ProcessSemantics> )
        {
          std::for_each( f.args.begin(), f.args.end(), swap );
        }
        else if constexpr ( std::is_same_v<T, RelationalSemantics> )
        {
          swap( f.lhs );
          swap( f.rhs );
        }
        else
        {
          swap( f.lhs );
          std::for_each( f.args.begin(), f.args.end(), swap );
        }
      },
      semantics );
  return semantics;
}

FormalSemantics const& formal_of( Predicate const& predicate )
{
  if ( !predicate.formal )
  {
    std::string text;
    for ( auto const& o : predicate.operands )
      text += ( text.empty() ? "" : " " ) + o.text;
    throw ContractError( "predicate without formal semantics: '" + text + "'" );
  }
  return *predicate.formal;
}

/* atom of a predicate. With `hidden`, every hidden constraint is pushed to it
   in post-order and a `that` host term is replaced by its bound variable. */
Formula predicate_atom( Predicate const& predicate, std::vector<Formula>* hidden )
{
  auto semantics = formal_of( predicate );
  for ( auto const& operand : predicate.operands )
  {
    if ( !operand.hidden )
      continue;
    auto const bound = predicate_atom( operand.hidden->predicate, hidden );
    if ( !hidden )
      continue;
    hidden->push_back( bound );
    auto const& inner = operand.hidden->predicate;
    if ( operand.hidden->marker == RelativeMarker::That && !inner.operands.empty() )
      semantics = rename_term( std::move( semantics ), term_of( operand.text ), term_of( inner.operands.front().text ) );
  }
  return Formula::atom( std::move( semantics ), predicate.negated );
}

bool has_hidden( Predicate const& predicate )
{
  return std::any_of( predicate.operands.begin(), predicate.operands.end(),
                      []( Operand const& o ) { return o.has_hidden(); } );
}

class Compiler
{
public:
  explicit Compiler( Target target ) : _target( target ) {}

  Formula component( Component const& c, bool pre_side )
  {
    auto const base = base_property( c.kind, pre_side );
    Formula f = Formula::prop( "P" );
    if ( has_hidden( c.core ) )
    {
      if ( _target == Target::MTL )
      {
        f = G( predicate_atom( c.core, nullptr ) );
        drop( Property::Hidden, 25, std::string( kMtlHiddenReason ) );
      }
      else
      {
        std::vector<Formula> constraints;
        f = predicate_atom( c.core, &constraints );
        for ( auto it = constraints.rbegin(); it != constraints.rend(); ++it )
          f = Formula::exists( *it, f );
        f = AG( f );
      }
    }
    else
    {
      f = predicate_atom( c.core, nullptr );
    }

    for ( auto slot : { TimeSlot::Valid, TimeSlot::PreElapsed, TimeSlot::InBetween } )
    {
      auto const& time = c.time( slot );
      if ( !time )
        continue;
      if ( _target == Target::MTL )
        f = attach_time_semantics( f, *time, slot );
      else
        drop( *time_property( base, slot ), time_rule( slot, time->relation ), std::string( kCtlTimeReason ) );
    }
    return f;
  }

  std::optional<Formula> tree( std::optional<ComponentTree> const& t )
  {
    if ( !t )
      return std::nullopt;
    return aggregate_tree( *t, [&]( Component const& c ) { return component( c, true ); } );
  }

  std::optional<PreparedScope> scope( std::optional<Scope> const& s, bool pre_side )
  {
    if ( !s )
      return std::nullopt;
    PreparedScope prepared;
    if ( s->startup )
      prepared.startup = component( *s->startup, pre_side );
    if ( s->endup )
      prepared.endup = component( *s->endup, pre_side );
    prepared.endup_kind = s->endup_kind;
    return prepared;
  }

  std::vector<DroppedProperty> take_dropped() { return std::move( _dropped ); }

private:
  void drop( Property property, int rule, std::string reason )
  {
    for ( auto const& d : _dropped )
    {
      if ( d.property == property && d.rule == rule )
        return;
    }
    _dropped.push_back( { property, rule, std::move( reason ) } );
  }

  Target _target;
  std::vector<DroppedProperty> _dropped;
};

} // namespace

std::span<Rule const> rule_table()
{
  return kRules;
}

Rule const& rule( int index )
{
  if ( index < 1 || index > static_cast<int>( kRules.size() ) )
    throw ContractError( "no rule " + std::to_string( index ) );
  return kRules[static_cast<std::size_t>( index - 1 )];
}

int time_rule( TimeSlot slot, TimeRelation relation )
{
  int const base = slot == TimeSlot::PreElapsed ? 10 : slot == TimeSlot::Valid ? 15 : 20;
  return base + static_cast<int>( relation_offset( relation ) );
}

tl::Formula instantiate_rule( int index, Target target, RuleArguments const& arguments )
{
  auto const& row = rule( index );
  if ( ( target == Target::MTL && !row.mtl ) || ( target == Target::CTL && !row.ctl ) )
  {
    throw ExpressibilityError( "not expressible in " + std::string( to_string( target ) ),
                               "rule " + std::to_string( index ) );
  }
  auto const& p = arguments.p;
  auto const& s = arguments.s;
  auto const& q = arguments.q;
  if ( index == 1 )
    return p;
  if ( index <= 3 )
    return outer( Formula::implies( s, p ), target );
  if ( index == 4 )
    return outer( Formula::implies( Formula::conj( s, q ), p ), target );
  if ( index <= 9 )
    return scope_formula( index, target, p, s, q );
  if ( index <= 24 )
  {
    auto const slot = index < 15 ? TimeSlot::PreElapsed : index < 20 ? TimeSlot::Valid : TimeSlot::InBetween;
    TimeSpec time{ arguments.c, arguments.unit, kRelations[static_cast<std::size_t>( ( index - 10 ) % 5 )], {} };
    return attach_time_semantics( p, bind_time( time ), slot );
  }
  return AG( Formula::exists( s, p ) );
}

tl::Formula attach_time_semantics( tl::Formula const& base, TimeSpec const& time, TimeSlot slot )
{
  auto const bound = bound_of( time );
  switch ( slot )
  {
  case TimeSlot::PreElapsed:
    return Formula::finally( base, bound );
  case TimeSlot::Valid:
    return Formula::globally( base, bound );
  case TimeSlot::InBetween:
    break;
  }
  return G( Formula::finally( base, bound ) );
}

tl::Formula aggregate_tree( ComponentTree const& tree, std::function<tl::Formula( Component const& )> const& prepared )
{
  if ( tree.is_leaf() )
    return prepared( tree.component() );
  auto left = aggregate_tree( tree.left(), prepared );
  auto right = aggregate_tree( tree.right(), prepared );
  return tree.relation() == Coordination::And ? Formula::conj( std::move( left ), std::move( right ) )
                                              : Formula::disj( std::move( left ), std::move( right ) );
}

std::optional<tl::Formula> prepare_preconditions( std::optional<tl::Formula> const& triggers,
                                                  std::optional<tl::Formula> const& conditions )
{
  if ( triggers && conditions )
    return Formula::conj( *triggers, *conditions );
  if ( triggers )
    return triggers;
  return conditions;
}

int scope_rule( Scope const& scope )
{
  if ( scope.startup && scope.endup )
    return scope.endup_kind == EndupKind::Before ? 8 : 9;
  if ( scope.startup )
    return 5;
  return scope.endup_kind == EndupKind::Before ? 6 : 7;
}

tl::Formula apply_scope( tl::Formula const& side, std::optional<PreparedScope> const& scope, Target target )
{
  if ( !scope || ( !scope->startup && !scope->endup ) )
    return side;
  Scope shape;
  if ( scope->startup )
    shape.startup = Component{};
  if ( scope->endup )
    shape.endup = Component{};
  shape.endup_kind = scope->endup_kind;
  auto const row = scope_rule( shape );

  auto const& s = scope->endup ? *scope->endup : *scope->startup;
  auto const& q = scope->startup ? *scope->startup : s;
  return scope_formula( row, target, side, s, q );
}

TransformResult transform( PrimitiveRequirement const& pr, Target target, TransformOptions const& options )
{
  if ( !validate_primitive( pr ).passed() )
    throw ContractError( "transform requires a primitive that passes validation" );

  Compiler compiler( target );
  auto const triggers = compiler.tree( pr.triggers );
  auto const conditions = compiler.tree( pr.conditions );
  auto const actions = aggregate_tree( *pr.actions, [&]( Component const& c ) { return compiler.component( c, true ); } );
  auto const pre_scope = compiler.scope( pr.pre_scope, true );
  auto const action_scope = compiler.scope( pr.action_scope, false );

  auto const preconditions = prepare_preconditions( triggers, conditions );
  auto rhs = apply_scope( actions, action_scope, target );

  TransformResult result;
  result.target = target;
  if ( preconditions )
  {
    auto const lhs = apply_scope( *preconditions, pre_scope, target );
    result.formula = outer( Formula::implies( lhs, rhs ), target );
  }
  else
  {
    // a pre-conditional scope without preconditions bounds the actions
    rhs = apply_scope( rhs, pre_scope, target );
    result.formula = options.wrap_factual ? outer( rhs, target ) : rhs;
  }
  result.dropped = compiler.take_dropped();
  std::sort( result.dropped.begin(), result.dropped.end(), []( DroppedProperty const& a, DroppedProperty const& b ) {
    return std::pair( a.property, a.rule ) < std::pair( b.property, b.rule );
  } );
  result.completeness = result.dropped.empty() ? Completeness::Full : Completeness::Partial;
  return result;
}

std::vector<Capability> capability_report( PrimitiveRequirement const& pr, Target target )
{
  if ( !validate_primitive( pr ).passed() )
    throw ContractError( "capability_report requires a primitive that passes validation" );

  std::set<std::pair<Property, int>> entries;
  auto add = [&]( Property property, int rule ) { entries.emplace( property, rule ); };

  auto component = [&]( Component const& c, Property base, int rule ) {
    add( base, rule );
    for ( auto slot : { TimeSlot::PreElapsed, TimeSlot::Valid, TimeSlot::InBetween } )
    {
      if ( auto const& time = c.time( slot ) )
        add( *time_property( base, slot ), time_rule( slot, time->relation ) );
    }
    if ( has_hidden( c.core ) )
      add( Property::Hidden, 25 );
  };
  auto tree = [&]( std::optional<ComponentTree> const& t, Property base, int rule ) {
    if ( t )
      t->for_each_leaf( [&]( Component const& c ) { component( c, base, rule ); } );
  };
  auto scope = [&]( std::optional<Scope> const& s, Property start, Property end ) {
    if ( !s )
      return;
    auto const row = scope_rule( *s );
    if ( s->startup )
      component( *s->startup, start, row );
    if ( s->endup )
      component( *s->endup, end, row );
  };

  bool const both = pr.triggers && pr.conditions;
  tree( pr.actions, Property::A, 1 );
  tree( pr.conditions, Property::C, both ? 4 : 2 );
  tree( pr.triggers, Property::T, both ? 4 : 3 );
  scope( pr.pre_scope, Property::SP, Property::EP );
  scope( pr.action_scope, Property::SA, Property::EA );

  std::vector<Capability> out;
  for ( auto const& [property, rule] : entries )
  {
    bool const supported = target == Target::MTL ? property != Property::Hidden : ( rule < 10 || rule > 24 );
    out.push_back( { property, supported, rule } );
  }
  return out;
}

std::string render( TransformResult const& result, tl::RenderOptions const& options )
{
  return result.target == Target::MTL ? tl::render_mtl( result.formula, options )
                                      : tl::render_ctl( result.formula, options );
}

std::string format_result( std::string_view id, TransformResult const& result, tl::RenderOptions const& options )
{
  std::string dropped;
  for ( auto const& d : result.dropped )
  {
    dropped += ( dropped.empty() ? "" : ", " ) + std::string( to_string( d.property ) ) + "@" +
               std::to_string( d.rule ) + " (" + d.reason + ")";
  }
  std::string out = "id: " + std::string( id ) + "\n";
  out += "target: " + std::string( to_string( result.target ) ) + "\n";
  out += "completeness: " + std::string( to_string( result.completeness ) ) + "\n";
  out += "dropped: " + ( dropped.empty() ? std::string( "none" ) : dropped ) + "\n";
  out += "formula: " + render( result, options ) + "\n";
  return out;
}

} // namespace rcm
