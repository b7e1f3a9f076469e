#include <rcmforge/model.hpp>

#include <array>
#include <utility>

namespace rcm
{

namespace
{

template<typename Enum, std::size_t N>
std::optional<Enum> lookup( std::array<std::string_view, N> const& names, std::string_view text )
{
  for ( std::size_t i = 0; i < N; ++i )
  {
    if ( names[i] == text )
      return static_cast<Enum>( i );
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 5> kKindNames{ "condition", "trigger", "action", "scope-startup", "scope-endup" };
constexpr std::array<std::string_view, 5> kRelationNames{ "exactly", "at-most", "at-least", "less-than", "greater-than" };
constexpr std::array<std::string_view, 6> kOpNames{ "=", "!=", "<", ">", "<=", ">=" };
constexpr std::array<std::string_view, 3> kSlotNames{ "pre-elapsed", "valid", "in-between" };
constexpr std::array<std::string_view, 2> kCoordNames{ "and", "or" };
constexpr std::array<std::string_view, 2> kEndupNames{ "before", "until" };
constexpr std::array<std::string_view, 3> kFormatNames{ "process", "relational", "aggregated" };
constexpr std::array<std::string_view, 2> kMarkerNames{ "that", "whose" };

} // namespace

std::string_view to_string( ComponentKind kind ) { return kKindNames[static_cast<std::size_t>( kind )]; }
std::string_view to_string( TimeRelation relation ) { return kRelationNames[static_cast<std::size_t>( relation )]; }
std::string_view to_string( CompareOp op ) { return kOpNames[static_cast<std::size_t>( op )]; }
std::string_view to_string( TimeSlot slot ) { return kSlotNames[static_cast<std::size_t>( slot )]; }
std::string_view to_string( Coordination relation ) { return kCoordNames[static_cast<std::size_t>( relation )]; }
std::string_view to_string( EndupKind kind ) { return kEndupNames[static_cast<std::size_t>( kind )]; }
std::string_view to_string( SemanticFormat format ) { return kFormatNames[static_cast<std::size_t>( format )]; }
std::string_view to_string( RelativeMarker marker ) { return kMarkerNames[static_cast<std::size_t>( marker )]; }

std::optional<ComponentKind> component_kind_from_string( std::string_view text )
{
  return lookup<ComponentKind>( kKindNames, text );
}

std::optional<TimeRelation> time_relation_from_string( std::string_view text )
{
  return lookup<TimeRelation>( kRelationNames, text );
}

std::optional<CompareOp> compare_op_from_string( std::string_view text )
{
  if ( text == "≠" )
    return CompareOp::Ne;
  if ( text == "≤" )
    return CompareOp::Le;
  if ( text == "≥" )
    return CompareOp::Ge;
  return lookup<CompareOp>( kOpNames, text );
}

std::optional<Coordination> coordination_from_string( std::string_view text )
{
  return lookup<Coordination>( kCoordNames, text );
}

std::optional<EndupKind> endup_kind_from_string( std::string_view text )
{
  return lookup<EndupKind>( kEndupNames, text );
}

SemanticFormat format_of( FormalSemantics const& formal )
{
  return static_cast<SemanticFormat>( formal.index() );
}

bool operator==( Operand const& a, Operand const& b )
{
  if ( a.text != b.text || a.has_hidden() != b.has_hidden() )
    return false;
  return !a.has_hidden() || *a.hidden == *b.hidden;
}

bool operator==( Predicate const& a, Predicate const& b )
{
  return a.operands == b.operands && a.op == b.op && a.negated == b.negated && a.formal == b.formal &&
         a.artificial == b.artificial;
}

Operand make_operand( std::string text )
{
  return Operand{ std::move( text ), nullptr };
}

Operand make_operand( std::string text, RelativeMarker marker, Predicate constraint )
{
  return Operand{ std::move( text ), std::make_shared<HiddenConstraint const>( HiddenConstraint{ marker, std::move( constraint ) } ) };
}

std::optional<TimeSpec> const& Component::time( TimeSlot slot ) const
{
  switch ( slot )
  {
  case TimeSlot::PreElapsed:
    return pre_elapsed_time;
  case TimeSlot::Valid:
    return valid_time;
  case TimeSlot::InBetween:
    break;
  }
  return in_between_time;
}

bool operator==( Component const& a, Component const& b )
{
  return a.kind == b.kind && a.core == b.core && a.valid_time == b.valid_time &&
         a.pre_elapsed_time == b.pre_elapsed_time && a.in_between_time == b.in_between_time;
}

ComponentTree::ComponentTree( Component component ) : _data( std::move( component ) ) {}

ComponentTree::ComponentTree( std::shared_ptr<Node const> node ) : _data( std::move( node ) ) {}

ComponentTree ComponentTree::leaf( Component component )
{
  return ComponentTree( std::move( component ) );
}

ComponentTree ComponentTree::node( Coordination relation, ComponentTree left, ComponentTree right )
{
  return ComponentTree( std::make_shared<Node const>( Node{ relation, std::move( left ), std::move( right ) } ) );
}

bool ComponentTree::is_leaf() const noexcept
{
  return std::holds_alternative<Component>( _data );
}

Component const& ComponentTree::component() const
{
  if ( !is_leaf() )
    throw ContractError( "component() called on an inner tree node" );
  return std::get<Component>( _data );
}

Coordination ComponentTree::relation() const
{
  if ( is_leaf() )
    throw ContractError( "relation() called on a tree leaf" );
  return std::get<1>( _data )->relation;
}

ComponentTree const& ComponentTree::left() const
{
  if ( is_leaf() )
    throw ContractError( "left() called on a tree leaf" );
  return std::get<1>( _data )->left;
}

ComponentTree const& ComponentTree::right() const
{
  if ( is_leaf() )
    throw ContractError( "right() called on a tree leaf" );
  return std::get<1>( _data )->right;
}

std::size_t ComponentTree::leaf_count() const
{
  return is_leaf() ? 1u : left().leaf_count() + right().leaf_count();
}

bool operator==( ComponentTree const& a, ComponentTree const& b )
{
  if ( a.is_leaf() != b.is_leaf() )
    return false;
  if ( a.is_leaf() )
    return a.component() == b.component();
  return a.relation() == b.relation() && a.left() == b.left() && a.right() == b.right();
}

bool operator==( Scope const& a, Scope const& b )
{
  if ( a.startup != b.startup || a.endup != b.endup )
    return false;
  return !a.endup || a.endup_kind == b.endup_kind;
}

bool PrimitiveRequirement::is_factual_rule() const
{
  return actions && !conditions && !triggers && !pre_scope && !action_scope;
}

void check_eligibility( PrimitiveRequirement const& primitive, std::string const& path )
{
  for_each_component( primitive, [&]( Component const& component, std::string const& where ) {
    for ( auto slot : { TimeSlot::PreElapsed, TimeSlot::Valid, TimeSlot::InBetween } )
    {
      if ( component.time( slot ) && !is_eligible( component.kind, slot ) )
      {
        throw EligibilityError( std::string( to_string( slot ) ) + "-time ineligible on " +
                                    std::string( to_string( component.kind ) ),
                                path.empty() ? where : path + "." + where );
      }
    }
  } );
}

void check_eligibility( Requirement const& requirement )
{
  for ( std::size_t i = 0; i < requirement.primitives.size(); ++i )
    check_eligibility( requirement.primitives[i], "primitives[" + std::to_string( i ) + "]" );
}

} // namespace rcm
