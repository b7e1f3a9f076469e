#include <rcmforge/canonical.hpp>
#include <rcmforge/frames.hpp>

#include <json.hpp>

#include <cmath>
#include <initializer_list>

namespace rcm
{

using json = nlohmann::json;

namespace
{

/* --- dump --- */

json dump_time( std::optional<TimeSpec> const& t )
{
  if ( !t )
    return nullptr;
  return { { "value", t->value },
           { "unit", t->unit },
           { "relation", to_string( t->relation ) },
           { "formal_op", t->formal_op ? json( to_string( *t->formal_op ) ) : json( nullptr ) } };
}

json dump_formal( std::optional<FormalSemantics> const& formal )
{
  if ( !formal )
    return nullptr;
  return std::visit(
      []( auto const& f ) -> json {
        using T = std::decay_t<decltype( f )>;
        if constexpr ( std::is_same_v<T, ProcessSemantics> )
          return { { "format", "process" }, { "name", f.name }, { "args", f.args } };
        else if constexpr ( std::is_same_v<T, RelationalSemantics> )
          return { { "format", "relational" }, { "lhs", f.lhs }, { "op", to_string( f.op ) }, { "rhs", f.rhs } };
        else
          return { { "format", "aggregated" },
                   { "lhs", f.lhs },
                   { "op", to_string( f.op ) },
                   { "function", f.function },
                   { "args", f.args } };
      },
      *formal );
}

json dump_predicate( Predicate const& p );

json dump_operand( Operand const& o )
{
  json hidden = nullptr;
  if ( o.hidden )
    hidden = { { "marker", to_string( o.hidden->marker ) }, { "predicate", dump_predicate( o.hidden->predicate ) } };
  return { { "text", o.text }, { "hidden", hidden } };
}

json dump_predicate( Predicate const& p )
{
  json operands = json::array();
  for ( auto const& o : p.operands )
    operands.push_back( dump_operand( o ) );
  return { { "operands", operands },
           { "operator", p.op },
           { "negated", p.negated },
           { "artificial", p.artificial },
           { "formal", dump_formal( p.formal ) } };
}

json dump_component( Component const& c )
{
  return { { "kind", to_string( c.kind ) },
           { "core", dump_predicate( c.core ) },
           { "valid_time", dump_time( c.valid_time ) },
           { "pre_elapsed_time", dump_time( c.pre_elapsed_time ) },
           { "in_between_time", dump_time( c.in_between_time ) } };
}

json dump_tree( std::optional<ComponentTree> const& tree )
{
  if ( !tree )
    return nullptr;
  if ( tree->is_leaf() )
    return { { "leaf", dump_component( tree->component() ) } };
  return { { "relation", to_string( tree->relation() ) },
           { "left", dump_tree( tree->left() ) },
           { "right", dump_tree( tree->right() ) } };
}

json dump_scope( std::optional<Scope> const& scope )
{
  if ( !scope )
    return nullptr;
  return { { "startup", scope->startup ? dump_component( *scope->startup ) : json( nullptr ) },
           { "endup", scope->endup ? dump_component( *scope->endup ) : json( nullptr ) },
           { "endup_kind", scope->endup ? json( to_string( scope->endup_kind ) ) : json( nullptr ) } };
}

json dump_requirement( Requirement const& r )
{
  json primitives = json::array();
  for ( auto const& pr : r.primitives )
  {
    primitives.push_back( { { "conditions", dump_tree( pr.conditions ) },
                            { "triggers", dump_tree( pr.triggers ) },
                            { "actions", dump_tree( pr.actions ) },
                            { "pre_scope", dump_scope( pr.pre_scope ) },
                            { "action_scope", dump_scope( pr.action_scope ) } } );
  }
  return { { "id", r.id }, { "primitives", primitives } };
}

/* --- load --- */

class Reader
{
public:
  explicit Reader( std::string path ) : _path( std::move( path ) ) {}

  [[noreturn]] void fail( std::string const& message ) const { throw SchemaError( _path, message ); }

  Reader at( std::string const& key ) const { return Reader( _path + "." + key ); }
  Reader at( std::size_t index ) const { return Reader( _path + "[" + std::to_string( index ) + "]" ); }

  std::string const& path() const { return _path; }

  json const& object( json const& j, std::initializer_list<std::string_view> keys ) const
  {
    if ( !j.is_object() )
      fail( "expected object" );
    for ( auto const& [key, value] : j.items() )
    {
      bool known = false;
      for ( auto k : keys )
        known = known || k == key;
      if ( !known )
        at( key ).fail( "unknown key" );
    }
    for ( auto k : keys )
    {
      if ( !j.contains( k ) )
        at( std::string( k ) ).fail( "missing key" );
    }
    return j;
  }

  std::string string( json const& j ) const
  {
    if ( !j.is_string() )
      fail( "expected string" );
    return j.get<std::string>();
  }

  bool boolean( json const& j ) const
  {
    if ( !j.is_boolean() )
      fail( "expected boolean" );
    return j.get<bool>();
  }

  std::vector<std::string> strings( json const& j ) const
  {
    if ( !j.is_array() )
      fail( "expected array" );
    std::vector<std::string> out;
    for ( std::size_t i = 0; i < j.size(); ++i )
      out.push_back( at( i ).string( j[i] ) );
    return out;
  }

  template<typename Enum>
  Enum choice( json const& j, std::optional<Enum> ( *parse )( std::string_view ) ) const
  {
    auto const text = string( j );
    auto const value = parse( text );
    if ( !value )
      fail( "unknown value '" + text + "'" );
    return *value;
  }

private:
  std::string _path;
};

std::optional<ComponentKind> parse_kind( std::string_view s )
{
  return component_kind_from_string( s );
}

std::optional<RelativeMarker> parse_marker( std::string_view s )
{
  if ( s == to_string( RelativeMarker::That ) )
    return RelativeMarker::That;
  if ( s == to_string( RelativeMarker::Whose ) )
    return RelativeMarker::Whose;
  return std::nullopt;
}

std::optional<TimeSpec> load_time( json const& j, Reader const& r )
{
  if ( j.is_null() )
    return std::nullopt;
  r.object( j, { "value", "unit", "relation", "formal_op" } );
  auto const& value = j["value"];
  if ( !value.is_number() )
    r.at( "value" ).fail( "expected number" );
  TimeSpec t;
  t.value = value.get<double>();
  if ( !std::isfinite( t.value ) || t.value < 0.0 )
    r.at( "value" ).fail( "time value must be a non-negative number" );
  t.unit = r.at( "unit" ).string( j["unit"] );
  t.relation = r.at( "relation" ).choice( j["relation"], &time_relation_from_string );
  if ( !j["formal_op"].is_null() )
  {
    auto const op = r.at( "formal_op" ).choice( j["formal_op"], &compare_op_from_string );
    if ( op != formal_op_of( t.relation ) )
      r.at( "formal_op" ).fail( "operator does not match relation '" + std::string( to_string( t.relation ) ) + "'" );
    t.formal_op = op;
  }
  return t;
}

std::optional<FormalSemantics> load_formal( json const& j, Reader const& r )
{
  if ( j.is_null() )
    return std::nullopt;
  if ( !j.is_object() || !j.contains( "format" ) )
    r.fail( "expected object with a format" );
  auto const format = r.at( "format" ).string( j["format"] );
  if ( format == "process" )
  {
    r.object( j, { "format", "name", "args" } );
    return ProcessSemantics{ r.at( "name" ).string( j["name"] ), r.at( "args" ).strings( j["args"] ) };
  }
  if ( format == "relational" )
  {
    r.object( j, { "format", "lhs", "op", "rhs" } );
    return RelationalSemantics{ r.at( "lhs" ).string( j["lhs"] ), r.at( "op" ).choice( j["op"], &compare_op_from_string ),
                                r.at( "rhs" ).string( j["rhs"] ) };
  }
  if ( format == "aggregated" )
  {
    r.object( j, { "format", "lhs", "op", "function", "args" } );
    return AggregatedSemantics{ r.at( "lhs" ).string( j["lhs"] ), r.at( "op" ).choice( j["op"], &compare_op_from_string ),
                                r.at( "function" ).string( j["function"] ), r.at( "args" ).strings( j["args"] ) };
  }
  r.at( "format" ).fail( "unknown value '" + format + "'" );
}

Predicate load_predicate( json const& j, Reader const& r )
{
  r.object( j, { "operands", "operator", "negated", "artificial", "formal" } );
  Predicate p;
  auto const& operands = j["operands"];
  auto const ro = r.at( "operands" );
  if ( !operands.is_array() )
    ro.fail( "expected array" );
  if ( operands.empty() )
    ro.fail( "a predicate needs at least one operand" );
  for ( std::size_t i = 0; i < operands.size(); ++i )
  {
    auto const ri = ro.at( i );
    ri.object( operands[i], { "text", "hidden" } );
    Operand operand = make_operand( ri.at( "text" ).string( operands[i]["text"] ) );
    auto const& hidden = operands[i]["hidden"];
    if ( !hidden.is_null() )
    {
      auto const rh = ri.at( "hidden" );
      rh.object( hidden, { "marker", "predicate" } );
      operand.hidden = std::make_shared<HiddenConstraint const>(
          HiddenConstraint{ rh.at( "marker" ).choice( hidden["marker"], &parse_marker ),
                            load_predicate( hidden["predicate"], rh.at( "predicate" ) ) } );
    }
    p.operands.push_back( std::move( operand ) );
  }
  p.op = r.at( "operator" ).string( j["operator"] );
  p.negated = r.at( "negated" ).boolean( j["negated"] );
  p.artificial = r.at( "artificial" ).boolean( j["artificial"] );
  p.formal = load_formal( j["formal"], r.at( "formal" ) );
  return p;
}

Component load_component( json const& j, Reader const& r )
{
  r.object( j, { "kind", "core", "valid_time", "pre_elapsed_time", "in_between_time" } );
  Component c;
  c.kind = r.at( "kind" ).choice( j["kind"], &parse_kind );
  c.core = load_predicate( j["core"], r.at( "core" ) );
  c.valid_time = load_time( j["valid_time"], r.at( "valid_time" ) );
  c.pre_elapsed_time = load_time( j["pre_elapsed_time"], r.at( "pre_elapsed_time" ) );
  c.in_between_time = load_time( j["in_between_time"], r.at( "in_between_time" ) );
  return c;
}

std::optional<ComponentTree> load_tree( json const& j, Reader const& r )
{
  if ( j.is_null() )
    return std::nullopt;
  if ( j.is_object() && j.contains( "leaf" ) )
  {
    r.object( j, { "leaf" } );
    return ComponentTree::leaf( load_component( j["leaf"], r.at( "leaf" ) ) );
  }
  r.object( j, { "relation", "left", "right" } );
  auto const relation = r.at( "relation" ).choice( j["relation"], &coordination_from_string );
  if ( j["left"].is_null() )
    r.at( "left" ).fail( "expected tree" );
  if ( j["right"].is_null() )
    r.at( "right" ).fail( "expected tree" );
  return ComponentTree::node( relation, *load_tree( j["left"], r.at( "left" ) ),
                              *load_tree( j["right"], r.at( "right" ) ) );
}

std::optional<Scope> load_scope( json const& j, Reader const& r )
{
  if ( j.is_null() )
    return std::nullopt;
  r.object( j, { "startup", "endup", "endup_kind" } );
  Scope scope;
  if ( !j["startup"].is_null() )
    scope.startup = load_component( j["startup"], r.at( "startup" ) );
  if ( !j["endup"].is_null() )
  {
    scope.endup = load_component( j["endup"], r.at( "endup" ) );
    scope.endup_kind = r.at( "endup_kind" ).choice( j["endup_kind"], &endup_kind_from_string );
  }
  else if ( !j["endup_kind"].is_null() )
    r.at( "endup_kind" ).fail( "endup_kind without endup" );
  if ( !scope.startup && !scope.endup )
    r.fail( "a scope needs a startup or an endup" );
  return scope;
}

Requirement load_requirement( json const& j, Reader const& r )
{
  r.object( j, { "id", "primitives" } );
  Requirement requirement;
  requirement.id = r.at( "id" ).string( j["id"] );
  auto const& primitives = j["primitives"];
  auto const rp = r.at( "primitives" );
  if ( !primitives.is_array() )
    rp.fail( "expected array" );
  if ( primitives.empty() )
    rp.fail( "a requirement needs at least one primitive" );
  for ( std::size_t i = 0; i < primitives.size(); ++i )
  {
    auto const ri = rp.at( i );
    auto const& p = primitives[i];
    ri.object( p, { "conditions", "triggers", "actions", "pre_scope", "action_scope" } );
    PrimitiveRequirement pr;
    pr.conditions = load_tree( p["conditions"], ri.at( "conditions" ) );
    pr.triggers = load_tree( p["triggers"], ri.at( "triggers" ) );
    pr.actions = load_tree( p["actions"], ri.at( "actions" ) );
    pr.pre_scope = load_scope( p["pre_scope"], ri.at( "pre_scope" ) );
    pr.action_scope = load_scope( p["action_scope"], ri.at( "action_scope" ) );
    requirement.primitives.push_back( std::move( pr ) );
  }
  check_eligibility( requirement );
  return requirement;
}

json parse_json( std::string_view text )
{
  try
  {
    return json::parse( text );
  }
  catch ( json::parse_error const& e )
  {
    throw SchemaError( "$", std::string( "malformed JSON: " ) + e.what() );
  }
}

} // namespace

std::string dump_canonical( Requirement const& requirement )
{
  return dump_requirement( requirement ).dump( 2 ) + "\n";
}

std::string dump_canonical( std::vector<Requirement> const& requirements )
{
  json array = json::array();
  for ( auto const& r : requirements )
    array.push_back( dump_requirement( r ) );
  return array.dump( 2 ) + "\n";
}

Requirement load_canonical( std::string_view text )
{
  return load_requirement( parse_json( text ), Reader( "$" ) );
}

std::vector<Requirement> load_canonical_document( std::string_view text )
{
  auto const j = parse_json( text );
  std::vector<Requirement> out;
  if ( !j.is_array() )
  {
    out.push_back( load_requirement( j, Reader( "$" ) ) );
    return out;
  }
  if ( j.empty() )
    throw SchemaError( "$", "empty requirement list" );
  for ( std::size_t i = 0; i < j.size(); ++i )
    out.push_back( load_requirement( j[i], Reader( "$[" + std::to_string( i ) + "]" ) ) );
  return out;
}

} // namespace rcm
