#include <rcmforge/tl.hpp>

#include "text.hpp"

namespace rcm::tl
{

struct Formula::Node
{
  NodeKind kind = NodeKind::Atom;
  std::optional<FormalSemantics> semantics;
  bool negated = false;
  std::optional<TimeBound> bound;
  std::vector<Formula> children;
};

std::string_view to_string( NodeKind kind )
{
  switch ( kind )
  {
  case NodeKind::Atom:
    return "atom";
  case NodeKind::Not:
    return "!";
  case NodeKind::And:
    return "&";
  case NodeKind::Or:
    return "|";
  case NodeKind::Implies:
    return "->";
  case NodeKind::G:
    return "G";
  case NodeKind::F:
    return "F";
  case NodeKind::Until:
    return "U";
  case NodeKind::WeakUntil:
    return "W";
  case NodeKind::A:
    return "A";
  case NodeKind::E:
    return "E";
  case NodeKind::Exists:
    break;
  }
  return "exists";
}

std::string to_string( TimeBound const& bound )
{
  return "t" + std::string( rcm::to_string( bound.op ) ) + text::format_number( bound.value );
}

Formula::Formula( std::shared_ptr<Node const> node ) : _node( std::move( node ) ) {}

std::shared_ptr<Formula::Node const> Formula::binary( NodeKind kind, Formula l, Formula r )
{
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->children = { std::move( l ), std::move( r ) };
  return node;
}

Formula Formula::atom( FormalSemantics semantics, bool negated )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Atom;
  node->semantics = std::move( semantics );
  node->negated = negated;
  return Formula( std::move( node ) );
}

Formula Formula::prop( std::string name )
{
  return atom( ProcessSemantics{ std::move( name ), {} } );
}

Formula Formula::negation( Formula f )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Not;
  node->children = { std::move( f ) };
  return Formula( std::move( node ) );
}

Formula Formula::conj( Formula l, Formula r )
{
  return Formula( binary( NodeKind::And, std::move( l ), std::move( r ) ) );
}

Formula Formula::disj( Formula l, Formula r )
{
  return Formula( binary( NodeKind::Or, std::move( l ), std::move( r ) ) );
}

Formula Formula::implies( Formula l, Formula r )
{
  return Formula( binary( NodeKind::Implies, std::move( l ), std::move( r ) ) );
}

Formula Formula::until( Formula l, Formula r )
{
  return Formula( binary( NodeKind::Until, std::move( l ), std::move( r ) ) );
}

Formula Formula::weak_until( Formula l, Formula r )
{
  return Formula( binary( NodeKind::WeakUntil, std::move( l ), std::move( r ) ) );
}

Formula Formula::all_paths( Formula f )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::A;
  node->children = { std::move( f ) };
  return Formula( std::move( node ) );
}

Formula Formula::some_path( Formula f )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::E;
  node->children = { std::move( f ) };
  return Formula( std::move( node ) );
}

Formula Formula::exists( Formula bound, Formula body )
{
  if ( bound.kind() != NodeKind::Atom )
    throw ContractError( "existential bound must be an atom" );
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Exists;
  node->children = { std::move( bound ), std::move( body ) };
  return Formula( std::move( node ) );
}

Formula Formula::globally( Formula f, std::optional<TimeBound> bound )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::G;
  node->bound = std::move( bound );
  node->children = { std::move( f ) };
  return Formula( std::move( node ) );
}

Formula Formula::finally( Formula f, std::optional<TimeBound> bound )
{
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::F;
  node->bound = std::move( bound );
  node->children = { std::move( f ) };
  return Formula( std::move( node ) );
}

NodeKind Formula::kind() const noexcept
{
  return _node->kind;
}

std::size_t Formula::arity() const noexcept
{
  return _node->children.size();
}

Formula const& Formula::child( std::size_t index ) const
{
  if ( index >= _node->children.size() )
    throw ContractError( "formula child index out of range" );
  return _node->children[index];
}

FormalSemantics const& Formula::semantics() const
{
  if ( !_node->semantics )
    throw ContractError( "semantics() on a non-atom formula" );
  return *_node->semantics;
}

bool Formula::negated() const
{
  return _node->negated;
}

std::optional<TimeBound> const& Formula::bound() const
{
  return _node->bound;
}

Formula Formula::with_children( std::vector<Formula> children ) const
{
  if ( children.size() != _node->children.size() )
    throw ContractError( "with_children arity mismatch" );
  auto node = std::make_shared<Node>( *_node );
  node->children = std::move( children );
  return Formula( std::move( node ) );
}

Formula Formula::without_bound() const
{
  auto node = std::make_shared<Node>( *_node );
  node->bound.reset();
  return Formula( std::move( node ) );
}

std::size_t Formula::size() const
{
  std::size_t n = 1;
  for ( auto const& c : _node->children )
    n += c.size();
  return n;
}

bool operator==( Formula const& a, Formula const& b )
{
  if ( a._node == b._node )
    return true;
  auto const& x = *a._node;
  auto const& y = *b._node;
  return x.kind == y.kind && x.negated == y.negated && x.semantics == y.semantics && x.bound == y.bound &&
         x.children == y.children;
}

/* --- rendering --- */

namespace
{

std::string join_args( std::vector<std::string> const& args )
{
  std::string out;
  for ( std::size_t i = 0; i < args.size(); ++i )
    out += ( i ? "," : "" ) + args[i];
  return out;
}

bool is_relational( Formula const& f )
{
  return f.kind() == NodeKind::Atom && !f.negated() &&
         !std::holds_alternative<ProcessSemantics>( f.semantics() );
}

enum class Context
{
  Top,     // whole formula, or the body of a wrapper
  Operand, // operand of a binary connective or of !
};

class Printer
{
public:
  explicit Printer( RenderOptions const& options ) : _options( options ) {}

  std::string print( Formula const& f, Context context ) const
  {
    switch ( f.kind() )
    {
    case NodeKind::Atom:
    {
      auto const body = render_semantics( f.semantics() );
      if ( f.negated() )
        return is_process( f ) ? "!" + body : "!(" + body + ")";
      return context == Context::Operand && is_relational( f ) ? "(" + body + ")" : body;
    }
    case NodeKind::Not:
      return "!" + print( f.child( 0 ), Context::Operand );
    case NodeKind::And:
    case NodeKind::Or:
      return "(" + bare( f ) + ")";
    case NodeKind::Implies:
    case NodeKind::Until:
    case NodeKind::WeakUntil:
    case NodeKind::Exists:
      return context == Context::Operand ? "(" + bare( f ) + ")" : bare( f );
    case NodeKind::G:
    case NodeKind::F:
      return std::string( to_string( f.kind() ) ) + bound_text( f ) + "(" + body( f.child( 0 ) ) + ")";
    case NodeKind::A:
    case NodeKind::E:
      return quantified( f );
    }
    return {};
  }

private:
  static bool is_process( Formula const& f ) { return std::holds_alternative<ProcessSemantics>( f.semantics() ); }

  static std::string bound_text( Formula const& f )
  {
    return f.bound() ? "[" + to_string( *f.bound() ) + "]" : std::string{};
  }

  /* body of a wrapper: And/Or drop their own parentheses */
  std::string body( Formula const& f ) const
  {
    if ( f.kind() == NodeKind::And || f.kind() == NodeKind::Or )
      return bare( f );
    return print( f, Context::Top );
  }

  /* binary node without outer parentheses */
  std::string bare( Formula const& f ) const
  {
    if ( f.kind() == NodeKind::Exists )
    {
      std::string const quantifier = _options.ascii ? "exists " : "∃ ";
      return "(" + quantifier + print( f.child( 0 ), Context::Top ) + ") -> " + print( f.child( 1 ), Context::Operand );
    }
    std::string op;
    switch ( f.kind() )
    {
    case NodeKind::And:
      op = " & ";
      break;
    case NodeKind::Or:
      op = " | ";
      break;
    case NodeKind::Implies:
      op = " -> ";
      break;
    case NodeKind::Until:
      op = " U ";
      break;
    case NodeKind::WeakUntil:
      op = " W ";
      break;
    default:
      return print( f, Context::Top );
    }
    return print( f.child( 0 ), Context::Operand ) + op + print( f.child( 1 ), Context::Operand );
  }

  std::string quantified( Formula const& f ) const
  {
    auto const q = std::string( to_string( f.kind() ) );
    auto const& inner = f.child( 0 );
    switch ( inner.kind() )
    {
    case NodeKind::G:
    case NodeKind::F:
      return q + std::string( to_string( inner.kind() ) ) + bound_text( inner ) + "(" + body( inner.child( 0 ) ) +
             ")";
    case NodeKind::Until:
    case NodeKind::WeakUntil:
      return q + "[" + bare( inner ) + "]";
    default:
      return q + "(" + body( inner ) + ")";
    }
  }

  RenderOptions _options;
};

bool is_path_operator( NodeKind kind )
{
  return kind == NodeKind::G || kind == NodeKind::F || kind == NodeKind::Until || kind == NodeKind::WeakUntil;
}

std::optional<std::string> find_mtl( Formula const& f )
{
  switch ( f.kind() )
  {
  case NodeKind::A:
  case NodeKind::E:
    return "path quantifier " + std::string( to_string( f.kind() ) );
  case NodeKind::WeakUntil:
    return std::string( "weak until W" );
  case NodeKind::Exists:
    return std::string( "existential antecedent" );
  default:
    break;
  }
  for ( std::size_t i = 0; i < f.arity(); ++i )
  {
    if ( auto v = find_mtl( f.child( i ) ) )
      return v;
  }
  return std::nullopt;
}

std::optional<std::string> find_ctl( Formula const& f, bool under_quantifier )
{
  if ( is_path_operator( f.kind() ) )
  {
    if ( f.bound() )
      return "time bound " + std::string( to_string( f.kind() ) ) + "[" + to_string( *f.bound() ) + "]";
    if ( !under_quantifier )
      return std::string( to_string( f.kind() ) ) + " outside a path quantifier";
  }
  if ( ( f.kind() == NodeKind::A || f.kind() == NodeKind::E ) && !is_path_operator( f.child( 0 ).kind() ) )
    return std::string( to_string( f.kind() ) ) + " without a path operator";
  bool const quantifier = f.kind() == NodeKind::A || f.kind() == NodeKind::E;
  for ( std::size_t i = 0; i < f.arity(); ++i )
  {
    if ( auto v = find_ctl( f.child( i ), quantifier ) )
      return v;
  }
  return std::nullopt;
}

} // namespace

std::string render_semantics( FormalSemantics const& semantics )
{
  return std::visit(
      []( auto const& s ) -> std::string {
        using T = std::decay_t<decltype( s )>;
        if constexpr ( std::is_same_v<T, ProcessSemantics> )
          return s.args.empty() ? s.name : s.name + "(" + join_args( s.args ) + ")";
        else if constexpr ( std::is_same_v<T, RelationalSemantics> )
          return s.lhs + " " + std::string( rcm::to_string( s.op ) ) + " " + s.rhs;
        else
          return s.lhs + " " + std::string( rcm::to_string( s.op ) ) + " " + s.function + "(" + join_args( s.args ) +
                 ")";
      },
      semantics );
}

std::string render( Formula const& f, RenderOptions const& options )
{
  return Printer( options ).print( f, Context::Top );
}

std::optional<std::string> mtl_violation( Formula const& f )
{
  return find_mtl( f );
}

std::optional<std::string> ctl_violation( Formula const& f )
{
  return find_ctl( f, false );
}

std::string render_mtl( Formula const& f, RenderOptions const& options )
{
  if ( auto v = mtl_violation( f ) )
    throw ExpressibilityError( "not expressible in MTL", *v );
  return render( f, options );
}

std::string render_ctl( Formula const& f, RenderOptions const& options )
{
  if ( auto v = ctl_violation( f ) )
    throw ExpressibilityError( "not expressible in CTL", *v );
  return render( f, options );
}

} // namespace rcm::tl
