#include "helpers.hpp"

#include <rcmforge/errors.hpp>
#include <rcmforge/tl.hpp>
#include <rcmforge/transform.hpp>

#include <doctest.h>

#include <map>
#include <random>

using namespace rcm;
using tl::Formula;
using tl::NodeKind;

namespace
{

Formula rel( std::string lhs, std::string rhs, CompareOp op = CompareOp::Eq )
{
  return Formula::atom( RelationalSemantics{ std::move( lhs ), op, std::move( rhs ) } );
}

tl::TimeBound bound( CompareOp op, int value )
{
  return { op, static_cast<double>( value ), "s" };
}

/* independent infix printer following the documented grammar */
std::string oracle( Formula const& f, bool operand = false )
{
  static std::map<CompareOp, std::string> const ops{ { CompareOp::Eq, "=" },  { CompareOp::Ne, "!=" }, { CompareOp::Lt, "<" },
                                                     { CompareOp::Gt, ">" },  { CompareOp::Le, "<=" }, { CompareOp::Ge, ">=" } };
  auto const wrap = []( std::string s, bool yes ) { return yes ? "(" + s + ")" : s; };
  auto const body = [&]( Formula const& c ) {
    if ( c.kind() == NodeKind::And || c.kind() == NodeKind::Or )
      return oracle( c.left(), true ) + ( c.kind() == NodeKind::And ? " & " : " | " ) + oracle( c.right(), true );
    return oracle( c );
  };
  switch ( f.kind() )
  {
  case NodeKind::Atom:
  {
    auto const& s = f.semantics();
    if ( auto const* p = std::get_if<ProcessSemantics>( &s ) )
    {
      std::string text = p->name;
      if ( !p->args.empty() )
      {
        text += "(";
        for ( std::size_t i = 0; i < p->args.size(); ++i )
          text += ( i ? "," : "" ) + p->args[i];
        text += ")";
      }
      return f.negated() ? "!" + text : text;
    }
    auto const& r = std::get<RelationalSemantics>( s );
    auto const text = r.lhs + " " + ops.at( r.op ) + " " + r.rhs;
    return f.negated() ? "!(" + text + ")" : wrap( text, operand );
  }
  case NodeKind::Not:
    return "!" + oracle( f.child( 0 ), true );
  case NodeKind::And:
    return "(" + oracle( f.left(), true ) + " & " + oracle( f.right(), true ) + ")";
  case NodeKind::Or:
    return "(" + oracle( f.left(), true ) + " | " + oracle( f.right(), true ) + ")";
  case NodeKind::Implies:
    return wrap( oracle( f.left(), true ) + " -> " + oracle( f.right(), true ), operand );
  case NodeKind::Until:
    return wrap( oracle( f.left(), true ) + " U " + oracle( f.right(), true ), operand );
  case NodeKind::WeakUntil:
    return wrap( oracle( f.left(), true ) + " W " + oracle( f.right(), true ), operand );
  case NodeKind::G:
  case NodeKind::F:
  {
    std::string head = f.kind() == NodeKind::G ? "G" : "F";
    if ( f.bound() )
      head += "[t" + ops.at( f.bound()->op ) + std::to_string( static_cast<int>( f.bound()->value ) ) + "]";
    return head + "(" + body( f.child( 0 ) ) + ")";
  }
  case NodeKind::A:
  case NodeKind::E:
  {
    std::string const q = f.kind() == NodeKind::A ? "A" : "E";
    auto const& c = f.child( 0 );
    if ( c.kind() == NodeKind::G || c.kind() == NodeKind::F )
      return q + oracle( c );
    if ( c.kind() == NodeKind::Until || c.kind() == NodeKind::WeakUntil )
      return q + "[" + oracle( c.left(), true ) + ( c.kind() == NodeKind::Until ? " U " : " W " ) + oracle( c.right(), true ) + "]";
    return q + "(" + body( c ) + ")";
  }
  case NodeKind::Exists:
    return wrap( "(∃ " + oracle( f.left() ) + ") -> " + oracle( f.right(), true ), operand );
  }
  return "?";
}

class RandomFormula
{
public:
  explicit RandomFormula( std::uint32_t seed ) : _rng( seed ) {}

  Formula operator()( int depth = 0 )
  {
    auto const leaf = depth >= 4 || pick( 4 ) == 0;
    if ( leaf )
    {
      switch ( pick( 3 ) )
      {
      case 0:
        return Formula::prop( std::string( 1, static_cast<char>( 'p' + pick( 4 ) ) ) );
      case 1:
        return Formula::atom( RelationalSemantics{ "x" + std::to_string( pick( 3 ) ), static_cast<CompareOp>( pick( 6 ) ), "1" },
                              pick( 4 ) == 0 );
      default:
        return Formula::atom( ProcessSemantics{ "send", { "a", "b" } }, pick( 4 ) == 0 );
      }
    }
    auto const b = [&]() -> std::optional<tl::TimeBound> {
      if ( pick( 3 ) )
        return std::nullopt;
      return bound( static_cast<CompareOp>( pick( 6 ) ), static_cast<int>( pick( 5 ) ) );
    };
    switch ( pick( 12 ) )
    {
    case 0:
      return Formula::negation( ( *this )( depth + 1 ) );
    case 1:
      return Formula::conj( ( *this )( depth + 1 ), ( *this )( depth + 1 ) );
    case 2:
      return Formula::disj( ( *this )( depth + 1 ), ( *this )( depth + 1 ) );
    case 3:
      return Formula::implies( ( *this )( depth + 1 ), ( *this )( depth + 1 ) );
    case 4:
      return Formula::globally( ( *this )( depth + 1 ), b() );
    case 5:
      return Formula::finally( ( *this )( depth + 1 ), b() );
    case 6:
      return Formula::until( ( *this )( depth + 1 ), ( *this )( depth + 1 ) );
    case 7:
      return Formula::weak_until( ( *this )( depth + 1 ), ( *this )( depth + 1 ) );
    case 8:
      return Formula::all_paths( pick( 2 ) ? Formula::globally( ( *this )( depth + 1 ) ) : ( *this )( depth + 1 ) );
    case 9:
      return Formula::some_path( pick( 2 ) ? Formula::finally( ( *this )( depth + 1 ) )
                                           : Formula::until( ( *this )( depth + 1 ), ( *this )( depth + 1 ) ) );
    case 10:
      return Formula::exists( rel( "d", "5", CompareOp::Lt ), ( *this )( depth + 1 ) );
    default:
      return Formula::all_paths( Formula::weak_until( ( *this )( depth + 1 ), ( *this )( depth + 1 ) ) );
    }
  }

private:
  std::size_t pick( std::size_t n ) { return std::uniform_int_distribution<std::size_t>( 0, n - 1 )( _rng ); }
  std::mt19937 _rng;
};

} // namespace

TEST_CASE( "rendering examples" )
{
  auto const s = Formula::prop( "S" );
  auto const q = Formula::prop( "q" );
  auto const sv = Formula::conj( Formula::prop( "s" ), Formula::prop( "v" ) );
  CHECK( tl::render_mtl( Formula::implies( s, Formula::until( q, sv ) ) ) == "S -> (q U (s & v))" );
  CHECK( tl::render_mtl( Formula::globally( Formula::prop( "P" ), bound( CompareOp::Eq, 1 ) ) ) == "G[t=1](P)" );
  CHECK( tl::render_mtl( Formula::globally( rel( "x", "1", CompareOp::Gt ), bound( CompareOp::Le, 2 ) ) ) == "G[t<=2](x > 1)" );
  CHECK( tl::render_ctl( Formula::all_paths( Formula::globally( Formula::implies( s, Formula::prop( "P" ) ) ) ) ) == "AG(S -> P)" );

  auto const cognitive = Formula::all_paths( Formula::globally(
      Formula::exists( rel( "deviation", "5", CompareOp::Lt ), rel( "the_cognitive_threshold", "deviation" ) ) ) );
  CHECK( tl::render_ctl( cognitive ) == "AG((∃ deviation < 5) -> (the_cognitive_threshold = deviation))" );
  CHECK( tl::render_ctl( cognitive, { true } ) == "AG((exists deviation < 5) -> (the_cognitive_threshold = deviation))" );

  CHECK( tl::render( Formula::atom( ProcessSemantics{ "reset", { "w" } }, true ) ) == "!reset(w)" );
  CHECK( tl::render( Formula::negation( rel( "x", "1" ) ) ) == "!(x = 1)" );
  CHECK( tl::render( Formula::some_path( Formula::until( s, q ) ) ) == "E[S U q]" );
}

TEST_CASE( "expressibility errors" )
{
  auto const exists = Formula::exists( rel( "d", "5", CompareOp::Lt ), Formula::prop( "P" ) );
  CHECK_THROWS_WITH_AS( tl::render_mtl( Formula::globally( exists ) ), doctest::Contains( "not expressible in MTL" ),
                        ExpressibilityError );
  CHECK_THROWS_WITH_AS( tl::render_ctl( Formula::all_paths( Formula::finally( Formula::prop( "P" ), bound( CompareOp::Eq, 3 ) ) ) ),
                        doctest::Contains( "not expressible in CTL" ), ExpressibilityError );
  CHECK_THROWS_AS( tl::render_ctl( Formula::globally( Formula::prop( "P" ) ) ), ExpressibilityError );
  CHECK_THROWS_AS( tl::render_mtl( Formula::all_paths( Formula::globally( Formula::prop( "P" ) ) ) ), ExpressibilityError );
}

TEST_CASE( "printer agrees with an independent oracle" )
{
  RandomFormula gen( 17 );
  for ( int i = 0; i < 2000; ++i )
  {
    auto const f = gen();
    CHECK( tl::render( f ) == oracle( f ) );
  }
}

TEST_CASE( "validity checks agree with the renderers" )
{
  RandomFormula gen( 23 );
  int mtl_ok = 0;
  int ctl_ok = 0;
  for ( int i = 0; i < 3000; ++i )
  {
    auto const f = gen();
    bool mtl_renders = true;
    bool ctl_renders = true;
    try
    {
      tl::render_mtl( f );
    }
    catch ( ExpressibilityError const& )
    {
      mtl_renders = false;
    }
    try
    {
      tl::render_ctl( f );
    }
    catch ( ExpressibilityError const& )
    {
      ctl_renders = false;
    }
    CHECK( mtl_renders == tl::mtl_valid( f ) );
    CHECK( ctl_renders == tl::ctl_valid( f ) );
    mtl_ok += mtl_renders;
    ctl_ok += ctl_renders;
  }
  CHECK( mtl_ok > 0 );
  CHECK( ctl_ok > 0 );
}

TEST_CASE( "structural equality" )
{
  RandomFormula gen( 29 );
  std::vector<Formula> pool;
  for ( int i = 0; i < 200; ++i )
    pool.push_back( gen() );
  for ( std::size_t i = 0; i < pool.size(); ++i )
  {
    CHECK( pool[i] == pool[i] );
    CHECK( pool[i] == pool[i].with_children( [&] {
             std::vector<Formula> c;
             for ( std::size_t k = 0; k < pool[i].arity(); ++k )
               c.push_back( pool[i].child( k ) );
             return c;
           }() ) );
    for ( std::size_t j = i + 1; j < pool.size(); ++j )
    {
      CHECK( ( pool[i] == pool[j] ) == ( pool[j] == pool[i] ) );
      if ( pool[i] == pool[j] )
        CHECK( tl::render( pool[i] ) == tl::render( pool[j] ) );
    }
  }
  auto const a = Formula::prop( "a" );
  auto const b = Formula::prop( "b" );
  CHECK_FALSE( Formula::conj( a, b ) == Formula::conj( b, a ) );
  CHECK( tl::render( Formula::conj( b, a ) ) == "(b & a)" );
  CHECK_FALSE( Formula::globally( a ) == Formula::globally( a, bound( CompareOp::Eq, 1 ) ) );
  CHECK( Formula::globally( a, bound( CompareOp::Eq, 1 ) ).without_bound() == Formula::globally( a ) );
}

TEST_CASE( "rendering is injective on the fixture outputs" )
{
  std::map<std::string, Formula> seen;
  for ( auto const& r : rcm::testing::fixture_corpus() )
  {
    for ( auto const& pr : r.primitives )
    {
      for ( auto target : { Target::MTL, Target::CTL } )
      {
        auto const f = transform( pr, target ).formula;
        auto const text = tl::render( f );
        auto const [it, fresh] = seen.emplace( text, f );
        if ( !fresh )
          CHECK( it->second == f );
      }
    }
  }
}
