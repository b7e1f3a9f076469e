#include "generator.hpp"
#include "helpers.hpp"

#include <rcmforge/profile.hpp>
#include <rcmforge/transform.hpp>

#include <doctest.h>

#include <sstream>

using namespace rcm;
using tl::Formula;
using rcm::testing::primitive_of;

namespace
{

Formula rel( std::string lhs, std::string rhs, CompareOp op = CompareOp::Eq )
{
  return Formula::atom( RelationalSemantics{ std::move( lhs ), op, std::move( rhs ) } );
}

bool has_time_code( PropertyProfile const& profile )
{
  for ( auto p : profile.properties() )
  {
    auto const code = std::string( to_string( p ) );
    if ( code.size() > 3 && ( code.ends_with( "-vt" ) || code.ends_with( "-pt" ) || code.ends_with( "-rt" ) ) )
      return true;
  }
  return false;
}

bool bounded_root( Formula const& f )
{
  return ( f.kind() == tl::NodeKind::G || f.kind() == tl::NodeKind::F ) && f.bound().has_value();
}

} // namespace

TEST_CASE( "rule table golden" )
{
  std::string rendered;
  for ( auto target : { Target::MTL, Target::CTL } )
  {
    for ( auto const& row : rule_table() )
    {
      if ( target == Target::MTL ? !row.mtl : !row.ctl )
      {
        CHECK_THROWS_AS( instantiate_rule( row.index, target ), ExpressibilityError );
        continue;
      }
      rendered += std::string( to_string( target ) ) + " " + std::to_string( row.index ) + ": " +
                  tl::render( instantiate_rule( row.index, target ) ) + "\n";
    }
  }
  CHECK( rendered == rcm::testing::read_file( rcm::testing::golden_dir() / "rule_table.txt" ) );
}

TEST_CASE( "rule table layout" )
{
  REQUIRE( rule_table().size() == 25u );
  for ( auto const& row : rule_table() )
  {
    CAPTURE( row.index );
    CHECK( row.mtl == ( row.index <= 24 ) );
    CHECK( row.ctl == ( row.index <= 9 || row.index == 25 ) );
  }
  CHECK( time_rule( TimeSlot::PreElapsed, TimeRelation::Exactly ) == 10 );
  CHECK( time_rule( TimeSlot::Valid, TimeRelation::AtLeast ) == 17 );
  CHECK( time_rule( TimeSlot::InBetween, TimeRelation::GreaterThan ) == 24 );
}

TEST_CASE( "fixture golden" )
{
  std::string rendered;
  for ( auto const& r : rcm::testing::fixture_corpus() )
  {
    for ( std::size_t i = 0; i < r.primitives.size(); ++i )
    {
      for ( auto target : { Target::MTL, Target::CTL } )
        rendered += format_result( r.id + "#" + std::to_string( i + 1 ), transform( r.primitives[i], target ) ) + "\n";
    }
  }
  CHECK( rendered == rcm::testing::read_file( rcm::testing::golden_dir() / "fixtures_transform.txt" ) );
}

TEST_CASE( "attach_time_semantics" )
{
  auto const x = rel( "X", "ON" );
  CHECK( tl::render( attach_time_semantics( x, rcm::testing::seconds( 1 ), TimeSlot::Valid ) ) == "G[t=1](X = ON)" );
  CHECK( tl::render( attach_time_semantics( Formula::prop( "P" ), rcm::testing::seconds( 2, TimeRelation::AtLeast ),
                                            TimeSlot::InBetween ) ) == "G(F[t>=2](P))" );
  CHECK( tl::render( attach_time_semantics( rel( "M", "TRUE" ), rcm::testing::seconds( 2, TimeRelation::LessThan ),
                                            TimeSlot::PreElapsed ) ) == "F[t<2](M = TRUE)" );
}

TEST_CASE( "aggregate_tree" )
{
  auto const pr = primitive_of( "if ((C1 is ON and C2 is ON) or C3 is ON)\ndo M is ON" );
  auto const plain = [&]( Component const& c ) { return Formula::atom( *c.core.formal, c.core.negated ); };
  CHECK( tl::render( aggregate_tree( *pr.conditions, plain ) ) == "(((C1 = ON) & (C2 = ON)) | (C3 = ON))" );
  CHECK( tl::render( aggregate_tree( *pr.actions, plain ) ) == "M = ON" );
  CHECK_THROWS( aggregate_tree( *pr.conditions, []( Component const& ) -> Formula { throw ContractError( "unknown" ); } ) );

  // against a plain infix printer on generated trees
  rcm::testing::Generator gen( 41 );
  std::function<std::string( ComponentTree const&, bool )> infix = [&]( ComponentTree const& t, bool top ) -> std::string {
    if ( t.is_leaf() )
    {
      auto const text = tl::render( plain( t.component() ) );
      return top || text.front() == '!' || text.find( ' ' ) == std::string::npos ? text : "(" + text + ")";
    }
    return "(" + infix( t.left(), false ) + ( t.relation() == Coordination::And ? " & " : " | " ) + infix( t.right(), false ) + ")";
  };
  for ( int i = 0; i < 200; ++i )
  {
    auto const p = gen.primitive();
    CHECK( tl::render( aggregate_tree( *p.actions, plain ) ) == infix( *p.actions, true ) );
  }
}

TEST_CASE( "prepare_preconditions" )
{
  auto const s = Formula::prop( "S" );
  auto const q = Formula::prop( "Q" );
  CHECK( *prepare_preconditions( std::nullopt, s ) == s );
  CHECK( *prepare_preconditions( s, std::nullopt ) == s );
  CHECK( tl::render( *prepare_preconditions( s, q ) ) == "(S & Q)" );
  CHECK_FALSE( prepare_preconditions( std::nullopt, std::nullopt ) );
}

TEST_CASE( "apply_scope" )
{
  auto const p = Formula::prop( "P" );
  auto const s = rel( "sailing_termination", "true" );
  CHECK( tl::render( apply_scope( p, PreparedScope{ s, std::nullopt, EndupKind::Before }, Target::MTL ) ) ==
         "G((sailing_termination = true) -> F(P))" );
  CHECK( tl::render( apply_scope( p, PreparedScope{ std::nullopt, Formula::prop( "S" ), EndupKind::Until }, Target::MTL ) ) ==
         "F(P) U S" );
  CHECK( tl::render( apply_scope( p, PreparedScope{ std::nullopt, Formula::prop( "S" ), EndupKind::Before }, Target::CTL ) ) ==
         "A[(AF(P | S) | AG(!S)) W S]" );
  CHECK( apply_scope( p, std::nullopt, Target::CTL ) == p );

  Scope scope;
  scope.endup = Component{};
  scope.endup_kind = EndupKind::Until;
  CHECK( scope_rule( scope ) == 7 );
  scope.startup = Component{};
  CHECK( scope_rule( scope ) == 9 );
  scope.endup_kind = EndupKind::Before;
  CHECK( scope_rule( scope ) == 8 );
  scope.endup.reset();
  CHECK( scope_rule( scope ) == 5 );
}

TEST_CASE( "reference transformations" )
{
  auto const corpus = rcm::testing::fixture_corpus();
  auto const primitive = [&]( char const* id ) { return rcm::testing::find_requirement( corpus, id ).primitives[0]; };

  SUBCASE( "air_ok" )
  {
    auto const mtl = transform( primitive( "AIR-OK" ), Target::MTL );
    CHECK( tl::render_mtl( mtl.formula ) == "G((air_ok_signal = low) -> F[t<=3](auto_control_mode = terminated))" );
    CHECK( mtl.completeness == Completeness::Full );
    auto const ctl = transform( primitive( "AIR-OK" ), Target::CTL );
    CHECK( tl::render_ctl( ctl.formula ) == "AG((air_ok_signal = low) -> (auto_control_mode = terminated))" );
    CHECK( ctl.completeness == Completeness::Partial );
    REQUIRE( ctl.dropped.size() == 1u );
    CHECK( ctl.dropped[0] == DroppedProperty{ Property::A_pt, 11, std::string( kCtlTimeReason ) } );
  }
  SUBCASE( "cognitive threshold" )
  {
    auto const ctl = transform( primitive( "COGNITIVE-THRESHOLD" ), Target::CTL );
    CHECK( tl::render_ctl( ctl.formula ) == "AG((∃ deviation < 5) -> (the_cognitive_threshold = deviation))" );
    CHECK( ctl.completeness == Completeness::Full );
    auto const mtl = transform( primitive( "COGNITIVE-THRESHOLD" ), Target::MTL );
    CHECK( tl::render_mtl( mtl.formula ) == "G(the_cognitive_threshold = the_deviation)" );
    REQUIRE( mtl.dropped.size() == 1u );
    CHECK( mtl.dropped[0].property == Property::Hidden );
  }
  SUBCASE( "factual rule stays bare unless wrapped" )
  {
    auto const pr = primitive( "MONITOR-MODE" );
    CHECK( tl::render( transform( pr, Target::MTL ).formula ) == "the_monitor_mode = INIT" );
    CHECK( tl::render( transform( pr, Target::MTL, { true } ).formula ) == "G(the_monitor_mode = INIT)" );
    CHECK( tl::render( transform( pr, Target::CTL, { true } ).formula ) == "AG(the_monitor_mode = INIT)" );
  }
  SUBCASE( "REQ PR[1] steps" )
  {
    auto const pr = primitive( "REQ" );
    auto const prepared = [&]( Component const& c ) {
      auto f = Formula::atom( *c.core.formal, c.core.negated );
      for ( auto slot : { TimeSlot::Valid, TimeSlot::PreElapsed, TimeSlot::InBetween } )
      {
        if ( c.time( slot ) )
          f = attach_time_semantics( f, *c.time( slot ), slot );
      }
      return f;
    };
    CHECK( tl::render( aggregate_tree( *pr.conditions, prepared ) ) == "(G[t=1](X = ON) | ((Y = ON) & (Z = ON)))" );
    CHECK( tl::render( aggregate_tree( *pr.actions, prepared ) ) == "F[t<2](M = TRUE)" );
  }
  SUBCASE( "invalid primitive" )
  {
    CHECK_THROWS_AS( transform( primitive_of( "if X is ON" ), Target::MTL ), ContractError );
  }
}

TEST_CASE( "transformation laws on generated primitives" )
{
  rcm::testing::Generator gen( 53 );
  for ( int i = 0; i < 400; ++i )
  {
    auto const pr = gen.primitive();
    auto const profile = property_profile( pr );
    auto const mtl = transform( pr, Target::MTL );
    auto const ctl = transform( pr, Target::CTL );

    CHECK( ( mtl.completeness == Completeness::Full ) == mtl.dropped.empty() );
    CHECK( ( ctl.completeness == Completeness::Full ) == ctl.dropped.empty() );
    CHECK( ( mtl.completeness == Completeness::Full ) == !profile.contains( Property::Hidden ) );
    CHECK( ( ctl.completeness == Completeness::Full ) == !has_time_code( profile ) );
    CHECK( tl::mtl_valid( mtl.formula ) );
    CHECK( tl::ctl_valid( ctl.formula ) );

    bool const has_preconditions = pr.conditions || pr.triggers;
    if ( has_preconditions )
    {
      CHECK( mtl.formula.kind() == tl::NodeKind::G );
      CHECK( mtl.formula.child( 0 ).kind() == tl::NodeKind::Implies );
      CHECK( ctl.formula.kind() == tl::NodeKind::A );
      CHECK( ctl.formula.child( 0 ).kind() == tl::NodeKind::G );
      // a scope wraps the time-bounded side, never the other way round
      auto const& implication = mtl.formula.child( 0 );
      if ( pr.pre_scope )
        CHECK_FALSE( bounded_root( implication.left() ) );
      if ( pr.action_scope )
        CHECK_FALSE( bounded_root( implication.right() ) );
    }
    else if ( pr.action_scope )
      CHECK_FALSE( bounded_root( mtl.formula ) );
    CHECK_FALSE( ( has_preconditions && bounded_root( mtl.formula ) ) );

    // every dropped entry matches an unsupported capability and vice versa
    for ( auto const& [target, result] : { std::pair{ Target::MTL, mtl }, std::pair{ Target::CTL, ctl } } )
    {
      std::vector<DroppedProperty> unsupported;
      for ( auto const& cap : capability_report( pr, target ) )
      {
        CHECK( profile.contains( cap.property ) );
        if ( !cap.supported )
          unsupported.push_back( { cap.property, cap.rule, "" } );
      }
      REQUIRE( unsupported.size() == result.dropped.size() );
      for ( std::size_t k = 0; k < unsupported.size(); ++k )
      {
        CHECK( unsupported[k].property == result.dropped[k].property );
        CHECK( unsupported[k].rule == result.dropped[k].rule );
      }
    }
  }
}

TEST_CASE( "capability_report" )
{
  auto const corpus = rcm::testing::fixture_corpus();
  auto const unsupported = [&]( PrimitiveRequirement const& pr, Target target ) {
    std::vector<std::string> out;
    for ( auto const& cap : capability_report( pr, target ) )
    {
      if ( !cap.supported )
        out.push_back( std::string( to_string( cap.property ) ) );
    }
    return out;
  };
  auto const& air = rcm::testing::find_requirement( corpus, "AIR-OK" ).primitives[0];
  CHECK( unsupported( air, Target::CTL ) == std::vector<std::string>{ "A-pt" } );
  CHECK( unsupported( primitive_of( "do M is ON" ), Target::MTL ).empty() );
  auto const& deceleration = rcm::testing::find_requirement( corpus, "DECELERATION" ).primitives[0];
  CHECK( unsupported( deceleration, Target::MTL ).empty() );
  CHECK( capability_report( deceleration, Target::MTL ).size() == 5u );
}

TEST_CASE( "result block format" )
{
  TransformResult result;
  result.formula = Formula::prop( "P" );
  result.target = Target::CTL;
  result.completeness = Completeness::Partial;
  result.dropped = { { Property::A_pt, 11, std::string( kCtlTimeReason ) }, { Property::C_vt, 15, std::string( kCtlTimeReason ) } };
  CHECK( format_result( "X#1", result ) ==
         "id: X#1\ntarget: CTL\ncompleteness: Partial\n"
         "dropped: A-pt@11 (time bound not expressible in CTL), C-vt@15 (time bound not expressible in CTL)\nformula: P\n" );
  CHECK( target_from_string( "mtl" ) == Target::MTL );
  CHECK( target_from_string( "CTL" ) == Target::CTL );
  CHECK_FALSE( target_from_string( "ltl" ) );
}
