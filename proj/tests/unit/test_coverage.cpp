#include "generator.hpp"
#include "helpers.hpp"

#include <rcmforge/coverage.hpp>

#include <doctest.h>

using namespace rcm;

namespace
{

/* the reference approach table, one bit string per row in column order */
struct TableRow
{
  char const* code;
  char const* bits; // A A-vt A-rt A-pt C C-vt C-pt T T-vt T-rt SP SP-vt EP EP-vt SA SA-vt EA EA-vt Hidden
};

constexpr TableRow kTable[] = {
    { "A1", "1101110000100011110" },  { "A1", "1101000110100011110" },  { "A2", "1000100100000000000" },
    { "A2", "1000100000100000000" },  { "A2", "1000000100100000000" },  { "A3", "1000000100100000100" },
    { "A4", "1001111111100000000" },  { "A5", "1000100000000000000" },  { "A5", "1000000100000000000" },
    { "A6", "1011000000000010100" },  { "A6", "1011100000000010100" },  { "A6", "1000000101101000000" },
    { "A7", "1100100100101000000" },  { "A8", "1000100000000000001" },  { "A8", "1000000100000000001" },
    { "A8", "1000000000000010001" },  { "A8", "1000000000000000101" },  { "A9", "1000100000000000001" },
    { "A10", "1000100100101010101" }, { "A11", "1001100100101010100" }, { "A12", "1100110000101000100" },
    { "A13", "1001000000000010100" }, { "A13", "1010000000000010100" }, { "A13", "1100000000000010100" },
    { "A13", "1010010000101000000" }, { "A13", "1100010000101000000" }, { "A13", "1000100000101000100" },
    { "A14", "1000100000101000100" }, { "A15", "1101110000000000000" } };

PropertyProfile row_profile( char const* bits )
{
  PropertyProfile p;
  for ( std::size_t i = 0; i < kPropertyCount; ++i )
  {
    if ( bits[i] == '1' )
      p.insert( kAllProperties[i] );
  }
  return p;
}

/* covered iff every code of the profile is set in some row of the approach */
bool oracle_covers( std::string const& code, PropertyProfile const& profile )
{
  for ( auto const& row : kTable )
  {
    if ( code != row.code )
      continue;
    bool all = true;
    for ( std::size_t i = 0; i < kPropertyCount; ++i )
    {
      if ( profile.contains( kAllProperties[i] ) && row.bits[i] != '1' )
        all = false;
    }
    if ( all )
      return true;
  }
  return false;
}

} // namespace

TEST_CASE( "builtin registry matches the reference approach table" )
{
  auto const approaches = builtin_approaches();
  REQUIRE( approaches.size() == 15u );
  std::size_t rows = 0;
  for ( std::size_t i = 0; i < approaches.size(); ++i )
  {
    CHECK( approaches[i].code == "A" + std::to_string( i + 1 ) );
    CHECK_FALSE( approaches[i].citation.empty() );
    rows += approaches[i].formats.size();
  }
  CHECK( rows == std::size( kTable ) );
  CHECK( rows == 29u );

  std::size_t k = 0;
  for ( auto const& a : approaches )
  {
    for ( auto const& row : a.formats )
    {
      CAPTURE( a.code );
      CHECK( kTable[k].code == a.code );
      CHECK( row == row_profile( kTable[k].bits ) );
      CHECK( row.contains( Property::A ) );
      ++k;
    }
  }

  CHECK( approaches[1].name == "EARS" );
  CHECK( approaches[1].formats ==
         std::vector<PropertyProfile>{ { Property::A, Property::C, Property::T },
                                       { Property::A, Property::C, Property::SP },
                                       { Property::A, Property::T, Property::SP } } );
  CHECK( approaches[8].formats == std::vector<PropertyProfile>{ { Property::A, Property::C, Property::Hidden } } );
  CHECK( approaches[0].formats.size() == 2u );
  CHECK( approaches[12].formats.size() == 6u );

  // no reference row uses the pre-conditional scope valid-time columns
  for ( auto const& a : approaches )
  {
    for ( auto const& row : a.formats )
    {
      CHECK_FALSE( row.contains( Property::SP_vt ) );
      CHECK_FALSE( row.contains( Property::EP_vt ) );
    }
  }
}

TEST_CASE( "covers" )
{
  auto const approaches = builtin_approaches();
  auto const& ears = approaches[1];
  CHECK( covers( ears, { Property::T, Property::A, Property::SP } ) );
  CHECK_FALSE( covers( ears, { Property::T, Property::C, Property::SP, Property::A } ) );
  PropertyProfile const five{ Property::C, Property::SP, Property::A, Property::A_vt, Property::A_rt };
  for ( auto const& a : approaches )
  {
    CHECK_FALSE( covers( a, five ) );
    CHECK( covers( a, { Property::A } ) );
  }

  rcm::testing::Generator gen( 61 );
  for ( int i = 0; i < 2000; ++i )
  {
    auto const p = gen.profile();
    for ( auto const& a : approaches )
    {
      bool const c = covers( a, p );
      CHECK( c == oracle_covers( a.code, p ) );
      if ( c )
      {
        // monotone: dropping any member keeps it covered
        for ( auto member : p.properties() )
        {
          PropertyProfile smaller;
          for ( auto other : p.properties() )
          {
            if ( other != member )
              smaller.insert( other );
          }
          CHECK( covers( a, smaller ) );
        }
      }
    }
  }
}

TEST_CASE( "coverage_matrix" )
{
  auto const approaches = builtin_approaches();

  SUBCASE( "fixture corpus" )
  {
    auto const stats = coverage_matrix( flatten( rcm::testing::fixture_corpus() ), approaches );
    CHECK( stats.excluded.empty() );
    CHECK( stats.approaches.back().code == "RCM" );
    CHECK( stats.percentage( approaches.size() ) == doctest::Approx( 100.0 ) );
    for ( std::size_t j = 0; j < approaches.size(); ++j )
    {
      CHECK( stats.approaches[j].covered < stats.corpus_size() );
      CHECK( stats.percentage( j ) <= stats.percentage( approaches.size() ) );
    }
    CHECK_FALSE( stats.uncovered_by_all.empty() );
    CHECK( std::find( stats.uncovered_by_all.begin(), stats.uncovered_by_all.end(), "DECELERATION#1" ) !=
           stats.uncovered_by_all.end() );
    for ( std::size_t i = 0; i < kPropertyCount; ++i )
      CHECK( stats.property_frequency[i] > 0u );

    // matrix agrees with counts
    for ( std::size_t j = 0; j < stats.approaches.size(); ++j )
    {
      std::size_t count = 0;
      for ( auto const& row : stats.matrix )
        count += row[j] ? 1u : 0u;
      CHECK( count == stats.approaches[j].covered );
    }
  }
  SUBCASE( "singleton factual rule is covered by everyone" )
  {
    auto const stats = coverage_matrix( { { "F#1", rcm::testing::primitive_of( "do M is ON" ) } }, approaches );
    for ( std::size_t j = 0; j <= approaches.size(); ++j )
      CHECK( stats.approaches[j].covered == 1u );
    CHECK( stats.uncovered_by_all.empty() );
  }
  SUBCASE( "invalid members are excluded and reported" )
  {
    auto const stats = coverage_matrix(
        { { "ok#1", rcm::testing::primitive_of( "do M is ON" ) }, { "bad#1", rcm::testing::primitive_of( "if X is ON" ) } },
        approaches );
    CHECK( stats.corpus_size() == 1u );
    REQUIRE( stats.excluded.size() == 1u );
    CHECK( stats.excluded[0].id == "bad#1" );
    CHECK( stats.excluded[0].reason.find( "missing mandatory action" ) != std::string::npos );
  }
  SUBCASE( "empty corpus" )
  {
    CHECK_THROWS_WITH_AS( coverage_matrix( {}, approaches ), "empty corpus", Error );
  }
}

TEST_CASE( "complexity_histogram" )
{
  auto const factual = complexity_histogram( std::vector<PropertyProfile>{ { Property::A } } );
  CHECK( factual == std::map<std::size_t, double>{ { 1, 100.0 } } );

  auto const corpus = flatten( rcm::testing::fixture_corpus() );
  auto const six = std::find_if( corpus.begin(), corpus.end(), []( CorpusEntry const& e ) { return e.id == "SIX-PROPERTIES#1"; } );
  REQUIRE( six != corpus.end() );
  CHECK( complexity_histogram( std::vector<CorpusEntry>{ *six } ) == std::map<std::size_t, double>{ { 6, 100.0 } } );

  // first ten fixtures, recounted by hand from their profiles
  std::vector<CorpusEntry> ten( corpus.begin(), corpus.begin() + 10 );
  std::map<std::size_t, std::size_t> counts;
  for ( auto const& e : ten )
    ++counts[property_profile( e.primitive ).size()];
  auto const h = complexity_histogram( ten );
  double total = 0;
  for ( auto const& [size, share] : h )
  {
    CHECK( share == doctest::Approx( 10.0 * static_cast<double>( counts[size] ) ) );
    total += share;
  }
  CHECK( total == doctest::Approx( 100.0 ) );
}

TEST_CASE( "registry files" )
{
  auto const custom = parse_registry( "# one approach\nX1\tActions only\tA\n" );
  REQUIRE( custom.size() == 1u );
  auto const stats = coverage_matrix( flatten( rcm::testing::fixture_corpus() ), custom );
  for ( std::size_t i = 0; i < stats.ids.size(); ++i )
    CHECK( stats.matrix[i][0] == ( stats.profiles[i] == PropertyProfile{ Property::A } ) );

  try
  {
    parse_registry( "X1\tok\tA,C\nX2\tbad\tC,T\n", "reg.tsv" );
    FAIL( "expected TableError" );
  }
  catch ( TableError const& e )
  {
    CHECK( e.line() == 2u );
    CHECK( std::string( e.what() ) == "reg.tsv:2: every row must contain A" );
  }
  CHECK_THROWS_AS( parse_registry( "X1\tok\tA,Q\n" ), TableError );
  CHECK_THROWS_AS( parse_registry( "X1\tok\n" ), TableError );
  CHECK_THROWS_AS( parse_registry( "X1\tone\tA\nX1\ttwo\tA,C\n" ), TableError );
  CHECK_THROWS_AS( parse_registry( "# nothing\n" ), TableError );
}

TEST_CASE( "reports" )
{
  auto const stats = coverage_matrix( flatten( rcm::testing::fixture_corpus() ), builtin_approaches() );
  auto const text = format_coverage_text( stats );
  CHECK( text.find( "RCM   RCM" ) != std::string::npos );
  CHECK( text.find( "100.0%" ) != std::string::npos );
  CHECK( text.find( "uncovered by all approaches:" ) != std::string::npos );

  auto const csv = format_coverage_csv( stats );
  auto const header = csv.substr( 0, csv.find( '\n' ) );
  CHECK( header == "requirement,profile,A1,A2,A3,A4,A5,A6,A7,A8,A9,A10,A11,A12,A13,A14,A15,RCM" );
  CHECK( static_cast<std::size_t>( std::count( csv.begin(), csv.end(), '\n' ) ) == stats.corpus_size() + 1 );
  CHECK( csv.find( "\nFACTUAL-1#1,A,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1\n" ) != std::string::npos );
}
