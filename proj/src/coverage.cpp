#include <rcmforge/coverage.hpp>
#include <rcmforge/validate.hpp>

#include "embedded.hpp"
#include "text.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rcm
{

namespace
{

std::string percent( double value )
{
  char buffer[32];
  std::snprintf( buffer, sizeof buffer, "%.1f%%", value );
  return buffer;
}

std::string pad( std::string s, std::size_t width )
{
  if ( s.size() < width )
    s.append( width - s.size(), ' ' );
  return s;
}

} // namespace

std::vector<Approach> builtin_approaches()
{
  static std::vector<Approach> const approaches = parse_registry( embedded::approaches(), "<builtin registry>" );
  return approaches;
}

std::vector<Approach> parse_registry( std::string_view text, std::string const& origin )
{
  std::vector<Approach> approaches;
  std::size_t line_no = 0;
  for ( auto const& raw : text::split_lines( text ) )
  {
    ++line_no;
    auto const line = text::trim( raw );
    if ( line.empty() || line.front() == '#' )
      continue;
    auto const fields = text::split( raw, '\t' );
    if ( fields.size() != 3u && fields.size() != 4u )
      throw TableError( origin, line_no, "expected code<TAB>name<TAB>row[<TAB>citation]" );

    std::string const code( text::trim( fields[0] ) );
    std::string const name( text::trim( fields[1] ) );
    if ( code.empty() )
      throw TableError( origin, line_no, "empty approach code" );
    PropertyProfile row;
    try
    {
      row = PropertyProfile::parse( fields[2] );
    }
    catch ( Error const& e )
    {
      throw TableError( origin, line_no, e.what() );
    }
    if ( !row.contains( Property::A ) )
      throw TableError( origin, line_no, "every row must contain A" );

    auto it = std::find_if( approaches.begin(), approaches.end(), [&]( Approach const& a ) { return a.code == code; } );
    if ( it == approaches.end() )
    {
      approaches.push_back( { code, name, fields.size() == 4u ? std::string( text::trim( fields[3] ) ) : "", {} } );
      it = std::prev( approaches.end() );
    }
    else if ( it->name != name )
      throw TableError( origin, line_no, "approach " + code + " already named '" + it->name + "'" );
    it->formats.push_back( row );
  }
  if ( approaches.empty() )
    throw TableError( origin, line_no, "registry holds no approach" );
  return approaches;
}

std::vector<Approach> load_registry( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw Error( "cannot read registry '" + path.string() + "'" );
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_registry( buffer.str(), path.string() );
}

bool covers( Approach const& approach, PropertyProfile const& profile )
{
  return std::any_of( approach.formats.begin(), approach.formats.end(),
                      [&]( PropertyProfile const& row ) { return profile.is_subset_of( row ); } );
}

std::vector<CorpusEntry> flatten( std::vector<Requirement> const& requirements )
{
  std::vector<CorpusEntry> out;
  for ( auto const& r : requirements )
  {
    for ( std::size_t i = 0; i < r.primitives.size(); ++i )
      out.push_back( { r.id + "#" + std::to_string( i + 1 ), r.primitives[i] } );
  }
  return out;
}

double CoverageStats::percentage( std::size_t approach ) const
{
  if ( ids.empty() )
    return 0.0;
  return 100.0 * static_cast<double>( approaches.at( approach ).covered ) / static_cast<double>( ids.size() );
}

CoverageStats coverage_matrix( std::vector<CorpusEntry> const& corpus, std::vector<Approach> const& approaches )
{
  if ( corpus.empty() )
    throw Error( "empty corpus" );

  CoverageStats stats;
  for ( auto const& a : approaches )
    stats.approaches.push_back( { a.code, a.name, 0 } );
  stats.approaches.push_back( { "RCM", "RCM", 0 } );

  for ( auto const& entry : corpus )
  {
    auto const report = validate_primitive( entry.primitive );
    if ( !report.passed() )
    {
      std::string reason;
      for ( auto const& issue : report.issues )
      {
        if ( issue.severity == Severity::Fail )
          reason += ( reason.empty() ? "" : "; " ) + issue.path + ": " + issue.message;
      }
      stats.excluded.push_back( { entry.id, reason } );
      continue;
    }

    auto const profile = property_profile( entry.primitive );
    std::vector<bool> row;
    bool any = false;
    for ( std::size_t j = 0; j < approaches.size(); ++j )
    {
      bool const covered = covers( approaches[j], profile );
      row.push_back( covered );
      any = any || covered;
      if ( covered )
        ++stats.approaches[j].covered;
    }
    row.push_back( true );
    ++stats.approaches.back().covered;

    if ( !any )
      stats.uncovered_by_all.push_back( entry.id );
    for ( auto p : profile.properties() )
      ++stats.property_frequency[static_cast<std::size_t>( p )];
    ++stats.histogram[profile.size()];

    stats.ids.push_back( entry.id );
    stats.profiles.push_back( profile );
    stats.matrix.push_back( std::move( row ) );
  }
  return stats;
}

std::map<std::size_t, double> complexity_histogram( std::vector<PropertyProfile> const& profiles )
{
  std::map<std::size_t, double> out;
  if ( profiles.empty() )
    return out;
  for ( auto const& p : profiles )
    out[p.size()] += 1.0;
  for ( auto& [size, share] : out )
    share = 100.0 * share / static_cast<double>( profiles.size() );
  return out;
}

std::map<std::size_t, double> complexity_histogram( std::vector<CorpusEntry> const& corpus )
{
  std::vector<PropertyProfile> profiles;
  for ( auto const& entry : corpus )
  {
    if ( validate_primitive( entry.primitive ).passed() )
      profiles.push_back( property_profile( entry.primitive ) );
  }
  return complexity_histogram( profiles );
}

std::string format_coverage_text( CoverageStats const& stats )
{
  std::string out = "corpus: " + std::to_string( stats.corpus_size() ) + " primitive requirements (" +
                    std::to_string( stats.excluded.size() ) + " excluded)\n";
  for ( auto const& e : stats.excluded )
    out += "  excluded " + e.id + ": " + e.reason + "\n";

  std::size_t name_width = 4;
  for ( auto const& a : stats.approaches )
    name_width = std::max( name_width, a.name.size() );

  out += "\n" + pad( "code", 6 ) + pad( "name", name_width + 2 ) + pad( "covered", 9 ) + "percent\n";
  for ( std::size_t j = 0; j < stats.approaches.size(); ++j )
  {
    auto const& a = stats.approaches[j];
    out += pad( a.code, 6 ) + pad( a.name, name_width + 2 ) + pad( std::to_string( a.covered ), 9 ) +
           percent( stats.percentage( j ) ) + "\n";
  }

  out += "\nmatrix:\n";
  for ( std::size_t i = 0; i < stats.ids.size(); ++i )
  {
    out += "  " + stats.ids[i] + " " + stats.profiles[i].to_string() + ":";
    for ( std::size_t j = 0; j < stats.approaches.size(); ++j )
    {
      if ( stats.matrix[i][j] )
        out += " " + stats.approaches[j].code;
    }
    out += "\n";
  }

  out += "\nuncovered by all approaches: " + std::to_string( stats.uncovered_by_all.size() ) + "\n";
  for ( auto const& id : stats.uncovered_by_all )
  {
    auto const i = static_cast<std::size_t>( std::find( stats.ids.begin(), stats.ids.end(), id ) - stats.ids.begin() );
    out += "  " + id + " " + stats.profiles[i].to_string() + "\n";
  }

  out += "\nproperty frequency:\n";
  for ( auto p : kAllProperties )
  {
    auto const count = stats.property_frequency[static_cast<std::size_t>( p )];
    out += "  " + pad( std::string( to_string( p ) ), 8 ) + std::to_string( count ) + "\n";
  }

  out += "\nproperties per requirement:\n";
  for ( auto const& [size, count] : stats.histogram )
  {
    double const share = 100.0 * static_cast<double>( count ) / static_cast<double>( stats.corpus_size() );
    out += "  " + pad( std::to_string( size ), 4 ) + pad( std::to_string( count ), 6 ) + percent( share ) + "\n";
  }
  return out;
}

std::string format_coverage_csv( CoverageStats const& stats )
{
  std::string out = "requirement,profile";
  for ( auto const& a : stats.approaches )
    out += "," + a.code;
  out += "\n";
  for ( std::size_t i = 0; i < stats.ids.size(); ++i )
  {
    std::string codes;
    for ( auto p : stats.profiles[i].properties() )
      codes += ( codes.empty() ? "" : " " ) + std::string( to_string( p ) );
    out += stats.ids[i] + "," + codes;
    for ( bool covered : stats.matrix[i] )
      out += covered ? ",1" : ",0";
    out += "\n";
  }
  return out;
}

} // namespace rcm
