#pragma once

#include <rcmforge/frames.hpp>
#include <rcmforge/model.hpp>
#include <rcmforge/parser.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace rcm::testing
{

inline std::string read_file( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::filesystem::path fixture_dir()
{
  return RCMFORGE_FIXTURE_DIR;
}

inline std::filesystem::path golden_dir()
{
  return RCMFORGE_GOLDEN_DIR;
}

/// The bundled .rcm fixtures in file-name order.
inline std::vector<std::filesystem::path> fixture_files()
{
  std::vector<std::filesystem::path> out;
  for ( auto const& entry : std::filesystem::directory_iterator( fixture_dir() ) )
  {
    if ( entry.path().extension() == ".rcm" )
      out.push_back( entry.path() );
  }
  std::sort( out.begin(), out.end() );
  return out;
}

inline std::vector<Requirement> fixture_corpus()
{
  std::vector<Requirement> out;
  for ( auto const& path : fixture_files() )
  {
    auto doc = parse_dsl_document( read_file( path ) );
    out.insert( out.end(), doc.begin(), doc.end() );
  }
  return out;
}

inline Requirement const& find_requirement( std::vector<Requirement> const& corpus, std::string const& id )
{
  for ( auto const& r : corpus )
  {
    if ( r.id == id )
      return r;
  }
  throw std::runtime_error( "no fixture " + id );
}

/// Single-primitive requirement body from DSL clause lines.
inline PrimitiveRequirement primitive_of( std::string const& clauses )
{
  return parse_dsl( "req \"T\" {\n  pr {\n" + clauses + "\n  }\n}\n" ).primitives.front();
}

inline Component leaf_component( ComponentKind kind, std::string const& text )
{
  Component c;
  c.kind = kind;
  c.core = parse_predicate( text );
  return c;
}

inline TimeSpec seconds( double value, TimeRelation relation = TimeRelation::Exactly )
{
  return bind_time( TimeSpec{ value, "seconds", relation, std::nullopt } );
}

} // namespace rcm::testing
