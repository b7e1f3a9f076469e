#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcm::text
{

inline std::string_view trim( std::string_view s )
{
  while ( !s.empty() && std::isspace( static_cast<unsigned char>( s.front() ) ) )
    s.remove_prefix( 1 );
  while ( !s.empty() && std::isspace( static_cast<unsigned char>( s.back() ) ) )
    s.remove_suffix( 1 );
  return s;
}

inline std::string lower( std::string_view s )
{
  std::string out( s );
  std::transform( out.begin(), out.end(), out.begin(),
                  []( unsigned char c ) { return static_cast<char>( std::tolower( c ) ); } );
  return out;
}

inline std::vector<std::string> split( std::string_view s, char sep )
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while ( true )
  {
    auto const pos = s.find( sep, start );
    out.emplace_back( s.substr( start, pos - start ) );
    if ( pos == std::string_view::npos )
      break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string> split_whitespace( std::string_view s )
{
  std::vector<std::string> out;
  std::size_t i = 0;
  while ( i < s.size() )
  {
    while ( i < s.size() && std::isspace( static_cast<unsigned char>( s[i] ) ) )
      ++i;
    auto const start = i;
    while ( i < s.size() && !std::isspace( static_cast<unsigned char>( s[i] ) ) )
      ++i;
    if ( i > start )
      out.emplace_back( s.substr( start, i - start ) );
  }
  return out;
}

/* lines without their terminator; a trailing '\r' is dropped */
inline std::vector<std::string> split_lines( std::string_view s )
{
  auto lines = split( s, '\n' );
  if ( !lines.empty() && lines.back().empty() )
    lines.pop_back();
  for ( auto& line : lines )
  {
    if ( !line.empty() && line.back() == '\r' )
      line.pop_back();
  }
  return lines;
}

inline std::optional<std::size_t> parse_size( std::string_view s )
{
  s = trim( s );
  std::size_t value = 0;
  auto const [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), value );
  if ( s.empty() || ec != std::errc{} || ptr != s.data() + s.size() )
    return std::nullopt;
  return value;
}

/* shortest round-tripping decimal form: 2 -> "2", 0.5 -> "0.5" */
inline std::string format_number( double value )
{
  char buffer[64];
  auto const [ptr, ec] = std::to_chars( buffer, buffer + sizeof buffer, value );
  return std::string( buffer, ptr );
}

} // namespace rcm::text
