#include <rcmforge/errors.hpp>

#include <utility>

namespace rcm
{

std::string to_string( SourceSpan const& span )
{
  return std::to_string( span.line ) + ":" + std::to_string( span.column );
}

namespace
{

std::string expected_suffix( std::vector<std::string> const& expected )
{
  if ( expected.empty() )
    return {};
  std::string out = " (expected ";
  for ( std::size_t i = 0; i < expected.size(); ++i )
  {
    if ( i > 0 )
      out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out + ")";
}

} // namespace

ParseError::ParseError( std::string const& message, SourceSpan span, std::vector<std::string> expected )
    : Error( to_string( span ) + ": " + message + expected_suffix( expected ) ),
      _span( span ),
      _expected( std::move( expected ) )
{
}

UnboundFrameError::UnboundFrameError( std::string lemma, std::size_t arity, std::optional<SourceSpan> span )
    : Error( ( span ? to_string( *span ) + ": " : std::string{} ) + "unbound frame " +
             ( lemma.empty() ? std::string( "<none>" ) : lemma ) + "/" + std::to_string( arity ) ),
      _lemma( std::move( lemma ) ),
      _arity( arity ),
      _span( span )
{
}

std::string UnboundFrameError::signature() const
{
  return _lemma + "/" + std::to_string( _arity );
}

EligibilityError::EligibilityError( std::string const& message, std::string path )
    : Error( path + ": " + message ), _path( std::move( path ) )
{
}

SchemaError::SchemaError( std::string const& path, std::string const& message )
    : Error( path + ": " + message ), _path( path )
{
}

ExpressibilityError::ExpressibilityError( std::string const& message, std::string construct )
    : Error( message + " (" + construct + ")" ), _construct( std::move( construct ) )
{
}

TableError::TableError( std::string origin, std::size_t line, std::string const& message )
    : Error( origin + ":" + std::to_string( line ) + ": " + message ), _origin( std::move( origin ) ), _line( line )
{
}

} // namespace rcm
