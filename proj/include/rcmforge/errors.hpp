#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcm
{

/// Location of a parsed node inside its source text. Offsets are byte
/// offsets; line and column are 1-based.
struct SourceSpan
{
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==( SourceSpan const&, SourceSpan const& ) = default;
};

std::string to_string( SourceSpan const& span );

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/* DSL syntax error; carries the offending span and what was expected there */
class ParseError : public Error
{
public:
  ParseError( std::string const& message, SourceSpan span, std::vector<std::string> expected = {} );

  SourceSpan const& span() const noexcept { return _span; }
  std::vector<std::string> const& expected() const noexcept { return _expected; }

private:
  SourceSpan _span;
  std::vector<std::string> _expected;
};

/* no verb frame registered for lemma/arity */
class UnboundFrameError : public Error
{
public:
  UnboundFrameError( std::string lemma, std::size_t arity, std::optional<SourceSpan> span = std::nullopt );

  std::string const& lemma() const noexcept { return _lemma; }
  std::size_t arity() const noexcept { return _arity; }
  std::optional<SourceSpan> const& span() const noexcept { return _span; }

  /// "lemma/arity", the key a caller would register
  std::string signature() const;

private:
  std::string _lemma;
  std::size_t _arity;
  std::optional<SourceSpan> _span;
};

/* a time sub-component attached to a component kind that cannot carry it */
class EligibilityError : public Error
{
public:
  EligibilityError( std::string const& message, std::string path );
  std::string const& path() const noexcept { return _path; }

private:
  std::string _path;
};

/* canonical document does not match the schema */
class SchemaError : public Error
{
public:
  SchemaError( std::string const& path, std::string const& message );
  std::string const& path() const noexcept { return _path; }

private:
  std::string _path;
};

/* a caller broke an operation's precondition */
class ContractError : public Error
{
public:
  using Error::Error;
};

/* formula uses a construct the requested logic cannot express */
class ExpressibilityError : public Error
{
public:
  ExpressibilityError( std::string const& message, std::string construct );
  std::string const& construct() const noexcept { return _construct; }

private:
  std::string _construct;
};

/* frame table or approach registry file is malformed */
class TableError : public Error
{
public:
  TableError( std::string origin, std::size_t line, std::string const& message );
  std::string const& origin() const noexcept { return _origin; }
  std::size_t line() const noexcept { return _line; }

private:
  std::string _origin;
  std::size_t _line;
};

} // namespace rcm
