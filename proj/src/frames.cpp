#include <rcmforge/frames.hpp>

#include "embedded.hpp"
#include "text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace rcm
{

namespace
{

constexpr std::string_view kAggregators[] = { "min", "max", "sum", "avg", "mean", "count" };

struct Irregular
{
  std::string_view head;
  std::vector<std::string_view> forms;
};

// Heads whose regular -s/-ed/-ing forms are wrong or incomplete.
std::vector<Irregular> const& irregulars()
{
  static std::vector<Irregular> const table{
      { "be", { "is", "are", "am", "was", "were", "been", "being" } },
      { "set", { "sets", "setting" } },
      { "reset", { "resets", "resetting" } },
      { "send", { "sends", "sent", "sending" } },
      { "become", { "becomes", "became", "becoming" } },
      { "begin", { "begins", "began", "begun", "beginning" } },
      { "shut", { "shuts", "shutting" } },
      { "go", { "goes", "went", "gone", "going" } },
      { "less", {} },
      { "greater", {} },
      { "larger", {} },
      { "smaller", {} },
      { "below", {} },
      { "above", {} },
  };
  return table;
}

bool is_vowel( char c )
{
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// consonant-vowel-consonant ending of a one-syllable head: stop -> stopped
bool doubles_final( std::string_view h )
{
  if ( h.size() < 3 || h.size() > 4 )
    return false;
  char const last = h[h.size() - 1];
  return !is_vowel( last ) && last != 'w' && last != 'x' && last != 'y' && is_vowel( h[h.size() - 2] ) &&
         !is_vowel( h[h.size() - 3] );
}

std::vector<std::string> split_lemma( std::string_view lemma )
{
  std::vector<std::string> parts;
  std::size_t start = 0;
  while ( true )
  {
    auto const dash = lemma.find( '-', start );
    parts.emplace_back( lemma.substr( start, dash - start ) );
    if ( dash == std::string_view::npos )
      break;
    start = dash + 1;
  }
  return parts;
}

struct CallForm
{
  std::string name;
  std::vector<std::string> args;
};

std::optional<CallForm> parse_call( std::string_view text )
{
  auto const open = text.find( '(' );
  if ( open == std::string_view::npos || open == 0 || text.back() != ')' )
    return std::nullopt;
  CallForm call{ std::string( text.substr( 0, open ) ), {} };
  auto inner = text.substr( open + 1, text.size() - open - 2 );
  if ( inner.empty() )
    return call;
  int depth = 0;
  std::size_t start = 0;
  for ( std::size_t i = 0; i <= inner.size(); ++i )
  {
    if ( i == inner.size() || ( inner[i] == ',' && depth == 0 ) )
    {
      call.args.emplace_back( text::trim( inner.substr( start, i - start ) ) );
      start = i + 1;
    }
    else if ( inner[i] == '(' )
      ++depth;
    else if ( inner[i] == ')' )
      --depth;
  }
  return call;
}

/* placeholders $1..$n referenced by a template part */
std::vector<std::size_t> placeholders( std::string_view part )
{
  std::vector<std::size_t> found;
  for ( std::size_t i = 0; i < part.size(); ++i )
  {
    if ( part[i] != '$' )
      continue;
    std::size_t j = i + 1;
    std::size_t value = 0;
    while ( j < part.size() && part[j] >= '0' && part[j] <= '9' )
      value = value * 10 + static_cast<std::size_t>( part[j++] - '0' );
    if ( j == i + 1 )
      throw Error( "bare '$' in frame template" );
    found.push_back( value );
    i = j - 1;
  }
  return found;
}

std::string substitute( std::string_view part, std::vector<std::string> const& terms )
{
  std::string out;
  for ( std::size_t i = 0; i < part.size(); ++i )
  {
    if ( part[i] != '$' )
    {
      out += part[i];
      continue;
    }
    std::size_t j = i + 1;
    std::size_t value = 0;
    while ( j < part.size() && part[j] >= '0' && part[j] <= '9' )
      value = value * 10 + static_cast<std::size_t>( part[j++] - '0' );
    out += terms.at( value - 1 );
    i = j - 1;
  }
  return out;
}

struct RelationalPattern
{
  std::string lhs;
  CompareOp op;
  std::string rhs;
};

RelationalPattern split_relational( std::string_view pattern )
{
  auto const tokens = text::split_whitespace( pattern );
  if ( tokens.size() != 3u )
    throw Error( "relational template must read '<lhs> <op> <rhs>': '" + std::string( pattern ) + "'" );
  auto const op = compare_op_from_string( tokens[1] );
  if ( !op )
    throw Error( "unknown comparison operator '" + tokens[1] + "' in frame template" );
  return { tokens[0], *op, tokens[2] };
}

std::string strip_spaces( std::string_view text )
{
  std::string out;
  for ( char c : text )
  {
    if ( c != ' ' && c != '\t' )
      out += c;
  }
  return out;
}

FormalSemantics instantiate( VerbFrame const& frame, std::vector<std::string> const& terms )
{
  if ( frame.format == SemanticFormat::Process )
  {
    auto const compact = strip_spaces( frame.pattern );
    auto call = parse_call( compact );
    ProcessSemantics process;
    if ( !call )
    {
      process.name = substitute( compact, terms );
      return process;
    }
    process.name = substitute( call->name, terms );
    for ( auto const& arg : call->args )
      process.args.push_back( substitute( arg, terms ) );
    return process;
  }

  auto const pattern = split_relational( frame.pattern );
  auto const lhs = substitute( pattern.lhs, terms );
  auto const rhs = substitute( pattern.rhs, terms );
  if ( auto call = parse_call( rhs ) )
  {
    bool const aggregating = std::find( std::begin( kAggregators ), std::end( kAggregators ), call->name ) !=
                             std::end( kAggregators );
    if ( aggregating || frame.format == SemanticFormat::RelationalAggregated )
      return AggregatedSemantics{ lhs, pattern.op, call->name, call->args };
  }
  return RelationalSemantics{ lhs, pattern.op, rhs };
}

} // namespace

std::string to_string( FrameKey const& key )
{
  return key.lemma + "/" + std::to_string( key.arity );
}

FrameKey parse_frame_key( std::string_view signature )
{
  auto const slash = signature.rfind( '/' );
  if ( slash == std::string_view::npos || slash == 0 )
    throw Error( "frame signature must read lemma/arity: '" + std::string( signature ) + "'" );
  auto const arity = text::parse_size( signature.substr( slash + 1 ) );
  if ( !arity )
    throw Error( "bad arity in frame signature '" + std::string( signature ) + "'" );
  std::string lemma = text::lower( signature.substr( 0, slash ) );
  std::replace( lemma.begin(), lemma.end(), '_', '-' );
  return { lemma, *arity };
}

VerbFrame make_frame( std::string_view lemma, std::size_t arity, SemanticFormat format, std::string_view pattern )
{
  std::string key = text::lower( text::trim( lemma ) );
  std::replace( key.begin(), key.end(), '_', '-' );
  if ( key.empty() || key.find_first_of( " \t" ) != std::string::npos )
    throw Error( "frame lemma must be a single non-empty token" );
  if ( arity == 0 )
    throw Error( "frame arity must be at least 1" );

  VerbFrame frame{ { key, arity }, format, std::string( text::trim( pattern ) ) };

  std::vector<std::size_t> used;
  if ( format == SemanticFormat::Process )
  {
    auto const compact = strip_spaces( frame.pattern );
    if ( compact.empty() )
      throw Error( "empty process template" );
    auto const call = parse_call( compact );
    if ( !call && compact.find_first_of( "()," ) != std::string::npos )
      throw Error( "process template must read name(args): '" + frame.pattern + "'" );
    used = placeholders( compact );
  }
  else
  {
    auto const parts = split_relational( frame.pattern );
    if ( format == SemanticFormat::RelationalAggregated && !parse_call( parts.rhs ) )
      throw Error( "aggregated template needs a function call on the right: '" + frame.pattern + "'" );
    used = placeholders( parts.lhs );
    auto const more = placeholders( parts.rhs );
    used.insert( used.end(), more.begin(), more.end() );
  }
  for ( auto index : used )
  {
    if ( index == 0 || index > arity )
      throw Error( "template placeholder $" + std::to_string( index ) + " outside 1.." + std::to_string( arity ) );
  }
  return frame;
}

FrameDatabase FrameDatabase::seed()
{
  static FrameDatabase const db = parse( embedded::frames(), "<builtin frames>" );
  return db;
}

FrameDatabase FrameDatabase::parse( std::string_view text, std::string const& origin )
{
  FrameDatabase db;
  std::size_t line_no = 0;
  for ( auto const& raw : text::split_lines( text ) )
  {
    ++line_no;
    auto const line = text::trim( raw );
    if ( line.empty() || line.front() == '#' )
      continue;
    auto const fields = text::split( raw, '\t' );
    if ( fields.size() != 4u )
      throw TableError( origin, line_no, "expected lemma<TAB>arity<TAB>format<TAB>template" );
    auto const arity = text::parse_size( text::trim( fields[1] ) );
    if ( !arity )
      throw TableError( origin, line_no, "arity must be a positive integer" );
    auto const format_name = text::trim( fields[2] );
    SemanticFormat format;
    if ( format_name == "process" )
      format = SemanticFormat::Process;
    else if ( format_name == "relational" )
      format = SemanticFormat::RelationalPlain;
    else if ( format_name == "aggregated" )
      format = SemanticFormat::RelationalAggregated;
    else
      throw TableError( origin, line_no, "unknown format '" + std::string( format_name ) + "'" );

    try
    {
      db = register_frame( db, make_frame( fields[0], *arity, format, fields[3] ), false );
    }
    catch ( TableError const& )
    {
      throw;
    }
    catch ( Error const& e )
    {
      throw TableError( origin, line_no, e.what() );
    }
  }
  return db;
}

FrameDatabase FrameDatabase::load( std::filesystem::path const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw Error( "cannot read frame database '" + path.string() + "'" );
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse( buffer.str(), path.string() );
}

VerbFrame const* FrameDatabase::find( FrameKey const& key ) const
{
  auto const it = _frames.find( key );
  return it == _frames.end() ? nullptr : &it->second;
}

bool FrameDatabase::has_lemma( std::string_view lemma ) const
{
  auto const it = _frames.lower_bound( FrameKey{ std::string( lemma ), 0 } );
  return it != _frames.end() && it->first.lemma == lemma;
}

std::vector<std::pair<std::string, std::size_t>> FrameDatabase::match_verb( std::vector<std::string> const& words,
                                                                             std::size_t index ) const
{
  std::vector<std::pair<std::string, std::size_t>> matches;
  if ( index >= words.size() || words[index].empty() )
    return matches;

  std::string last;
  for ( auto const& [key, frame] : _frames )
  {
    if ( key.lemma == last )
      continue;
    last = key.lemma;
    auto const parts = split_lemma( key.lemma );
    auto const forms = inflections( parts.front() );
    if ( std::find( forms.begin(), forms.end(), words[index] ) == forms.end() )
      continue;
    bool particles = index + parts.size() <= words.size();
    for ( std::size_t i = 1; particles && i < parts.size(); ++i )
      particles = words[index + i] == parts[i];
    if ( particles )
      matches.emplace_back( key.lemma, parts.size() - 1 );
  }
  return matches;
}

std::optional<std::string> FrameDatabase::lemma_of( std::string_view operator_text ) const
{
  std::vector<std::string> words;
  for ( auto const& word : text::split_whitespace( operator_text ) )
    words.push_back( text::lower( word ) );
  // "does exceed", "shall be set to": leading auxiliaries may precede the head
  for ( std::size_t start = 0; start < words.size(); ++start )
  {
    for ( auto const& [lemma, consumed] : match_verb( words, start ) )
    {
      if ( start + consumed + 1 == words.size() )
        return lemma;
    }
    if ( !is_auxiliary( words[start] ) )
      break;
  }
  return std::nullopt;
}

std::string FrameDatabase::to_table() const
{
  std::string out;
  for ( auto const& [key, frame] : _frames )
  {
    out += key.lemma + "\t" + std::to_string( key.arity ) + "\t" + std::string( to_string( frame.format ) ) + "\t" +
           frame.pattern + "\n";
  }
  return out;
}

FrameDatabase register_frame( FrameDatabase const& db, VerbFrame frame, bool replace )
{
  if ( !replace && db.find( frame.key ) )
    throw Error( "duplicate frame " + to_string( frame.key ) );
  FrameDatabase next = db;
  auto key = frame.key;
  next._frames.insert_or_assign( std::move( key ), std::move( frame ) );
  return next;
}

Predicate bind_predicate( Predicate const& predicate, FrameDatabase const& db )
{
  auto const arity = predicate.operands.size();
  if ( predicate.op.empty() )
    throw UnboundFrameError( "", arity, predicate.span );

  auto const lemma = db.lemma_of( predicate.op );
  if ( !lemma )
  {
    std::string guess;
    for ( auto const& word : text::split_whitespace( predicate.op ) )
      guess += ( guess.empty() ? "" : "-" ) + text::lower( word );
    throw UnboundFrameError( guess, arity, predicate.span );
  }
  auto const* frame = db.find( { *lemma, arity } );
  if ( !frame )
    throw UnboundFrameError( *lemma, arity, predicate.span );

  Predicate bound = predicate;
  std::vector<std::string> terms;
  for ( auto& operand : bound.operands )
  {
    terms.push_back( term_of( operand.text ) );
    if ( operand.has_hidden() )
    {
      operand.hidden = std::make_shared<HiddenConstraint const>(
          HiddenConstraint{ operand.hidden->marker, bind_predicate( operand.hidden->predicate, db ) } );
    }
  }
  bound.formal = instantiate( *frame, terms );
  return bound;
}

CompareOp formal_op_of( TimeRelation relation )
{
  switch ( relation )
  {
  case TimeRelation::Exactly:
    return CompareOp::Eq;
  case TimeRelation::AtMost:
    return CompareOp::Le;
  case TimeRelation::AtLeast:
    return CompareOp::Ge;
  case TimeRelation::LessThan:
    return CompareOp::Lt;
  case TimeRelation::GreaterThan:
    break;
  }
  return CompareOp::Gt;
}

std::optional<TimeRelation> relation_of( CompareOp op )
{
  switch ( op )
  {
  case CompareOp::Eq:
    return TimeRelation::Exactly;
  case CompareOp::Le:
    return TimeRelation::AtMost;
  case CompareOp::Ge:
    return TimeRelation::AtLeast;
  case CompareOp::Lt:
    return TimeRelation::LessThan;
  case CompareOp::Gt:
    return TimeRelation::GreaterThan;
  case CompareOp::Ne:
    break;
  }
  return std::nullopt;
}

TimeSpec bind_time( TimeSpec const& time )
{
  TimeSpec bound = time;
  bound.formal_op = formal_op_of( time.relation );
  return bound;
}

std::string term_of( std::string_view operand_text )
{
  std::string out;
  bool gap = false;
  for ( char c : text::trim( operand_text ) )
  {
    if ( c == ' ' || c == '\t' || c == '\n' || c == '\r' )
    {
      gap = true;
      continue;
    }
    if ( gap )
      out += '_';
    gap = false;
    out += c;
  }
  return out;
}

std::vector<std::string> inflections( std::string_view head_text )
{
  std::string const head = text::lower( head_text );
  std::vector<std::string> forms{ head };
  for ( auto const& irregular : irregulars() )
  {
    if ( irregular.head == head )
    {
      forms.insert( forms.end(), irregular.forms.begin(), irregular.forms.end() );
      return forms;
    }
  }
  if ( head.empty() )
    return forms;

  char const last = head.back();
  bool const consonant_y = last == 'y' && head.size() > 1 && !is_vowel( head[head.size() - 2] );
  std::string const stem = head.substr( 0, head.size() - 1 );

  if ( consonant_y )
    forms.push_back( stem + "ies" );
  else if ( last == 's' || last == 'x' || last == 'z' || head.ends_with( "ch" ) || head.ends_with( "sh" ) )
    forms.push_back( head + "es" );
  else
    forms.push_back( head + "s" );

  if ( last == 'e' )
  {
    forms.push_back( head + "d" );
    forms.push_back( head.ends_with( "ee" ) ? head + "ing" : stem + "ing" );
  }
  else if ( consonant_y )
  {
    forms.push_back( stem + "ied" );
    forms.push_back( head + "ing" );
  }
  else if ( doubles_final( head ) )
  {
    forms.push_back( head + last + "ed" );
    forms.push_back( head + last + "ing" );
  }
  else
  {
    forms.push_back( head + "ed" );
    forms.push_back( head + "ing" );
  }
  return forms;
}

bool is_auxiliary( std::string_view word )
{
  static std::set<std::string, std::less<>> const words{ "shall", "should", "must", "will", "would", "can",
                                                         "could", "may",    "might", "is",   "are",   "be",
                                                         "been",  "being",  "was",   "were", "am",    "does",
                                                         "do",    "did" };
  return words.contains( text::lower( word ) );
}

} // namespace rcm
