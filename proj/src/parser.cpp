#include <rcmforge/parser.hpp>
#include <rcmforge/validate.hpp>

#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace rcm
{

namespace
{

std::set<std::string, std::less<>> const& stop_keywords()
{
  static std::set<std::string, std::less<>> const words{
      "and", "or",  "for", "within", "after-delay", "every", "if",     "when",  "do",
      "scope-pre", "scope-act", "pr", "req", "after", "before", "until", "while" };
  return words;
}

bool is_stop( std::string_view word )
{
  return stop_keywords().contains( word );
}

bool is_time_keyword( std::string_view word )
{
  return word == "for" || word == "within" || word == "after-delay" || word == "every";
}

bool is_determiner( std::string_view word )
{
  auto const w = text::lower( word );
  return w == "the" || w == "a" || w == "an";
}

enum class Tok
{
  Word,
  Quoted,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  End
};

struct Token
{
  Tok kind = Tok::End;
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::string_view describe( Tok kind )
{
  switch ( kind )
  {
  case Tok::Word:
    return "word";
  case Tok::Quoted:
    return "string";
  case Tok::LBrace:
    return "'{'";
  case Tok::RBrace:
    return "'}'";
  case Tok::LParen:
    return "'('";
  case Tok::RParen:
    return "')'";
  case Tok::LBracket:
    return "'['";
  case Tok::RBracket:
    return "']'";
  case Tok::End:
    break;
  }
  return "end of input";
}

class Source
{
public:
  explicit Source( std::string_view text ) : _text( text )
  {
    _line_starts.push_back( 0 );
    for ( std::size_t i = 0; i < text.size(); ++i )
    {
      if ( text[i] == '\n' )
        _line_starts.push_back( i + 1 );
    }
  }

  std::string_view text() const { return _text; }

  SourceSpan span( std::size_t begin, std::size_t end ) const
  {
    begin = std::min( begin, _text.size() );
    end = std::clamp( end, begin, _text.size() );
    auto const it = std::upper_bound( _line_starts.begin(), _line_starts.end(), begin );
    auto const line = static_cast<std::size_t>( it - _line_starts.begin() );
    return { line, begin - _line_starts[line - 1] + 1, begin, end };
  }

private:
  std::string_view _text;
  std::vector<std::size_t> _line_starts;
};

bool is_word_char( char c )
{
  return !std::isspace( static_cast<unsigned char>( c ) ) && c != '{' && c != '}' && c != '(' && c != ')' &&
         c != '[' && c != ']' && c != '"';
}

std::vector<Token> lex( Source const& source )
{
  auto const text = source.text();
  std::vector<Token> tokens;
  std::size_t i = 0;
  while ( true )
  {
    while ( i < text.size() && std::isspace( static_cast<unsigned char>( text[i] ) ) )
      ++i;
    if ( i >= text.size() )
      break;

    char const c = text[i];
    if ( c == '#' )
    {
      while ( i < text.size() && text[i] != '\n' )
        ++i;
      continue;
    }

    auto single = [&]( Tok kind ) {
      tokens.push_back( { kind, std::string( 1, c ), i, i + 1 } );
      ++i;
    };
    switch ( c )
    {
    case '{':
      single( Tok::LBrace );
      continue;
    case '}':
      single( Tok::RBrace );
      continue;
    case '(':
      single( Tok::LParen );
      continue;
    case ')':
      single( Tok::RParen );
      continue;
    case '[':
      single( Tok::LBracket );
      continue;
    case ']':
      single( Tok::RBracket );
      continue;
    default:
      break;
    }

    auto const begin = i;
    if ( c == '"' )
    {
      std::string value;
      ++i;
      bool closed = false;
      while ( i < text.size() )
      {
        if ( text[i] == '"' )
        {
          closed = true;
          ++i;
          break;
        }
        if ( text[i] == '\\' )
        {
          if ( i + 1 >= text.size() || ( text[i + 1] != '"' && text[i + 1] != '\\' ) )
            throw ParseError( "unknown escape in string", source.span( i, i + 2 ), { "\\\"", "\\\\" } );
          value += text[i + 1];
          i += 2;
          continue;
        }
        value += text[i++];
      }
      if ( !closed )
        throw ParseError( "unterminated string", source.span( begin, text.size() ) );
      tokens.push_back( { Tok::Quoted, std::move( value ), begin, i } );
      continue;
    }

    while ( i < text.size() && is_word_char( text[i] ) )
      ++i;
    std::string word( text.substr( begin, i - begin ) );

    // name(args) glued to a word is one operand term, e.g. min(Thr1,Thr2)
    if ( i < text.size() && text[i] == '(' && !is_stop( word ) )
    {
      int depth = 0;
      std::size_t j = i;
      for ( ; j < text.size(); ++j )
      {
        if ( text[j] == '(' )
          ++depth;
        else if ( text[j] == ')' && --depth == 0 )
          break;
        else if ( text[j] == '"' || text[j] == '{' || text[j] == '}' || text[j] == '[' || text[j] == ']' )
          break;
      }
      if ( j >= text.size() || text[j] != ')' )
        throw ParseError( "unbalanced '(' in term", source.span( i, j ), { "')'" } );
      for ( std::size_t k = i; k <= j; ++k )
      {
        if ( !std::isspace( static_cast<unsigned char>( text[k] ) ) )
          word += text[k];
      }
      i = j + 1;
    }
    tokens.push_back( { Tok::Word, std::move( word ), begin, i } );
  }
  tokens.push_back( { Tok::End, {}, text.size(), text.size() } );
  return tokens;
}

struct HiddenSpec;

struct PWord
{
  std::string text;
  bool quoted = false;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::shared_ptr<HiddenSpec> hidden;

  bool plain() const { return !quoted && !hidden; }
};

struct HiddenSpec
{
  RelativeMarker marker = RelativeMarker::That;
  std::vector<PWord> body;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::string join_words( std::vector<PWord>::const_iterator first, std::vector<PWord>::const_iterator last )
{
  std::string out;
  for ( auto it = first; it != last; ++it )
  {
    if ( it != first )
      out += ' ';
    out += it->text;
  }
  return out;
}

std::string strip_determiner( std::string const& operand )
{
  auto const space = operand.find( ' ' );
  if ( space != std::string::npos && is_determiner( operand.substr( 0, space ) ) )
    return operand.substr( space + 1 );
  return operand;
}

class Parser
{
public:
  Parser( std::string_view text, FrameDatabase const& db ) : _source( text ), _db( db )
  {
    _tokens = lex( _source );
  }

  std::vector<Requirement> document()
  {
    if ( peek().kind == Tok::End )
      throw ParseError( "expected 'req'", span_of( peek() ) );
    std::vector<Requirement> out;
    while ( peek().kind != Tok::End )
      out.push_back( requirement() );
    return out;
  }

  Requirement single()
  {
    if ( peek().kind == Tok::End )
      throw ParseError( "expected 'req'", span_of( peek() ) );
    auto requirement = this->requirement();
    if ( peek().kind != Tok::End )
      throw ParseError( "expected end of input after requirement", span_of( peek() ) );
    return requirement;
  }

  Predicate lone_predicate()
  {
    auto const begin = peek().begin;
    auto words = parse_words( false );
    if ( words.empty() )
      throw ParseError( "expected predicate text", span_of( peek() ) );
    if ( peek().kind != Tok::End )
      throw ParseError( "unexpected " + quote( peek() ) + " after predicate", span_of( peek() ) );
    auto const span = _source.span( begin, words.back().end );
    return bind_predicate( complete_predicate( build( words, std::nullopt, false, span ) ), _db );
  }

private:
  Token const& peek( std::size_t ahead = 0 ) const
  {
    return _tokens[std::min( _pos + ahead, _tokens.size() - 1 )];
  }

  Token const& next() { return _tokens[std::min( _pos++, _tokens.size() - 1 )]; }

  SourceSpan span_of( Token const& token ) const { return _source.span( token.begin, token.end ); }

  static std::string quote( Token const& token )
  {
    if ( token.kind == Tok::Word || token.kind == Tok::Quoted )
      return "'" + token.text + "'";
    return std::string( describe( token.kind ) );
  }

  bool at_keyword( std::string_view keyword ) const
  {
    return peek().kind == Tok::Word && peek().text == keyword;
  }

  void expect( Tok kind )
  {
    if ( peek().kind != kind )
      throw ParseError( "unexpected " + quote( peek() ), span_of( peek() ), { std::string( describe( kind ) ) } );
    next();
  }

  void expect_keyword( std::string_view keyword )
  {
    if ( !at_keyword( keyword ) )
    {
      throw ParseError( "unexpected " + quote( peek() ), span_of( peek() ),
                        { "'" + std::string( keyword ) + "'" } );
    }
    next();
  }

  Requirement requirement()
  {
    if ( !at_keyword( "req" ) )
      throw ParseError( "expected 'req'", span_of( peek() ) );
    next();
    if ( peek().kind != Tok::Quoted )
      throw ParseError( "unexpected " + quote( peek() ), span_of( peek() ), { "quoted requirement id" } );
    Requirement requirement{ next().text, {} };
    expect( Tok::LBrace );
    if ( !at_keyword( "pr" ) )
      throw ParseError( "expected 'pr'", span_of( peek() ), { "'pr'" } );
    while ( at_keyword( "pr" ) )
    {
      auto const path = "primitives[" + std::to_string( requirement.primitives.size() ) + "]";
      auto primitive = this->primitive();
      check_eligibility( primitive, path );
      requirement.primitives.push_back( std::move( primitive ) );
    }
    expect( Tok::RBrace );
    return requirement;
  }

  PrimitiveRequirement primitive()
  {
    expect_keyword( "pr" );
    expect( Tok::LBrace );
    PrimitiveRequirement pr;
    bool any = false;
    auto duplicate = [&]( Token const& token ) {
      throw ParseError( "duplicate '" + token.text + "' clause", span_of( token ) );
    };
    while ( peek().kind != Tok::RBrace )
    {
      auto const& token = peek();
      if ( token.kind != Tok::Word )
        break;
      if ( token.text == "if" || token.text == "when" || token.text == "do" )
      {
        auto const kind = token.text == "if"     ? ComponentKind::Condition
                          : token.text == "when" ? ComponentKind::Trigger
                                                 : ComponentKind::Action;
        auto& slot = kind == ComponentKind::Condition ? pr.conditions
                     : kind == ComponentKind::Trigger ? pr.triggers
                                                      : pr.actions;
        if ( slot )
          duplicate( token );
        next();
        slot = or_tree( kind );
      }
      else if ( token.text == "scope-pre" || token.text == "scope-act" )
      {
        auto& slot = token.text == "scope-pre" ? pr.pre_scope : pr.action_scope;
        if ( slot )
          duplicate( token );
        next();
        slot = scope();
      }
      else
        break;
      any = true;
    }
    if ( peek().kind != Tok::RBrace || !any )
    {
      std::vector<std::string> expected{ "'if'", "'when'", "'do'", "'scope-pre'", "'scope-act'" };
      if ( any )
        expected.push_back( "'}'" );
      throw ParseError( "unexpected " + quote( peek() ) + " in primitive", span_of( peek() ), expected );
    }
    next();
    return pr;
  }

  Scope scope()
  {
    Scope scope;
    bool any = false;
    while ( peek().kind == Tok::Word )
    {
      auto const token = peek();
      if ( token.text == "after" )
      {
        if ( scope.startup )
          throw ParseError( "duplicate scope start", span_of( token ) );
        next();
        scope.startup = component( ComponentKind::ScopeStartup );
      }
      else if ( token.text == "before" || token.text == "until" )
      {
        if ( scope.endup )
          throw ParseError( "duplicate scope end", span_of( token ) );
        next();
        scope.endup = component( ComponentKind::ScopeEndup );
        scope.endup_kind = token.text == "before" ? EndupKind::Before : EndupKind::Until;
      }
      else if ( token.text == "while" )
      {
        if ( scope.startup || scope.endup )
          throw ParseError( "'while' cannot combine with another scope boundary", span_of( token ) );
        next();
        auto start = component( ComponentKind::ScopeStartup );
        auto end = start;
        end.kind = ComponentKind::ScopeEndup;
        end.core.negated = !end.core.negated;
        scope.startup = std::move( start );
        scope.endup = std::move( end );
        scope.endup_kind = EndupKind::Until;
      }
      else
        break;
      any = true;
    }
    if ( !any )
    {
      throw ParseError( "unexpected " + quote( peek() ) + " in scope", span_of( peek() ),
                        { "'after'", "'before'", "'until'", "'while'" } );
    }
    return scope;
  }

  ComponentTree or_tree( ComponentKind kind )
  {
    auto tree = and_tree( kind );
    while ( at_keyword( "or" ) )
    {
      next();
      tree = ComponentTree::node( Coordination::Or, std::move( tree ), and_tree( kind ) );
    }
    return tree;
  }

  ComponentTree and_tree( ComponentKind kind )
  {
    auto tree = primary_tree( kind );
    while ( at_keyword( "and" ) )
    {
      next();
      tree = ComponentTree::node( Coordination::And, std::move( tree ), primary_tree( kind ) );
    }
    return tree;
  }

  ComponentTree primary_tree( ComponentKind kind )
  {
    if ( peek().kind == Tok::LParen )
    {
      next();
      auto tree = or_tree( kind );
      expect( Tok::RParen );
      return tree;
    }
    return ComponentTree::leaf( component( kind ) );
  }

  Component component( ComponentKind kind )
  {
    auto const begin = peek().begin;
    auto words = parse_words( false );
    if ( words.empty() )
      throw ParseError( "unexpected " + quote( peek() ), span_of( peek() ), { "predicate text" } );
    auto const pred_span = _source.span( begin, words.back().end );

    Component component;
    component.kind = kind;
    std::size_t end = words.back().end;
    while ( peek().kind == Tok::Word && is_time_keyword( peek().text ) )
      end = time( component );
    component.span = _source.span( begin, end );
    component.core = bind_predicate( complete_predicate( build( words, std::nullopt, false, pred_span ) ), _db );
    return component;
  }

  /* one time phrase; returns the end offset */
  std::size_t time( Component& component )
  {
    auto const keyword = next();
    TimeSpec spec;
    bool explicit_relation = false;
    if ( peek().kind == Tok::Word )
    {
      if ( auto relation = time_relation_from_string( peek().text ) )
      {
        if ( keyword.text == "within" )
          throw ParseError( "'within' takes no relation; use 'after-delay'", span_of( peek() ) );
        spec.relation = *relation;
        explicit_relation = true;
        next();
      }
    }
    if ( keyword.text == "within" )
      spec.relation = TimeRelation::AtMost;

    auto const& number = peek();
    double value = 0.0;
    bool ok = number.kind == Tok::Word;
    if ( ok )
    {
      auto const* first = number.text.data();
      auto const* last = first + number.text.size();
      auto const [ptr, ec] = std::from_chars( first, last, value );
      ok = ec == std::errc{} && ptr == last && std::isfinite( value ) && value >= 0.0;
    }
    if ( !ok )
    {
      std::vector<std::string> expected{ "non-negative number" };
      if ( !explicit_relation && keyword.text != "within" )
        expected.insert( expected.begin(), "relation" );
      throw ParseError( "unexpected " + quote( number ), span_of( number ), expected );
    }
    next();
    spec.value = value;

    auto const& unit = peek();
    if ( ( unit.kind != Tok::Word && unit.kind != Tok::Quoted ) || ( unit.kind == Tok::Word && is_stop( unit.text ) ) )
      throw ParseError( "unexpected " + quote( unit ), span_of( unit ), { "time unit" } );
    spec.unit = next().text;

    TimeSlot slot = keyword.text == "for"     ? TimeSlot::Valid
                    : keyword.text == "every" ? TimeSlot::InBetween
                                              : TimeSlot::PreElapsed;
    auto& target = slot == TimeSlot::Valid        ? component.valid_time
                   : slot == TimeSlot::InBetween ? component.in_between_time
                                                 : component.pre_elapsed_time;
    if ( target )
      throw ParseError( "duplicate " + std::string( to_string( slot ) ) + " time", span_of( keyword ) );
    target = bind_time( spec );
    return unit.end;
  }

  std::vector<PWord> parse_words( bool bracketed )
  {
    std::vector<PWord> words;
    while ( true )
    {
      auto const& token = peek();
      if ( token.kind != Tok::Word && token.kind != Tok::Quoted )
        break;
      if ( !bracketed && token.kind == Tok::Word && is_stop( token.text ) )
        break;
      if ( token.kind == Tok::Word && ( token.text == "that" || token.text == "whose" ) &&
           peek( 1 ).kind == Tok::LBracket )
      {
        if ( words.empty() )
          throw ParseError( "hidden constraint needs an operand before '" + token.text + "'", span_of( token ) );
        if ( words.back().hidden )
          throw ParseError( "operand already carries a hidden constraint", span_of( token ) );
        auto hidden = std::make_shared<HiddenSpec>();
        hidden->marker = token.text == "that" ? RelativeMarker::That : RelativeMarker::Whose;
        hidden->begin = token.begin;
        next();
        next();
        hidden->body = parse_words( true );
        if ( hidden->body.empty() )
          throw ParseError( "empty hidden constraint", span_of( peek() ), { "predicate text" } );
        hidden->end = peek().end;
        expect( Tok::RBracket );
        words.back().end = hidden->end;
        words.back().hidden = std::move( hidden );
        continue;
      }
      words.push_back( { token.text, token.kind == Tok::Quoted, token.begin, token.end, nullptr } );
      next();
    }
    return words;
  }

  struct Candidate
  {
    std::string lemma;
    std::size_t particles = 0;
    std::size_t index = 0;
    bool subject = false;
    std::vector<std::vector<PWord>> segments;
  };

  static bool better( Candidate const& a, Candidate const& b )
  {
    bool const a_be = a.lemma == "be";
    bool const b_be = b.lemma == "be";
    if ( a_be != b_be )
      return !a_be;
    if ( a.subject != b.subject )
      return a.subject;
    if ( a.particles != b.particles )
      return a.particles > b.particles;
    return a.index < b.index;
  }

  Operand make( std::vector<PWord> const& segment ) const
  {
    Operand operand = make_operand( join_words( segment.begin(), segment.end() ) );
    if ( auto const& spec = segment.back().hidden )
    {
      auto const span = _source.span( spec->begin, spec->end );
      auto inner = build( spec->body, spec->marker == RelativeMarker::That ? std::optional( operand.text ) : std::nullopt,
                          spec->marker == RelativeMarker::Whose, span );
      operand.hidden = std::make_shared<HiddenConstraint const>(
          HiddenConstraint{ spec->marker, complete_predicate( inner ) } );
    }
    return operand;
  }

  /* operator/operand split of one predicate's words */
  Predicate build( std::vector<PWord> words, std::optional<std::string> const& host, bool own_subject,
                   SourceSpan span ) const
  {
    Predicate predicate;
    predicate.span = span;
    std::erase_if( words, [&]( PWord const& w ) {
      if ( w.plain() && w.text == "not" )
      {
        predicate.negated = true;
        return true;
      }
      return false;
    } );
    if ( words.empty() && !host )
      throw ParseError( "predicate has no operands", span );

    std::vector<std::string> lowered;
    for ( auto const& w : words )
      lowered.push_back( w.plain() ? text::lower( w.text ) : std::string{} );

    auto hidden_misplaced = []( std::vector<PWord> const& segment ) {
      for ( std::size_t k = 0; k + 1 < segment.size(); ++k )
      {
        if ( segment[k].hidden )
          return true;
      }
      return false;
    };

    std::optional<Candidate> best;
    std::optional<std::pair<Candidate, std::size_t>> unbound;
    for ( std::size_t i = 0; i < words.size(); ++i )
    {
      for ( auto const& [lemma, particles] : _db.match_verb( lowered, i ) )
      {
        Candidate candidate{ lemma, particles, i, false, {} };
        std::vector<PWord> pre( words.begin(), words.begin() + static_cast<std::ptrdiff_t>( i ) );
        while ( !pre.empty() && pre.back().plain() && is_auxiliary( pre.back().text ) )
          pre.pop_back();

        std::vector<std::vector<PWord>> post( 1 );
        for ( auto k = i + 1 + particles; k < words.size(); ++k )
        {
          if ( words[k].plain() && words[k].text == "to" )
            post.emplace_back();
          else
            post.back().push_back( words[k] );
        }
        std::erase_if( post, []( auto const& segment ) { return segment.empty(); } );

        if ( host && !pre.empty() )
          continue;
        if ( own_subject && pre.empty() )
          continue;
        candidate.subject = !pre.empty();
        if ( !pre.empty() )
          candidate.segments.push_back( pre );
        candidate.segments.insert( candidate.segments.end(), post.begin(), post.end() );

        bool valid = true;
        for ( auto const& segment : candidate.segments )
        {
          if ( hidden_misplaced( segment ) ||
               ( segment.size() == 1u && segment.front().plain() && is_determiner( segment.front().text ) ) )
            valid = false;
        }
        if ( !valid )
          continue;

        auto const arity = candidate.segments.size() + ( host ? 1u : 0u );
        if ( !_db.find( { lemma, arity } ) )
        {
          if ( !unbound || better( candidate, unbound->first ) )
            unbound = std::pair( candidate, arity );
          continue;
        }
        if ( !best || better( candidate, *best ) )
          best = std::move( candidate );
      }
    }

    if ( best )
    {
      if ( host )
        predicate.operands.push_back( make_operand( strip_determiner( *host ) ) );
      for ( auto const& segment : best->segments )
        predicate.operands.push_back( make( segment ) );
      auto const first = words.begin() + static_cast<std::ptrdiff_t>( best->index );
      predicate.op = join_words( first, first + static_cast<std::ptrdiff_t>( best->particles + 1 ) );
      return predicate;
    }
    if ( unbound )
      throw UnboundFrameError( unbound->first.lemma, unbound->second, span );
    if ( host )
      throw ParseError( "hidden constraint after 'that' needs a verb", span );
    if ( hidden_misplaced( words ) )
      throw ParseError( "hidden constraint must close its operand", span );
    predicate.operands.push_back( make( words ) );
    return predicate;
  }

  Source _source;
  FrameDatabase const& _db;
  std::vector<Token> _tokens;
  std::size_t _pos = 0;
};

/* --- rendering --- */

class Renderer
{
public:
  explicit Renderer( FrameDatabase const& db ) : _db( db )
  {
    for ( auto const& [key, frame] : db )
    {
      auto const dash = key.lemma.find( '-' );
      for ( auto const& form : inflections( key.lemma.substr( 0, dash ) ) )
        _verb_forms.insert( form );
    }
  }

  std::string requirement( Requirement const& r ) const
  {
    std::string out = "req " + quoted( r.id ) + " {\n";
    for ( auto const& pr : r.primitives )
    {
      out += "  pr {\n";
      if ( pr.pre_scope )
        out += "    scope-pre" + scope( *pr.pre_scope ) + "\n";
      if ( pr.triggers )
        out += "    when " + tree( *pr.triggers, true ) + "\n";
      if ( pr.conditions )
        out += "    if " + tree( *pr.conditions, true ) + "\n";
      if ( pr.actions )
        out += "    do " + tree( *pr.actions, true ) + "\n";
      if ( pr.action_scope )
        out += "    scope-act" + scope( *pr.action_scope ) + "\n";
      out += "  }\n";
    }
    return out + "}\n";
  }

  std::string predicate( Predicate const& p, bool implicit_subject = false ) const
  {
    std::string out = p.negated ? "not " : "";
    if ( p.artificial && !implicit_subject )
      return out + operand( p.operands.front() );

    std::size_t k = implicit_subject ? 1 : 0;
    std::vector<std::string> parts;
    if ( !implicit_subject && !p.operands.empty() )
      parts.push_back( operand( p.operands[k++] ) );
    parts.push_back( p.op );
    for ( std::size_t first = k; k < p.operands.size(); ++k )
    {
      if ( k > first )
        parts.emplace_back( "to" );
      parts.push_back( operand( p.operands[k] ) );
    }
    for ( std::size_t i = 0; i < parts.size(); ++i )
      out += ( i ? " " : "" ) + parts[i];
    return out;
  }

private:
  static std::string quoted( std::string_view text )
  {
    std::string out = "\"";
    for ( char c : text )
    {
      if ( c == '"' || c == '\\' )
        out += '\\';
      out += c;
    }
    return out + "\"";
  }

  bool word_is_safe( std::string const& word ) const
  {
    if ( word.empty() || is_stop( word ) || word == "to" || word == "not" || word == "that" || word == "whose" ||
         is_auxiliary( word ) )
      return false;
    auto const lowered = text::lower( word );
    if ( _verb_forms.contains( lowered ) )
      return false;
    try
    {
      Source source( word );
      auto const tokens = lex( source );
      return tokens.size() == 2u && tokens[0].kind == Tok::Word && tokens[0].text == word;
    }
    catch ( ParseError const& )
    {
      return false;
    }
  }

  std::string operand_text( std::string const& text ) const
  {
    auto const words = text::split_whitespace( text );
    std::string joined;
    for ( auto const& w : words )
      joined += ( joined.empty() ? "" : " " ) + w;
    bool safe = !words.empty() && joined == text;
    if ( safe && words.size() == 1u && is_determiner( words.front() ) )
      safe = false;
    for ( auto const& w : words )
      safe = safe && word_is_safe( w );
    return safe ? text : quoted( text );
  }

  std::string operand( Operand const& o ) const
  {
    auto out = operand_text( o.text );
    if ( o.hidden )
    {
      bool const that = o.hidden->marker == RelativeMarker::That;
      out += that ? " that [" : " whose [";
      out += predicate( o.hidden->predicate, that ) + "]";
    }
    return out;
  }

  std::string time( std::string_view keyword, TimeSpec const& t ) const
  {
    std::string out = " " + std::string( keyword ) + " ";
    if ( t.relation != TimeRelation::Exactly )
      out += std::string( to_string( t.relation ) ) + " ";
    out += text::format_number( t.value ) + " ";
    bool const unit_safe = !t.unit.empty() && word_is_safe( t.unit ) && !time_relation_from_string( t.unit );
    return out + ( unit_safe ? t.unit : quoted( t.unit ) );
  }

  std::string component( Component const& c ) const
  {
    auto out = predicate( c.core );
    if ( c.valid_time )
      out += time( "for", *c.valid_time );
    if ( c.pre_elapsed_time )
      out += time( "after-delay", *c.pre_elapsed_time );
    if ( c.in_between_time )
      out += time( "every", *c.in_between_time );
    return out;
  }

  std::string tree( ComponentTree const& t, bool top ) const
  {
    if ( t.is_leaf() )
      return component( t.component() );
    auto out = tree( t.left(), false ) + ( t.relation() == Coordination::And ? " and " : " or " ) +
               tree( t.right(), false );
    return top ? out : "(" + out + ")";
  }

  std::string scope( Scope const& s ) const
  {
    std::string out;
    if ( s.startup )
      out += " after " + component( *s.startup );
    if ( s.endup )
      out += ( s.endup_kind == EndupKind::Before ? " before " : " until " ) + component( *s.endup );
    return out;
  }

  FrameDatabase const& _db;
  std::set<std::string, std::less<>> _verb_forms;
};

} // namespace

Requirement parse_dsl( std::string_view text, FrameDatabase const& db )
{
  return Parser( text, db ).single();
}

std::vector<Requirement> parse_dsl_document( std::string_view text, FrameDatabase const& db )
{
  return Parser( text, db ).document();
}

std::string render_dsl( Requirement const& requirement, FrameDatabase const& db )
{
  return Renderer( db ).requirement( requirement );
}

std::string render_dsl( std::vector<Requirement> const& requirements, FrameDatabase const& db )
{
  Renderer const renderer( db );
  std::string out;
  for ( std::size_t i = 0; i < requirements.size(); ++i )
    out += ( i ? "\n" : "" ) + renderer.requirement( requirements[i] );
  return out;
}

Predicate parse_predicate( std::string_view text, FrameDatabase const& db )
{
  return Parser( text, db ).lone_predicate();
}

std::string render_predicate( Predicate const& predicate, FrameDatabase const& db )
{
  return Renderer( db ).predicate( predicate );
}

} // namespace rcm
