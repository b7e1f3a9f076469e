#pragma once

// Verb-frame database: maps a predicate's operator lemma and arity to a
// formal-semantics template. Templates use $1..$n for the operands, e.g.
//
//   exceed  2  relational  $1 > $2
//   send    3  process     send($1,$3,$2)
//
// The database is an immutable value; register_frame returns a new one.

#include "model.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

struct FrameKey
{
  std::string lemma; // particles joined with '-', e.g. "turn-to"
  std::size_t arity = 0;

  friend auto operator<=>( FrameKey const&, FrameKey const& ) = default;
  friend bool operator==( FrameKey const&, FrameKey const& ) = default;
};

std::string to_string( FrameKey const& key );

/// "exceed/2" -> {exceed, 2}. Underscores in the lemma read as '-'.
FrameKey parse_frame_key( std::string_view signature );

struct VerbFrame
{
  FrameKey key;
  SemanticFormat format = SemanticFormat::RelationalPlain;
  std::string pattern; // the template text

  friend bool operator==( VerbFrame const&, VerbFrame const& ) = default;
};

/// Builds a frame and checks that its template is well formed for the format
/// and only references $1..$arity. Throws Error otherwise.
VerbFrame make_frame( std::string_view lemma, std::size_t arity, SemanticFormat format, std::string_view pattern );

class FrameDatabase
{
public:
  FrameDatabase() = default;

  /// The built-in frame set.
  static FrameDatabase seed();

  /// Parse the line-oriented table format. Throws TableError.
  static FrameDatabase parse( std::string_view text, std::string const& origin = "<frames>" );
  static FrameDatabase load( std::filesystem::path const& path );

  VerbFrame const* find( FrameKey const& key ) const;
  bool has_lemma( std::string_view lemma ) const;
  std::size_t size() const { return _frames.size(); }
  bool empty() const { return _frames.empty(); }

  auto begin() const { return _frames.begin(); }
  auto end() const { return _frames.end(); }

  /// Lemmas whose verb head inflects to words[index] and whose particles
  /// follow it, each with the number of particle words consumed.
  std::vector<std::pair<std::string, std::size_t>> match_verb( std::vector<std::string> const& words,
                                                                std::size_t index ) const;

  /// Lemma of an operator phrase such as "transitions to" or "terminated".
  std::optional<std::string> lemma_of( std::string_view operator_text ) const;

  /// Serialise back into the table format, one frame per line, sorted by key.
  std::string to_table() const;

  friend FrameDatabase register_frame( FrameDatabase const& db, VerbFrame frame, bool replace );

private:
  std::map<FrameKey, VerbFrame> _frames;
};

/// New database containing `frame`. Throws Error("duplicate frame ...") when
/// the key exists and replace is false.
FrameDatabase register_frame( FrameDatabase const& db, VerbFrame frame, bool replace );

/// Populate `formal` by instantiating the frame matched by the predicate's
/// operator lemma and operand count. Operands, their order and the negation
/// flag are left untouched. Hidden constraints are bound recursively.
/// Throws UnboundFrameError.
Predicate bind_predicate( Predicate const& predicate, FrameDatabase const& db );

/// Comparison operator of a time relation: Exactly =, AtMost <=, AtLeast >=,
/// LessThan <, GreaterThan >.
CompareOp formal_op_of( TimeRelation relation );

/// Inverse of formal_op_of; empty for != which no relation produces.
std::optional<TimeRelation> relation_of( CompareOp op );

TimeSpec bind_time( TimeSpec const& time );

/// Formula term for an operand: trimmed, inner whitespace runs become '_'.
std::string term_of( std::string_view operand_text );

/// Lower-cased inflected forms of a verb lemma head ("exceed" ->
/// exceed/exceeds/exceeded/exceeding, "be" -> is/are/...).
std::vector<std::string> inflections( std::string_view head );

/// Auxiliary and modal words dropped around the operator ("shall", "is", ...).
bool is_auxiliary( std::string_view word );

} // namespace rcm
