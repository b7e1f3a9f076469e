#pragma once

// Temporal-logic formulas shared by the MTL and CTL targets.
//
// Rendered grammar (bit-exact, used by the golden files):
//   atom     lhs op rhs | lhs op fn(a,b) | name(a,b) | name
//   !x  (l & r)  (l | r)  l -> r  l U r  l W r
//   G(x) F(x) G[t<=2](x) F[t=3](x)
//   AG(x) AF(x) EG(x) EF(x) A[l U r] A[l W r] E[l U r] E[l W r]
//   (∃ atom) -> body       ("exists" instead of ∃ with ascii output)
// And/Or always carry their own parentheses except directly inside a
// G/F/AG/... wrapper. Relational atoms and ->, U, W, ∃ are parenthesised
// when they are the operand of a binary connective or of !.

#include "model.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcm::tl
{

enum class NodeKind : std::uint8_t
{
  Atom,
  Not,
  And,
  Or,
  Implies,
  G,
  F,
  Until,
  WeakUntil,
  A,
  E,
  Exists
};

std::string_view to_string( NodeKind kind );

struct TimeBound
{
  CompareOp op = CompareOp::Eq;
  double value = 0.0;
  std::string unit;

  friend bool operator==( TimeBound const&, TimeBound const& ) = default;
};

/* "t<=2" */
std::string to_string( TimeBound const& bound );

class Formula
{
public:
  static Formula atom( FormalSemantics semantics, bool negated = false );
  /// Propositional symbol, e.g. S; a process atom without arguments.
  static Formula prop( std::string name );
  static Formula negation( Formula f );
  static Formula conj( Formula l, Formula r );
  static Formula disj( Formula l, Formula r );
  static Formula implies( Formula l, Formula r );
  static Formula globally( Formula f, std::optional<TimeBound> bound = std::nullopt );
  static Formula finally( Formula f, std::optional<TimeBound> bound = std::nullopt );
  static Formula until( Formula l, Formula r );
  static Formula weak_until( Formula l, Formula r );
  static Formula all_paths( Formula f );
  static Formula some_path( Formula f );
  /// (∃ bound) -> body; `bound` is the hidden-constraint atom.
  static Formula exists( Formula bound, Formula body );

  NodeKind kind() const noexcept;
  std::size_t arity() const noexcept;
  Formula const& child( std::size_t index ) const;
  Formula const& left() const { return child( 0 ); }
  Formula const& right() const { return child( 1 ); }

  /// Atom only.
  FormalSemantics const& semantics() const;
  bool negated() const;

  /// G and F only; empty when unbounded.
  std::optional<TimeBound> const& bound() const;

  /// Copy of this node with different children (same kind, bound, atom).
  Formula with_children( std::vector<Formula> children ) const;
  /// G/F copy without its bound.
  Formula without_bound() const;

  std::size_t size() const;

  friend bool operator==( Formula const& a, Formula const& b );

private:
  struct Node;
  explicit Formula( std::shared_ptr<Node const> node );
  static std::shared_ptr<Node const> binary( NodeKind kind, Formula l, Formula r );
  std::shared_ptr<Node const> _node;
};

struct RenderOptions
{
  bool ascii = false;
};

/// Renders without validity checks.
std::string render( Formula const& f, RenderOptions const& options = {} );

/// First construct that keeps `f` out of the logic, empty when valid.
std::optional<std::string> mtl_violation( Formula const& f );
std::optional<std::string> ctl_violation( Formula const& f );

inline bool mtl_valid( Formula const& f )
{
  return !mtl_violation( f );
}
inline bool ctl_valid( Formula const& f )
{
  return !ctl_violation( f );
}

/// Throws ExpressibilityError("not expressible in MTL", construct).
std::string render_mtl( Formula const& f, RenderOptions const& options = {} );
/// Throws ExpressibilityError("not expressible in CTL", construct).
std::string render_ctl( Formula const& f, RenderOptions const& options = {} );

/// Text of an atom's formal semantics: "x > 1", "min(a,b)"-style process.
std::string render_semantics( FormalSemantics const& semantics );

} // namespace rcm::tl
