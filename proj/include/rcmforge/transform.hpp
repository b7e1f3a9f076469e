#pragma once

// RCM to MTL/CTL compilation.
//
//   1. attach time to every component (valid innermost, then pre-elapsed,
//      then in-between)
//   2. fold each component tree into (l & r) / (l | r)
//   3. combine triggers and conditions into the preconditions
//   4. wrap preconditions in the pre-conditional scope, actions in the
//      action scope
//   5. G(lhs -> rhs), or AG(...) for CTL; rhs alone when there is no lhs

#include "model.hpp"
#include "profile.hpp"
#include "tl.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

enum class Target : std::uint8_t
{
  MTL,
  CTL
};

std::string_view to_string( Target target );
/// "mtl", "MTL", "ctl", "CTL"
std::optional<Target> target_from_string( std::string_view text );

enum class Completeness : std::uint8_t
{
  Full,
  Partial
};

std::string_view to_string( Completeness completeness );

struct Rule
{
  int index = 0;
  std::string_view property;   // "Condition", "Pre-elapsed-time", ...
  std::string_view version;    // "If S", "after at-most c time", ...
  std::string_view applies_to; // components P may stand for
  bool mtl = false;
  bool ctl = false;
};

/// Rows 1-25 of the mapping table, in index order.
std::span<Rule const> rule_table();
Rule const& rule( int index );

/// Placeholders of a rule template. c and unit feed the time rows.
struct RuleArguments
{
  tl::Formula p = tl::Formula::prop( "P" );
  tl::Formula s = tl::Formula::prop( "S" );
  tl::Formula q = tl::Formula::prop( "Q" );
  double c = 2;
  std::string unit;
};

/// The row's template for `target` filled with the arguments. Throws
/// ExpressibilityError when the row has no template for that target.
tl::Formula instantiate_rule( int index, Target target, RuleArguments const& arguments = {} );

/// Rule row of a time sub-component: 10-14 pre-elapsed, 15-19 valid,
/// 20-24 in-between, offset by the relation.
int time_rule( TimeSlot slot, TimeRelation relation );

struct DroppedProperty
{
  Property property = Property::A;
  int rule = 0;
  std::string reason;

  friend bool operator==( DroppedProperty const&, DroppedProperty const& ) = default;
};

struct TransformResult
{
  tl::Formula formula = tl::Formula::prop( "P" );
  Target target = Target::MTL;
  Completeness completeness = Completeness::Full;
  std::vector<DroppedProperty> dropped;
};

struct TransformOptions
{
  /// Wrap a formula without preconditions in G(...) / AG(...).
  bool wrap_factual = false;
};

inline constexpr std::string_view kCtlTimeReason = "time bound not expressible in CTL";
inline constexpr std::string_view kMtlHiddenReason = "existential hidden constraint needs branching time";

/// Step 1 for one time sub-component: PreElapsed F[b](base), Valid
/// G[b](base), InBetween G(F[b](base)), with b from the time's operator.
tl::Formula attach_time_semantics( tl::Formula const& base, TimeSpec const& time, TimeSlot slot );

/// Step 2. `prepared` maps every leaf component to its formula; it may throw
/// for a component it does not know.
tl::Formula aggregate_tree( ComponentTree const& tree,
                            std::function<tl::Formula( Component const& )> const& prepared );

/// Step 3: both present gives (triggers & conditions).
std::optional<tl::Formula> prepare_preconditions( std::optional<tl::Formula> const& triggers,
                                                  std::optional<tl::Formula> const& conditions );

/// Scope boundaries already turned into formulas.
struct PreparedScope
{
  std::optional<tl::Formula> startup;
  std::optional<tl::Formula> endup;
  EndupKind endup_kind = EndupKind::Before;
};

/// Step 4: rows 5-9 for the target; no scope leaves the side unchanged.
tl::Formula apply_scope( tl::Formula const& side, std::optional<PreparedScope> const& scope, Target target );

/// Scope row (5-9) that a scope instantiates.
int scope_rule( Scope const& scope );

/// Steps 1-5. Throws ContractError for a primitive that fails validation or
/// holds a predicate without formal semantics.
TransformResult transform( PrimitiveRequirement const& pr, Target target, TransformOptions const& options = {} );

struct Capability
{
  Property property = Property::A;
  bool supported = true;
  int rule = 0;

  friend bool operator==( Capability const&, Capability const& ) = default;
};

/// One entry per distinct (property, rule) the primitive instantiates, in
/// column order. MTL lacks only the hidden row; CTL lacks the time rows.
std::vector<Capability> capability_report( PrimitiveRequirement const& pr, Target target );

/// Golden-file block:
///   id: REQ#1
///   target: MTL
///   completeness: Partial
///   dropped: A-pt@11 (time bound not expressible in CTL)
///   formula: ...
std::string format_result( std::string_view id, TransformResult const& result, tl::RenderOptions const& options = {} );

std::string render( TransformResult const& result, tl::RenderOptions const& options = {} );

} // namespace rcm
