#pragma once

// Requirement Capturing Model: one requirement is a list of primitive
// requirements, each holding condition/trigger/action trees and up to two
// scopes. Every value is immutable once built; trees share their children.

#include "errors.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rcm
{

enum class ComponentKind : std::uint8_t
{
  Condition,
  Trigger,
  Action,
  ScopeStartup,
  ScopeEndup
};

enum class TimeRelation : std::uint8_t
{
  Exactly,
  AtMost,
  AtLeast,
  LessThan,
  GreaterThan
};

enum class CompareOp : std::uint8_t
{
  Eq,
  Ne,
  Lt,
  Gt,
  Le,
  Ge
};

/* the three time sub-components a component may carry */
enum class TimeSlot : std::uint8_t
{
  PreElapsed,
  Valid,
  InBetween
};

enum class Coordination : std::uint8_t
{
  And,
  Or
};

enum class EndupKind : std::uint8_t
{
  Before,
  Until
};

enum class SemanticFormat : std::uint8_t
{
  Process,
  RelationalPlain,
  RelationalAggregated
};

std::string_view to_string( ComponentKind kind );
std::string_view to_string( TimeRelation relation );
std::string_view to_string( CompareOp op );
std::string_view to_string( TimeSlot slot );
std::string_view to_string( Coordination relation );
std::string_view to_string( EndupKind kind );
std::string_view to_string( SemanticFormat format );

std::optional<ComponentKind> component_kind_from_string( std::string_view text );
std::optional<TimeRelation> time_relation_from_string( std::string_view text );
std::optional<CompareOp> compare_op_from_string( std::string_view text );
std::optional<Coordination> coordination_from_string( std::string_view text );
std::optional<EndupKind> endup_kind_from_string( std::string_view text );

struct TimeSpec
{
  double value = 0.0;
  std::string unit;
  TimeRelation relation = TimeRelation::Exactly;
  std::optional<CompareOp> formal_op; // set by bind_time

  friend bool operator==( TimeSpec const&, TimeSpec const& ) = default;
};

struct ProcessSemantics
{
  std::string name;
  std::vector<std::string> args;

  friend bool operator==( ProcessSemantics const&, ProcessSemantics const& ) = default;
};

struct RelationalSemantics
{
  std::string lhs;
  CompareOp op = CompareOp::Eq;
  std::string rhs;

  friend bool operator==( RelationalSemantics const&, RelationalSemantics const& ) = default;
};

/* relational with an aggregating function on the right, e.g. x < min(a,b) */
struct AggregatedSemantics
{
  std::string lhs;
  CompareOp op = CompareOp::Eq;
  std::string function;
  std::vector<std::string> args;

  friend bool operator==( AggregatedSemantics const&, AggregatedSemantics const& ) = default;
};

using FormalSemantics = std::variant<ProcessSemantics, RelationalSemantics, AggregatedSemantics>;

SemanticFormat format_of( FormalSemantics const& formal );

/* how a hidden constraint was introduced: `that [..]` constrains the operand
   itself (implicit subject), `whose [..]` names its own subject */
enum class RelativeMarker : std::uint8_t
{
  That,
  Whose
};

std::string_view to_string( RelativeMarker marker );

struct HiddenConstraint;

struct Operand
{
  std::string text;
  std::shared_ptr<HiddenConstraint const> hidden;

  bool has_hidden() const noexcept { return hidden != nullptr; }
  friend bool operator==( Operand const& a, Operand const& b );
};

struct Predicate
{
  std::vector<Operand> operands;
  std::string op; // semi-formal operator text, empty for a bare noun phrase
  bool negated = false;
  std::optional<FormalSemantics> formal;
  bool artificial = false;
  std::optional<SourceSpan> span; // diagnostics only, ignored by ==

  friend bool operator==( Predicate const& a, Predicate const& b );
};

struct HiddenConstraint
{
  RelativeMarker marker = RelativeMarker::That;
  Predicate predicate;

  friend bool operator==( HiddenConstraint const&, HiddenConstraint const& ) = default;
};

Operand make_operand( std::string text );
Operand make_operand( std::string text, RelativeMarker marker, Predicate constraint );

struct Component
{
  ComponentKind kind = ComponentKind::Action;
  Predicate core;
  std::optional<TimeSpec> valid_time;
  std::optional<TimeSpec> pre_elapsed_time;
  std::optional<TimeSpec> in_between_time;
  std::optional<SourceSpan> span;

  std::optional<TimeSpec> const& time( TimeSlot slot ) const;

  friend bool operator==( Component const& a, Component const& b );
};

/* binary coordination tree whose leaves are components of one kind */
class ComponentTree
{
public:
  static ComponentTree leaf( Component component );
  static ComponentTree node( Coordination relation, ComponentTree left, ComponentTree right );

  bool is_leaf() const noexcept;
  Component const& component() const;
  Coordination relation() const;
  ComponentTree const& left() const;
  ComponentTree const& right() const;

  std::size_t leaf_count() const;

  template<typename Fn>
  void for_each_leaf( Fn&& fn ) const
  {
    if ( is_leaf() )
    {
      fn( component() );
      return;
    }
    left().for_each_leaf( fn );
    right().for_each_leaf( fn );
  }

  friend bool operator==( ComponentTree const& a, ComponentTree const& b );

private:
  struct Node;
  explicit ComponentTree( Component component );
  explicit ComponentTree( std::shared_ptr<Node const> node );

  std::variant<Component, std::shared_ptr<Node const>> _data;
};

struct ComponentTree::Node
{
  Coordination relation;
  ComponentTree left;
  ComponentTree right;
};

struct Scope
{
  std::optional<Component> startup;
  std::optional<Component> endup;
  EndupKind endup_kind = EndupKind::Before; // meaningful only with endup

  friend bool operator==( Scope const& a, Scope const& b );
};

struct PrimitiveRequirement
{
  std::optional<ComponentTree> conditions;
  std::optional<ComponentTree> triggers;
  std::optional<ComponentTree> actions;
  std::optional<Scope> pre_scope;
  std::optional<Scope> action_scope;

  bool is_factual_rule() const;

  friend bool operator==( PrimitiveRequirement const&, PrimitiveRequirement const& ) = default;
};

struct Requirement
{
  std::string id;
  std::vector<PrimitiveRequirement> primitives;

  friend bool operator==( Requirement const&, Requirement const& ) = default;
};

/// Whether a component of `kind` may carry the time sub-component `slot`.
/// Valid-time fits every kind; pre-elapsed only conditions and actions;
/// in-between only triggers and actions.
constexpr bool is_eligible( ComponentKind kind, TimeSlot slot ) noexcept
{
  switch ( slot )
  {
  case TimeSlot::Valid:
    return true;
  case TimeSlot::PreElapsed:
    return kind == ComponentKind::Condition || kind == ComponentKind::Action;
  case TimeSlot::InBetween:
    return kind == ComponentKind::Trigger || kind == ComponentKind::Action;
  }
  return false;
}

/// Throws EligibilityError for the first time sub-component on an ineligible
/// component, scanning the primitives in order.
void check_eligibility( Requirement const& requirement );
void check_eligibility( PrimitiveRequirement const& primitive, std::string const& path = "" );

/// Visit every component of a primitive with its dotted path
/// (e.g. "conditions.left", "pre_scope.startup").
template<typename Fn>
void for_each_component( PrimitiveRequirement const& pr, Fn&& fn );

namespace detail
{
template<typename Fn>
void walk_tree( ComponentTree const& tree, std::string const& path, Fn& fn )
{
  if ( tree.is_leaf() )
  {
    fn( tree.component(), path );
    return;
  }
  walk_tree( tree.left(), path + ".left", fn );
  walk_tree( tree.right(), path + ".right", fn );
}
} // namespace detail

template<typename Fn>
void for_each_component( PrimitiveRequirement const& pr, Fn&& fn )
{
  if ( pr.pre_scope )
  {
    if ( pr.pre_scope->startup )
      fn( *pr.pre_scope->startup, std::string( "pre_scope.startup" ) );
    if ( pr.pre_scope->endup )
      fn( *pr.pre_scope->endup, std::string( "pre_scope.endup" ) );
  }
  if ( pr.triggers )
    detail::walk_tree( *pr.triggers, "triggers", fn );
  if ( pr.conditions )
    detail::walk_tree( *pr.conditions, "conditions", fn );
  if ( pr.actions )
    detail::walk_tree( *pr.actions, "actions", fn );
  if ( pr.action_scope )
  {
    if ( pr.action_scope->startup )
      fn( *pr.action_scope->startup, std::string( "action_scope.startup" ) );
    if ( pr.action_scope->endup )
      fn( *pr.action_scope->endup, std::string( "action_scope.endup" ) );
  }
}

} // namespace rcm
