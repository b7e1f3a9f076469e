#pragma once

#include "model.hpp"

#include <string>
#include <vector>

namespace rcm
{

enum class Severity
{
  Info,
  Fail
};

enum class ValidationStatus
{
  Pass,
  Fail
};

std::string_view to_string( Severity severity );
std::string_view to_string( ValidationStatus status );

struct ValidationIssue
{
  Severity severity = Severity::Fail;
  std::string code;
  std::string message;
  std::string path;

  friend bool operator==( ValidationIssue const&, ValidationIssue const& ) = default;
};

struct ValidationReport
{
  ValidationStatus status = ValidationStatus::Pass;
  std::vector<ValidationIssue> issues;

  bool passed() const noexcept { return status == ValidationStatus::Pass; }
};

/// Structural validity of one primitive: at least one action leaf, every
/// time sub-component on an eligible kind, every leaf of the right kind for
/// its slot. Violations are reported, never thrown.
ValidationReport validate_primitive( PrimitiveRequirement const& pr );

/// Attach the artificial "equals true" argument to a bare one-operand
/// predicate; anything else comes back unchanged. Throws Error on a
/// predicate with no operands.
Predicate complete_predicate( Predicate const& predicate );

} // namespace rcm
