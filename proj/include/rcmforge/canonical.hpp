#pragma once

// Canonical JSON form of a requirement. Keys are emitted in sorted order with
// two-space indentation, so equal requirements dump to identical bytes.
// Source spans are not part of the format. See docs/canonical-format.md.

#include "model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

std::string dump_canonical( Requirement const& requirement );

/// A JSON array of requirements.
std::string dump_canonical( std::vector<Requirement> const& requirements );

/// Throws SchemaError (path-addressed, e.g. "$.primitives[0].actions") or
/// EligibilityError.
Requirement load_canonical( std::string_view text );

/// Accepts either one requirement object or an array of them.
std::vector<Requirement> load_canonical_document( std::string_view text );

} // namespace rcm
