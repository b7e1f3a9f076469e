#pragma once

// Structured requirement DSL.
//
//   req "REQ-7" {
//     pr {
//       scope-pre after sailing termination
//       if X is ON for 1 seconds or (Y is ON and Z is ON)
//       do M transitions to TRUE after-delay less-than 2 seconds
//     }
//   }
//
// Predicates are completed and frame-bound while parsing, so every
// component of the result carries formal semantics.

#include "frames.hpp"
#include "model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

/// Exactly one `req` block. Throws ParseError, UnboundFrameError or
/// EligibilityError.
Requirement parse_dsl( std::string_view text, FrameDatabase const& db = FrameDatabase::seed() );

/// One or more `req` blocks, in source order.
std::vector<Requirement> parse_dsl_document( std::string_view text, FrameDatabase const& db = FrameDatabase::seed() );

/// Pretty-print back into the DSL. parse_dsl(render_dsl(r)) == r for any
/// requirement produced by the parser.
std::string render_dsl( Requirement const& requirement, FrameDatabase const& db = FrameDatabase::seed() );
std::string render_dsl( std::vector<Requirement> const& requirements, FrameDatabase const& db = FrameDatabase::seed() );

/// Single predicate (no time phrases), e.g. "X exceeds 1".
Predicate parse_predicate( std::string_view text, FrameDatabase const& db = FrameDatabase::seed() );
std::string render_predicate( Predicate const& predicate, FrameDatabase const& db = FrameDatabase::seed() );

} // namespace rcm
