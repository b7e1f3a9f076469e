#pragma once

// rcmforge command line:
//
//   rcmforge validate <files...>
//   rcmforge transform --to=mtl,ctl [--ascii] [--wrap-factual] <files...>
//   rcmforge coverage [--registry=F] [--format=text|csv] <files...>
//   rcmforge frames [--db=F] list|check
//
// Inputs ending in .json are read as canonical documents, anything else as
// DSL. --frames=F (or RCMFORGE_FRAMES) replaces the built-in frame database.

#include <iosfwd>
#include <string>
#include <vector>

namespace rcm
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // validation, parse or transform errors
inline constexpr int kExitUsage = 2;   // bad arguments, unreadable files

/// `args` excludes the program name.
int run_cli( std::vector<std::string> const& args, std::ostream& out, std::ostream& err );

} // namespace rcm
