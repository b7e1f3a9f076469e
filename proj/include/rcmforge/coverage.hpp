#pragma once

// Which legacy template approaches can represent a requirement. An approach
// is a list of property rows (one per template it offers); it covers a
// primitive when some row contains the primitive's whole profile.

#include "model.hpp"
#include "profile.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rcm
{

struct Approach
{
  std::string code; // A1 ... A15
  std::string name;
  std::string citation;
  std::vector<PropertyProfile> formats;

  friend bool operator==( Approach const&, Approach const& ) = default;
};

/// A1-A15 from the embedded registry.
std::vector<Approach> builtin_approaches();

/// Registry format: code<TAB>name<TAB>row[<TAB>citation], one line per row,
/// '#' comments. Rows of one approach may span several lines; approaches
/// keep first-appearance order. Throws TableError.
std::vector<Approach> parse_registry( std::string_view text, std::string const& origin = "<registry>" );
std::vector<Approach> load_registry( std::filesystem::path const& path );

bool covers( Approach const& approach, PropertyProfile const& profile );

struct CorpusEntry
{
  std::string id; // "REQ-1#2": requirement id and 1-based primitive index
  PrimitiveRequirement primitive;
};

/// Every primitive of every requirement, labelled.
std::vector<CorpusEntry> flatten( std::vector<Requirement> const& requirements );

struct ApproachCoverage
{
  std::string code;
  std::string name;
  std::size_t covered = 0;
};

struct ExcludedEntry
{
  std::string id;
  std::string reason;
};

struct CoverageStats
{
  std::vector<std::string> ids; // included primitives
  std::vector<PropertyProfile> profiles;
  /// matrix[i][j]: primitive i covered by approach j; the last column is RCM.
  std::vector<std::vector<bool>> matrix;
  /// One entry per approach, then the virtual RCM approach.
  std::vector<ApproachCoverage> approaches;
  std::vector<std::string> uncovered_by_all;
  std::array<std::size_t, kPropertyCount> property_frequency{};
  /// profile size -> number of primitives
  std::map<std::size_t, std::size_t> histogram;
  std::vector<ExcludedEntry> excluded;

  std::size_t corpus_size() const { return ids.size(); }
  double percentage( std::size_t approach ) const;
};

/// Throws Error("empty corpus") for an empty input. Primitives that fail
/// validation are listed in `excluded` and left out of every figure.
CoverageStats coverage_matrix( std::vector<CorpusEntry> const& corpus, std::vector<Approach> const& approaches );

/// Profile size -> share of the corpus in percent.
std::map<std::size_t, double> complexity_histogram( std::vector<PropertyProfile> const& profiles );
std::map<std::size_t, double> complexity_histogram( std::vector<CorpusEntry> const& corpus );

std::string format_coverage_text( CoverageStats const& stats );
/// requirement,profile,A1,...,RCM with 1/0 cells; profile codes space-separated.
std::string format_coverage_csv( CoverageStats const& stats );

} // namespace rcm
