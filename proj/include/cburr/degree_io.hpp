#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cburr/sample.hpp"

namespace cburr {

struct ParseOptions {
  /// 0 splits on whitespace and commas; otherwise on this character only.
  char delimiter = 0;
  bool directed = false;
  bool dedupe = false;
  bool drop_self_loops = false;
};

/// Edges over interned node identifiers.
struct EdgeList {
  std::vector<std::string> node_names;  // index = node id
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  bool directed = false;
  std::size_t self_loops = 0;  // self-loop lines seen (kept unless dropped)
  std::size_t duplicates = 0;  // repeated edges seen (dropped when deduping)

  std::size_t n_nodes() const { return node_names.size(); }
  std::size_t n_edges() const { return edges.size(); }
};

/// Single-pass, line-based parse. Lines starting with % or # are skipped; a
/// "%%MatrixMarket" header also skips the following dimension line. The first
/// two tokens are the endpoints and further tokens are ignored.
/// Throws ParseError (with the line number) for lines with one token and
/// EmptyInputError when no edge is found.
EdgeList parse_edge_list(std::istream& in, const ParseOptions& options = {});
EdgeList parse_edge_list_file(const std::string& path, const ParseOptions& options = {});

enum class DegreeMode { total, in, out };

struct DegreeOptions {
  /// Degree contributed by a self-loop: 2 (default) or 1.
  int loop_degree = 2;
  /// in/out apply to directed edge lists only.
  DegreeMode mode = DegreeMode::total;
};

/// Degree histogram (degree -> number of nodes), isolates excluded.
struct DegreeSample {
  std::map<long long, long long> histogram;

  long long n() const;
  std::vector<long long> degrees() const;  // expanded multiset, ascending
  WeightedSample weighted() const;
  static DegreeSample from_degrees(const std::vector<long long>& degrees);
};

DegreeSample degrees(const EdgeList& edges, const DegreeOptions& options = {});

enum class StdevDivisor { n, n_minus_1 };

struct SummaryStats {
  double mean = 0.0;
  double stdev = 0.0;
  double cov = 0.0;  // stdev / mean
  long long n = 0;
  long long max = 0;
};

/// Throws InsufficientDataError for n < 2.
SummaryStats summary_stats(const DegreeSample& sample,
                           StdevDivisor divisor = StdevDivisor::n_minus_1);

/// "degree,count" CSV, one row per distinct degree.
void write_histogram_csv(std::ostream& out, const DegreeSample& sample);
DegreeSample read_histogram_csv(std::istream& in);

/// Positive values separated by whitespace, commas or newlines; # and % start
/// comments.
std::vector<double> read_value_list(std::istream& in);

enum class InputFormat { auto_detect, edges, histogram, values };

/// Loads a degree sample from a file. Auto-detection picks histogram CSV when
/// the first record is the "degree,count" header, a value list when records
/// hold one token, and an edge list otherwise. Returns raw values so that
/// non-integer value lists stay usable.
std::vector<double> load_sample_values(const std::string& path, InputFormat format,
                                       const ParseOptions& parse = {},
                                       const DegreeOptions& degree = {});

}  // namespace cburr
