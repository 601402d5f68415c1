#include "cburr/degree_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "cburr/error.hpp"

namespace cburr {

namespace {

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\v' || ch == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits into at most `limit` tokens.
std::size_t tokenize(std::string_view line, char delimiter, std::string_view* out,
                     std::size_t limit) {
  std::size_t count = 0;
  std::size_t i = 0;
  const auto is_delim = [delimiter](char ch) {
    return delimiter == 0 ? (is_space(ch) || ch == ',') : ch == delimiter;
  };
  while (i < line.size() && count < limit) {
    while (i < line.size() && is_delim(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_delim(line[j])) ++j;
    const std::string_view tok = trim(line.substr(i, j - i));
    if (!tok.empty()) out[count++] = tok;
    i = j;
  }
  return count;
}

bool is_comment(std::string_view s) { return !s.empty() && (s[0] == '%' || s[0] == '#'); }

bool parse_integer(std::string_view s, long long& v) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool parse_number(std::string_view s, double& v) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + path);
  return in;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in, const ParseOptions& options) {
  EdgeList out;
  out.directed = options.directed;
  std::unordered_map<std::string, std::uint32_t> ids;
  std::unordered_set<std::uint64_t> seen;
  const auto intern = [&](std::string_view name) {
    auto [it, inserted] = ids.try_emplace(std::string(name),
                                          static_cast<std::uint32_t>(out.node_names.size()));
    if (inserted) out.node_names.emplace_back(name);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  bool skip_dimension_line = false;
  std::string_view tokens[2];
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    if (is_comment(s)) {
      if (s.rfind("%%MatrixMarket", 0) == 0) skip_dimension_line = true;
      continue;
    }
    if (skip_dimension_line) {
      skip_dimension_line = false;
      continue;
    }
    if (tokenize(s, options.delimiter, tokens, 2) < 2) {
      throw ParseError("expected two node identifiers", lineno);
    }
    const std::uint32_t a = intern(tokens[0]);
    const std::uint32_t b = intern(tokens[1]);
    if (a == b) {
      ++out.self_loops;
      if (options.drop_self_loops) continue;
    }
    std::uint32_t lo = a, hi = b;
    if (!options.directed && lo > hi) std::swap(lo, hi);
    const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
    if (!seen.insert(key).second) {
      ++out.duplicates;
      if (options.dedupe) continue;
    }
    out.edges.emplace_back(a, b);
  }
  if (out.edges.empty()) throw EmptyInputError("no edges found in input");
  return out;
}

EdgeList parse_edge_list_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in = open_file(path);
  return parse_edge_list(in, options);
}

long long DegreeSample::n() const {
  long long total = 0;
  for (const auto& [k, c] : histogram) total += c;
  return total;
}

std::vector<long long> DegreeSample::degrees() const {
  std::vector<long long> out;
  out.reserve(static_cast<std::size_t>(n()));
  for (const auto& [k, c] : histogram) out.insert(out.end(), static_cast<std::size_t>(c), k);
  return out;
}

WeightedSample DegreeSample::weighted() const {
  WeightedSample w;
  for (const auto& [k, c] : histogram) {
    w.values.push_back(static_cast<double>(k));
    w.weights.push_back(static_cast<double>(c));
  }
  return w;
}

DegreeSample DegreeSample::from_degrees(const std::vector<long long>& degrees) {
  DegreeSample s;
  for (long long k : degrees) {
    if (k > 0) ++s.histogram[k];
  }
  return s;
}

DegreeSample degrees(const EdgeList& edges, const DegreeOptions& options) {
  if (options.loop_degree != 1 && options.loop_degree != 2) {
    throw DomainError("loop degree must be 1 or 2");
  }
  std::vector<long long> deg(edges.n_nodes(), 0);
  const bool split = edges.directed && options.mode != DegreeMode::total;
  for (const auto& [a, b] : edges.edges) {
    if (split) {
      ++deg[options.mode == DegreeMode::out ? a : b];
    } else if (a == b) {
      deg[a] += options.loop_degree;
    } else {
      ++deg[a];
      ++deg[b];
    }
  }
  return DegreeSample::from_degrees(deg);
}

SummaryStats summary_stats(const DegreeSample& sample, StdevDivisor divisor) {
  SummaryStats s;
  s.n = sample.n();
  if (s.n < 2) throw InsufficientDataError("summary statistics need at least 2 values");
  double sum = 0.0;
  for (const auto& [k, c] : sample.histogram) sum += static_cast<double>(k) * c;
  s.mean = sum / static_cast<double>(s.n);
  double ss = 0.0;
  for (const auto& [k, c] : sample.histogram) {
    const double d = static_cast<double>(k) - s.mean;
    ss += d * d * static_cast<double>(c);
  }
  const double denom = static_cast<double>(divisor == StdevDivisor::n ? s.n : s.n - 1);
  s.stdev = std::sqrt(ss / denom);
  s.cov = s.stdev / s.mean;
  s.max = sample.histogram.rbegin()->first;
  return s;
}

void write_histogram_csv(std::ostream& out, const DegreeSample& sample) {
  out << "degree,count\n";
  for (const auto& [k, c] : sample.histogram) out << k << ',' << c << '\n';
}

DegreeSample read_histogram_csv(std::istream& in) {
  DegreeSample s;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  std::string_view tokens[3];
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || is_comment(t)) continue;
    if (first) {
      first = false;
      if (t == "degree,count") continue;
    }
    if (tokenize(t, ',', tokens, 3) != 2) {
      throw ParseError("expected 'degree,count'", lineno);
    }
    long long k = 0, c = 0;
    if (!parse_integer(tokens[0], k) || !parse_integer(tokens[1], c) || k < 1 || c < 0) {
      throw ParseError("degree must be a positive integer and count a non-negative integer",
                       lineno);
    }
    if (s.histogram.count(k)) throw ParseError("repeated degree " + std::to_string(k), lineno);
    if (c > 0) s.histogram[k] = c;
  }
  if (s.histogram.empty()) throw EmptyInputError("histogram has no counts");
  return s;
}

std::vector<double> read_value_list(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  std::string_view tokens[64];
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = trim(line);
    if (t.empty() || is_comment(t)) continue;
    while (!t.empty()) {
      const std::size_t count = tokenize(t, 0, tokens, 64);
      for (std::size_t i = 0; i < count; ++i) {
        double v = 0.0;
        if (!parse_number(tokens[i], v) || !std::isfinite(v) || !(v > 0.0)) {
          throw ParseError("expected a positive number, got '" + std::string(tokens[i]) + "'",
                           lineno);
        }
        out.push_back(v);
      }
      if (count < 64) break;
      const char* end = tokens[63].data() + tokens[63].size();
      t = std::string_view(end, static_cast<std::size_t>(t.data() + t.size() - end));
    }
  }
  if (out.empty()) throw EmptyInputError("no values found in input");
  return out;
}

std::vector<double> load_sample_values(const std::string& path, InputFormat format,
                                       const ParseOptions& parse,
                                       const DegreeOptions& degree) {
  if (format == InputFormat::auto_detect) {
    std::ifstream probe = open_file(path);
    std::string line;
    format = InputFormat::edges;
    while (std::getline(probe, line)) {
      const std::string_view t = trim(line);
      if (t.empty()) continue;
      if (is_comment(t)) {
        if (t.rfind("%%MatrixMarket", 0) == 0) break;
        continue;
      }
      std::string_view tokens[2];
      if (t == "degree,count") {
        format = InputFormat::histogram;
      } else if (tokenize(t, parse.delimiter, tokens, 2) < 2) {
        format = InputFormat::values;
      }
      break;
    }
  }
  std::ifstream in = open_file(path);
  switch (format) {
    case InputFormat::histogram: {
      const DegreeSample s = read_histogram_csv(in);
      const std::vector<long long> d = s.degrees();
      return {d.begin(), d.end()};
    }
    case InputFormat::values:
      return read_value_list(in);
    default: {
      const DegreeSample s = degrees(parse_edge_list(in, parse), degree);
      const std::vector<long long> d = s.degrees();
      return {d.begin(), d.end()};
    }
  }
}

}  // namespace cburr
