#include <catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <map>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "cburr/degree_io.hpp"
#include "cburr/error.hpp"
#include "cburr/rng.hpp"

using namespace cburr;
using Catch::Matchers::WithinAbs;

namespace {

EdgeList parse(const std::string& text, ParseOptions opts = {}) {
  std::istringstream in(text);
  return parse_edge_list(in, opts);
}

std::map<long long, long long> hist(const std::string& text, ParseOptions opts = {},
                                    DegreeOptions d = {}) {
  return degrees(parse(text, opts), d).histogram;
}

}  // namespace

TEST_CASE("edge list fixtures") {
  const EdgeList tri = parse("1 2\n2 3\n1 3\n");
  CHECK(tri.n_nodes() == 3);
  CHECK(tri.n_edges() == 3);

  const EdgeList dup = parse("% comment\n1 2\n1 2\n", ParseOptions{.dedupe = true});
  CHECK(dup.n_edges() == 1);
  CHECK(dup.duplicates == 1);
  const EdgeList kept = parse("1 2\n2 1\n");
  CHECK(kept.n_edges() == 2);
  CHECK(kept.duplicates == 1);

  const EdgeList named = parse("a,b\nb,c\n");
  CHECK(named.n_nodes() == 3);
  CHECK(named.n_edges() == 2);
  CHECK(named.node_names[0] == "a");

  const EdgeList mm = parse("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n2 3\n");
  CHECK(mm.n_edges() == 2);
  const EdgeList extra = parse("# header\n1\t2\t0.5\n\n2 3 17\r\n");
  CHECK(extra.n_edges() == 2);
  const EdgeList tabs = parse("x;y\ny;z\n", ParseOptions{.delimiter = ';'});
  CHECK(tabs.n_nodes() == 3);
}

TEST_CASE("degree fixtures") {
  CHECK(hist("1 2\n2 3\n1 3\n") == std::map<long long, long long>{{2, 3}});
  CHECK(hist("1 2\n1 3\n1 4\n") == std::map<long long, long long>{{1, 3}, {3, 1}});
  CHECK(hist("1 1\n") == std::map<long long, long long>{{2, 1}});
  CHECK(hist("1 1\n", {}, DegreeOptions{.loop_degree = 1}) == std::map<long long, long long>{{1, 1}});
  CHECK(hist("1 1\n1 2\n", ParseOptions{.drop_self_loops = true}) ==
        std::map<long long, long long>{{1, 2}});
  const EdgeList directed = parse("1 2\n1 3\n", ParseOptions{.directed = true});
  CHECK(degrees(directed, DegreeOptions{.mode = DegreeMode::out}).histogram ==
        std::map<long long, long long>{{2, 1}});
  CHECK(degrees(directed, DegreeOptions{.mode = DegreeMode::in}).histogram ==
        std::map<long long, long long>{{1, 2}});
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse("1 2\n# fine\n7\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse(""), EmptyInputError);
  CHECK_THROWS_AS(parse("% only comments\n\n"), EmptyInputError);
  CHECK_THROWS_AS(parse_edge_list_file("/nonexistent/file.edges"), DataError);
}

TEST_CASE("summary statistics") {
  const SummaryStats a = summary_stats(DegreeSample::from_degrees({2, 2, 2}));
  CHECK(a.mean == 2.0);
  CHECK(a.stdev == 0.0);
  CHECK(a.cov == 0.0);
  const SummaryStats b = summary_stats(DegreeSample::from_degrees({1, 3}), StdevDivisor::n);
  CHECK(b.mean == 2.0);
  CHECK_THAT(b.stdev, WithinAbs(1.0, 1e-15));
  const SummaryStats c = summary_stats(DegreeSample::from_degrees({1, 3}));
  CHECK_THAT(c.stdev, WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK(c.max == 3);
  CHECK_THROWS_AS(summary_stats(DegreeSample::from_degrees({4})), InsufficientDataError);
}

TEST_CASE("handshake identity on random graphs") {
  Rng rng(71);
  for (int c = 0; c < 1000; ++c) {
    const int nodes = 2 + static_cast<int>(rng.uniform() * 40);
    const int edges = 1 + static_cast<int>(rng.uniform() * 120);
    std::ostringstream text;
    std::set<std::pair<int, int>> simple;
    for (int e = 0; e < edges; ++e) {
      const int u = static_cast<int>(rng.uniform() * nodes);
      const int v = static_cast<int>(rng.uniform() * nodes);
      text << "n" << u << ' ' << "n" << v << '\n';
      simple.insert({std::min(u, v), std::max(u, v)});
    }
    const EdgeList raw = parse(text.str());
    long long sum = 0;
    for (auto [k, n] : degrees(raw).histogram) sum += k * n;
    REQUIRE(sum == 2 * static_cast<long long>(raw.n_edges()));

    const EdgeList deduped = parse(text.str(), ParseOptions{.dedupe = true});
    REQUIRE(deduped.n_edges() == simple.size());
    const DegreeSample ds = degrees(deduped);
    REQUIRE(ds.histogram.begin()->first >= 1);
    sum = 0;
    for (long long k : ds.degrees()) sum += k;
    REQUIRE(sum == 2 * static_cast<long long>(simple.size()));
  }
}

TEST_CASE("parser survives arbitrary bytes") {
  Rng rng(72);
  for (int c = 0; c < 2000; ++c) {
    std::string s;
    const int len = static_cast<int>(rng.uniform() * 200);
    for (int i = 0; i < len; ++i) {
      const double u = rng.uniform();
      if (u < 0.15) s += '\n';
      else if (u < 0.3) s += ' ';
      else if (u < 0.35) s += ',';
      else if (u < 0.38) s += '%';
      else s += static_cast<char>(rng.next() & 0xff);
    }
    try {
      const EdgeList e = parse(s);
      CHECK(e.n_edges() > 0);
      (void)degrees(e);
    } catch (const DataError&) {
    }
  }
}

TEST_CASE("histogram CSV round trip") {
  Rng rng(73);
  for (int c = 0; c < 50; ++c) {
    std::vector<long long> ks;
    for (int i = 0; i < 500; ++i) ks.push_back(1 + static_cast<long long>(std::pow(rng.uniform(), -1.5)));
    const DegreeSample s = DegreeSample::from_degrees(ks);
    std::stringstream io;
    write_histogram_csv(io, s);
    const DegreeSample back = read_histogram_csv(io);
    CHECK(back.histogram == s.histogram);
  }
  std::istringstream bare("3,4\n1,2\n");
  CHECK(read_histogram_csv(bare).histogram == std::map<long long, long long>{{1, 2}, {3, 4}});
  std::istringstream bad("degree,count\n2,x\n");
  CHECK_THROWS_AS(read_histogram_csv(bad), ParseError);
  std::istringstream values("1.5, 2\n# c\n3\n");
  CHECK(read_value_list(values) == std::vector<double>{1.5, 2, 3});
}

TEST_CASE("input format auto-detection") {
  const auto dir = std::filesystem::temp_directory_path() / "cburr_degree_io_test";
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const char* text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  };
  CHECK(load_sample_values(write("h.csv", "degree,count\n1,2\n4,1\n"), InputFormat::auto_detect) ==
        std::vector<double>{1, 1, 4});
  CHECK(load_sample_values(write("v.txt", "2.5\n3\n"), InputFormat::auto_detect) ==
        std::vector<double>{2.5, 3});
  CHECK(load_sample_values(write("e.edges", "1 2\n2 3\n1 3\n"), InputFormat::auto_detect) ==
        std::vector<double>{2, 2, 2});
  std::filesystem::remove_all(dir);
}

TEST_CASE("a million-edge file parses quickly") {
  const auto path = std::filesystem::temp_directory_path() / "cburr_million.edges";
  {
    std::ofstream out(path);
    Rng rng(74);
    for (int i = 0; i < 1000000; ++i) {
      out << rng.next() % 200000 << ' ' << rng.next() % 200000 << '\n';
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const EdgeList e = parse_edge_list_file(path.string());
  const DegreeSample d = degrees(e);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::filesystem::remove(path);
  CHECK(e.n_edges() == 1000000);
  CHECK(d.n() > 0);
  CHECK(secs < 10.0);
}
