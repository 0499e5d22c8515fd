#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "rexp/libsvm.hpp"

using Catch::Matchers::ContainsSubstring;
using rexp::Dataset;
using rexp::LabelMap;
using rexp::ParseError;
using rexp::SparseExample;

namespace {

std::vector<SparseExample> collect(const Dataset& ds,
                                   Dataset::Order order = Dataset::Order::file,
                                   std::uint64_t seed = 0) {
  std::vector<SparseExample> out;
  ds.for_each(order, seed, [&](const SparseExample& ex) {
    out.push_back(ex);
    return true;
  });
  return out;
}

bool same_example(const SparseExample& a, const SparseExample& b) {
  return a.label == b.label && a.features == b.features;
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("basic lines parse into labels and sparse features") {
  const auto ex = rexp::parse_line("+1 3:0.5 7:1.2");
  REQUIRE(ex.label == 1);
  REQUIRE(ex.features == std::vector<std::pair<int, double>>{{3, 0.5}, {7, 1.2}});

  const auto bare = rexp::parse_line("-1");
  REQUIRE(bare.label == -1);
  REQUIRE(bare.features.empty());

  const auto raw = rexp::parse_line_raw("3.5 2:1e-3");
  REQUIRE(raw.label == 3.5);
  REQUIRE(raw.features == std::vector<std::pair<int, double>>{{2, 1e-3}});
}

TEST_CASE("whitespace, comments, and explicit plus signs are tolerated") {
  const auto ex = rexp::parse_line("  +1\t2:+0.25   4:2E+1  # trailing comment\r");
  REQUIRE(ex.label == 1);
  REQUIRE(ex.features == std::vector<std::pair<int, double>>{{2, 0.25}, {4, 20.0}});
}

TEST_CASE("malformed lines raise ParseError with the 1-based line number") {
  try {
    rexp::parse_line("1 2:a", 7);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 7);
    REQUIRE_THAT(e.what(), ContainsSubstring("line 7:"));
    REQUIRE_THAT(e.what(), ContainsSubstring("malformed feature value"));
  }
  REQUIRE_THROWS_AS(rexp::parse_line(""), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("# only a comment"), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("1 2:1 2:3"), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("1 5:1 3:1"), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("1 0:1"), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("nan 1:1"), ParseError);
  REQUIRE_THROWS_AS(rexp::parse_line("1 1:inf"), ParseError);
}

TEST_CASE("label maps send the smaller raw value to -1") {
  const auto m = LabelMap::from_values(7.0, 3.0);
  REQUIRE(m.map(3.0) == -1);
  REQUIRE(m.map(7.0) == +1);
  REQUIRE_FALSE(m.is_identity());
  REQUIRE_THROWS_AS(m.map(5.0), std::invalid_argument);

  const auto id = LabelMap::identity();
  REQUIRE(id.map(1.0) == 1);
  REQUIRE(id.map(-1.0) == -1);
  REQUIRE(id.is_identity());
  REQUIRE_THROWS_AS(id.map(5.0), std::invalid_argument);
  REQUIRE_THROWS_AS(LabelMap::from_values(2.0, 2.0), std::invalid_argument);
}

TEST_CASE("datasets with non-standard binary labels get an automatic map") {
  const auto ds = Dataset::from_text("3 1:1\n7 2:1\n3 1:-2\n");
  REQUIRE(ds.size() == 3);
  REQUIRE(ds.dimension() == 2);
  const auto exs = collect(ds);
  REQUIRE(exs[0].label == -1);
  REQUIRE(exs[1].label == +1);
  REQUIRE(exs[2].label == -1);

  const auto zero_one = collect(Dataset::from_text("0 1:1\n1 1:1\n"));
  REQUIRE(zero_one[0].label == -1);
  REQUIRE(zero_one[1].label == +1);

  // With labels {-1, 0}, 0 is the numerically larger value and maps to +1.
  const auto neg_zero = collect(Dataset::from_text("-1 1:1\n0 1:1\n"));
  REQUIRE(neg_zero[0].label == -1);
  REQUIRE(neg_zero[1].label == +1);
}

TEST_CASE("datasets that cannot be made binary are rejected at scan time") {
  REQUIRE_THROWS_MATCHES(Dataset::from_text("5 1:1\n5 2:1\n"), std::runtime_error,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("single label value")));
  REQUIRE_THROWS_MATCHES(Dataset::from_text("1 1:1\n2 1:1\n3 1:1\n"), std::runtime_error,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("3 distinct labels")));
  // All +1 (or all -1) is a legal degenerate binary problem.
  REQUIRE(Dataset::from_text("1 1:1\n+1 2:1\n").size() == 2);
  REQUIRE(Dataset::from_text("-1 1:1\n").labels().is_identity());
}

TEST_CASE("scan reports the offending line for malformed input") {
  const std::string text = "+1 1:1\n-1 2:1\n1 :5\n+1 3:1\n";
  try {
    Dataset::from_text(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line == 3);
  }
  TempFile f("rexp_badline.svm", text);
  REQUIRE_THROWS_AS(Dataset::open(f.path.string()), ParseError);
}

TEST_CASE("CRLF endings and a missing final newline both work") {
  const auto ds = Dataset::from_text("+1 1:0.5\r\n-1 2:0.25\r\n+1 1:-1");
  REQUIRE(ds.size() == 3);
  const auto exs = collect(ds);
  REQUIRE(exs[1].features == std::vector<std::pair<int, double>>{{2, 0.25}});
  REQUIRE(exs[2].features == std::vector<std::pair<int, double>>{{1, -1.0}});
}

TEST_CASE("empty input is an empty dataset") {
  const auto ds = Dataset::from_text("");
  REQUIRE(ds.size() == 0);
  REQUIRE(ds.dimension() == 0);
  int calls = 0;
  ds.for_each(Dataset::Order::file, 0, [&](const SparseExample&) {
    ++calls;
    return true;
  });
  REQUIRE(calls == 0);
}

TEST_CASE("file-backed and in-memory datasets stream identical examples") {
  std::string text;
  for (int i = 0; i < 2000; ++i) {
    text += (i % 3 == 0) ? "-1" : "+1";
    text += " " + std::to_string(1 + i % 5) + ":" + std::to_string(0.1 * (i % 17));
    if (i % 4 == 0) text += " " + std::to_string(7 + i % 3) + ":1.5";
    text += "\n";
  }
  TempFile f("rexp_stream.svm", text);
  const auto from_file = Dataset::open(f.path.string());
  const auto from_mem = Dataset::from_text(text);
  REQUIRE(from_file.size() == 2000);
  REQUIRE(from_file.size() == from_mem.size());
  REQUIRE(from_file.dimension() == from_mem.dimension());
  const auto a = collect(from_file);
  const auto b = collect(from_mem);
  for (std::size_t i = 0; i < a.size(); ++i) {
    INFO("example " << i);
    REQUIRE(same_example(a[i], b[i]));
  }
  // Shuffled streams agree between backends and across repeats of one seed.
  const auto sa = collect(from_file, Dataset::Order::shuffled, 42);
  const auto sb = collect(from_mem, Dataset::Order::shuffled, 42);
  const auto sc = collect(from_mem, Dataset::Order::shuffled, 42);
  bool moved = false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    REQUIRE(same_example(sa[i], sb[i]));
    REQUIRE(same_example(sb[i], sc[i]));
    moved = moved || !same_example(sa[i], a[i]);
  }
  REQUIRE(moved);  // seed 42 actually permutes something
}

TEST_CASE("the callback can stop a pass early") {
  const auto ds = Dataset::from_text("+1 1:1\n-1 1:2\n+1 1:3\n-1 1:4\n");
  int seen = 0;
  ds.for_each(Dataset::Order::file, 0, [&](const SparseExample&) {
    return ++seen < 3;
  });
  REQUIRE(seen == 3);
}

TEST_CASE("serialize round-trips through the parser") {
  SparseExample ex;
  ex.label = -1;
  ex.features = {{1, 0.1}, {9, -2.5e-7}, {40, 123456.75}};
  const std::string line = rexp::serialize(ex);
  REQUIRE(same_example(rexp::parse_line(line), ex));
  SparseExample pos;
  pos.label = 1;
  REQUIRE(rexp::serialize(pos) == "+1");
}

TEST_CASE("opening a missing file reports the path") {
  REQUIRE_THROWS_MATCHES(Dataset::open("/nonexistent/rexp-nope.svm"), std::runtime_error,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("cannot open dataset")));
}
