#include "smatch/partition.hpp"

#include "smatch/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace smatch;

TEST_CASE("bell counts for one to nine sites") {
  const std::int64_t expected[] = {1, 2, 5, 15, 52, 203, 877, 4140, 21147};
  for (int n = 1; n <= 9; ++n) {
    CHECK(bell_number(n) == expected[n - 1]);
    CHECK(std::ssize(enumerate_partitions(n)) == expected[n - 1]);
  }
}

TEST_CASE("enumeration bounds") {
  CHECK_THROWS_AS(enumerate_partitions(0), ValidationError);
  CHECK_THROWS_AS(enumerate_partitions(13), ValidationError);
  CHECK_THROWS_WITH(enumerate_partitions(13), doctest::Contains("12"));
}

TEST_CASE("enumeration is canonical, unique and ordered") {
  for (int n = 1; n <= 6; ++n) {
    const auto parts = enumerate_partitions(n);
    CHECK(parts.front() == Partition::single_block(n));
    CHECK(parts.back() == Partition::discrete(n));
    CHECK(std::is_sorted(parts.begin(), parts.end()));
    std::set<Partition> unique(parts.begin(), parts.end());
    CHECK(unique.size() == parts.size());
    for (const Partition& p : parts) {
      CHECK(p.size() == n);
      CHECK(p.block_count() >= 1);
      CHECK(p.block_count() <= n);
      // canonical round trip
      CHECK(Partition::parse(p.to_string()) == p);
    }
  }
}

TEST_CASE("partitions of three sites, explicitly") {
  const auto parts = enumerate_partitions(3);
  REQUIRE(parts.size() == 5);
  CHECK(parts[0] == Partition::parse("1,2,3"));
  CHECK(parts[1] == Partition::parse("1,2|3"));
  CHECK(parts[2] == Partition::parse("1,3|2"));
  CHECK(parts[3] == Partition::parse("1|2,3"));
  CHECK(parts[4] == Partition::parse("1|2|3"));
}

TEST_CASE("type of match") {
  CHECK(type_of_match({"A123XYZ", "A123XYZ", "C789ABC"}) == Partition::parse("1,2|3"));
  CHECK(type_of_match({"A123XYZ", "A123XYZ", "A123XYZ"}) == Partition::parse("1,2,3"));
  CHECK(type_of_match({"a", "b", "c"}) == Partition::discrete(3));
  CHECK(type_of_match({"x"}) == Partition::single_block(1));
  CHECK_THROWS_AS(type_of_match(ObservationTuple{}), ValidationError);
}

TEST_CASE("type of match equals equality pattern, exhaustively") {
  // tuples over an alphabet of three keys, up to four sites
  for (int n = 2; n <= 4; ++n) {
    std::vector<std::vector<int>> tuples;
    std::vector<int> tuple(n, 0);
    for (;;) {
      tuples.push_back(tuple);
      int i = n - 1;
      while (i >= 0 && ++tuple[i] == 3) tuple[i--] = 0;
      if (i < 0) break;
    }
    for (const auto& y : tuples) {
      for (const auto& z : tuples) {
        bool same_pattern = true;
        for (int i = 0; i < n && same_pattern; ++i)
          for (int j = i + 1; j < n && same_pattern; ++j)
            same_pattern = (y[i] == y[j]) == (z[i] == z[j]);
        CHECK((type_of_match(std::span<const int>(y)) ==
               type_of_match(std::span<const int>(z))) == same_pattern);
      }
    }
  }
}

TEST_CASE("precedes basics") {
  const Partition bottom = Partition::single_block(3);
  for (const Partition& p : enumerate_partitions(3)) CHECK(precedes(bottom, p));
  CHECK(precedes(Partition::parse("1,2|3"), Partition::discrete(3)));
  CHECK_FALSE(precedes(Partition::parse("1,2|3"), Partition::parse("1,3|2")));
  CHECK_THROWS_AS(precedes(Partition::single_block(2), Partition::single_block(3)),
                  ValidationError);
}

TEST_CASE("precedes is a partial order, exhaustively to five sites") {
  for (int n = 2; n <= 5; ++n) {
    const auto parts = enumerate_partitions(n);
    for (const Partition& a : parts) {
      CHECK(precedes(a, a));
      for (const Partition& b : parts) {
        if (precedes(a, b) && precedes(b, a)) CHECK(a == b);
        for (const Partition& c : parts)
          if (precedes(a, b) && precedes(b, c)) CHECK(precedes(a, c));
      }
    }
  }
}

TEST_CASE("block count is a consistent enumeration") {
  for (int n = 2; n <= 5; ++n) {
    const auto parts = enumerate_partitions(n);
    for (const Partition& a : parts)
      for (const Partition& b : parts)
        if (precedes(a, b) && a != b) CHECK(a.block_count() < b.block_count());
  }
  CHECK(block_count(Partition::parse("1,2,3")) == 1);
  CHECK(block_count(Partition::parse("1,2|3")) == 2);
  CHECK(block_count(Partition::discrete(4)) == 4);
}

TEST_CASE("immediate successors of the single block of three") {
  const auto succ = immediate_successors(Partition::single_block(3));
  REQUIRE(succ.size() == 3);
  CHECK(std::count(succ.begin(), succ.end(), Partition::parse("1,2|3")) == 1);
  CHECK(std::count(succ.begin(), succ.end(), Partition::parse("1,3|2")) == 1);
  CHECK(std::count(succ.begin(), succ.end(), Partition::parse("1|2,3")) == 1);
  CHECK(immediate_successors(Partition::discrete(3)).empty());
}

namespace {

// cover relation by definition: a < b with nothing strictly between
bool is_cover(const Partition& p, const Partition& q, const std::vector<Partition>& all) {
  if (p == q || !precedes(p, q)) return false;
  for (const Partition& between : all)
    if (between != p && between != q && precedes(p, between) && precedes(between, q)) return false;
  return true;
}

} // namespace

TEST_CASE("immediate successors equal the brute-force cover relation") {
  for (int n = 2; n <= 5; ++n) {
    const auto parts = enumerate_partitions(n);
    for (const Partition& p : parts) {
      const auto claimed = immediate_successors(p);
      CHECK(std::is_sorted(claimed.begin(), claimed.end()));
      std::vector<Partition> expected;
      for (const Partition& q : parts)
        if (is_cover(p, q, parts)) expected.push_back(q);
      std::sort(expected.begin(), expected.end());
      CHECK(claimed == expected);
      // block-splitting characterization
      for (const Partition& q : claimed) CHECK(q.block_count() == p.block_count() + 1);
    }
  }
}

TEST_CASE("strict predecessors are exactly the coarser partitions") {
  for (int n = 2; n <= 5; ++n) {
    const auto parts = enumerate_partitions(n);
    for (const Partition& m : parts) {
      auto preds = strict_predecessors(m);
      std::sort(preds.begin(), preds.end());
      std::vector<Partition> expected;
      for (const Partition& q : parts)
        if (q != m && precedes(q, m)) expected.push_back(q);
      CHECK(preds == expected);
    }
  }
}

TEST_CASE("partition text form") {
  CHECK(Partition::parse("1,2|3").to_string() == "1,2|3");
  CHECK(Partition::single_block(1).to_string() == "1");
  CHECK(Partition::from_blocks(3, {{3}, {2, 1}}).to_string() == "1,2|3");
  CHECK_THROWS_AS(Partition::parse(""), ValidationError);
  CHECK_THROWS_AS(Partition::parse("1,2|2"), ValidationError);
  CHECK_THROWS_AS(Partition::parse("1|3"), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(2, {{1, 2}, {}}), ValidationError);
}

TEST_CASE("hasse dot export") {
  const std::string one = export_hasse_dot(1);
  CHECK(one.find("label=\"1\"") != std::string::npos);
  CHECK(one.find(" -> ") == std::string::npos);

  const std::string two = export_hasse_dot(2);
  CHECK(two.find("label=\"1,2\"") != std::string::npos);
  CHECK(two.find("label=\"1|2\"") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = two.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
  CHECK(edges == 1);

  const std::string four = export_hasse_dot(4);
  std::size_t nodes = 0;
  for (std::size_t pos = 0; (pos = four.find("label=", pos)) != std::string::npos; ++pos) ++nodes;
  CHECK(nodes == 15);

  CHECK_THROWS_AS(export_hasse_dot(0), ValidationError);
  CHECK_THROWS_AS(export_hasse_dot(8), ValidationError);
}

TEST_CASE("hasse edges are the transitive reduction") {
  for (int n = 2; n <= 5; ++n) {
    const auto parts = enumerate_partitions(n);
    std::size_t expected_edges = 0;
    for (const Partition& p : parts)
      for (const Partition& q : parts)
        if (is_cover(p, q, parts)) ++expected_edges;
    std::size_t listed = 0;
    for (const Partition& p : parts) listed += immediate_successors(p).size();
    CHECK(listed == expected_edges);
    const std::string dot = export_hasse_dot(n);
    std::size_t edges = 0;
    for (std::size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
    CHECK(edges == expected_edges);
  }
}
