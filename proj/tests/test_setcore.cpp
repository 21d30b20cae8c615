#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fconj/setcore.hpp"
#include "support.hpp"

using namespace fconj;

TEST_CASE("canonical_generator examples") {
  CHECK(canonical_generator(SubsetMask::of({1, 2}), 12).side() == SubsetMask::of({1, 2}));
  CHECK(canonical_generator(SubsetMask::range(3, 12), 12).side() == SubsetMask::of({1, 2}));
  CHECK(canonical_generator(SubsetMask::of({12}), 12).side() == SubsetMask::range(1, 11));
}

TEST_CASE("canonical_generator rejects empty and full subsets") {
  CHECK_THROWS_AS(canonical_generator(SubsetMask(), 12), InvalidGenerator);
  CHECK_THROWS_AS(canonical_generator(SubsetMask::full(12), 12), InvalidGenerator);
  CHECK_THROWS_AS(canonical_generator(SubsetMask::of({13}), 12), InvalidInput);
  CHECK_THROWS_AS(canonical_generator(SubsetMask::of({1}), 3), InvalidInput);
  CHECK_THROWS_AS(canonical_generator(SubsetMask::of({1}), 17), InvalidInput);
}

TEST_CASE("canonical_generator collapses complements, exhaustively for n <= 8") {
  for (int n = 4; n <= 8; ++n) {
    for (SubsetMask::Bits b = 1; b + 1 < (SubsetMask::Bits{1} << n); ++b) {
      const SubsetMask s(b);
      const GeneratorKey k = canonical_generator(s, n);
      REQUIRE(k == canonical_generator(s.complement(n), n));
      REQUIRE(canonical_generator(k.side(), n) == k);
      REQUIRE_FALSE(k.side().contains(n));
    }
  }
}

TEST_CASE("canonical_generator collapses complements on random samples up to 16 markings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20000; ++trial) {
    const int n = std::uniform_int_distribution<int>(4, 16)(rng);
    const SubsetMask::Bits top = (SubsetMask::Bits{1} << n) - 2;
    const SubsetMask s(std::uniform_int_distribution<SubsetMask::Bits>(1, top)(rng));
    REQUIRE(canonical_generator(s, n) == canonical_generator(s.complement(n), n));
  }
}

TEST_CASE("psi keys") {
  CHECK(psi_key(3, 12).psi_marking(12) == 3);
  CHECK(psi_key(12, 12).side() == SubsetMask::range(1, 11));
  CHECK(psi_key(12, 12).psi_marking(12) == 12);
  CHECK(canonical_generator(SubsetMask::of({1, 2}), 12).is_boundary(12));
  CHECK(all_generators(12).size() == 2047);
}

TEST_CASE("enumerate_fcurves small cases") {
  const auto four = enumerate_fcurves(4);
  REQUIRE(four.size() == 1);
  CHECK(four[0].blocks() == FCurve::Blocks{SubsetMask::of({1}), SubsetMask::of({2}), SubsetMask::of({3}), SubsetMask::of({4})});
  CHECK(enumerate_fcurves(5).size() == 10);
  CHECK_THROWS_AS(enumerate_fcurves(3), InvalidInput);
  CHECK_THROWS_AS(count_fcurves(3), InvalidInput);
}

TEST_CASE("enumeration matches brute force for n <= 9") {
  for (int n = 4; n <= 9; ++n) {
    std::set<oracle::Partition> seen;
    for_each_fcurve(n, [&](const FCurve& c) { seen.insert(testing::to_partition(c)); });
    CHECK(seen == oracle::all_four_block_partitions(n));
  }
}

TEST_CASE("enumeration is strictly increasing RGS order with Stirling length, 4 <= n <= 13") {
  for (int n = 4; n <= 13; ++n) {
    std::vector<int> prev;
    std::uint64_t count = 0;
    bool increasing = true;
    bool valid = true;
    for_each_fcurve(n, [&](const FCurve& c) {
      valid = valid && is_partition_of(c.blocks(), n);
      std::vector<int> rgs(static_cast<std::size_t>(n));
      for (int m = 1; m <= n; ++m) rgs[static_cast<std::size_t>(m - 1)] = c.block_of(m);
      if (count > 0) increasing = increasing && prev < rgs;
      prev = std::move(rgs);
      ++count;
    });
    INFO("n = " << n);
    CHECK(valid);
    CHECK(increasing);
    CHECK(count == count_fcurves(n));
    CHECK(static_cast<std::int64_t>(count_fcurves(n)) == oracle::stirling4_closed_form(n));
  }
}

TEST_CASE("count_fcurves values") {
  CHECK(count_fcurves(12) == 611501);
  CHECK(count_fcurves(4) == 1);
  CHECK(count_fcurves(13) == static_cast<std::uint64_t>(oracle::stirling4_closed_form(13)));
  CHECK(count_fcurves(13) == 2532530);
  CHECK(stirling2(5, 2) == 15);
  CHECK(stirling2(0, 0) == 1);
}

TEST_CASE("prefix chunks concatenate to the full stream") {
  const auto full = enumerate_fcurves(9);
  for (int length : {1, 3, 5, 9}) {
    std::vector<FCurve> joined;
    for (const auto& prefix : fcurve_prefixes(9, length)) {
      for_each_fcurve(9, prefix, [&](const FCurve& c) { joined.push_back(c); });
    }
    CHECK(joined == full);
  }
}

TEST_CASE("enumerator reset replays the stream") {
  FCurveEnumerator e(6);
  std::vector<FCurve> first, second;
  while (auto c = e.next()) first.push_back(*c);
  e.reset();
  while (auto c = e.next()) second.push_back(*c);
  CHECK(first == second);
  CHECK(first.size() == 65);
}

TEST_CASE("bad prefixes are rejected") {
  const std::uint8_t starts_at_one[] = {1};
  const std::uint8_t jumps[] = {0, 2};
  CHECK_THROWS_AS(FCurveEnumerator(6, starts_at_one), InvalidInput);
  CHECK_THROWS_AS(FCurveEnumerator(6, jumps), InvalidInput);
}

TEST_CASE("FCurve canonical order and validation") {
  const FCurve c(6, {SubsetMask::of({5, 6}), SubsetMask::of({2}), SubsetMask::of({1, 4}), SubsetMask::of({3})});
  CHECK(c.block(0) == SubsetMask::of({1, 4}));
  CHECK(c.block(3) == SubsetMask::of({5, 6}));
  CHECK(c.block_of(6) == 3);
  CHECK_THROWS_AS(FCurve(6, {SubsetMask::of({1, 2}), SubsetMask::of({2, 3}), SubsetMask::of({4}), SubsetMask::of({5, 6})}), InvalidInput);
  CHECK_THROWS_AS(FCurve(6, {SubsetMask::of({1, 2}), SubsetMask::of({3}), SubsetMask::of({4}), SubsetMask::of({5})}), InvalidInput);
  CHECK_THROWS_AS(FCurve(6, {SubsetMask::of({1, 2, 3}), SubsetMask(), SubsetMask::of({4}), SubsetMask::of({5, 6})}), InvalidInput);
}

TEST_CASE("subset and F-curve text formats") {
  CHECK(format_subset(SubsetMask::of({9, 1, 3, 4, 5})) == "1,3,4,5,9");
  CHECK(parse_subset(" 1, 3,4 ,5,9") == SubsetMask::of({1, 3, 4, 5, 9}));
  CHECK_THROWS_AS(parse_subset(""), ParseError);
  CHECK_THROWS_AS(parse_subset("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_subset("1,1"), ParseError);
  CHECK_THROWS_AS(parse_subset("0"), ParseError);
  CHECK_THROWS_AS(parse_subset("17"), ParseError);
  CHECK_THROWS_AS(parse_subset("1;2"), ParseError);

  const FCurve c = parse_fcurve("1|2|3|4,5,6,7,8,9,10,11,12", 12);
  CHECK(c.block(3) == SubsetMask::range(4, 12));
  CHECK(format_fcurve(c) == "1|2|3|4,5,6,7,8,9,10,11,12");
  CHECK(parse_fcurve("4,2|1|3|5", 5) == FCurve(5, {SubsetMask::of({1}), SubsetMask::of({2, 4}), SubsetMask::of({3}), SubsetMask::of({5})}));
  CHECK_THROWS_AS(parse_fcurve("1|2|3", 4), ParseError);
  CHECK_THROWS_AS(parse_fcurve("1|2|3|4|5", 5), ParseError);
  CHECK_THROWS_AS(parse_fcurve("1|2|3|4,5", 4), InvalidInput);
}

TEST_CASE("random_fcurve yields valid partitions") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const FCurve c = random_fcurve(13, rng);
    REQUIRE(is_partition_of(c.blocks(), 13));
  }
}
