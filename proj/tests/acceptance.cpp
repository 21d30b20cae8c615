// One line per acceptance criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "fconj/biplane.hpp"
#include "fconj/curves.hpp"
#include "fconj/fcone.hpp"
#include "fconj/picard.hpp"
#include "support.hpp"

using namespace fconj;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      detail << " FAILED:" << what << ';';
    }
  }
};

ScanOptions scan_options() { return ScanOptions{std::max(1U, std::thread::hardware_concurrency())}; }

void count_criterion(Outcome& out) {
  out.expect(count_fcurves(12) == 611501, "count_fcurves(12)");
  out.expect(oracle::stirling4_closed_form(12) == 611501, "closed form S(12,4)");
  const auto curves = enumerate_fcurves(12);
  const std::set<FCurve> distinct(curves.begin(), curves.end());
  out.expect(curves.size() == 611501 && distinct.size() == 611501, "enumeration size and distinctness");
  out.detail << " enumerated " << curves.size() << ", distinct " << distinct.size();
}

void biplane_criterion(Outcome& out) {
  const Biplane b = build_biplane_qr();
  const DesignReport r = verify_biplane(b);
  out.expect(r.ok && r.pair_replication == 2 && r.point_replication == 5 && r.block_intersections_ok, "design axioms");
  const auto order = automorphism_group_order(b);
  out.expect(order == 660, "automorphism order");
  out.detail << " (lambda, r) = (" << r.pair_replication << ", " << r.point_replication << "), order " << order;
}

void counterexample_criterion(Outcome& out) {
  const Biplane b = build_biplane_qr();
  const CounterexampleReport r = verify_counterexample(b, scan_options());
  out.expect(r.a_fnef.nonnegative && r.a_fnef.min_value == 0 && r.a_fnef.curves_scanned == 611501, "(a) F-nef");
  const CurveFunctional cp = build_CP(b);
  bool zero_one = true;
  for (GeneratorKey k : all_generators(12)) {
    if (k.is_boundary(12)) zero_one = zero_one && (cp.value(k) == 0 || cp.value(k) == 1);
  }
  out.expect(zero_one && r.b_boundary_min == 0, "(b) boundary values in {0,1}");
  out.expect(r.c_K_pairing == 13 && oracle::k_dot_cp(oracle::qr_blocks()) == 13, "(c) K.C_P");
  out.expect(r.d_DP_pairing == -1 && oracle::dp_dot_cp(oracle::qr_blocks()) == -1, "(d) D_P.C_P");
  out.expect(r.cp_relations_ok && r.verdict, "verdict");
  out.detail << " min " << r.a_fnef.min_value << ", K.C_P = " << r.c_K_pairing << ", D_P.C_P = " << r.d_DP_pairing;
}

void decomposition_criterion(Outcome& out) {
  const Biplane b = build_biplane_qr();
  const DivisorClass dp = build_DP(b);
  const DivisorClass rhs = build_D0() - build_DP_prime(b);
  out.expect(reduce_canonical(dp) == reduce_canonical(rhs), "reduced coordinates");
  const CoefficientTable left = dp.dense();
  const CoefficientTable right = rhs.dense();
  std::uint64_t mismatches = 0, scanned = 0;
  for_each_fcurve(12, [&](const FCurve& c) {
    ++scanned;
    if (pair_table_fcurve(left, c) != pair_table_fcurve(right, c)) ++mismatches;
  });
  out.expect(mismatches == 0 && scanned == 611501, "pairings");
  out.detail << " " << mismatches << " pairing mismatches over " << scanned << " curves";
}

void d0_criterion(Outcome& out) {
  const CoefficientTable d0 = build_D0().dense();
  std::uint64_t mismatches = 0, scanned = 0;
  for_each_fcurve(12, [&](const FCurve& c) {
    ++scanned;
    if (pair_table_fcurve(d0, c) != oracle::d0_degree(testing::to_partition(c))) ++mismatches;
  });
  out.expect(mismatches == 0 && scanned == 611501, "degree formula");
  out.detail << " " << mismatches << " mismatches over " << scanned << " curves";
}

std::vector<std::vector<Rational>> oracle_relation_matrix(int n) {
  std::vector<std::vector<Rational>> m;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::vector<Rational> row(generator_count(n), Rational(0));
      for (int bits = 1; bits < (1 << n) - 1; ++bits) {
        if (!(bits >> (i - 1) & 1) || (bits >> (j - 1) & 1)) continue;
        oracle::Set s;
        for (int k = 0; k < n; ++k) {
          if (bits >> k & 1) s.insert(k + 1);
        }
        int idx = 0;
        for (int x : oracle::side_without(s, n)) idx |= 1 << (x - 1);
        row[static_cast<std::size_t>(idx - 1)] += Rational(1);
      }
      m.push_back(std::move(row));
    }
  }
  return m;
}

std::vector<std::vector<Rational>> oracle_curve_matrix(int n) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : oracle::all_four_block_partitions(n)) {
    std::vector<Rational> row;
    for (int bits = 1; bits < (1 << (n - 1)); ++bits) {
      oracle::Set side;
      for (int k = 0; k < n - 1; ++k) {
        if (bits >> k & 1) side.insert(k + 1);
      }
      row.emplace_back(oracle::pair_side(side, p, n));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void dimension_criterion(Outcome& out) {
  const auto rel = relation_system(12);
  out.expect(rel->rank() == 66, "relation rank at 12");
  out.expect(rel->quotient_dimension() == 1981, "ambient dimension at 12");
  const auto span = fcurve_span_rank(12, kDefaultPrimes, scan_options());
  bool full = span.size() == 2 && span[0].prime != span[1].prime;
  for (const PrimeRank& p : span) full = full && p.rank == 1981;
  out.expect(full, "F-curve rank at 12");
  out.detail << " n=12: rank " << rel->rank() << ", dim " << rel->quotient_dimension() << ", F-curve rank";
  for (const PrimeRank& p : span) out.detail << ' ' << p.rank << " (mod " << p.prime << ')';

  const auto rel5 = relation_system(5);
  const std::size_t oracle_rel = oracle::rational_rank(oracle_relation_matrix(5));
  const std::size_t oracle_curves = oracle::rational_rank(oracle_curve_matrix(5));
  out.expect(rel5->rank() == 10 && oracle_rel == 10, "relation rank at 5");
  out.expect(rel5->quotient_dimension() == 5 && generator_count(5) - oracle_rel == 5, "dimension at 5");
  out.expect(oracle_curves == 5, "F-curve rank at 5");
  out.detail << "; n=5: " << oracle_rel << ", " << generator_count(5) - oracle_rel << ", " << oracle_curves;
}

void extremality_criterion(Outcome& out) {
  const ExtremalityReport r = extremality_rank(build_DP(build_biplane_qr()), kDefaultPrimes, scan_options());
  out.expect(r.ambient_dim == 1981, "ambient dimension");
  out.expect(r.ranks.size() == 2, "two primes");
  for (const PrimeRank& p : r.ranks) out.expect(p.rank == 1980, "rank mod " + std::to_string(p.prime));
  out.expect(r.certified_extremal, "certified");
  out.detail << " zero set " << r.zero_set_size << ", ranks";
  for (const PrimeRank& p : r.ranks) out.detail << ' ' << p.rank << " (mod " << p.prime << ')';
}

void pullback_criterion(Outcome& out) {
  const DivisorClass d = eliminate_psi(build_DP(build_biplane_qr()));
  const DivisorClass up = pullback_forgetful(d);
  const FNefReport r = fnef_check(up, scan_options());
  const std::uint64_t expected = stirling2(13, 4);
  out.expect(expected == static_cast<std::uint64_t>(oracle::stirling4_closed_form(13)), "S(13,4) cross-check");
  out.expect(r.curves_scanned == expected, "enumerated count");
  out.expect(r.nonnegative, "pullback F-nef");
  out.detail << " S(13,4) = " << expected << ", scanned " << r.curves_scanned << ", min " << r.min_value;

  std::mt19937_64 rng(2024);
  std::uint64_t exhaustive = 0, bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const DivisorClass small = eliminate_psi(testing::random_divisor(6, rng, 25));
    const DivisorClass small_up = pullback_forgetful(small);
    for_each_fcurve(7, [&](const FCurve& c) {
      ++exhaustive;
      const auto down = pushforward_fcurve(c);
      if (pair_divisor_fcurve(small_up, c) != (down ? pair_divisor_fcurve(small, *down) : 0)) ++bad;
    });
  }
  out.expect(bad == 0, "projection formula 6 -> 7");

  const CoefficientTable lo = d.dense();
  const CoefficientTable hi = up.dense();
  std::uint64_t sample_bad = 0;
  constexpr int kSamples = 100000;
  for (int k = 0; k < kSamples; ++k) {
    const FCurve c = random_fcurve(13, rng);
    const auto down = pushforward_fcurve(c);
    if (pair_table_fcurve(hi, c) != (down ? pair_table_fcurve(lo, *down) : 0)) ++sample_bad;
  }
  out.expect(sample_bad == 0, "projection formula 12 -> 13");
  out.detail << "; projection " << bad << "/" << exhaustive << " exhaustive, " << sample_bad << "/" << kSamples
             << " sampled";
}

void property_criterion(Outcome& out) {
  std::mt19937_64 rng(99);
  // Relation invariance of pairings with every F-curve and with C_P.
  std::uint64_t invariance_bad = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const DivisorClass d = testing::random_divisor(7, rng, 30);
    const DivisorClass shifted = d + 3 * relation_row(2, 5, 7) - relation_row(1, 7, 7);
    for_each_fcurve(7, [&](const FCurve& c) {
      if (pair_divisor_fcurve(d, c) != pair_divisor_fcurve(shifted, c)) ++invariance_bad;
    });
  }
  const CurveFunctional cp = build_CP(build_biplane_qr());
  for (int trial = 0; trial < 10; ++trial) {
    const DivisorClass d = testing::random_divisor(12, rng, 60);
    if (pair_divisor_functional(d, cp) != pair_divisor_functional(d + 2 * relation_row(3, 12, 12), cp)) {
      ++invariance_bad;
    }
  }
  out.expect(invariance_bad == 0, "relation invariance");

  std::uint64_t rows_bad = 0, exclusive_bad = 0, rule_bad = 0, curves = 0;
  for (int n = 4; n <= 7; ++n) {
    for_each_fcurve(n, [&](const FCurve& c) {
      ++curves;
      if (!check_relations(fcurve_functional(c)).ok) ++rows_bad;
      const auto blocks = testing::to_partition(c);
      for (GeneratorKey g : all_generators(n)) {
        const oracle::Set s = testing::to_set(g.side());
        const oracle::Set t = oracle::complement(s, n);
        bool single = false, pair = false;
        for (std::size_t i = 0; i < 4; ++i) {
          single = single || s == blocks[i] || t == blocks[i];
          for (std::size_t j = i + 1; j < 4; ++j) {
            const oracle::Set u = oracle::unite(blocks[i], blocks[j]);
            pair = pair || s == u || t == u;
          }
        }
        if (single && pair) ++exclusive_bad;
        if (pair_generator_fcurve(g, c) != oracle::pair_side(s, blocks, n)) ++rule_bad;
      }
    });
  }
  out.expect(rows_bad == 0, "pairing rows respect relations");
  out.expect(exclusive_bad == 0 && rule_bad == 0, "case exclusivity");

  const DivisorClass dp = build_DP(build_biplane_qr());
  const FNefReport base = fnef_check(dp, ScanOptions{1});
  bool same = true;
  for (unsigned threads : {2U, 4U, 8U}) {
    const FNefReport r = fnef_check(dp, ScanOptions{threads});
    same = same && r.min_value == base.min_value && r.argmin == base.argmin && r.zero_count == base.zero_count &&
           r.curves_scanned == base.curves_scanned;
  }
  out.expect(same, "worker-count independence");
  out.detail << " " << curves << " curves for n <= 7; " << rows_bad << " relation failures, " << exclusive_bad
             << " overlaps, " << invariance_bad << " invariance failures";
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 means no limit
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "F-curve count", 5, count_criterion},
      {2, "biplane axioms and automorphisms", 60, biplane_criterion},
      {3, "counterexample", 30, counterexample_criterion},
      {4, "D_P = D_0 - D'_P", 0, decomposition_criterion},
      {5, "D_0 degree formula", 0, d0_criterion},
      {6, "linear algebra dimensions", 0, dimension_criterion},
      {7, "extremality", 600, extremality_criterion},
      {8, "pullback", 0, pullback_criterion},
      {9, "property suites", 0, property_criterion},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail << " exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      out.ok = false;
      out.detail << " over the " << c.limit_seconds << " s limit";
    }
    if (!out.ok) ++failures;
    std::printf("[%s] %d %s (%.2f s):%s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, seconds, out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
