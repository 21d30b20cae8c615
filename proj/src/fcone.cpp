#include "fconj/fcone.hpp"

#include <future>
#include <limits>

#include "fconj/linalg.hpp"

namespace fconj {

namespace {

struct MinPartial {
  Coefficient min_value = std::numeric_limits<Coefficient>::max();
  std::optional<FCurve> argmin;
  std::uint64_t zero_count = 0;
  std::uint64_t scanned = 0;
};

}  // namespace

FNefReport fnef_check(const DivisorClass& d, const ScanOptions& options) {
  const int n = d.n();
  const CoefficientTable table = d.dense();
  const auto result = scan_fcurves<MinPartial>(
      n, options, [] { return MinPartial{}; },
      [&](MinPartial& p, const FCurve& c) {
        const Coefficient v = pair_table_fcurve(table, c);
        ++p.scanned;
        if (v == 0) ++p.zero_count;
        if (v < p.min_value) {
          p.min_value = v;
          p.argmin = c;
        }
      },
      [](MinPartial& into, const MinPartial& next) {
        into.scanned += next.scanned;
        into.zero_count += next.zero_count;
        if (next.argmin && next.min_value < into.min_value) {
          into.min_value = next.min_value;
          into.argmin = next.argmin;
        }
      });
  FNefReport report;
  report.n = n;
  report.min_value = result.min_value;
  report.argmin = result.argmin;
  report.zero_count = result.zero_count;
  report.curves_scanned = result.scanned;
  report.nonnegative = result.min_value >= 0;
  return report;
}

CounterexampleReport verify_counterexample(const Biplane& b, const ScanOptions& options) {
  const DivisorClass dp = build_DP(b);
  const CurveFunctional cp = build_CP(b);
  const int n = dp.n();

  CounterexampleReport report;
  report.a_fnef = fnef_check(dp, options);
  report.cp_relations_ok = check_relations(cp).ok;

  Coefficient boundary_min = std::numeric_limits<Coefficient>::max();
  for (GeneratorKey key : all_generators(n)) {
    if (key.is_boundary(n)) boundary_min = std::min(boundary_min, cp.value(key));
  }
  report.b_boundary_min = boundary_min;
  report.c_K_pairing = pair_divisor_functional(canonical_K(n), cp);
  report.d_DP_pairing = pair_divisor_functional(dp, cp);
  report.verdict = report.a_fnef.nonnegative && report.b_boundary_min >= 0 && report.c_K_pairing >= 0 &&
                   report.d_DP_pairing < 0 && report.cp_relations_ok;
  return report;
}

NonBoundaryCertificate certify_not_boundary(const DivisorClass& d, const CurveFunctional& f) {
  if (d.n() != f.n()) throw InvalidInput("divisor and curve functional on different marking counts");
  const int n = d.n();
  NonBoundaryCertificate out;
  out.functional_relations_ok = check_relations(f).ok;
  out.boundary_min = std::numeric_limits<Coefficient>::max();
  for (GeneratorKey key : all_generators(n)) {
    if (key.is_boundary(n)) out.boundary_min = std::min(out.boundary_min, f.value(key));
  }
  out.pairing = pair_divisor_functional(d, f);
  out.K_pairing = pair_divisor_functional(canonical_K(n), f);
  // Without relation compatibility the pairing is not defined on classes.
  if (out.functional_relations_ok && out.boundary_min >= 0 && out.pairing < 0) {
    out.not_boundary = Certificate::certified;
    if (out.K_pairing >= 0) out.not_K_plus_boundary = Certificate::certified;
  }
  return out;
}

std::vector<std::pair<Eigen::Index, int>> reduced_curve_row(const RelationSystem& relations, const FCurve& c) {
  const int n = c.n();
  const auto& b = c.blocks();
  std::vector<std::pair<Eigen::Index, int>> row;
  row.reserve(7);
  auto push = [&](SubsetMask s, int v) {
    const Eigen::Index pos = relations.basis_position(canonical_generator_unchecked(s, n));
    if (pos >= 0) row.emplace_back(pos, v);
  };
  push(b[0] | b[1], 1);
  push(b[0] | b[2], 1);
  push(b[0] | b[3], 1);
  for (SubsetMask block : b) push(block, -1);
  return row;
}

namespace {

template <class Keep>
PrimeRank stream_rank(const RelationSystem& relations, std::uint32_t prime, std::int64_t cap, Keep keep) {
  const PrimeField field(prime);
  IncrementalRowBasis<PrimeField> basis(relations.quotient_dimension(), field);
  std::vector<IncrementalRowBasis<PrimeField>::SparseEntry> row;
  PrimeRank out;
  out.prime = prime;
  FCurveEnumerator curves(relations.n());
  while (basis.rank() < cap) {
    const auto c = curves.next();
    if (!c) break;
    if (!keep(*c)) continue;
    row.clear();
    for (const auto& [pos, v] : reduced_curve_row(relations, *c)) row.emplace_back(pos, field.from_int(v));
    basis.add(row);
  }
  out.rank = basis.rank();
  out.rows_streamed = basis.rows_seen();
  return out;
}

template <class Keep>
std::vector<PrimeRank> ranks_for_primes(const RelationSystem& relations, std::span<const std::uint32_t> primes,
                                        std::int64_t cap, const ScanOptions& options, Keep keep) {
  for (std::uint32_t p : primes) static_cast<void>(PrimeField{p});
  std::vector<PrimeRank> out(primes.size());
  if (options.threads <= 1 || primes.size() <= 1) {
    for (std::size_t i = 0; i < primes.size(); ++i) out[i] = stream_rank(relations, primes[i], cap, keep);
    return out;
  }
  std::vector<std::future<PrimeRank>> jobs;
  for (std::uint32_t p : primes) {
    jobs.push_back(std::async(std::launch::async, [&, p] { return stream_rank(relations, p, cap, keep); }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i].get();
  return out;
}

}  // namespace

ExtremalityReport extremality_rank(const DivisorClass& d, std::span<const std::uint32_t> primes,
                                   const ScanOptions& options) {
  if (primes.empty()) throw InvalidInput("at least one prime is required");
  const FNefReport fnef = fnef_check(d, options);
  if (!fnef.nonnegative) {
    throw PreconditionFailed("divisor is not F-nef; pairing " + std::to_string(fnef.min_value) + " on " +
                             format_fcurve(*fnef.argmin));
  }
  const auto relations = relation_system(d.n());
  ExtremalityReport report;
  report.n = d.n();
  report.ambient_dim = relations->quotient_dimension();
  report.zero_set_size = fnef.zero_count;

  // The zero set lies in the hyperplane orthogonal to d, so once d is
  // numerically nonzero its rank cannot exceed ambient_dim - 1 and the
  // stream can stop there.
  const bool nonzero_class = !relations->reduce(d).is_zero();
  const std::int64_t cap = report.ambient_dim - (nonzero_class ? 1 : 0);
  const CoefficientTable table = d.dense();
  report.ranks = ranks_for_primes(*relations, primes, cap, options,
                                  [&](const FCurve& c) { return pair_table_fcurve(table, c) == 0; });
  report.certified_extremal = false;
  if (nonzero_class) {
    for (const PrimeRank& r : report.ranks) {
      if (r.rank == report.ambient_dim - 1) report.certified_extremal = true;
    }
  }
  return report;
}

std::vector<PrimeRank> fcurve_span_rank(int n, std::span<const std::uint32_t> primes, const ScanOptions& options) {
  const auto relations = relation_system(n);
  return ranks_for_primes(*relations, primes, relations->quotient_dimension(), options,
                          [](const FCurve&) { return true; });
}

}  // namespace fconj
