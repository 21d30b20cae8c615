#ifndef FCONJ_FCONE_HPP
#define FCONJ_FCONE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fconj/biplane.hpp"
#include "fconj/curves.hpp"
#include "fconj/picard.hpp"
#include "fconj/scan.hpp"

namespace fconj {

struct FNefReport {
  int n = 0;
  Coefficient min_value = 0;
  std::optional<FCurve> argmin;  // first minimizer in enumeration order
  std::uint64_t zero_count = 0;
  std::uint64_t curves_scanned = 0;
  bool nonnegative = false;
};

FNefReport fnef_check(const DivisorClass& d, const ScanOptions& options = {});

struct CounterexampleReport {
  FNefReport a_fnef;
  Coefficient b_boundary_min = 0;
  Coefficient c_K_pairing = 0;
  Coefficient d_DP_pairing = 0;
  bool cp_relations_ok = false;
  bool verdict = false;
};

CounterexampleReport verify_counterexample(const Biplane& b, const ScanOptions& options = {});

enum class Certificate { certified, inconclusive };

struct NonBoundaryCertificate {
  bool functional_relations_ok = false;
  Coefficient boundary_min = 0;  // least value of f on boundary keys
  Coefficient pairing = 0;       // d . f
  Coefficient K_pairing = 0;     // K . f
  // d is not an effective boundary sum.
  Certificate not_boundary = Certificate::inconclusive;
  // d is not c K + effective boundary with c >= 0.
  Certificate not_K_plus_boundary = Certificate::inconclusive;
};

NonBoundaryCertificate certify_not_boundary(const DivisorClass& d, const CurveFunctional& f);

// Two primes just below 2^31.
inline constexpr std::uint32_t kDefaultPrimes[] = {2147483647U, 2147483629U};

struct PrimeRank {
  std::uint32_t prime = 0;
  std::int64_t rank = 0;
  std::uint64_t rows_streamed = 0;
};

struct ExtremalityReport {
  int n = 0;
  std::int64_t ambient_dim = 0;
  std::uint64_t zero_set_size = 0;
  std::vector<PrimeRank> ranks;
  bool certified_extremal = false;
};

// Rank of the zero-pairing F-curves of an F-nef class, in coordinates on the
// non-pivot generator basis, computed mod each prime. Throws
// PreconditionFailed if d is not F-nef.
ExtremalityReport extremality_rank(const DivisorClass& d, std::span<const std::uint32_t> primes,
                                   const ScanOptions& options = {});

// Rank of all F-curve rows (the span of F-curves in N_1) mod each prime.
std::vector<PrimeRank> fcurve_span_rank(int n, std::span<const std::uint32_t> primes, const ScanOptions& options = {});

// Row of one F-curve in non-pivot coordinates: (basis position, value).
std::vector<std::pair<Eigen::Index, int>> reduced_curve_row(const RelationSystem& relations, const FCurve& c);

}  // namespace fconj

#endif  // FCONJ_FCONE_HPP
