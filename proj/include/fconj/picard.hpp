#ifndef FCONJ_PICARD_HPP
#define FCONJ_PICARD_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fconj/biplane.hpp"
#include "fconj/linalg.hpp"
#include "fconj/setcore.hpp"

namespace fconj {

using Coefficient = std::int64_t;

// Dense coefficient array indexed by GeneratorKey::index(); slot 0 is unused.
using CoefficientTable = std::vector<Coefficient>;

// Integer combination of Picard generators on n markings. Zero coefficients
// are never stored; iteration is in ascending key order.
class DivisorClass {
 public:
  using Terms = std::map<GeneratorKey, Coefficient>;

  explicit DivisorClass(int n);

  // Single generator with the given coefficient.
  static DivisorClass generator(GeneratorKey key, int n, Coefficient coeff = 1);
  // Canonicalizes the side; either side of the partition names the same term.
  static DivisorClass delta(SubsetMask side, int n, Coefficient coeff = 1);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Coefficient coeff(GeneratorKey key) const;
  // Coefficient of the generator with the given side (either side).
  Coefficient coeff_of(SubsetMask side) const;
  bool has_psi_terms() const;

  DivisorClass& add(GeneratorKey key, Coefficient c);
  DivisorClass& add_delta(SubsetMask side, Coefficient c);

  CoefficientTable dense() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(Coefficient k, DivisorClass d);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

 private:
  void check_same_n(const DivisorClass& o) const;

  int n_;
  Terms terms_;
};

// E_S = Delta_{S u {n}} for S a subset of {1..n-1} (S may be empty, giving
// -psi_n, but S = {1..n-1} is not a generator).
GeneratorKey exceptional_key(SubsetMask s, int n);

// Sum of Delta_S over all S with i in S and j not in S.
DivisorClass relation_row(int i, int j, int n);

// Coordinates of a class in the quotient by the relation span, one exact
// entry per non-pivot generator.
struct ReducedVector {
  int n = 0;
  Eigen::Matrix<Rational, 1, Eigen::Dynamic> values;

  bool is_zero() const;
  friend bool operator==(const ReducedVector& a, const ReducedVector& b) {
    return a.n == b.n && a.values.size() == b.values.size() && a.values == b.values;
  }
  ReducedVector operator+(const ReducedVector& o) const;
};

// The C(n,2) relation rows over all 2^(n-1)-1 generators, in reduced row
// echelon form over Q. Columns are ordered by key bits, so pivots are the
// lexicographically first independent generators.
class RelationSystem {
 public:
  explicit RelationSystem(int n);

  int n() const { return n_; }
  std::size_t generator_count() const { return keys_.size(); }
  Eigen::Index rank() const { return echelon_.rank(); }
  // generators minus rank: the Picard rank.
  Eigen::Index quotient_dimension() const { return static_cast<Eigen::Index>(keys_.size()) - rank(); }

  const std::vector<GeneratorKey>& keys() const { return keys_; }
  const std::vector<GeneratorKey>& pivot_keys() const { return pivot_keys_; }
  const std::vector<GeneratorKey>& basis_keys() const { return basis_keys_; }
  const EchelonForm<RationalField>& echelon() const { return echelon_; }
  // Column of a key in the full generator ordering.
  static Eigen::Index column_of(GeneratorKey k) { return static_cast<Eigen::Index>(k.index()) - 1; }
  // Position of a key among basis_keys(), or -1 for pivot keys.
  Eigen::Index basis_position(GeneratorKey k) const { return basis_position_[k.index()]; }

  ReducedVector reduce(const DivisorClass& d) const;

 private:
  int n_;
  std::vector<GeneratorKey> keys_;
  EchelonForm<RationalField> echelon_;
  std::vector<GeneratorKey> pivot_keys_;
  std::vector<GeneratorKey> basis_keys_;
  std::vector<Eigen::Index> basis_position_;
};

// Built once per n and shared read-only.
std::shared_ptr<const RelationSystem> relation_system(int n);

ReducedVector reduce_canonical(const DivisorClass& d);
bool numerically_equivalent(const DivisorClass& a, const DivisorClass& b);

// K = -sum Delta_{i} - 2 sum Delta_{S,T}.
DivisorClass canonical_K(int n);

// D_0 = -5E_0 - 4 sum E_i - 3 sum E_ij - 2 sum E_ijk - sum E_ijkl on 12 markings.
DivisorClass build_D0(int n = 12);
// sum over blocks B of (Delta_B + sum_{i not in B} Delta_{B u {i}}), i in 1..12.
DivisorClass build_DP_prime(const Biplane& b);
// D_0 minus E_S for every S of size 5 or 6 equal to or disjoint from a block.
DivisorClass build_DP(const Biplane& b);

// Numerically equivalent class with no psi-type terms.
DivisorClass eliminate_psi(const DivisorClass& d);

// pi^* along the map forgetting marking n+1. Throws RequiresBoundaryForm if d
// has psi-type terms.
DivisorClass pullback_forgetful(const DivisorClass& d);

// Text format: one "<coeff> <subset>" per line; '#' starts a comment.
DivisorClass read_divisor(std::istream& in, int n);
void write_divisor(std::ostream& out, const DivisorClass& d);

}  // namespace fconj

#endif  // FCONJ_PICARD_HPP
