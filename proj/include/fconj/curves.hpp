#ifndef FCONJ_CURVES_HPP
#define FCONJ_CURVES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fconj/biplane.hpp"
#include "fconj/picard.hpp"
#include "fconj/setcore.hpp"

namespace fconj {

// Intersection of one generator with an F-curve: +1 when a side is the union
// of two blocks, -1 when a side is a single block, 0 otherwise.
int pair_generator_fcurve(GeneratorKey g, const FCurve& c);

// Pairing against a dense coefficient table (see DivisorClass::dense()).
// Seven lookups: the three two-and-two splits minus the four blocks.
inline Coefficient pair_table_fcurve(std::span<const Coefficient> table, const FCurve& c) {
  const int n = c.n();
  const auto& b = c.blocks();
  auto at = [&](SubsetMask s) { return table[canonical_generator_unchecked(s, n).index()]; };
  return at(b[0] | b[1]) + at(b[0] | b[2]) + at(b[0] | b[3]) - at(b[0]) - at(b[1]) - at(b[2]) - at(b[3]);
}

Coefficient pair_divisor_fcurve(const DivisorClass& d, const FCurve& c);

// A curve class given by its values on every generator. Relation
// compatibility is checked separately, not enforced.
class CurveFunctional {
 public:
  explicit CurveFunctional(int n);

  int n() const { return n_; }
  Coefficient value(GeneratorKey key) const { return values_[key.index()]; }
  Coefficient psi_value(int marking) const { return value(psi_key(marking, n_)); }
  void set(GeneratorKey key, Coefficient v) { values_[key.index()] = v; }
  void set_psi(int marking, Coefficient v) { set(psi_key(marking, n_), v); }
  const std::vector<Coefficient>& table() const { return values_; }

  friend bool operator==(const CurveFunctional&, const CurveFunctional&) = default;

 private:
  int n_;
  std::vector<Coefficient> values_;  // indexed by GeneratorKey::index()
};

// Pairing row of a single F-curve.
CurveFunctional fcurve_functional(const FCurve& c);

// C_P: 1 on the block keys, psi values -3 on 1..11 and -2 on 12.
CurveFunctional build_CP(const Biplane& b);

struct RelationCheck {
  bool ok = true;
  std::optional<std::pair<int, int>> first_violation;
  Coefficient violation_value = 0;
};

RelationCheck check_relations(const CurveFunctional& f);

Coefficient pair_divisor_functional(const DivisorClass& d, const CurveFunctional& f);

// pi_* for the map forgetting marking n+1: nullopt when {n+1} is a block
// (the curve is contracted), otherwise the partition with n+1 removed.
std::optional<FCurve> pushforward_fcurve(const FCurve& c);

}  // namespace fconj

#endif  // FCONJ_CURVES_HPP
