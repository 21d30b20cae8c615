#ifndef FCONJ_TESTS_SUPPORT_HPP
#define FCONJ_TESTS_SUPPORT_HPP

#include <random>

#include "fconj/picard.hpp"
#include "fconj/setcore.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Set to_set(fconj::SubsetMask s) {
  oracle::Set out;
  for (int m : s.elements()) out.insert(m);
  return out;
}

inline oracle::Partition to_partition(const fconj::FCurve& c) {
  oracle::Partition p;
  for (fconj::SubsetMask b : c.blocks()) p.push_back(to_set(b));
  return p;
}

// Random class with small coefficients on about `terms` generators.
template <class Rng>
fconj::DivisorClass random_divisor(int n, Rng& rng, int terms = 20, bool boundary_only = false) {
  fconj::DivisorClass d(n);
  const auto keys = fconj::all_generators(n);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) {
    const auto key = keys[pick(rng)];
    if (boundary_only && key.is_psi(n)) continue;
    d.add(key, coeff(rng));
  }
  return d;
}

}  // namespace testing

#endif  // FCONJ_TESTS_SUPPORT_HPP
