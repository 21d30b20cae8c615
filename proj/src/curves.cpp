#include "fconj/curves.hpp"

namespace fconj {

int pair_generator_fcurve(GeneratorKey g, const FCurve& c) {
  const int n = c.n();
  check_subset(g.side(), n);
  if (g.side().empty() || g.side().contains(n)) throw InvalidInput("generator key does not belong to this marking count");
  const SubsetMask side = g.side();
  const SubsetMask other = side.complement(n);
  const auto& b = c.blocks();
  for (int i = 0; i < 4; ++i) {
    if (side == b[static_cast<std::size_t>(i)] || other == b[static_cast<std::size_t>(i)]) return -1;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (side == (b[static_cast<std::size_t>(i)] | b[static_cast<std::size_t>(j)])) return 1;
    }
  }
  return 0;
}

Coefficient pair_divisor_fcurve(const DivisorClass& d, const FCurve& c) {
  if (d.n() != c.n()) throw InvalidInput("divisor and F-curve on different marking counts");
  Coefficient total = 0;
  for (const auto& [key, coeff] : d.terms()) total += coeff * pair_generator_fcurve(key, c);
  return total;
}

CurveFunctional::CurveFunctional(int n) : n_(n) {
  check_marking_count(n);
  values_.assign(std::size_t{1} << (n - 1), 0);
}

CurveFunctional fcurve_functional(const FCurve& c) {
  CurveFunctional f(c.n());
  for (GeneratorKey key : all_generators(c.n())) f.set(key, pair_generator_fcurve(key, c));
  return f;
}

CurveFunctional build_CP(const Biplane& b) {
  require_biplane(b);
  constexpr int n = 12;
  CurveFunctional f(n);
  for (SubsetMask block : b.blocks()) f.set(canonical_generator(block, n), 1);
  for (int i = 1; i <= kBiplanePoints; ++i) f.set_psi(i, -3);
  f.set_psi(n, -2);
  return f;
}

RelationCheck check_relations(const CurveFunctional& f) {
  const int n = f.n();
  RelationCheck out;
  for (int i = 1; i <= n && out.ok; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Coefficient sum = 0;
      const DivisorClass row = relation_row(i, j, n);
      for (const auto& [key, c] : row.terms()) sum += c * f.value(key);
      if (sum != 0) {
        out.ok = false;
        out.first_violation = std::pair(i, j);
        out.violation_value = sum;
        break;
      }
    }
  }
  return out;
}

Coefficient pair_divisor_functional(const DivisorClass& d, const CurveFunctional& f) {
  if (d.n() != f.n()) throw InvalidInput("divisor and curve functional on different marking counts");
  Coefficient total = 0;
  for (const auto& [key, c] : d.terms()) total += c * f.value(key);
  return total;
}

std::optional<FCurve> pushforward_fcurve(const FCurve& c) {
  const int m = c.n();
  if (m - 1 < kMinMarkings) throw InvalidInput("cannot forget a marking below 5 markings");
  FCurve::Blocks blocks = c.blocks();
  for (auto& b : blocks) {
    if (!b.contains(m)) continue;
    if (b.size() == 1) return std::nullopt;
    b = b.without(m);
  }
  return FCurve(m - 1, blocks);
}

}  // namespace fconj
