#include "fconj/picard.hpp"

#include <algorithm>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace fconj {

DivisorClass::DivisorClass(int n) : n_(n) { check_marking_count(n); }

DivisorClass DivisorClass::generator(GeneratorKey key, int n, Coefficient coeff) {
  DivisorClass d(n);
  d.add(key, coeff);
  return d;
}

DivisorClass DivisorClass::delta(SubsetMask side, int n, Coefficient coeff) {
  return generator(canonical_generator(side, n), n, coeff);
}

Coefficient DivisorClass::coeff(GeneratorKey key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

Coefficient DivisorClass::coeff_of(SubsetMask side) const { return coeff(canonical_generator(side, n_)); }

bool DivisorClass::has_psi_terms() const {
  for (const auto& [key, c] : terms_) {
    if (key.is_psi(n_)) return true;
  }
  return false;
}

DivisorClass& DivisorClass::add(GeneratorKey key, Coefficient c) {
  if (c == 0) return *this;
  const auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

DivisorClass& DivisorClass::add_delta(SubsetMask side, Coefficient c) { return add(canonical_generator(side, n_), c); }

CoefficientTable DivisorClass::dense() const {
  CoefficientTable table(std::size_t{1} << (n_ - 1), 0);
  for (const auto& [key, c] : terms_) table[key.index()] = c;
  return table;
}

void DivisorClass::check_same_n(const DivisorClass& o) const {
  if (o.n_ != n_) throw InvalidInput("divisor classes on different marking counts");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  check_same_n(o);
  for (const auto& [key, c] : o.terms_) add(key, c);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  check_same_n(o);
  for (const auto& [key, c] : o.terms_) add(key, -c);
  return *this;
}

DivisorClass operator*(Coefficient k, DivisorClass d) {
  if (k == 0) {
    d.terms_.clear();
    return d;
  }
  for (auto& [key, c] : d.terms_) c *= k;
  return d;
}

GeneratorKey exceptional_key(SubsetMask s, int n) { return canonical_generator(s.with(n), n); }

DivisorClass relation_row(int i, int j, int n) {
  check_marking_count(n);
  if (i < 1 || j < 1 || i > n || j > n) throw InvalidInput("relation index out of range");
  if (i == j) throw InvalidInput("relation row needs i != j");
  DivisorClass row(n);
  const SubsetMask free = SubsetMask::full(n).without(i).without(j);
  // Walk every subset T of the free markings; S = T u {i}.
  SubsetMask::Bits t = 0;
  do {
    row.add(canonical_generator_unchecked(SubsetMask(t).with(i), n), 1);
    t = (t - free.bits()) & free.bits();
  } while (t != 0);
  return row;
}

// ---------------------------------------------------------------------------

bool ReducedVector::is_zero() const {
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (!values[k].is_zero()) return false;
  }
  return true;
}

ReducedVector ReducedVector::operator+(const ReducedVector& o) const {
  if (o.n != n || o.values.size() != values.size()) throw InvalidInput("reduced vectors of different shapes");
  ReducedVector out{n, values};
  for (Eigen::Index k = 0; k < values.size(); ++k) out.values[k] += o.values[k];
  return out;
}

RelationSystem::RelationSystem(int n) : n_(n), keys_(all_generators(n)) {
  const auto cols = static_cast<Eigen::Index>(keys_.size());
  const Eigen::Index rows = n * (n - 1) / 2;
  FieldMatrix<RationalField> m(rows, cols);
  m.setConstant(Rational(0));
  Eigen::Index r = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j, ++r) {
      const DivisorClass row = relation_row(i, j, n);
      for (const auto& [key, c] : row.terms()) m(r, column_of(key)) = Rational(c);
    }
  }
  echelon_ = reduced_row_echelon(std::move(m), RationalField{});

  basis_position_.assign(keys_.size() + 1, -1);
  std::vector<bool> is_pivot(keys_.size(), false);
  for (Eigen::Index c : echelon_.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t c = 0; c < keys_.size(); ++c) {
    if (is_pivot[c]) {
      pivot_keys_.push_back(keys_[c]);
    } else {
      basis_position_[keys_[c].index()] = static_cast<Eigen::Index>(basis_keys_.size());
      basis_keys_.push_back(keys_[c]);
    }
  }
}

ReducedVector RelationSystem::reduce(const DivisorClass& d) const {
  if (d.n() != n_) throw InvalidInput("divisor and relation system on different marking counts");
  ReducedVector out{n_, Eigen::Matrix<Rational, 1, Eigen::Dynamic>::Constant(static_cast<Eigen::Index>(basis_keys_.size()), Rational(0))};
  for (const auto& [key, c] : d.terms()) {
    const Eigen::Index pos = basis_position(key);
    if (pos >= 0) {
      out.values[pos] += Rational(c);
      continue;
    }
    // A pivot generator equals minus the rest of its echelon row.
    const Eigen::Index col = column_of(key);
    Eigen::Index r = 0;
    while (echelon_.pivots[static_cast<std::size_t>(r)] != col) ++r;
    for (Eigen::Index k = col + 1; k < echelon_.rows.cols(); ++k) {
      const Rational& e = echelon_.rows(r, k);
      if (e.is_zero()) continue;
      out.values[basis_position(keys_[static_cast<std::size_t>(k)])] -= Rational(c) * e;
    }
  }
  return out;
}

std::shared_ptr<const RelationSystem> relation_system(int n) {
  check_marking_count(n);
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const RelationSystem>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const RelationSystem>(n);
  return slot;
}

ReducedVector reduce_canonical(const DivisorClass& d) { return relation_system(d.n())->reduce(d); }

bool numerically_equivalent(const DivisorClass& a, const DivisorClass& b) {
  if (a.n() != b.n()) return false;
  return reduce_canonical(a - b).is_zero();
}

// ---------------------------------------------------------------------------

DivisorClass canonical_K(int n) {
  DivisorClass k(n);
  for (GeneratorKey key : all_generators(n)) k.add(key, key.is_psi(n) ? -1 : -2);
  return k;
}

namespace {

constexpr int kDivisorMarkings = 12;

void require_twelve(int n, const char* what) {
  if (n != kDivisorMarkings) throw Unsupported(std::string(what) + " is only defined on 12 markings");
}

}  // namespace

DivisorClass build_D0(int n) {
  require_twelve(n, "D_0");
  DivisorClass d(n);
  const int last = n - 1;
  for (SubsetMask::Bits b = 0; b < (SubsetMask::Bits{1} << last); ++b) {
    const SubsetMask s(b);
    if (s.size() <= 4) d.add(exceptional_key(s, n), -(5 - s.size()));
  }
  return d;
}

DivisorClass build_DP_prime(const Biplane& b) {
  require_biplane(b);
  DivisorClass d(kDivisorMarkings);
  for (SubsetMask block : b.blocks()) {
    d.add_delta(block, 1);
    for (int i = 1; i <= kDivisorMarkings; ++i) {
      if (!block.contains(i)) d.add_delta(block.with(i), 1);
    }
  }
  return d;
}

DivisorClass build_DP(const Biplane& b) {
  require_biplane(b);
  DivisorClass d = build_D0(kDivisorMarkings);
  for (SubsetMask::Bits bits = 0; bits < (SubsetMask::Bits{1} << kBiplanePoints); ++bits) {
    const SubsetMask s(bits);
    if (s.size() != 5 && s.size() != 6) continue;
    const bool qualifies = std::ranges::any_of(b.blocks(), [&](SubsetMask block) { return s == block || s.disjoint(block); });
    if (qualifies) d.add(exceptional_key(s, kDivisorMarkings), -1);
  }
  return d;
}

DivisorClass eliminate_psi(const DivisorClass& d) {
  const int n = d.n();
  DivisorClass out = d;
  for (const auto& [key, c] : d.terms()) {
    const auto marking = key.psi_marking(n);
    if (!marking) continue;
    const int i = *marking;
    int j = 1;
    while (j == i) ++j;
    int k = j + 1;
    while (k == i) ++k;
    // R(i,j) + R(i,k) - R(j,k) = 2 * sum_{i in S; j,k not in S} Delta_S, a
    // relation whose psi part is 2 Delta_{i}.
    const DivisorClass doubled = relation_row(i, j, n) + relation_row(i, k, n) - relation_row(std::min(j, k), std::max(j, k), n);
    DivisorClass combination(n);
    for (const auto& [g, v] : doubled.terms()) {
      if (v % 2 != 0) throw Error("psi elimination produced an odd relation coefficient");
      combination.add(g, v / 2);
    }
    out -= c * combination;
  }
  if (out.has_psi_terms()) throw Error("psi elimination left psi terms behind");
  return out;
}

DivisorClass pullback_forgetful(const DivisorClass& d) {
  const int n = d.n();
  if (n + 1 > kMaxMarkings) throw InvalidInput("pullback would exceed the marking cap");
  if (d.has_psi_terms()) throw RequiresBoundaryForm("pullback needs a boundary-only class; apply eliminate_psi first");
  DivisorClass out(n + 1);
  for (const auto& [key, c] : d.terms()) {
    out.add_delta(key.side().with(n + 1), c);
    out.add_delta(key.side(), c);
  }
  return out;
}

// ---------------------------------------------------------------------------

DivisorClass read_divisor(std::istream& in, int n) {
  DivisorClass d(n);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coeff_text, subset_text, extra;
    if (!(fields >> coeff_text)) continue;
    if (!(fields >> subset_text) || (fields >> extra)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected '<coeff> <subset>'");
    }
    Coefficient c = 0;
    try {
      std::size_t used = 0;
      c = std::stoll(coeff_text, &used);
      if (used != coeff_text.size()) throw std::invalid_argument(coeff_text);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad coefficient '" + coeff_text + "'");
    }
    const SubsetMask s = parse_subset(subset_text);
    check_subset(s, n);
    d.add(canonical_generator(s, n), c);
  }
  return d;
}

void write_divisor(std::ostream& out, const DivisorClass& d) {
  for (const auto& [key, c] : d.terms()) out << c << ' ' << format_subset(key.side()) << '\n';
}

}  // namespace fconj
