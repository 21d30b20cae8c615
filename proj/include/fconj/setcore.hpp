#ifndef FCONJ_SETCORE_HPP
#define FCONJ_SETCORE_HPP

#include <array>
#include <bit>
#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fconj/errors.hpp"

namespace fconj {

inline constexpr int kMinMarkings = 4;
inline constexpr int kMaxMarkings = 16;

// A subset of the markings {1..n}; marking i lives in bit i-1.
class SubsetMask {
 public:
  using Bits = std::uint32_t;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(Bits bits) : bits_(bits) {}

  static SubsetMask of(std::initializer_list<int> markings);
  static SubsetMask of(std::span<const int> markings);
  // {first, first+1, ..., last}; empty when last < first.
  static constexpr SubsetMask range(int first, int last) {
    Bits bits = 0;
    for (int i = first; i <= last; ++i) bits |= Bits{1} << (i - 1);
    return SubsetMask(bits);
  }
  static constexpr SubsetMask full(int n) { return SubsetMask((Bits{1} << n) - 1); }
  static constexpr SubsetMask singleton(int marking) { return SubsetMask(Bits{1} << (marking - 1)); }

  constexpr Bits bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int marking) const { return (bits_ >> (marking - 1)) & 1U; }
  constexpr bool contains(SubsetMask other) const { return (other.bits_ & ~bits_) == 0; }
  constexpr bool disjoint(SubsetMask other) const { return (other.bits_ & bits_) == 0; }
  // Smallest marking; 0 for the empty set.
  constexpr int smallest() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }
  constexpr int largest() const { return bits_ == 0 ? 0 : 32 - std::countl_zero(bits_); }

  constexpr SubsetMask with(int marking) const { return SubsetMask(bits_ | (Bits{1} << (marking - 1))); }
  constexpr SubsetMask without(int marking) const { return SubsetMask(bits_ & ~(Bits{1} << (marking - 1))); }
  constexpr SubsetMask complement(int n) const { return SubsetMask(~bits_ & full(n).bits_); }

  std::vector<int> elements() const;

  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ | b.bits_); }
  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) { return SubsetMask(a.bits_ & b.bits_); }
  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) { return a.bits_ <=> b.bits_; }

 private:
  Bits bits_ = 0;
};

// Throws InvalidInput unless 4 <= n <= 16.
void check_marking_count(int n);
// Throws InvalidInput if s has bits outside {1..n}.
void check_subset(SubsetMask s, int n);

// Canonical name of a Picard generator: the side of the two-part partition
// that omits marking n. Singleton sides are -psi_i; the side {1..n-1}
// is -psi_n; everything else is a boundary divisor.
class GeneratorKey {
 public:
  constexpr GeneratorKey() = default;

  constexpr SubsetMask side() const { return side_; }
  // Position in a dense table of length 2^(n-1).
  constexpr std::size_t index() const { return side_.bits(); }

  // Marking i when this key is -psi_i, otherwise nullopt.
  std::optional<int> psi_marking(int n) const;
  bool is_psi(int n) const { return psi_marking(n).has_value(); }
  bool is_boundary(int n) const { return !is_psi(n); }

  friend constexpr bool operator==(GeneratorKey, GeneratorKey) = default;
  friend constexpr auto operator<=>(GeneratorKey a, GeneratorKey b) { return a.side_ <=> b.side_; }

 private:
  friend GeneratorKey canonical_generator(SubsetMask s, int n);
  friend constexpr GeneratorKey canonical_generator_unchecked(SubsetMask s, int n);
  constexpr explicit GeneratorKey(SubsetMask side) : side_(side) {}

  SubsetMask side_;
};

// Key for either side of a partition. Throws InvalidGenerator on the empty or
// full subset.
GeneratorKey canonical_generator(SubsetMask s, int n);

// Hot-loop variant: caller guarantees 0 < s < full(n).
constexpr GeneratorKey canonical_generator_unchecked(SubsetMask s, int n) {
  return GeneratorKey(s.contains(n) ? s.complement(n) : s);
}

// Key of -psi_i.
GeneratorKey psi_key(int marking, int n);

// Number of generator keys, 2^(n-1) - 1.
constexpr std::size_t generator_count(int n) { return (std::size_t{1} << (n - 1)) - 1; }

// All keys for n, ascending by side bits.
std::vector<GeneratorKey> all_generators(int n);

// A partition of {1..n} into four nonempty blocks, blocks ordered by their
// smallest marking.
class FCurve {
 public:
  using Blocks = std::array<SubsetMask, 4>;

  // Any block order; throws InvalidInput unless the blocks partition {1..n}.
  FCurve(int n, Blocks blocks);

  int n() const { return n_; }
  const Blocks& blocks() const { return blocks_; }
  SubsetMask block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  // Index of the block holding the marking.
  int block_of(int marking) const;

  friend bool operator==(const FCurve&, const FCurve&) = default;
  friend auto operator<=>(const FCurve&, const FCurve&) = default;

 private:
  friend class FCurveEnumerator;
  struct Trusted {};
  FCurve(Trusted, int n, const Blocks& blocks) : n_(n), blocks_(blocks) {}

  int n_ = 0;
  Blocks blocks_{};
};

bool is_partition_of(std::span<const SubsetMask> blocks, int n);

// Restricted-growth-string enumerator over the 4-block partitions of {1..n}.
// Labels are assigned by first appearance, so the output order is
// lexicographic in the string a_1..a_n with a_1 = 0 and max label 3.
//
// A prefix (labels of markings 1..k) restricts the stream to completions of
// that prefix. Streams for the prefixes returned by fcurve_prefixes(n, k),
// taken in order, concatenate to the full stream.
class FCurveEnumerator {
 public:
  explicit FCurveEnumerator(int n);
  FCurveEnumerator(int n, std::span<const std::uint8_t> prefix);

  std::optional<FCurve> next();
  void reset();

 private:
  bool advance();
  bool complete_from(int position);
  FCurve current() const;

  int n_;
  int fixed_;
  std::vector<std::uint8_t> labels_;
  std::vector<std::uint8_t> prefix_max_;  // max label over positions 0..i
  bool started_ = false;
  bool done_ = false;
};

// Calls visit(const FCurve&) on every 4-block partition, in enumeration order.
template <class Visitor>
void for_each_fcurve(int n, Visitor&& visit) {
  FCurveEnumerator e(n);
  while (auto c = e.next()) visit(*c);
}

template <class Visitor>
void for_each_fcurve(int n, std::span<const std::uint8_t> prefix, Visitor&& visit) {
  FCurveEnumerator e(n, prefix);
  while (auto c = e.next()) visit(*c);
}

// Every RGS prefix of the given length that extends to at least one
// 4-block partition, in lexicographic order.
std::vector<std::vector<std::uint8_t>> fcurve_prefixes(int n, int length);

std::vector<FCurve> enumerate_fcurves(int n);

// Uniform over the 4-block partitions: uniform surjections onto four labels,
// each partition arising from exactly 4! of them.
template <class Rng>
FCurve random_fcurve(int n, Rng& rng) {
  std::uniform_int_distribution<int> label(0, 3);
  while (true) {
    FCurve::Blocks blocks{};
    for (int m = 1; m <= n; ++m) {
      auto& b = blocks[static_cast<std::size_t>(label(rng))];
      b = b.with(m);
    }
    if (is_partition_of(blocks, n)) return FCurve(n, blocks);
  }
}

// Stirling number S(n, 4).
std::uint64_t count_fcurves(int n);
// S(m, k) by the standard recurrence.
std::uint64_t stirling2(int m, int k);

// "1,3,4,5,9"
std::string format_subset(SubsetMask s);
SubsetMask parse_subset(std::string_view text);
// "1|2|3|4,5,6"
std::string format_fcurve(const FCurve& c);
FCurve parse_fcurve(std::string_view text, int n);

}  // namespace fconj

#endif  // FCONJ_SETCORE_HPP
