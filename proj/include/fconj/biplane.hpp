#ifndef FCONJ_BIPLANE_HPP
#define FCONJ_BIPLANE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fconj/setcore.hpp"

namespace fconj {

inline constexpr int kBiplanePoints = 11;
inline constexpr int kBiplaneBlockSize = 5;

// An (11,5,2) design: 11 five-element blocks over {1..11}. Blocks are kept
// sorted by smallest element (ties broken by the full mask).
class Biplane {
 public:
  using Blocks = std::array<SubsetMask, kBiplanePoints>;

  // Checks shape only (block count, sizes, ground set). The design axioms
  // are checked by verify_biplane.
  explicit Biplane(std::vector<SubsetMask> blocks);

  const Blocks& blocks() const { return blocks_; }
  bool has_block(SubsetMask s) const;

  friend bool operator==(const Biplane&, const Biplane&) = default;

 private:
  Blocks blocks_{};
};

struct DesignReport {
  int pair_replication = 0;   // common value of the pair counts (or the first bad one)
  bool block_intersections_ok = false;
  int point_replication = 0;
  bool ok = false;
  // First violating pair of points or of block indices.
  std::optional<std::pair<int, int>> witness;
  std::string failure;
};

// Translates of {1,3,4,5,9} mod 11 with representatives 1..11.
Biplane build_biplane_qr();

// Pass/fail is reported, never thrown.
DesignReport verify_biplane(const Biplane& b);

// Throws VerificationFailed carrying the witness if the axioms fail.
void require_biplane(const Biplane& b);

// A point map on {1..11}, perm[i] is the image of i (index 0 unused).
using PointPermutation = std::array<int, kBiplanePoints + 1>;

// Permutations of the points mapping the block set onto itself, found by
// backtracking with block-compatibility pruning. The visitor may be empty.
std::uint64_t automorphism_group_order(const Biplane& b);
std::vector<PointPermutation> automorphisms(const Biplane& b);

Biplane apply_permutation(const Biplane& b, const PointPermutation& perm);

// 11 lines of 5 integers. Throws ParseError / MalformedDesign.
Biplane read_biplane(std::istream& in);
Biplane load_biplane(const std::string& path);
void write_biplane(std::ostream& out, const Biplane& b);

}  // namespace fconj

#endif  // FCONJ_BIPLANE_HPP
