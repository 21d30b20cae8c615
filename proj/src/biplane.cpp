#include "fconj/biplane.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace fconj {

Biplane::Biplane(std::vector<SubsetMask> blocks) {
  if (blocks.size() != kBiplanePoints) {
    throw MalformedDesign("expected 11 blocks, got " + std::to_string(blocks.size()));
  }
  for (SubsetMask b : blocks) {
    if (b.size() != kBiplaneBlockSize) throw MalformedDesign("block " + format_subset(b) + " does not have 5 points");
    if (!SubsetMask::full(kBiplanePoints).contains(b)) {
      throw MalformedDesign("block " + format_subset(b) + " leaves the ground set 1..11");
    }
  }
  std::ranges::sort(blocks, [](SubsetMask a, SubsetMask b) {
    return std::pair(a.smallest(), a.bits()) < std::pair(b.smallest(), b.bits());
  });
  std::ranges::copy(blocks, blocks_.begin());
}

bool Biplane::has_block(SubsetMask s) const { return std::ranges::find(blocks_, s) != blocks_.end(); }

Biplane build_biplane_qr() {
  constexpr std::array<int, 5> residues{1, 3, 4, 5, 9};
  std::vector<SubsetMask> blocks;
  for (int t = 0; t < kBiplanePoints; ++t) {
    SubsetMask b;
    for (int r : residues) b = b.with((r + t - 1) % kBiplanePoints + 1);
    blocks.push_back(b);
  }
  return Biplane(std::move(blocks));
}

DesignReport verify_biplane(const Biplane& b) {
  DesignReport report;
  const auto& blocks = b.blocks();

  report.pair_replication = -1;
  for (int x = 1; x <= kBiplanePoints && !report.witness; ++x) {
    for (int y = x + 1; y <= kBiplanePoints; ++y) {
      const auto count = std::ranges::count_if(blocks, [&](SubsetMask s) { return s.contains(x) && s.contains(y); });
      if (report.pair_replication < 0) report.pair_replication = static_cast<int>(count);
      if (count != 2) {
        report.pair_replication = static_cast<int>(count);
        report.witness = std::pair(x, y);
        report.failure = "points " + std::to_string(x) + "," + std::to_string(y) + " lie in " +
                         std::to_string(count) + " blocks";
        break;
      }
    }
  }

  report.block_intersections_ok = true;
  for (std::size_t i = 0; i < blocks.size() && report.block_intersections_ok; ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if ((blocks[i] & blocks[j]).size() != 2) {
        report.block_intersections_ok = false;
        if (!report.witness) {
          report.witness = std::pair(static_cast<int>(i), static_cast<int>(j));
          report.failure = "blocks " + format_subset(blocks[i]) + " and " + format_subset(blocks[j]) +
                           " meet in " + std::to_string((blocks[i] & blocks[j]).size()) + " points";
        }
        break;
      }
    }
  }

  report.point_replication = -1;
  bool points_ok = true;
  for (int x = 1; x <= kBiplanePoints; ++x) {
    const auto r = static_cast<int>(std::ranges::count_if(blocks, [&](SubsetMask s) { return s.contains(x); }));
    if (report.point_replication < 0) report.point_replication = r;
    if (r != 5) {
      report.point_replication = r;
      points_ok = false;
      if (report.failure.empty()) report.failure = "point " + std::to_string(x) + " lies in " + std::to_string(r) + " blocks";
      break;
    }
  }

  report.ok = !report.witness && report.block_intersections_ok && points_ok;
  return report;
}

void require_biplane(const Biplane& b) {
  const auto report = verify_biplane(b);
  if (!report.ok) throw VerificationFailed("not an (11,5,2) biplane: " + report.failure);
}

namespace {

class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Biplane& b) : blocks_(b.blocks()) {}

  template <class OnFound>
  void run(OnFound&& found) {
    perm_.fill(0);
    used_ = SubsetMask();
    extend(1, found);
  }

 private:
  // Image of s under the partial map; s must lie in the assigned prefix.
  SubsetMask image(SubsetMask s) const {
    SubsetMask out;
    for (int x : s.elements()) out = out.with(perm_[static_cast<std::size_t>(x)]);
    return out;
  }

  bool compatible(int assigned) const {
    const SubsetMask domain = SubsetMask::range(1, assigned);
    for (SubsetMask b : blocks_) {
      const SubsetMask img = image(b & domain);
      if (std::ranges::none_of(blocks_, [&](SubsetMask c) { return c.contains(img); })) return false;
    }
    return true;
  }

  template <class OnFound>
  void extend(int point, OnFound& found) {
    if (point > kBiplanePoints) {
      found(perm_);
      return;
    }
    for (int target = 1; target <= kBiplanePoints; ++target) {
      if (used_.contains(target)) continue;
      perm_[static_cast<std::size_t>(point)] = target;
      used_ = used_.with(target);
      if (compatible(point)) extend(point + 1, found);
      used_ = used_.without(target);
    }
    perm_[static_cast<std::size_t>(point)] = 0;
  }

  const Biplane::Blocks& blocks_;
  PointPermutation perm_{};
  SubsetMask used_;
};

}  // namespace

std::uint64_t automorphism_group_order(const Biplane& b) {
  std::uint64_t count = 0;
  AutomorphismSearch(b).run([&](const PointPermutation&) { ++count; });
  return count;
}

std::vector<PointPermutation> automorphisms(const Biplane& b) {
  std::vector<PointPermutation> out;
  AutomorphismSearch(b).run([&](const PointPermutation& p) { out.push_back(p); });
  return out;
}

Biplane apply_permutation(const Biplane& b, const PointPermutation& perm) {
  std::vector<SubsetMask> blocks;
  for (SubsetMask s : b.blocks()) {
    SubsetMask img;
    for (int x : s.elements()) img = img.with(perm[static_cast<std::size_t>(x)]);
    blocks.push_back(img);
  }
  return Biplane(std::move(blocks));
}

Biplane read_biplane(std::istream& in) {
  std::vector<SubsetMask> blocks;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<int> points;
    std::string tok;
    while (fields >> tok) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
      }
      if (v < 1 || v > kBiplanePoints) throw ParseError("line " + std::to_string(line_no) + ": point out of range 1..11");
      points.push_back(v);
    }
    if (points.size() != kBiplaneBlockSize) {
      throw MalformedDesign("line " + std::to_string(line_no) + ": expected 5 points, got " + std::to_string(points.size()));
    }
    if (!std::ranges::is_sorted(points) || std::ranges::adjacent_find(points) != points.end()) {
      throw ParseError("line " + std::to_string(line_no) + ": points must be strictly ascending");
    }
    blocks.push_back(SubsetMask::of(points));
  }
  return Biplane(std::move(blocks));
}

Biplane load_biplane(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open biplane file " + path);
  return read_biplane(in);
}

void write_biplane(std::ostream& out, const Biplane& b) {
  for (SubsetMask s : b.blocks()) {
    const auto pts = s.elements();
    for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << pts[i];
    out << '\n';
  }
}

}  // namespace fconj
