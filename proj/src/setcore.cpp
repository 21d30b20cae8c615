#include "fconj/setcore.hpp"

#include <algorithm>
#include <charconv>

namespace fconj {

SubsetMask SubsetMask::of(std::initializer_list<int> markings) {
  return of(std::span<const int>(markings.begin(), markings.size()));
}

SubsetMask SubsetMask::of(std::span<const int> markings) {
  Bits bits = 0;
  for (int m : markings) {
    if (m < 1 || m > kMaxMarkings) throw InvalidInput("marking out of range: " + std::to_string(m));
    bits |= Bits{1} << (m - 1);
  }
  return SubsetMask(bits);
}

std::vector<int> SubsetMask::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (Bits b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

void check_marking_count(int n) {
  if (n < kMinMarkings || n > kMaxMarkings) {
    throw InvalidInput("marking count must be in [4, 16], got " + std::to_string(n));
  }
}

void check_subset(SubsetMask s, int n) {
  if ((s.bits() & ~SubsetMask::full(n).bits()) != 0) {
    throw InvalidInput("subset " + format_subset(s) + " has markings outside 1.." + std::to_string(n));
  }
}

std::optional<int> GeneratorKey::psi_marking(int n) const {
  if (side_.size() == 1) return side_.smallest();
  if (side_.size() == n - 1) return n;
  return std::nullopt;
}

GeneratorKey canonical_generator(SubsetMask s, int n) {
  check_marking_count(n);
  check_subset(s, n);
  if (s.empty() || s == SubsetMask::full(n)) {
    throw InvalidGenerator("generator side must be a nonempty proper subset");
  }
  return canonical_generator_unchecked(s, n);
}

GeneratorKey psi_key(int marking, int n) {
  if (marking < 1 || marking > n) throw InvalidInput("psi marking out of range");
  return canonical_generator(SubsetMask::singleton(marking), n);
}

std::vector<GeneratorKey> all_generators(int n) {
  check_marking_count(n);
  std::vector<GeneratorKey> keys;
  keys.reserve(generator_count(n));
  for (SubsetMask::Bits b = 1; b < (SubsetMask::Bits{1} << (n - 1)); ++b) {
    keys.push_back(canonical_generator_unchecked(SubsetMask(b), n));
  }
  return keys;
}

bool is_partition_of(std::span<const SubsetMask> blocks, int n) {
  SubsetMask::Bits seen = 0;
  for (SubsetMask b : blocks) {
    if (b.empty() || (seen & b.bits()) != 0) return false;
    seen |= b.bits();
  }
  return seen == SubsetMask::full(n).bits();
}

FCurve::FCurve(int n, Blocks blocks) : n_(n) {
  check_marking_count(n);
  if (!is_partition_of(blocks, n)) throw InvalidInput("F-curve blocks must partition 1.." + std::to_string(n));
  std::ranges::sort(blocks, {}, &SubsetMask::smallest);
  blocks_ = blocks;
}

int FCurve::block_of(int marking) const {
  for (int i = 0; i < 4; ++i) {
    if (block(i).contains(marking)) return i;
  }
  throw InvalidInput("marking not covered by F-curve");
}

// ---------------------------------------------------------------------------

FCurveEnumerator::FCurveEnumerator(int n) : FCurveEnumerator(n, std::span<const std::uint8_t>{}) {}

FCurveEnumerator::FCurveEnumerator(int n, std::span<const std::uint8_t> prefix)
    : n_(n), fixed_(std::max<int>(1, static_cast<int>(prefix.size()))) {
  check_marking_count(n);
  if (static_cast<int>(prefix.size()) > n) throw InvalidInput("prefix longer than marking count");
  labels_.assign(static_cast<std::size_t>(n), 0);
  prefix_max_.assign(static_cast<std::size_t>(n), 0);
  std::uint8_t running = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const std::uint8_t label = prefix[i];
    const int bound = i == 0 ? 0 : std::min(3, running + 1);
    if (label > bound) throw InvalidInput("prefix is not a restricted growth string");
    running = std::max(running, label);
    labels_[i] = label;
    prefix_max_[i] = running;
  }
  reset();
}

void FCurveEnumerator::reset() {
  started_ = false;
  done_ = !complete_from(fixed_);
}

bool FCurveEnumerator::complete_from(int position) {
  const int m = position == 0 ? -1 : prefix_max_[static_cast<std::size_t>(position - 1)];
  const int need = 3 - m;
  const int remaining = n_ - position;
  if (remaining < need) return false;
  for (int i = position; i < n_; ++i) {
    const int from_end = n_ - i;  // 1 for the last position
    const int label = from_end <= need ? 3 - from_end + 1 : 0;
    labels_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(label);
    const int prev = i == 0 ? 0 : prefix_max_[static_cast<std::size_t>(i - 1)];
    prefix_max_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::max(prev, label));
  }
  return true;
}

bool FCurveEnumerator::advance() {
  for (int i = n_ - 1; i >= fixed_; --i) {
    const auto ui = static_cast<std::size_t>(i);
    const int m = prefix_max_[ui - 1];
    const int top = std::min(3, m + 1);
    for (int label = labels_[ui] + 1; label <= top; ++label) {
      const int new_max = std::max(m, label);
      if (n_ - 1 - i >= 3 - new_max) {
        labels_[ui] = static_cast<std::uint8_t>(label);
        prefix_max_[ui] = static_cast<std::uint8_t>(new_max);
        complete_from(i + 1);
        return true;
      }
    }
  }
  return false;
}

FCurve FCurveEnumerator::current() const {
  FCurve::Blocks blocks{};
  for (int i = 0; i < n_; ++i) {
    auto& b = blocks[labels_[static_cast<std::size_t>(i)]];
    b = b.with(i + 1);
  }
  assert(is_partition_of(blocks, n_));
  return FCurve(FCurve::Trusted{}, n_, blocks);
}

std::optional<FCurve> FCurveEnumerator::next() {
  if (done_) return std::nullopt;
  if (started_ && !advance()) {
    done_ = true;
    return std::nullopt;
  }
  started_ = true;
  return current();
}

std::vector<std::vector<std::uint8_t>> fcurve_prefixes(int n, int length) {
  check_marking_count(n);
  length = std::clamp(length, 1, n);
  std::vector<std::vector<std::uint8_t>> out;
  std::vector<std::uint8_t> cur{0};
  auto dfs = [&](auto&& self, int max_label) -> void {
    if (static_cast<int>(cur.size()) == length) {
      if (n - length >= 3 - max_label) out.push_back(cur);
      return;
    }
    for (int label = 0; label <= std::min(3, max_label + 1); ++label) {
      cur.push_back(static_cast<std::uint8_t>(label));
      self(self, std::max(max_label, label));
      cur.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

std::vector<FCurve> enumerate_fcurves(int n) {
  std::vector<FCurve> out;
  out.reserve(count_fcurves(n));
  for_each_fcurve(n, [&](const FCurve& c) { out.push_back(c); });
  return out;
}

std::uint64_t stirling2(int m, int k) {
  if (m < 0 || k < 0) throw InvalidInput("negative Stirling argument");
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= m; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j) - 1] + static_cast<std::uint64_t>(j) * row[static_cast<std::size_t>(j)];
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

std::uint64_t count_fcurves(int n) {
  check_marking_count(n);
  return stirling2(n, 4);
}

// ---------------------------------------------------------------------------

std::string format_subset(SubsetMask s) {
  std::string out;
  for (int m : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

SubsetMask parse_subset(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty subset");
  SubsetMask out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
      throw ParseError("bad marking '" + std::string(item) + "'");
    }
    if (value < 1 || value > kMaxMarkings) throw ParseError("marking out of range: " + std::to_string(value));
    if (out.contains(value)) throw ParseError("repeated marking " + std::to_string(value));
    out = out.with(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_fcurve(const FCurve& c) {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (i) out += '|';
    out += format_subset(c.block(i));
  }
  return out;
}

FCurve parse_fcurve(std::string_view text, int n) {
  FCurve::Blocks blocks{};
  for (int i = 0; i < 4; ++i) {
    const auto bar = text.find('|');
    if ((bar == std::string_view::npos) != (i == 3)) throw ParseError("F-curve needs exactly four '|'-separated blocks");
    blocks[static_cast<std::size_t>(i)] = parse_subset(text.substr(0, bar));
    if (bar != std::string_view::npos) text.remove_prefix(bar + 1);
  }
  for (SubsetMask b : blocks) check_subset(b, n);
  return FCurve(n, blocks);
}

}  // namespace fconj
