#include "fconj/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace fconj {

namespace {

int json_marking_count(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) throw ParseError("JSON object needs an integer 'n'");
  const int n = j["n"].get<int>();
  check_marking_count(n);
  return n;
}

SubsetMask json_subset(const Json& j, int n) {
  if (!j.is_string()) throw ParseError("'subset' must be a string like \"1,3,4\"");
  const SubsetMask s = parse_subset(j.get<std::string>());
  check_subset(s, n);
  return s;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

Json divisor_to_json(const DivisorClass& d) {
  Json terms = Json::array();
  for (const auto& [key, c] : d.terms()) terms.push_back({{"coeff", c}, {"subset", format_subset(key.side())}});
  return {{"n", d.n()}, {"terms", std::move(terms)}};
}

DivisorClass divisor_from_json(const Json& j) {
  const int n = json_marking_count(j);
  DivisorClass d(n);
  if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("divisor JSON needs a 'terms' array");
  for (const Json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number_integer() || !t.contains("subset")) {
      throw ParseError("divisor term needs integer 'coeff' and 'subset'");
    }
    d.add(canonical_generator(json_subset(t["subset"], n), n), t["coeff"].get<Coefficient>());
  }
  return d;
}

Json functional_to_json(const CurveFunctional& f) {
  const int n = f.n();
  Json psi = Json::array();
  for (int i = 1; i <= n; ++i) psi.push_back(f.psi_value(i));
  Json boundary = Json::array();
  for (GeneratorKey key : all_generators(n)) {
    if (key.is_boundary(n) && f.value(key) != 0) {
      boundary.push_back({{"subset", format_subset(key.side())}, {"value", f.value(key)}});
    }
  }
  return {{"n", n}, {"psi", std::move(psi)}, {"boundary", std::move(boundary)}};
}

CurveFunctional functional_from_json(const Json& j) {
  const int n = json_marking_count(j);
  CurveFunctional f(n);
  if (!j.contains("psi") || !j["psi"].is_array() || j["psi"].size() != static_cast<std::size_t>(n)) {
    throw ParseError("functional JSON needs 'psi' with n entries");
  }
  for (int i = 1; i <= n; ++i) {
    const Json& v = j["psi"][static_cast<std::size_t>(i - 1)];
    if (!v.is_number_integer()) throw ParseError("psi values must be integers");
    f.set_psi(i, v.get<Coefficient>());
  }
  if (j.contains("boundary")) {
    if (!j["boundary"].is_array()) throw ParseError("'boundary' must be an array");
    for (const Json& t : j["boundary"]) {
      if (!t.is_object() || !t.contains("subset") || !t.contains("value") || !t["value"].is_number_integer()) {
        throw ParseError("boundary entry needs 'subset' and integer 'value'");
      }
      const GeneratorKey key = canonical_generator(json_subset(t["subset"], n), n);
      if (key.is_psi(n)) throw ParseError("boundary entry " + format_subset(key.side()) + " is a psi key");
      f.set(key, t["value"].get<Coefficient>());
    }
  }
  return f;
}

DivisorClass load_divisor(const std::string& path, int text_n) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return divisor_from_json(parse_json(text, path));
  std::istringstream in(text);
  return read_divisor(in, text_n);
}

CurveFunctional load_functional(const std::string& path) { return functional_from_json(parse_json(read_text(path), path)); }

Json to_json(const DesignReport& r) {
  Json j{{"ok", r.ok},
         {"pair_replication", r.pair_replication},
         {"block_intersections_ok", r.block_intersections_ok},
         {"point_replication", r.point_replication}};
  if (r.witness) j["witness"] = {r.witness->first, r.witness->second};
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

Json to_json(const FNefReport& r) {
  return {{"n", r.n},
          {"curves_scanned", r.curves_scanned},
          {"min_value", r.min_value},
          {"argmin", r.argmin ? Json(format_fcurve(*r.argmin)) : Json(nullptr)},
          {"zero_count", r.zero_count},
          {"nonnegative", r.nonnegative}};
}

Json to_json(const CounterexampleReport& r) {
  return {{"a_fnef", to_json(r.a_fnef)},
          {"b_boundary_min", r.b_boundary_min},
          {"c_K_pairing", r.c_K_pairing},
          {"d_DP_pairing", r.d_DP_pairing},
          {"cp_relations_ok", r.cp_relations_ok},
          {"verdict", r.verdict}};
}

Json to_json(const NonBoundaryCertificate& c) {
  auto name = [](Certificate v) { return v == Certificate::certified ? "certified" : "inconclusive"; };
  return {{"functional_relations_ok", c.functional_relations_ok},
          {"boundary_min", c.boundary_min},
          {"pairing", c.pairing},
          {"K_pairing", c.K_pairing},
          {"not_boundary", name(c.not_boundary)},
          {"not_K_plus_boundary", name(c.not_K_plus_boundary)}};
}

Json to_json(const ExtremalityReport& r) {
  Json ranks = Json::array();
  for (const PrimeRank& p : r.ranks) ranks.push_back({{"prime", p.prime}, {"rank", p.rank}, {"rows_streamed", p.rows_streamed}});
  return {{"n", r.n},
          {"ambient_dim", r.ambient_dim},
          {"zero_set_size", r.zero_set_size},
          {"rank_mod_p", std::move(ranks)},
          {"certified_extremal", r.certified_extremal}};
}

// ---------------------------------------------------------------------------

std::string sha256_file(const std::string& path) {
  const std::string data = read_text(path);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

RunManifest::RunManifest(std::vector<std::string> command_line) : command_line_(std::move(command_line)) {}

void RunManifest::add_input(const std::string& path) { inputs_.emplace_back(path, sha256_file(path)); }

void RunManifest::phase(const std::string& name) {
  finish();
  open_phase_ = name;
  phase_start_ = Clock::now();
}

void RunManifest::finish() {
  if (open_phase_.empty()) return;
  phases_.emplace_back(open_phase_, std::chrono::duration<double>(Clock::now() - phase_start_).count());
  open_phase_.clear();
}

Json RunManifest::to_json() const {
  Json inputs = Json::array();
  for (const auto& [path, digest] : inputs_) inputs.push_back({{"path", path}, {"sha256", digest}});
  Json timing = Json::object();
  for (const auto& [name, seconds] : phases_) timing[name] = seconds;
  return {{"command_line", command_line_}, {"library_version", kLibraryVersion}, {"inputs", std::move(inputs)},
          {"primes", primes_},             {"threads", threads_},                {"wall_seconds", std::move(timing)}};
}

}  // namespace fconj
