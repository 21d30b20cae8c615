#ifndef FCONJ_IO_HPP
#define FCONJ_IO_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fconj/biplane.hpp"
#include "fconj/curves.hpp"
#include "fconj/fcone.hpp"
#include "fconj/picard.hpp"

namespace fconj {

using Json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "0.1.0";

// {"n": 12, "terms": [{"coeff": -5, "subset": "1,2,...,11"}, ...]}
Json divisor_to_json(const DivisorClass& d);
DivisorClass divisor_from_json(const Json& j);

// {"n": 12, "psi": [v_1, ..., v_n], "boundary": [{"subset": "...", "value": v}]}
// Only nonzero boundary values are written; absent keys read as zero.
Json functional_to_json(const CurveFunctional& f);
CurveFunctional functional_from_json(const Json& j);

// Reads a divisor file, JSON if its first non-blank character is '{' and
// the text format otherwise (which needs n from the caller).
DivisorClass load_divisor(const std::string& path, int text_n = 12);
CurveFunctional load_functional(const std::string& path);

Json to_json(const DesignReport& r);
Json to_json(const FNefReport& r);
Json to_json(const CounterexampleReport& r);
Json to_json(const NonBoundaryCertificate& c);
Json to_json(const ExtremalityReport& r);

// Provenance block embedded in every JSON report. Phase timings are the
// only run-dependent fields.
class RunManifest {
 public:
  explicit RunManifest(std::vector<std::string> command_line);

  void add_input(const std::string& path);
  void set_primes(std::vector<std::uint32_t> primes) { primes_ = std::move(primes); }
  void set_threads(unsigned threads) { threads_ = threads; }

  // Starts timing a phase; the previous phase (if any) ends.
  void phase(const std::string& name);
  void finish();

  Json to_json() const;

 private:
  using Clock = std::chrono::steady_clock;

  std::vector<std::string> command_line_;
  std::vector<std::pair<std::string, std::string>> inputs_;  // path, sha256
  std::vector<std::uint32_t> primes_;
  unsigned threads_ = 1;
  std::vector<std::pair<std::string, double>> phases_;
  std::string open_phase_;
  Clock::time_point phase_start_{};
};

std::string sha256_file(const std::string& path);

}  // namespace fconj

#endif  // FCONJ_IO_HPP
