// Command-line front end: biplane, verify, fcurves, pair, extremal, pullback.
//
// Exit codes: 0 verified/certified, 1 verification failed or inconclusive,
// 2 malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fconj/biplane.hpp"
#include "fconj/curves.hpp"
#include "fconj/fcone.hpp"
#include "fconj/io.hpp"
#include "fconj/picard.hpp"
#include "fconj/setcore.hpp"

namespace {

using namespace fconj;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

constexpr std::uint32_t kSmallPrimeWarning = 1U << 20;

struct Globals {
  bool json = false;
  unsigned threads = 1;
  std::string biplane_file;
  std::string divisor_file;
  int text_n = 12;
};

struct DivisorChoice {
  bool dp = false;
  bool d0 = false;
  bool dp_prime = false;
  bool canonical = false;

  void add_flags(CLI::App* cmd) {
    cmd->add_flag("--dp", dp, "use D_P built from the biplane");
    cmd->add_flag("--d0", d0, "use D_0 on 12 markings");
    cmd->add_flag("--dp-prime", dp_prime, "use D'_P built from the biplane");
    cmd->add_flag("--canonical", canonical, "use the canonical class K on 12 markings");
  }

};

Biplane load_biplane_checked(const std::string& path, bool verify) {
  Biplane b = path.empty() ? build_biplane_qr() : load_biplane(path);
  if (verify) require_biplane(b);
  return b;
}

// Resolves the divisor from the named flags or --divisor; `fallback` names
// the default when neither is given (empty means required).
DivisorClass choose_divisor(const DivisorChoice& choice, const Globals& g, RunManifest& manifest,
                            const std::string& fallback, std::string& label) {
  const int picked = int{choice.dp} + int{choice.d0} + int{choice.dp_prime} + int{choice.canonical} +
                     int{!g.divisor_file.empty()};
  if (picked > 1) throw InvalidInput("choose at most one divisor source");
  auto biplane = [&] {
    if (!g.biplane_file.empty()) manifest.add_input(g.biplane_file);
    return load_biplane_checked(g.biplane_file, true);
  };
  if (!g.divisor_file.empty()) {
    manifest.add_input(g.divisor_file);
    label = g.divisor_file;
    return load_divisor(g.divisor_file, g.text_n);
  }
  std::string name = choice.dp ? "D_P" : choice.d0 ? "D_0" : choice.dp_prime ? "D'_P" : choice.canonical ? "K" : fallback;
  if (name.empty()) throw InvalidInput("no divisor given; pass --divisor FILE or one of --dp/--d0/--dp-prime/--canonical");
  label = name;
  if (name == "D_P") return build_DP(biplane());
  if (name == "D'_P") return build_DP_prime(biplane());
  if (name == "D_0") return build_D0(12);
  return canonical_K(12);
}

void emit(const Globals& g, const std::string& command, RunManifest& manifest, Json report) {
  manifest.finish();
  if (!g.json) return;
  Json out{{"command", command}, {"report", std::move(report)}, {"manifest", manifest.to_json()}};
  std::cout << out.dump(2) << '\n';
}

std::ostream& text(const Globals& g) {
  static std::ofstream null_stream;
  return g.json ? static_cast<std::ostream&>(null_stream) : std::cout;
}

// ---------------------------------------------------------------------------

int cmd_biplane(const Globals& g, RunManifest& manifest, const std::string& file, bool no_verify) {
  const std::string path = file.empty() ? g.biplane_file : file;
  if (!path.empty()) manifest.add_input(path);
  manifest.phase("load");
  const Biplane b = path.empty() ? build_biplane_qr() : load_biplane(path);
  manifest.phase("verify");
  const DesignReport design = verify_biplane(b);
  Json report{{"source", path.empty() ? "quadratic residues mod 11" : path}};
  Json blocks = Json::array();
  for (SubsetMask s : b.blocks()) blocks.push_back(format_subset(s));
  report["blocks"] = blocks;
  report["design"] = to_json(design);

  auto& out = text(g);
  for (SubsetMask s : b.blocks()) out << "block " << format_subset(s) << '\n';
  out << "pair replication " << design.pair_replication << ", point replication " << design.point_replication
      << ", block intersections " << (design.block_intersections_ok ? "ok" : "FAIL") << '\n';

  if (!design.ok && !no_verify) {
    out << "not a biplane: " << design.failure << '\n';
    emit(g, "biplane", manifest, std::move(report));
    return kFailed;
  }
  manifest.phase("automorphisms");
  const auto order = automorphism_group_order(b);
  report["automorphism_group_order"] = order;
  out << "automorphism group order " << order << '\n';
  emit(g, "biplane", manifest, std::move(report));
  return kOk;
}

int cmd_verify(const Globals& g, RunManifest& manifest) {
  if (!g.biplane_file.empty()) manifest.add_input(g.biplane_file);
  manifest.phase("load");
  const Biplane b = load_biplane_checked(g.biplane_file, true);
  const ScanOptions options{g.threads};

  manifest.phase("counterexample");
  const CounterexampleReport counter = verify_counterexample(b, options);

  manifest.phase("certificate");
  const DivisorClass dp = build_DP(b);
  const NonBoundaryCertificate cert = certify_not_boundary(dp, build_CP(b));

  manifest.phase("decomposition");
  const DivisorClass difference = build_D0(12) - build_DP_prime(b);
  const bool reduced_equal = reduce_canonical(dp) == reduce_canonical(difference);
  const CoefficientTable lhs = dp.dense();
  const CoefficientTable rhs = difference.dense();
  const auto mismatches = scan_fcurves<std::uint64_t>(
      12, options, [] { return std::uint64_t{0}; },
      [&](std::uint64_t& m, const FCurve& c) { m += pair_table_fcurve(lhs, c) != pair_table_fcurve(rhs, c); },
      [](std::uint64_t& into, std::uint64_t next) { into += next; });

  const bool decomposition_ok = reduced_equal && mismatches == 0;
  const bool certified =
      cert.not_boundary == Certificate::certified && cert.not_K_plus_boundary == Certificate::certified;
  const bool all_ok = counter.verdict && certified && decomposition_ok;

  auto& out = text(g);
  out << "(a) F-nef: min " << counter.a_fnef.min_value << " over " << counter.a_fnef.curves_scanned
      << " F-curves, " << counter.a_fnef.zero_count << " zero pairings\n"
      << "(b) C_P boundary minimum " << counter.b_boundary_min << '\n'
      << "(c) K.C_P = " << counter.c_K_pairing << '\n'
      << "(d) D_P.C_P = " << counter.d_DP_pairing << '\n'
      << "not an effective boundary sum: " << (cert.not_boundary == Certificate::certified ? "certified" : "inconclusive")
      << '\n'
      << "not cK + effective boundary: "
      << (cert.not_K_plus_boundary == Certificate::certified ? "certified" : "inconclusive") << '\n'
      << "D_P = D_0 - D'_P: reduced forms " << (reduced_equal ? "equal" : "DIFFER") << ", " << mismatches
      << " pairing mismatches\n"
      << (all_ok ? "verified" : "FAILED") << '\n';

  Json report{{"counterexample", to_json(counter)},
              {"certificate", to_json(cert)},
              {"decomposition", {{"reduced_equal", reduced_equal}, {"pairing_mismatches", mismatches}}},
              {"verdict", all_ok}};
  emit(g, "verify", manifest, std::move(report));
  return all_ok ? kOk : kFailed;
}

int cmd_fcurves(const Globals& g, RunManifest& manifest, int n, bool list, std::uint64_t limit) {
  manifest.phase("count");
  const std::uint64_t expected = count_fcurves(n);
  manifest.phase("enumerate");
  std::uint64_t streamed = 0;
  Json listed = Json::array();
  auto& out = text(g);
  for_each_fcurve(n, [&](const FCurve& c) {
    if (list && (limit == 0 || streamed < limit)) {
      if (g.json) {
        listed.push_back(format_fcurve(c));
      } else {
        out << format_fcurve(c) << '\n';
      }
    }
    ++streamed;
  });
  const bool ok = streamed == expected;
  out << "S(" << n << ",4) = " << expected << ", enumerated " << streamed << (ok ? "" : " MISMATCH") << '\n';
  Json report{{"n", n}, {"stirling", expected}, {"enumerated", streamed}, {"match", ok}};
  if (list) report["curves"] = std::move(listed);
  emit(g, "fcurves", manifest, std::move(report));
  return ok ? kOk : kFailed;
}

int cmd_pair(const Globals& g, RunManifest& manifest, const DivisorChoice& choice, const std::string& curve,
             bool with_cp, const std::string& functional_file, bool scan) {
  std::string label;
  manifest.phase("load");
  const DivisorClass d = choose_divisor(choice, g, manifest, "", label);
  Json report{{"divisor", label}, {"n", d.n()}};
  auto& out = text(g);
  if (!curve.empty()) {
    const FCurve c = parse_fcurve(curve, d.n());
    const Coefficient v = pair_divisor_fcurve(d, c);
    report["curve"] = format_fcurve(c);
    report["curve_pairing"] = v;
    out << label << " . C[" << format_fcurve(c) << "] = " << v << '\n';
  }
  auto pair_functional = [&](const CurveFunctional& f, const std::string& name) {
    const RelationCheck check = check_relations(f);
    const Coefficient v = pair_divisor_functional(d, f);
    report["functional"] = name;
    report["functional_relations_ok"] = check.ok;
    report["functional_pairing"] = v;
    out << label << " . " << name << " = " << v << (check.ok ? "" : " (functional violates relations)") << '\n';
  };
  if (with_cp) pair_functional(build_CP(load_biplane_checked(g.biplane_file, true)), "C_P");
  if (!functional_file.empty()) {
    manifest.add_input(functional_file);
    pair_functional(load_functional(functional_file), functional_file);
  }
  if (scan) {
    manifest.phase("scan");
    const FNefReport r = fnef_check(d, ScanOptions{g.threads});
    report["fnef"] = to_json(r);
    out << "min over F-curves " << r.min_value << (r.argmin ? " at " + format_fcurve(*r.argmin) : "") << ", "
        << r.zero_count << " zero pairings, " << (r.nonnegative ? "F-nef" : "not F-nef") << '\n';
  }
  emit(g, "pair", manifest, std::move(report));
  return kOk;
}

int cmd_extremal(const Globals& g, RunManifest& manifest, const DivisorChoice& choice,
                 std::vector<std::uint32_t> primes) {
  if (primes.empty()) primes.assign(std::begin(kDefaultPrimes), std::end(kDefaultPrimes));
  for (std::uint32_t p : primes) static_cast<void>(PrimeField{p});
  manifest.set_primes(primes);
  for (std::uint32_t p : primes) {
    if (p < kSmallPrimeWarning) {
      std::cerr << "warning: prime " << p
                << " is small; rank drops mod p become likely, but a full-rank result still certifies\n";
    }
  }
  std::string label;
  manifest.phase("load");
  const DivisorClass d = choose_divisor(choice, g, manifest, "D_P", label);
  const ScanOptions options{g.threads};

  manifest.phase("scan");
  const FNefReport fnef = fnef_check(d, options);
  auto& out = text(g);
  if (!fnef.nonnegative) {
    out << label << " is not F-nef: pairing " << fnef.min_value << " with " << format_fcurve(*fnef.argmin) << '\n';
    emit(g, "extremal", manifest, Json{{"divisor", label}, {"fnef", to_json(fnef)}, {"certified_extremal", false}});
    return kFailed;
  }
  manifest.phase("rank");
  const ExtremalityReport r = extremality_rank(d, primes, options);
  out << "ambient dimension " << r.ambient_dim << ", " << r.zero_set_size << " zero-pairing F-curves\n";
  for (const PrimeRank& p : r.ranks) {
    out << "rank mod " << p.prime << " = " << p.rank << " (" << p.rows_streamed << " rows streamed)\n";
  }
  out << (r.certified_extremal ? "certified extremal" : "not certified") << '\n';
  emit(g, "extremal", manifest, Json{{"divisor", label}, {"extremality", to_json(r)}});
  return r.certified_extremal ? kOk : kFailed;
}

int cmd_pullback(const Globals& g, RunManifest& manifest, const DivisorChoice& choice, const std::string& out_file,
                 bool scan, std::uint64_t samples, std::uint64_t seed) {
  std::string label;
  manifest.phase("load");
  const DivisorClass d = choose_divisor(choice, g, manifest, "", label);
  manifest.phase("pullback");
  const DivisorClass boundary = eliminate_psi(d);
  const DivisorClass pulled = pullback_forgetful(boundary);
  const bool numerically_zero = reduce_canonical(pulled).is_zero();

  auto& out = text(g);
  Json report{{"divisor", label},
              {"n", d.n()},
              {"pullback_n", pulled.n()},
              {"support_size", pulled.support_size()},
              {"numerically_zero", numerically_zero}};
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw InvalidInput("cannot write " + out_file);
    if (out_file.ends_with(".json")) {
      f << divisor_to_json(pulled).dump(2) << '\n';
    } else {
      write_divisor(f, pulled);
    }
    report["written_to"] = out_file;
  } else if (g.json) {
    report["pullback"] = divisor_to_json(pulled);
  } else {
    write_divisor(out, pulled);
  }
  out << "pullback to " << pulled.n() << " markings: " << pulled.support_size() << " terms"
      << (numerically_zero ? ", numerically zero" : "") << '\n';

  bool ok = true;
  if (samples > 0) {
    manifest.phase("projection");
    std::mt19937_64 rng(seed);
    const CoefficientTable up = pulled.dense();
    const CoefficientTable down = boundary.dense();
    std::uint64_t mismatches = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const FCurve c = random_fcurve(pulled.n(), rng);
      const auto pushed = pushforward_fcurve(c);
      const Coefficient expect = pushed ? pair_table_fcurve(down, *pushed) : 0;
      mismatches += pair_table_fcurve(up, c) != expect;
    }
    report["projection"] = {{"samples", samples}, {"seed", seed}, {"mismatches", mismatches}};
    out << "projection formula: " << mismatches << " mismatches in " << samples << " samples\n";
    ok = ok && mismatches == 0;
  }
  if (scan) {
    manifest.phase("scan");
    const FNefReport r = fnef_check(pulled, ScanOptions{g.threads});
    report["fnef"] = to_json(r);
    out << "scan over " << r.curves_scanned << " F-curves: min " << r.min_value << ", "
        << (r.nonnegative ? "F-nef" : "not F-nef") << '\n';
    ok = ok && r.nonnegative;
  }
  emit(g, "pullback", manifest, std::move(report));
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisor and F-curve computations on the moduli space of 12-pointed rational curves"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_flag("--json", g.json, "print a JSON report with an embedded run manifest");
  app.add_option("--threads", g.threads, "worker threads for F-curve scans")->check(CLI::PositiveNumber);
  app.add_option("--biplane", g.biplane_file, "biplane file (11 lines of 5 points)");
  app.add_option("--divisor", g.divisor_file, "divisor file (text or JSON)");
  app.add_option("--n", g.text_n, "marking count for text divisor files")->check(CLI::Range(kMinMarkings, kMaxMarkings));

  auto* biplane = app.add_subcommand("biplane", "build or load a biplane, verify it, count automorphisms");
  bool use_default = false;
  bool no_verify = false;
  std::string biplane_file;
  biplane->add_flag("--default", use_default, "use the quadratic-residue construction (the default)");
  biplane->add_option("--file", biplane_file, "biplane file");
  biplane->add_flag("--no-verify", no_verify, "do not fail on axiom violations");

  auto* verify = app.add_subcommand("verify", "check that D_P is F-nef and certified non-boundary by C_P");

  auto* fcurves = app.add_subcommand("fcurves", "count or list F-curves");
  int fc_n = 12;
  bool fc_list = false;
  std::uint64_t fc_limit = 0;
  fcurves->add_option("n", fc_n, "marking count")->check(CLI::Range(kMinMarkings, kMaxMarkings));
  fcurves->add_flag("--list", fc_list, "print the curves in enumeration order");
  fcurves->add_option("--limit", fc_limit, "print at most this many curves");

  auto* pair = app.add_subcommand("pair", "pair a divisor with an F-curve, C_P, a functional file, or scan");
  DivisorChoice pair_choice;
  pair_choice.add_flags(pair);
  std::string pair_curve;
  std::string pair_functional;
  bool pair_cp = false;
  bool pair_scan = false;
  pair->add_option("--curve", pair_curve, "F-curve as four '|'-separated blocks");
  pair->add_flag("--cp", pair_cp, "pair with C_P");
  pair->add_option("--functional", pair_functional, "curve functional JSON file");
  pair->add_flag("--scan", pair_scan, "minimum over all F-curves");

  auto* extremal = app.add_subcommand("extremal", "certify an extremal ray of the F-nef cone by rank mod p");
  DivisorChoice ext_choice;
  ext_choice.add_flags(extremal);
  std::vector<std::uint32_t> primes;
  extremal->add_option("--prime", primes, "prime modulus below 2^31 (repeatable)");

  auto* pullback = app.add_subcommand("pullback", "pull a divisor back along the map forgetting a new marking");
  DivisorChoice pb_choice;
  pb_choice.add_flags(pullback);
  std::string pb_out;
  bool pb_scan = false;
  std::uint64_t pb_samples = 0;
  std::uint64_t pb_seed = 12345;
  pullback->add_option("--out", pb_out, "write the pulled-back divisor here (.json for JSON)");
  pullback->add_flag("--scan", pb_scan, "check F-nefness on n+1 markings");
  pullback->add_option("--samples", pb_samples, "random projection-formula checks");
  pullback->add_option("--seed", pb_seed, "seed for --samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  RunManifest manifest(std::vector<std::string>(argv, argv + argc));
  manifest.set_threads(g.threads);
  try {
    if (*biplane) {
      if (use_default && !biplane_file.empty()) throw InvalidInput("--default and --file are exclusive");
      return cmd_biplane(g, manifest, use_default ? std::string() : biplane_file, no_verify);
    }
    if (*verify) return cmd_verify(g, manifest);
    if (*fcurves) return cmd_fcurves(g, manifest, fc_n, fc_list, fc_limit);
    if (*pair) return cmd_pair(g, manifest, pair_choice, pair_curve, pair_cp, pair_functional, pair_scan);
    if (*extremal) return cmd_extremal(g, manifest, ext_choice, primes);
    if (*pullback) return cmd_pullback(g, manifest, pb_choice, pb_out, pb_scan, pb_samples, pb_seed);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const RequiresBoundaryForm& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kFailed;
  }
  return kBadInput;
}
