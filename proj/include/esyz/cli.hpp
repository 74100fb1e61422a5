#pragma once

// The `esyz` command line: oracle queries, region scans, decompositions,
// Betti tables of explicit models and the verification suite.
//
// Exit codes: 0 success, 1 domain error (message carries the error name),
// 2 usage error. ESYZ_PRIME overrides the default prime.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "esyz/serialize.hpp"
#include "esyz/verify.hpp"

namespace esyz::cli {

using oracle::Int;
using oracle::NumClass;
using oracle::SurfaceInvariant;
using nlohmann::json;

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

inline std::uint32_t default_prime() {
  if (const char* env = std::getenv("ESYZ_PRIME")) {
    try {
      const unsigned long v = std::stoul(env);
      PrimeField check(static_cast<std::uint32_t>(v));
      return check.prime();
    } catch (const std::exception&) {
      throw Error("InvalidPrime", std::string("ESYZ_PRIME=") + env + " is not a usable prime");
    }
  }
  return models::kDefaultPrime;
}

inline json oracle_record(NumClass l, SurfaceInvariant s, Int p) {
  json j{{"e", s.e()},
         {"class", l},
         {"p", p},
         {"self_intersection", oracle::intersection_form(l, l, s)},
         {"canonical_class", oracle::canonical_class(s)},
         {"euler_characteristic", oracle::euler_characteristic(l, s)},
         {"cohomology", oracle::cohomology_dims(l, s)},
         {"positivity", oracle::positivity(l, s)},
         {"effectivity", oracle::effectivity_status(l, s)},
         {"np_status", oracle::np_status(l, s, p)},
         {"codimension", nullptr}};
  try {
    j["codimension"] = oracle::codimension(l, s);
  } catch (const Error&) {
    // left null where the tables do not certify h1 = h2 = 0
  }
  return j;
}

inline void write_scan(std::ostream& out, SurfaceInvariant s, Int p, Int amin, Int amax, Int bmin,
                       Int bmax) {
  out << "a,b,e,p,verdict,source\n";
  for (Int a = amin; a <= amax; ++a)
    for (Int b = bmin; b <= bmax; ++b) {
      const auto st = oracle::np_status({a, b}, s, p);
      out << a << ',' << b << ',' << s.e() << ',' << p << ',' << oracle::to_string(st.verdict)
          << ',' << oracle::to_string(st.source) << '\n';
    }
}

inline json decompose_record(NumClass l, SurfaceInvariant s, Int p, std::optional<Int> k) {
  json witnesses = json::array();
  const Int k0 = k ? *k : 1, k1 = k ? *k : p;
  for (Int kk = k0; kk <= k1; ++kk) {
    const auto w = oracle::decompose_for_np(l, s, p, kk);
    require(w.has_value(), "NotFound",
            oracle::to_string(l) + " is outside the sufficient region for p=" + std::to_string(p));
    json wj = *w;
    wj["k"] = kk;
    witnesses.push_back(std::move(wj));
  }
  return json{{"e", s.e()}, {"class", l}, {"p", p}, {"witnesses", std::move(witnesses)}};
}

struct BettiArgs {
  std::string model = "elliptic";
  int d = 4;
  Int e = 0, a = 2, b = 4;
  int pmax = 3;
  int qmax = models::kDefaultQMax;
  std::uint32_t prime = models::kDefaultPrime;
  std::uint64_t seed = 1;
  std::size_t budget = koszul::EngineConfig{}.budget;
  Int curve_a = 2, curve_b = 3;
  std::string dump_path;
  int dump_wedge = 1, dump_degree = 1;
};

inline models::EmbeddedModel make_model(const BettiArgs& args) {
  if (args.model == "rnc") return models::rnc_model(args.d, args.prime, args.qmax);
  const auto curve = models::elliptic_points(args.curve_a, args.curve_b, args.prime);
  if (args.model == "elliptic") return models::elliptic_normal_model(curve, args.d, args.qmax);
  return models::ruled_surface_model(curve, args.e, {args.a, args.b}, args.qmax);
}

inline void run_betti(std::ostream& out, const BettiArgs& args) {
  koszul::EngineConfig cfg;
  cfg.seed = args.seed;
  cfg.budget = args.budget;
  auto model = make_model(args);
  const std::string label = model.label;
  const auto ring = koszul::build_ring(std::move(model), args.qmax + 1, cfg);
  out << "# model=" << label << " prime=" << args.prime << " seed=" << args.seed
      << " budget=" << args.budget << '\n';
  out << "# hilbert=";
  for (std::size_t m = 0; m < ring.hilbert_actual().size(); ++m)
    out << (m ? "," : "") << ring.hilbert_actual()[m];
  out << " normally_generated=" << (koszul::normal_generation_check(ring) ? "true" : "false")
      << '\n';
  koszul::write_betti_csv(out, koszul::betti_table(ring, args.pmax, args.qmax, cfg));
  if (args.qmax >= 2 && koszul::normal_generation_check(ring)) {
    for (int p = 1; p <= args.pmax; ++p) {
      json rec = koszul::decide_np(ring, p, args.qmax, cfg, true);
      out << "# decide_np " << rec.dump() << '\n';
    }
  } else {
    out << "# decide_np skipped: needs qmax >= 2 and a normally generated ring\n";
  }
  if (!args.dump_path.empty()) {
    std::ofstream f(args.dump_path);
    require(static_cast<bool>(f), "IoError", "cannot open " + args.dump_path);
    koszul::dump_differential(f, ring, static_cast<std::size_t>(args.dump_wedge), args.dump_degree,
                              cfg);
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Syzygies of line bundles on elliptic ruled surfaces", "esyz"};
  app.require_subcommand(1);

  Int e = 0, a = 0, b = 0, p = 1;
  Int amin = 0, amax = 8, bmin = -4, bmax = 8;
  std::optional<Int> k;
  BettiArgs betti;
  std::size_t verify_budget = koszul::EngineConfig{}.budget;
  std::uint32_t verify_prime = 0;

  auto* oracle_cmd = app.add_subcommand("oracle", "Tables, positivity, effectivity and N_p status of a class");
  oracle_cmd->add_option("-e", e, "surface invariant e (>= -1)")->required();
  oracle_cmd->add_option("-a", a, "coefficient of C0")->required();
  oracle_cmd->add_option("-b", b, "coefficient of f")->required();
  oracle_cmd->add_option("-p", p, "syzygy index")->check(CLI::NonNegativeNumber);

  auto* scan_cmd = app.add_subcommand("scan", "N_p verdicts over a window of classes, as CSV");
  scan_cmd->add_option("-e", e)->required();
  scan_cmd->add_option("-p", p)->required()->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--amin", amin);
  scan_cmd->add_option("--amax", amax);
  scan_cmd->add_option("--bmin", bmin);
  scan_cmd->add_option("--bmax", bmax);

  auto* dec_cmd = app.add_subcommand("decompose", "Factorization witness L = B_1 ... B_{k+1} P");
  dec_cmd->add_option("-e", e)->required();
  dec_cmd->add_option("-a", a)->required();
  dec_cmd->add_option("-b", b)->required();
  dec_cmd->add_option("-p", p)->required()->check(CLI::PositiveNumber);
  dec_cmd->add_option("-k", k, "single k in [1, p]; all k when omitted");

  auto* betti_cmd = app.add_subcommand("betti", "Betti table and N_p decisions of an explicit model");
  betti_cmd->add_option("--model", betti.model)->check(CLI::IsMember({"rnc", "elliptic", "ruled"}));
  betti_cmd->add_option("-d", betti.d, "degree (rnc, elliptic)");
  betti_cmd->add_option("-e", betti.e, "invariant e (ruled)");
  betti_cmd->add_option("-a", betti.a, "coefficient of C0 (ruled)");
  betti_cmd->add_option("-b", betti.b, "coefficient of f (ruled)");
  betti_cmd->add_option("--pmax", betti.pmax)->check(CLI::NonNegativeNumber);
  betti_cmd->add_option("--qmax", betti.qmax)->check(CLI::PositiveNumber);
  betti_cmd->add_option("--prime", betti.prime);
  betti_cmd->add_option("--seed", betti.seed);
  betti_cmd->add_option("--budget", betti.budget, "max differential size (rows * cols)");
  betti_cmd->add_option("--curve-a", betti.curve_a, "Weierstrass A");
  betti_cmd->add_option("--curve-b", betti.curve_b, "Weierstrass B");
  betti_cmd->add_option("--dump-differential", betti.dump_path, "write a differential as triplets");
  betti_cmd->add_option("--dump-wedge", betti.dump_wedge, "source wedge power of the dump");
  betti_cmd->add_option("--dump-degree", betti.dump_degree, "source ring degree of the dump");

  auto* verify_cmd = app.add_subcommand("verify", "Cross-module agreement suite");
  verify_cmd->add_option("--budget", verify_budget, "max differential size (rows * cols)");
  verify_cmd->add_option("--prime", verify_prime);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (oracle_cmd->parsed()) {
      out << oracle_record({a, b}, SurfaceInvariant(e), p).dump(2) << '\n';
    } else if (scan_cmd->parsed()) {
      write_scan(out, SurfaceInvariant(e), p, amin, amax, bmin, bmax);
    } else if (dec_cmd->parsed()) {
      if (k) require(*k >= 1 && *k <= p, "InvalidArgument", "k must lie in [1, p]");
      out << decompose_record({a, b}, SurfaceInvariant(e), p, k).dump(2) << '\n';
    } else if (betti_cmd->parsed()) {
      if (betti_cmd->count("--prime") == 0) betti.prime = default_prime();
      run_betti(out, betti);
    } else if (verify_cmd->parsed()) {
      verify::Options opt;
      opt.engine.budget = verify_budget;
      opt.prime = verify_prime ? verify_prime : default_prime();
      out << "# prime=" << opt.prime << " seed=" << opt.engine.seed << " budget=" << verify_budget
          << '\n';
      return verify::report(out, verify::run_all(opt)) ? kOk : kDomainError;
    }
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace esyz::cli
