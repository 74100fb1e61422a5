#pragma once

// Cross-module agreement checks: the oracle's tables against Riemann-Roch and
// Serre duality, the closed forms of the curve calculus against their explicit
// evaluation-model routes, and the oracle's N_p verdicts against the Koszul
// engine on small models.

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "esyz/bundles.hpp"
#include "esyz/koszul.hpp"
#include "esyz/models.hpp"
#include "esyz/oracle.hpp"

namespace esyz::verify {

using oracle::Int;
using oracle::NumClass;
using oracle::SurfaceInvariant;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Options {
  koszul::EngineConfig engine;
  std::uint32_t prime = models::kDefaultPrime;
  Int curve_a = 2;
  Int curve_b = 3;
};

namespace detail {

/// Returns an empty string on success, otherwise the first failure.
using Check = std::function<std::string()>;

inline CheckResult timed(const std::string& name, const Check& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r{name, false, "", 0};
  try {
    r.detail = fn();
    r.passed = r.detail.empty();
  } catch (const Error& e) {
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string chi_consistency() {
  for (Int e = -1; e <= 3; ++e) {
    const SurfaceInvariant s(e);
    for (Int a = -20; a <= 20; ++a)
      for (Int b = -20; b <= 20; ++b) {
        const NumClass l{a, b};
        const auto t = oracle::cohomology_dims(l, s);
        if (t.all_known() &&
            t.h0.value - t.h1.value + t.h2.value != oracle::euler_characteristic(l, s))
          return "e=" + std::to_string(e) + " " + oracle::to_string(l);
      }
  }
  return {};
}

inline std::string serre_symmetry() {
  for (Int e = -1; e <= 3; ++e) {
    const SurfaceInvariant s(e);
    const NumClass k = oracle::canonical_class(s);
    for (Int a = -20; a <= 20; ++a)
      for (Int b = -20; b <= 20; ++b) {
        const NumClass l{a, b};
        const auto t = oracle::cohomology_dims(l, s);
        const auto d = oracle::cohomology_dims(k - l, s);
        if (t.all_known() && d.all_known() && (t.h0 != d.h2 || t.h1 != d.h1 || t.h2 != d.h0))
          return "e=" + std::to_string(e) + " " + oracle::to_string(l);
      }
  }
  return {};
}

inline std::string split_sum() {
  for (Int e = 0; e <= 3; ++e) {
    const SurfaceInvariant s(e);
    for (Int a = 0; a <= 12; ++a)
      for (Int b = a * e + 1; b <= a * e + 20; ++b) {
        Int sum = 0;
        for (Int j = 0; j <= a; ++j) sum += b - j * e;
        if (sum != oracle::euler_characteristic({a, b}, s))
          return "e=" + std::to_string(e) + " (" + std::to_string(a) + "," + std::to_string(b) + ")";
      }
  }
  return {};
}

/// Route-specific cone condition on the remainder P.
inline bool remainder_in_cone(const oracle::DecompositionWitness& w, SurfaceInvariant s) {
  const NumClass r = w.remainder;
  switch (w.route) {
    case oracle::DecompositionRoute::StandardE: return r.a >= 0 && r.b - r.a * s.e() >= 0;
    case oracle::DecompositionRoute::MixedFactors: return r.a >= 0 && r.b >= 0;
    case oracle::DecompositionRoute::AllTwoC0: return oracle::has_effective_representative(r, s);
  }
  return false;
}

inline std::string decompositions() {
  for (Int e = -1; e <= 3; ++e) {
    const SurfaceInvariant s(e);
    for (Int p = 1; p <= 5; ++p)
      for (Int a = 0; a <= 30; ++a)
        for (Int b = -30; b <= 30; ++b) {
          const NumClass l{a, b};
          if (!oracle::in_sufficient_region(l, s, p)) continue;
          for (Int k = 1; k <= p; ++k) {
            const auto w = oracle::decompose_for_np(l, s, p, k);
            const std::string where = "e=" + std::to_string(e) + " " + oracle::to_string(l) +
                                      " p=" + std::to_string(p) + " k=" + std::to_string(k);
            if (!w) return "no witness at " + where;
            if (w->total() != l || static_cast<Int>(w->factors.size()) != k + 1)
              return "bad total at " + where;
            for (auto f : w->factors)
              if (!oracle::positivity(f, s).ample_and_bpf) return "factor not ample+bpf at " + where;
            if (!remainder_in_cone(*w, s)) return "remainder outside its cone at " + where;
          }
        }
  }
  return {};
}

inline std::string p1_routes() {
  std::vector<std::vector<Int>> lists;
  for (Int x = 1; x <= 4; ++x) {
    lists.push_back({x});
    for (Int y = 1; y <= 4; ++y) {
      lists.push_back({x, y});
      for (Int z = 1; z <= 4; ++z) lists.push_back({x, y, z});
    }
  }
  for (const auto& b : lists)
    for (Int l = -6; l <= 6; ++l)
      if (bundles::mb_tensor_cohomology_p1(b, l) != bundles::mb_tensor_h1_p1_explicit(b, l))
        return "b of length " + std::to_string(b.size()) + ", l=" + std::to_string(l);
  return {};
}

inline std::string slope_sufficiency(const models::EllipticCurveModel& curve) {
  for (int b1 = 3; b1 <= 5; ++b1)
    for (int l = 1; l <= 8; ++l) {
      const auto sc = bundles::slope_criterion_elliptic({{b1}, l});
      if (sc.applies && bundles::mb_tensor_h1_elliptic(curve, {bundles::bundle_at_infinity(b1)},
                                                       bundles::bundle_at_infinity(l)) != 0)
        return "b=[" + std::to_string(b1) + "], l=" + std::to_string(l);
    }
  const auto two = bundles::bundle_at_infinity(2);
  if (bundles::mb_tensor_h1_elliptic(curve, {two}, two) != 1) return "deg-2 self twist";
  return {};
}

inline std::string ruled_hilbert(const models::EllipticCurveModel& curve) {
  for (Int e = 0; e <= 1; ++e)
    for (NumClass l : {NumClass{1, e + 2}, NumClass{2, 2 * e + 4}}) {
      auto ring = koszul::build_ring(models::ruled_surface_model(curve, e, l, 1), 2);
      if (!koszul::normal_generation_check(ring))
        return "e=" + std::to_string(e) + " " + oracle::to_string(l) + " not normally generated";
    }
  return {};
}

inline std::string ruled_np(const models::EllipticCurveModel& curve, const Options& opt) {
  for (Int e = 0; e <= 1; ++e)
    for (NumClass l : {NumClass{2, 2 * e + 4}, NumClass{2, 2 * e + 5}}) {
      const SurfaceInvariant s(e);
      if (oracle::np_status(l, s, 1).verdict != oracle::Verdict::ProvenYes)
        return oracle::to_string(l) + " outside the sufficient region";
      auto ring = koszul::build_ring(models::ruled_surface_model(curve, e, l, 2), 3, opt.engine);
      const auto d = koszul::decide_np(ring, 1, 2, opt.engine, true);
      if (!d.complete()) return oracle::to_string(l) + ": " + d.truncation_note();
      if (!d.holds) return "engine refutes N_1 for e=" + std::to_string(e) + " " + oracle::to_string(l);
    }
  return {};
}

inline std::string elliptic_law(const models::EllipticCurveModel& curve, const Options& opt) {
  for (int d = 4; d <= 6; ++d) {
    auto ring = koszul::build_ring(models::elliptic_normal_model(curve, d, 2), 3, opt.engine);
    for (int p = 1; p <= 3; ++p) {
      const auto dec = koszul::decide_np(ring, p, 2, opt.engine);
      if (dec.holds != (d >= p + 3))
        return "d=" + std::to_string(d) + " p=" + std::to_string(p);
    }
  }
  return {};
}

}  // namespace detail

inline std::vector<CheckResult> run_all(const Options& opt = {}) {
  const auto curve = models::elliptic_points(opt.curve_a, opt.curve_b, opt.prime);
  std::vector<CheckResult> out;
  out.push_back(detail::timed("tables agree with Riemann-Roch", detail::chi_consistency));
  out.push_back(detail::timed("tables are Serre symmetric", detail::serre_symmetry));
  out.push_back(detail::timed("chi equals the split sum", detail::split_sum));
  out.push_back(detail::timed("decompositions are valid", detail::decompositions));
  out.push_back(detail::timed("P1 closed form equals explicit kernel", detail::p1_routes));
  out.push_back(detail::timed("slope criterion implies h1 = 0",
                              [&] { return detail::slope_sufficiency(curve); }));
  out.push_back(detail::timed("ruled models are normally generated",
                              [&] { return detail::ruled_hilbert(curve); }));
  out.push_back(detail::timed("engine confirms N_1 in the sufficient region",
                              [&] { return detail::ruled_np(curve, opt); }));
  out.push_back(detail::timed("elliptic normal curves: N_p iff d >= p + 3",
                              [&] { return detail::elliptic_law(curve, opt); }));
  return out;
}

inline bool report(std::ostream& os, const std::vector<CheckResult>& results) {
  bool ok = true;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) os << " -- " << r.detail;
    os << " [" << static_cast<long>(r.seconds * 1000) << " ms]\n";
    ok = ok && r.passed;
  }
  return ok;
}

}  // namespace esyz::verify
