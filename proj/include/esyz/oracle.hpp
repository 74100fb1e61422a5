#pragma once

// Integer calculus on the numerical lattice Num(X) = Z C0 + Z f of an elliptic
// ruled surface X with invariant e: intersection numbers, Riemann-Roch, the
// cohomology / positivity tables, and the N_p criteria.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esyz/error.hpp"

namespace esyz::oracle {

using Int = std::int64_t;

/// The invariant e of the ruled surface. e = -1 (indecomposable normalized
/// bundle) and e >= 0 are the two regimes; anything below -1 is rejected.
class SurfaceInvariant {
 public:
  explicit SurfaceInvariant(Int e) : e_(e) {
    require(e >= -1, "InvalidSurface",
            "elliptic ruled surfaces have e >= -1, got e = " + std::to_string(e));
  }
  Int e() const noexcept { return e_; }
  bool indecomposable() const noexcept { return e_ == -1; }
  friend bool operator==(SurfaceInvariant, SurfaceInvariant) = default;

 private:
  Int e_;
};

/// Numerical class a C0 + b f.
struct NumClass {
  Int a = 0;
  Int b = 0;

  friend NumClass operator+(NumClass x, NumClass y) { return {x.a + y.a, x.b + y.b}; }
  friend NumClass operator-(NumClass x, NumClass y) { return {x.a - y.a, x.b - y.b}; }
  friend NumClass operator-(NumClass x) { return {-x.a, -x.b}; }
  friend NumClass operator*(Int n, NumClass x) { return {n * x.a, n * x.b}; }
  friend auto operator<=>(const NumClass&, const NumClass&) = default;
};

inline std::string to_string(NumClass c) {
  return "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

/// C0^2 = -e, C0.f = 1, f^2 = 0.
inline Int intersection_form(NumClass x, NumClass y, SurfaceInvariant s) {
  return x.a * y.b + y.a * x.b - s.e() * x.a * y.a;
}

/// K_X = -2 C0 - e f.
inline NumClass canonical_class(SurfaceInvariant s) { return {-2, -s.e()}; }

/// chi(L) = L.(L - K)/2, using chi(O_X) = 0 for a ruled surface over an
/// elliptic curve.
inline Int euler_characteristic(NumClass l, SurfaceInvariant s) {
  return l.a * l.b + l.b - s.e() * l.a * (l.a + 1) / 2;
}

// ---------------------------------------------------------------------------
// Cohomology tables

struct CohomValue {
  enum class Kind { Known, Positive, Unknown };
  Kind kind = Kind::Unknown;
  Int value = 0;  // meaningful only for Known

  static CohomValue known(Int n) { return {Kind::Known, n}; }
  static CohomValue positive() { return {Kind::Positive, 0}; }
  static CohomValue unknown() { return {Kind::Unknown, 0}; }

  bool is_known() const noexcept { return kind == Kind::Known; }
  bool is_zero() const noexcept { return kind == Kind::Known && value == 0; }
  bool is_nonzero() const noexcept {
    return kind == Kind::Positive || (kind == Kind::Known && value > 0);
  }
  friend bool operator==(const CohomValue&, const CohomValue&) = default;
};

inline std::string to_string(const CohomValue& v) {
  switch (v.kind) {
    case CohomValue::Kind::Known: return std::to_string(v.value);
    case CohomValue::Kind::Positive: return "positive";
    case CohomValue::Kind::Unknown: break;
  }
  return "unknown";
}

struct CohomTriple {
  CohomValue h0, h1, h2;
  bool all_known() const noexcept { return h0.is_known() && h1.is_known() && h2.is_known(); }
  friend bool operator==(const CohomTriple&, const CohomTriple&) = default;
};

namespace detail {

enum class Sign { Negative, Zero, Positive };
inline Sign compare(Int lhs, Int rhs) {
  return lhs > rhs ? Sign::Positive : (lhs == rhs ? Sign::Zero : Sign::Negative);
}
inline CohomValue cell(Sign s, CohomValue above, CohomValue on, CohomValue below) {
  return s == Sign::Positive ? above : (s == Sign::Zero ? on : below);
}

}  // namespace detail

/// Table lookup of h^0, h^1, h^2 for any line bundle in the class. Cells the
/// tables leave open are Unknown. A Positive h^0 (resp. h^2) whose two
/// companions are Known(0) is sharpened to Known(chi).
inline CohomTriple cohomology_dims(NumClass l, SurfaceInvariant s) {
  using detail::cell;
  using detail::compare;
  const auto zero = CohomValue::known(0), pos = CohomValue::positive(), unk = CohomValue::unknown();
  const Int a = l.a, b = l.b, e = s.e();
  CohomTriple t;
  if (a == -1) {
    t = {zero, zero, zero};
  } else if (e == -1) {
    const auto side = compare(2 * b, -a);  // b versus -a/2
    if (a >= 0)
      t = {cell(side, pos, unk, zero), cell(side, zero, unk, pos), zero};
    else
      t = {zero, cell(side, pos, unk, zero), cell(side, zero, unk, pos)};
  } else if (a >= 0) {
    t.h0 = cell(compare(b, 0), pos, unk, zero);
    t.h1 = cell(compare(b, a * e), zero, unk, pos);
    t.h2 = zero;
  } else {
    t.h0 = zero;
    t.h2 = cell(compare(b, -e), zero, unk, pos);
    // Serre-dual orientation of the h^1 rows: h^1(L) = h^1(K - L) with
    // K - L = (-2-a) C0 + (-e-b) f and -2-a >= 0.
    t.h1 = cell(compare(b, e * (a + 1)), pos, unk, zero);
  }
  const Int chi = euler_characteristic(l, s);
  if (t.h0.kind == CohomValue::Kind::Positive && t.h1.is_zero() && t.h2.is_zero() && chi > 0)
    t.h0 = CohomValue::known(chi);
  if (t.h2.kind == CohomValue::Kind::Positive && t.h0.is_zero() && t.h1.is_zero() && chi > 0)
    t.h2 = CohomValue::known(chi);
  return t;
}

// ---------------------------------------------------------------------------
// Effectivity

enum class Effectivity {
  AllRepresentativesEffective,
  SomeRepresentativesEffective,
  NoRepresentativeEffective,
  Unknown
};

struct EffectivityStatus {
  Effectivity verdict = Effectivity::Unknown;
  std::optional<std::string> detail;
  std::optional<int> effective_bundles;  // exact count when finitely many are effective
};

/// For e = -1 the classes n(2C0 - f) sit on the open boundary row of the
/// table; among their representatives exactly 3 (n = 1) or 4 (n >= 2) are
/// effective, and only the trivial bundle for n = 0.
inline EffectivityStatus effectivity_status(NumClass l, SurfaceInvariant s) {
  if (s.e() == -1 && l.a >= 0 && l.a == -2 * l.b) {
    const Int n = l.a / 2;
    const int count = n == 0 ? 1 : (n == 1 ? 3 : 4);
    return {Effectivity::SomeRepresentativesEffective,
            "exactly " + std::to_string(count) + " effective line bundle" +
                (count == 1 ? "" : "s") + " in the class n(2C0-f), n=" + std::to_string(n),
            count};
  }
  const CohomValue h0 = cohomology_dims(l, s).h0;
  if (h0.is_nonzero()) return {Effectivity::AllRepresentativesEffective, std::nullopt, std::nullopt};
  if (h0.is_zero()) return {Effectivity::NoRepresentativeEffective, std::nullopt, 0};
  return {Effectivity::Unknown, std::nullopt, std::nullopt};
}

inline bool has_effective_representative(NumClass l, SurfaceInvariant s) {
  const auto v = effectivity_status(l, s).verdict;
  return v == Effectivity::AllRepresentativesEffective ||
         v == Effectivity::SomeRepresentativesEffective;
}

// ---------------------------------------------------------------------------
// Positivity

enum class Bpf { Yes, Unknown };

struct Positivity {
  bool ample = false;
  Bpf bpf = Bpf::Unknown;  // the base-point-freeness test is only sufficient
  bool ample_and_bpf = false;
};

inline Positivity positivity(NumClass l, SurfaceInvariant s) {
  const Int a = l.a, b = l.b, e = s.e();
  Positivity out;
  if (e == -1) {
    out.ample = a > 0 && 2 * b > -a;
    out.bpf = (a >= 0 && a + b >= 2 && a + 2 * b >= 2) ? Bpf::Yes : Bpf::Unknown;
    out.ample_and_bpf = a >= 1 && a + b >= 2 && a + 2 * b >= 2;
  } else {
    out.ample = a > 0 && b > a * e;
    out.bpf = (a >= 0 && b - a * e >= 2) ? Bpf::Yes : Bpf::Unknown;
    out.ample_and_bpf = a >= 1 && b - a * e >= 2;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Property N_p

enum class Verdict { ProvenYes, ProvenNo, ConjecturedYes, ConjecturedNo, Unknown };

/// Where a verdict comes from. The serialized tags (see to_string) are part
/// of the CLI output format.
enum class Source {
  HommaNormalGeneration,  // N_0 iff, e = -1
  QuadricGeneration,      // N_1 iff, e = -1
  SufficientEMinusOne,    // sufficient region, e = -1
  SufficientENonneg,      // sufficient region, e >= 0
  ConjecturedRegion,
  AdjointProduct,
  BpfProduct,
  AmpleProduct,
};

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ProvenYes: return "proven_yes";
    case Verdict::ProvenNo: return "proven_no";
    case Verdict::ConjecturedYes: return "conjectured_yes";
    case Verdict::ConjecturedNo: return "conjectured_no";
    case Verdict::Unknown: break;
  }
  return "unknown";
}

inline std::string to_string(Source src) {
  switch (src) {
    case Source::HommaNormalGeneration: return "homma_n0";
    case Source::QuadricGeneration: return "gp_n1";
    case Source::SufficientEMinusOne: return "thm6.1.1";
    case Source::SufficientENonneg: return "thm6.1.2";
    case Source::ConjecturedRegion: return "conj7.3";
    case Source::AdjointProduct: return "cor6.2";
    case Source::BpfProduct: return "cor6.3";
    case Source::AmpleProduct: return "cor6.4";
  }
  return "unknown";
}

struct NpStatus {
  Verdict verdict = Verdict::Unknown;
  Source source = Source::ConjecturedRegion;
  Int p = 0;
  friend bool operator==(const NpStatus&, const NpStatus&) = default;
};

/// Sufficient region for N_p, p >= 1.
inline bool in_sufficient_region(NumClass l, SurfaceInvariant s, Int p) {
  if (p < 1) return false;
  if (s.e() == -1) return l.a >= p + 1 && l.a + l.b >= 2 * p + 2 && l.a + 2 * l.b >= 2 * p + 2;
  return l.a >= p + 1 && l.b - l.a * s.e() >= 2 * p + 2;
}

/// Conjectured exact region for N_p.
inline bool in_conjectured_region(NumClass l, SurfaceInvariant s, Int p) {
  if (s.e() == -1) return l.a >= 1 && l.a + l.b >= p + 3 && l.a + 2 * l.b >= p + 3;
  return l.a >= 1 && l.b - l.a * s.e() >= p + 3;
}

/// Resolution order: the sufficient region (p >= 1) first, then for e = -1
/// the iff criteria for p = 0, 1, otherwise the conjectured region. The
/// sufficient region lies inside the iff regions, so the order only decides
/// which source is cited. Conjectures never override a proven verdict.
inline NpStatus np_status(NumClass l, SurfaceInvariant s, Int p) {
  require(p >= 0, "InvalidArgument", "p must be nonnegative");
  if (in_sufficient_region(l, s, p))
    return {Verdict::ProvenYes,
            s.e() == -1 ? Source::SufficientEMinusOne : Source::SufficientENonneg, p};
  if (s.e() == -1 && p <= 1) {
    const Int t = p == 0 ? 3 : 4;
    const bool holds = l.a >= 1 && l.a + l.b >= t && l.a + 2 * l.b >= t;
    return {holds ? Verdict::ProvenYes : Verdict::ProvenNo,
            p == 0 ? Source::HommaNormalGeneration : Source::QuadricGeneration, p};
  }
  return {in_conjectured_region(l, s, p) ? Verdict::ConjecturedYes : Verdict::ConjecturedNo,
          Source::ConjecturedRegion, p};
}

// ---------------------------------------------------------------------------
// Products of positive bundles

enum class FactorKind { Ample, AmpleAndBpf };

struct Factor {
  NumClass cls;
  FactorKind kind = FactorKind::Ample;
};

/// N_p for A_1 (x) ... (x) A_q, optionally twisted by the canonical bundle.
/// A corollary verdict is only issued when the assembled class also lands in
/// the sufficient region; otherwise the total class's own status is returned.
inline NpStatus combination_np(SurfaceInvariant s, const std::vector<Factor>& factors,
                               bool adjoint, Int p) {
  require(p >= 1, "InvalidArgument", "p must be positive");
  NumClass total = adjoint ? canonical_class(s) : NumClass{};
  bool all_bpf = true;
  for (const auto& f : factors) {
    const auto pos = positivity(f.cls, s);
    const bool ok = f.kind == FactorKind::Ample ? pos.ample : pos.ample_and_bpf;
    require(ok, "FactorPositivityMismatch",
            "factor " + to_string(f.cls) + " is not " +
                (f.kind == FactorKind::Ample ? "ample" : "ample and base point free"));
    all_bpf = all_bpf && f.kind == FactorKind::AmpleAndBpf;
    total = total + f.cls;
  }
  const Int q = static_cast<Int>(factors.size());
  bool count_ok = false;
  Source src = Source::AmpleProduct;
  if (adjoint) {
    count_ok = q >= 2 * p + 2 - std::min(s.e(), p - 1);
    src = Source::AdjointProduct;
  } else if (all_bpf) {
    count_ok = q >= p + 1;
    src = Source::BpfProduct;
  } else {
    count_ok = q >= 2 * p + 2;
  }
  if (count_ok && in_sufficient_region(total, s, p)) return {Verdict::ProvenYes, src, p};
  return np_status(total, s, p);
}

// ---------------------------------------------------------------------------
// Constructive decomposition L = B_1 (x) ... (x) B_{k+1} (x) P

enum class DecompositionRoute { MixedFactors, AllTwoC0, StandardE };

inline std::string to_string(DecompositionRoute r) {
  switch (r) {
    case DecompositionRoute::MixedFactors: return "mixed_factors";
    case DecompositionRoute::AllTwoC0: return "all_two_c0";
    case DecompositionRoute::StandardE: break;
  }
  return "standard_e";
}

struct DecompositionWitness {
  std::vector<NumClass> factors;
  NumClass remainder;
  DecompositionRoute route = DecompositionRoute::StandardE;

  NumClass total() const {
    NumClass t = remainder;
    for (auto f : factors) t = t + f;
    return t;
  }
};

/// Writes L as k+1 ample, base-point-free factors of the standard shapes plus
/// an effective remainder. Returns nullopt outside the sufficient region.
/// For e = -1 the witness maximizes the number of (1,1) factors.
inline std::optional<DecompositionWitness> decompose_for_np(NumClass l, SurfaceInvariant s, Int p,
                                                            Int k) {
  require(p >= 1 && k >= 1 && k <= p, "InvalidArgument", "need p >= 1 and 1 <= k <= p");
  if (!in_sufficient_region(l, s, p)) return std::nullopt;
  const Int n = k + 1;
  if (s.e() >= 0) {
    const NumClass factor{1, s.e() + 2};
    const NumClass rem = l - n * factor;
    // remainder written as a'(C0 + e f) + b' f
    if (rem.a < 0 || rem.b - rem.a * s.e() < 0) return std::nullopt;
    return DecompositionWitness{std::vector<NumClass>(n, factor), rem,
                                DecompositionRoute::StandardE};
  }
  for (Int y = std::min(l.b, n); y >= 0; --y) {
    const Int x = n - y;
    const NumClass rem = l - NumClass{2 * x + y, y};
    if (rem.a < 0 || rem.b < 0) continue;
    DecompositionWitness w{{}, rem, DecompositionRoute::MixedFactors};
    w.factors.insert(w.factors.end(), x, NumClass{2, 0});
    w.factors.insert(w.factors.end(), y, NumClass{1, 1});
    return w;
  }
  const NumClass rem = l - NumClass{2 * n, 0};
  if (rem.a >= 0 && has_effective_representative(rem, s))
    return DecompositionWitness{std::vector<NumClass>(n, NumClass{2, 0}), rem,
                                DecompositionRoute::AllTwoC0};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Codimension of the embedding by |L|

/// h^0(L) - 1 - dim X, valid when the tables certify h^1 = h^2 = 0.
inline Int codimension(NumClass l, SurfaceInvariant s) {
  const auto t = cohomology_dims(l, s);
  require(t.h1.is_zero() && t.h2.is_zero() && t.h0.is_known(), "TableUnknown",
          "tables do not certify h1 = h2 = 0 for " + to_string(l));
  return euler_characteristic(l, s) - 3;
}

inline bool codim_at_least_p(NumClass l, SurfaceInvariant s, Int p) {
  return codimension(l, s) >= p;
}

}  // namespace esyz::oracle
