#pragma once

// Point-evaluation models over F_p of projectively embedded varieties:
// rational normal curves, elliptic normal curves and decomposable elliptic
// ruled surfaces. A model is a finite set of sample sites together with a
// basis of H^0(L) given by its values at those sites; products of sections
// are pointwise products of value vectors.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "esyz/error.hpp"
#include "esyz/field.hpp"
#include "esyz/linalg.hpp"
#include "esyz/oracle.hpp"

namespace esyz::models {

using oracle::Int;
using oracle::NumClass;

inline constexpr std::uint32_t kDefaultPrime = 10007;
inline constexpr int kDefaultQMax = 4;

struct AffinePoint {
  Elem x = 0;
  Elem y = 0;
  friend auto operator<=>(const AffinePoint&, const AffinePoint&) = default;
};

/// y^2 = x^3 + A x + B over F_p, with its affine points sorted by (x, y).
/// The point at infinity is the implicit base point.
struct EllipticCurveModel {
  PrimeField field{kDefaultPrime};
  Elem a = 0;
  Elem b = 0;
  std::vector<AffinePoint> points;

  bool contains(AffinePoint pt) const {
    const auto& f = field;
    const Elem rhs = f.add(f.add(f.mul(f.mul(pt.x, pt.x), pt.x), f.mul(a, pt.x)), b);
    return f.mul(pt.y, pt.y) == rhs;
  }
  /// Number of points including the one at infinity.
  std::size_t order() const noexcept { return points.size() + 1; }
};

inline EllipticCurveModel elliptic_points(Int a, Int b, std::uint32_t prime) {
  PrimeField f(prime);
  const Elem ea = f.from_int(a), eb = f.from_int(b);
  const Elem disc = f.add(f.mul(4, f.pow(ea, 3)), f.mul(27, f.mul(eb, eb)));
  require(disc != 0, "SingularCurve",
          "4A^3 + 27B^2 vanishes mod " + std::to_string(prime));
  EllipticCurveModel c{f, ea, eb, {}};
  for (Elem x = 0; x < prime; ++x) {
    const Elem rhs = f.add(f.add(f.mul(f.mul(x, x), x), f.mul(ea, x)), eb);
    const auto r = f.sqrt(rhs);
    if (!r) continue;
    if (*r == 0) {
      c.points.push_back({x, 0});
    } else {
      const Elem y1 = std::min(*r, f.neg(*r)), y2 = std::max(*r, f.neg(*r));
      c.points.push_back({x, y1});
      c.points.push_back({x, y2});
    }
  }
  return c;
}

/// x^i y^k with k in {0, 1}; pole order at infinity is 2i + 3k.
struct CurveMonomial {
  int x_power = 0;
  int y_power = 0;
  int pole_order() const noexcept { return 2 * x_power + 3 * y_power; }
  friend bool operator==(const CurveMonomial&, const CurveMonomial&) = default;
};

/// Basis of L(d * infinity) ordered by pole order 0, 2, 3, ..., d.
inline std::vector<CurveMonomial> rr_basis(int d) {
  require(d >= 1, "DegreeTooSmall", "rr_basis needs d >= 1");
  std::vector<CurveMonomial> out;
  for (int order = 0; order <= d; ++order) {
    if (order == 1) continue;
    if (order % 2 == 0)
      out.push_back({order / 2, 0});
    else
      out.push_back({(order - 3) / 2, 1});
  }
  return out;
}

inline Elem evaluate(const PrimeField& f, CurveMonomial m, AffinePoint pt) {
  return f.mul(f.pow(pt.x, m.x_power), f.pow(pt.y, m.y_power));
}

/// Value-vector presentation of an embedded variety.
struct EmbeddedModel {
  PrimeField field{kDefaultPrime};
  std::string label;
  /// Coordinates of each sample site: (u) on P^1, (x, y) on a curve,
  /// (x, y, u) on a ruled surface.
  std::vector<std::vector<Elem>> sample_points;
  linalg::Matrix sections;  // h^0(L) rows, one column per sample site
  /// expected_hilbert[m] = h^0(L^m) for m = 0 .. q_max + 1.
  std::vector<Int> expected_hilbert;
  int q_max = kDefaultQMax;

  std::size_t num_sections() const noexcept { return sections.rows(); }
  std::size_t num_sites() const noexcept { return sample_points.size(); }
  int max_degree() const noexcept { return q_max + 1; }
  Int expected(int m) const {
    require(m >= 0 && m < static_cast<int>(expected_hilbert.size()), "RingTooShallow",
            "model " + label + " certifies degrees up to " +
                std::to_string(expected_hilbert.size() - 1));
    return expected_hilbert[m];
  }
};

namespace detail {

inline void certify(const EmbeddedModel& m) {
  require(static_cast<Int>(m.sections.rows()) == m.expected(1), "ModelRankFailure",
          m.label + ": section count differs from h0(L)");
  require(linalg::rank(m.field, m.sections) == m.sections.rows(), "ModelRankFailure",
          m.label + ": sections are not independent on the sample sites");
  require(static_cast<Int>(m.num_sites()) >= 2 * m.expected(m.max_degree()), "InsufficientPoints",
          m.label + ": too few sample sites for the faithfulness margin");
}

}  // namespace detail

/// Degree-d rational normal curve: sections 1, u, ..., u^d on all of F_p.
inline EmbeddedModel rnc_model(int d, std::uint32_t prime = kDefaultPrime,
                               int q_max = kDefaultQMax) {
  require(d >= 1, "DegreeTooSmall", "rational normal curve needs d >= 1");
  require(q_max >= 1, "InvalidArgument", "q_max must be positive");
  PrimeField f(prime);
  const Int top = static_cast<Int>(d) * (q_max + 1) + 1;
  require(static_cast<Int>(prime) > 2 * (static_cast<Int>(d) * q_max + 1) &&
              static_cast<Int>(prime) >= 2 * top,
          "PrimeTooSmall",
          "prime " + std::to_string(prime) + " too small for d=" + std::to_string(d) +
              ", q_max=" + std::to_string(q_max));
  EmbeddedModel m;
  m.field = f;
  m.q_max = q_max;
  m.label = "rnc(d=" + std::to_string(d) + ",p=" + std::to_string(prime) + ")";
  for (Int k = 0; k <= q_max + 1; ++k) m.expected_hilbert.push_back(k * d + 1);
  m.sections = linalg::Matrix(d + 1, prime);
  for (Elem u = 0; u < prime; ++u) {
    m.sample_points.push_back({u});
    Elem v = 1;
    for (int j = 0; j <= d; ++j) {
      m.sections(j, u) = v;
      v = f.mul(v, u);
    }
  }
  detail::certify(m);
  return m;
}

/// Degree-d elliptic normal curve embedded by L(d * infinity), d >= 3.
inline EmbeddedModel elliptic_normal_model(const EllipticCurveModel& curve, int d,
                                           int q_max = kDefaultQMax) {
  require(d >= 3, "DegreeTooSmall", "elliptic normal curves need d >= 3 (degree 2 is not very ample)");
  require(q_max >= 1, "InvalidArgument", "q_max must be positive");
  require(curve.points.size() >= static_cast<std::size_t>(2 * d * (q_max + 1)),
          "InsufficientPoints",
          "curve has " + std::to_string(curve.points.size()) + " affine points, need " +
              std::to_string(2 * d * (q_max + 1)));
  EmbeddedModel m;
  m.field = curve.field;
  m.q_max = q_max;
  m.label = "elliptic(d=" + std::to_string(d) + ",p=" + std::to_string(curve.field.prime()) + ")";
  m.expected_hilbert.push_back(1);
  for (Int k = 1; k <= q_max + 1; ++k) m.expected_hilbert.push_back(k * d);
  const auto basis = rr_basis(d);
  m.sections = linalg::Matrix(basis.size(), curve.points.size());
  for (std::size_t s = 0; s < curve.points.size(); ++s) {
    const auto& pt = curve.points[s];
    m.sample_points.push_back({pt.x, pt.y});
    for (std::size_t j = 0; j < basis.size(); ++j) m.sections(j, s) = evaluate(curve.field, basis[j], pt);
  }
  detail::certify(m);
  return m;
}

/// Decomposable ruled surface P(O + O(-e inf)) over the curve, embedded by a
/// bundle in the class L = a C0 + b f. Sections are f_j u^j with
/// f_j in L((b - j e) inf), evaluated on a grid of (curve point, fiber
/// coordinate u) sites.
inline EmbeddedModel ruled_surface_model(const EllipticCurveModel& curve, Int e, NumClass l,
                                         int q_max = kDefaultQMax) {
  require(e >= 0, "UnsupportedSurface", "explicit ruled surface models need e >= 0");
  require(q_max >= 1, "InvalidArgument", "q_max must be positive");
  const oracle::SurfaceInvariant s(e);
  for (Int k = 1; k <= q_max + 1; ++k) {
    const auto t = oracle::cohomology_dims(k * l, s);
    require(t.h0.is_known() && t.h1.is_zero() && t.h2.is_zero(), "OracleObstruction",
            "tables do not certify h1 = h2 = 0 for " + oracle::to_string(k * l));
  }
  require(l.a >= 0 && l.b - l.a * e >= 1, "OracleObstruction",
          "split realization needs a >= 0 and b - a e >= 1");

  EmbeddedModel m;
  m.field = curve.field;
  m.q_max = q_max;
  m.label = "ruled(e=" + std::to_string(e) + ",L=" + oracle::to_string(l) +
            ",p=" + std::to_string(curve.field.prime()) + ")";
  m.expected_hilbert.push_back(1);
  for (Int k = 1; k <= q_max + 1; ++k) m.expected_hilbert.push_back(oracle::euler_characteristic(k * l, s));

  // A section of L^m is sum_j f_j u^j with deg_u <= m a and each f_j of pole
  // order <= m b; it vanishes on the grid only if it is zero once there are
  // more than m a fiber values and more than m b curve points.
  const Int top = q_max + 1;
  const Int need = 2 * m.expected(m.max_degree());
  Int nu = top * l.a + 1;
  Int np = std::max<Int>(top * l.b + 1, (need + nu - 1) / nu);
  require(nu < static_cast<Int>(curve.field.prime()) &&
              np <= static_cast<Int>(curve.points.size()),
          "InsufficientPoints", m.label + ": field or curve too small for the sample grid");

  struct Term {
    CurveMonomial f;
    int j;
  };
  std::vector<Term> terms;
  for (int j = 0; j <= l.a; ++j)
    for (auto f : rr_basis(static_cast<int>(l.b - j * e))) terms.push_back({f, j});

  const auto& fld = curve.field;
  m.sections = linalg::Matrix(terms.size(), static_cast<std::size_t>(nu * np));
  std::size_t site = 0;
  for (Int pi = 0; pi < np; ++pi) {
    const auto& pt = curve.points[pi];
    for (Elem u = 0; u < static_cast<Elem>(nu); ++u, ++site) {
      m.sample_points.push_back({pt.x, pt.y, u});
      for (std::size_t t = 0; t < terms.size(); ++t)
        m.sections(t, site) = fld.mul(evaluate(fld, terms[t].f, pt), fld.pow(u, terms[t].j));
    }
  }
  detail::certify(m);
  return m;
}

}  // namespace esyz::models
