#pragma once

// Cohomology of M_{B_1} (x) ... (x) M_{B_k} (x) L on P^1 and on elliptic
// curves, where M_B is the kernel of the evaluation map H^0(B) (x) O -> B.

#include <boost/rational.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "esyz/error.hpp"
#include "esyz/field.hpp"
#include "esyz/linalg.hpp"
#include "esyz/models.hpp"

namespace esyz::bundles {

using oracle::Int;
using Rational = boost::rational<Int>;

// ---------------------------------------------------------------------------
// P^1

/// A split bundle O(d_1) + ... + O(d_r) on P^1.
struct SplitBundle {
  std::vector<Int> degrees;
  std::size_t rank() const noexcept { return degrees.size(); }
};

struct SplitCohomology {
  Int h0 = 0;
  Int h1 = 0;
  friend bool operator==(const SplitCohomology&, const SplitCohomology&) = default;
};

inline SplitCohomology split_cohomology(const SplitBundle& bundle) {
  SplitCohomology out;
  for (Int d : bundle.degrees) {
    out.h0 += std::max<Int>(0, d + 1);
    out.h1 += std::max<Int>(0, -d - 1);
  }
  return out;
}

namespace detail {

inline Int product(std::span<const Int> v) {
  Int r = 1;
  for (Int x : v) r *= x;
  return r;
}

inline void check_p1_degrees(std::span<const Int> b) {
  for (Int bi : b) require(bi >= 1, "DegreeTooSmall", "factor degrees on P^1 must be >= 1");
}

}  // namespace detail

/// M_B = O(-1)^{deg B} on P^1, so the tensor with k factors twisted by O(l)
/// splits as O(l - k)^{prod b_i}.
inline SplitBundle mb_tensor_splitting_p1(std::span<const Int> b, Int l) {
  detail::check_p1_degrees(b);
  return SplitBundle{std::vector<Int>(detail::product(b), l - static_cast<Int>(b.size()))};
}

/// Closed form h^1(M_{B_1} (x) ... (x) M_{B_{p+1}} (x) O(l)) = prod b_i * max(0, p - l).
inline Int mb_tensor_cohomology_p1(std::span<const Int> b, Int l) {
  detail::check_p1_degrees(b);
  const Int p = static_cast<Int>(b.size()) - 1;
  return detail::product(b) * std::max<Int>(0, p - l);
}

// ---------------------------------------------------------------------------
// Elliptic curves: numerics

struct EllipticMBundleSpec {
  std::vector<Int> factor_degrees;
  Int twist_degree = 0;
};

inline void check_elliptic_spec(const EllipticMBundleSpec& spec) {
  for (Int bi : spec.factor_degrees)
    require(bi >= 2, "DegreeTooSmall", "factor degrees on an elliptic curve must be >= 2");
}

/// rank = prod r_i with r_i = b_i - 1.
inline Int elliptic_tensor_rank(const EllipticMBundleSpec& spec) {
  check_elliptic_spec(spec);
  Int r = 1;
  for (Int bi : spec.factor_degrees) r *= bi - 1;
  return r;
}

/// deg = l prod r_i - sum_i b_i prod_{j != i} r_j.
inline Int elliptic_tensor_degree(const EllipticMBundleSpec& spec) {
  const Int rank = elliptic_tensor_rank(spec);
  Int deg = spec.twist_degree * rank;
  for (Int bi : spec.factor_degrees) deg -= bi * (rank / (bi - 1));
  return deg;
}

struct SlopeCriterion {
  bool applies = false;
  Rational slope;
  bool corollary_applies = false;
};

/// The tensor bundle is semistable of slope l - sum b_i/(b_i - 1); H^1 = 0
/// when that slope is positive.
inline SlopeCriterion slope_criterion_elliptic(const EllipticMBundleSpec& spec) {
  check_elliptic_spec(spec);
  Rational sum(0);
  for (Int bi : spec.factor_degrees) sum += Rational(bi, bi - 1);
  SlopeCriterion out;
  out.slope = Rational(spec.twist_degree) - sum;
  out.applies = sum < Rational(spec.twist_degree);
  const Int p = static_cast<Int>(spec.factor_degrees.size()) - 1;
  out.corollary_applies = spec.twist_degree >= p + 2;
  for (Int bi : spec.factor_degrees) out.corollary_applies = out.corollary_applies && bi >= p + 3;
  return out;
}

// ---------------------------------------------------------------------------
// Elliptic curves: section spaces

/// L(n * infinity + P) for an optional affine point P (an index into the
/// curve's point list). Bundles with the extra point are not isomorphic to
/// any L(d * infinity).
struct CurveLineBundle {
  int infinity_multiplicity = 0;
  std::optional<std::size_t> extra_point;

  int degree() const noexcept { return infinity_multiplicity + (extra_point ? 1 : 0); }
  std::size_t h0() const noexcept { return degree() == 0 ? 1 : static_cast<std::size_t>(degree()); }
};

inline CurveLineBundle bundle_at_infinity(int d) {
  require(d >= 0, "DegreeTooSmall", "bundle degree must be nonnegative");
  return {d, std::nullopt};
}

inline CurveLineBundle bundle_with_point(int d, std::size_t point_index) {
  require(d >= 1, "DegreeTooSmall", "L((d-1) inf + P) needs d >= 1");
  return {d - 1, point_index};
}

/// Values of the basis of H^0 at pt, or nullopt where some basis function has
/// a pole (pt = P or pt = -P).
inline std::optional<std::vector<Elem>> section_values(const models::EllipticCurveModel& curve,
                                                       const CurveLineBundle& bundle,
                                                       models::AffinePoint pt) {
  const auto& f = curve.field;
  std::vector<Elem> out;
  if (bundle.infinity_multiplicity == 0) {
    out.push_back(1);
  } else {
    for (auto mono : models::rr_basis(bundle.infinity_multiplicity))
      out.push_back(models::evaluate(f, mono, pt));
  }
  if (bundle.extra_point && bundle.infinity_multiplicity > 0) {
    require(*bundle.extra_point < curve.points.size(), "InvalidArgument", "point index out of range");
    const auto q = curve.points[*bundle.extra_point];
    if (pt.x == q.x) return std::nullopt;
    // (y + y_P)/(x - x_P): simple poles at P and infinity only.
    out.push_back(f.mul(f.add(pt.y, q.y), f.inv(f.sub(pt.x, q.x))));
  }
  return out;
}

namespace detail {

/// dim of { T in H^0(B_1) (x) ... (x) H^0(B_k) (x) H^0(L) : multiplying any
/// factor into L gives 0 }, which is H^0(M_{B_1} (x) ... (x) M_{B_k} (x) L).
/// `values[i]` is an h_i x M matrix of section values at M common sites,
/// with the twist last; each product bundle must have degree < M.
inline Int nested_kernel_dim(const PrimeField& field, const std::vector<linalg::Matrix>& values) {
  const std::size_t k = values.size() - 1;
  const auto& twist = values.back();
  const std::size_t sites = twist.cols();
  std::vector<std::size_t> dims;
  for (const auto& v : values) dims.push_back(v.rows());
  std::size_t rows = 1;
  for (auto d : dims) rows *= d;
  if (k == 0) return static_cast<Int>(rows);

  // Column blocks: block i is indexed by (alpha without alpha_i, site).
  std::vector<std::size_t> block_offset(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t others = 1;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) others *= dims[j];
    block_offset[i + 1] = block_offset[i] + others * sites;
  }
  linalg::Matrix m(rows, block_offset[k]);
  std::vector<std::size_t> idx(k + 1, 0);  // mixed-radix row index, twist fastest
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t other = 0;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) other = other * dims[j] + idx[j];
      const auto bi = values[i].row(idx[i]);
      const auto lv = twist.row(idx[k]);
      for (std::size_t s = 0; s < sites; ++s)
        m(r, block_offset[i] + other * sites + s) =
            field.mul(static_cast<Elem>(bi[s]), static_cast<Elem>(lv[s]));
    }
    for (std::size_t pos = k + 1; pos-- > 0;) {
      if (++idx[pos] < dims[pos]) break;
      idx[pos] = 0;
    }
  }
  return static_cast<Int>(rows) - static_cast<Int>(linalg::rank(field, m));
}

}  // namespace detail

struct EllipticH1Report {
  Int h0 = 0;
  Int chi = 0;
  Int h1 = 0;
};

/// h^1 of M_{B_1} (x) ... (x) M_{B_k} (x) L on the curve, computed as h^0 - chi
/// with h^0 from the nested kernel on evaluation vectors (genus 1: chi = deg).
inline EllipticH1Report mb_tensor_cohomology_elliptic(const models::EllipticCurveModel& curve,
                                                      const std::vector<CurveLineBundle>& factors,
                                                      const CurveLineBundle& twist) {
  require(factors.size() <= 3, "BudgetExceeded", "at most 3 factors in the explicit computation");
  EllipticMBundleSpec spec{{}, twist.degree()};
  int max_product_degree = twist.degree();
  for (const auto& b : factors) {
    spec.factor_degrees.push_back(b.degree());
    max_product_degree = std::max(max_product_degree, b.degree() + twist.degree());
  }
  check_elliptic_spec(spec);

  std::vector<CurveLineBundle> all(factors);
  all.push_back(twist);
  const std::size_t want = static_cast<std::size_t>(max_product_degree) + 4;
  std::vector<std::vector<std::vector<Elem>>> rows(all.size());
  std::size_t used = 0;
  for (const auto& pt : curve.points) {
    if (used == want) break;
    std::vector<std::vector<Elem>> vals;
    bool regular = true;
    for (const auto& b : all) {
      auto v = section_values(curve, b, pt);
      if (!v) {
        regular = false;
        break;
      }
      vals.push_back(std::move(*v));
    }
    if (!regular) continue;
    for (std::size_t i = 0; i < all.size(); ++i) rows[i].push_back(std::move(vals[i]));
    ++used;
  }
  require(used == want, "ModelInsufficientPoints",
          "curve has too few regular points for degree " + std::to_string(max_product_degree));

  std::vector<linalg::Matrix> values;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t h = all[i].h0();
    linalg::Matrix m(h, used);
    for (std::size_t s = 0; s < used; ++s)
      for (std::size_t j = 0; j < h; ++j) m(j, s) = rows[i][s][j];
    require(linalg::rank(curve.field, m) == h, "ModelInsufficientPoints",
            "section basis is not independent on the sample points");
    values.push_back(std::move(m));
  }

  EllipticH1Report out;
  out.h0 = detail::nested_kernel_dim(curve.field, values);
  out.chi = elliptic_tensor_degree(spec);
  out.h1 = out.h0 - out.chi;
  require(out.h1 >= 0, "InternalInconsistency", "negative h1 in elliptic computation");
  return out;
}

inline Int mb_tensor_h1_elliptic(const models::EllipticCurveModel& curve,
                                 const std::vector<CurveLineBundle>& factors,
                                 const CurveLineBundle& twist) {
  return mb_tensor_cohomology_elliptic(curve, factors, twist).h1;
}

/// Independent route on P^1: h^0 from the nested kernel on the monomial model
/// (sections of O(b) are polynomials of degree <= b in the affine coordinate),
/// then h^1 = h^0 - chi with chi = prod b_i * (l - k + 1).
inline Int mb_tensor_h1_p1_explicit(std::span<const Int> b, Int l,
                                    std::uint32_t prime = models::kDefaultPrime) {
  detail::check_p1_degrees(b);
  const Int k = static_cast<Int>(b.size());
  const Int chi = detail::product(b) * (l - k + 1);
  if (l < 0) return -chi;  // H^0(O(l)) = 0, hence no sections of the subbundle either
  PrimeField field(prime);
  Int max_deg = l;
  for (Int bi : b) max_deg = std::max(max_deg, bi + l);
  const std::size_t sites = static_cast<std::size_t>(max_deg) + 2;
  require(sites < prime, "PrimeTooSmall", "field too small for the monomial model");
  std::vector<linalg::Matrix> values;
  auto monomials = [&](Int deg) {
    linalg::Matrix m(static_cast<std::size_t>(deg) + 1, sites);
    for (std::size_t s = 0; s < sites; ++s) {
      Elem v = 1;
      for (Int j = 0; j <= deg; ++j) {
        m(j, s) = v;
        v = field.mul(v, static_cast<Elem>(s));
      }
    }
    return m;
  };
  for (Int bi : b) values.push_back(monomials(bi));
  values.push_back(monomials(l));
  return detail::nested_kernel_dim(field, values) - chi;
}

}  // namespace esyz::bundles
