#pragma once

// Koszul cohomology of the homogeneous coordinate ring R = sum_m R_m of an
// embedded model, and the graded Betti numbers beta_{i,i+q} = dim K_{i,q}.
//
// K_{p,q} is the middle homology of
//   wedge^{p+1} V (x) R_{q-1} -> wedge^p V (x) R_q -> wedge^{p-1} V (x) R_{q+1}
// with V = R_1 and the contraction differential
//   d(v_{i_0} ^ ... ^ v_{i_p} (x) s) = sum_t (-1)^t v_{I \ i_t} (x) v_{i_t} s.
// Wedge basis elements are increasing index tuples ranked in colex order;
// columns are (wedge rank) * dim R_q + (coordinate in R_q).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "esyz/error.hpp"
#include "esyz/field.hpp"
#include "esyz/linalg.hpp"
#include "esyz/models.hpp"

namespace esyz::koszul {

using oracle::Int;

struct EngineConfig {
  /// Largest differential (rows * cols) the engine will reduce.
  std::size_t budget = 50'000'000;
  std::size_t block_rows = 256;
  std::uint64_t seed = 1;
  /// Source elements checked for d o d = 0; differentials with at most this
  /// many rows are checked exhaustively.
  std::size_t dd_samples = 48;
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Colex rank of a strictly increasing tuple: sum_t C(i_t, t+1).
inline std::size_t colex_rank(std::span<const std::size_t> idx) {
  std::size_t r = 0;
  for (std::size_t t = 0; t < idx.size(); ++t) r += binomial(idx[t], t + 1);
  return r;
}

/// Advances an increasing tuple to its colex successor; false after the last.
inline bool next_colex(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t limit = t + 1 < k ? idx[t + 1] : n;
    if (idx[t] + 1 < limit) {
      ++idx[t];
      for (std::size_t u = 0; u < t; ++u) idx[u] = u;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Graded ring

class GradedRing {
 public:
  GradedRing(models::EmbeddedModel model, std::vector<linalg::RowEchelon> pieces)
      : model_(std::move(model)), pieces_(std::move(pieces)) {
    for (const auto& p : pieces_) hilbert_actual_.push_back(static_cast<Int>(p.rank()));
  }

  const models::EmbeddedModel& model() const noexcept { return model_; }
  const PrimeField& field() const noexcept { return model_.field; }
  int max_degree() const noexcept { return static_cast<int>(pieces_.size()) - 1; }
  const std::vector<Int>& hilbert_actual() const noexcept { return hilbert_actual_; }

  std::size_t dim(int m) const {
    if (m < 0) return 0;
    require(m <= max_degree(), "RingTooShallow",
            "ring built through degree " + std::to_string(max_degree()) + ", need " +
                std::to_string(m));
    return pieces_[m].rank();
  }
  const linalg::RowEchelon& piece(int m) const {
    require(m >= 0 && m <= max_degree(), "RingTooShallow", "degree out of range");
    return pieces_[m];
  }

 private:
  models::EmbeddedModel model_;
  std::vector<linalg::RowEchelon> pieces_;
  std::vector<Int> hilbert_actual_;
};

/// R_m is the row space of all products (basis of R_{m-1}) * (basis of R_1).
inline GradedRing build_ring(models::EmbeddedModel model, int m_max,
                             const EngineConfig& cfg = {}) {
  require(m_max >= 2, "InvalidArgument", "m_max must be >= 2");
  require(m_max <= model.max_degree(), "RingTooShallow",
          model.label + " certifies degrees only through " + std::to_string(model.max_degree()));
  const auto& f = model.field;
  const std::size_t n = model.num_sites();
  std::vector<linalg::RowEchelon> pieces;

  linalg::RowEchelon r0(f, n);
  std::vector<double> ones(n, 1.0);
  r0.absorb_row(ones);
  pieces.push_back(std::move(r0));

  linalg::RowEchelon r1(f, n);
  {
    std::vector<double> block(model.sections.data().begin(), model.sections.data().end());
    r1.absorb(block, model.sections.rows());
  }
  require(static_cast<Int>(r1.rank()) == model.expected(1), "FaithfulnessViolation",
          model.label + ": dim R_1 differs from h0(L)");
  pieces.push_back(std::move(r1));

  const std::size_t block_rows = std::max<std::size_t>(1, cfg.block_rows / 4);
  for (int m = 2; m <= m_max; ++m) {
    const auto& prev = pieces[m - 1];
    const auto& lin = pieces[1];
    const Int expected = model.expected(m);
    linalg::RowEchelon cur(f, n);
    const double p = f.prime(), inv_p = 1.0 / p;
    std::vector<double> block;
    block.reserve(block_rows * n);
    std::size_t nb = 0;
    auto flush = [&] {
      cur.absorb(block, nb, static_cast<std::size_t>(expected) + 1);
      block.clear();
      nb = 0;
    };
    for (std::size_t i = 0; i < prev.rank(); ++i) {
      for (std::size_t j = 0; j < lin.rank(); ++j) {
        const auto a = prev.row(i), b = lin.row(j);
        for (std::size_t s = 0; s < n; ++s) block.push_back(linalg::reduce(a[s] * b[s], p, inv_p));
        if (++nb == block_rows) flush();
        if (static_cast<Int>(cur.rank()) > expected) break;
      }
      if (static_cast<Int>(cur.rank()) > expected) break;
    }
    if (nb) flush();
    require(static_cast<Int>(cur.rank()) <= expected, "FaithfulnessViolation",
            model.label + ": dim R_" + std::to_string(m) + " exceeds h0(L^" + std::to_string(m) +
                ") = " + std::to_string(expected));
    pieces.push_back(std::move(cur));
  }
  return GradedRing(std::move(model), std::move(pieces));
}

/// True iff S^m H^0(L) -> H^0(L^m) is onto for 2 <= m <= max degree.
inline bool normal_generation_check(const GradedRing& ring) {
  for (int m = 2; m <= ring.max_degree(); ++m)
    if (ring.hilbert_actual()[m] != ring.model().expected(m)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Koszul differentials

/// The map wedge^k V (x) R_m -> wedge^{k-1} V (x) R_{m+1}, generated row by row.
class Differential {
 public:
  Differential(const GradedRing& ring, std::size_t wedge, int degree)
      : ring_(ring), field_(ring.field()), n_(ring.dim(1)), wedge_(wedge), degree_(degree) {
    src_ring_ = ring.dim(degree);
    dst_ring_ = wedge == 0 ? 0 : ring.dim(degree + 1);
    rows_ = binomial(n_, wedge) * src_ring_;
    cols_ = wedge == 0 ? 0 : binomial(n_, wedge - 1) * dst_ring_;
    if (rows_ == 0 || cols_ == 0) return;
    // Coordinates of v_i * s in R_{m+1} are the product's values at the
    // pivot sites of the reduced basis of R_{m+1}.
    const auto& target = ring.piece(degree + 1);
    const auto& piv = target.pivots();
    lin_at_piv_.assign(n_ * dst_ring_, 0.0);
    src_at_piv_.assign(src_ring_ * dst_ring_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto row = ring.piece(1).row(i);
      for (std::size_t k = 0; k < dst_ring_; ++k) lin_at_piv_[i * dst_ring_ + k] = row[piv[k]];
    }
    for (std::size_t s = 0; s < src_ring_; ++s) {
      const auto row = ring.piece(degree).row(s);
      for (std::size_t k = 0; k < dst_ring_; ++k) src_at_piv_[s * dst_ring_ + k] = row[piv[k]];
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t source_ring_dim() const noexcept { return src_ring_; }
  std::size_t target_ring_dim() const noexcept { return dst_ring_; }

  /// Writes the image of source basis element (wedge tuple idx, ring basis s)
  /// into out (length cols(), assumed zeroed).
  void row(std::span<const std::size_t> idx, std::size_t s, std::span<double> out) const {
    const double p = field_.prime(), inv_p = 1.0 / p;
    const double* sv = src_at_piv_.data() + s * dst_ring_;
    // rank of idx with entry t removed
    std::size_t prefix = 0;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      std::size_t rest = 0;
      for (std::size_t u = t + 1; u < idx.size(); ++u) rest += binomial(idx[u], u);
      const std::size_t col0 = (prefix + rest) * dst_ring_;
      const double* lv = lin_at_piv_.data() + idx[t] * dst_ring_;
      const bool negate = (t % 2) == 1;
      for (std::size_t k = 0; k < dst_ring_; ++k) {
        double v = linalg::reduce(lv[k] * sv[k], p, inv_p);
        if (negate && v != 0) v = p - v;
        out[col0 + k] = v;
      }
      prefix += binomial(idx[t], t + 1);
    }
  }

  /// Iterates over all source basis elements in row order, emitting dense
  /// rows in blocks. fn(block span, rows in block) returns false to stop.
  template <class Fn>
  void for_each_block(std::size_t block_rows, Fn&& fn) const {
    if (rows_ == 0 || cols_ == 0) return;
    std::vector<double> block(block_rows * cols_, 0.0);
    std::vector<std::size_t> idx(wedge_);
    for (std::size_t t = 0; t < wedge_; ++t) idx[t] = t;
    std::size_t nb = 0;
    do {
      for (std::size_t s = 0; s < src_ring_; ++s) {
        row(idx, s, std::span<double>(block.data() + nb * cols_, cols_));
        if (++nb == block_rows) {
          if (!fn(std::span<double>(block.data(), nb * cols_), nb)) return;
          std::fill(block.begin(), block.end(), 0.0);
          nb = 0;
        }
      }
    } while (next_colex(idx, n_));
    if (nb) fn(std::span<double>(block.data(), nb * cols_), nb);
  }

  /// Source tuple for a flat row index.
  std::vector<std::size_t> tuple_of(std::size_t wedge_rank) const {
    std::vector<std::size_t> idx(wedge_);
    std::size_t r = wedge_rank;
    for (std::size_t t = wedge_; t-- > 0;) {
      std::size_t c = t;
      while (binomial(c + 1, t + 1) <= r) ++c;
      idx[t] = c;
      r -= binomial(c, t + 1);
    }
    return idx;
  }

  std::vector<double> apply(std::span<const double> v) const {
    std::vector<double> out(cols_, 0.0), tmp(cols_);
    const auto& f = field_;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Elem c = static_cast<Elem>(v[r]);
      if (c == 0) continue;
      std::fill(tmp.begin(), tmp.end(), 0.0);
      const auto idx = tuple_of(r / src_ring_);
      row(idx, r % src_ring_, tmp);
      for (std::size_t j = 0; j < cols_; ++j)
        if (tmp[j] != 0) out[j] = f.add(static_cast<Elem>(out[j]), f.mul(c, static_cast<Elem>(tmp[j])));
    }
    return out;
  }

  std::size_t rank(const EngineConfig& cfg, std::size_t rank_limit) const {
    rank_limit = std::min({rank_limit, rows_, cols_});
    if (rank_limit == 0) return 0;
    linalg::RowEchelon ech(field_, cols_);
    for_each_block(cfg.block_rows, [&](std::span<double> block, std::size_t nb) {
      ech.absorb(block, nb, rank_limit);
      return ech.rank() < rank_limit;
    });
    return ech.rank();
  }

 private:
  const GradedRing& ring_;
  PrimeField field_;
  std::size_t n_, wedge_;
  int degree_;
  std::size_t src_ring_ = 0, dst_ring_ = 0, rows_ = 0, cols_ = 0;
  std::vector<double> lin_at_piv_, src_at_piv_;
};

struct KoszulGroupDims {
  int p_index = 0;
  int q_index = 0;
  Int kernel_dim = 0;
  Int image_dim = 0;
  Int homology_dim = 0;
};

/// Verifies d o d = 0 from wedge^{k} V (x) R_m through two steps, on all
/// source elements for small maps and a seeded sample otherwise.
inline bool check_dd_zero(const GradedRing& ring, std::size_t wedge, int degree,
                          const EngineConfig& cfg) {
  if (wedge < 2) return true;
  const Differential first(ring, wedge, degree);
  const Differential second(ring, wedge - 1, degree + 1);
  if (first.rows() == 0 || first.cols() == 0 || second.cols() == 0) return true;
  std::vector<std::size_t> picks;
  if (first.rows() <= cfg.dd_samples) {
    for (std::size_t r = 0; r < first.rows(); ++r) picks.push_back(r);
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> dist(0, first.rows() - 1);
    for (std::size_t i = 0; i < cfg.dd_samples; ++i) picks.push_back(dist(rng));
  }
  std::vector<double> mid(first.cols());
  for (std::size_t r : picks) {
    std::fill(mid.begin(), mid.end(), 0.0);
    first.row(first.tuple_of(r / first.source_ring_dim()), r % first.source_ring_dim(), mid);
    const auto out = second.apply(mid);
    if (std::any_of(out.begin(), out.end(), [](double x) { return x != 0; })) return false;
  }
  return true;
}

/// Dimensions of K_{p,q}.
inline KoszulGroupDims koszul_group(const GradedRing& ring, int p, int q,
                                    const EngineConfig& cfg = {}) {
  require(p >= 0 && q >= 0, "InvalidArgument", "p and q must be nonnegative");
  require(q + 1 <= ring.max_degree(), "RingTooShallow",
          "K_{" + std::to_string(p) + "," + std::to_string(q) + "} needs R through degree " +
              std::to_string(q + 1));
  const std::size_t n = ring.dim(1);
  const std::size_t mid = binomial(n, p) * ring.dim(q);

  const Differential out(ring, p, q);
  const bool has_in = q >= 1;
  const std::size_t in_rows = has_in ? binomial(n, p + 1) * ring.dim(q - 1) : 0;
  auto over = [&](std::size_t rows, std::size_t cols) {
    return cols != 0 && rows > cfg.budget / cols;
  };
  require(!over(out.rows(), out.cols()) && !over(in_rows, mid), "BudgetExceeded",
          "K_{" + std::to_string(p) + "," + std::to_string(q) + "}: differential of size " +
              std::to_string(std::max(out.rows() * out.cols(), in_rows * mid)) +
              " exceeds budget " + std::to_string(cfg.budget));

  KoszulGroupDims g{p, q, 0, 0, 0};
  const std::size_t rank_out = out.rank(cfg, mid);
  g.kernel_dim = static_cast<Int>(mid - rank_out);
  if (has_in && g.kernel_dim > 0) {
    const Differential in(ring, p + 1, q - 1);
    require(check_dd_zero(ring, p + 1, q - 1, cfg), "InternalInconsistency",
            "d o d != 0 at K_{" + std::to_string(p) + "," + std::to_string(q) + "}");
    g.image_dim = static_cast<Int>(in.rank(cfg, static_cast<std::size_t>(g.kernel_dim)));
  }
  g.homology_dim = g.kernel_dim - g.image_dim;
  return g;
}

// ---------------------------------------------------------------------------
// Betti tables

struct BettiTable {
  int p_max = 0;
  int q_max = 0;
  std::vector<std::vector<Int>> by_strand;  // [i][q] = beta_{i, i+q}

  Int beta(int i, int j) const {
    const int q = j - i;
    if (i < 0 || i > p_max || q < 0 || q > q_max) return 0;
    return by_strand[i][q];
  }
  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

inline BettiTable betti_table(const GradedRing& ring, int p_max, int q_max,
                              const EngineConfig& cfg = {}) {
  require(p_max >= 0 && q_max >= 0, "InvalidArgument", "p_max and q_max must be nonnegative");
  BettiTable t{p_max, q_max, std::vector<std::vector<Int>>(p_max + 1, std::vector<Int>(q_max + 1, 0))};
  for (int i = 0; i <= p_max; ++i)
    for (int q = 0; q <= q_max; ++q) t.by_strand[i][q] = koszul_group(ring, i, q, cfg).homology_dim;
  return t;
}

/// Rows are homological degree i, columns are j - i.
inline void write_betti_csv(std::ostream& os, const BettiTable& t) {
  os << "i";
  for (int q = 0; q <= t.q_max; ++q) os << ',' << q;
  os << '\n';
  for (int i = 0; i <= t.p_max; ++i) {
    os << i;
    for (int q = 0; q <= t.q_max; ++q) os << ',' << t.by_strand[i][q];
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// Property N_p

struct BettiViolation {
  int i = 0;
  int j = 0;
  Int dim = 0;
};

struct SkippedGroup {
  int p_index = 0;
  int q_index = 0;
  std::string reason;
};

struct NpDecision {
  int p = 0;
  int q_max = 0;
  bool holds = false;
  std::vector<BettiViolation> violations;
  /// Every K_{i,q} that was computed, in (q, i) order.
  std::vector<KoszulGroupDims> groups;
  /// Groups not computed (only with truncation allowed).
  std::vector<SkippedGroup> skipped;
  /// Largest q such that every K_{i,q'} with 1 <= i <= p, 2 <= q' <= q was computed.
  int q_checked = 1;
  bool complete() const noexcept { return skipped.empty(); }
  std::string truncation_note() const {
    std::string s = q_checked >= 2 ? "strands 2 <= q <= " + std::to_string(q_checked) +
                                         " checked for 1 <= i <= " + std::to_string(p)
                                   : std::string("no strand checked completely");
    s += "; q > " + std::to_string(q_max) + " not computed";
    if (!skipped.empty()) s += "; " + std::to_string(skipped.size()) + " group(s) skipped over budget";
    return s;
  }
};

/// N_p holds iff beta_{i,j} = 0 for 1 <= i <= p and j >= i + 2, inspected for
/// j - i <= q_max. Over-budget groups raise BudgetExceeded unless
/// allow_truncation, in which case they are listed in `skipped`.
inline NpDecision decide_np(const GradedRing& ring, int p, int q_max, const EngineConfig& cfg = {},
                            bool allow_truncation = false) {
  require(p >= 1, "InvalidArgument", "p must be positive");
  require(q_max >= 2, "InvalidArgument", "q_max must be >= 2");
  require(normal_generation_check(ring), "NotNormallyGenerated",
          ring.model().label + " is not projectively normal through degree " +
              std::to_string(ring.max_degree()));
  NpDecision d;
  d.p = p;
  d.q_max = q_max;
  bool prefix_ok = true;
  for (int q = 2; q <= q_max; ++q) {
    bool strand_ok = true;
    for (int i = 1; i <= p; ++i) {
      try {
        const auto g = koszul_group(ring, i, q, cfg);
        d.groups.push_back(g);
        if (g.homology_dim != 0) d.violations.push_back({i, i + q, g.homology_dim});
      } catch (const Error& err) {
        if (!allow_truncation || err.name() != "BudgetExceeded") throw;
        d.skipped.push_back({i, q, err.what()});
        strand_ok = false;
      }
    }
    prefix_ok = prefix_ok && strand_ok;
    if (prefix_ok) d.q_checked = q;
  }
  d.holds = d.violations.empty();
  return d;
}

/// Writes the differential wedge^k V (x) R_m -> wedge^{k-1} V (x) R_{m+1} as
/// "row col value" triplets (0-based, nonzero entries only).
inline void dump_differential(std::ostream& os, const GradedRing& ring, std::size_t wedge, int degree,
                              const EngineConfig& cfg = {}) {
  const Differential d(ring, wedge, degree);
  os << "# rows " << d.rows() << " cols " << d.cols() << " prime " << ring.field().prime() << '\n';
  std::size_t base = 0;
  d.for_each_block(cfg.block_rows, [&](std::span<double> block, std::size_t nb) {
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) {
        const double v = block[r * d.cols() + c];
        if (v != 0) os << base + r << ' ' << c << ' ' << static_cast<Elem>(v) << '\n';
      }
    base += nb;
    return true;
  });
}

}  // namespace esyz::koszul
