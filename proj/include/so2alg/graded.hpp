#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

#include "so2alg/poly.hpp"
#include "so2alg/qmatrix.hpp"

namespace so2alg {

/// Finite-dimensional graded Q-vector space, stored as the sorted list of
/// basis-vector degrees (one entry per basis vector).
class GradedVS {
  public:
    GradedVS() = default;
    explicit GradedVS(std::vector<int> degs) : degs_(std::move(degs)) {
        std::sort(degs_.begin(), degs_.end());
    }

    static GradedVS line(int d) { return GradedVS({d}); }

    const std::vector<int>& degs() const { return degs_; }
    size_t dim() const { return degs_.size(); }
    bool is_zero() const { return degs_.empty(); }

    size_t dim_at(int d) const {
        return static_cast<size_t>(std::count(degs_.begin(), degs_.end(), d));
    }

    GradedVS shifted(int k) const {
        std::vector<int> d = degs_;
        for (int& x : d) x += k;
        return GradedVS(std::move(d));
    }

    GradedVS direct_sum(const GradedVS& o) const {
        std::vector<int> d = degs_;
        d.insert(d.end(), o.degs_.begin(), o.degs_.end());
        return GradedVS(std::move(d));
    }

    GradedVS tensor(const GradedVS& o) const {
        std::vector<int> d;
        for (int a : degs_)
            for (int b : o.degs_) d.push_back(a + b);
        return GradedVS(std::move(d));
    }

    bool operator==(const GradedVS& o) const { return degs_ == o.degs_; }
    bool operator!=(const GradedVS& o) const { return !(*this == o); }

  private:
    std::vector<int> degs_;
};

/// A graded matrix between free graded stacks (modules or vector spaces).
/// Entry (i,j) denotes q(i,j) * c^p with the power p forced by the grading:
///   p = (dst_degs[i] - src_degs[j] - deg) / 2,   deg c = -2.
/// Only the rational parts are stored; powers are always recomputed from the
/// degree lists, so rational row/column operations are automatically graded.
struct GradedMat {
    std::vector<int> dst_degs;  // row degrees
    std::vector<int> src_degs;  // column degrees
    int deg = 0;                // map degree: f(M_s) into N_{s+deg}
    QMat q;

    GradedMat() = default;
    GradedMat(std::vector<int> dst, std::vector<int> src, int d)
        : dst_degs(std::move(dst)), src_degs(std::move(src)), deg(d),
          q(dst_degs.size(), src_degs.size()) {}

    static GradedMat identity(const std::vector<int>& degs) {
        GradedMat m(degs, degs, 0);
        m.q = QMat::identity(degs.size());
        return m;
    }

    size_t rows() const { return dst_degs.size(); }
    size_t cols() const { return src_degs.size(); }

    /// Implied c-power at (i,j); nullopt when parity forbids a monomial there.
    std::optional<int> power(size_t i, size_t j) const {
        int num = dst_degs[i] - src_degs[j] - deg;
        if (num % 2 != 0) return std::nullopt;
        return num / 2;
    }

    /// Zeroes entries whose implied power is fractional or negative
    /// (polynomial mask) and returns whether anything nonzero was dropped.
    bool mask_polynomial() {
        bool dropped = false;
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j) {
                auto p = power(i, j);
                if ((!p || *p < 0) && !q(i, j).is_zero()) {
                    q(i, j) = Rat(0);
                    dropped = true;
                }
            }
        return dropped;
    }

    void check_polynomial() const {
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j) {
                if (q(i, j).is_zero()) continue;
                auto p = power(i, j);
                if (!p || *p < 0)
                    throw std::invalid_argument("GradedMat: entry violates polynomial grading");
            }
    }

    void check_laurent() const {
        for (size_t i = 0; i < rows(); ++i)
            for (size_t j = 0; j < cols(); ++j) {
                if (q(i, j).is_zero()) continue;
                if (!power(i, j))
                    throw std::invalid_argument("GradedMat: entry violates parity");
            }
    }

    GradedMat compose(const GradedMat& g) const {  // *this after g
        assert(src_degs == g.dst_degs);
        GradedMat r(dst_degs, g.src_degs, deg + g.deg);
        r.q = q * g.q;
        return r;
    }

    GradedMat operator+(const GradedMat& o) const {
        assert(dst_degs == o.dst_degs && src_degs == o.src_degs && deg == o.deg);
        GradedMat r = *this;
        r.q = q + o.q;
        return r;
    }

    GradedMat scaled(const Rat& s) const {
        GradedMat r = *this;
        r.q = q.scaled(s);
        return r;
    }

    GradedMat shifted(int k) const {  // suspend source and target together
        GradedMat r = *this;
        for (int& d : r.dst_degs) d += k;
        for (int& d : r.src_degs) d += k;
        return r;
    }

    static GradedMat hcat(const GradedMat& a, const GradedMat& b) {
        assert(a.dst_degs == b.dst_degs && a.deg == b.deg);
        GradedMat r;
        r.dst_degs = a.dst_degs;
        r.src_degs = a.src_degs;
        r.src_degs.insert(r.src_degs.end(), b.src_degs.begin(), b.src_degs.end());
        r.deg = a.deg;
        r.q = QMat::hcat(a.q, b.q);
        return r;
    }

    /// Laurent polynomial of entry (i,j).
    CPoly entry(size_t i, size_t j) const {
        if (q(i, j).is_zero()) return CPoly();
        auto p = power(i, j);
        if (!p) throw std::logic_error("GradedMat: nonzero entry at odd parity");
        return CPoly::monomial(q(i, j), *p);
    }
};

/// Graded Smith normal form of a polynomial matrix:  nf = l * a * r  with
/// l, r invertible graded degree-0 transformations.  nf is diagonal with
/// monomial entries of non-decreasing c-power.
struct SmithResult {
    GradedMat nf;
    GradedMat l, linv;  // l: original target coords -> nf target coords
    GradedMat r, rinv;  // r: nf source coords -> original source coords
    size_t pivot_count = 0;
};

inline SmithResult smith(const GradedMat& a0) {
    SmithResult s;
    s.nf = a0;
    s.l = GradedMat::identity(a0.dst_degs);
    s.linv = GradedMat::identity(a0.dst_degs);
    s.r = GradedMat::identity(a0.src_degs);
    s.rinv = GradedMat::identity(a0.src_degs);
    GradedMat& a = s.nf;
    const size_t m = a.rows(), n = a.cols();

    auto swap_rows = [&](size_t i1, size_t i2) {
        if (i1 == i2) return;
        for (size_t j = 0; j < n; ++j) std::swap(a.q(i1, j), a.q(i2, j));
        std::swap(a.dst_degs[i1], a.dst_degs[i2]);
        for (size_t j = 0; j < m; ++j) std::swap(s.l.q(i1, j), s.l.q(i2, j));
        std::swap(s.l.dst_degs[i1], s.l.dst_degs[i2]);
        for (size_t i = 0; i < m; ++i) std::swap(s.linv.q(i, i1), s.linv.q(i, i2));
        std::swap(s.linv.src_degs[i1], s.linv.src_degs[i2]);
    };
    auto swap_cols = [&](size_t j1, size_t j2) {
        if (j1 == j2) return;
        for (size_t i = 0; i < m; ++i) std::swap(a.q(i, j1), a.q(i, j2));
        std::swap(a.src_degs[j1], a.src_degs[j2]);
        for (size_t i = 0; i < n; ++i) std::swap(s.r.q(i, j1), s.r.q(i, j2));
        std::swap(s.r.src_degs[j1], s.r.src_degs[j2]);
        for (size_t j = 0; j < n; ++j) std::swap(s.rinv.q(j1, j), s.rinv.q(j2, j));
        std::swap(s.rinv.dst_degs[j1], s.rinv.dst_degs[j2]);
    };
    // row_i += f * row_i2  (legal when the implied multiplier power is >= 0)
    auto add_row = [&](size_t i, const Rat& f, size_t i2) {
        for (size_t j = 0; j < n; ++j) a.q(i, j) += f * a.q(i2, j);
        for (size_t j = 0; j < m; ++j) s.l.q(i, j) += f * s.l.q(i2, j);
        for (size_t k = 0; k < m; ++k) s.linv.q(k, i2) -= f * s.linv.q(k, i);
    };
    auto add_col = [&](size_t j, const Rat& f, size_t j2) {
        for (size_t i = 0; i < m; ++i) a.q(i, j) += f * a.q(i, j2);
        for (size_t i = 0; i < n; ++i) s.r.q(i, j) += f * s.r.q(i, j2);
        for (size_t k = 0; k < n; ++k) s.rinv.q(j2, k) -= f * s.rinv.q(j, k);
    };

    size_t t = 0;
    while (t < m && t < n) {
        // pivot: nonzero entry of minimal implied power in the submatrix
        bool found = false;
        size_t pi = t, pj = t;
        int pbest = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (a.q(i, j).is_zero()) continue;
                auto p = a.power(i, j);
                if (!p || *p < 0) throw std::logic_error("smith: non-polynomial entry");
                if (!found || *p < pbest) {
                    found = true;
                    pbest = *p;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        const Rat piv = a.q(t, t);
        for (size_t i = t + 1; i < m; ++i)
            if (!a.q(i, t).is_zero()) add_row(i, -(a.q(i, t) / piv), t);
        for (size_t j = t + 1; j < n; ++j)
            if (!a.q(t, j).is_zero()) add_col(j, -(a.q(t, j) / piv), t);
        ++t;
    }
    s.pivot_count = t;
    return s;
}

/// Column basis of the kernel of a polynomial graded matrix between free
/// stacks; each returned column is an element of the source.
inline GradedMat graded_kernel(const GradedMat& a) {
    SmithResult s = smith(a);
    std::vector<size_t> zero_cols;
    for (size_t j = 0; j < a.cols(); ++j)
        if (j >= s.pivot_count || s.nf.q(j, j).is_zero()) zero_cols.push_back(j);
    GradedMat k;
    k.dst_degs = a.src_degs;
    k.deg = 0;
    for (size_t j : zero_cols) k.src_degs.push_back(s.r.src_degs[j]);
    k.q = QMat(a.cols(), zero_cols.size());
    for (size_t idx = 0; idx < zero_cols.size(); ++idx)
        for (size_t i = 0; i < a.cols(); ++i) k.q(i, idx) = s.r.q(i, zero_cols[idx]);
    return k;
}

/// Solves a * x = b over Q[c] for graded column stacks, or nullopt when b is
/// not in the column span over the polynomial ring.
inline std::optional<GradedMat> graded_solve(const GradedMat& a, const GradedMat& b) {
    assert(a.dst_degs == b.dst_degs);
    SmithResult s = smith(a);
    // y = l * b, then nf * x' = y, x = r * x'
    GradedMat y = s.l.compose(b);
    GradedMat xp;
    xp.dst_degs = s.nf.src_degs;
    xp.src_degs = b.src_degs;
    xp.deg = b.deg;
    xp.q = QMat(a.cols(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        bool pivot = i < s.pivot_count && i < a.cols() && !s.nf.q(i, i).is_zero();
        for (size_t j = 0; j < b.cols(); ++j) {
            if (y.q(i, j).is_zero()) continue;
            if (!pivot) return std::nullopt;
            auto ppiv = s.nf.power(i, i);
            auto pent = y.power(i, j);
            if (!pent || !ppiv || *pent < *ppiv) return std::nullopt;
            xp.q(i, j) = y.q(i, j) / s.nf.q(i, i);
        }
    }
    GradedMat x = s.r.compose(xp);
    x.mask_polynomial();  // prune entries c-divided to nothing
    // verify (divisions may have produced negative implied powers)
    GradedMat check = a.compose(x);
    if (!(check.q == b.q)) return std::nullopt;
    return x;
}

}  // namespace so2alg
