#pragma once

#include <map>
#include <set>
#include <vector>

#include "so2alg/errors.hpp"
#include "so2alg/pid_modules.hpp"

namespace so2alg {

// ---------------------------------------------------------------------------
// graded vector space maps (entries sit at implied power 0)

struct VSKernel {
    GradedVS space;
    GradedMat incl;  // space -> source
};

struct VSCoker {
    GradedVS space;
    GradedMat proj;  // target -> space
};

inline void vs_check(const GradedMat& f) {
    for (size_t i = 0; i < f.rows(); ++i)
        for (size_t j = 0; j < f.cols(); ++j)
            if (!f.q(i, j).is_zero() && f.power(i, j) != std::optional<int>(0))
                throw std::invalid_argument("vs map: entry off the diagonal degree");
}

inline VSKernel vs_kernel(const GradedMat& f) {
    vs_check(f);
    std::vector<int> kdegs;
    std::vector<std::vector<Rat>> cols;  // columns in source coordinates
    std::set<int> src_set(f.src_degs.begin(), f.src_degs.end());
    for (int a : src_set) {
        std::vector<size_t> sc, dr;
        for (size_t j = 0; j < f.cols(); ++j)
            if (f.src_degs[j] == a) sc.push_back(j);
        for (size_t i = 0; i < f.rows(); ++i)
            if (f.dst_degs[i] == a + f.deg) dr.push_back(i);
        QMat block(dr.size(), sc.size());
        for (size_t i = 0; i < dr.size(); ++i)
            for (size_t j = 0; j < sc.size(); ++j) block(i, j) = f.q(dr[i], sc[j]);
        QMat k = block.kernel();
        for (size_t v = 0; v < k.cols(); ++v) {
            kdegs.push_back(a);
            std::vector<Rat> col(f.cols());
            for (size_t j = 0; j < sc.size(); ++j) col[sc[j]] = k(j, v);
            cols.push_back(std::move(col));
        }
    }
    VSKernel out;
    out.space = GradedVS(kdegs);
    out.incl = GradedMat(f.src_degs, kdegs, 0);
    for (size_t v = 0; v < cols.size(); ++v)
        for (size_t j = 0; j < f.cols(); ++j) out.incl.q(j, v) = cols[v][j];
    return out;
}

inline VSCoker vs_coker(const GradedMat& f) {
    vs_check(f);
    std::vector<int> cdegs;
    std::vector<std::vector<Rat>> rows;  // projection rows in target coordinates
    std::set<int> dst_set(f.dst_degs.begin(), f.dst_degs.end());
    for (int b : dst_set) {
        std::vector<size_t> dr, sc;
        for (size_t i = 0; i < f.rows(); ++i)
            if (f.dst_degs[i] == b) dr.push_back(i);
        for (size_t j = 0; j < f.cols(); ++j)
            if (f.src_degs[j] == b - f.deg) sc.push_back(j);
        QMat block(dr.size(), sc.size());
        for (size_t i = 0; i < dr.size(); ++i)
            for (size_t j = 0; j < sc.size(); ++j) block(i, j) = f.q(dr[i], sc[j]);
        // greedily extend the image to a basis with standard vectors
        QMat span = block;
        std::vector<size_t> picked;
        size_t r = span.rank();
        for (size_t i = 0; i < dr.size() && r + picked.size() < dr.size(); ++i) {
            QMat test(dr.size(), span.cols() + picked.size() + 1);
            for (size_t a = 0; a < dr.size(); ++a)
                for (size_t c = 0; c < span.cols(); ++c) test(a, c) = span(a, c);
            for (size_t p = 0; p < picked.size(); ++p) test(picked[p], span.cols() + p) = Rat(1);
            test(i, span.cols() + picked.size()) = Rat(1);
            if (test.rank() == r + picked.size() + 1) picked.push_back(i);
        }
        // solve [im | picked] * (y; z) = e_i  to read off the projection
        QMat basis(dr.size(), r + picked.size());
        {
            QMat m = block;
            std::vector<size_t> keep;
            QMat probe(dr.size(), 0);
            size_t cur = 0;
            for (size_t c = 0; c < block.cols(); ++c) {
                QMat test(dr.size(), keep.size() + 1);
                for (size_t kk = 0; kk < keep.size(); ++kk)
                    for (size_t a = 0; a < dr.size(); ++a) test(a, kk) = block(a, keep[kk]);
                for (size_t a = 0; a < dr.size(); ++a) test(a, keep.size()) = block(a, c);
                if (test.rank() > keep.size()) keep.push_back(c);
            }
            for (size_t kk = 0; kk < keep.size(); ++kk)
                for (size_t a = 0; a < dr.size(); ++a) basis(a, kk) = block(a, keep[kk]);
            for (size_t p = 0; p < picked.size(); ++p) basis(picked[p], r + p) = Rat(1);
        }
        std::optional<QMat> inv = basis.inverse();
        if (!inv) throw std::logic_error("vs_coker: basis completion failed");
        for (size_t p = 0; p < picked.size(); ++p) {
            cdegs.push_back(b);
            std::vector<Rat> row(f.rows());
            for (size_t i = 0; i < dr.size(); ++i) row[dr[i]] = (*inv)(r + p, i);
            rows.push_back(std::move(row));
        }
    }
    VSCoker out;
    out.space = GradedVS(cdegs);
    out.proj = GradedMat(cdegs, f.dst_degs, 0);
    for (size_t v = 0; v < rows.size(); ++v)
        for (size_t i = 0; i < f.rows(); ++i) out.proj.q(v, i) = rows[v][i];
    return out;
}

// ---------------------------------------------------------------------------
// objects

/// One exceptional component: a module over Q[c] together with its structure
/// map into Laurent tensor the vertex (rows: vertex basis, cols: generators).
struct ExcComp {
    CompMod module;
    GradedMat beta;

    bool operator==(const ExcComp& o) const {
        return module == o.module && beta.q == o.beta.q && beta.dst_degs == o.beta.dst_degs &&
               beta.src_degs == o.beta.src_degs;
    }
};

/// The uniform component applied at every index outside the exceptional set.
/// Tail modules are free lattices; torsion lives at exceptional indices only.
struct TailComp {
    GradedVS lattice;
    GradedMat beta;

    bool operator==(const TailComp& o) const {
        return lattice == o.lattice && beta.q == o.beta.q;
    }
};

/// An object of the enlarged category: triples (N, U, beta) with no
/// requirement that beta become an isomorphism after localization.
struct EffObjHat {
    GradedVS vertex;
    std::map<int, ExcComp> exc;
    TailComp tail;

    ExcComp component(int n) const {
        auto it = exc.find(n);
        if (it != exc.end()) return it->second;
        ExcComp c;
        c.module = CompMod::free_module(tail.lattice.degs());
        c.beta = tail.beta;
        return c;
    }

    std::set<int> exc_indices() const {
        std::set<int> s;
        for (auto& [n, c] : exc) s.insert(n);
        return s;
    }

    bool is_zero() const {
        if (!vertex.is_zero() || !tail.lattice.is_zero()) return false;
        for (auto& [n, c] : exc)
            if (!c.module.is_zero()) return false;
        return true;
    }

    void shape_check() const {
        auto chk = [&](const CompMod& m, const GradedMat& b) {
            if (b.dst_degs != vertex.degs() || b.src_degs != m.gen_degrees() || b.deg != 0)
                throw std::invalid_argument("EffObjHat: beta shape mismatch");
            b.check_laurent();
            for (size_t j = m.free_count(); j < m.gen_count(); ++j)
                for (size_t i = 0; i < b.rows(); ++i)
                    if (!b.q(i, j).is_zero())
                        throw std::invalid_argument("EffObjHat: beta nonzero on torsion");
        };
        for (auto& [n, c] : exc) {
            if (n < 1) throw std::invalid_argument("EffObjHat: component index must be >= 1");
            chk(c.module, c.beta);
        }
        chk(CompMod::free_module(tail.lattice.degs()), tail.beta);
    }

    EffObjHat shifted(int k) const {
        EffObjHat r;
        r.vertex = vertex.shifted(k);
        for (auto& [n, c] : exc) r.exc[n] = ExcComp{c.module.shifted(k), c.beta.shifted(k)};
        r.tail = TailComp{tail.lattice.shifted(k), tail.beta.shifted(k)};
        return r;
    }

    /// Drops exceptional entries indistinguishable from the tail.
    void prune() {
        ExcComp t;
        t.module = CompMod::free_module(tail.lattice.degs());
        t.beta = tail.beta;
        for (auto it = exc.begin(); it != exc.end();)
            it = (it->second == t) ? exc.erase(it) : std::next(it);
    }

    bool operator==(const EffObjHat& o) const {
        return vertex == o.vertex && exc == o.exc && tail == o.tail;
    }
};

namespace detail {

/// Column Hermite form over Q[c] of the free block of beta; normalizes the
/// lattice basis so that structurally equal objects compare equal. Torsion
/// columns are zero and stay in place.
inline void hermite_normalize(ExcComp& c) {
    size_t nf = c.module.free_count();
    if (nf == 0) return;
    QMat& q = c.beta.q;
    std::vector<int> coldeg(c.beta.src_degs.begin(), c.beta.src_degs.begin() + nf);
    auto power = [&](size_t i, size_t j) -> std::optional<int> {
        int num = c.beta.dst_degs[i] - coldeg[j];
        if (num % 2 != 0) return std::nullopt;
        return num / 2;
    };
    std::vector<size_t> order;  // final column order
    std::vector<bool> used(nf, false);
    std::vector<std::pair<size_t, size_t>> pivots;  // (row, col)
    for (size_t r = 0; r < c.beta.rows(); ++r) {
        bool found = false;
        size_t pj = 0;
        int pbest = 0;
        for (size_t j = 0; j < nf; ++j) {
            if (used[j] || q(r, j).is_zero()) continue;
            auto p = power(r, j);
            if (!p) throw std::logic_error("hermite: parity violation");
            if (!found || *p < pbest) {
                found = true;
                pbest = *p;
                pj = j;
            }
        }
        if (!found) continue;
        // clear row r in all other unused columns (legal: their power >= pbest)
        for (size_t j = 0; j < nf; ++j) {
            if (j == pj || used[j] || q(r, j).is_zero()) continue;
            Rat f = q(r, j) / q(r, pj);
            for (size_t i = 0; i < c.beta.rows(); ++i) q(i, j) -= f * q(i, pj);
        }
        Rat lead = q(r, pj);
        for (size_t i = 0; i < c.beta.rows(); ++i) q(i, pj) /= lead;
        used[pj] = true;
        pivots.push_back({r, pj});
        order.push_back(pj);
    }
    // back-reduce earlier pivot columns against later pivots
    for (size_t a = pivots.size(); a-- > 0;) {
        for (size_t b = a + 1; b < pivots.size(); ++b) {
            auto [rb, jb] = pivots[b];
            auto [ra, ja] = pivots[a];
            if (q(rb, ja).is_zero()) continue;
            auto pa = power(rb, ja);
            auto pb = power(rb, jb);
            if (pa && pb && *pa >= *pb) {
                Rat f = q(rb, ja);
                for (size_t i = 0; i < c.beta.rows(); ++i) q(i, ja) -= f * q(i, jb);
            }
        }
    }
    for (size_t j = 0; j < nf; ++j)
        if (!used[j]) order.push_back(j);
    // re-sort columns by (degree, pivot position) so that beta's column
    // labels stay aligned with the module's sorted generator degrees
    std::vector<size_t> pivot_pos(nf, nf);
    for (size_t pos = 0; pos < order.size(); ++pos) pivot_pos[order[pos]] = pos;
    std::vector<size_t> perm(nf);
    for (size_t j = 0; j < nf; ++j) perm[j] = j;
    std::sort(perm.begin(), perm.end(), [&](size_t x, size_t y) {
        if (coldeg[x] != coldeg[y]) return coldeg[x] < coldeg[y];
        return pivot_pos[x] < pivot_pos[y];
    });
    QMat nq = q;
    for (size_t pos = 0; pos < nf; ++pos)
        for (size_t i = 0; i < c.beta.rows(); ++i) nq(i, pos) = q(i, perm[pos]);
    q = nq;
}

inline void hermite_normalize(TailComp& t) {
    ExcComp c;
    c.module = CompMod::free_module(t.lattice.degs());
    c.beta = t.beta;
    hermite_normalize(c);
    t.beta = c.beta;
}

}  // namespace detail

/// Canonical form: Hermite-normalized structure maps and pruned exceptional
/// set. Used for equality; operations keep their as-constructed bases so
/// structure morphisms remain meaningful.
inline EffObjHat canonical_hat(EffObjHat x) {
    for (auto& [n, c] : x.exc) detail::hermite_normalize(c);
    detail::hermite_normalize(x.tail);
    x.prune();
    return x;
}

/// A validated object of the abelian category. Construction goes through
/// validate(); equality compares canonical forms.
class EffObj {
  public:
    const EffObjHat& hat() const { return hat_; }
    const GradedVS& vertex() const { return hat_.vertex; }
    ExcComp component(int n) const { return hat_.component(n); }
    EffObjHat canonical() const { return canonical_hat(hat_); }

    bool operator==(const EffObj& o) const { return canonical() == o.canonical(); }
    bool operator!=(const EffObj& o) const { return !(*this == o); }

    friend EffObj validate(EffObjHat x);

  private:
    EffObjHat hat_;
};

/// Checks that every component's structure map is an isomorphism after
/// inverting the Euler classes.
inline EffObj validate(EffObjHat x) {
    x.shape_check();
    auto check = [&](int n, const ExcComp& c) {
        size_t nf = c.module.free_count();
        if (nf != x.vertex.dim()) {
            // locate a degree where the localized ranks differ
            for (int parity : {0, 1}) {
                size_t fu = 0, fv = 0;
                int witness = 0;
                for (size_t j = 0; j < nf; ++j)
                    if (((c.module.gen_degree(j) % 2) + 2) % 2 == parity) {
                        ++fu;
                        witness = c.module.gen_degree(j);
                    }
                for (int d : x.vertex.degs())
                    if (((d % 2) + 2) % 2 == parity) {
                        ++fv;
                        witness = d;
                    }
                if (fu != fv)
                    throw NotInAError(n, witness, "structure map rank mismatch at component " +
                                                      std::to_string(n));
            }
            throw NotInAError(n, 0, "structure map rank mismatch at component " +
                                        std::to_string(n));
        }
        QMat f(x.vertex.dim(), nf);
        for (size_t i = 0; i < x.vertex.dim(); ++i)
            for (size_t j = 0; j < nf; ++j) f(i, j) = c.beta.q(i, j);
        if (nf > 0 && !f.inverse())
            throw NotInAError(n, nf ? c.module.gen_degree(0) : 0,
                              "structure map singular after localization at component " +
                                  std::to_string(n));
    };
    for (auto& [n, c] : x.exc) check(n, c);
    {
        ExcComp t;
        t.module = CompMod::free_module(x.tail.lattice.degs());
        t.beta = x.tail.beta;
        check(0, t);
    }
    EffObj o;
    o.hat_ = std::move(x);
    return o;
}

// ---------------------------------------------------------------------------
// standard objects

inline EffObj zero_obj() { return validate(EffObjHat{}); }

/// Algebraic sphere S^nu shifted by k: component n is c^{-nu(n)} Q[c] inside
/// the Laurent line over the vertex Q<k>; the tail is the standard lattice.
inline EffObj sphere(const std::map<int, int>& nu, int k = 0) {
    EffObjHat x;
    x.vertex = GradedVS::line(k);
    x.tail.lattice = GradedVS::line(k);
    x.tail.beta = GradedMat({k}, {k}, 0);
    x.tail.beta.q(0, 0) = Rat(1);
    for (auto [n, v] : nu) {
        if (n < 1) throw std::invalid_argument("sphere: component index must be >= 1");
        if (v == 0) continue;
        ExcComp c;
        c.module = CompMod::free_module({2 * v + k});
        c.beta = GradedMat({k}, {2 * v + k}, 0);
        c.beta.q(0, 0) = Rat(1);
        x.exc[n] = c;
    }
    return validate(std::move(x));
}

inline EffObj unit_obj() { return sphere({}, 0); }

/// The algebraic cell: a copy of Q in factor n and degree 1 + k.
inline EffObj sigma(int n, int k = 0) {
    if (n < 1) throw std::invalid_argument("sigma: component index must be >= 1");
    EffObjHat x;
    ExcComp c;
    c.module = CompMod({}, {{1 + k, 1}});
    c.beta = GradedMat({}, c.module.gen_degrees(), 0);
    x.exc[n] = c;
    return validate(std::move(x));
}

/// LK: the free object O_F tensor K -> E^{-1}O_F tensor K on a graded space K.
inline EffObj lk(const GradedVS& kvs) {
    EffObjHat x;
    x.vertex = kvs;
    x.tail.lattice = kvs;
    x.tail.beta = GradedMat(kvs.degs(), kvs.degs(), 0);
    x.tail.beta.q = QMat::identity(kvs.dim());
    return validate(std::move(x));
}

inline EffObj suspend(const EffObj& x, int k) { return validate(x.hat().shifted(k)); }

inline EffObj direct_sum_obj(const EffObjHat& a, const EffObjHat& b) {
    EffObjHat r;
    r.vertex = a.vertex.direct_sum(b.vertex);
    // vertex basis order: a's then b's after the sort; build the two embeddings
    std::set<int> keys = a.exc_indices();
    for (int n : b.exc_indices()) keys.insert(n);
    auto sum_comp = [&](const ExcComp& ca, const ExcComp& cb) {
        ExcComp c;
        c.module = ca.module.direct_sum(cb.module);
        c.beta = GradedMat(r.vertex.degs(), c.module.gen_degrees(), 0);
        // place generators of each part
        CompMap ia(ca.module, c.module, 0), ib(cb.module, c.module, 0);
        std::vector<bool> used(c.module.gen_count(), false);
        auto slot = [&](int d, int k) {
            for (size_t i = 0; i < c.module.gen_count(); ++i)
                if (!used[i] && c.module.gen_degree(i) == d && c.module.gen_order(i) == k) {
                    used[i] = true;
                    return i;
                }
            throw std::logic_error("direct_sum_obj: slot");
        };
        std::vector<size_t> la(ca.module.gen_count()), lb(cb.module.gen_count());
        for (size_t j = 0; j < ca.module.gen_count(); ++j)
            la[j] = slot(ca.module.gen_degree(j), ca.module.gen_order(j));
        for (size_t j = 0; j < cb.module.gen_count(); ++j)
            lb[j] = slot(cb.module.gen_degree(j), cb.module.gen_order(j));
        // vertex embeddings
        std::vector<bool> vused(r.vertex.dim(), false);
        auto vslot = [&](int d) {
            for (size_t i = 0; i < r.vertex.dim(); ++i)
                if (!vused[i] && r.vertex.degs()[i] == d) {
                    vused[i] = true;
                    return i;
                }
            throw std::logic_error("direct_sum_obj: vertex slot");
        };
        std::vector<size_t> va(a.vertex.dim()), vb(b.vertex.dim());
        for (size_t i = 0; i < a.vertex.dim(); ++i) va[i] = vslot(a.vertex.degs()[i]);
        for (size_t i = 0; i < b.vertex.dim(); ++i) vb[i] = vslot(b.vertex.degs()[i]);
        for (size_t i = 0; i < ca.beta.rows(); ++i)
            for (size_t j = 0; j < ca.beta.cols(); ++j) c.beta.q(va[i], la[j]) = ca.beta.q(i, j);
        for (size_t i = 0; i < cb.beta.rows(); ++i)
            for (size_t j = 0; j < cb.beta.cols(); ++j) c.beta.q(vb[i], lb[j]) = cb.beta.q(i, j);
        return c;
    };
    for (int n : keys) r.exc[n] = sum_comp(a.component(n), b.component(n));
    {
        ExcComp t = sum_comp(ExcComp{CompMod::free_module(a.tail.lattice.degs()), a.tail.beta},
                             ExcComp{CompMod::free_module(b.tail.lattice.degs()), b.tail.beta});
        r.tail.lattice = GradedVS(t.module.free_shifts);
        r.tail.beta = t.beta;
    }
    r.prune();
    return validate(std::move(r));
}

inline EffObj direct_sum_obj(const EffObj& a, const EffObj& b) {
    return direct_sum_obj(a.hat(), b.hat());
}

// ---------------------------------------------------------------------------
// morphisms

/// A morphism (theta, phi): vertex map phi plus module maps theta_n, stored
/// at a finite key set (defaulting to theta_tail elsewhere).
struct Mor {
    EffObjHat src, dst;
    int deg = 0;
    GradedMat phi;  // vertex map, degree deg
    std::map<int, CompMap> theta;
    CompMap theta_tail;

    CompMap theta_at(int n) const {
        auto it = theta.find(n);
        if (it != theta.end()) return it->second;
        // instantiate the tail map at an index where both objects are tail-like
        return theta_tail;
    }

    std::set<int> keys() const {
        std::set<int> s = src.exc_indices();
        for (int n : dst.exc_indices()) s.insert(n);
        for (auto& [n, t] : theta) s.insert(n);
        return s;
    }

    /// The Laurent extension of phi as a graded matrix.
    GradedMat phi_ext() const { return phi; }

    /// Exact check of every compatibility square.
    void check() const {
        src.shape_check();
        dst.shape_check();
        if (phi.dst_degs != dst.vertex.degs() || phi.src_degs != src.vertex.degs() ||
            phi.deg != deg)
            throw std::invalid_argument("Mor: phi shape mismatch");
        vs_check(phi);
        auto square = [&](const ExcComp& cs, const ExcComp& cd, const CompMap& th) {
            if (!(th.src == cs.module) || !(th.dst == cd.module) || th.deg != deg)
                throw std::invalid_argument("Mor: theta shape mismatch");
            th.validate();
            GradedMat lhs = cd.beta.compose(th.lift());
            GradedMat rhs = phi_ext().compose(cs.beta);
            if (!(lhs.q == rhs.q)) throw std::invalid_argument("Mor: square does not commute");
        };
        for (int n : keys()) square(src.component(n), dst.component(n), theta_at(n));
        square(ExcComp{CompMod::free_module(src.tail.lattice.degs()), src.tail.beta},
               ExcComp{CompMod::free_module(dst.tail.lattice.degs()), dst.tail.beta},
               theta_tail);
    }

    static Mor zero(const EffObjHat& s, const EffObjHat& d, int deg) {
        Mor m;
        m.src = s;
        m.dst = d;
        m.deg = deg;
        m.phi = GradedMat(d.vertex.degs(), s.vertex.degs(), deg);
        std::set<int> ks = s.exc_indices();
        for (int n : d.exc_indices()) ks.insert(n);
        for (int n : ks)
            m.theta[n] = CompMap(s.component(n).module, d.component(n).module, deg);
        m.theta_tail = CompMap(CompMod::free_module(s.tail.lattice.degs()),
                               CompMod::free_module(d.tail.lattice.degs()), deg);
        return m;
    }

    static Mor identity(const EffObjHat& x) {
        Mor m = zero(x, x, 0);
        m.phi.q = QMat::identity(x.vertex.dim());
        for (auto& [n, t] : m.theta) t = CompMap::identity(x.component(n).module);
        m.theta_tail = CompMap::identity(CompMod::free_module(x.tail.lattice.degs()));
        return m;
    }

    Mor compose(const Mor& g) const {  // *this after g
        Mor r;
        r.src = g.src;
        r.dst = dst;
        r.deg = deg + g.deg;
        r.phi = phi.compose(g.phi);
        std::set<int> ks = keys();
        for (int n : g.keys()) ks.insert(n);
        for (int n : ks) r.theta[n] = theta_at(n).compose(g.theta_at(n));
        r.theta_tail = theta_tail.compose(g.theta_tail);
        return r;
    }

    Mor operator+(const Mor& o) const {
        Mor r = *this;
        r.phi = phi + o.phi;
        std::set<int> ks = keys();
        for (int n : o.keys()) ks.insert(n);
        r.theta.clear();
        for (int n : ks) r.theta[n] = theta_at(n) + o.theta_at(n);
        r.theta_tail = theta_tail + o.theta_tail;
        return r;
    }

    Mor operator-(const Mor& o) const { return *this + o.scaled(Rat(-1)); }

    Mor scaled(const Rat& s) const {
        Mor r = *this;
        r.phi = r.phi.scaled(s);
        for (auto& [n, t] : r.theta) t = t.scaled(s);
        r.theta_tail = r.theta_tail.scaled(s);
        return r;
    }

    Mor shifted(int k) const {
        Mor r = *this;
        r.src = src.shifted(k);
        r.dst = dst.shifted(k);
        r.phi = phi.shifted(k);
        for (auto& [n, t] : r.theta) t = t.shifted(k);
        r.theta_tail = r.theta_tail.shifted(k);
        return r;
    }

    /// The same entries viewed as a map from the suspended source,
    /// lowering the map degree accordingly.
    Mor src_shifted(int k) const {
        Mor r = *this;
        r.src = src.shifted(k);
        r.deg = deg - k;
        r.phi.deg = deg - k;
        for (int& d : r.phi.src_degs) d += k;
        for (auto& [n, t] : r.theta) {
            t.src = t.src.shifted(k);
            t.deg = deg - k;
        }
        r.theta_tail.src = r.theta_tail.src.shifted(k);
        r.theta_tail.deg = deg - k;
        return r;
    }

    bool is_zero() const {
        if (!phi.q.is_zero() || !theta_tail.is_zero()) return false;
        for (auto& [n, t] : theta)
            if (!t.is_zero()) return false;
        return true;
    }

    bool same_entries(const Mor& o) const {
        if (!(phi.q == o.phi.q)) return false;
        std::set<int> ks = keys();
        for (int n : o.keys()) ks.insert(n);
        for (int n : ks)
            if (!(theta_at(n).q == o.theta_at(n).q)) return false;
        return theta_tail.q == o.theta_tail.q;
    }
};

// ---------------------------------------------------------------------------
// hom groups

/// Component-graded report: a global part, a per-generic-component tail
/// pattern, and finitely many exceptional component parts, over a window.
struct CGVS {
    int lo = 0, hi = 0;
    std::map<int, size_t> global;
    std::map<int, size_t> tail_pattern;
    std::map<int, std::map<int, size_t>> exceptional;

    size_t global_at(int d) const {
        auto it = global.find(d);
        return it == global.end() ? 0 : it->second;
    }
    size_t tail_at(int d) const {
        auto it = tail_pattern.find(d);
        return it == tail_pattern.end() ? 0 : it->second;
    }
    size_t exc_at(int n, int d) const {
        auto it = exceptional.find(n);
        if (it == exceptional.end()) return 0;
        auto jt = it->second.find(d);
        return jt == it->second.end() ? 0 : jt->second;
    }
    /// Finite part: global plus exceptional (tail pattern counts per n).
    size_t finite_dim_at(int d) const {
        size_t s = global_at(d);
        for (auto& [n, m] : exceptional) s += exc_at(n, d);
        return s;
    }
    bool is_zero() const {
        return global.empty() && tail_pattern.empty() && exceptional.empty();
    }
    bool operator==(const CGVS& o) const {
        return global == o.global && tail_pattern == o.tail_pattern &&
               exceptional == o.exceptional;
    }
};

struct HomGroup {
    int lo = 0, hi = 0;
    std::map<int, std::vector<Mor>> basis;  // degree -> basis morphisms
    CGVS report;

    size_t dim_at(int d) const {
        auto it = basis.find(d);
        return it == basis.end() ? 0 : it->second.size();
    }
};

namespace detail {

/// Solves the compatibility squares for morphisms of one fixed degree.
/// Works for objects of the enlarged category as well; callers must ensure
/// the target's tail structure map has no lattice kernel (checked) so the
/// uniform-tail answer is the honest hom group.
inline std::vector<Mor> solve_homs(const EffObjHat& x, const EffObjHat& y, int t) {
    struct Var {
        int slot;  // -1 phi, -2 tail, else exceptional index
        size_t i, j;
    };
    std::vector<Var> vars;
    std::map<std::tuple<int, size_t, size_t>, size_t> var_idx;
    auto add_var = [&](int slot, size_t i, size_t j) {
        var_idx[{slot, i, j}] = vars.size();
        vars.push_back({slot, i, j});
    };

    // phi variables
    const auto& ud = x.vertex.degs();
    const auto& vd = y.vertex.degs();
    for (size_t i = 0; i < vd.size(); ++i)
        for (size_t j = 0; j < ud.size(); ++j)
            if (vd[i] == ud[j] + t) add_var(-1, i, j);

    std::set<int> keys = x.exc_indices();
    for (int n : y.exc_indices()) keys.insert(n);

    auto add_theta_vars = [&](int slot, const CompMod& ms, const CompMod& md) {
        for (size_t j = 0; j < ms.gen_count(); ++j)
            for (size_t i = 0; i < md.gen_count(); ++i) {
                int num = md.gen_degree(i) - ms.gen_degree(j) - t;
                if (num % 2 != 0) continue;
                int p = num / 2;
                int k = ms.gen_order(j), l = md.gen_order(i);
                if (p < 0) continue;
                if (l > 0 && p >= l) continue;
                if (k > 0 && (l == 0 || p + k < l)) continue;
                add_var(slot, i, j);
            }
    };
    for (int n : keys) add_theta_vars(n, x.component(n).module, y.component(n).module);
    CompMod xt = CompMod::free_module(x.tail.lattice.degs());
    CompMod yt = CompMod::free_module(y.tail.lattice.degs());
    add_theta_vars(-2, xt, yt);

    // equations: beta_y . theta - phi~ . beta_x = 0 at each (vertex row, free col)
    std::vector<std::vector<Rat>> eqs;
    auto add_slot_eqs = [&](int slot, const ExcComp& cx, const ExcComp& cy) {
        const CompMod& ms = cx.module;
        const CompMod& md = cy.module;
        for (size_t r = 0; r < vd.size(); ++r)
            for (size_t j = 0; j < ms.free_count(); ++j) {
                // parity of the target expression
                std::vector<Rat> row(vars.size());
                bool any = false;
                for (size_t i = 0; i < md.gen_count(); ++i) {
                    if (cy.beta.q(r, i).is_zero()) continue;
                    auto it = var_idx.find({slot, i, j});
                    if (it == var_idx.end()) continue;
                    row[it->second] += cy.beta.q(r, i);
                    any = true;
                }
                for (size_t m = 0; m < ud.size(); ++m) {
                    if (cx.beta.q(m, j).is_zero()) continue;
                    auto it = var_idx.find({-1, r, m});
                    if (it == var_idx.end()) continue;
                    row[it->second] -= cx.beta.q(m, j);
                    any = true;
                }
                if (any) eqs.push_back(std::move(row));
            }
    };
    for (int n : keys) add_slot_eqs(n, x.component(n), y.component(n));
    add_slot_eqs(-2, ExcComp{xt, x.tail.beta}, ExcComp{yt, y.tail.beta});

    QMat sys(eqs.size(), vars.size());
    for (size_t r = 0; r < eqs.size(); ++r)
        for (size_t c = 0; c < vars.size(); ++c) sys(r, c) = eqs[r][c];
    QMat ker = sys.kernel();

    std::vector<Mor> out;
    for (size_t v = 0; v < ker.cols(); ++v) {
        Mor m = Mor::zero(x, y, t);
        for (size_t c = 0; c < vars.size(); ++c) {
            const Rat& val = ker(c, v);
            if (val.is_zero()) continue;
            const Var& var = vars[c];
            if (var.slot == -1) m.phi.q(var.i, var.j) = val;
            else if (var.slot == -2)
                m.theta_tail.q(var.i, var.j) = val;
            else
                m.theta[var.slot].q(var.i, var.j) = val;
        }
        out.push_back(std::move(m));
    }
    return out;
}

/// Kernel of the tail structure map on the free lattice must vanish for
/// uniform-tail homs to tell the whole story.
inline bool tail_beta_injective(const EffObjHat& y) {
    const GradedMat& b = y.tail.beta;
    if (b.cols() == 0) return true;
    GradedMat tw = b;
    // twist row degrees upward so all implied powers are polynomial
    int m = 0;
    for (size_t i = 0; i < tw.rows(); ++i)
        for (size_t j = 0; j < tw.cols(); ++j) {
            auto p = tw.power(i, j);
            if (p && *p < 0) m = std::max(m, -*p);
        }
    for (int& d : tw.dst_degs) d += 2 * m;
    return graded_kernel(tw).cols() == 0;
}

}  // namespace detail

/// Hom group (theta, phi) pairs degreewise over a window. Basis morphisms
/// supported entirely at a single exceptional component are reported there;
/// everything else counts as global.
inline HomGroup hom_group_hat(const EffObjHat& x, const EffObjHat& y, int lo, int hi) {
    if (!detail::tail_beta_injective(y))
        throw NotEffectiveError("hom group: target tail admits non-uniform maps");
    HomGroup out;
    out.lo = lo;
    out.hi = hi;
    out.report.lo = lo;
    out.report.hi = hi;
    for (int t = lo; t <= hi; ++t) {
        auto ms = detail::solve_homs(x, y, t);
        if (ms.empty()) continue;
        for (const Mor& m : ms) {
            int only = 0;
            int count = 0;
            bool global = !m.phi.q.is_zero() || !m.theta_tail.q.is_zero();
            for (auto& [n, th] : m.theta)
                if (!th.q.is_zero()) {
                    ++count;
                    only = n;
                }
            if (!global && count == 1) out.report.exceptional[only][t] += 1;
            else
                out.report.global[t] += 1;
        }
        out.basis[t] = std::move(ms);
    }
    return out;
}

inline HomGroup hom_group(const EffObj& x, const EffObj& y, int lo, int hi) {
    return hom_group_hat(x.hat(), y.hat(), lo, hi);
}

// ---------------------------------------------------------------------------
// kernels, cokernels

struct KernelObj {
    EffObj obj;
    Mor incl;
};

struct CokernelObj {
    EffObj obj;
    Mor proj;
};

/// Kernel computed in the enlarged category (componentwise kernels glued over
/// the vertex kernel); for maps of valid objects the result is already valid.
inline EffObjHat kernel_hat(const Mor& f, std::map<int, CompMap>* incl_theta = nullptr,
                            CompMap* incl_tail = nullptr, GradedMat* incl_phi = nullptr) {
    VSKernel vk = vs_kernel(f.phi);
    EffObjHat r;
    r.vertex = vk.space;
    auto comp_kernel = [&](const ExcComp& cx, const CompMap& th) {
        KernelResult kr = comp_ker(th);
        ExcComp c;
        c.module = kr.module;
        // beta: restrict and express in Laurent tensor ker(phi) coordinates
        GradedMat into_u = cx.beta.compose(kr.incl.lift());
        GradedMat vinc = vk.incl;  // rows: vertex of src, cols: kernel vs
        // solve vinc * y = into_u  (rationally; powers implied)
        GradedMat y(vk.space.degs(), kr.module.gen_degrees(), 0);
        if (vk.space.dim() > 0 || into_u.q.is_zero()) {
            auto sol = vinc.q.solve(into_u.q);
            if (!sol) throw std::logic_error("kernel: beta does not restrict");
            y.q = *sol;
        } else if (!into_u.q.is_zero()) {
            throw std::logic_error("kernel: beta does not restrict to zero vertex");
        }
        return std::pair<ExcComp, CompMap>(ExcComp{kr.module, y}, kr.incl);
    };
    for (int n : f.keys()) {
        auto [c, incl] = comp_kernel(f.src.component(n), f.theta_at(n));
        r.exc[n] = c;
        if (incl_theta) (*incl_theta)[n] = incl;
    }
    {
        auto [c, incl] = comp_kernel(
            ExcComp{CompMod::free_module(f.src.tail.lattice.degs()), f.src.tail.beta},
            f.theta_tail);
        r.tail.lattice = GradedVS(c.module.free_shifts);
        r.tail.beta = c.beta;
        if (c.module.torsion.size())
            throw std::logic_error("kernel: torsion appeared in a tail component");
        if (incl_tail) *incl_tail = incl;
    }
    if (incl_phi) *incl_phi = vk.incl;
    r.prune();
    return r;
}

inline KernelObj kernel(const Mor& f) {
    std::map<int, CompMap> th;
    CompMap tt;
    GradedMat ph;
    EffObjHat k = kernel_hat(f, &th, &tt, &ph);
    KernelObj out{validate(k), Mor()};
    out.incl.src = out.obj.hat();
    out.incl.dst = f.src;
    out.incl.deg = 0;
    out.incl.phi = ph;
    out.incl.theta = th;
    out.incl.theta_tail = tt;
    return out;
}

inline CokernelObj cokernel(const Mor& f) {
    VSCoker vc = vs_coker(f.phi);
    EffObjHat r;
    r.vertex = vc.space;
    CokernelObj out;
    auto comp_cokernel = [&](const ExcComp& cy, const CompMap& th) {
        CokerResult cr = comp_coker(th);
        ExcComp c;
        c.module = cr.module;
        GradedMat b = vc.proj.compose(cy.beta.compose(cr.reps));
        c.beta = b;
        return std::pair<ExcComp, CompMap>(ExcComp{cr.module, b}, cr.proj);
    };
    for (int n : f.keys()) {
        auto [c, proj] = comp_cokernel(f.dst.component(n), f.theta_at(n));
        r.exc[n] = c;
        out.proj.theta[n] = proj;
    }
    {
        auto [c, proj] = comp_cokernel(
            ExcComp{CompMod::free_module(f.dst.tail.lattice.degs()), f.dst.tail.beta},
            f.theta_tail);
        if (c.module.torsion.size())
            throw std::logic_error("cokernel: torsion appeared in a tail component");
        r.tail.lattice = GradedVS(c.module.free_shifts);
        r.tail.beta = c.beta;
        out.proj.theta_tail = proj;
    }
    r.prune();
    out.obj = validate(r);
    out.proj.src = f.dst;
    out.proj.dst = out.obj.hat();
    out.proj.deg = 0;
    out.proj.phi = vc.proj;
    return out;
}

// ---------------------------------------------------------------------------
// the coreflection

struct GammaResult {
    EffObj obj;
    Mor counit;  // obj -> input (in the enlarged category)
};

/// Coreflection onto the abelian model. Construction: the achievable vertex
/// per component is intersected, then each component is pulled back over the
/// Laurent extension of the achievable subspace. Inputs whose structure map
/// acquires a Laurent kernel correspond to non-finitely-describable
/// coreflections (infinite products) and are rejected.
inline GammaResult gamma_h(const EffObjHat& x) {
    x.shape_check();
    const auto& ud = x.vertex.degs();

    struct Slot {
        int key;  // 0 = tail
        ExcComp c;
    };
    std::vector<Slot> slots;
    for (int n : x.exc_indices()) slots.push_back({n, x.component(n)});
    slots.push_back({0, ExcComp{CompMod::free_module(x.tail.lattice.degs()), x.tail.beta}});

    // reject inputs with Laurent-visible kernel
    for (auto& s : slots) {
        size_t nf = s.c.module.free_count();
        if (nf == 0) continue;
        GradedMat b(s.c.beta.dst_degs, std::vector<int>(s.c.beta.src_degs.begin(),
                                                        s.c.beta.src_degs.begin() + nf),
                    0);
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < nf; ++j) b.q(i, j) = s.c.beta.q(i, j);
        int m = 0;
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) {
                auto p = b.power(i, j);
                if (p && *p < 0) m = std::max(m, -*p);
            }
        GradedMat tw = b;
        for (int& d : tw.dst_degs) d += 2 * m;
        if (graded_kernel(tw).cols() != 0)
            throw NotEffectiveError(
                "gamma_h: localized structure map has a kernel; the coreflection "
                "is not finitely describable");
    }

    // achievable vertex subspace per degree, intersected over all slots
    std::set<int> vdeg_set(ud.begin(), ud.end());
    std::map<int, QMat> vbasis;  // degree -> columns in U_d coordinates
    for (int d : vdeg_set) {
        std::vector<size_t> rows_d;
        for (size_t i = 0; i < ud.size(); ++i)
            if (ud[i] == d) rows_d.push_back(i);
        QMat cur = QMat::identity(rows_d.size());
        for (auto& s : slots) {
            // rows of L tensor U at parity of d: pairs (i) with matching parity
            std::vector<size_t> rows_par;
            for (size_t i = 0; i < ud.size(); ++i)
                if (((ud[i] - d) % 2 + 2) % 2 == 0) rows_par.push_back(i);
            size_t nf = s.c.module.free_count();
            // W = span of structure-map columns with source parity matching d
            std::vector<size_t> cols_par;
            for (size_t j = 0; j < nf; ++j)
                if (((s.c.module.gen_degree(j) - d) % 2 + 2) % 2 == 0) cols_par.push_back(j);
            QMat w(rows_par.size(), cols_par.size());
            for (size_t a = 0; a < rows_par.size(); ++a)
                for (size_t b2 = 0; b2 < cols_par.size(); ++b2)
                    w(a, b2) = s.c.beta.q(rows_par[a], cols_par[b2]);
            // embed current candidate subspace of U_d into the parity slice
            QMat emb(rows_par.size(), cur.cols());
            for (size_t v = 0; v < cur.cols(); ++v)
                for (size_t a = 0; a < rows_d.size(); ++a) {
                    size_t pos = 0;
                    for (; pos < rows_par.size(); ++pos)
                        if (rows_par[pos] == rows_d[a]) break;
                    emb(pos, v) = cur(a, v);
                }
            QMat inter = span_intersection(emb, w);
            // pull back to U_d coordinates
            QMat back(rows_d.size(), inter.cols());
            bool clean = true;
            for (size_t v = 0; v < inter.cols(); ++v)
                for (size_t a = 0; a < rows_par.size(); ++a) {
                    bool in_d = false;
                    size_t pos = 0;
                    for (size_t t = 0; t < rows_d.size(); ++t)
                        if (rows_d[t] == rows_par[a]) {
                            in_d = true;
                            pos = t;
                        }
                    if (in_d) back(pos, v) = inter(a, v);
                    else if (!inter(a, v).is_zero())
                        clean = false;
                }
            if (!clean) throw std::logic_error("gamma_h: achievable subspace left U_d");
            cur = back;
        }
        // canonical basis; in particular the identity when everything is achievable
        vbasis[d] = column_rref(cur);
    }

    // assemble V' and its inclusion into U
    std::vector<int> vprime_degs;
    for (int d : vdeg_set)
        for (size_t v = 0; v < vbasis[d].cols(); ++v) vprime_degs.push_back(d);
    GradedVS vprime(vprime_degs);
    GradedMat p(ud, vprime.degs(), 0);
    {
        size_t col = 0;
        for (int d : vdeg_set) {
            std::vector<size_t> rows_d;
            for (size_t i = 0; i < ud.size(); ++i)
                if (ud[i] == d) rows_d.push_back(i);
            for (size_t v = 0; v < vbasis[d].cols(); ++v, ++col)
                for (size_t a = 0; a < rows_d.size(); ++a) p.q(rows_d[a], col) = vbasis[d](a, v);
        }
    }

    bool full = vprime.dim() == x.vertex.dim();

    // complement projection U -> U/V' for the pullback condition
    VSCoker comp = vs_coker(p);

    EffObjHat r;
    r.vertex = vprime;
    Mor counit;
    counit.deg = 0;
    counit.dst = x;
    counit.phi = p;

    auto build = [&](const ExcComp& c) {
        size_t nf = c.module.free_count();
        // free part of the pullback: kernel of (U -> U/V') after beta
        GradedMat b_free(c.beta.dst_degs,
                         std::vector<int>(c.beta.src_degs.begin(), c.beta.src_degs.begin() + nf),
                         0);
        for (size_t i = 0; i < b_free.rows(); ++i)
            for (size_t j = 0; j < nf; ++j) b_free.q(i, j) = c.beta.q(i, j);
        GradedMat m = comp.proj.compose(b_free);
        int tw = 0;
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) {
                auto pw = m.power(i, j);
                if (pw && *pw < 0) tw = std::max(tw, -*pw);
            }
        GradedMat mt = m;
        for (int& d : mt.dst_degs) d += 2 * tw;
        GradedMat kfree = full ? GradedMat::identity(b_free.src_degs) : graded_kernel(mt);
        // new module: kernel columns are a basis of the free part
        CompMod nm(kfree.src_degs, c.module.torsion);
        // order: CompMod sorts; build the inclusion aligned with sorted order
        std::vector<size_t> order(kfree.cols());
        {
            std::vector<bool> used(kfree.cols(), false);
            for (size_t g = 0; g < nm.free_count(); ++g) {
                for (size_t j = 0; j < kfree.cols(); ++j)
                    if (!used[j] && kfree.src_degs[j] == nm.gen_degree(g)) {
                        used[j] = true;
                        order[g] = j;
                        break;
                    }
            }
        }
        CompMap incl(nm, c.module, 0);
        for (size_t g = 0; g < nm.free_count(); ++g)
            for (size_t i = 0; i < nf; ++i) incl.q(i, g) = kfree.q(i, order[g]);
        for (size_t tgen = 0; tgen < nm.torsion.size(); ++tgen)
            incl.q(nf + tgen, nm.free_count() + tgen) = Rat(1);
        incl.reduce();
        // beta of the new component: express beta . incl in V' coordinates
        GradedMat into_u = c.beta.compose(incl.lift());
        GradedMat beta_new(vprime.degs(), nm.gen_degrees(), 0);
        if (vprime.dim() > 0) {
            auto sol = p.q.solve(into_u.q);
            if (!sol) throw std::logic_error("gamma_h: pullback beta escaped V'");
            beta_new.q = *sol;
        } else if (!into_u.q.is_zero()) {
            throw std::logic_error("gamma_h: pullback beta escaped zero V'");
        }
        return std::pair<ExcComp, CompMap>(ExcComp{nm, beta_new}, incl);
    };

    for (int n : x.exc_indices()) {
        auto [c, incl] = build(x.component(n));
        r.exc[n] = c;
        counit.theta[n] = incl;
    }
    {
        auto [c, incl] = build(ExcComp{CompMod::free_module(x.tail.lattice.degs()), x.tail.beta});
        if (c.module.torsion.size()) throw std::logic_error("gamma_h: torsion in tail");
        r.tail.lattice = GradedVS(c.module.free_shifts);
        r.tail.beta = c.beta;
        counit.theta_tail = incl;
    }
    r.prune();
    GammaResult out;
    out.obj = validate(r);
    counit.src = out.obj.hat();
    out.counit = counit;
    return out;
}

/// Factors a morphism into the enlarged category through the coreflection:
/// given f : M -> X with M valid, produces g : M -> Gamma_h X with
/// counit . g = f.
inline Mor factor_through_gamma(const Mor& f, const GammaResult& g) {
    Mor r;
    r.src = f.src;
    r.dst = g.obj.hat();
    r.deg = f.deg;
    // phi factors through the achievable subspace
    r.phi = GradedMat(g.obj.vertex().degs(), f.src.vertex.degs(), f.deg);
    if (g.obj.vertex().dim() > 0) {
        auto sol = g.counit.phi.q.solve(f.phi.q);
        if (!sol) throw std::logic_error("factor_through_gamma: phi escapes achievable vertex");
        r.phi.q = *sol;
    } else if (!f.phi.q.is_zero()) {
        throw std::logic_error("factor_through_gamma: phi nonzero onto empty vertex");
    }
    std::set<int> ks = f.keys();
    for (int n : g.counit.keys()) ks.insert(n);
    for (int n : ks) {
        CompMap incl = g.counit.theta_at(n);
        auto sol = comp_express(f.theta_at(n), incl);
        if (!sol) throw std::logic_error("factor_through_gamma: theta escapes pullback");
        r.theta[n] = *sol;
    }
    {
        auto sol = comp_express(f.theta_tail, g.counit.theta_tail);
        if (!sol) throw std::logic_error("factor_through_gamma: tail theta escapes pullback");
        r.theta_tail = *sol;
    }
    return r;
}

// ---------------------------------------------------------------------------
// finite limits and colimits

struct FiniteDiagram {
    std::vector<EffObj> objects;
    std::vector<std::tuple<size_t, size_t, Mor>> arrows;  // (src idx, dst idx, map)
};

struct SumWithMaps {
    EffObj total;
    std::vector<Mor> ins;   // injections
    std::vector<Mor> proj;  // projections
};

inline SumWithMaps direct_sum_many(const std::vector<EffObj>& xs) {
    SumWithMaps out;
    if (xs.empty()) {
        out.total = zero_obj();
        return out;
    }
    // fold left, tracking injections via hom solving is wasteful; build maps
    // directly by slot placement each round
    out.total = xs[0];
    out.ins = {Mor::identity(xs[0].hat())};
    out.proj = {Mor::identity(xs[0].hat())};
    for (size_t i = 1; i < xs.size(); ++i) {
        EffObj bigger = direct_sum_obj(out.total, xs[i]);
        // embeddings of the two halves into the new sum
        Mor emb_old = Mor::zero(out.total.hat(), bigger.hat(), 0);
        Mor emb_new = Mor::zero(xs[i].hat(), bigger.hat(), 0);
        Mor pr_old = Mor::zero(bigger.hat(), out.total.hat(), 0);
        Mor pr_new = Mor::zero(bigger.hat(), xs[i].hat(), 0);
        // the direct_sum construction was deterministic: rebuild placements
        // by solving beta-compatible slot equations is overkill; instead use
        // hom solving against the characterizing property
        // (identity on each part). We reconstruct by brute slot placement:
        auto place_pair = [&](const EffObjHat& a, const EffObjHat& b, const EffObjHat& s) {
            // returns for each slot the generator placement of a and b parts
            // mirroring direct_sum_obj
            struct Placement {
                std::vector<size_t> va, vb;
                std::map<int, std::pair<std::vector<size_t>, std::vector<size_t>>> comp;
                std::pair<std::vector<size_t>, std::vector<size_t>> tail;
            } pl;
            std::vector<bool> vused(s.vertex.dim(), false);
            auto vslot = [&](int d) {
                for (size_t k = 0; k < s.vertex.dim(); ++k)
                    if (!vused[k] && s.vertex.degs()[k] == d) {
                        vused[k] = true;
                        return k;
                    }
                throw std::logic_error("placement: vertex");
            };
            for (int d : a.vertex.degs()) pl.va.push_back(vslot(d));
            for (int d : b.vertex.degs()) pl.vb.push_back(vslot(d));
            std::set<int> ks = s.exc_indices();
            for (int n : a.exc_indices()) ks.insert(n);
            for (int n : b.exc_indices()) ks.insert(n);
            auto gens = [&](const CompMod& ma, const CompMod& mb, const CompMod& msum) {
                std::vector<bool> used(msum.gen_count(), false);
                auto slot = [&](int d, int k) {
                    for (size_t g = 0; g < msum.gen_count(); ++g)
                        if (!used[g] && msum.gen_degree(g) == d && msum.gen_order(g) == k) {
                            used[g] = true;
                            return g;
                        }
                    throw std::logic_error("placement: generator");
                };
                std::pair<std::vector<size_t>, std::vector<size_t>> r;
                for (size_t g = 0; g < ma.gen_count(); ++g)
                    r.first.push_back(slot(ma.gen_degree(g), ma.gen_order(g)));
                for (size_t g = 0; g < mb.gen_count(); ++g)
                    r.second.push_back(slot(mb.gen_degree(g), mb.gen_order(g)));
                return r;
            };
            for (int n : ks)
                pl.comp[n] = gens(a.component(n).module, b.component(n).module,
                                  s.component(n).module);
            pl.tail = gens(CompMod::free_module(a.tail.lattice.degs()),
                           CompMod::free_module(b.tail.lattice.degs()),
                           CompMod::free_module(s.tail.lattice.degs()));
            return pl;
        };
        auto pl = place_pair(out.total.hat(), xs[i].hat(), bigger.hat());
        auto fill = [&](Mor& emb, Mor& pr, const std::vector<size_t>& vmap, bool first) {
            for (size_t k = 0; k < vmap.size(); ++k) {
                emb.phi.q(vmap[k], k) = Rat(1);
                pr.phi.q(k, vmap[k]) = Rat(1);
            }
            for (auto& [n, pair] : pl.comp) {
                if (!emb.theta.count(n))
                    emb.theta[n] = CompMap(emb.src.component(n).module,
                                           emb.dst.component(n).module, 0);
                if (!pr.theta.count(n))
                    pr.theta[n] = CompMap(pr.src.component(n).module,
                                          pr.dst.component(n).module, 0);
                const auto& placed = first ? pair.first : pair.second;
                for (size_t g = 0; g < placed.size(); ++g) {
                    emb.theta[n].q(placed[g], g) = Rat(1);
                    pr.theta[n].q(g, placed[g]) = Rat(1);
                }
            }
            const auto& placed = first ? pl.tail.first : pl.tail.second;
            for (size_t g = 0; g < placed.size(); ++g) {
                emb.theta_tail.q(placed[g], g) = Rat(1);
                pr.theta_tail.q(g, placed[g]) = Rat(1);
            }
        };
        fill(emb_old, pr_old, pl.va, true);
        fill(emb_new, pr_new, pl.vb, false);
        std::vector<Mor> nins, nproj;
        for (size_t k = 0; k < out.ins.size(); ++k) {
            nins.push_back(emb_old.compose(out.ins[k]));
            nproj.push_back(out.proj[k].compose(pr_old));
        }
        nins.push_back(emb_new);
        nproj.push_back(pr_new);
        out.total = bigger;
        out.ins = std::move(nins);
        out.proj = std::move(nproj);
    }
    return out;
}

/// Colimit: cokernel of the canonical difference map into the coproduct.
inline EffObj colimit(const FiniteDiagram& d) {
    SumWithMaps sum = direct_sum_many(d.objects);
    if (d.arrows.empty()) return sum.total;
    std::vector<EffObj> srcs;
    for (auto& [s, t, f] : d.arrows) srcs.push_back(d.objects[s]);
    SumWithMaps dom = direct_sum_many(srcs);
    Mor diff = Mor::zero(dom.total.hat(), sum.total.hat(), 0);
    for (size_t a = 0; a < d.arrows.size(); ++a) {
        auto& [s, t, f] = d.arrows[a];
        Mor part = sum.ins[t].compose(f) - sum.ins[s];
        diff = diff + part.compose(dom.proj[a]);
    }
    return cokernel(diff).obj;
}

/// Limit: kernel of the canonical difference map out of the product, followed
/// by the coreflection.
inline EffObj limit(const FiniteDiagram& d) {
    SumWithMaps prod = direct_sum_many(d.objects);
    if (d.arrows.empty()) return prod.total;
    std::vector<EffObj> dsts;
    for (auto& [s, t, f] : d.arrows) dsts.push_back(d.objects[t]);
    SumWithMaps cod = direct_sum_many(dsts);
    Mor diff = Mor::zero(prod.total.hat(), cod.total.hat(), 0);
    for (size_t a = 0; a < d.arrows.size(); ++a) {
        auto& [s, t, f] = d.arrows[a];
        Mor part = f.compose(prod.proj[s]) - prod.proj[t];
        diff = diff + cod.ins[a].compose(part);
    }
    EffObjHat k = kernel_hat(diff);
    return gamma_h(k).obj;
}

}  // namespace so2alg
