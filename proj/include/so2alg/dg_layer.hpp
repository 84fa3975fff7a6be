#pragma once

#include "so2alg/monoidal.hpp"

namespace so2alg {

// ---------------------------------------------------------------------------
// differential graded objects

/// An object with a square-zero degree -1 differential. The differential is
/// stored as a self-morphism, so c-linearity and compatibility with the
/// structure maps are the usual morphism conditions.
struct DGObj {
    EffObjHat carrier;
    Mor d;

    static DGObj make(EffObjHat carrier, Mor diff) {
        DGObj x;
        x.carrier = std::move(carrier);
        x.d = std::move(diff);
        if (x.d.deg != -1) throw std::invalid_argument("DGObj: differential degree must be -1");
        x.d.check();
        if (!x.d.compose(x.d).is_zero())
            throw std::invalid_argument("DGObj: differential does not square to zero");
        return x;
    }

    static DGObj from_obj(const EffObj& x) {
        DGObj r;
        r.carrier = x.hat();
        r.d = Mor::zero(r.carrier, r.carrier, -1);
        return r;
    }

    DGObj suspended(int k = 1) const {
        DGObj r;
        r.carrier = carrier.shifted(k);
        r.d = d.shifted(k);
        if (k % 2 != 0) r.d = r.d.scaled(Rat(-1));
        return r;
    }

    bool zero_differential() const { return d.is_zero(); }
};

/// Chain-map condition for a degree-t morphism of the underlying objects.
inline bool is_chain_map(const DGObj& x, const DGObj& y, const Mor& f) {
    Mor lhs = y.d.compose(f);
    Mor rhs = f.compose(x.d);
    if (f.deg % 2 != 0) rhs = rhs.scaled(Rat(-1));
    return lhs.same_entries(rhs);
}

// ---------------------------------------------------------------------------
// homology

struct VSHomology {
    GradedVS h;
    GradedMat incl;  // cycles -> carrier vertex
    GradedMat proj;  // cycles -> h
    GradedMat reps;  // carrier vertex <- h (chosen representatives)
};

inline VSHomology vs_homology(const GradedMat& d) {
    VSHomology out;
    VSKernel k = vs_kernel(d);
    // express the image inside the cycles
    GradedMat din(k.space.degs(), d.src_degs, d.deg);
    if (k.space.dim() > 0) {
        auto sol = k.incl.q.solve(d.q);
        if (!sol) throw std::logic_error("vs_homology: image escapes cycles");
        din.q = *sol;
    } else if (!d.q.is_zero()) {
        throw std::logic_error("vs_homology: image escapes zero cycles");
    }
    VSCoker c = vs_coker(din);
    out.h = c.space;
    out.incl = k.incl;
    out.proj = c.proj;
    // representatives: a section of proj through the cycles
    out.reps = GradedMat(d.src_degs, out.h.degs(), 0);
    if (out.h.dim() > 0) {
        auto sect = c.proj.q.solve(QMat::identity(out.h.dim()));
        if (!sect) throw std::logic_error("vs_homology: no section");
        out.reps.q = k.incl.q * *sect;
    }
    return out;
}

struct DGHomologyData {
    EffObj obj;
    std::map<int, HomologyResult> slots;
    HomologyResult tail;
    VSHomology vertex;
    std::set<int> keys;
};

/// Componentwise homology with the induced structure map. Throws
/// NotEffectiveError when the tail homology acquires torsion (a uniform
/// torsion tail is not representable in the effective fragment).
inline DGHomologyData homology_data(const DGObj& x) {
    DGHomologyData out;
    out.keys = x.carrier.exc_indices();
    for (int n : x.d.keys()) out.keys.insert(n);
    out.vertex = vs_homology(x.d.phi);
    EffObjHat h;
    h.vertex = out.vertex.h;

    auto induced_beta = [&](const ExcComp& c, const HomologyResult& hr) {
        GradedMat into_u = c.beta.compose(hr.reps);  // rows: vertex, cols: h gens
        GradedMat b(out.vertex.h.degs(), hr.h.gen_degrees(), 0);
        if (out.vertex.incl.q.cols() > 0) {
            auto sol = out.vertex.incl.q.solve(into_u.q);
            if (!sol) throw std::logic_error("homology: beta image escapes vertex cycles");
            b.q = out.vertex.proj.q * *sol;
        } else if (!into_u.q.is_zero()) {
            throw std::logic_error("homology: beta image escapes zero cycles");
        }
        return b;
    };

    for (int n : out.keys) {
        ExcComp c = x.carrier.component(n);
        HomologyResult hr = pid_homology(c.module, x.d.theta_at(n));
        ExcComp hc;
        hc.module = hr.h;
        hc.beta = induced_beta(c, hr);
        h.exc[n] = hc;
        out.slots[n] = std::move(hr);
    }
    {
        ExcComp c{CompMod::free_module(x.carrier.tail.lattice.degs()), x.carrier.tail.beta};
        HomologyResult hr = pid_homology(c.module, x.d.theta_tail);
        if (!hr.h.torsion.empty())
            throw NotEffectiveError(
                "homology: tail homology has torsion; the result is not a lattice tail");
        ExcComp hc;
        hc.module = hr.h;
        hc.beta = induced_beta(c, hr);
        h.tail.lattice = GradedVS(hc.module.free_shifts);
        h.tail.beta = hc.beta;
        out.tail = std::move(hr);
    }
    h.prune();
    try {
        out.obj = validate(std::move(h));
    } catch (const NotInAError& e) {
        // localization is exact, so this can only be an internal bug
        throw std::logic_error(std::string("homology: localized exactness violated: ") +
                               e.what());
    }
    return out;
}

inline EffObj homology(const DGObj& x) { return homology_data(x).obj; }

/// The induced morphism on homology.
inline Mor induced_homology_mor(const Mor& f, const DGHomologyData& hx,
                                const DGHomologyData& hy) {
    Mor out = Mor::zero(hx.obj.hat(), hy.obj.hat(), f.deg);
    // vertex part
    if (hx.vertex.h.dim() > 0 && hy.vertex.incl.q.cols() > 0) {
        QMat moved = f.phi.q * hx.vertex.reps.q;
        auto sol = hy.vertex.incl.q.solve(moved);
        if (!sol) throw std::logic_error("induced_homology_mor: vertex image not a cycle");
        out.phi.q = hy.vertex.proj.q * *sol;
    }
    std::set<int> keys = hx.keys;
    for (int n : hy.keys) keys.insert(n);
    for (int n : f.keys()) keys.insert(n);
    auto slot_map = [&](const HomologyResult& a, const HomologyResult& b, const CompMap& th) {
        GradedMat moved = detail::as_elements(th.lift()).compose(a.reps);
        GradedMat coords = homology_coords(b, moved);
        CompMap r(a.h, b.h, f.deg);
        r.q = coords.q;
        r.reduce();
        return r;
    };
    for (int n : keys) {
        const HomologyResult& a = hx.slots.count(n) ? hx.slots.at(n) : hx.tail;
        const HomologyResult& b = hy.slots.count(n) ? hy.slots.at(n) : hy.tail;
        out.theta[n] = slot_map(a, b, f.theta_at(n));
    }
    out.theta_tail = slot_map(hx.tail, hy.tail, f.theta_tail);
    return out;
}

// ---------------------------------------------------------------------------
// mapping cones and quasi-isomorphisms

struct ConeResult {
    DGObj obj;
    Mor from_dst;  // target -> cone
    Mor to_src;    // cone -> suspended source
};

/// Cone of a degree-0 chain map, with differential (a, b) -> (-da, db - fa).
inline ConeResult cone(const DGObj& x, const DGObj& y, const Mor& f) {
    if (f.deg != 0) throw std::invalid_argument("cone: chain map must have degree 0");
    if (!is_chain_map(x, y, f)) throw std::invalid_argument("cone: not a chain map");
    EffObj sx = validate(x.carrier.shifted(1));
    EffObj ty = validate(y.carrier);
    SumWithMaps sum = direct_sum_many({sx, ty});
    Mor dsx = x.d.shifted(1).scaled(Rat(-1));       // differential of the suspension
    Mor fs = f.src_shifted(1).scaled(Rat(-1));      // -f as a degree -1 map off the suspension
    Mor dcone = sum.ins[0].compose(dsx).compose(sum.proj[0]) +
                sum.ins[1].compose(y.d).compose(sum.proj[1]) +
                sum.ins[1].compose(fs).compose(sum.proj[0]);
    ConeResult out;
    out.obj = DGObj::make(sum.total.hat(), dcone);
    out.from_dst = sum.ins[1];
    out.to_src = sum.proj[0];
    return out;
}

struct QuasiIsoVerdict {
    bool ok = true;
    int lo = 0, hi = 0;
    // first failure: component (0 = tail, -1 = vertex) and degree
    int component = 0;
    int degree = 0;
    std::map<int, bool> per_degree;
};

namespace detail {

inline QMat compmap_slice(const CompMap& f, int t) {
    auto src = f.src.basis_at(t);
    auto dst = f.dst.basis_at(t + f.deg);
    QMat m(dst.size(), src.size());
    for (size_t j = 0; j < src.size(); ++j) {
        auto [gj, pj] = src[j];
        for (size_t i = 0; i < dst.size(); ++i) {
            auto [gi, pi] = dst[i];
            auto p = f.power(gi, gj);
            if (p && pj + *p == pi) m(i, j) = f.q(gi, gj);
        }
    }
    return m;
}

inline QMat vs_slice(const GradedMat& f, int t) {
    std::vector<size_t> rows, cols;
    for (size_t i = 0; i < f.rows(); ++i)
        if (f.dst_degs[i] == t + f.deg) rows.push_back(i);
    for (size_t j = 0; j < f.cols(); ++j)
        if (f.src_degs[j] == t) cols.push_back(j);
    QMat m(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) m(i, j) = f.q(rows[i], cols[j]);
    return m;
}

inline bool slice_is_iso(const QMat& m) {
    return m.rows() == m.cols() && (m.rows() == 0 || m.inverse().has_value());
}

}  // namespace detail

/// Homology isomorphism verdict per degree over a window.
inline QuasiIsoVerdict quasi_iso(const DGObj& x, const DGObj& y, const Mor& f, int lo, int hi) {
    if (!is_chain_map(x, y, f)) throw std::invalid_argument("quasi_iso: not a chain map");
    DGHomologyData hx = homology_data(x), hy = homology_data(y);
    Mor hf = induced_homology_mor(f, hx, hy);
    QuasiIsoVerdict v;
    v.lo = lo;
    v.hi = hi;
    std::set<int> keys = hf.keys();
    for (int t = lo; t <= hi; ++t) {
        bool ok = detail::slice_is_iso(detail::vs_slice(hf.phi, t));
        if (!ok && v.ok) {
            v.component = -1;
            v.degree = t;
        }
        for (int n : keys) {
            if (ok) {
                bool o = detail::slice_is_iso(detail::compmap_slice(hf.theta_at(n), t));
                if (!o) {
                    ok = false;
                    if (v.ok) {
                        v.component = n;
                        v.degree = t;
                    }
                }
            }
        }
        if (ok && !detail::slice_is_iso(detail::compmap_slice(hf.theta_tail, t))) {
            ok = false;
            if (v.ok) {
                v.component = 0;
                v.degree = t;
            }
        }
        v.per_degree[t] = ok;
        if (!ok) v.ok = false;
    }
    return v;
}

// ---------------------------------------------------------------------------
// hom complexes

struct HomComplex {
    int lo = 0, hi = 0;
    std::map<int, std::vector<Mor>> basis;
    std::map<int, QMat> diff;     // matrix of D : degree t -> degree t-1
    std::map<int, size_t> h_dim;  // homology dimensions over the inner window
};

/// Graded maps with differential D f = d_y f + (-1)^{t+1} f d_x.
inline HomComplex hom_complex(const DGObj& x, const DGObj& y, int lo, int hi) {
    HomComplex out;
    out.lo = lo;
    out.hi = hi;
    HomGroup hg = hom_group_hat(x.carrier, y.carrier, lo, hi + 1);
    for (int t = lo; t <= hi + 1; ++t) {
        auto it = hg.basis.find(t);
        if (it != hg.basis.end()) out.basis[t] = it->second;
    }
    auto apply_d = [&](const Mor& f, int t) {
        Mor a = y.d.compose(f);
        Mor b = f.compose(x.d);
        return (t % 2 == 0) ? a - b : a + b;  // (-1)^{t+1}
    };
    auto entries_of = [](const Mor& m, const std::set<int>& ks) {
        std::vector<Rat> v;
        for (size_t i = 0; i < m.phi.q.rows(); ++i)
            for (size_t j = 0; j < m.phi.q.cols(); ++j) v.push_back(m.phi.q(i, j));
        for (int n : ks) {
            CompMap t = m.theta_at(n);
            for (size_t i = 0; i < t.q.rows(); ++i)
                for (size_t j = 0; j < t.q.cols(); ++j) v.push_back(t.q(i, j));
        }
        for (size_t i = 0; i < m.theta_tail.q.rows(); ++i)
            for (size_t j = 0; j < m.theta_tail.q.cols(); ++j) v.push_back(m.theta_tail.q(i, j));
        return v;
    };
    for (int t = lo + 1; t <= hi + 1; ++t) {
        const auto src = out.basis.count(t) ? out.basis[t] : std::vector<Mor>{};
        const auto dst = out.basis.count(t - 1) ? out.basis[t - 1] : std::vector<Mor>{};
        std::set<int> ks;
        for (const Mor& m : dst)
            for (int n : m.keys()) ks.insert(n);
        std::vector<Mor> images;
        for (const Mor& m : src) {
            Mor im = apply_d(m, t);
            for (int n : im.keys()) ks.insert(n);
            images.push_back(im);
        }
        std::vector<std::vector<Rat>> cols;
        size_t rows = 0;
        QMat basis_mat(0, 0);
        {
            std::vector<std::vector<Rat>> bcols;
            for (const Mor& m : dst) bcols.push_back(entries_of(m, ks));
            rows = bcols.empty() ? (images.empty() ? 0 : entries_of(images[0], ks).size())
                                 : bcols[0].size();
            basis_mat = QMat(rows, bcols.size());
            for (size_t c = 0; c < bcols.size(); ++c)
                for (size_t r = 0; r < rows; ++r) basis_mat(r, c) = bcols[c][r];
        }
        QMat dmat(dst.size(), src.size());
        for (size_t c = 0; c < images.size(); ++c) {
            auto v = entries_of(images[c], ks);
            QMat b(rows, 1);
            for (size_t r = 0; r < rows; ++r) b(r, 0) = v[r];
            auto sol = basis_mat.solve(b);
            if (!sol) throw std::logic_error("hom_complex: image not in the hom basis span");
            for (size_t r = 0; r < dst.size(); ++r) dmat(r, c) = (*sol)(r, 0);
        }
        out.diff[t] = dmat;
    }
    for (int t = lo + 1; t <= hi; ++t) {
        size_t dim = out.basis.count(t) ? out.basis[t].size() : 0;
        size_t rk_in = out.diff.count(t + 1) ? out.diff[t + 1].rank() : 0;
        size_t rk_out = out.diff.count(t) ? out.diff[t].rank() : 0;
        out.h_dim[t] = dim - rk_in - rk_out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// derived tensor and the Kunneth sequence

struct KunnethRow {
    int component;  // 0 = tail, -1 = vertex
    int degree;
    size_t tensor_dim, tor_dim, total_dim;
};

struct KunnethReport {
    int lo = 0, hi = 0;
    bool exact = true;
    std::vector<KunnethRow> rows;
};

struct DerivedTensorResult {
    DGObj total;
    EffObj homology_obj;
    KunnethReport report;
};

namespace detail {

inline bool all_components_free(const EffObjHat& x) {
    for (auto& [n, c] : x.exc)
        if (!c.module.torsion.empty()) return false;
    return true;
}

/// Two-term flat resolution of a zero-differential object: the free cover in
/// place, plus suspended syzygy generators hitting the torsion relations.
inline DGObj flat_resolution(const EffObjHat& x) {
    EffObjHat p;
    p.vertex = x.vertex;
    p.tail = x.tail;
    Mor d;
    std::map<int, CompMap> dtheta;
    for (auto& [n, c] : x.exc) {
        std::vector<int> f0 = c.module.gen_degrees();
        std::vector<int> sk;
        for (auto [dgn, k] : c.module.torsion) sk.push_back(dgn - 2 * k + 1);
        std::vector<int> all = f0;
        all.insert(all.end(), sk.begin(), sk.end());
        CompMod pm = CompMod::free_module(all);
        // placement: in degree-sorted order
        std::vector<size_t> loc_f0 = place_items(
            pm, [&] {
                std::vector<std::pair<int, int>> items;
                for (int dg : f0) items.push_back({dg, 0});
                return items;
            }());
        std::vector<size_t> loc_sk;
        {
            std::vector<bool> used(pm.gen_count(), false);
            for (size_t j : loc_f0) used[j] = true;
            for (int dg : sk) {
                for (size_t g = 0; g < pm.gen_count(); ++g)
                    if (!used[g] && pm.gen_degree(g) == dg) {
                        used[g] = true;
                        loc_sk.push_back(g);
                        break;
                    }
            }
        }
        ExcComp pc;
        pc.module = pm;
        pc.beta = GradedMat(x.vertex.degs(), pm.gen_degrees(), 0);
        for (size_t j = 0; j < c.module.gen_count(); ++j)
            for (size_t i = 0; i < x.vertex.dim(); ++i)
                pc.beta.q(i, loc_f0[j]) = c.beta.q(i, j);
        p.exc[n] = pc;
        CompMap dn(pm, pm, -1);
        for (size_t t = 0; t < c.module.torsion.size(); ++t) {
            size_t cover = loc_f0[c.module.free_count() + t];
            dn.q(cover, loc_sk[t]) = Rat(1);  // c^k implied by the grading
        }
        dn.reduce();
        dtheta[n] = dn;
    }
    DGObj out;
    out.carrier = p;
    out.d = Mor::zero(p, p, -1);
    for (auto& [n, dn] : dtheta) out.d.theta[n] = dn;
    out.d.check();
    if (!out.d.compose(out.d).is_zero()) throw std::logic_error("flat_resolution: d^2 != 0");
    return out;
}

}  // namespace detail

/// Tensor of differential graded objects (no resolution).
inline DGObj dg_tensor(const DGObj& x, const DGObj& y) {
    TensorStructure ts = tensor_structure_raw(x.carrier, y.carrier);
    Mor idx = Mor::identity(x.carrier), idy = Mor::identity(y.carrier);
    Mor dz = tensor_mor(ts, ts, x.d, idy) + tensor_mor(ts, ts, idx, y.d);
    DGObj z;
    z.carrier = ts.raw;
    z.d = dz;
    z.d.check();
    if (!z.d.compose(z.d).is_zero()) throw std::logic_error("dg_tensor: d^2 != 0");
    return z;
}

/// Derived tensor product: the first factor is replaced by a flat object
/// (over a hereditary ring any complex is quasi-isomorphic to its homology,
/// so a nonzero differential is first replaced by the homology), then the
/// Kunneth sequence 0 -> H ox H -> H(total) -> Sigma Tor -> 0 is rank-checked
/// degreewise over the window.
inline DerivedTensorResult derived_tensor(const DGObj& x, const DGObj& y, int lo, int hi) {
    EffObj hx = homology(x), hy = homology(y);
    DGObj base = x;
    if (!x.zero_differential() && !detail::all_components_free(x.carrier))
        base = DGObj::from_obj(hx);
    DGObj p = detail::all_components_free(base.carrier) ? base
                                                        : detail::flat_resolution(base.carrier);
    DerivedTensorResult out;
    out.total = dg_tensor(p, y);
    DGHomologyData hz = homology_data(out.total);
    out.homology_obj = hz.obj;

    out.report.lo = lo;
    out.report.hi = hi;
    std::set<int> keys = hx.hat().exc_indices();
    for (int n : hy.hat().exc_indices()) keys.insert(n);
    for (int n : hz.obj.hat().exc_indices()) keys.insert(n);
    auto row = [&](int comp, const CompMod& a, const CompMod& b, const CompMod& z) {
        CompMod tens = comp_tensor(a, b).module;
        CompMod tor = comp_tor(a, b);
        for (int t = lo; t <= hi; ++t) {
            KunnethRow r;
            r.component = comp;
            r.degree = t;
            r.tensor_dim = tens.dim_at(t);
            r.tor_dim = tor.dim_at(t - 1);
            r.total_dim = z.dim_at(t);
            if (r.tensor_dim + r.tor_dim != r.total_dim) out.report.exact = false;
            out.report.rows.push_back(r);
        }
    };
    for (int n : keys)
        row(n, hx.component(n).module, hy.component(n).module,
            hz.obj.component(n).module);
    row(0, CompMod::free_module(hx.hat().tail.lattice.degs()),
        CompMod::free_module(hy.hat().tail.lattice.degs()),
        CompMod::free_module(hz.obj.hat().tail.lattice.degs()));
    {
        GradedVS va = hx.vertex(), vb = hy.vertex();
        GradedVS prod = va.tensor(vb);
        for (int t = lo; t <= hi; ++t) {
            KunnethRow r;
            r.component = -1;
            r.degree = t;
            r.tensor_dim = prod.dim_at(t);
            r.tor_dim = 0;
            r.total_dim = hz.obj.vertex().dim_at(t);
            if (r.tensor_dim != r.total_dim) out.report.exact = false;
            out.report.rows.push_back(r);
        }
    }
    return out;
}

}  // namespace so2alg
