#pragma once

#include <optional>
#include <string>
#include <variant>

#include "so2alg/category_a.hpp"

namespace so2alg {

// ---------------------------------------------------------------------------
// tensor product

/// Tensor product together with the pair placements needed to build maps
/// out of it (vertex pairs and generator pairs per component slot).
struct TensorStructure {
    EffObjHat x, y;
    EffObjHat raw;   // the tensor product as built (not necessarily valid)
    EffObj obj;      // validated form; only set by the valid-object path
    std::vector<std::vector<size_t>> vplace;                  // [i][j] -> vertex index
    std::map<int, std::vector<std::vector<size_t>>> gplace;   // per union key
    std::vector<std::vector<size_t>> gplace_tail;
    std::set<int> keys;

    const std::vector<std::vector<size_t>>& gplace_at(int n) const {
        auto it = gplace.find(n);
        return it == gplace.end() ? gplace_tail : it->second;
    }
};

namespace detail {

/// Deterministic placement of (degree, order) items into a canonical module.
inline std::vector<size_t> place_items(const CompMod& sum,
                                       const std::vector<std::pair<int, int>>& items) {
    std::vector<bool> used(sum.gen_count(), false);
    std::vector<size_t> loc(items.size());
    for (size_t a = 0; a < items.size(); ++a) {
        bool found = false;
        for (size_t g = 0; g < sum.gen_count(); ++g)
            if (!used[g] && sum.gen_degree(g) == items[a].first &&
                sum.gen_order(g) == items[a].second) {
                used[g] = true;
                loc[a] = g;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("place_items: no slot");
    }
    return loc;
}

inline std::vector<size_t> place_degs(const GradedVS& sum, const std::vector<int>& degs) {
    std::vector<bool> used(sum.dim(), false);
    std::vector<size_t> loc(degs.size());
    for (size_t a = 0; a < degs.size(); ++a) {
        bool found = false;
        for (size_t g = 0; g < sum.dim(); ++g)
            if (!used[g] && sum.degs()[g] == degs[a]) {
                used[g] = true;
                loc[a] = g;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("place_degs: no slot");
    }
    return loc;
}

}  // namespace detail

inline TensorStructure tensor_structure_raw(const EffObjHat& x, const EffObjHat& y) {
    TensorStructure ts;
    ts.x = x;
    ts.y = y;
    EffObjHat r;
    r.vertex = x.vertex.tensor(y.vertex);
    // vertex pair placement
    {
        std::vector<int> pair_degs;
        for (int a : x.vertex.degs())
            for (int b : y.vertex.degs()) pair_degs.push_back(a + b);
        std::vector<size_t> loc = detail::place_degs(r.vertex, pair_degs);
        ts.vplace.assign(x.vertex.dim(), std::vector<size_t>(y.vertex.dim()));
        size_t c = 0;
        for (size_t i = 0; i < x.vertex.dim(); ++i)
            for (size_t j = 0; j < y.vertex.dim(); ++j) ts.vplace[i][j] = loc[c++];
    }
    ts.keys = x.exc_indices();
    for (int n : y.exc_indices()) ts.keys.insert(n);

    auto build = [&](const ExcComp& cx, const ExcComp& cy,
                     std::vector<std::vector<size_t>>& place) {
        TensorResult tr = comp_tensor(cx.module, cy.module);
        place.assign(cx.module.gen_count(), std::vector<size_t>(cy.module.gen_count()));
        // origins list is aligned with tr.module's generator enumeration
        for (size_t g = 0; g < tr.origins.size(); ++g) {
            auto [i, j] = tr.origins[g];
            place[i][j] = g;
        }
        ExcComp c;
        c.module = tr.module;
        c.beta = GradedMat(r.vertex.degs(), tr.module.gen_degrees(), 0);
        for (size_t g = 0; g < tr.origins.size(); ++g) {
            auto [i, j] = tr.origins[g];
            if (tr.module.gen_order(g) != 0) continue;  // torsion maps to zero
            for (size_t a = 0; a < x.vertex.dim(); ++a)
                for (size_t b = 0; b < y.vertex.dim(); ++b) {
                    Rat v = cx.beta.q(a, i) * cy.beta.q(b, j);
                    if (!v.is_zero()) c.beta.q(ts.vplace[a][b], g) += v;
                }
        }
        return c;
    };

    for (int n : ts.keys) {
        std::vector<std::vector<size_t>> place;
        r.exc[n] = build(x.component(n), y.component(n), place);
        ts.gplace[n] = std::move(place);
    }
    {
        ExcComp tx{CompMod::free_module(x.tail.lattice.degs()), x.tail.beta};
        ExcComp ty{CompMod::free_module(y.tail.lattice.degs()), y.tail.beta};
        ExcComp c = build(tx, ty, ts.gplace_tail);
        r.tail.lattice = GradedVS(c.module.free_shifts);
        r.tail.beta = c.beta;
    }
    r.prune();
    ts.raw = std::move(r);
    return ts;
}

inline TensorStructure tensor_structure(const EffObjHat& x, const EffObjHat& y) {
    TensorStructure ts = tensor_structure_raw(x, y);
    ts.obj = validate(ts.raw);
    return ts;
}

inline EffObj tensor(const EffObj& x, const EffObj& y) {
    return tensor_structure(x.hat(), y.hat()).obj;
}

/// f tensor g with Koszul signs, between already-built tensor structures.
inline Mor tensor_mor(const TensorStructure& dom, const TensorStructure& cod, const Mor& f,
                      const Mor& g) {
    Mor out = Mor::zero(dom.raw, cod.raw, f.deg + g.deg);
    auto sign = [&](int deg_of_a) {
        return (g.deg % 2 != 0 && deg_of_a % 2 != 0) ? Rat(-1) : Rat(1);
    };
    // vertex part
    for (size_t i = 0; i < dom.x.vertex.dim(); ++i)
        for (size_t j = 0; j < dom.y.vertex.dim(); ++j) {
            Rat s = sign(dom.x.vertex.degs()[i]);
            for (size_t i2 = 0; i2 < cod.x.vertex.dim(); ++i2)
                for (size_t j2 = 0; j2 < cod.y.vertex.dim(); ++j2) {
                    Rat v = f.phi.q(i2, i) * g.phi.q(j2, j) * s;
                    if (!v.is_zero()) out.phi.q(cod.vplace[i2][j2], dom.vplace[i][j]) += v;
                }
        }
    // component parts
    std::set<int> keys = dom.keys;
    for (int n : cod.keys) keys.insert(n);
    for (int n : f.keys()) keys.insert(n);
    for (int n : g.keys()) keys.insert(n);
    auto fill_slot = [&](int n, bool tail) {
        const ExcComp dx = tail ? ExcComp{CompMod::free_module(dom.x.tail.lattice.degs()),
                                          dom.x.tail.beta}
                                : dom.x.component(n);
        const ExcComp dy = tail ? ExcComp{CompMod::free_module(dom.y.tail.lattice.degs()),
                                          dom.y.tail.beta}
                                : dom.y.component(n);
        const auto& dplace = tail ? dom.gplace_tail : dom.gplace_at(n);
        const auto& cplace = tail ? cod.gplace_tail : cod.gplace_at(n);
        CompMap ft = tail ? f.theta_tail : f.theta_at(n);
        CompMap gt = tail ? g.theta_tail : g.theta_at(n);
        CompMod dmod = tail ? CompMod::free_module(dom.raw.tail.lattice.degs())
                            : dom.raw.component(n).module;
        CompMod cmod = tail ? CompMod::free_module(cod.raw.tail.lattice.degs())
                            : cod.raw.component(n).module;
        CompMap th(dmod, cmod, f.deg + g.deg);
        for (size_t i = 0; i < dx.module.gen_count(); ++i)
            for (size_t j = 0; j < dy.module.gen_count(); ++j) {
                Rat s = sign(dx.module.gen_degree(i));
                for (size_t i2 = 0; i2 < ft.dst.gen_count(); ++i2)
                    for (size_t j2 = 0; j2 < gt.dst.gen_count(); ++j2) {
                        Rat v = ft.q(i2, i) * gt.q(j2, j) * s;
                        if (!v.is_zero()) th.q(cplace[i2][j2], dplace[i][j]) += v;
                    }
            }
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill_slot(n, false);
    fill_slot(0, true);
    return out;
}

/// Koszul braiding x tensor y -> y tensor x.
inline Mor braiding(const TensorStructure& xy, const TensorStructure& yx) {
    Mor out = Mor::zero(xy.raw, yx.raw, 0);
    auto sgn = [](int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? Rat(-1) : Rat(1); };
    for (size_t i = 0; i < xy.x.vertex.dim(); ++i)
        for (size_t j = 0; j < xy.y.vertex.dim(); ++j)
            out.phi.q(yx.vplace[j][i], xy.vplace[i][j]) =
                sgn(xy.x.vertex.degs()[i], xy.y.vertex.degs()[j]);
    std::set<int> keys = xy.keys;
    keys.insert(yx.keys.begin(), yx.keys.end());
    auto fill = [&](int n, bool tail) {
        const CompMod mx = tail ? CompMod::free_module(xy.x.tail.lattice.degs())
                                : xy.x.component(n).module;
        const CompMod my = tail ? CompMod::free_module(xy.y.tail.lattice.degs())
                                : xy.y.component(n).module;
        const auto& dplace = tail ? xy.gplace_tail : xy.gplace_at(n);
        const auto& cplace = tail ? yx.gplace_tail : yx.gplace_at(n);
        CompMod dmod = tail ? CompMod::free_module(xy.raw.tail.lattice.degs())
                            : xy.raw.component(n).module;
        CompMod cmod = tail ? CompMod::free_module(yx.raw.tail.lattice.degs())
                            : yx.raw.component(n).module;
        CompMap th(dmod, cmod, 0);
        for (size_t i = 0; i < mx.gen_count(); ++i)
            for (size_t j = 0; j < my.gen_count(); ++j)
                th.q(cplace[j][i], dplace[i][j]) = sgn(mx.gen_degree(i), my.gen_degree(j));
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return out;
}

/// Associator ((x tensor y) tensor z) -> (x tensor (y tensor z)).
inline Mor associator(const TensorStructure& xy, const TensorStructure& xy_z,
                      const TensorStructure& yz, const TensorStructure& x_yz) {
    Mor out = Mor::zero(xy_z.raw, x_yz.raw, 0);
    const GradedVS& ux = xy.x.vertex;
    const GradedVS& uy = xy.y.vertex;
    const GradedVS& uz = xy_z.y.vertex;
    for (size_t i = 0; i < ux.dim(); ++i)
        for (size_t j = 0; j < uy.dim(); ++j)
            for (size_t k = 0; k < uz.dim(); ++k)
                out.phi.q(x_yz.vplace[i][yz.vplace[j][k]],
                          xy_z.vplace[xy.vplace[i][j]][k]) = Rat(1);
    std::set<int> keys = xy_z.keys;
    keys.insert(x_yz.keys.begin(), x_yz.keys.end());
    auto fill = [&](int n, bool tail) {
        auto mod_of = [&](const EffObjHat& h) {
            return tail ? CompMod::free_module(h.tail.lattice.degs()) : h.component(n).module;
        };
        CompMod mx = mod_of(xy.x), my = mod_of(xy.y), mz = mod_of(xy_z.y);
        const auto& pxy = tail ? xy.gplace_tail : xy.gplace_at(n);
        const auto& pxy_z = tail ? xy_z.gplace_tail : xy_z.gplace_at(n);
        const auto& pyz = tail ? yz.gplace_tail : yz.gplace_at(n);
        const auto& px_yz = tail ? x_yz.gplace_tail : x_yz.gplace_at(n);
        CompMod dmod = mod_of(xy_z.raw), cmod = mod_of(x_yz.raw);
        CompMap th(dmod, cmod, 0);
        for (size_t i = 0; i < mx.gen_count(); ++i)
            for (size_t j = 0; j < my.gen_count(); ++j)
                for (size_t k = 0; k < mz.gen_count(); ++k)
                    th.q(px_yz[i][pyz[j][k]], pxy_z[pxy[i][j]][k]) = Rat(1);
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return out;
}

/// Left unit map (unit tensor x) -> x.
inline Mor left_unitor(const TensorStructure& ux) {
    Mor out = Mor::zero(ux.raw, ux.y, 0);
    for (size_t j = 0; j < ux.y.vertex.dim(); ++j) out.phi.q(j, ux.vplace[0][j]) = Rat(1);
    std::set<int> keys = ux.keys;
    auto fill = [&](int n, bool tail) {
        CompMod my = tail ? CompMod::free_module(ux.y.tail.lattice.degs())
                          : ux.y.component(n).module;
        const auto& place = tail ? ux.gplace_tail : ux.gplace_at(n);
        CompMod dmod = tail ? CompMod::free_module(ux.raw.tail.lattice.degs())
                            : ux.raw.component(n).module;
        CompMap th(dmod, my, 0);
        for (size_t j = 0; j < my.gen_count(); ++j) th.q(j, place[0][j]) = Rat(1);
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return out;
}

/// Right unit map (x tensor unit) -> x.
inline Mor right_unitor(const TensorStructure& xu) {
    Mor out = Mor::zero(xu.raw, xu.x, 0);
    for (size_t j = 0; j < xu.x.vertex.dim(); ++j) out.phi.q(j, xu.vplace[j][0]) = Rat(1);
    std::set<int> keys = xu.keys;
    auto fill = [&](int n, bool tail) {
        CompMod mx = tail ? CompMod::free_module(xu.x.tail.lattice.degs())
                          : xu.x.component(n).module;
        const auto& place = tail ? xu.gplace_tail : xu.gplace_at(n);
        CompMod dmod = tail ? CompMod::free_module(xu.raw.tail.lattice.degs())
                            : xu.raw.component(n).module;
        CompMap th(dmod, mx, 0);
        for (size_t j = 0; j < mx.gen_count(); ++j) th.q(j, place[j][0]) = Rat(1);
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return out;
}

// ---------------------------------------------------------------------------
// function objects

/// F(x, y) with the data needed for currying: the pre-coreflection object,
/// the hom generators per slot, and the vertex hom placement.
struct FunctionStructure {
    EffObjHat x, y;
    EffObjHat pre;
    GammaResult gamma;
    // hom_vplace[b][a]: index of the elementary map (x-basis a -> y-basis b)
    std::vector<std::vector<size_t>> hom_vplace;
    std::map<int, HomResult> homs;
    HomResult homs_tail;
    std::set<int> keys;

    const HomResult& homs_at(int n) const {
        auto it = homs.find(n);
        return it == homs.end() ? homs_tail : it->second;
    }
    const EffObj& obj() const { return gamma.obj; }
};

inline FunctionStructure function_structure(const EffObjHat& x, const EffObjHat& y) {
    FunctionStructure fs;
    fs.x = x;
    fs.y = y;
    EffObjHat pre;
    pre.vertex = GradedVS([&] {
        std::vector<int> d;
        for (int b : y.vertex.degs())
            for (int a : x.vertex.degs()) d.push_back(b - a);
        return d;
    }());
    {
        std::vector<int> pair_degs;
        for (int b : y.vertex.degs())
            for (int a : x.vertex.degs()) pair_degs.push_back(b - a);
        std::vector<size_t> loc = detail::place_degs(pre.vertex, pair_degs);
        fs.hom_vplace.assign(y.vertex.dim(), std::vector<size_t>(x.vertex.dim()));
        size_t c = 0;
        for (size_t b = 0; b < y.vertex.dim(); ++b)
            for (size_t a = 0; a < x.vertex.dim(); ++a) fs.hom_vplace[b][a] = loc[c++];
    }
    fs.keys = x.exc_indices();
    for (int n : y.exc_indices()) fs.keys.insert(n);

    auto build = [&](const ExcComp& cx, const ExcComp& cy, HomResult& hout) {
        hout = comp_hom(cx.module, cy.module);
        ExcComp c;
        c.module = hout.module;
        c.beta = GradedMat(pre.vertex.degs(), hout.module.gen_degrees(), 0);
        // invert the free block of cx.beta (rationally; powers are implied)
        size_t nf = cx.module.free_count();
        if (nf > 0) {
            QMat bx(x.vertex.dim(), nf);
            for (size_t i = 0; i < x.vertex.dim(); ++i)
                for (size_t j = 0; j < nf; ++j) bx(i, j) = cx.beta.q(i, j);
            auto inv = bx.inverse();
            if (!inv) throw std::logic_error("function_structure: singular structure map");
            for (size_t g = 0; g < hout.gens.size(); ++g) {
                if (hout.module.gen_order(g) != 0) continue;  // torsion part localizes to zero
                GradedMat mg = cy.beta.compose(hout.gens[g].lift());
                // restrict to the free columns of cx and compose with the inverse
                QMat mfree(y.vertex.dim(), nf);
                for (size_t b = 0; b < y.vertex.dim(); ++b)
                    for (size_t j = 0; j < nf; ++j) mfree(b, j) = mg.q(b, j);
                QMat coords = mfree * *inv;  // rows: Uy basis, cols: Ux basis
                for (size_t b = 0; b < y.vertex.dim(); ++b)
                    for (size_t a = 0; a < x.vertex.dim(); ++a)
                        c.beta.q(fs.hom_vplace[b][a], g) = coords(b, a);
            }
        }
        return c;
    };

    for (int n : fs.keys) {
        HomResult h;
        pre.exc[n] = build(x.component(n), y.component(n), h);
        fs.homs[n] = std::move(h);
    }
    {
        ExcComp tx{CompMod::free_module(x.tail.lattice.degs()), x.tail.beta};
        ExcComp ty{CompMod::free_module(y.tail.lattice.degs()), y.tail.beta};
        ExcComp c = build(tx, ty, fs.homs_tail);
        if (!c.module.torsion.empty())
            throw std::logic_error("function_structure: torsion in tail hom");
        pre.tail.lattice = GradedVS(c.module.free_shifts);
        pre.tail.beta = c.beta;
    }
    fs.pre = pre;
    fs.gamma = gamma_h(pre);
    return fs;
}

inline EffObj function_obj(const EffObj& x, const EffObj& y) {
    return function_structure(x.hat(), y.hat()).obj();
}

inline EffObj dual(const EffObj& x) { return function_obj(x, unit_obj()); }

/// Curry h : x tensor y -> z into x -> F(y, z).
inline Mor curry(const Mor& h, const TensorStructure& ts, const FunctionStructure& fs) {
    // map into the pre-coreflection object first
    Mor pre = Mor::zero(ts.x, fs.pre, h.deg);
    const GradedVS& ux = ts.x.vertex;
    const GradedVS& uy = ts.y.vertex;
    for (size_t i = 0; i < ux.dim(); ++i)
        for (size_t j = 0; j < uy.dim(); ++j)
            for (size_t k = 0; k < fs.y.vertex.dim(); ++k) {
                const Rat& v = h.phi.q(k, ts.vplace[i][j]);
                if (!v.is_zero()) pre.phi.q(fs.hom_vplace[k][j], i) += v;
            }
    std::set<int> keys = ts.keys;
    keys.insert(fs.keys.begin(), fs.keys.end());
    for (int n : h.keys()) keys.insert(n);
    auto fill = [&](int n, bool tail) {
        auto mod_of = [&](const EffObjHat& hh) {
            return tail ? CompMod::free_module(hh.tail.lattice.degs()) : hh.component(n).module;
        };
        CompMod mx = mod_of(ts.x), my = mod_of(ts.y);
        const auto& place = tail ? ts.gplace_tail : ts.gplace_at(n);
        const HomResult& homs = tail ? fs.homs_tail : fs.homs_at(n);
        CompMap ht = tail ? h.theta_tail : h.theta_at(n);
        CompMod pmod = tail ? CompMod::free_module(fs.pre.tail.lattice.degs())
                            : fs.pre.component(n).module;
        CompMap th(mx, pmod, h.deg);
        for (size_t i = 0; i < mx.gen_count(); ++i) {
            // the curried map m_i : N_y -> N_z, g_j -> h(pair(i, j)); its
            // coordinate along an elementary hom generator is the matrix
            // entry at that generator's unique nonzero position
            for (size_t g = 0; g < homs.gens.size(); ++g) {
                const CompMap& gm = homs.gens[g];
                Rat coord;
                bool found = false;
                for (size_t k = 0; k < gm.dst.gen_count() && !found; ++k)
                    for (size_t j = 0; j < gm.src.gen_count() && !found; ++j) {
                        if (gm.q(k, j).is_zero()) continue;
                        coord = ht.q(k, place[i][j]);
                        found = true;
                    }
                if (!coord.is_zero()) th.q(g, i) = coord;
            }
        }
        th.reduce();
        if (tail) pre.theta_tail = th;
        else
            pre.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return factor_through_gamma(pre, fs.gamma);
}

/// Uncurry g : x -> F(y, z) into x tensor y -> z.
inline Mor uncurry(const Mor& g, const TensorStructure& ts, const FunctionStructure& fs) {
    Mor ghat = fs.gamma.counit.compose(g);  // x -> pre
    Mor out = Mor::zero(ts.raw, fs.y, g.deg);
    const GradedVS& ux = ts.x.vertex;
    const GradedVS& uy = ts.y.vertex;
    for (size_t i = 0; i < ux.dim(); ++i)
        for (size_t j = 0; j < uy.dim(); ++j)
            for (size_t k = 0; k < fs.y.vertex.dim(); ++k) {
                const Rat& v = ghat.phi.q(fs.hom_vplace[k][j], i);
                if (!v.is_zero()) out.phi.q(k, ts.vplace[i][j]) += v;
            }
    std::set<int> keys = ts.keys;
    keys.insert(fs.keys.begin(), fs.keys.end());
    for (int n : ghat.keys()) keys.insert(n);
    auto fill = [&](int n, bool tail) {
        auto mod_of = [&](const EffObjHat& hh) {
            return tail ? CompMod::free_module(hh.tail.lattice.degs()) : hh.component(n).module;
        };
        CompMod mx = mod_of(ts.x), my = mod_of(ts.y), mz = mod_of(fs.y);
        const auto& place = tail ? ts.gplace_tail : ts.gplace_at(n);
        const HomResult& homs = tail ? fs.homs_tail : fs.homs_at(n);
        CompMap gt = tail ? ghat.theta_tail : ghat.theta_at(n);
        CompMod dmod = tail ? CompMod::free_module(ts.raw.tail.lattice.degs())
                            : ts.raw.component(n).module;
        CompMap th(dmod, mz, g.deg);
        for (size_t i = 0; i < mx.gen_count(); ++i)
            for (size_t hg = 0; hg < homs.gens.size(); ++hg) {
                const Rat& coord = gt.q(hg, i);
                if (coord.is_zero()) continue;
                const CompMap& gm = homs.gens[hg];
                for (size_t k = 0; k < mz.gen_count(); ++k)
                    for (size_t j = 0; j < my.gen_count(); ++j) {
                        Rat v = coord * gm.q(k, j);
                        if (!v.is_zero()) th.q(k, place[i][j]) += v;
                    }
            }
        th.reduce();
        if (tail) out.theta_tail = th;
        else
            out.theta[n] = th;
    };
    for (int n : keys) fill(n, false);
    fill(0, true);
    return out;
}

/// Evaluation F(x, y) tensor x -> y.
inline Mor evaluation(const FunctionStructure& fs, const TensorStructure& fx) {
    return uncurry(Mor::identity(fs.obj().hat()), fx, fs);
}

// ---------------------------------------------------------------------------
// isomorphism testing and duals

inline bool is_isomorphism(const Mor& f) {
    return kernel(f).obj == zero_obj() && cokernel(f).obj == zero_obj();
}

/// The canonical comparison F(a, unit) tensor b -> F(a, b).
inline Mor canonical_dual_map(const EffObj& a, const EffObj& b, const FunctionStructure& da,
                              const FunctionStructure& fab, const TensorStructure& da_b) {
    // build ((da tensor b) tensor a) -> b and curry over a
    TensorStructure dab_a = tensor_structure(da_b.obj.hat(), a.hat());
    // route: ((da @ b) @ a) -> ((da @ a) @ b) -> unit @ b -> b
    TensorStructure b_a = tensor_structure(b.hat(), a.hat());
    TensorStructure a_b = tensor_structure(a.hat(), b.hat());
    TensorStructure da_ba = tensor_structure(da.obj().hat(), b_a.obj.hat());
    TensorStructure da_ab = tensor_structure(da.obj().hat(), a_b.obj.hat());
    TensorStructure da_a = tensor_structure(da.obj().hat(), a.hat());
    TensorStructure daa_b = tensor_structure(da_a.obj.hat(), b.hat());
    Mor assoc1 = associator(da_b, dab_a, b_a, da_ba);       // (da@b)@a -> da@(b@a)
    Mor swap = tensor_mor(da_ba, da_ab, Mor::identity(da.obj().hat()), braiding(b_a, a_b));
    // da@(a@b) -> (da@a)@b is the inverse associator
    Mor assoc2 = associator(da_a, daa_b, a_b, da_ab);       // (da@a)@b -> da@(a@b)
    // invert assoc2 by transposing the permutation (entries are 0/1/独 signs)
    Mor assoc2_inv = Mor::zero(da_ab.obj.hat(), daa_b.obj.hat(), 0);
    assoc2_inv.phi.q = assoc2.phi.q.transposed();
    {
        std::set<int> ks = assoc2.keys();
        for (int n : ks) {
            CompMap t = assoc2.theta_at(n);
            CompMap inv(t.dst, t.src, 0);
            inv.q = t.q.transposed();
            inv.reduce();
            assoc2_inv.theta[n] = inv;
        }
        CompMap t = assoc2.theta_tail;
        CompMap inv(t.dst, t.src, 0);
        inv.q = t.q.transposed();
        inv.reduce();
        assoc2_inv.theta_tail = inv;
    }
    Mor ev = evaluation(da, da_a);  // da @ a -> unit
    TensorStructure u_b = tensor_structure(unit_obj().hat(), b.hat());
    Mor ev_b = tensor_mor(daa_b, u_b, ev, Mor::identity(b.hat()));
    Mor lu = left_unitor(u_b);
    Mor total = lu.compose(ev_b).compose(assoc2_inv).compose(swap).compose(assoc1);
    // total: (da@b)@a -> b; curry over a
    return curry(total, dab_a, fab);
}

struct DualityWitness {
    Mor coev;  // unit -> a tensor Da
    Mor ev;    // Da tensor a -> unit
};

struct DualityRefusal {
    std::string reason;
    std::string probe;   // which test object exposed the failure
    int component = 0;
    int degree = 0;
};

struct DualityDecision {
    std::optional<DualityWitness> witness;
    std::optional<DualityRefusal> refusal;
    bool dualizable() const { return witness.has_value(); }
};

/// Searches for a coevaluation satisfying both triangle identities exactly,
/// then corroborates with the canonical-map criterion on a probe family.
inline DualityDecision is_dualizable(const EffObj& a) {
    DualityDecision out;
    FunctionStructure da = function_structure(a.hat(), unit_obj().hat());
    EffObj d = da.obj();
    TensorStructure da_a = tensor_structure(d.hat(), a.hat());
    TensorStructure a_da = tensor_structure(a.hat(), d.hat());
    Mor ev = evaluation(da, da_a);

    // candidate coevaluations
    HomGroup cands = hom_group(unit_obj(), a_da.obj, 0, 0);
    std::vector<Mor> basis;
    if (cands.basis.count(0)) basis = cands.basis[0];

    // triangle 1: a = unit@a -> (a@da)@a -> a@(da@a) -> a@unit -> a
    TensorStructure u_a = tensor_structure(unit_obj().hat(), a.hat());
    TensorStructure ada_a = tensor_structure(a_da.obj.hat(), a.hat());
    TensorStructure a_daa = tensor_structure(a.hat(), da_a.obj.hat());
    TensorStructure a_u = tensor_structure(a.hat(), unit_obj().hat());
    Mor assoc1 = associator(a_da, ada_a, da_a, a_daa);
    Mor ru = right_unitor(a_u);
    // triangle 2: da = da@unit -> da@(a@da) -> (da@a)@da -> unit@da -> da
    TensorStructure d_u = tensor_structure(d.hat(), unit_obj().hat());
    TensorStructure d_ada = tensor_structure(d.hat(), a_da.obj.hat());
    TensorStructure daa_d = tensor_structure(da_a.obj.hat(), d.hat());
    TensorStructure u_d = tensor_structure(unit_obj().hat(), d.hat());
    Mor assoc2 = associator(da_a, daa_d, a_da, d_ada);
    Mor lu2 = left_unitor(u_d);

    auto triangle1 = [&](const Mor& coev) {
        Mor cv_a = tensor_mor(u_a, ada_a, coev, Mor::identity(a.hat()));
        Mor a_ev = tensor_mor(a_daa, a_u, Mor::identity(a.hat()), ev);
        return ru.compose(a_ev).compose(assoc1).compose(cv_a);  // unit@a -> a
    };
    auto triangle2 = [&](const Mor& coev) {
        Mor d_cv = tensor_mor(d_u, d_ada, Mor::identity(d.hat()), coev);
        // invert assoc2: permutation morphism
        Mor inv = Mor::zero(d_ada.obj.hat(), daa_d.obj.hat(), 0);
        inv.phi.q = assoc2.phi.q.transposed();
        for (int n : assoc2.keys()) {
            CompMap t = assoc2.theta_at(n);
            CompMap ti(t.dst, t.src, 0);
            ti.q = t.q.transposed();
            ti.reduce();
            inv.theta[n] = ti;
        }
        {
            CompMap t = assoc2.theta_tail;
            CompMap ti(t.dst, t.src, 0);
            ti.q = t.q.transposed();
            ti.reduce();
            inv.theta_tail = ti;
        }
        Mor ev_d = tensor_mor(daa_d, u_d, ev, Mor::identity(d.hat()));
        return lu2.compose(ev_d).compose(inv).compose(d_cv);  // d@unit -> d
    };

    // targets: the unit maps themselves
    Mor target1 = left_unitor(u_a);   // unit@a -> a
    Mor target2 = right_unitor(d_u);  // d@unit -> d

    // linear solve over the candidate basis
    auto entries_of = [](const Mor& m) {
        std::vector<Rat> v;
        for (size_t i = 0; i < m.phi.q.rows(); ++i)
            for (size_t j = 0; j < m.phi.q.cols(); ++j) v.push_back(m.phi.q(i, j));
        for (auto& [n, t] : m.theta)
            for (size_t i = 0; i < t.q.rows(); ++i)
                for (size_t j = 0; j < t.q.cols(); ++j) v.push_back(t.q(i, j));
        for (size_t i = 0; i < m.theta_tail.q.rows(); ++i)
            for (size_t j = 0; j < m.theta_tail.q.cols(); ++j)
                v.push_back(m.theta_tail.q(i, j));
        return v;
    };
    // make key sets uniform before extracting entries
    auto normalize_keys = [&](Mor m, const std::set<int>& ks) {
        for (int n : ks)
            if (!m.theta.count(n)) m.theta[n] = m.theta_at(n);
        return m;
    };
    std::set<int> ks1 = target1.keys(), ks2 = target2.keys();
    for (const Mor& b : basis) {
        Mor t1 = triangle1(b);
        for (int n : t1.keys()) ks1.insert(n);
        Mor t2 = triangle2(b);
        for (int n : t2.keys()) ks2.insert(n);
    }
    std::vector<Rat> rhs;
    {
        auto v1 = entries_of(normalize_keys(target1, ks1));
        auto v2 = entries_of(normalize_keys(target2, ks2));
        rhs = v1;
        rhs.insert(rhs.end(), v2.begin(), v2.end());
    }
    QMat sys(rhs.size(), basis.size());
    for (size_t c = 0; c < basis.size(); ++c) {
        auto v1 = entries_of(normalize_keys(triangle1(basis[c]), ks1));
        auto v2 = entries_of(normalize_keys(triangle2(basis[c]), ks2));
        for (size_t r = 0; r < v1.size(); ++r) sys(r, c) = v1[r];
        for (size_t r = 0; r < v2.size(); ++r) sys(v1.size() + r, c) = v2[r];
    }
    QMat b(rhs.size(), 1);
    for (size_t r = 0; r < rhs.size(); ++r) b(r, 0) = rhs[r];
    auto sol = sys.solve(b);
    if (sol) {
        Mor coev = Mor::zero(unit_obj().hat(), a_da.obj.hat(), 0);
        for (size_t c = 0; c < basis.size(); ++c)
            if (!(*sol)(c, 0).is_zero()) coev = coev + basis[c].scaled((*sol)(c, 0));
        out.witness = DualityWitness{coev, ev};
        return out;
    }

    // refusal: corroborate with the canonical-map criterion on probes
    std::vector<std::pair<std::string, EffObj>> probes = {
        {"S0", unit_obj()},
        {"sphere:1=1", sphere({{1, 1}})},
        {"sigma:1", sigma(1)},
        {"sigma:2", sigma(2)},
        {"self", a},
    };
    for (auto& [name, bobj] : probes) {
        FunctionStructure fab = function_structure(a.hat(), bobj.hat());
        TensorStructure da_b = tensor_structure(d.hat(), bobj.hat());
        Mor can = canonical_dual_map(a, bobj, da, fab, da_b);
        if (!is_isomorphism(can)) {
            DualityRefusal r;
            r.reason = "no coevaluation solves the triangle identities";
            r.probe = name;
            // locate an obstruction degree/component
            EffObj src = da_b.obj, dst = fab.obj();
            for (int n : dst.hat().exc_indices()) {
                CompMod ms = src.component(n).module, md = dst.component(n).module;
                for (int t = -10; t <= 10; ++t)
                    if (ms.dim_at(t) != md.dim_at(t)) {
                        r.component = n;
                        r.degree = t;
                        out.refusal = r;
                        return out;
                    }
            }
            out.refusal = r;
            return out;
        }
    }
    out.refusal = DualityRefusal{"no coevaluation solves the triangle identities",
                                 "(none)", 0, 0};
    return out;
}

// ---------------------------------------------------------------------------
// tensor-hom adjunction check and the R functor

struct TensorHomReport {
    int lo = 0, hi = 0;
    bool dims_equal = true;
    bool bijection_ok = true;
    std::map<int, std::pair<size_t, size_t>> dims;  // degree -> (lhs, rhs)
};

inline TensorHomReport check_tensor_hom(const EffObj& x, const EffObj& y, const EffObj& z,
                                        int lo, int hi) {
    TensorHomReport rep;
    rep.lo = lo;
    rep.hi = hi;
    TensorStructure ts = tensor_structure(x.hat(), y.hat());
    FunctionStructure fs = function_structure(y.hat(), z.hat());
    HomGroup lhs = hom_group(ts.obj, z, lo, hi);
    HomGroup rhs = hom_group(x, fs.obj(), lo, hi);
    for (int t = lo; t <= hi; ++t) {
        rep.dims[t] = {lhs.dim_at(t), rhs.dim_at(t)};
        if (lhs.dim_at(t) != rhs.dim_at(t)) rep.dims_equal = false;
    }
    // the canonical bijection on basis elements: curry then uncurry returns
    // the original morphism
    for (auto& [t, ms] : lhs.basis)
        for (const Mor& m : ms) {
            Mor c = curry(m, ts, fs);
            Mor back = uncurry(c, ts, fs);
            if (!back.same_entries(m)) rep.bijection_ok = false;
        }
    return rep;
}

/// R = Hom(unit, -): the vertex-level homotopy of an object.
inline HomGroup r_functor(const EffObj& x, int lo, int hi) {
    return hom_group(unit_obj(), x, lo, hi);
}

}  // namespace so2alg
