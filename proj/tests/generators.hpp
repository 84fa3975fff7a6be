#pragma once

// Randomized object and morphism generators shared by the unit and
// acceptance suites.

#include <random>

#include "so2alg/dg_layer.hpp"

namespace so2alg::gen {

inline std::map<int, int> random_nu(std::mt19937& rng, int max_idx = 4, int max_val = 2) {
    std::uniform_int_distribution<int> idx(1, max_idx), val(-max_val, max_val), cnt(0, 2);
    std::map<int, int> nu;
    for (int i = cnt(rng); i-- > 0;) nu[idx(rng)] = val(rng);
    return nu;
}

/// Random valid object: a sum of shifted spheres and cells with the vertex
/// basis twisted by a random invertible transformation.
inline EffObj random_eff_obj(std::mt19937& rng, bool allow_torsion = true) {
    std::uniform_int_distribution<int> shift(-2, 2), idx(1, 4), cnt(1, 2), tor(0, 2), coin(0, 1);
    EffObj x = sphere(random_nu(rng), shift(rng));
    for (int i = cnt(rng) - 1; i-- > 0;)
        x = direct_sum_obj(x, sphere(random_nu(rng), shift(rng)));
    if (allow_torsion)
        for (int i = tor(rng); i-- > 0;) x = direct_sum_obj(x, sigma(idx(rng), shift(rng)));
    // twist the vertex coordinates degreewise (unipotent, hence invertible)
    EffObjHat h = x.hat();
    const auto& ud = h.vertex.degs();
    QMat t = QMat::identity(ud.size());
    for (size_t a = 0; a < ud.size(); ++a)
        for (size_t b = a + 1; b < ud.size(); ++b)
            if (ud[a] == ud[b] && coin(rng)) t(a, b) = Rat(1 + (rng() % 2));
    for (auto& [n, c] : h.exc) c.beta.q = t * c.beta.q;
    h.tail.beta.q = t * h.tail.beta.q;
    return validate(std::move(h));
}

/// Random object of the enlarged category within the coreflection's
/// guaranteed class: a valid object with the vertex enlarged and/or lattice
/// generators dropped, so the localized structure map stays injective.
inline EffObjHat random_hat_obj(std::mt19937& rng) {
    std::uniform_int_distribution<int> shift(-2, 2), coin(0, 1);
    EffObjHat h = random_eff_obj(rng).hat();
    if (coin(rng)) {
        // enlarge the vertex by a line the structure maps never reach
        int d = shift(rng);
        GradedVS bigger = h.vertex.direct_sum(GradedVS::line(d));
        // re-embed rows: find the slot layout of the old basis inside the new
        std::vector<bool> used(bigger.dim(), false);
        std::vector<size_t> loc(h.vertex.dim());
        for (size_t i = 0; i < h.vertex.dim(); ++i) {
            for (size_t k = 0; k < bigger.dim(); ++k)
                if (!used[k] && bigger.degs()[k] == h.vertex.degs()[i]) {
                    used[k] = true;
                    loc[i] = k;
                    break;
                }
        }
        auto lift = [&](GradedMat& b) {
            GradedMat nb(bigger.degs(), b.src_degs, 0);
            for (size_t i = 0; i < b.rows(); ++i)
                for (size_t j = 0; j < b.cols(); ++j) nb.q(loc[i], j) = b.q(i, j);
            b = nb;
        };
        for (auto& [n, c] : h.exc) lift(c.beta);
        lift(h.tail.beta);
        h.vertex = bigger;
    }
    if (coin(rng) && !h.exc.empty()) {
        // drop one lattice generator from the first exceptional component
        auto& c = h.exc.begin()->second;
        if (c.module.free_count() > 0) {
            std::vector<int> fs(c.module.free_shifts.begin() + 1, c.module.free_shifts.end());
            CompMod smaller(fs, c.module.torsion);
            GradedMat nb(h.vertex.degs(), smaller.gen_degrees(), 0);
            for (size_t i = 0; i < nb.rows(); ++i) {
                for (size_t j = 0; j + 1 < c.module.free_count(); ++j)
                    nb.q(i, j) = c.beta.q(i, j + 1);
                for (size_t j = 0; j < c.module.torsion.size(); ++j)
                    nb.q(i, smaller.free_count() + j) = Rat(0);
            }
            c.module = smaller;
            c.beta = nb;
        }
    }
    h.shape_check();
    return h;
}

/// Random morphism: a rational combination of hom basis elements.
inline Mor random_mor(std::mt19937& rng, const EffObj& x, const EffObj& y, int deg) {
    HomGroup h = hom_group(x, y, deg, deg);
    Mor m = Mor::zero(x.hat(), y.hat(), deg);
    auto it = h.basis.find(deg);
    if (it == h.basis.end()) return m;
    std::uniform_int_distribution<int> val(-2, 2);
    for (const Mor& b : it->second) m = m + b.scaled(Rat(val(rng)));
    return m;
}

/// Random differential graded object: zero-differential objects, their
/// suspensions, and cones of self-maps (whose tails stay lattice-shaped).
inline DGObj random_dg(std::mt19937& rng) {
    EffObj x = random_eff_obj(rng);
    DGObj a = DGObj::from_obj(x);
    switch (rng() % 3) {
        case 0:
            return a;
        case 1:
            return a.suspended(static_cast<int>(rng() % 3) - 1);
        default: {
            Mor f = random_mor(rng, x, x, 0);
            return cone(a, a, f).obj;
        }
    }
}

}  // namespace so2alg::gen
