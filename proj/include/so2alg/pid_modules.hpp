#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "so2alg/graded.hpp"

namespace so2alg {

/// Finitely generated graded Q[c]-module in canonical form:
/// a multiset of free summands Q[c]<d> and torsion summands Q[c]/(c^k)<d>.
/// Generator enumeration: free generators first, then torsion, each sorted.
struct CompMod {
    std::vector<int> free_shifts;
    std::vector<std::pair<int, int>> torsion;  // (shift d, order k >= 1)

    CompMod() = default;
    CompMod(std::vector<int> f, std::vector<std::pair<int, int>> t)
        : free_shifts(std::move(f)), torsion(std::move(t)) {
        for (auto& [d, k] : torsion)
            if (k < 1) throw std::invalid_argument("CompMod: torsion order must be >= 1");
        std::sort(free_shifts.begin(), free_shifts.end());
        std::sort(torsion.begin(), torsion.end());
    }

    static CompMod free_module(std::vector<int> shifts) { return CompMod(std::move(shifts), {}); }
    static CompMod zero() { return CompMod(); }

    size_t free_count() const { return free_shifts.size(); }
    size_t gen_count() const { return free_shifts.size() + torsion.size(); }
    bool is_zero() const { return free_shifts.empty() && torsion.empty(); }

    int gen_degree(size_t i) const {
        return i < free_shifts.size() ? free_shifts[i] : torsion[i - free_shifts.size()].first;
    }
    /// 0 for free generators, c-power annihilator order for torsion ones.
    int gen_order(size_t i) const {
        return i < free_shifts.size() ? 0 : torsion[i - free_shifts.size()].second;
    }
    std::vector<int> gen_degrees() const {
        std::vector<int> d;
        d.reserve(gen_count());
        for (size_t i = 0; i < gen_count(); ++i) d.push_back(gen_degree(i));
        return d;
    }

    size_t dim_at(int t) const {
        size_t n = 0;
        for (int d : free_shifts)
            if (t <= d && (d - t) % 2 == 0) ++n;
        for (auto [d, k] : torsion)
            if (t <= d && (d - t) % 2 == 0 && (d - t) / 2 < k) ++n;
        return n;
    }

    /// Basis of the degree-t slice as (generator index, c-power) pairs.
    std::vector<std::pair<size_t, int>> basis_at(int t) const {
        std::vector<std::pair<size_t, int>> b;
        for (size_t i = 0; i < gen_count(); ++i) {
            int d = gen_degree(i), k = gen_order(i);
            if (t > d || (d - t) % 2 != 0) continue;
            int p = (d - t) / 2;
            if (k == 0 || p < k) b.push_back({i, p});
        }
        return b;
    }

    CompMod shifted(int s) const {
        CompMod r = *this;
        for (int& d : r.free_shifts) d += s;
        for (auto& [d, k] : r.torsion) d += s;
        return r;
    }

    CompMod direct_sum(const CompMod& o) const {
        CompMod r = *this;
        r.free_shifts.insert(r.free_shifts.end(), o.free_shifts.begin(), o.free_shifts.end());
        r.torsion.insert(r.torsion.end(), o.torsion.begin(), o.torsion.end());
        std::sort(r.free_shifts.begin(), r.free_shifts.end());
        std::sort(r.torsion.begin(), r.torsion.end());
        return r;
    }

    /// Torsion relations c^k * g = 0 as a graded matrix into the generator stack.
    GradedMat relations() const {
        std::vector<int> rel_degs;
        for (auto [d, k] : torsion) rel_degs.push_back(d - 2 * k);
        GradedMat rel(gen_degrees(), rel_degs, 0);
        for (size_t t = 0; t < torsion.size(); ++t)
            rel.q(free_shifts.size() + t, t) = Rat(1);
        return rel;
    }

    bool operator==(const CompMod& o) const {
        return free_shifts == o.free_shifts && torsion == o.torsion;
    }
    bool operator!=(const CompMod& o) const { return !(*this == o); }
};

/// Graded Q[c]-linear map between canonical modules. Entry (i,j) is the
/// coefficient of c^p * dst_gen_i in the image of src_gen_j, with p implied
/// by the grading and entries stored reduced modulo torsion orders.
struct CompMap {
    CompMod src, dst;
    int deg = 0;
    QMat q;

    CompMap() = default;
    CompMap(CompMod s, CompMod d, int dg)
        : src(std::move(s)), dst(std::move(d)), deg(dg), q(dst.gen_count(), src.gen_count()) {}

    static CompMap identity(const CompMod& m) {
        CompMap f(m, m, 0);
        f.q = QMat::identity(m.gen_count());
        return f;
    }

    std::optional<int> power(size_t i, size_t j) const {
        int num = dst.gen_degree(i) - src.gen_degree(j) - deg;
        if (num % 2 != 0) return std::nullopt;
        return num / 2;
    }

    /// Zeroes entries killed by grading or torsion truncation.
    CompMap& reduce() {
        for (size_t i = 0; i < q.rows(); ++i)
            for (size_t j = 0; j < q.cols(); ++j) {
                if (q(i, j).is_zero()) continue;
                auto p = power(i, j);
                int l = dst.gen_order(i);
                if (!p || *p < 0 || (l > 0 && *p >= l)) q(i, j) = Rat(0);
            }
        return *this;
    }

    /// Checks well-definedness on torsion generators.
    void validate() const {
        for (size_t j = 0; j < q.cols(); ++j) {
            int k = src.gen_order(j);
            if (k == 0) continue;
            for (size_t i = 0; i < q.rows(); ++i) {
                if (q(i, j).is_zero()) continue;
                auto p = power(i, j);
                int l = dst.gen_order(i);
                if (l == 0 || (p && *p + k < l))
                    throw std::invalid_argument("CompMap: not well defined on torsion");
            }
        }
    }

    bool is_zero() const { return q.is_zero(); }

    CompMap compose(const CompMap& g) const {  // *this after g
        assert(g.dst == src);
        CompMap r(g.src, dst, deg + g.deg);
        r.q = q * g.q;
        r.reduce();
        return r;
    }

    CompMap operator+(const CompMap& o) const {
        assert(src == o.src && dst == o.dst && deg == o.deg);
        CompMap r = *this;
        r.q = q + o.q;
        return r;
    }
    CompMap scaled(const Rat& s) const {
        CompMap r = *this;
        r.q = q.scaled(s);
        return r;
    }
    CompMap shifted(int s) const {
        CompMap r = *this;
        r.src = r.src.shifted(s);
        r.dst = r.dst.shifted(s);
        return r;
    }

    bool operator==(const CompMap& o) const {
        return src == o.src && dst == o.dst && deg == o.deg && q == o.q;
    }

    /// Lift to the free covers (same rational matrix, generator degree lists).
    GradedMat lift() const {
        GradedMat m(dst.gen_degrees(), src.gen_degrees(), deg);
        m.q = q;
        return m;
    }

    static CompMap direct_sum(const CompMap& a, const CompMap& b) {
        assert(a.deg == b.deg);
        CompMod s = a.src.direct_sum(b.src), d = a.dst.direct_sum(b.dst);
        CompMap r(s, d, a.deg);
        // generator order changes under the sorted re-enumeration
        auto place = [](const CompMod& sum, const CompMod& first, const CompMod& second) {
            std::vector<size_t> loc(first.gen_count() + second.gen_count());
            std::vector<bool> used(sum.gen_count(), false);
            auto find_slot = [&](int d, int k) {
                for (size_t i = 0; i < sum.gen_count(); ++i)
                    if (!used[i] && sum.gen_degree(i) == d && sum.gen_order(i) == k) {
                        used[i] = true;
                        return i;
                    }
                throw std::logic_error("direct_sum: generator placement failed");
            };
            for (size_t j = 0; j < first.gen_count(); ++j)
                loc[j] = find_slot(first.gen_degree(j), first.gen_order(j));
            for (size_t j = 0; j < second.gen_count(); ++j)
                loc[first.gen_count() + j] = find_slot(second.gen_degree(j), second.gen_order(j));
            return loc;
        };
        std::vector<size_t> sloc = place(s, a.src, b.src);
        std::vector<size_t> dloc = place(d, a.dst, b.dst);
        for (size_t i = 0; i < a.dst.gen_count(); ++i)
            for (size_t j = 0; j < a.src.gen_count(); ++j)
                r.q(dloc[i], sloc[j]) = a.q(i, j);
        for (size_t i = 0; i < b.dst.gen_count(); ++i)
            for (size_t j = 0; j < b.src.gen_count(); ++j)
                r.q(dloc[a.dst.gen_count() + i], sloc[a.src.gen_count() + j]) = b.q(i, j);
        return r;
    }
};

/// A presentation: free generators and a homogeneous relation matrix.
struct Presentation {
    std::vector<int> gen_degrees;
    GradedMat relations;  // dst_degs must equal gen_degrees

    Presentation(std::vector<int> gens, GradedMat rel)
        : gen_degrees(std::move(gens)), relations(std::move(rel)) {
        if (relations.dst_degs != gen_degrees)
            throw std::invalid_argument("Presentation: relation target mismatch");
        relations.check_polynomial();
    }
};

/// Outcome of canonicalization: the module, the projection from the
/// presentation's generator stack, and chosen generator representatives.
struct CanonResult {
    CompMod module;
    CompMap proj;     // free module on presentation gens (sorted) -> module
    GradedMat reps;   // columns: module generators as elements of the gen stack
    // presentation position -> generator slot in proj's (sorted) source
    std::vector<size_t> src_slot;
};

inline CanonResult smith_canonicalize(const Presentation& pres) {
    SmithResult s = smith(pres.relations);
    const size_t m = pres.gen_degrees.size();
    // classify rows of the normal form
    std::vector<int> free_rows;
    std::vector<std::tuple<int, int, size_t>> tors_rows;  // (d, k, row)
    std::vector<size_t> free_row_idx;
    for (size_t i = 0; i < m; ++i) {
        bool pivot = i < s.pivot_count && i < pres.relations.cols() && !s.nf.q(i, i).is_zero();
        int d = s.nf.dst_degs[i];
        if (!pivot) {
            free_rows.push_back(d);
            free_row_idx.push_back(i);
            continue;
        }
        int k = *s.nf.power(i, i);
        if (k == 0) continue;  // unit relation kills the generator
        tors_rows.push_back({d, k, i});
    }
    // sort into canonical enumeration, remembering the originating row
    std::vector<std::pair<int, size_t>> fr;
    for (size_t a = 0; a < free_rows.size(); ++a) fr.push_back({free_rows[a], free_row_idx[a]});
    std::sort(fr.begin(), fr.end());
    std::sort(tors_rows.begin(), tors_rows.end());

    CanonResult out;
    std::vector<int> fs;
    std::vector<std::pair<int, int>> ts;
    std::vector<size_t> row_of;  // canonical gen index -> nf row
    for (auto& [d, row] : fr) {
        fs.push_back(d);
        row_of.push_back(row);
    }
    for (auto& [d, k, row] : tors_rows) {
        ts.push_back({d, k});
        row_of.push_back(row);
    }
    out.module = CompMod(fs, ts);

    CompMod f_src = CompMod::free_module(pres.gen_degrees);
    // free_module sorts its generators; map presentation positions to slots
    out.src_slot.assign(m, 0);
    {
        std::vector<bool> used(m, false);
        for (size_t j = 0; j < m; ++j)
            for (size_t g = 0; g < m; ++g)
                if (!used[g] && f_src.gen_degree(g) == pres.gen_degrees[j]) {
                    used[g] = true;
                    out.src_slot[j] = g;
                    break;
                }
    }
    out.proj = CompMap(f_src, out.module, 0);
    for (size_t g = 0; g < row_of.size(); ++g)
        for (size_t j = 0; j < m; ++j) out.proj.q(g, out.src_slot[j]) = s.l.q(row_of[g], j);
    out.proj.reduce();

    out.reps = GradedMat(pres.gen_degrees, out.module.gen_degrees(), 0);
    for (size_t g = 0; g < row_of.size(); ++g)
        for (size_t k = 0; k < m; ++k) out.reps.q(k, g) = s.linv.q(k, row_of[g]);
    return out;
}

namespace detail {

/// Re-encodes a degree-t map as a degree-0 stack of element columns.
inline GradedMat as_elements(const GradedMat& f) {
    GradedMat r = f;
    for (int& d : r.src_degs) d += f.deg;
    r.deg = 0;
    return r;
}

/// Drops zero columns.
inline GradedMat prune_zero_cols(const GradedMat& a) {
    std::vector<size_t> keep;
    for (size_t j = 0; j < a.cols(); ++j) {
        bool nz = false;
        for (size_t i = 0; i < a.rows(); ++i)
            if (!a.q(i, j).is_zero()) nz = true;
        if (nz) keep.push_back(j);
    }
    GradedMat r;
    r.dst_degs = a.dst_degs;
    r.deg = a.deg;
    for (size_t j : keep) r.src_degs.push_back(a.src_degs[j]);
    r.q = QMat(a.rows(), keep.size());
    for (size_t idx = 0; idx < keep.size(); ++idx)
        for (size_t i = 0; i < a.rows(); ++i) r.q(i, idx) = a.q(i, keep[idx]);
    return r;
}

/// Generators of { x in F : a*x lies in the column span of b } (element form).
inline GradedMat preimage_generators(const GradedMat& a, const GradedMat& b) {
    GradedMat big = GradedMat::hcat(a, b.q.cols() ? b : GradedMat(a.dst_degs, {}, 0));
    GradedMat ker = graded_kernel(big);
    GradedMat proj;
    proj.dst_degs = a.src_degs;
    proj.src_degs = ker.src_degs;
    proj.deg = 0;
    proj.q = QMat(a.cols(), ker.cols());
    for (size_t j = 0; j < ker.cols(); ++j)
        for (size_t i = 0; i < a.cols(); ++i) proj.q(i, j) = ker.q(i, j);
    return prune_zero_cols(proj);
}

}  // namespace detail

struct KernelResult {
    CompMod module;
    CompMap incl;  // module -> source of f
};

inline KernelResult comp_ker(const CompMap& f) {
    GradedMat ft = detail::as_elements(f.lift());
    GradedMat rel_dst = f.dst.relations();
    GradedMat rel_src = f.src.relations();
    GradedMat kt = detail::preimage_generators(ft, rel_dst);
    // relabel kernel columns as honest source elements (the element encoding
    // of ft shifted the source degrees by f.deg)
    kt.dst_degs = f.src.gen_degrees();
    for (int& d : kt.src_degs) d -= f.deg;
    // relations among the kernel generators
    GradedMat rels = detail::preimage_generators(kt, rel_src);
    CanonResult canon = smith_canonicalize(Presentation(kt.src_degs, rels));
    KernelResult out;
    out.module = canon.module;
    GradedMat in_src = kt.compose(canon.reps);
    out.incl = CompMap(out.module, f.src, 0);
    out.incl.q = in_src.q;
    out.incl.reduce();
    return out;
}

struct CokerResult {
    CompMod module;
    CompMap proj;    // target of f -> module
    GradedMat reps;  // module generators as elements of the target gen stack
};

inline CokerResult comp_coker(const CompMap& f) {
    GradedMat ft = detail::as_elements(f.lift());
    GradedMat rel = GradedMat::hcat(ft, f.dst.relations());
    CanonResult canon = smith_canonicalize(Presentation(f.dst.gen_degrees(), rel));
    CokerResult out;
    out.module = canon.module;
    out.proj = CompMap(f.dst, out.module, 0);
    // translate from the canonicalization's sorted generator slots back to
    // the target module's own enumeration
    for (size_t g = 0; g < out.module.gen_count(); ++g)
        for (size_t j = 0; j < f.dst.gen_count(); ++j)
            out.proj.q(g, j) = canon.proj.q(g, canon.src_slot[j]);
    out.proj.reduce();
    out.reps = canon.reps;
    return out;
}

/// Factors f through an inclusion: returns g with incl . g = f.
inline std::optional<CompMap> comp_express(const CompMap& f, const CompMap& incl) {
    assert(incl.dst == f.dst);
    GradedMat a = GradedMat::hcat(detail::as_elements(incl.lift()),
                                  f.dst.relations());
    GradedMat b = detail::as_elements(f.lift());
    auto sol = graded_solve(a, b);
    if (!sol) return std::nullopt;
    CompMap g(f.src, incl.src, f.deg);
    for (size_t i = 0; i < incl.src.gen_count(); ++i)
        for (size_t j = 0; j < f.src.gen_count(); ++j) g.q(i, j) = sol->q(i, j);
    g.reduce();
    if (!(incl.compose(g).q == f.q)) return std::nullopt;
    return g;
}

/// Expresses element columns (in target generator coordinates) through an
/// inclusion, allowing reduction modulo the target's torsion relations.
inline std::optional<GradedMat> comp_express_elements(const GradedMat& elems,
                                                      const CompMap& incl) {
    GradedMat a = GradedMat::hcat(detail::as_elements(incl.lift()), incl.dst.relations());
    auto sol = graded_solve(a, elems);
    if (!sol) return std::nullopt;
    GradedMat g;
    g.dst_degs = incl.src.gen_degrees();
    g.src_degs = elems.src_degs;
    g.deg = 0;
    g.q = QMat(incl.src.gen_count(), elems.cols());
    for (size_t i = 0; i < incl.src.gen_count(); ++i)
        for (size_t j = 0; j < elems.cols(); ++j) g.q(i, j) = sol->q(i, j);
    return g;
}

/// Graded Hom_{Q[c]}(M, N) in canonical form with explicit generating maps.
struct HomResult {
    CompMod module;
    // one entry per generator: the generating map as a CompMap
    std::vector<CompMap> gens;
};

inline HomResult comp_hom(const CompMod& m, const CompMod& n) {
    HomResult out;
    std::vector<std::tuple<int, int, int, CompMap>> pieces;  // (order, shift, tie, map)
    for (size_t j = 0; j < m.gen_count(); ++j)
        for (size_t i = 0; i < n.gen_count(); ++i) {
            int a = m.gen_degree(j), k = m.gen_order(j);
            int b = n.gen_degree(i), l = n.gen_order(i);
            int base = 0, order = 0, shift = 0;
            if (k == 0) {
                order = l;  // 0 when target free
                shift = b - a;
            } else {
                if (l == 0) continue;  // torsion into free is zero
                base = std::max(l - k, 0);
                order = std::min(k, l);
                shift = b - 2 * base - a;
            }
            CompMap g(m, n, shift);
            g.q(i, j) = Rat(1);
            g.reduce();
            pieces.push_back({order, shift, static_cast<int>(pieces.size()), g});
        }
    // assemble canonical module; generator enumeration must match CompMod's
    std::vector<int> fs;
    std::vector<std::pair<int, int>> ts;
    std::vector<std::pair<std::pair<int, int>, CompMap>> free_list, tors_list;
    for (auto& [order, shift, tie, g] : pieces) {
        if (order == 0) free_list.push_back({{shift, tie}, g});
        else
            tors_list.push_back({{shift, order}, g});
    }
    std::stable_sort(free_list.begin(), free_list.end(),
                     [](auto& x, auto& y) { return x.first.first < y.first.first; });
    std::stable_sort(tors_list.begin(), tors_list.end(),
                     [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [key, g] : free_list) {
        fs.push_back(key.first);
        out.gens.push_back(g);
    }
    for (auto& [key, g] : tors_list) {
        ts.push_back(key);
        out.gens.push_back(g);
    }
    out.module = CompMod(fs, ts);
    return out;
}

/// Tensor and Tor over Q[c], with generator origins (src gen, dst gen).
struct TensorResult {
    CompMod module;
    std::vector<std::pair<size_t, size_t>> origins;
};

inline TensorResult comp_tensor(const CompMod& m, const CompMod& n) {
    TensorResult out;
    std::vector<std::pair<std::pair<int, int>, std::pair<size_t, size_t>>> free_list, tors_list;
    for (size_t i = 0; i < m.gen_count(); ++i)
        for (size_t j = 0; j < n.gen_count(); ++j) {
            int a = m.gen_degree(i), k = m.gen_order(i);
            int b = n.gen_degree(j), l = n.gen_order(j);
            int d = a + b;
            int order;
            if (k == 0 && l == 0) order = 0;
            else if (k == 0)
                order = l;
            else if (l == 0)
                order = k;
            else
                order = std::min(k, l);
            if (order == 0) free_list.push_back({{d, 0}, {i, j}});
            else
                tors_list.push_back({{d, order}, {i, j}});
        }
    std::stable_sort(free_list.begin(), free_list.end(),
                     [](auto& x, auto& y) { return x.first.first < y.first.first; });
    std::stable_sort(tors_list.begin(), tors_list.end(),
                     [](auto& x, auto& y) { return x.first < y.first; });
    std::vector<int> fs;
    std::vector<std::pair<int, int>> ts;
    for (auto& [key, o] : free_list) {
        fs.push_back(key.first);
        out.origins.push_back(o);
    }
    for (auto& [key, o] : tors_list) {
        ts.push_back(key);
        out.origins.push_back(o);
    }
    out.module = CompMod(fs, ts);
    return out;
}

inline CompMod comp_tor(const CompMod& m, const CompMod& n) {
    // Tor_1(Q[c]/(c^k)<a>, Q[c]/(c^l)<b>) = Q[c]/(c^min)<a+b-2max(k,l)>
    std::vector<std::pair<int, int>> ts;
    for (auto [a, k] : m.torsion)
        for (auto [b, l] : n.torsion)
            ts.push_back({a + b - 2 * std::max(k, l), std::min(k, l)});
    return CompMod({}, std::move(ts));
}

/// Inverting c kills torsion; returns shifts of the Laurent-free part.
inline std::vector<int> comp_localize(const CompMod& m) { return m.free_shifts; }

/// Homology of a degree -1 square differential on a single module.
struct HomologyResult {
    CompMod h;
    GradedMat reps;       // h generators as element columns of the carrier
    CompMap ker_incl;     // ker d -> carrier
    CompMap ker_to_h;     // ker d -> h
};

inline HomologyResult pid_homology(const CompMod& m, const CompMap& d) {
    if (!(d.src == m) || !(d.dst == m) || d.deg != -1)
        throw std::invalid_argument("pid_homology: differential shape mismatch");
    HomologyResult out;
    KernelResult k = comp_ker(d);
    auto d_into_k = comp_express(d, k.incl);
    if (!d_into_k) throw std::logic_error("pid_homology: image not inside kernel");
    CokerResult c = comp_coker(*d_into_k);
    out.h = c.module;
    out.ker_incl = k.incl;
    out.ker_to_h = c.proj;
    GradedMat in_carrier = detail::as_elements(k.incl.lift()).compose(c.reps);
    out.reps = in_carrier;
    return out;
}

/// Coordinates of cycle columns (carrier coordinates) in homology.
inline GradedMat homology_coords(const HomologyResult& hd, const GradedMat& cycles) {
    auto k = comp_express_elements(cycles, hd.ker_incl);
    if (!k) throw std::logic_error("homology_coords: not a cycle");
    GradedMat r;
    r.dst_degs = hd.h.gen_degrees();
    r.src_degs = cycles.src_degs;
    r.deg = 0;
    r.q = hd.ker_to_h.q * k->q;
    // reduce modulo torsion orders of h
    for (size_t i = 0; i < hd.h.gen_count(); ++i)
        for (size_t j = 0; j < r.q.cols(); ++j) {
            if (r.q(i, j).is_zero()) continue;
            int num = hd.h.gen_degree(i) - r.src_degs[j];
            int l = hd.h.gen_order(i);
            if (num % 2 != 0 || num / 2 < 0 || (l > 0 && num / 2 >= l)) r.q(i, j) = Rat(0);
        }
    return r;
}

}  // namespace so2alg
