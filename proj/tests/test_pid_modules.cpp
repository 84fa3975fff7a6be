#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "so2alg/pid_modules.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("pid_modules");

namespace {

std::mt19937 rng(31337);

CompMod random_mod(int max_gens = 3) {
    std::uniform_int_distribution<int> deg(-4, 4), ord(1, 3), cnt(0, max_gens);
    std::vector<int> fs;
    std::vector<std::pair<int, int>> ts;
    for (int i = cnt(rng); i-- > 0;) fs.push_back(deg(rng));
    for (int i = cnt(rng); i-- > 0;) ts.push_back({deg(rng), ord(rng)});
    return CompMod(fs, ts);
}

}  // namespace

TEST_CASE("smith_canonicalize basic presentations") {
    // one generator in degree 0 with relation c^2
    {
        GradedMat rel({0}, {-4}, 0);
        rel.q(0, 0) = Rat(1);
        CanonResult c = smith_canonicalize(Presentation({0}, rel));
        CHECK(c.module == CompMod({}, {{0, 2}}));
    }
    // two generators, single relation c g1 + c g2
    {
        GradedMat rel({0, 0}, {-2}, 0);
        rel.q(0, 0) = Rat(1);
        rel.q(1, 0) = Rat(1);
        CanonResult c = smith_canonicalize(Presentation({0, 0}, rel));
        CHECK(c.module == CompMod({0}, {{0, 1}}));
        // degreewise dimensions agree with the quotient for degrees 0..-10
        for (int t = 0; t >= -10; t -= 2) {
            size_t expect = (t == 0) ? 2 : 1;
            CHECK(c.module.dim_at(t) == expect);
        }
    }
    // no relations: free module
    {
        GradedMat rel({3}, {}, 0);
        CanonResult c = smith_canonicalize(Presentation({3}, rel));
        CHECK(c.module == CompMod({3}, {}));
    }
}

TEST_CASE("round trip: canonical -> presentation with noise -> canonical") {
    std::uniform_int_distribution<int> coin(0, 1), pick(0, 100);
    for (int iter = 0; iter < 60; ++iter) {
        CompMod m = random_mod();
        GradedMat rel = m.relations();
        // pad with redundant relations (c times an existing one)
        if (rel.cols() > 0 && coin(rng)) {
            GradedMat extra = rel;
            for (int& d : extra.src_degs) d -= 2;
            rel = GradedMat::hcat(rel, extra);
        }
        // random legal row operations (gen basis changes)
        size_t gens = rel.rows();
        for (int ops = 0; ops < 6 && gens >= 2; ++ops) {
            size_t i = pick(rng) % gens, j = pick(rng) % gens;
            if (i == j) continue;
            int diff = rel.dst_degs[j] - rel.dst_degs[i];
            if (diff < 0 || diff % 2 != 0) continue;  // multiplier must be polynomial
            Rat lambda(1 + pick(rng) % 3);
            for (size_t cidx = 0; cidx < rel.cols(); ++cidx)
                rel.q(j, cidx) += lambda * rel.q(i, cidx);
        }
        CanonResult c = smith_canonicalize(Presentation(rel.dst_degs, rel));
        CHECK(c.module == m);
    }
}

TEST_CASE("comp_hom matches the closed formulas and the brute-force oracle") {
    // Hom(Q[c]<d>, N) = N<-d>
    CompMod n({1}, {{0, 2}});
    HomResult h = comp_hom(CompMod::free_module({3}), n);
    CHECK(h.module == n.shifted(-3));
    // Hom(Q, Q[c]) = 0
    CHECK(comp_hom(CompMod({}, {{0, 1}}), CompMod::free_module({0})).module.is_zero());
    // Hom(Q[c]/c^2, Q[c]/c^3) = Q[c]/c^2<-2>
    CHECK(comp_hom(CompMod({}, {{0, 2}}), CompMod({}, {{0, 3}})).module ==
          CompMod({}, {{-2, 2}}));

    for (int iter = 0; iter < 25; ++iter) {
        CompMod a = random_mod(2), b = random_mod(2);
        CompMod hom = comp_hom(a, b).module;
        for (int t = -10; t <= 10; ++t) CHECK(hom.dim_at(t) == oracle::hom_dim(a, b, t));
    }
}

TEST_CASE("generating homs are honest module maps spanning the hom group") {
    for (int iter = 0; iter < 10; ++iter) {
        CompMod a = random_mod(2), b = random_mod(2);
        HomResult h = comp_hom(a, b);
        REQUIRE(h.gens.size() == h.module.gen_count());
        for (size_t g = 0; g < h.gens.size(); ++g) {
            h.gens[g].validate();
            CHECK(h.gens[g].deg == h.module.gen_degree(g));
        }
    }
}

TEST_CASE("comp_tensor and comp_tor match the degreewise oracle") {
    // Q<1> tensor Q<1> and its Tor
    CompMod q1({}, {{1, 1}});
    CHECK(comp_tensor(q1, q1).module == CompMod({}, {{2, 1}}));
    CHECK(comp_tor(q1, q1) == CompMod({}, {{0, 1}}));
    for (int t = -10; t <= 10; ++t) {
        CHECK(comp_tensor(q1, q1).module.dim_at(t) == oracle::tensor_dim(q1, q1, t));
        CHECK(comp_tor(q1, q1).dim_at(t) == oracle::tor1_dim(q1, q1, t));
    }

    // free modules are flat
    CompMod f3 = CompMod::free_module({3});
    CompMod n({1}, {{0, 2}});
    CHECK(comp_tensor(f3, n).module == n.shifted(3));
    CHECK(comp_tor(f3, n).is_zero());

    // Q[c]/c^2 tensor Q[c]/c^3
    CompMod t2({}, {{0, 2}}), t3({}, {{0, 3}});
    CHECK(comp_tensor(t2, t3).module == CompMod({}, {{0, 2}}));
    CHECK(comp_tor(t2, t3) == CompMod({}, {{-6, 2}}));

    for (int iter = 0; iter < 20; ++iter) {
        CompMod a = random_mod(2), b = random_mod(2);
        CompMod tp = comp_tensor(a, b).module;
        CompMod tor = comp_tor(a, b);
        for (int t = -20; t <= 20; ++t) {
            CHECK(tp.dim_at(t) == oracle::tensor_dim(a, b, t));
            CHECK(tor.dim_at(t) == oracle::tor1_dim(a, b, t));
        }
    }
}

TEST_CASE("hom-tensor adjunction dimensions") {
    for (int iter = 0; iter < 15; ++iter) {
        CompMod a = random_mod(2), b = random_mod(2), c = random_mod(2);
        CompMod lhs = comp_hom(comp_tensor(a, b).module, c).module;
        CompMod rhs = comp_hom(a, comp_hom(b, c).module).module;
        for (int t = -20; t <= 20; ++t) CHECK(lhs.dim_at(t) == rhs.dim_at(t));
    }
}

TEST_CASE("comp_localize keeps exactly the free part") {
    CHECK(comp_localize(CompMod({}, {{5, 2}})).empty());
    CHECK(comp_localize(CompMod::free_module({4})) == std::vector<int>{4});
    CompMod mix({2, 0}, {{1, 3}});
    CHECK(comp_localize(mix) == (std::vector<int>{0, 2}));
}

TEST_CASE("kernels and cokernels of graded maps") {
    // multiplication by c into Q[c]<0>: injective with cokernel Q<0>
    {
        CompMap f(CompMod::free_module({-2}), CompMod::free_module({0}), 0);
        f.q(0, 0) = Rat(1);  // entry c, power implied by the grading
        KernelResult k = comp_ker(f);
        CHECK(k.module.is_zero());
        CokerResult c = comp_coker(f);
        CHECK(c.module == CompMod({}, {{0, 1}}));
    }
    // zero map: kernel = source, cokernel = target
    {
        CompMod a({1}, {{0, 2}}), b({3}, {});
        CompMap z(a, b, 0);
        CHECK(comp_ker(z).module == a);
        CHECK(comp_coker(z).module == b);
    }
    // f = (c, c) into a rank-2 free module
    {
        CompMap f(CompMod::free_module({-2}), CompMod::free_module({0, 0}), 0);
        f.q(0, 0) = Rat(1);
        f.q(1, 0) = Rat(1);
        CHECK(comp_ker(f).module.is_zero());
        CHECK(comp_coker(f).module == CompMod({0}, {{0, 1}}));
    }
}

TEST_CASE("rank bookkeeping: dim ker - dim src + dim dst - dim coker = 0") {
    std::uniform_int_distribution<int> dd(-2, 2);
    for (int iter = 0; iter < 30; ++iter) {
        CompMod a = random_mod(2), b = random_mod(2);
        int deg = 2 * dd(rng);
        // random legal map: fill admissible entries
        CompMap f(a, b, deg);
        for (size_t i = 0; i < b.gen_count(); ++i)
            for (size_t j = 0; j < a.gen_count(); ++j) {
                auto p = f.power(i, j);
                if (!p || *p < 0) continue;
                int k = a.gen_order(j), l = b.gen_order(i);
                if (l > 0 && *p >= l) continue;
                if (k > 0 && (l == 0 || *p + k < l)) continue;
                f.q(i, j) = Rat(dd(rng));
            }
        f.reduce();
        f.validate();
        KernelResult kr = comp_ker(f);
        CokerResult cr = comp_coker(f);
        for (int t = -14; t <= 14; ++t) {
            long lhs = static_cast<long>(kr.module.dim_at(t)) - static_cast<long>(a.dim_at(t)) +
                       static_cast<long>(b.dim_at(t + deg)) -
                       static_cast<long>(cr.module.dim_at(t + deg));
            CHECK(lhs == 0);
        }
        // inclusion composed into f vanishes
        CHECK(f.compose(kr.incl).is_zero());
        // projection composed with f vanishes
        CHECK(cr.proj.compose(f).is_zero());
    }
}

TEST_CASE("pid_homology of a two-step complex") {
    // M = Q[c]<1> + Q[c]/(c^2)<0>, d sends the free generator to the torsion
    // class only when degrees allow; use d = 0 first
    CompMod m({1}, {{0, 2}});
    CompMap d0(m, m, -1);
    HomologyResult h0 = pid_homology(m, d0);
    CHECK(h0.h == m);

    // cone-like: M = Q[c]<1> + Q[c]<0>, d(g1) = c^0 g0? degree -1 needs odd gap
    CompMod m2({1, 0}, {});
    CompMap d(m2, m2, -1);
    d.q(0, 1) = Rat(1);  // g<1> maps to g<0> (power 0), degree -1
    d.reduce();
    CHECK(d.compose(d).is_zero());
    HomologyResult h = pid_homology(m2, d);
    // d: Q[c]<1> -> Q[c]<0> is injective (mult by unit), homology = coker = 0? no:
    // d kills nothing in degree arguments: ker = 0 on the <1> part, everything
    // of the <0> part is a cycle, image is the whole <0> part
    CHECK(h.h.is_zero());
}

TEST_SUITE_END();
