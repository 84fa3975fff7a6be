#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "so2alg/homotopy_calc.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("homotopy_calc");

namespace {
std::mt19937 rng(909);
}

TEST_CASE("pi_a of the standard spectra") {
    CHECK(pi_a(SpectrumExpr::s0()) == unit_obj());
    for (int n = 1; n <= 20; ++n) CHECK(pi_a(SpectrumExpr::sigma(n)) == sigma(n));
    // orbit splitting: one cell per divisor
    EffObj o6 = pi_a(SpectrumExpr::orbit(6));
    EffObj expect =
        direct_sum_obj(direct_sum_obj(sigma(1), sigma(2)), direct_sum_obj(sigma(3), sigma(6)));
    CHECK(o6 == expect);
    CHECK(o6.hat().exc_indices() == std::set<int>({1, 2, 3, 6}));
    // structural operations
    CHECK(pi_a(SpectrumExpr::susp(3, SpectrumExpr::sigma(2))) == sigma(2, 3));
    CHECK(pi_a(SpectrumExpr::wedge(SpectrumExpr::s0(), SpectrumExpr::sigma(2))) ==
          direct_sum_obj(unit_obj(), sigma(2)));
}

TEST_CASE("resolution of the unit: e(Q) and the Euler tower quotient") {
    InjRes r = inj_resolve(unit_obj());
    CHECK(r.i0.eU == GradedVS::line(0));
    CHECK(r.i0.divisible.empty());
    CHECK(r.i1.eU.is_zero());
    CHECK(r.i1.divisible.empty());
    // E^{-1}O_F / O_F: one divisible line with socle in degree 2 at every n
    CHECK(r.i1.divisible_tail == GradedVS::line(2));
    CHECK_NOTHROW(verify_resolution(r, r.span_lo, r.span_hi));
    CHECK_THROWS_AS(verify_resolution(r, 0, 1), WindowTooSmallError);
}

TEST_CASE("resolution of a cell: hull and quotient by the socle") {
    InjRes r = inj_resolve(sigma(4));
    CHECK(r.i0.eU.is_zero());
    REQUIRE(r.i0.divisible.count(4) == 1);
    CHECK(r.i0.divisible.at(4) == GradedVS::line(1));
    REQUIRE(r.i1.divisible.count(4) == 1);
    CHECK(r.i1.divisible.at(4) == GradedVS::line(3));
    CHECK(r.i1.divisible_tail.is_zero());
    CHECK_NOTHROW(verify_resolution(r, r.span_lo, r.span_hi));
}

TEST_CASE("resolutions of random objects verify and have two terms") {
    for (int i = 0; i < 10; ++i) {
        EffObj y = gen::random_eff_obj(rng);
        InjRes r = inj_resolve(y);
        CHECK_NOTHROW(verify_resolution(r, r.span_lo, r.span_hi));
        // two-term shape: both I0 and I1 are sums of the allowed injectives
        CHECK(r.i0.divisible_tail.is_zero());
    }
}

TEST_CASE("injectivity probes: maps into the resolution terms extend along monos") {
    std::uniform_int_distribution<int> dd(-2, 2);
    for (int i = 0; i < 10; ++i) {
        EffObj y = gen::random_eff_obj(rng);
        InjRes r = inj_resolve(y);
        // split monomorphism a -> a + z
        EffObj a = gen::random_eff_obj(rng), z = gen::random_eff_obj(rng);
        SumWithMaps sum = direct_sum_many({a, z});
        for (int t = -2; t <= 2; ++t) {
            CHECK(injective_lifting(r.i0, sum.ins[0], t));
            CHECK(injective_lifting(r.i1, sum.ins[0], t));
        }
        // the non-split inclusion of the unit into a sphere
        EffObj s0 = unit_obj(), snu = sphere({{1, 1}});
        Mor incl = hom_group(s0, snu, 0, 0).basis[0][0];
        for (int t = -2; t <= 2; ++t) {
            CHECK(injective_lifting(r.i0, incl, t));
            CHECK(injective_lifting(r.i1, incl, t));
        }
    }
}

TEST_CASE("maps of spheres into e(U) pieces carry no component content") {
    // e(U) objects are injective, so Ext into them vanishes; the computable
    // content is that Hom(sphere, e(U)) is purely global
    for (int i = 0; i < 6; ++i) {
        EffObj s = sphere(gen::random_nu(rng));
        InjTerm e;
        e.eU = GradedVS({0, 3});
        for (int t = -4; t <= 4; ++t) {
            HomIntoInjDims d = hom_into_inj_dims(s.hat(), e, t);
            CHECK(d.tail == 0);
            for (auto& [n, dim] : d.exc) CHECK(dim == 0);
        }
    }
    // and ext1 of spheres against spheres is the pure Euler-tower pattern:
    // the finite sector matches what the tail pattern predicts at the
    // exceptional indices shifted by the sphere exponents
    CGVS base = ext1(unit_obj(), unit_obj(), -6, 6);
    CGVS e = ext1(sphere({{1, 1}}), unit_obj(), -6, 6);
    for (int t = -6; t <= 6; ++t) CHECK(e.tail_at(t) == base.tail_at(t));
}

TEST_CASE("ext1(sigma_n, S0) is one line in degree 1 at component n") {
    for (int n : {1, 3, 7}) {
        CGVS e = ext1(sigma(n), unit_obj(), -4, 4);
        CHECK(e.exc_at(n, 1) == 1);
        CHECK(e.tail_at(1) == 0);
        size_t total = 0;
        for (int t = -4; t <= 4; ++t) total += e.finite_dim_at(t) + e.tail_at(t);
        CHECK(total == 1);
    }
}

TEST_CASE("ext1(S0, S0): the tail pattern of the Euler tower") {
    CGVS e = ext1(unit_obj(), unit_obj(), -4, 6);
    CHECK(e.finite_dim_at(0) == 0);
    CHECK(e.tail_at(0) == 0);
    for (int t = 2; t <= 6; t += 2) CHECK(e.tail_at(t) == 1);
    CHECK(e.tail_at(1) == 0);
    CHECK(e.tail_at(-2) == 0);
}

TEST_CASE("ext1 is independent of the chosen resolution") {
    for (int i = 0; i < 10; ++i) {
        EffObj x = gen::random_eff_obj(rng);
        EffObj y = gen::random_eff_obj(rng);
        InjRes r1 = inj_resolve(y);
        InjRes r2 = inj_resolve(y, {1, 2, 3, 4});  // doubled hulls
        CGVS e1 = ext1_with_resolution(x, r1, -5, 5).cgvs;
        CGVS e2 = ext1_with_resolution(x, r2, -5, 5).cgvs;
        for (int t = -5; t <= 5; ++t) {
            CHECK(e1.finite_dim_at(t) == e2.finite_dim_at(t));
            CHECK(e1.tail_at(t) == e2.tail_at(t));
        }
    }
}

TEST_CASE("maps table of the sphere against itself") {
    AdamsTable tab = maps_table(SpectrumExpr::s0(), SpectrumExpr::s0(), -4, 4);
    // degree 0: Hom = Q (the rational Burnside ring of the circle), Ext = 0
    CHECK(tab.hom_part.global_at(0) == 1);
    CHECK(tab.ext_part.finite_dim_at(0) == 0);
    CHECK(tab.ext_part.tail_at(0) == 0);
    // degree 1: Hom = 0, Ext = one class at every finite subgroup
    CHECK(tab.hom_part.global_at(1) == 0);
    CHECK(tab.hom_part.finite_dim_at(1) == 0);
    CHECK(tab.ext_part.tail_at(1) == 1);
    CHECK(tab.ext_part.finite_dim_at(1) == 0);
    // odd negative degrees vanish entirely
    CHECK(tab.hom_part.finite_dim_at(-1) == 0);
    CHECK(tab.ext_part.tail_at(-1) == 0);
}

TEST_CASE("maps table of a cell against the sphere") {
    AdamsTable tab = maps_table(SpectrumExpr::sigma(5), SpectrumExpr::s0(), -4, 4);
    for (int t = -4; t <= 4; ++t) {
        CHECK(tab.hom_part.finite_dim_at(t) == 0);
        CHECK(tab.hom_part.tail_at(t) == 0);
    }
    // the single class sits in degree 0, at component 5
    CHECK(tab.ext_part.exc_at(5, 0) == 1);
    size_t total = 0;
    for (int t = -4; t <= 4; ++t) total += tab.ext_part.finite_dim_at(t) + tab.ext_part.tail_at(t);
    CHECK(total == 1);
}

TEST_CASE("maps table is additive in wedges") {
    SpectrumExpr a = SpectrumExpr::sigma(2), b = SpectrumExpr::susp(1, SpectrumExpr::s0());
    SpectrumExpr w = SpectrumExpr::wedge(a, b);
    AdamsTable ta = maps_table(a, SpectrumExpr::s0(), -3, 3);
    AdamsTable tb = maps_table(b, SpectrumExpr::s0(), -3, 3);
    AdamsTable tw = maps_table(w, SpectrumExpr::s0(), -3, 3);
    // additivity holds per component: exceptional entries fall back to the
    // tail pattern wherever a summand is generic
    auto at_comp = [](const CGVS& c, int n, int t) {
        return c.exceptional.count(n) ? c.exc_at(n, t) : c.tail_at(t);
    };
    std::set<int> comps;
    for (auto& [n, m] : tw.ext_part.exceptional) comps.insert(n);
    for (auto& [n, m] : ta.ext_part.exceptional) comps.insert(n);
    for (auto& [n, m] : tb.ext_part.exceptional) comps.insert(n);
    for (int t = -3; t <= 3; ++t) {
        CHECK(tw.hom_part.global_at(t) == ta.hom_part.global_at(t) + tb.hom_part.global_at(t));
        CHECK(tw.ext_part.tail_at(t) == ta.ext_part.tail_at(t) + tb.ext_part.tail_at(t));
        for (int n : comps)
            CHECK(at_comp(tw.ext_part, n, t) ==
                  at_comp(ta.ext_part, n, t) + at_comp(tb.ext_part, n, t));
    }
}

TEST_SUITE_END();
