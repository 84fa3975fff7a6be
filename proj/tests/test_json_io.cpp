#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "so2alg/json_io.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("json_io");

namespace {
std::mt19937 rng(1234);
}

TEST_CASE("ring elements round trip") {
    for (int i = 0; i < 30; ++i) {
        std::uniform_int_distribution<int> small(-5, 5), idx(1, 6);
        std::map<int, TailSeq> slices;
        slices[0] = TailSeq({{idx(rng), Rat(small(rng), 3)}}, Rat(small(rng)));
        slices[2] = TailSeq({{idx(rng), Rat(small(rng))}}, Rat(small(rng), 2));
        OFElem x(std::move(slices));
        CHECK(io::ofelem_from_json(io::to_json(x)) == x);
        LocElem l = localize_elem(x) + LocElem::c_n_inverse(idx(rng));
        CHECK(io::locelem_from_json(io::to_json(l)) == l);
    }
}

TEST_CASE("modules and maps round trip through polynomial strings") {
    CompMod m({1, -2}, {{0, 2}});
    CHECK(io::compmod_from_json(io::to_json(m)) == m);
    CompMap f(m, m, -1);
    f.q(0, 1) = Rat(3, 2);
    f.reduce();
    CompMap g = io::compmap_from_json(io::to_json(f));
    CHECK(g.q == f.q);
    CHECK(g.deg == f.deg);
}

TEST_CASE("objects round trip and stay canonically equal") {
    for (int i = 0; i < 12; ++i) {
        EffObj x = gen::random_eff_obj(rng);
        EffObjHat back = io::effobjhat_from_json(io::to_json(x.hat()));
        CHECK(validate(back) == x);
    }
}

TEST_CASE("morphisms round trip with commuting squares checked") {
    for (int i = 0; i < 8; ++i) {
        EffObj x = gen::random_eff_obj(rng), y = gen::random_eff_obj(rng);
        Mor f = gen::random_mor(rng, x, y, 0);
        Mor back = io::mor_from_json(io::to_json(f));
        CHECK(back.same_entries(f));
    }
}

TEST_CASE("differential objects round trip") {
    for (int i = 0; i < 8; ++i) {
        DGObj x = gen::random_dg(rng);
        DGObj back = io::dgobj_from_json(io::to_json(x));
        CHECK(validate(back.carrier) == validate(x.carrier));
        CHECK(back.d.same_entries(x.d));
    }
}

TEST_CASE("diagram modules round trip") {
    for (int i = 0; i < 6; ++i) {
        DGObj x = gen::random_dg(rng);
        DiagObj d = l_star(x);
        DiagObj back = io::diagobj_from_json(io::to_json(d));
        // spot-compare the legs
        CHECK(back.a.tail_lattice == d.a.tail_lattice);
        CHECK(back.b.tail_shifts == d.b.tail_shifts);
        CHECK(back.c.vs == d.c.vs);
        CHECK(back.alpha_tail.q == d.alpha_tail.q);
        std::set<int> ks = d.keys();
        for (int n : ks) {
            CHECK(back.a.component(n) == d.a.component(n));
            CHECK(back.alpha_at(n).q == d.alpha_at(n).q);
        }
    }
}

TEST_CASE("malformed input raises parse errors") {
    // beta entry with the wrong power for its position
    auto j = io::to_json(sphere({{1, 1}}).hat());
    j["exc"]["1"]["beta"][0][0] = "c^3";
    CHECK_THROWS_AS(io::effobjhat_from_json(j), ParseError);
    // non-monomial entry
    j["exc"]["1"]["beta"][0][0] = "c^-1+1";
    CHECK_THROWS_AS(io::effobjhat_from_json(j), ParseError);
}

TEST_SUITE_END();
