#include <doctest.h>

#include <random>

#include "so2alg/base_ring.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("base_ring");

namespace {

std::mt19937 rng(2024);

TailSeq random_tailseq() {
    std::uniform_int_distribution<int> small(-3, 3), idx(1, 6), cnt(0, 3);
    std::map<int, Rat> exc;
    int k = cnt(rng);
    for (int i = 0; i < k; ++i) exc[idx(rng)] = Rat(small(rng));
    return TailSeq(std::move(exc), Rat(small(rng)));
}

OFElem random_of() {
    std::uniform_int_distribution<int> pw(0, 2), cnt(1, 3);
    std::map<int, TailSeq> slices;
    int k = cnt(rng);
    for (int i = 0; i < k; ++i) slices[pw(rng)] = random_tailseq();
    return OFElem(std::move(slices));
}

}  // namespace

TEST_CASE("idempotents multiply as intersections") {
    OFElem e1 = idempotent({1});
    CHECK(of_mul(e1, e1) == e1);

    OFElem e12 = idempotent({1, 2});
    OFElem e23 = idempotent({2, 3});
    CHECK(of_mul(e12, e23) == idempotent({2}));

    // complement of {2,5}: tail 1 with exceptions dropping to 0
    OFElem co = idempotent({2, 5}, true);
    CHECK(co.slice(0).at(2) == Rat(0));
    CHECK(co.slice(0).at(5) == Rat(0));
    CHECK(co.slice(0).at(7) == Rat(1));
    CHECK(of_mul(co, idempotent({2})) == OFElem::zero());
    CHECK(of_mul(co, co) == co);

    // phi = everything gives the unit
    CHECK(idempotent({}, true) == OFElem::one());
}

TEST_CASE("e_n times the Euler class is c_n") {
    OFElem c = OFElem::euler_class();
    for (int n = 1; n <= 50; ++n) CHECK(of_mul(idempotent({n}), c) == OFElem::c_n(n));
}

TEST_CASE("(c + e_3) * c expands to c^2 + c_3") {
    OFElem c = OFElem::euler_class();
    OFElem x = c + idempotent({3});
    OFElem prod = of_mul(x, c);
    OFElem expected = of_mul(c, c) + OFElem::c_n(3);
    CHECK(prod == expected);
    CHECK(prod.slice(2) == TailSeq(Rat(1)));
    CHECK(prod.slice(1) == TailSeq({{3, Rat(1)}}, Rat(0)));
}

TEST_CASE("localization is a degreewise injective ring map") {
    CHECK(localize_elem(OFElem::one()) == LocElem::one());
    LocElem c7 = localize_elem(OFElem::c_n(7));
    CHECK(c7.slice(1) == TailSeq({{7, Rat(1)}}, Rat(0)));
    for (int i = 0; i < 100; ++i) {
        OFElem x = random_of(), y = random_of();
        CHECK(localize_elem(of_mul(x, y)) == loc_mul(localize_elem(x), localize_elem(y)));
        CHECK(localize_elem(x + y) == localize_elem(x) + localize_elem(y));
        if (!x.is_zero()) CHECK(!localize_elem(x).is_zero());
    }
}

TEST_CASE("inverse Euler classes multiply back to idempotents") {
    LocElem c1 = localize_elem(OFElem::c_n(1));
    LocElem c1inv = LocElem::c_n_inverse(1);
    CHECK(loc_mul(c1inv, c1) == localize_elem(idempotent({1})));
    CHECK(loc_mul(c1inv, c1) != LocElem::one());
}

TEST_CASE("positive-degree slices must be finitely supported") {
    CHECK_THROWS_AS(LocElem({{-1, TailSeq(Rat(1))}}), std::invalid_argument);
    // finite support at negative powers is fine
    CHECK_NOTHROW(LocElem({{-1, TailSeq({{3, Rat(1)}}, Rat(0))}}));
}

TEST_CASE("disjoint positive-degree supports multiply to zero") {
    LocElem a({{-1, TailSeq({{3, Rat(1)}}, Rat(0))}});
    LocElem b({{-1, TailSeq({{4, Rat(1)}}, Rat(0))}});
    CHECK(loc_mul(a, b).is_zero());
}

TEST_CASE("ring axioms hold exactly on random elements") {
    for (int i = 0; i < 200; ++i) {
        OFElem x = random_of(), y = random_of(), z = random_of();
        CHECK(of_mul(of_mul(x, y), z) == of_mul(x, of_mul(y, z)));
        CHECK(of_mul(x, y + z) == of_mul(x, y) + of_mul(x, z));
        CHECK(of_mul(x, y) == of_mul(y, x));
        CHECK(of_mul(x, OFElem::one()) == x);
        CHECK((x + y) - y == x);
    }
}

TEST_CASE("sampled idempotent lattice identities") {
    std::uniform_int_distribution<int> idx(1, 5), cnt(0, 3);
    for (int i = 0; i < 100; ++i) {
        std::set<int> phi, psi;
        for (int k = cnt(rng); k-- > 0;) phi.insert(idx(rng));
        for (int k = cnt(rng); k-- > 0;) psi.insert(idx(rng));
        bool cophi = rng() % 2, copsi = rng() % 2;
        OFElem ephi = idempotent(phi, cophi), epsi = idempotent(psi, copsi);
        CHECK(of_mul(ephi, ephi) == ephi);
        OFElem prod = of_mul(ephi, epsi);
        for (int n = 1; n <= 8; ++n) {
            bool in_phi = cophi ? !phi.count(n) : phi.count(n) > 0;
            bool in_psi = copsi ? !psi.count(n) : psi.count(n) > 0;
            CHECK(prod.slice(0).at(n) == Rat(in_phi && in_psi ? 1 : 0));
        }
    }
}

TEST_SUITE_END();
