#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "so2alg/monoidal.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("monoidal");

namespace {
std::mt19937 rng(777);

std::map<int, int> add_nu(const std::map<int, int>& a, const std::map<int, int>& b) {
    std::map<int, int> r = a;
    for (auto [n, v] : b) r[n] += v;
    for (auto it = r.begin(); it != r.end();)
        it = (it->second == 0) ? r.erase(it) : std::next(it);
    return r;
}
}  // namespace

TEST_CASE("sphere arithmetic under tensor") {
    for (int i = 0; i < 8; ++i) {
        auto nu = gen::random_nu(rng), mu = gen::random_nu(rng);
        CHECK(tensor(sphere(nu), sphere(mu)) == sphere(add_nu(nu, mu)));
    }
}

TEST_CASE("cells are orthogonal and absorb spheres") {
    CHECK(tensor(sigma(2), sigma(3)) == zero_obj());
    CHECK(tensor(sigma(2), sigma(2)) == sigma(2, 1));  // Q_2<2> = sigma(2) shifted by 1
    // sigma_n tensor S^nu concentrates at component n shifted by 2 nu(n)
    std::map<int, int> nu = {{2, 1}, {3, -2}};
    CHECK(tensor(sigma(2), sphere(nu)) == sigma(2, 2));
    CHECK(tensor(sigma(3), sphere(nu)) == sigma(3, -4));
    CHECK(tensor(sigma(5), sphere(nu)) == sigma(5, 0));
}

TEST_CASE("unit laws hold via the canonical maps") {
    for (int i = 0; i < 6; ++i) {
        EffObj x = gen::random_eff_obj(rng);
        TensorStructure ux = tensor_structure(unit_obj().hat(), x.hat());
        Mor lu = left_unitor(ux);
        lu.check();
        CHECK(is_isomorphism(lu));
        CHECK(ux.obj == x);
        TensorStructure xu = tensor_structure(x.hat(), unit_obj().hat());
        Mor ru = right_unitor(xu);
        ru.check();
        CHECK(is_isomorphism(ru));
        CHECK(xu.obj == x);
    }
}

TEST_CASE("braiding is a valid morphism squaring to the identity") {
    for (int i = 0; i < 6; ++i) {
        EffObj x = gen::random_eff_obj(rng), y = gen::random_eff_obj(rng);
        TensorStructure xy = tensor_structure(x.hat(), y.hat());
        TensorStructure yx = tensor_structure(y.hat(), x.hat());
        Mor b1 = braiding(xy, yx), b2 = braiding(yx, xy);
        b1.check();
        b2.check();
        CHECK(is_isomorphism(b1));
        Mor square = b2.compose(b1);
        CHECK(square.same_entries(Mor::identity(xy.obj.hat())));
    }
}

TEST_CASE("associator is a valid isomorphism") {
    for (int i = 0; i < 4; ++i) {
        EffObj x = gen::random_eff_obj(rng), y = gen::random_eff_obj(rng),
               z = gen::random_eff_obj(rng);
        TensorStructure xy = tensor_structure(x.hat(), y.hat());
        TensorStructure xy_z = tensor_structure(xy.obj.hat(), z.hat());
        TensorStructure yz = tensor_structure(y.hat(), z.hat());
        TensorStructure x_yz = tensor_structure(x.hat(), yz.obj.hat());
        Mor a = associator(xy, xy_z, yz, x_yz);
        a.check();
        CHECK(is_isomorphism(a));
    }
}

TEST_CASE("function objects of standard pairs") {
    EffObj s0 = unit_obj();
    for (int i = 0; i < 5; ++i) {
        EffObj x = gen::random_eff_obj(rng);
        CHECK(function_obj(s0, x) == x);
    }
    auto nu = gen::random_nu(rng);
    std::map<int, int> neg;
    for (auto [n, v] : nu) neg[n] = -v;
    CHECK(function_obj(sphere(nu), s0) == sphere(neg));
    CHECK(function_obj(sigma(4), s0) == zero_obj());
    // F(sigma_n, sigma_n) is the cell shifted down to degree 0
    CHECK(function_obj(sigma(4), sigma(4)) == sigma(4, -1));
}

TEST_CASE("functional duals of spheres") {
    for (int i = 0; i < 6; ++i) {
        auto nu = gen::random_nu(rng);
        std::map<int, int> neg;
        for (auto [n, v] : nu) neg[n] = -v;
        EffObj d = dual(sphere(nu));
        CHECK(d == sphere(neg));
        CHECK(dual(d) == sphere(nu));
    }
}

TEST_CASE("spheres and finite lattices are dualizable") {
    DualityDecision d1 = is_dualizable(sphere({{1, 1}}));
    CHECK(d1.dualizable());
    // triangle identities hold exactly for the found witness
    d1.witness->coev.check();
    d1.witness->ev.check();

    DualityDecision d2 = is_dualizable(lk(GradedVS({0, 3})));
    CHECK(d2.dualizable());

    DualityDecision d3 = is_dualizable(unit_obj());
    CHECK(d3.dualizable());
}

TEST_CASE("cells are not dualizable, with the canonical-map obstruction") {
    DualityDecision d = is_dualizable(sigma(3));
    CHECK(!d.dualizable());
    REQUIRE(d.refusal.has_value());
    CHECK(d.refusal->probe == "self");
    CHECK(d.refusal->component == 3);
}

TEST_CASE("tensor-hom adjunction on structured and random triples") {
    EffObj s0 = unit_obj();
    {
        TensorHomReport r = check_tensor_hom(s0, s0, gen::random_eff_obj(rng), -6, 6);
        CHECK(r.dims_equal);
        CHECK(r.bijection_ok);
    }
    {
        auto nu = gen::random_nu(rng), mu = gen::random_nu(rng);
        TensorHomReport r = check_tensor_hom(sphere(nu), sphere(mu), s0, -6, 6);
        CHECK(r.dims_equal);
        CHECK(r.bijection_ok);
    }
    {
        TensorHomReport r = check_tensor_hom(sigma(1), sphere({{1, 1}}), sigma(1), -6, 6);
        CHECK(r.dims_equal);
        CHECK(r.bijection_ok);
    }
    for (int i = 0; i < 5; ++i) {
        EffObj x = gen::random_eff_obj(rng), y = gen::random_eff_obj(rng),
               z = gen::random_eff_obj(rng);
        TensorHomReport r = check_tensor_hom(x, y, z, -4, 4);
        CHECK(r.dims_equal);
        CHECK(r.bijection_ok);
    }
}

TEST_CASE("R functor values") {
    HomGroup r0 = r_functor(unit_obj(), -4, 4);
    CHECK(r0.dim_at(0) == 1);
    // maps out of the unit into a cell live exactly in the cell's degree
    HomGroup rs = r_functor(sigma(5), -4, 4);
    CHECK(rs.dim_at(1) == 1);
    for (int t = -4; t <= 4; ++t)
        if (t != 1) CHECK(rs.dim_at(t) == 0);
}

TEST_CASE("L -| R adjunction dimensions") {
    for (int i = 0; i < 10; ++i) {
        std::uniform_int_distribution<int> dd(-2, 2), cnt(1, 3);
        std::vector<int> kd;
        for (int k = cnt(rng); k-- > 0;) kd.push_back(dd(rng));
        GradedVS kvs(kd);
        EffObj a = gen::random_eff_obj(rng);
        HomGroup ra = r_functor(a, -8, 8);
        HomGroup lhs = hom_group(lk(kvs), a, -4, 4);
        for (int d = -4; d <= 4; ++d) {
            size_t rhs = 0;
            for (int t = -4; t <= 4; ++t) rhs += kvs.dim_at(t) * ra.dim_at(t + d);
            CHECK(lhs.dim_at(d) == rhs);
        }
    }
}

TEST_SUITE_END();
