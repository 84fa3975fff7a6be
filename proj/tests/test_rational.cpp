#include <doctest.h>

#include <random>

#include "so2alg/qmatrix.hpp"
#include "so2alg/rational.hpp"

using namespace so2alg;

TEST_SUITE_BEGIN("rational");

static std::string i128_str(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (m) {
        s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (neg) s.push_back('-');
    return std::string(s.rbegin(), s.rend());
}

TEST_CASE("BigInt arithmetic agrees with long long") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000000LL, 1000000000LL);
    for (int iter = 0; iter < 2000; ++iter) {
        long long a = dist(rng), b = dist(rng);
        BigInt A(a), B(b);
        CHECK((A + B).to_ll() == a + b);
        CHECK((A - B).to_ll() == a - b);
        CHECK((A * B).to_string() == i128_str(static_cast<__int128>(a) * b));
        if (b != 0) {
            CHECK((A / B).to_ll() == a / b);
            CHECK((A % B).to_ll() == a % b);
        }
        CHECK((A < B) == (a < b));
    }
}

TEST_CASE("BigInt multiplication and division round trip on large values") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long long> dist(1, 1000000000LL);
    for (int iter = 0; iter < 300; ++iter) {
        BigInt a(dist(rng));
        for (int k = 0; k < 4; ++k) a = a * BigInt(dist(rng));
        BigInt b(dist(rng));
        for (int k = 0; k < 2; ++k) b = b * BigInt(dist(rng));
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r >= BigInt(0));
        CHECK(r < b);
    }
}

TEST_CASE("BigInt string round trip") {
    CHECK(BigInt::from_string("-123456789012345678901234567890").to_string() ==
          "-123456789012345678901234567890");
    CHECK(BigInt::from_string("0").to_string() == "0");
    CHECK(BigInt::from_string("+42").to_string() == "42");
}

TEST_CASE("Rat reduction and parsing") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-3, -6) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat::parse("7/21") == Rat(1, 3));
    CHECK(Rat::parse("-5") == Rat(-5));
    CHECK(Rat(1, 2).to_string() == "1/2");
    CHECK(Rat(-7).to_string() == "-7");
    CHECK_THROWS(Rat(1, 0));
}

TEST_CASE("Rat field axioms on random samples") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long long> dist(-50, 50);
    auto rnd = [&]() {
        long long d = 0;
        while (d == 0) d = dist(rng);
        return Rat(dist(rng), d);
    };
    for (int i = 0; i < 500; ++i) {
        Rat a = rnd(), b = rnd(), c = rnd();
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        if (!a.is_zero()) CHECK(a / a == Rat(1));
    }
}

TEST_CASE("QMat rref, kernel and inverse") {
    QMat m(2, 3);
    m(0, 0) = Rat(1);
    m(0, 1) = Rat(2);
    m(0, 2) = Rat(3);
    m(1, 0) = Rat(2);
    m(1, 1) = Rat(4);
    m(1, 2) = Rat(6);
    CHECK(m.rank() == 1);
    QMat k = m.kernel();
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());

    QMat a(2, 2);
    a(0, 0) = Rat(1);
    a(0, 1) = Rat(1);
    a(1, 0) = Rat(1);
    a(1, 1) = Rat(2);
    auto inv = a.inverse();
    REQUIRE(inv.has_value());
    CHECK((a * *inv) == QMat::identity(2));
}

TEST_CASE("QMat solve finds solutions exactly when consistent") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int iter = 0; iter < 100; ++iter) {
        size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        QMat a(r, c), x(c, 1);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) a(i, j) = Rat(dist(rng));
        for (size_t j = 0; j < c; ++j) x(j, 0) = Rat(dist(rng));
        QMat b = a * x;
        auto sol = a.solve(b);
        REQUIRE(sol.has_value());
        CHECK((a * *sol) == b);
    }
}

TEST_CASE("span_intersection of coordinate planes") {
    QMat a(3, 2), b(3, 2);
    a(0, 0) = Rat(1);
    a(1, 1) = Rat(1);  // span{e0, e1}
    b(1, 0) = Rat(1);
    b(2, 1) = Rat(1);  // span{e1, e2}
    QMat c = span_intersection(a, b);
    REQUIRE(c.cols() == 1);
    CHECK(c(1, 0) == Rat(1));
    CHECK(c(0, 0).is_zero());
    CHECK(c(2, 0).is_zero());
}

TEST_SUITE_END();
