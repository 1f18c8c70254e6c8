#include <catch2/catch_amalgamated.hpp>

#include "torsionlab/ideal.hpp"
#include "torsionlab/quad.hpp"

#include <random>

using namespace torsionlab;

TEST_CASE("ring_of_integers basis cases") {
    QuadRing r1(1);
    CHECK_FALSE(r1.half_basis);
    CHECK(r1.nm == 1);
    QuadRing r3(3);
    CHECK(r3.half_basis);
    CHECK(r3.tr == 1);
    CHECK(r3.nm == 1);
    CHECK_THROWS_AS(QuadRing(4), std::invalid_argument);
    CHECK_THROWS_AS(QuadRing(12), std::invalid_argument);
    CHECK_THROWS_AS(QuadRing(0), std::invalid_argument);
}

TEST_CASE("element norms and conjugation") {
    QuadRing R1(1);
    QuadInt opi(Int(1), Int(1)); // 1+i
    CHECK(norm(R1, opi) == 2);
    CHECK(norm(R1, QuadInt(0)) == 0);
    QuadRing R3(3);
    CHECK(norm(R3, QuadInt(Int(0), Int(1))) == 1); // w*wbar = (1+3)/4

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-30, 30);
    for (long Dv : {1L, 2L, 3L, 7L, 11L}) {
        QuadRing R(Dv);
        for (int i = 0; i < 50; ++i) {
            QuadInt x(Int(d(rng)), Int(d(rng))), y(Int(d(rng)), Int(d(rng)));
            CHECK(norm(R, mul(R, x, y)) == norm(R, x) * norm(R, y));
            CHECK(conj(R, conj(R, x)) == x);
            CHECK(mul(R, x, conj(R, x)) == QuadInt(norm(R, x), Int(0)));
        }
    }
}

TEST_CASE("element parsing") {
    QuadRing R1(1);
    CHECK(parse_quadint(R1, "1+i") == QuadInt(Int(1), Int(1)));
    CHECK(parse_quadint(R1, "2") == QuadInt(Int(2), Int(0)));
    CHECK(parse_quadint(R1, "3-2*w") == QuadInt(Int(3), Int(-2)));
    CHECK(parse_quadint(R1, "1+2*sqrt(-1)") == QuadInt(Int(1), Int(2)));
    QuadRing R3(3);
    CHECK(parse_quadint(R3, "sqrt(-3)") == QuadInt(Int(-1), Int(2)));
    CHECK(parse_quadint(R3, "w") == QuadInt(Int(0), Int(1)));
    CHECK_THROWS(parse_quadint(R3, ""));
}

TEST_CASE("ideal norms") {
    QuadRing R1(1);
    CHECK(IdealOD::principal(R1, parse_quadint(R1, "1+i")).norm() == 2);
    CHECK(IdealOD::principal(R1, QuadInt(2)).norm() == 4);
    QuadRing R3(3);
    CHECK(IdealOD::principal(R3, parse_quadint(R3, "sqrt(-3)")).norm() == 3);
    CHECK_THROWS(IdealOD::principal(R1, QuadInt(0)));
}

TEST_CASE("ideal norm multiplicativity on random pairs") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-9, 9);
    int done = 0;
    for (long Dv : {1L, 2L, 3L, 7L, 11L}) {
        QuadRing R(Dv);
        int count = 0;
        while (count < 20) {
            QuadInt x(Int(d(rng)), Int(d(rng))), y(Int(d(rng)), Int(d(rng)));
            if (x.is_zero() || y.is_zero()) continue;
            IdealOD a = IdealOD::principal(R, x), b = IdealOD::principal(R, y);
            CHECK(a.product(b).norm() == a.norm() * b.norm());
            ++count;
            ++done;
        }
    }
    CHECK(done == 100);
}

static std::vector<IdealOD> ideals_up_to_norm(const QuadRing& R, long bound) {
    // enumerate HNF triples (A, B, C) with A*C <= bound, closed under w
    std::vector<IdealOD> out;
    for (long A = 1; A <= bound; ++A)
        for (long C = 1; A * C <= bound; ++C)
            for (long B = 0; B < A; ++B) {
                try {
                    out.emplace_back(R, Int(A), Int(B), Int(C));
                } catch (const std::invalid_argument&) {
                }
            }
    return out;
}

TEST_CASE("factor_ideal re-multiplies to the input") {
    for (long Dv : {1L, 2L, 3L, 7L, 11L}) {
        QuadRing R(Dv);
        for (const auto& a : ideals_up_to_norm(R, 100)) {
            auto f = factor_ideal(a); // verifies product == a internally
            for (const auto& [P, e] : f) {
                Int n = P.norm();
                // prime power norm: p or p^2 for the smallest prime factor p
                Int q = n;
                for (Int p = 2; p * p <= n; ++p)
                    if (n % p == 0) { q = p; break; }
                CHECK((n == q || n == q * q));
            }
        }
    }
}

TEST_CASE("factorization examples in O_1") {
    QuadRing R(1);
    IdealOD two = IdealOD::principal(R, QuadInt(2));
    auto f2 = factor_ideal(two);
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.norm() == 2);
    CHECK(f2[0].second == 2);

    IdealOD opi = IdealOD::principal(R, parse_quadint(R, "1+i"));
    auto f1 = factor_ideal(opi);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].second == 1);

    IdealOD five = IdealOD::principal(R, QuadInt(5));
    auto f5 = factor_ideal(five);
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].first.norm() == 5);
    CHECK(f5[1].first.norm() == 5);
    CHECK(f5[0].first != f5[1].first);
}

TEST_CASE("residue ring sizes and consistency") {
    QuadRing R(1);
    ResidueRing r1(IdealOD::principal(R, parse_quadint(R, "1+i")));
    CHECK(r1.size() == 2);
    CHECK(r1.elements().size() == 2);
    ResidueRing r2(IdealOD::principal(R, QuadInt(2)));
    CHECK(r2.size() == 4);
    ResidueRing r3(IdealOD::unit_ideal(R));
    CHECK(r3.size() == 1);

    // addition/multiplication consistent with reduction
    auto els = r2.elements();
    for (const auto& x : els)
        for (const auto& y : els) {
            CHECK(r2.add(x, y) == r2.reduce(x + y));
            CHECK(r2.mul(x, y) == r2.reduce(mul(R, x, y)));
        }
}

TEST_CASE("delta_D") {
    auto d1 = delta_D(QuadRing(1));
    CHECK(d1.value == QuadRat(QuadInt(Int(0), Int(1))));
    CHECK(d1.im_coeff == 1); // Im = 1*sqrt(1) = 1
    auto d3 = delta_D(QuadRing(3));
    CHECK(d3.im_coeff == Rat(1, 2)); // Im = sqrt(3)/2
    CHECK(d3.value == QuadRat(QuadInt(Int(-1), Int(2)), Int(2)));
    auto d2 = delta_D(QuadRing(2));
    CHECK(d2.value == QuadRat(QuadInt(Int(0), Int(1))));
    CHECK(d2.norm == 2);
}

TEST_CASE("congruence index examples") {
    QuadRing R(1);
    CHECK(congruence_index(IdealOD::principal(R, parse_quadint(R, "1+i"))) == 6);
    CHECK(congruence_index(IdealOD::principal(R, QuadInt(2))) == 48);
    CHECK(congruence_index(IdealOD::unit_ideal(R)) == 1);
}

TEST_CASE("congruence index >= ideal norm (Lemma bound)") {
    for (long Dv : {1L, 2L, 3L}) {
        QuadRing R(Dv);
        for (const auto& a : ideals_up_to_norm(R, 60))
            CHECK(congruence_index(a) >= a.norm());
    }
}

TEST_CASE("colon and intersection") {
    QuadRing R(1);
    IdealOD two = IdealOD::principal(R, QuadInt(2));
    // (2) : (1+i) = (1-i)(1+i)(1+i)... (2) = (1+i)^2, so colon = (1+i)
    IdealOD c = two.colon(parse_quadint(R, "1+i"));
    CHECK(c.norm() == 2);
    CHECK(c.contains(parse_quadint(R, "1+i")));
    // (2) : (1) = (2)
    CHECK(two.colon(QuadInt(1)) == two);
    IdealOD opi = IdealOD::principal(R, parse_quadint(R, "1+i"));
    CHECK(two.intersect(opi) == two);
}
