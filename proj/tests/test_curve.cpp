#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curve.hpp"

using namespace shaq;

namespace {

WeierstrassModel n5_d_model(const Rat& d) { return WeierstrassModel(d + 1, d, d, 0, 0); }

WeierstrassModel n5_integral(long u, long v) {
    return WeierstrassModel(Rat(u + v), Rat(u * v), Rat(u) * v * v, 0, 0);
}

} // namespace

TEST_CASE("discriminant examples") {
    // N=5 integral model at (u,v) = (1,11): Delta = -(uv)^5 (u^2+11uv-v^2) = -161051
    WeierstrassModel E = n5_integral(1, 11);
    CHECK(E.disc == Rat(-161051));
    // d = 0 makes the family model singular
    CHECK_THROWS_AS(WeierstrassModel(1, 0, 0, 0, 0), Error);
    // y^2 = x^3 + 1
    CHECK(WeierstrassModel(0, 0, 0, 0, 1).disc == Rat(-432));
}

TEST_CASE("b/c invariant relation") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> dist(-20, 20);
    int built = 0;
    while (built < 50) {
        try {
            WeierstrassModel m(Rat(dist(rng)), Rat(dist(rng)), Rat(dist(rng)), Rat(dist(rng)),
                               Rat(dist(rng)));
            CHECK(m.c4 * m.c4 * m.c4 - m.c6 * m.c6 == 1728 * m.disc);
            ++built;
        } catch (const Error&) {
        }
    }
}

TEST_CASE("group law on the N=5 family") {
    Rat d(2, 7);
    WeierstrassModel E = n5_d_model(d);
    CurvePoint P(Rat(0), Rat(0));
    CHECK(on_curve(E, P));
    CurvePoint P2 = add(E, P, P);
    CHECK(P2 == CurvePoint(-d, d * d)); // 2P = (-d, d^2)
    CurvePoint P3 = add(E, P2, P);
    CHECK(P3 == CurvePoint(-d, Rat(0))); // 3P = (-d, 0)
    CurvePoint P4 = add(E, P3, P);
    CHECK(P4 == CurvePoint(Rat(0), -d)); // 4P = (0, -d)
    CHECK(scalar_mul(E, 5, P).infinity); // 5P = O
    CHECK(add(E, P, CurvePoint::at_infinity()) == P);
    CHECK(point_order(E, P, 10) == 5);
}

TEST_CASE("group law properties on random small points") {
    // sample points on y^2 + y = x^3 - x (37a1, rank 1): lots of small points
    WeierstrassModel E(0, 0, 1, -1, 0);
    CurvePoint G(Rat(0), Rat(0));
    std::vector<CurvePoint> pts;
    for (long k = 1; k <= 6; ++k) pts.push_back(scalar_mul(E, k, G));
    for (const auto& A : pts)
        for (const auto& B : pts) {
            CHECK(add(E, A, B) == add(E, B, A));
            for (const auto& C : pts)
                CHECK(add(E, add(E, A, B), C) == add(E, A, add(E, B, C)));
        }
}

TEST_CASE("transform and compose") {
    WeierstrassModel E = n5_integral(2, 7);
    ModelChange id;
    CHECK(transform(E, id) == E);
    ModelChange ch{Rat(3), Rat(5), Rat(-2), Rat(11)};
    WeierstrassModel F = transform(E, ch);
    CHECK(transform(F, inverse(ch)) == E);
    // disc scales by u^12
    Rat u12 = 1;
    for (int i = 0; i < 12; ++i) u12 *= ch.u;
    CHECK(F.disc * u12 == E.disc);
    // compose
    ModelChange ch2{Rat(1, 2), Rat(-1), Rat(4), Rat(0)};
    WeierstrassModel G1 = transform(transform(E, ch), ch2);
    WeierstrassModel G2 = transform(E, compose(ch, ch2));
    CHECK(G1 == G2);
    // points map consistently
    CurvePoint P(Rat(0), Rat(0));
    CurvePoint Q = map_point(ch, P);
    CHECK(on_curve(F, Q));
    CHECK(map_point(inverse(ch), Q) == P);
}

TEST_CASE("division polynomial vanishing") {
    WeierstrassModel E = n5_integral(3, 4);
    CurvePoint P(Rat(0), Rat(0));
    // P has order 5, so f_5(x(P)) = 0
    qp::Poly f5 = division_poly_x(E, 5);
    CHECK(qp::eval(f5, P.x) == 0);
    CHECK(qp::eval(f5, add(E, P, P).x) == 0);
    // and f_7 does not vanish at x(P)
    CHECK(qp::eval(division_poly_x(E, 7), P.x) != 0);
    // 2-division polynomial vanishes exactly at 2-torsion x
    WeierstrassModel E2(0, 0, 0, -1, 0); // y^2 = x^3 - x
    qp::Poly F = two_division_poly(E2);
    for (long r : {-1L, 0L, 1L}) CHECK(qp::eval(F, Rat(r)) == 0);
}

TEST_CASE("point counting mod p") {
    // y^2 = x^3 - x over F_5: supersingular, 8 points
    WeierstrassModel E(0, 0, 0, -1, 0);
    CHECK(count_points_mod_p(E, Int(5)) == 8);
    // y^2 + y = x^3 - x (37a1): a_2 = -2 so #E(F_2) = 5
    WeierstrassModel E37(0, 0, 1, -1, 0);
    CHECK(count_points_mod_p(E37, Int(2)) == 5);
}

TEST_CASE("torsion subgroups of family curves") {
    // N=6 member d = 2/7 (Cremona 770g1): Z/6
    WeierstrassModel E770(Rat(9), Rat(10), Rat(70), Rat(0), Rat(0));
    TorsionGroup t = torsion_subgroup(E770);
    CHECK(t.invariants == std::vector<long>{6});
    CHECK(t.order == 6);
    // N=5 member d = 1/11: Z/5 (no 2-torsion: some good reduction count is odd)
    WeierstrassModel E5 = n5_integral(1, 11);
    TorsionGroup t5 = torsion_subgroup(E5);
    CHECK(t5.invariants == std::vector<long>{5});
    bool odd_count = false;
    for (long p : {3L, 7L, 13L, 17L, 23L})
        if (valuation(E5.disc, Int(p)) == 0 && mod(count_points_mod_p(E5, Int(p)), Int(2)) != 0)
            odd_count = true;
    CHECK(odd_count);
    // full 2-torsion example: y^2 = x(x-1)(x+1)
    TorsionGroup t2 = torsion_subgroup(WeierstrassModel(0, 0, 0, -1, 0));
    CHECK(t2.invariants == std::vector<long>{2, 2});
    CHECK(t2.order == 4);
    // X_1(10) member d = 5/2 has Z/10
    // (built via the d-model scaled to an integral model elsewhere; here use d-model directly)
    Rat d(5, 2), d2 = d * d, d3 = d2 * d;
    WeierstrassModel E10(-d3 + d2 + d + 1, -d2 * (d - 1) * (d + 1), -d2 * (d - 1) * (d + 1) * (d + 1),
                         0, 0);
    TorsionGroup t10 = torsion_subgroup(E10);
    CHECK(t10.invariants == std::vector<long>{10});
}

TEST_CASE("torsion injects into good reductions") {
    WeierstrassModel E770(Rat(9), Rat(10), Rat(70), Rat(0), Rat(0));
    TorsionGroup t = torsion_subgroup(E770);
    for (long p : {3L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        if (valuation(E770.disc, Int(p)) != 0) continue;
        CHECK(mod(count_points_mod_p(E770, Int(p)), Int(t.order)) == 0);
    }
}

TEST_CASE("torsion: Z/2 x Z/4 structure") {
    // y^2 = x(x+1)(x+4): (2, 6) has order 4 and the 2-torsion is full
    WeierstrassModel E(0, 5, 0, 4, 0);
    CurvePoint P(Rat(2), Rat(6));
    REQUIRE(on_curve(E, P));
    CHECK(point_order(E, P, 8) == 4);
    TorsionGroup t = torsion_subgroup(E);
    CHECK(t.invariants == std::vector<long>{2, 4});
    CHECK(t.order == 8);
}
