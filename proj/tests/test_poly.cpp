#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fpoly.hpp"
#include "qpoly.hpp"

using namespace shaq;

TEST_CASE("fp arithmetic and gcd") {
    Int p(13);
    fp::Poly a = fp::make({Int(1), Int(0), Int(1)}, p);     // x^2 + 1
    fp::Poly b = fp::make({Int(12), Int(0), Int(1)}, p);    // x^2 - 1
    fp::Poly g = fp::gcd(fp::mul(a, b, p), a, p);
    CHECK(g == a);
    CHECK(fp::eval(b, Int(5), p) == mod(Int(24), p));
}

TEST_CASE("fp roots small and large p") {
    Int p(13);
    // (x-2)(x-5)(x-7) mod 13
    fp::Poly f = fp::mul(fp::make({Int(-2), Int(1)}, p),
                         fp::mul(fp::make({Int(-5), Int(1)}, p), fp::make({Int(-7), Int(1)}, p), p),
                         p);
    CHECK(fp::roots(f, p) == std::vector<Int>{2, 5, 7});
    CHECK(fp::count_roots(f, p) == 3);

    Int q("1000003");
    fp::Poly g = fp::mul(fp::make({Int(-12345), Int(1)}, q), fp::make({Int(-99999), Int(1)}, q), q);
    auto r = fp::roots(g, q);
    CHECK(r == std::vector<Int>{12345, 99999});
    // x^2 + 1 has no roots mod 1000003 iff 1000003 = 3 mod 4
    CHECK(mod(q, Int(4)) == 3);
    CHECK(fp::count_roots(fp::make({Int(1), Int(0), Int(1)}, q), q) == 0);
}

TEST_CASE("qp divmod and gcd") {
    qp::Poly f = qp::make({Rat(-1), Rat(0), Rat(1)});           // x^2 - 1
    qp::Poly g = qp::make({Rat(1), Rat(1)});                    // x + 1
    auto [q, r] = qp::divmod(f, g);
    CHECK(r.empty());
    CHECK(q == qp::make({Rat(-1), Rat(1)}));
    CHECK(qp::divides(g, f));
    CHECK(qp::gcd(f, g) == qp::make({Rat(1), Rat(1)}));
}

TEST_CASE("rational roots") {
    // (x - 2/3)(x + 5)(x^2 + 1), scaled by 7
    qp::Poly f = qp::mul(qp::mul(qp::make({Rat(-2, 3), Rat(1)}), qp::make({Rat(5), Rat(1)})),
                         qp::make({Rat(7), Rat(0), Rat(7)}));
    auto roots = qp::rational_roots(f);
    CHECK(roots == std::vector<Rat>{Rat(-5), Rat(2, 3)});

    // large coefficients: (x - 10^12)(x - 1/10^9) * (x^2+x+1)
    Rat big = Rat(Int("1000000000000"));
    Rat small = Rat(1, Int("1000000000"));
    qp::Poly g = qp::mul(qp::mul(qp::make({-big, Rat(1)}), qp::make({-small, Rat(1)})),
                         qp::make({Rat(1), Rat(1), Rat(1)}));
    auto r2 = qp::rational_roots(g);
    CHECK(r2 == std::vector<Rat>{small, big});
}

TEST_CASE("sturm real root count and signs") {
    // (x^2 - 2)(x^2 + 3): two real roots
    qp::Poly f = qp::mul(qp::make({Rat(-2), Rat(0), Rat(1)}), qp::make({Rat(3), Rat(0), Rat(1)}));
    CHECK(qp::count_real_roots(f) == 2);
    auto ivs = qp::isolate_real_roots(qp::squarefree_part(f));
    CHECK(ivs.size() == 2);
    // sign of g = x at the two roots of x^2-2
    qp::Poly sf = qp::squarefree_part(f);
    CHECK(qp::sign_at_root(sf, ivs[0], qp::make({Rat(0), Rat(1)})) == -1);
    CHECK(qp::sign_at_root(sf, ivs[1], qp::make({Rat(0), Rat(1)})) == 1);
}

TEST_CASE("p-adic roots: splitting checks") {
    // x^2 - 2 over Q_7: 2 is a QR mod 7 (3^2 = 2), so splits
    qp::IPoly f{Int(-2), Int(0), Int(1)};
    CHECK(qp::splits_completely_over_qp(f, Int(7), 64));
    // not over Q_5 (2 is not a QR mod 5)
    CHECK(!qp::splits_completely_over_qp(f, Int(5), 64));
    // x^2 - 17 over Q_2: 17 = 1 mod 16, a 2-adic square
    qp::IPoly g{Int(-17), Int(0), Int(1)};
    CHECK(qp::splits_completely_over_qp(g, Int(2), 64));
    // x^2 - 3 over Q_2: 3 != 1 mod 8
    qp::IPoly h{Int(-3), Int(0), Int(1)};
    CHECK(!qp::splits_completely_over_qp(h, Int(2), 64));
    // x^2 - p has no root in Q_p (odd valuation)
    qp::IPoly s{Int(-7), Int(0), Int(1)};
    CHECK(!qp::splits_completely_over_qp(s, Int(7), 64));
    // negative-valuation roots: 25x^2 - 1 over Q_5 (roots 1/5, -1/5)
    qp::IPoly t{Int(-1), Int(0), Int(25)};
    CHECK(qp::splits_completely_over_qp(t, Int(5), 64));
    auto roots = qp::qp_roots(t, Int(5), 10, 64);
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) CHECK(valuation(r.approx, Int(5)) == -1);
}

TEST_CASE("p-adic roots: values and precision") {
    // (x - 3)(x - 10) over Q_7: both roots = 3 mod 7, double residue forces recursion
    qp::IPoly f{Int(30), Int(-13), Int(1)};
    auto roots = qp::qp_roots(f, Int(7), 8, 64);
    REQUIRE(roots.size() == 2);
    std::vector<Rat> vals{roots[0].approx, roots[1].approx};
    Int p7 = 1;
    for (int i = 0; i < 8; ++i) p7 *= 7;
    for (const Rat& v : vals) {
        bool is3 = mod(Int(v.get_num()) - 3 * Int(v.get_den()), p7) == 0;
        bool is10 = mod(Int(v.get_num()) - 10 * Int(v.get_den()), p7) == 0;
        CHECK((is3 || is10));
    }
}

TEST_CASE("random consistency: rational roots found by qp_roots") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(-30, 30);
    for (int iter = 0; iter < 25; ++iter) {
        long r1 = dist(rng), r2 = dist(rng), r3 = dist(rng);
        if (r1 == r2 || r2 == r3 || r1 == r3) continue;
        qp::Poly f = qp::mul(qp::mul(qp::make({Rat(-r1), Rat(1)}), qp::make({Rat(-r2), Rat(1)})),
                             qp::make({Rat(-r3), Rat(1)}));
        auto roots = qp::rational_roots(f);
        std::vector<Rat> expect{Rat(r1), Rat(r2), Rat(r3)};
        std::sort(expect.begin(), expect.end());
        CHECK(roots == expect);
        CHECK(qp::splits_completely_over_qp(qp::to_integer(f), Int(11), 64));
    }
}
