#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "powerclass.hpp"

using namespace shaq;

TEST_CASE("class_of examples") {
    // 2^5 is a fifth power
    PowerClass a = class_of(Rat(96), 5);
    CHECK(a.exps == std::map<Int, long>{{3, 1}});
    // -3 * 2^5 = 3 mod fifth powers (sign absorbed for odd ell)
    PowerClass b = class_of(Rat(-96), 5);
    CHECK(b == class_of(Rat(3), 5));
    // d = 2/9 -> {2:1, 3:3}
    PowerClass c = class_of(Rat(2, 9), 5);
    CHECK(c.exps == std::map<Int, long>{{2, 1}, {3, 3}});
    // sign matters for ell = 2
    CHECK(!(class_of(Rat(-1), 2) == class_of(Rat(1), 2)));
    CHECK(class_of(Rat(-1), 5) == class_of(Rat(1), 5));
}

TEST_CASE("class homomorphism properties") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> dist(1, 400);
    for (int i = 0; i < 100; ++i) {
        Rat q1(dist(rng), dist(rng)), q2(dist(rng), dist(rng));
        q1.canonicalize();
        q2.canonicalize();
        if (i % 2) q1 = -q1;
        for (long ell : {2L, 3L, 5L, 7L}) {
            CHECK(class_of(q1 * q2, ell) == pc_mul(class_of(q1, ell), class_of(q2, ell)));
            Rat qpow = 1;
            for (long k = 0; k < ell; ++k) qpow *= q1;
            CHECK(class_of(qpow, ell).is_identity());
        }
    }
}

namespace {

// brute-force span size for dim <= 4 (the [DERIVED] oracle)
size_t brute_span_size(const std::vector<PowerClass>& gens, long ell) {
    std::set<std::pair<int, std::map<Int, long>>> seen;
    std::vector<PowerClass> frontier;
    PowerClass id;
    id.ell = ell;
    frontier.push_back(id);
    seen.insert({id.sign_bit, id.exps});
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<PowerClass> next = frontier;
        for (const auto& f : frontier)
            for (const auto& g : gens) {
                PowerClass h = pc_mul(f, g);
                if (seen.insert({h.sign_bit, h.exps}).second) {
                    next.push_back(h);
                    grew = true;
                }
            }
        frontier = next;
    }
    return seen.size();
}

} // namespace

TEST_CASE("subgroup_from vs brute span") {
    // k=6 example: coker phi^vee 2-part has dimension 2
    PowerClass g1 = class_of(Rat(14), 2), g2 = class_of(Rat(17), 2);
    CHECK(subgroup_from({g1, g2}).size() == 4);
    CHECK(subgroup_from({class_of(Rat(14 * 17), 2)}).size() == 2);
    CHECK(subgroup_from({}).size() == 1);
    CHECK(subgroup_from({class_of(Rat(3), 5), class_of(Rat(3), 5)}).dim() == 1);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> dist(2, 60);
    for (int iter = 0; iter < 40; ++iter) {
        long ell = (iter % 3 == 0) ? 2 : ((iter % 3 == 1) ? 3 : 5);
        std::vector<PowerClass> gens;
        for (int i = 0; i < 3; ++i) {
            Rat q(dist(rng), dist(rng));
            q.canonicalize();
            if (iter % 2) q = -q;
            gens.push_back(class_of(q, ell));
        }
        ClassSubgroup g = subgroup_from(gens);
        CHECK(g.size() == Int(long(brute_span_size(gens, ell))));
        for (const auto& c : gens) CHECK(subgroup_contains(g, c));
    }
}

TEST_CASE("is_square_in_quadratic") {
    CHECK(is_square_in_quadratic(Rat(-3), Int(-3)));
    CHECK(is_square_in_quadratic(Rat(5), Int(5)));
    CHECK(is_square_in_quadratic(Rat(-55 * -55), Int(-3))); // k=3: <-5*11> = <-5*11>
    CHECK(!is_square_in_quadratic(Rat(-55), Int(5)));
    CHECK(!is_square_in_quadratic(Rat(7), Int(-3)));
    CHECK(is_square_in_quadratic(Rat(-12), Int(-3))); // -12 = (2 sqrt(-3))^2
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> dist(1, 200);
    for (int i = 0; i < 60; ++i) {
        Rat q(dist(rng), dist(rng));
        q.canonicalize();
        CHECK(is_square_in_quadratic(q * q, Int(-3)));
        CHECK(is_square_in_quadratic(q * q, Int(5)));
    }
}

TEST_CASE("cyclotomic arithmetic") {
    long ell = 5;
    CycloElem xi = cyclo_xi_power(ell, 1);
    // xi^5 = 1
    CHECK(cyclo_pow(xi, 5) == cyclo_from_rational(ell, 1));
    // 1 + xi + xi^2 + xi^3 + xi^4 = 0
    CycloElem s = cyclo_from_rational(ell, 1);
    for (long k = 1; k < 5; ++k) s = cyclo_add(s, cyclo_xi_power(ell, k));
    CHECK(s.is_zero());
    // inverse
    CycloElem a = cyclo_add(cyclo_from_rational(ell, 2), xi);
    CHECK(cyclo_mul(a, cyclo_inv(a)) == cyclo_from_rational(ell, 1));
}

TEST_CASE("is_lth_power_in_cyclotomic") {
    long ell = 5;
    auto W = [&](const Rat& q) {
        return CyclotomicClassWitness{ell, ell, cyclo_from_rational(ell, q)};
    };
    CHECK(is_lth_power_in_cyclotomic(W(Rat(32))));   // 2^5
    CHECK(!is_lth_power_in_cyclotomic(W(Rat(2))));   // norm 16 is not a fifth power
    CHECK(is_lth_power_in_cyclotomic(W(Rat(1))));
    // xi^5 = 1: the identity class
    CyclotomicClassWitness one{ell, ell, cyclo_pow(cyclo_xi_power(ell, 1), 5)};
    CHECK(is_lth_power_in_cyclotomic(one));
    // stability under multiplying by an explicit fifth power
    CycloElem w = cyclo_add(cyclo_from_rational(ell, 3), cyclo_xi_power(ell, 2));
    CycloElem w5 = cyclo_pow(w, 5);
    CyclotomicClassWitness w5w{ell, ell, w5};
    CHECK(is_lth_power_in_cyclotomic(w5w));
    CycloElem nontriv = cyclo_add(cyclo_from_rational(ell, 1), cyclo_xi_power(ell, 1));
    CyclotomicClassWitness a{ell, ell, nontriv};
    CyclotomicClassWitness b{ell, ell, cyclo_mul(nontriv, w5)};
    CHECK(is_lth_power_in_cyclotomic(a) == is_lth_power_in_cyclotomic(b));
}
