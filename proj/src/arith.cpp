#include "arith.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>

namespace shaq {

namespace {

std::atomic<uint64_t> g_factor_budget{0}; // 0 = uninitialised

uint64_t initial_budget() {
    if (const char* env = std::getenv("SHAQ_FACTOR_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 20'000'000ULL;
}

} // namespace

uint64_t factor_budget() {
    uint64_t b = g_factor_budget.load();
    if (b == 0) {
        b = initial_budget();
        g_factor_budget.store(b);
    }
    return b;
}

void set_factor_budget(uint64_t budget) { g_factor_budget.store(budget ? budget : 1); }

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t limit = 1'000'000;
        std::vector<bool> comp(limit, false);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i < limit; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j < limit; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

Int Factorization::reconstruct() const {
    Int out = sign;
    for (const auto& [p, e] : exponents) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        out *= pe;
    }
    return out;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // Deterministic Miller-Rabin below the Sorenson-Webster bound, BPSW-style
    // fallback above it (far beyond anything this tool factors in practice).
    static const Int mr_bound("3317044064679887385961981");
    if (n < mr_bound) {
        static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
        Int d = n - 1;
        unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), r);
        for (int b : bases) {
            if (n == b) return true;
            if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
            Int x = powmod(b, d, n);
            if (x == 1 || x == n - 1) continue;
            bool witness = true;
            for (unsigned long i = 0; i + 1 < r && witness; ++i) {
                x = x * x % n;
                if (x == n - 1) witness = false;
            }
            if (witness) return false;
        }
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

Int pollard_brent(const Int& n, uint64_t& budget) {
    // Deterministic parameter schedule c = 1, 2, 3, ...
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1, ys = 0;
        const unsigned long m = 128;
        unsigned long r = 1;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long steps = std::min(m, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    if (budget == 0) raise(ErrorCode::factorization_exceeded,
                                           "rho budget exhausted on " + n.get_str());
                    --budget;
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                    q = q * diff % n;
                }
                d = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            // Backtrack one step at a time.
            d = 1;
            while (d == 1) {
                if (budget == 0) raise(ErrorCode::factorization_exceeded,
                                       "rho budget exhausted on " + n.get_str());
                --budget;
                ys = (ys * ys + c) % n;
                Int diff = x - ys;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                d = gcd(diff, n);
            }
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, unsigned>& out, uint64_t& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_brent(n, budget);
    factor_into(d, out, budget);
    factor_into(n / d, out, budget);
}

} // namespace

Factorization factorize(const Int& n) {
    if (n == 0) raise(ErrorCode::invalid_input, "factorize(0)");
    Factorization f;
    Int m = n;
    if (m < 0) {
        f.sign = -1;
        m = -m;
    }
    for (uint32_t p : small_primes()) {
        if (m == 1) break;
        if (mpz_cmp_ui(m.get_mpz_t(), uint64_t(p) * p) < 0) {
            // remaining cofactor is prime
            break;
        }
        unsigned e = unsigned(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t()));
        if (e) f.exponents[Int(p)] = e;
    }
    if (m > 1) {
        uint64_t budget = factor_budget();
        factor_into(m, f.exponents, budget);
    }
    return f;
}

long valuation(const Int& n, const Int& p) {
    if (n == 0) raise(ErrorCode::invalid_input, "valuation of 0");
    Int tmp;
    return long(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& q, const Int& p) {
    if (q == 0) raise(ErrorCode::invalid_input, "valuation of 0");
    return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

Int nonsquare_part(const Rat& q) {
    if (q <= 0) raise(ErrorCode::invalid_input, "nonsquare_part requires a positive input");
    // num and den are coprime, so odd-exponent primes of q are the odd-exponent
    // primes of num*den.
    Factorization f = factorize(Int(q.get_num() * q.get_den()));
    Int k = 1;
    for (const auto& [p, e] : f.exponents)
        if (e % 2) k *= p;
    return k;
}

bool is_rational_square(const Rat& q) {
    if (q < 0) return false;
    if (q == 0) return true;
    return mpz_perfect_square_p(Int(q.get_num()).get_mpz_t()) &&
           mpz_perfect_square_p(Int(q.get_den()).get_mpz_t());
}

Int powmod(const Int& base, const Int& exp, const Int& m) {
    Int out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return out;
}

Int invmod(const Int& a, const Int& m) {
    Int out;
    if (!mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        raise(ErrorCode::invalid_input, "invmod: not invertible");
    return out;
}

int legendre(const Int& a, const Int& p) { return mpz_legendre(a.get_mpz_t(), p.get_mpz_t()); }

Int mod(const Int& a, const Int& m) {
    Int out;
    mpz_mod(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return out;
}

Rat parse_rational(const std::string& s) {
    if (s.empty()) raise(ErrorCode::invalid_input, "empty rational");
    std::string t = s;
    if (t.find('/') == std::string::npos) t += "/1";
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), t.c_str(), 10) != 0)
        raise(ErrorCode::invalid_input, "cannot parse rational '" + s + "'");
    if (q.get_den() == 0) raise(ErrorCode::invalid_input, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rational_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace shaq
