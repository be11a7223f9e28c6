#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace shaq {

using Int = mpz_class;
using Rat = mpq_class;

// Exact prime factorisation with sign.  `exponents` maps prime -> exponent;
// reconstruct() returns sign * prod p^e.
struct Factorization {
    int sign = 1;
    std::map<Int, unsigned> exponents;

    Int reconstruct() const;
};

// Work limit for the rho stage of factorize(), in curve iterations.  The
// default is ample for conductor/discriminant-sized inputs; override with
// set_factor_budget() or the SHAQ_FACTOR_BUDGET environment variable.
uint64_t factor_budget();
void set_factor_budget(uint64_t budget);

// Trial division to 10^6 followed by Brent-cycle Pollard rho with a fixed
// parameter schedule, so results are deterministic.  Throws
// FactorizationExceeded if a composite cofactor survives the budget.
Factorization factorize(const Int& n);

bool is_prime(const Int& n);

// p-adic valuation; q must be nonzero.
long valuation(const Int& n, const Int& p);
long valuation(const Rat& q, const Int& p);

// Unique squarefree k with q = k * (rational square); q must be positive.
Int nonsquare_part(const Rat& q);

bool is_rational_square(const Rat& q);

// --- modular utilities (p prime unless noted) ---
Int powmod(const Int& base, const Int& exp, const Int& mod);
Int invmod(const Int& a, const Int& m); // gcd(a,m)=1
int legendre(const Int& a, const Int& p); // p odd prime
Int mod(const Int& a, const Int& m);      // representative in [0, m)

const std::vector<uint32_t>& small_primes(); // all primes < 10^6

// Parse "u/v" or "u" into a rational (exact); throws InvalidInput.
Rat parse_rational(const std::string& s);
std::string rational_string(const Rat& q);

} // namespace shaq
