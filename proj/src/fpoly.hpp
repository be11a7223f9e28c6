#pragma once

#include <utility>
#include <vector>

#include "arith.hpp"

// Dense univariate polynomials over F_p, coefficients ascending and reduced
// into [0, p).  The zero polynomial is the empty vector.
namespace shaq::fp {

using Poly = std::vector<Int>;

Poly make(std::vector<Int> coeffs, const Int& p);
int deg(const Poly& f);
Int eval(const Poly& f, const Int& x, const Int& p);

Poly add(const Poly& a, const Poly& b, const Int& p);
Poly sub(const Poly& a, const Poly& b, const Int& p);
Poly mul(const Poly& a, const Poly& b, const Int& p);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& p);
Poly monic(const Poly& f, const Int& p);
Poly gcd(Poly a, Poly b, const Int& p); // monic gcd
Poly derivative(const Poly& f, const Int& p);

// base^e mod (f, p)
Poly powmod(const Poly& base, const Int& e, const Poly& f, const Int& p);

// Number of distinct roots of f in F_p (deg gcd(x^p - x, f)).
long count_roots(const Poly& f, const Int& p);

// All distinct roots of f in F_p, sorted.  Brute scan for small p,
// Cantor-Zassenhaus splitting (deterministic shift schedule) otherwise.
std::vector<Int> roots(const Poly& f, const Int& p);

} // namespace shaq::fp
