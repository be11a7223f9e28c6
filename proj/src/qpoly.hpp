#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arith.hpp"

// Dense univariate polynomials over Q (coefficients ascending), plus the
// integer-polynomial root machinery shared by the torsion search and the
// local-kernel tests.
namespace shaq::qp {

using Poly = std::vector<Rat>;
using IPoly = std::vector<Int>;

Poly make(std::vector<Rat> coeffs);
int deg(const Poly& f);
Rat eval(const Poly& f, const Rat& x);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rat& c);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
bool divides(const Poly& a, const Poly& b); // a | b exactly
Poly gcd(Poly a, Poly b);                   // monic
Poly derivative(const Poly& f);
Poly squarefree_part(const Poly& f);

// Primitive integer polynomial with the same roots (content and sign of the
// leading coefficient normalised away is not required; only proportionality).
IPoly to_integer(const Poly& f);
int ideg(const IPoly& f);
Int ieval(const IPoly& f, const Int& x);
Rat ieval(const IPoly& f, const Rat& x);

// All rational roots of f (each once).  Found by Cantor-Zassenhaus modulo one
// ~192-bit prime followed by rational reconstruction and exact verification;
// complete for roots with numerator and denominator below ~2^90, far beyond
// desk scale.
std::vector<Rat> rational_roots(const Poly& f);

// --- real-root tools (exact, Sturm) ---
struct SturmChain {
    std::vector<Poly> chain;
};
SturmChain sturm(const Poly& f); // f squarefree
long sign_changes_at(const SturmChain& s, const Rat& x);
long sign_changes_at_neg_inf(const SturmChain& s);
long sign_changes_at_pos_inf(const SturmChain& s);
long count_real_roots(const Poly& f);
// Isolating intervals (lo, hi], one real root each; f squarefree.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& f);
// Sign of g at the unique root of f inside (lo, hi]; f, g coprime.
int sign_at_root(const Poly& f, std::pair<Rat, Rat> iv, const Poly& g);

// --- p-adic roots ---
// Approximations of all Q_p-roots of a squarefree integer polynomial.
// Each root is returned as an exact rational x_hat with |x - x_hat|_p <= p^-prec_out.
struct PadicRoot {
    Rat approx;
    long prec; // guaranteed: v_p(x - approx) >= prec
};
// Throws PrecisionExhausted if the recursion needs more than max_depth digits
// of separation.
std::vector<PadicRoot> qp_roots(const IPoly& f, const Int& p, long target_prec, long max_depth);
// Convenience: do all deg(f) roots lie in Q_p?
bool splits_completely_over_qp(const IPoly& f, const Int& p, long max_depth);

} // namespace shaq::qp
