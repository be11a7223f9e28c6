#pragma once

#include <map>
#include <vector>

#include "arith.hpp"

namespace shaq {

// Element of Q*/Q*^ell as sign bit (ell = 2 only) plus prime exponent vector
// mod ell.  For odd ell the sign is absorbed: -1 = (-1)^ell.
struct PowerClass {
    long ell = 2;
    int sign_bit = 0; // meaningful only when ell == 2
    std::map<Int, long> exps; // prime -> exponent in [1, ell)

    bool is_identity() const { return sign_bit == 0 && exps.empty(); }
    bool operator==(const PowerClass& o) const = default;
};

PowerClass class_of(const Rat& q, long ell);
PowerClass pc_mul(const PowerClass& a, const PowerClass& b);
PowerClass pc_pow(const PowerClass& a, long e);
PowerClass pc_inv(const PowerClass& a);

// F_ell-subgroup of Q*/Q*^ell spanned by a list of classes.
struct ClassSubgroup {
    long ell = 2;
    std::vector<PowerClass> basis; // F_ell-independent
    long dim() const { return long(basis.size()); }
    Int size() const;
};

ClassSubgroup subgroup_from(const std::vector<PowerClass>& generators);
bool subgroup_contains(const ClassSubgroup& g, const PowerClass& c);

// Rational q a square in Q(sqrt(D))?  True iff q or qD is a rational square
// (K has a unique quadratic subfield, so this is exact for rational inputs).
bool is_square_in_quadratic(const Rat& q, const Int& D);

// --- cyclotomic field Q(mu_ell), ell prime: elements in the power basis of a
// primitive root xi, i.e. Q[x]/(1 + x + ... + x^(ell-1)). ---
struct CycloElem {
    long ell = 5;
    std::vector<Rat> coeffs; // size ell-1

    bool is_zero() const;
    bool operator==(const CycloElem& o) const = default;
};

CycloElem cyclo_from_rational(long ell, const Rat& q);
CycloElem cyclo_xi_power(long ell, long k); // xi^k
CycloElem cyclo_add(const CycloElem& a, const CycloElem& b);
CycloElem cyclo_sub(const CycloElem& a, const CycloElem& b);
CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b);
CycloElem cyclo_pow(const CycloElem& a, long e); // e >= 0
CycloElem cyclo_inv(const CycloElem& a);

struct CyclotomicClassWitness {
    long ell = 5;
    long conductor = 5; // must equal ell for the modular test
    CycloElem value;
};

// Probabilistic ell-th power test in Q(mu_ell)*: reduction at `witnesses`
// split prime ideals (primes p = 1 mod ell).  A false positive survives each
// witness with heuristic probability 1/ell.  Exact for rational inputs.
bool is_lth_power_in_cyclotomic(const CyclotomicClassWitness& w, int witnesses = 25);

} // namespace shaq
