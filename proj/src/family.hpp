#pragma once

#include <map>
#include <optional>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"
#include "isogeny.hpp"
#include "localred.hpp"
#include "powerclass.hpp"

namespace shaq {

// One member of the X_1(N) family, N in {5, 6, 7, 10}: integral model, the
// N-torsion point, the per-prime-part isogenies and the full cyclic quotient.
struct FamilyInstance {
    long N = 5;
    Rat d;
    Int u, v; // d = u/v, coprime, v > 0
    WeierstrassModel E;      // integral model
    CurvePoint P;            // exact order N
    WeierstrassModel Ed;     // the d-parameter model from the parametrisation
    ModelChange d_to_int;    // E == transform(Ed, d_to_int)
    WeierstrassModel Eprime; // codomain of the full degree-N isogeny
    IsogenyData eta;         // full cyclic isogeny E -> Eprime
    std::map<long, IsogenyData> eta_ell; // prime ell | N: E -> E'_ell

    std::vector<long> ells() const;
};

std::vector<long> family_ells(long N);

FamilyInstance build_family(long N, const Rat& d);

enum class RedType { good, split, nonsplit, additive };

struct ReductionSummary {
    Int p;
    RedType red_type = RedType::good;
    std::map<long, bool> kernel_in_E0;        // per ell | N
    std::optional<long> c_E;                  // Tamagawa number of E at p
    std::optional<long> c_Eprime_l2;          // Tamagawa of E'_{l=2} at p (2 | N)
    std::map<long, Rat> eta_prime_norm_at_p;  // per ell | N
    bool from_closed_form = true;

    std::optional<Rat> tamagawa_quotient_l2() const {
        if (!c_E || !c_Eprime_l2) return std::nullopt;
        return Rat(*c_Eprime_l2) / Rat(*c_E);
    }
};

// Closed-form per-prime classification from the family lemmas, falling back
// to the general algorithms at the combinations the lemmas exclude.
ReductionSummary reduction_profile(const FamilyInstance& inst, const Int& p);

// Same data computed purely by Tate's algorithm + the general kernel tests
// (the oracle side of the lemma-vs-algorithm sweeps).
ReductionSummary reduction_profile_direct(const FamilyInstance& inst, const Int& p);

// Class of f(Q) in Q*/Q*^ell for the family's divisor function attached to
// ell | N; kernel points are handled through the homomorphism property.
PowerClass fP_class_image(const FamilyInstance& inst, const CurvePoint& Q, long ell);

// The cyclotomic/quadratic-field class datum of coker eta_{Q,tors} on the
// phi-side (N = 6: (9d-1)(d-1) in Q(sqrt-3); N = 10: (d-1)(d+1)(d^2-4d-1) in
// Q(mu_5)); rational representative.
Rat coker_eta_tors_phi_side(const FamilyInstance& inst);

struct TorsionQuotientReport {
    Rat quotient;                    // (#A_tors #Adual_tors)/(#B_tors #Bdual_tors)
    std::map<long, Int> coker_dual_sizes; // per ell: #coker phi^vee_{ell,tors}
    std::map<long, Int> coker_sizes;      // per ell: #coker phi_{ell,tors}
};

TorsionQuotientReport torsion_quotient(long N, const FamilyInstance& inst1,
                                       const FamilyInstance& inst2);

} // namespace shaq
