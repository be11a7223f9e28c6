#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "family.hpp"
#include "localred.hpp"
#include "mwdata.hpp"

namespace shaq {

struct LocalQuotientRow {
    std::optional<Int> p; // nullopt = infinite place
    struct PerEll {
        CokerVerdict eta1 = CokerVerdict::undetermined;
        CokerVerdict eta2 = CokerVerdict::undetermined;
        CokerVerdict phi = CokerVerdict::undetermined;
        Rat quotient = 1;
    };
    std::map<long, PerEll> per_ell;
    Rat quotient = 1;            // product over ell
    std::string e1_cell, e2_cell; // table cells describing the reduction data
};

struct GlobalQuotient {
    Rat torsion_quotient = 1;
    Rat regulator_quotient = 1;
    Rat global_quotient = 1;
    std::map<long, Int> coker_dual_sizes;
    std::map<long, Int> coker_sizes;
    std::vector<std::string> notes;
};

struct CTReport {
    std::string descriptor;
    std::vector<std::string> inputs; // echo of d1/d2 or curve data
    std::vector<long> ells;
    std::vector<LocalQuotientRow> rows;
    Rat local_product = 1;
    Rat torsion_quotient = 1;
    Rat regulator_quotient = 1;
    Rat final_quotient = 1; // #Sha(A)/#Sha(B)
    Int k = 1;              // non-square part of #Sha(B) relative to #Sha(A)
    std::vector<std::string> assumptions;
};

// Local quotient of phi at a finite prime, per prime factor ell | N.
LocalQuotientRow local_row(const FamilyInstance& inst1, const FamilyInstance& inst2, const Int& p);

// The infinite place: 1/N for odd N; 2/N for even N when both discriminants
// are negative (per-ell rows: 1/ell for odd ell, 1 for ell = 2).
LocalQuotientRow local_row_infinity(long N, const Rat& disc1, const Rat& disc2);

GlobalQuotient global_quotient(const FamilyInstance& inst1, const FamilyInstance& inst2,
                               const MordellWeilData& mw);

CTReport assemble(const FamilyInstance& inst1, const FamilyInstance& inst2,
                  const MordellWeilData& mw);

// Generic prime-degree pipeline: curve pairs plus kernel polynomials supplied
// as data, validated by a_p equality and kernel-polynomial divisibility.
struct GenericPipelineInput {
    WeierstrassModel E1, E2, E1prime, E2prime;
    qp::Poly kernel_poly1, kernel_poly2;
    long ell = 13;
};

CTReport generic_prime_pipeline(const GenericPipelineInput& in, const MordellWeilData& mw);

} // namespace shaq
