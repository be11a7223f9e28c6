#pragma once

#include <optional>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"
#include "qpoly.hpp"

namespace shaq {

struct IsogenyData {
    WeierstrassModel domain;
    WeierstrassModel codomain;
    long degree = 1;
    qp::Poly kernel_poly;      // monic, x-coordinates of the nontrivial kernel points
    std::optional<CurvePoint> kernel_generator;
    bool velu_normalized = true;
    // nontrivial kernel points (rational-kernel case); empty for the
    // coefficient-only construction from a kernel polynomial
    std::vector<CurvePoint> kernel_points;
    // composition chain (empty for a single Velu step)
    std::vector<IsogenyData> steps;
};

// Velu's formulas for the quotient by <kernelgen>; kernelgen must have exact
// prime order ell (ell = 2 uses the two-torsion branch).
IsogenyData velu(const WeierstrassModel& m, const CurvePoint& kernelgen);

// Codomain of the normalized isogeny with the given monic kernel polynomial,
// via the power sums of its roots (no individual kernel points needed).
IsogenyData isogeny_from_kernel_poly(const WeierstrassModel& m, const qp::Poly& kernel_poly);

// Evaluate the isogeny at a point of the domain (kernel -> infinity).
CurvePoint evaluate(const IsogenyData& iso, const CurvePoint& P);

// Cyclic composition; each step's codomain must equal the next step's domain.
// When the composite kernel is generated by a known rational point, pass it
// as `generator` to populate the kernel data of the result.
IsogenyData compose_cyclic(const std::vector<IsogenyData>& steps,
                           const std::optional<CurvePoint>& generator = std::nullopt);

// |eta'(0)|_p for a Velu-normalized isogeny: p^(e(domain) - e(codomain)) where
// e(M) is the valuation of the scaling factor from M to its p-minimal model.
Rat eta_prime_norm(const IsogenyData& iso, const Int& p);

} // namespace shaq
