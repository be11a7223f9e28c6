#pragma once

#include <optional>
#include <vector>

#include "arith.hpp"
#include "qpoly.hpp"

namespace shaq {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q
// with the standard cached invariants.
struct WeierstrassModel {
    Rat a1, a2, a3, a4, a6;
    Rat b2, b4, b6, b8, c4, c6, disc;

    WeierstrassModel() = default;
    WeierstrassModel(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_);

    bool is_integral() const;
    Rat j_invariant() const { return c4 * c4 * c4 / disc; }
    bool operator==(const WeierstrassModel& o) const;
};

struct CurvePoint {
    bool infinity = true;
    Rat x, y;

    CurvePoint() = default;
    CurvePoint(Rat x_, Rat y_) : infinity(false), x(std::move(x_)), y(std::move(y_)) {}
    static CurvePoint at_infinity() { return CurvePoint(); }
    bool operator==(const CurvePoint& o) const;
};

// Coordinate change x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct ModelChange {
    Rat u = 1, r = 0, s = 0, t = 0;
};

WeierstrassModel transform(const WeierstrassModel& m, const ModelChange& ch);
ModelChange compose(const ModelChange& first, const ModelChange& then);
ModelChange inverse(const ModelChange& ch);
// Coordinates of a point of m in the transformed model.
CurvePoint map_point(const ModelChange& ch, const CurvePoint& P);

bool on_curve(const WeierstrassModel& m, const CurvePoint& P);
CurvePoint negate(const WeierstrassModel& m, const CurvePoint& P);
CurvePoint add(const WeierstrassModel& m, const CurvePoint& P, const CurvePoint& Q);
CurvePoint scalar_mul(const WeierstrassModel& m, long n, const CurvePoint& P);
// Exact order if <= bound, else 0.
long point_order(const WeierstrassModel& m, const CurvePoint& P, long bound = 16);

// 2y + a1 x + a3 = 0 discriminant curve: F(x) = 4x^3 + b2 x^2 + 2 b4 x + b6.
qp::Poly two_division_poly(const WeierstrassModel& m);
// x-part f_n of the n-division polynomial (psi_n = f_n * psi_2 for even n).
qp::Poly division_poly_x(const WeierstrassModel& m, long n);

struct TorsionGroup {
    std::vector<long> invariants;      // [] trivial, [n], or [2, 2m]
    std::vector<CurvePoint> generators; // aligned with invariants
    long order = 1;
    std::vector<CurvePoint> points; // all torsion points incl. infinity
};

// Exact rational torsion: reduction bound over >= 3 good odd primes, then
// division-polynomial root search for each candidate prime-power order.
TorsionGroup torsion_subgroup(const WeierstrassModel& m);

// #E(F_p) for a p-integral model with good reduction at p.
Int count_points_mod_p(const WeierstrassModel& m, const Int& p);

} // namespace shaq
