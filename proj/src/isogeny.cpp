#include "isogeny.hpp"

#include <algorithm>

#include "localred.hpp"

namespace shaq {

namespace {

struct VeluTerm {
    Rat x, y;    // representative point
    Rat gx, gy;  // gradient pieces
    Rat t, u;    // Velu's t_Q, u_Q
    bool two_torsion;
};

} // namespace

IsogenyData velu(const WeierstrassModel& m, const CurvePoint& kernelgen) {
    if (kernelgen.infinity || !on_curve(m, kernelgen))
        raise(ErrorCode::not_prime_order, "velu: kernel generator must be a finite point on the model");
    long ell = point_order(m, kernelgen, 23);
    if (ell == 0 || !is_prime(Int(ell)))
        raise(ErrorCode::not_prime_order, "velu: kernel generator order is not an odd small prime or 2");

    // representatives: the 2-torsion point itself, or one of {Q, -Q} per pair
    std::vector<CurvePoint> reps;
    std::vector<CurvePoint> all;
    CurvePoint Q = kernelgen;
    for (long i = 1; i < ell; ++i) {
        all.push_back(Q);
        Q = add(m, Q, kernelgen);
    }
    if (ell == 2)
        reps = {kernelgen};
    else {
        for (long i = 1; i <= (ell - 1) / 2; ++i) reps.push_back(all[i - 1]);
    }

    std::vector<VeluTerm> terms;
    Rat t_sum = 0, w_sum = 0;
    for (const CurvePoint& P : reps) {
        VeluTerm vt;
        vt.x = P.x;
        vt.y = P.y;
        vt.gx = 3 * P.x * P.x + 2 * m.a2 * P.x + m.a4 - m.a1 * P.y;
        vt.gy = -2 * P.y - m.a1 * P.x - m.a3;
        vt.two_torsion = (vt.gy == 0);
        vt.t = vt.two_torsion ? vt.gx : 2 * vt.gx - m.a1 * vt.gy;
        vt.u = vt.gy * vt.gy;
        t_sum += vt.t;
        w_sum += vt.u + vt.t * vt.x;
        terms.push_back(vt);
    }

    IsogenyData iso;
    iso.domain = m;
    iso.codomain = WeierstrassModel(m.a1, m.a2, m.a3, m.a4 - 5 * t_sum,
                                    m.a6 - m.b2 * t_sum - 7 * w_sum);
    iso.degree = ell;
    iso.kernel_generator = kernelgen;
    iso.kernel_points = all;
    // kernel polynomial: product over distinct x-coordinates
    std::vector<Rat> xs;
    for (const CurvePoint& P : all)
        if (std::find(xs.begin(), xs.end(), P.x) == xs.end()) xs.push_back(P.x);
    qp::Poly kp{Rat(1)};
    for (const Rat& x : xs) kp = qp::mul(kp, qp::Poly{-x, Rat(1)});
    iso.kernel_poly = kp;
    iso.velu_normalized = true;
    return iso;
}

IsogenyData isogeny_from_kernel_poly(const WeierstrassModel& m, const qp::Poly& kernel_poly) {
    long d = qp::deg(kernel_poly);
    if (d < 1) raise(ErrorCode::invalid_input, "isogeny_from_kernel_poly: constant polynomial");
    // monic normalisation
    qp::Poly h = kernel_poly;
    Rat lc = h.back();
    for (auto& c : h) c /= lc;
    // power sums p1..p3 from elementary symmetric functions
    Rat s1 = d >= 1 ? -h[d - 1] : Rat(0);
    Rat s2 = d >= 2 ? h[d - 2] : Rat(0);
    Rat s3 = d >= 3 ? -h[d - 3] : Rat(0);
    Rat p1 = s1;
    Rat p2 = s1 * p1 - 2 * s2;
    Rat p3 = s1 * p2 - s2 * p1 + 3 * s3;
    Rat t_sum = 6 * p2 + m.b2 * p1 + d * m.b4;
    Rat w_sum = 10 * p3 + 2 * m.b2 * p2 + 3 * m.b4 * p1 + d * m.b6;

    IsogenyData iso;
    iso.domain = m;
    iso.codomain = WeierstrassModel(m.a1, m.a2, m.a3, m.a4 - 5 * t_sum,
                                    m.a6 - m.b2 * t_sum - 7 * w_sum);
    iso.degree = 2 * d + 1;
    iso.kernel_poly = h;
    iso.velu_normalized = true;
    return iso;
}

CurvePoint evaluate(const IsogenyData& iso, const CurvePoint& P) {
    if (P.infinity) return P;
    if (!on_curve(iso.domain, P)) raise(ErrorCode::point_not_on_curve, "evaluate");
    if (!iso.steps.empty()) {
        CurvePoint Q = P;
        for (const auto& s : iso.steps) Q = evaluate(s, Q);
        return Q;
    }
    if (iso.kernel_points.empty())
        raise(ErrorCode::invalid_input, "evaluate: isogeny has no explicit kernel points");
    // kernel points map to infinity
    for (const CurvePoint& K : iso.kernel_points)
        if (K == P) return CurvePoint::at_infinity();

    const WeierstrassModel& m = iso.domain;
    // representatives as in velu()
    std::vector<CurvePoint> reps;
    long ell = iso.degree;
    if (ell == 2)
        reps = {iso.kernel_points.front()};
    else
        for (long i = 1; i <= (ell - 1) / 2; ++i) reps.push_back(iso.kernel_points[i - 1]);

    Rat X = P.x, Y = P.y;
    for (const CurvePoint& Q : reps) {
        Rat gx = 3 * Q.x * Q.x + 2 * m.a2 * Q.x + m.a4 - m.a1 * Q.y;
        Rat gy = -2 * Q.y - m.a1 * Q.x - m.a3;
        bool two = (gy == 0);
        Rat tQ = two ? gx : 2 * gx - m.a1 * gy;
        Rat uQ = gy * gy;
        Rat dx = P.x - Q.x;
        X += tQ / dx + uQ / (dx * dx);
        Y -= uQ * (2 * P.y + m.a1 * P.x + m.a3) / (dx * dx * dx) +
             tQ * (m.a1 * dx + P.y - Q.y) / (dx * dx) +
             (m.a1 * uQ - gx * gy) / (dx * dx);
    }
    CurvePoint img(X, Y);
    if (!on_curve(iso.codomain, img))
        raise(ErrorCode::invalid_input, "evaluate: image not on codomain");
    return img;
}

IsogenyData compose_cyclic(const std::vector<IsogenyData>& steps,
                           const std::optional<CurvePoint>& generator) {
    if (steps.empty()) raise(ErrorCode::chain_mismatch, "compose_cyclic: empty chain");
    if (steps.size() == 1 && !generator) return steps.front();
    for (size_t i = 0; i + 1 < steps.size(); ++i)
        if (!(steps[i].codomain == steps[i + 1].domain))
            raise(ErrorCode::chain_mismatch, "compose_cyclic: codomain/domain mismatch");

    IsogenyData out;
    out.domain = steps.front().domain;
    out.codomain = steps.back().codomain;
    out.degree = 1;
    for (const auto& s : steps) out.degree *= s.degree;
    out.velu_normalized = true;
    for (const auto& s : steps) out.velu_normalized = out.velu_normalized && s.velu_normalized;
    out.steps = steps;

    if (generator) {
        if (point_order(out.domain, *generator, out.degree) != out.degree)
            raise(ErrorCode::chain_mismatch, "compose_cyclic: generator order != composite degree");
        out.kernel_generator = *generator;
        CurvePoint Q = *generator;
        std::vector<Rat> xs;
        for (long i = 1; i < out.degree; ++i) {
            if (evaluate(out, Q) != CurvePoint::at_infinity())
                raise(ErrorCode::chain_mismatch, "compose_cyclic: generator does not die in chain");
            out.kernel_points.push_back(Q);
            if (std::find(xs.begin(), xs.end(), Q.x) == xs.end()) xs.push_back(Q.x);
            Q = add(out.domain, Q, *generator);
        }
        qp::Poly kp{Rat(1)};
        for (const Rat& x : xs) kp = qp::mul(kp, qp::Poly{-x, Rat(1)});
        out.kernel_poly = kp;
    }
    return out;
}

Rat eta_prime_norm(const IsogenyData& iso, const Int& p) {
    if (!iso.velu_normalized)
        raise(ErrorCode::invalid_input, "eta_prime_norm: isogeny not Velu-normalized");
    if (mod(Int(iso.degree), p) != 0) return Rat(1);
    long e_dom = tate_algorithm(iso.domain, p).u_exponent;
    long e_cod = tate_algorithm(iso.codomain, p).u_exponent;
    long e = e_dom - e_cod;
    Rat out(1);
    Rat pr(p);
    for (long i = 0; i < e; ++i) out *= pr;
    for (long i = 0; i < -e; ++i) out /= pr;
    return out;
}

} // namespace shaq
