#include "localred.hpp"

#include <climits>

#include "fpoly.hpp"

namespace shaq {

std::string kodaira_name(KodairaType t, long n) {
    switch (t) {
        case KodairaType::good: return "I0";
        case KodairaType::In: return "I" + std::to_string(n);
        case KodairaType::II: return "II";
        case KodairaType::III: return "III";
        case KodairaType::IV: return "IV";
        case KodairaType::I0star: return "I0*";
        case KodairaType::Instar: return "I" + std::to_string(n) + "*";
        case KodairaType::IVstar: return "IV*";
        case KodairaType::IIIstar: return "III*";
        case KodairaType::IIstar: return "II*";
    }
    return "?";
}

namespace {

constexpr long kInfV = LONG_MAX / 4;

long vrat(const Rat& q, const Int& p) {
    if (q == 0) return kInfV;
    return valuation(q, p);
}

// q mod m for a rational q whose denominator is coprime to m (m a p-power).
Int rmod(const Rat& q, const Int& m) {
    Int den = q.get_den();
    Int dm = mod(den, m);
    if (gcd(dm, m) != 1) raise(ErrorCode::invalid_input, "rmod: denominator not a unit");
    return mod(mod(Int(q.get_num()), m) * invmod(dm, m), m);
}

bool quad_has_root(const Int& a, const Int& b, const Int& c, const Int& p) {
    if (p == 2) {
        for (int x = 0; x < 2; ++x)
            if (mod(a * x * x + b * x + c, p) == 0) return true;
        return false;
    }
    Int disc = mod(b * b - 4 * a * c, p);
    return legendre(disc, p) >= 0;
}

struct SingularPoint {
    Int x, y;
};

// Singular point of the reduced curve mod p (the reduction is singular).
SingularPoint singular_point(const WeierstrassModel& E, const Int& p) {
    if (p <= 3) {
        for (Int x = 0; x < p; ++x)
            for (Int y = 0; y < p; ++y) {
                Int f = mod(y * y + rmod(E.a1, p) * x * y + rmod(E.a3, p) * y - x * x * x -
                                rmod(E.a2, p) * x * x - rmod(E.a4, p) * x - rmod(E.a6, p),
                            p);
                Int fx = mod(rmod(E.a1, p) * y - 3 * x * x - 2 * rmod(E.a2, p) * x - rmod(E.a4, p), p);
                Int fy = mod(2 * y + rmod(E.a1, p) * x + rmod(E.a3, p), p);
                if (f == 0 && fx == 0 && fy == 0) return {x, y};
            }
        raise(ErrorCode::invalid_input, "singular_point: none found");
    }
    Int x0;
    if (vrat(E.c4, p) == 0) {
        // node: double root of 4x^3 + b2 x^2 + 2 b4 x + b6
        Int num = rmod(18 * E.b6 - E.b2 * E.b4, p);
        x0 = mod(num * invmod(rmod(E.c4, p), p), p);
    } else {
        // cusp: triple root
        x0 = mod(-rmod(E.b2, p) * invmod(Int(12), p), p);
    }
    Int y0 = mod(-(rmod(E.a1, p) * x0 + rmod(E.a3, p)) * invmod(Int(2), p), p);
    return {x0, y0};
}

} // namespace

ReductionData tate_algorithm(const WeierstrassModel& m, const Int& p) {
    WeierstrassModel E = m;
    ModelChange total; // identity

    auto apply = [&](const ModelChange& ch) {
        E = transform(E, ch);
        total = compose(total, ch);
    };

    // p-integralise
    long k = 0;
    const Rat* as[5] = {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6};
    const int weights[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
        long v = vrat(*as[i], p);
        if (v < 0) k = std::max(k, (-v + weights[i] - 1) / weights[i]);
    }
    if (k > 0) {
        Rat u(1);
        for (long i = 0; i < k; ++i) u /= Rat(p);
        apply(ModelChange{u, 0, 0, 0});
    }

    auto finish = [&](KodairaType type, long n, bool split, long c) {
        ReductionData rd;
        rd.p = p;
        rd.type = type;
        rd.n = n;
        rd.split = split;
        rd.c = c;
        rd.v_disc_min = vrat(E.disc, p);
        rd.minimal = E;
        rd.to_minimal = total;
        rd.u_exponent = vrat(total.u, p);
        return rd;
    };

    const Int p2 = p * p, p3 = p2 * p, p4 = p3 * p;
    const Int inv2 = p > 2 ? invmod(Int(2), p) : Int(0);

    for (;;) {
        long n = vrat(E.disc, p);
        if (n == 0) return finish(KodairaType::good, 0, false, 1);

        // move the singular point to the origin
        {
            SingularPoint sp = singular_point(E, p);
            apply(ModelChange{1, Rat(sp.x), 0, Rat(sp.y)});
        }

        if (vrat(E.b2, p) == 0) {
            // multiplicative: In, n = v(disc)
            bool split;
            if (p == 2)
                split = (rmod(E.a2, p) == 0);
            else
                split = (legendre(rmod(E.b2, p), p) == 1);
            long c = split ? n : (n % 2 == 0 ? 2 : 1);
            return finish(KodairaType::In, n, split, c);
        }

        // additive
        if (vrat(E.a6, p) < 2) return finish(KodairaType::II, n, false, 1);
        if (vrat(E.b8, p) < 3) return finish(KodairaType::III, n, false, 2);
        if (vrat(E.b6, p) < 3) {
            Int a3t = rmod(E.a3 / Rat(p), p), a6t = rmod(E.a6 / Rat(p2), p);
            long c = quad_has_root(Int(1), a3t, -a6t, p) ? 3 : 1;
            return finish(KodairaType::IV, n, false, c);
        }

        // step 6 normalisation: p|a1,a2; p^2|a3,a4; p^3|a6
        {
            Int s = p == 2 ? rmod(E.a2, p) : mod(-rmod(E.a1, p) * inv2, p);
            if (s != 0) apply(ModelChange{1, 0, Rat(s), 0});
            if (p == 2) {
                Int t1 = rmod(E.a3 / Rat(p), p); // want 4 | a3
                if (t1 != 0) apply(ModelChange{1, 0, 0, Rat(t1)});
                if (vrat(E.a6, p) == 2) apply(ModelChange{1, 0, 0, Rat(2)});
            } else {
                Int t = mod(-rmod(E.a3, p2) * invmod(Int(2), p2), p2);
                if (t != 0) apply(ModelChange{1, 0, 0, Rat(t)});
            }
        }

        Int A = rmod(E.a2 / Rat(p), p), B = rmod(E.a4 / Rat(p2), p), C = rmod(E.a6 / Rat(p3), p);
        // P(T) = T^3 + A T^2 + B T + C over F_p
        Int discP = mod(18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B -
                            27 * C * C,
                        p);
        if (discP != 0) {
            fp::Poly P = fp::make({C, B, A, Int(1)}, p);
            long c = 1 + fp::count_roots(P, p);
            return finish(KodairaType::I0star, 0, false, c);
        }

        // locate the multiple root and decide double vs triple
        Int t0;
        bool triple;
        if (p <= 3) {
            t0 = -1;
            for (Int t = 0; t < p; ++t) {
                Int pv = mod(((t + A) * t + B) * t + C, p);
                Int dv = mod(3 * t * t + 2 * A * t + B, p);
                if (pv == 0 && dv == 0) {
                    t0 = t;
                    break;
                }
            }
            if (t0 < 0) raise(ErrorCode::invalid_input, "tate: multiple root not found");
            triple = (mod(A + 3 * t0, p) == 0 && mod(B - 3 * t0 * t0, p) == 0 &&
                      mod(C + t0 * t0 * t0, p) == 0);
        } else {
            Int lin = mod(3 * B - A * A, p);
            triple = (lin == 0);
            if (triple)
                t0 = mod(-A * invmod(Int(3), p), p);
            else
                t0 = mod((A * B - 9 * C) * invmod(2 * lin, p), p);
        }

        if (!triple) {
            // types In*, n >= 1
            apply(ModelChange{1, Rat(p * t0), 0, 0});
            Int mx = p2, my = p2;
            long c = 0;
            for (;;) {
                Int a3t = rmod(E.a3 / Rat(my), p);
                Int a6t = rmod(E.a6 / Rat(mx * my), p);
                if (mod(a3t * a3t + 4 * a6t, p) != 0) {
                    c = quad_has_root(Int(1), a3t, -a6t, p) ? 4 : 2;
                    break;
                }
                Int t = my * (p == 2 ? mod(a6t, p) : mod(-a3t * inv2, p));
                if (t != 0) apply(ModelChange{1, 0, 0, Rat(t)});
                my *= p;
                Int a2t = rmod(E.a2 / Rat(p), p);
                Int a4t = rmod(E.a4 / Rat(p * mx), p);
                a6t = rmod(E.a6 / Rat(mx * my), p);
                if (mod(a4t * a4t - 4 * a2t * a6t, p) != 0) {
                    c = quad_has_root(a2t, a4t, a6t, p) ? 4 : 2;
                    break;
                }
                Int r = mx * (p == 2 ? mod(a6t * a2t, p) : mod(-a4t * invmod(2 * a2t, p), p));
                if (r != 0) apply(ModelChange{1, Rat(r), 0, 0});
                mx *= p;
            }
            return finish(KodairaType::Instar, n - 6, false, c);
        }

        // triple root: types IV*, III*, II* or non-minimal
        apply(ModelChange{1, Rat(p * t0), 0, 0});
        Int a3t = rmod(E.a3 / Rat(p2), p), a6t = rmod(E.a6 / Rat(p4), p);
        if (mod(a3t * a3t + 4 * a6t, p) != 0) {
            long c = quad_has_root(Int(1), a3t, -a6t, p) ? 3 : 1;
            return finish(KodairaType::IVstar, n, false, c);
        }
        {
            Int t = p2 * (p == 2 ? mod(a6t, p) : mod(-a3t * inv2, p));
            if (t != 0) apply(ModelChange{1, 0, 0, Rat(t)});
        }
        if (vrat(E.a4, p) < 4) return finish(KodairaType::IIIstar, n, false, 2);
        if (vrat(E.a6, p) < 6) return finish(KodairaType::IIstar, n, false, 1);
        // non-minimal: rescale and run again
        apply(ModelChange{Rat(p), 0, 0, 0});
    }
}

bool kernel_in_identity_component(const WeierstrassModel& m, const CurvePoint& P, const Int& p) {
    if (!on_curve(m, P)) raise(ErrorCode::point_not_on_curve, "kernel_in_identity_component");
    if (P.infinity) return true;
    ReductionData rd = tate_algorithm(m, p);
    if (rd.good()) return true;
    CurvePoint Q = map_point(rd.to_minimal, P);
    if (vrat(Q.x, p) < 0) return true; // reduces to the origin of the fiber
    const WeierstrassModel& E = rd.minimal;
    Int x = rmod(Q.x, p), y = rmod(Q.y, p);
    Int fx = mod(rmod(E.a1, p) * y - 3 * x * x - 2 * rmod(E.a2, p) * x - rmod(E.a4, p), p);
    Int fy = mod(2 * y + rmod(E.a1, p) * x + rmod(E.a3, p), p);
    return !(fx == 0 && fy == 0);
}

namespace {

// Decide whether the exact rational t is a square in Q_p*, given that t
// approximates the true value to p-adic precision >= need_prec.
// Returns nullopt when the margin is insufficient.
std::optional<bool> square_in_qp_from_approx(const Rat& t, const Int& p, long err_prec) {
    if (t == 0) return std::nullopt;
    long v = valuation(t, p);
    long guard = (p == 2) ? 3 : 1;
    if (err_prec < v + guard + 1) return std::nullopt;
    if (v % 2) return false;
    // unit part
    Rat unit = t;
    Rat pr(p);
    for (long i = 0; i < v; ++i) unit /= pr;
    for (long i = 0; i < -v; ++i) unit *= pr;
    if (p == 2) {
        Int u8 = rmod(unit, Int(8));
        return u8 == 1;
    }
    Int up = rmod(unit, p);
    return legendre(up, p) == 1;
}

} // namespace

bool kernel_is_local_rational(const qp::Poly& kernel_poly, const WeierstrassModel& m,
                              const std::optional<Int>& place) {
    qp::Poly h = qp::squarefree_part(kernel_poly);
    if (qp::deg(h) < 1) return true;
    qp::Poly F = two_division_poly(m);

    if (!place) {
        // real place: all roots real and F > 0 at each (odd-order kernel
        // points are never 2-torsion, so F does not vanish at a root)
        if (qp::count_real_roots(h) != qp::deg(h)) return false;
        for (const auto& iv : qp::isolate_real_roots(h))
            if (qp::sign_at_root(h, iv, F) < 0) return false;
        return true;
    }

    const Int p = *place;
    qp::IPoly H = qp::to_integer(h);
    long min_cv = kInfV;
    for (const auto& c : F)
        if (c != 0) min_cv = std::min(min_cv, vrat(c, p));

    for (long K = 64; K <= 1024; K *= 2) {
        try {
            auto roots = qp::qp_roots(H, p, K, K);
            if (long(roots.size()) != qp::deg(h)) return false;
            bool undecided = false;
            for (const auto& r : roots) {
                Rat t = qp::eval(F, r.approx);
                long xv = vrat(r.approx, p);
                long err = r.prec + std::min(min_cv, 0L) + 2 * std::min(xv, 0L);
                auto verdict = square_in_qp_from_approx(t, p, err);
                if (!verdict) {
                    undecided = true;
                    break;
                }
                if (!*verdict) return false;
            }
            if (!undecided) return true;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::precision_exhausted) throw;
        }
    }
    raise(ErrorCode::precision_exhausted, "kernel_is_local_rational at p=" + p.get_str());
}

const char* verdict_name(CokerVerdict v) {
    switch (v) {
        case CokerVerdict::trivial: return "trivial";
        case CokerVerdict::max_unramified: return "max-unramified";
        case CokerVerdict::maximal: return "maximal";
        case CokerVerdict::undetermined: return "undetermined";
    }
    return "?";
}

CokerVerdict classify_coker_eta(const ReductionData& rd_dom, const ReductionData& rd_cod,
                                bool kernel_in_E0, long ell, const Int& p,
                                const Rat& eta_prime_norm) {
    const bool l2p2 = (ell == 2 && p == 2);
    if (rd_dom.good()) return l2p2 ? CokerVerdict::undetermined : CokerVerdict::max_unramified;
    if (rd_dom.multiplicative()) {
        if (rd_dom.split) {
            if (!kernel_in_E0) return CokerVerdict::trivial;
            return l2p2 ? CokerVerdict::undetermined : CokerVerdict::maximal;
        }
        if (ell != 2) return CokerVerdict::max_unramified;
        if (p == 2) return CokerVerdict::undetermined;
        Rat q = Rat(rd_cod.c) / Rat(rd_dom.c);
        if (q == Rat(1, 2)) return CokerVerdict::trivial;
        if (q == 2) return CokerVerdict::maximal;
        if (rd_dom.c == 1 && rd_cod.c == 1) return CokerVerdict::max_unramified;
        return CokerVerdict::undetermined; // (c, c') = (2, 2)
    }
    // additive
    if (ell >= 5) return eta_prime_norm == 1 ? CokerVerdict::max_unramified : CokerVerdict::maximal;
    return CokerVerdict::undetermined;
}

CokerVerdict combine_verdicts(CokerVerdict v1, CokerVerdict v2) {
    if (v1 == CokerVerdict::trivial || v2 == CokerVerdict::trivial) return CokerVerdict::trivial;
    if (v1 == CokerVerdict::undetermined || v2 == CokerVerdict::undetermined)
        return CokerVerdict::undetermined;
    if (v1 == CokerVerdict::maximal && v2 == CokerVerdict::maximal) return CokerVerdict::maximal;
    return CokerVerdict::max_unramified;
}

Int h1_size(long ell, const Int& p) {
    Int l(ell);
    if (p == 2 && ell == 2) return l * l * l;
    if (p != ell && ell != 2 && mod(p - 1, ell) != 0) return l;
    return l * l;
}

} // namespace shaq
