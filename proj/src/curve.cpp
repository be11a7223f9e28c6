#include "curve.hpp"

#include <algorithm>
#include <map>

#include "fpoly.hpp"

namespace shaq {

WeierstrassModel::WeierstrassModel(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)),
      a6(std::move(a6_)) {
    b2 = a1 * a1 + 4 * a2;
    b4 = 2 * a4 + a1 * a3;
    b6 = a3 * a3 + 4 * a6;
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4 = b2 * b2 - 24 * b4;
    c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) raise(ErrorCode::singular_model, "discriminant vanishes");
}

bool WeierstrassModel::is_integral() const {
    return a1.get_den() == 1 && a2.get_den() == 1 && a3.get_den() == 1 && a4.get_den() == 1 &&
           a6.get_den() == 1;
}

bool WeierstrassModel::operator==(const WeierstrassModel& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
}

bool CurvePoint::operator==(const CurvePoint& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
}

WeierstrassModel transform(const WeierstrassModel& m, const ModelChange& ch) {
    const Rat &u = ch.u, &r = ch.r, &s = ch.s, &t = ch.t;
    if (u == 0) raise(ErrorCode::invalid_input, "transform with u = 0");
    Rat u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Rat a1n = (m.a1 + 2 * s) / u;
    Rat a2n = (m.a2 - s * m.a1 + 3 * r - s * s) / u2;
    Rat a3n = (m.a3 + r * m.a1 + 2 * t) / u3;
    Rat a4n = (m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t) / u4;
    Rat a6n = (m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1) / u6;
    return WeierstrassModel(a1n, a2n, a3n, a4n, a6n);
}

ModelChange compose(const ModelChange& a, const ModelChange& b) {
    ModelChange c;
    c.u = a.u * b.u;
    c.r = a.u * a.u * b.r + a.r;
    c.s = a.u * b.s + a.s;
    c.t = a.u * a.u * a.u * b.t + a.s * a.u * a.u * b.r + a.t;
    return c;
}

ModelChange inverse(const ModelChange& ch) {
    ModelChange inv;
    inv.u = 1 / ch.u;
    inv.r = -ch.r / (ch.u * ch.u);
    inv.s = -ch.s / ch.u;
    inv.t = (ch.r * ch.s - ch.t) / (ch.u * ch.u * ch.u);
    return inv;
}

CurvePoint map_point(const ModelChange& ch, const CurvePoint& P) {
    if (P.infinity) return P;
    Rat u2 = ch.u * ch.u;
    Rat xn = (P.x - ch.r) / u2;
    Rat yn = (P.y - ch.s * (P.x - ch.r) - ch.t) / (u2 * ch.u);
    return CurvePoint(xn, yn);
}

bool on_curve(const WeierstrassModel& m, const CurvePoint& P) {
    if (P.infinity) return true;
    Rat lhs = P.y * P.y + m.a1 * P.x * P.y + m.a3 * P.y;
    Rat rhs = P.x * P.x * P.x + m.a2 * P.x * P.x + m.a4 * P.x + m.a6;
    return lhs == rhs;
}

CurvePoint negate(const WeierstrassModel& m, const CurvePoint& P) {
    if (P.infinity) return P;
    return CurvePoint(P.x, -P.y - m.a1 * P.x - m.a3);
}

CurvePoint add(const WeierstrassModel& m, const CurvePoint& P, const CurvePoint& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (!on_curve(m, P) || !on_curve(m, Q))
        raise(ErrorCode::point_not_on_curve, "add: point not on model");
    Rat lambda, nu;
    if (P.x == Q.x) {
        if (P.y != Q.y || 2 * P.y + m.a1 * P.x + m.a3 == 0) return CurvePoint::at_infinity();
        Rat den = 2 * P.y + m.a1 * P.x + m.a3;
        lambda = (3 * P.x * P.x + 2 * m.a2 * P.x + m.a4 - m.a1 * P.y) / den;
        nu = (-P.x * P.x * P.x + m.a4 * P.x + 2 * m.a6 - m.a3 * P.y) / den;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
        nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    Rat x3 = lambda * lambda + m.a1 * lambda - m.a2 - P.x - Q.x;
    Rat y3 = -(lambda + m.a1) * x3 - nu - m.a3;
    return CurvePoint(x3, y3);
}

CurvePoint scalar_mul(const WeierstrassModel& m, long n, const CurvePoint& P) {
    CurvePoint base = P;
    if (n < 0) {
        base = negate(m, P);
        n = -n;
    }
    CurvePoint acc = CurvePoint::at_infinity();
    while (n > 0) {
        if (n & 1) acc = add(m, acc, base);
        base = add(m, base, base);
        n >>= 1;
    }
    return acc;
}

long point_order(const WeierstrassModel& m, const CurvePoint& P, long bound) {
    CurvePoint acc = P;
    for (long n = 1; n <= bound; ++n) {
        if (acc.infinity) return n;
        acc = add(m, acc, P);
    }
    return 0;
}

qp::Poly two_division_poly(const WeierstrassModel& m) {
    return qp::make({m.b6, 2 * m.b4, m.b2, Rat(4)});
}

namespace {

// memoized f_n per curve invocation
struct DivPolyTable {
    const WeierstrassModel& m;
    std::map<long, qp::Poly> memo;
    qp::Poly F;

    explicit DivPolyTable(const WeierstrassModel& mm) : m(mm), F(two_division_poly(mm)) {}

    const qp::Poly& get(long n) {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        qp::Poly f;
        if (n == 0)
            f = {};
        else if (n == 1 || n == 2)
            f = qp::make({Rat(1)});
        else if (n == 3)
            f = qp::make({m.b8, 3 * m.b6, 3 * m.b4, m.b2, Rat(3)});
        else if (n == 4)
            f = qp::make({m.b4 * m.b8 - m.b6 * m.b6, m.b2 * m.b8 - m.b4 * m.b6, 10 * m.b8,
                          10 * m.b6, 5 * m.b4, m.b2, Rat(2)});
        else if (n % 2) {
            long mm2 = (n - 1) / 2;
            // f_{2m+1} with psi2^4 = F^2 appearing on the even side
            const qp::Poly t1 = qp::mul(get(mm2 + 2), qp::mul(get(mm2), qp::mul(get(mm2), get(mm2))));
            const qp::Poly t2 =
                qp::mul(get(mm2 - 1), qp::mul(get(mm2 + 1), qp::mul(get(mm2 + 1), get(mm2 + 1))));
            qp::Poly F2 = qp::mul(F, F);
            if (mm2 % 2 == 0)
                f = qp::sub(qp::mul(F2, t1), t2);
            else
                f = qp::sub(t1, qp::mul(F2, t2));
        } else {
            long mm2 = n / 2;
            const qp::Poly t1 = qp::mul(get(mm2 + 2), qp::mul(get(mm2 - 1), get(mm2 - 1)));
            const qp::Poly t2 = qp::mul(get(mm2 - 2), qp::mul(get(mm2 + 1), get(mm2 + 1)));
            f = qp::mul(get(mm2), qp::sub(t1, t2));
        }
        return memo.emplace(n, std::move(f)).first->second;
    }
};

} // namespace

qp::Poly division_poly_x(const WeierstrassModel& m, long n) {
    if (n < 1) raise(ErrorCode::invalid_input, "division_poly_x: n >= 1");
    DivPolyTable tab(m);
    return tab.get(n);
}

Int count_points_mod_p(const WeierstrassModel& m, const Int& p) {
    if (p == 2) {
        Int count = 1;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                auto rm = [&](const Rat& q) {
                    return mod(mod(Int(q.get_num()), p) * invmod(mod(Int(q.get_den()), p), p), p);
                };
                Int lhs = mod(Int(y * y) + rm(m.a1) * x * y + rm(m.a3) * y, p);
                Int rhs = mod(Int(x * x * x) + rm(m.a2) * x * x + rm(m.a4) * x + rm(m.a6), p);
                if (lhs == rhs) ++count;
            }
        return count;
    }
    // complete the square: y -> (y - a1 x - a3)/2 gives y^2 = F(x) mod p
    auto rm = [&](const Rat& q) {
        return mod(mod(Int(q.get_num()), p) * invmod(mod(Int(q.get_den()), p), p), p);
    };
    Int B2 = rm(m.b2), B4 = rm(m.b4), B6 = rm(m.b6);
    Int count = 1 + p; // infinity plus one per x, correction by legendre below
    for (Int x = 0; x < p; ++x) {
        Int fx = mod(((4 * x + B2) * x + 2 * B4) * x + B6, p);
        count += legendre(fx, p);
    }
    return count;
}

namespace {

// candidate x-coordinates of points of order q (prime power) via f_q roots
std::vector<CurvePoint> points_from_poly(const WeierstrassModel& m, const qp::Poly& f) {
    std::vector<CurvePoint> out;
    qp::Poly F = two_division_poly(m);
    for (const Rat& x : qp::rational_roots(f)) {
        Rat fx = qp::eval(F, x);
        if (fx < 0) continue;
        // y solves y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0,
        // discriminant F(x); rational iff F(x) is a rational square.
        if (!is_rational_square(fx)) continue;
        Rat sq(0);
        if (fx != 0) {
            Int ns, ds;
            mpz_sqrt(ns.get_mpz_t(), Int(fx.get_num()).get_mpz_t());
            mpz_sqrt(ds.get_mpz_t(), Int(fx.get_den()).get_mpz_t());
            sq = Rat(ns, ds);
        }
        for (int sign : {1, -1}) {
            Rat y = (-(m.a1 * x + m.a3) + sign * sq) / 2;
            CurvePoint P(x, y);
            if (on_curve(m, P)) out.push_back(P);
            if (sq == 0) break;
        }
    }
    return out;
}

} // namespace

TorsionGroup torsion_subgroup(const WeierstrassModel& m) {
    // reduction bound over good odd primes
    Int bound = 0;
    int used = 0;
    for (uint32_t pp : small_primes()) {
        if (pp == 2) continue;
        Int p(pp);
        if (pp > 997 || used >= 8) break;
        bool ok = true;
        for (const Rat* a : {&m.a1, &m.a2, &m.a3, &m.a4, &m.a6})
            if (mod(Int(a->get_den()), p) == 0) ok = false;
        if (!ok || valuation(m.disc, p) != 0) continue;
        bound = used ? gcd(bound, count_points_mod_p(m, p)) : count_points_mod_p(m, p);
        ++used;
        if (used >= 8) break;
    }
    if (used < 3) raise(ErrorCode::invalid_input, "torsion_subgroup: not enough good primes");

    std::vector<CurvePoint> pts{CurvePoint::at_infinity()};
    auto found = [&](const CurvePoint& P) {
        return std::find(pts.begin(), pts.end(), P) != pts.end();
    };
    // points of prime-power order q | bound, q <= 9 (Mazur range; order 8 is
    // covered by f_8, order 12 elements arise in the closure)
    for (long q : {2, 3, 4, 5, 7, 8, 9}) {
        if (mod(bound, q) != 0) continue;
        qp::Poly f = (q == 2) ? two_division_poly(m) : division_poly_x(m, q);
        for (const CurvePoint& P : points_from_poly(m, f))
            if (!found(P)) pts.push_back(P);
    }
    // close under the group law
    bool grew = true;
    while (grew) {
        grew = false;
        size_t n = pts.size();
        for (size_t i = 1; i < n && !grew; ++i)
            for (size_t j = i; j < n; ++j) {
                CurvePoint S = add(m, pts[i], pts[j]);
                if (!found(S)) {
                    pts.push_back(S);
                    grew = true;
                    break;
                }
            }
    }

    TorsionGroup tg;
    tg.points = pts;
    tg.order = long(pts.size());
    if (tg.order == 1) return tg;

    long max_order = 1;
    CurvePoint gmax = CurvePoint::at_infinity();
    long two_torsion = 0;
    for (const CurvePoint& P : pts) {
        if (P.infinity) continue;
        long o = point_order(m, P, tg.order);
        if (o > max_order) {
            max_order = o;
            gmax = P;
        }
        if (o == 2) ++two_torsion;
    }
    if (two_torsion == 3 && max_order < tg.order) {
        // Z/2 x Z/max_order
        tg.invariants = {2, max_order};
        // find a 2-torsion point outside <gmax>
        CurvePoint g2;
        for (const CurvePoint& P : pts) {
            if (P.infinity || point_order(m, P, 2) != 2) continue;
            bool in_span = false;
            CurvePoint acc = CurvePoint::at_infinity();
            for (long k = 0; k < max_order; ++k) {
                if (acc == P) in_span = true;
                acc = add(m, acc, gmax);
            }
            if (!in_span) {
                g2 = P;
                break;
            }
        }
        tg.generators = {g2, gmax};
    } else {
        tg.invariants = {max_order};
        tg.generators = {gmax};
    }
    return tg;
}

} // namespace shaq
