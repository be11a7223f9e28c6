#include "family.hpp"

#include <algorithm>

namespace shaq {

std::vector<long> family_ells(long N) {
    switch (N) {
        case 5: return {5};
        case 6: return {2, 3};
        case 7: return {7};
        case 10: return {2, 5};
    }
    raise(ErrorCode::invalid_input, "unsupported family N=" + std::to_string(N));
}

std::vector<long> FamilyInstance::ells() const { return family_ells(N); }

namespace {

bool excluded(long N, const Rat& d) {
    switch (N) {
        case 5: return d == 0;
        case 6: return d == 0 || d == 1 || d == Rat(1, 9);
        case 7: return d == 0 || d == 1;
        case 10: return d == -1 || d == 0 || d == 1;
    }
    return true;
}

} // namespace

FamilyInstance build_family(long N, const Rat& d) {
    if (N != 5 && N != 6 && N != 7 && N != 10)
        raise(ErrorCode::invalid_input, "unsupported family N=" + std::to_string(N));
    if (excluded(N, d))
        raise(ErrorCode::excluded_parameter,
              "d=" + rational_string(d) + " is excluded for N=" + std::to_string(N));

    FamilyInstance inst;
    inst.N = N;
    inst.d = d;
    inst.u = d.get_num();
    inst.v = d.get_den();
    const Rat u(inst.u), v(inst.v);

    switch (N) {
        case 5:
            inst.Ed = WeierstrassModel(d + 1, d, d, 0, 0);
            inst.d_to_int = ModelChange{Rat(1) / v, 0, 0, 0};
            inst.E = WeierstrassModel(u + v, u * v, u * v * v, 0, 0);
            inst.P = CurvePoint(Rat(0), Rat(0));
            break;
        case 6:
            inst.Ed = WeierstrassModel(d + 1, -d * (d - 1), -d * (d - 1), 0, 0);
            inst.d_to_int = ModelChange{Rat(1) / v, 0, 0, 0};
            inst.E = WeierstrassModel(u + v, -u * (u - v), -u * v * (u - v), 0, 0);
            inst.P = CurvePoint(Rat(0), Rat(0));
            break;
        case 7:
            inst.Ed = WeierstrassModel(1 + d - d * d, d * d - d * d * d, d * d - d * d * d, 0, 0);
            inst.d_to_int = ModelChange{Rat(1) / (v * v), 0, 0, 0};
            inst.E = WeierstrassModel((v - u) * (v + u) + u * v, (v - u) * u * u * v,
                                      (v - u) * u * u * v * v * v, 0, 0);
            inst.P = CurvePoint(Rat(0), Rat(0));
            break;
        case 10: {
            Rat d2 = d * d, d3 = d2 * d;
            inst.Ed = WeierstrassModel(-d3 + d2 + d + 1, -d2 * (d - 1) * (d + 1),
                                       -d2 * (d - 1) * (d + 1) * (d + 1), 0, 0);
            inst.d_to_int = ModelChange{Rat(1) / (v * v * v), 0, 0, 0};
            inst.E = transform(inst.Ed, inst.d_to_int);
            CurvePoint Pd(d3 - d, (d3 - d) * (d3 - d));
            inst.P = map_point(inst.d_to_int, Pd);
            break;
        }
    }
    if (!on_curve(inst.E, inst.P) || point_order(inst.E, inst.P, N) != N)
        raise(ErrorCode::invalid_input, "family point does not have exact order N");

    if (N == 5 || N == 7) {
        IsogenyData iso = velu(inst.E, inst.P);
        inst.eta_ell[N] = iso;
        inst.eta = iso;
        inst.Eprime = iso.codomain;
    } else {
        long ell_big = (N == 6) ? 3 : 5;
        CurvePoint gen2 = scalar_mul(inst.E, N / 2, inst.P);
        CurvePoint genb = scalar_mul(inst.E, N / ell_big, inst.P);
        IsogenyData s1 = velu(inst.E, gen2);
        inst.eta_ell[2] = s1;
        inst.eta_ell[ell_big] = velu(inst.E, genb);
        CurvePoint mid_gen = evaluate(s1, genb);
        IsogenyData s2 = velu(s1.codomain, mid_gen);
        inst.eta = compose_cyclic({s1, s2}, inst.P);
        inst.Eprime = inst.eta.codomain;
    }
    return inst;
}

namespace {

long vint(const Int& n, const Int& p) { return n == 0 ? -1 : valuation(n, p); }

void fill_norms(const FamilyInstance& inst, ReductionSummary& rs, const Int& p) {
    for (long ell : inst.ells()) {
        if (mod(Int(ell), p) != 0) {
            rs.eta_prime_norm_at_p[ell] = 1;
            continue;
        }
        // p = ell.  For N = 5, 7 congruence criteria decide the value; for
        // the composite families compute it from the minimal
        // model rescalings (at p = 2 the formal-group map need not be
        // injective, so no reduction-type shortcut applies).
        if (inst.N == 5) {
            bool deep = mod(inst.u - 7 * inst.v, Int(25)) == 0;
            rs.eta_prime_norm_at_p[ell] = deep ? Rat(1, 5) : Rat(1);
        } else if (inst.N == 7) {
            bool deep = mod(inst.u - 5 * inst.v, Int(7)) == 0;
            rs.eta_prime_norm_at_p[ell] = deep ? Rat(1, 7) : Rat(1);
        } else {
            rs.eta_prime_norm_at_p[ell] = eta_prime_norm(inst.eta_ell.at(ell), p);
        }
    }
}

void fill_tamagawa_l2(const FamilyInstance& inst, ReductionSummary& rs, const Int& p) {
    if (inst.N != 6 && inst.N != 10) return;
    if (rs.c_E && rs.c_Eprime_l2) return;
    rs.c_E = tate_algorithm(inst.E, p).c;
    rs.c_Eprime_l2 = tate_algorithm(inst.eta_ell.at(2).codomain, p).c;
}

} // namespace

ReductionSummary reduction_profile_direct(const FamilyInstance& inst, const Int& p) {
    ReductionSummary rs;
    rs.p = p;
    rs.from_closed_form = false;
    ReductionData rd = tate_algorithm(inst.E, p);
    if (rd.good())
        rs.red_type = RedType::good;
    else if (rd.multiplicative())
        rs.red_type = rd.split ? RedType::split : RedType::nonsplit;
    else
        rs.red_type = RedType::additive;
    rs.c_E = rd.c;
    for (long ell : inst.ells()) {
        CurvePoint gen = *inst.eta_ell.at(ell).kernel_generator;
        rs.kernel_in_E0[ell] = kernel_in_identity_component(inst.E, gen, p);
        rs.eta_prime_norm_at_p[ell] =
            mod(Int(ell), p) == 0 ? eta_prime_norm(inst.eta_ell.at(ell), p) : Rat(1);
    }
    if (inst.N == 6 || inst.N == 10)
        rs.c_Eprime_l2 = tate_algorithm(inst.eta_ell.at(2).codomain, p).c;
    return rs;
}

ReductionSummary reduction_profile(const FamilyInstance& inst, const Int& p) {
    const Int &u = inst.u, &v = inst.v;
    ReductionSummary rs;
    rs.p = p;

    auto fallback_type = [&]() {
        ReductionData rd = tate_algorithm(inst.E, p);
        rs.from_closed_form = false;
        if (rd.good())
            rs.red_type = RedType::good;
        else if (rd.multiplicative())
            rs.red_type = rd.split ? RedType::split : RedType::nonsplit;
        else
            rs.red_type = RedType::additive;
        rs.c_E = rd.c;
    };
    // the lemma flags are proved on a p-minimal model; recompute them at the
    // primes where the family model can fail to be minimal
    auto fallback_flags = [&]() {
        rs.from_closed_form = false;
        for (long ell : inst.ells())
            rs.kernel_in_E0[ell] =
                kernel_in_identity_component(inst.E, *inst.eta_ell.at(ell).kernel_generator, p);
    };

    if (inst.N == 5) {
        Int R = u * u + 11 * u * v - v * v;
        if (mod(u * v, p) == 0) {
            rs.red_type = RedType::split;
            rs.kernel_in_E0[5] = false;
        } else if (mod(R, p) == 0) {
            rs.kernel_in_E0[5] = true;
            if (p == 5)
                rs.red_type = RedType::additive;
            else if (mod(p, Int(5)) == 1)
                rs.red_type = RedType::split;
            else
                rs.red_type = RedType::nonsplit;
        } else {
            rs.red_type = RedType::good;
            rs.kernel_in_E0[5] = true;
        }
        fill_norms(inst, rs, p);
        return rs;
    }

    if (inst.N == 7) {
        Int R = u * u * u - 8 * u * u * v + 5 * u * v * v + v * v * v;
        if (mod(u * v * (v - u), p) == 0) {
            rs.red_type = RedType::split;
            rs.kernel_in_E0[7] = false;
        } else if (mod(R, p) == 0) {
            rs.kernel_in_E0[7] = true;
            if (p == 7)
                rs.red_type = RedType::additive;
            else if (mod(p, Int(7)) == 1)
                rs.red_type = RedType::split;
            else
                rs.red_type = RedType::nonsplit;
        } else {
            rs.red_type = RedType::good;
            rs.kernel_in_E0[7] = true;
        }
        fill_norms(inst, rs, p);
        return rs;
    }

    if (inst.N == 6) {
        bool cu = mod(u, p) == 0;
        bool cuv = mod(u - v, p) == 0;
        bool cv = mod(v, p) == 0;
        bool c9 = mod(9 * u - v, p) == 0;
        if (cu) {
            rs.red_type = RedType::split;
            rs.kernel_in_E0[2] = false;
            rs.kernel_in_E0[3] = false;
        } else if (cuv) {
            if (p != 2) {
                rs.kernel_in_E0[2] = true;
                rs.kernel_in_E0[3] = false;
                rs.red_type = RedType::split;
            } else {
                fallback_type();
                fallback_flags();
            }
        } else if (cv) {
            if (p == 3) {
                fallback_type();
                fallback_flags();
            } else {
                rs.kernel_in_E0[2] = false;
                rs.kernel_in_E0[3] = true;
                if (mod(p, Int(3)) == 1)
                    rs.red_type = RedType::split;
                else {
                    rs.red_type = RedType::nonsplit;
                    rs.c_E = 2;
                    rs.c_Eprime_l2 = (vint(v, p) % 2 != 0) ? 1 : 2;
                }
            }
        } else if (c9) {
            if (p == 2 || p == 3) {
                fallback_type();
                fallback_flags();
            } else {
                rs.kernel_in_E0[2] = true;
                rs.kernel_in_E0[3] = true;
                if (mod(p, Int(3)) == 1)
                    rs.red_type = RedType::split;
                else {
                    rs.red_type = RedType::nonsplit;
                    rs.c_Eprime_l2 = 2;
                    rs.c_E = (vint(9 * u - v, p) % 2 != 0) ? 1 : 2;
                }
            }
        } else {
            rs.red_type = RedType::good;
            rs.kernel_in_E0[2] = true;
            rs.kernel_in_E0[3] = true;
        }
        if (rs.red_type == RedType::nonsplit) fill_tamagawa_l2(inst, rs, p);
        fill_norms(inst, rs, p);
        return rs;
    }

    // N = 10
    {
        Int A = u * v;
        Int B = (u - v) * (u + v);
        Int C = u * u + u * v - v * v;
        Int D = u * u - 4 * u * v - v * v;
        rs.kernel_in_E0[2] = !(mod(A, p) == 0 || mod(C, p) == 0);
        rs.kernel_in_E0[5] = !(mod(A, p) == 0 || mod(B, p) == 0);
        if (mod(A, p) == 0) {
            rs.red_type = RedType::split;
        } else if (mod(B, p) == 0) {
            if (p != 2)
                rs.red_type = RedType::split;
            else {
                fallback_type();
                fallback_flags();
            }
        } else if (mod(C, p) == 0) {
            if (p == 5) {
                fallback_type();
                fallback_flags();
            } else {
                int chi = legendre(mod(u * v - 2 * v * v, p), p);
                if (chi == 1)
                    rs.red_type = RedType::split;
                else if (chi == -1) {
                    rs.red_type = RedType::nonsplit;
                    rs.c_E = 2;
                    rs.c_Eprime_l2 = (vint(C, p) % 2 != 0) ? 1 : 2;
                } else
                    fallback_type();
            }
        } else if (mod(D, p) == 0) {
            fallback_type(); // the lemma gives no reduction-type rule here
        } else {
            rs.red_type = RedType::good;
        }
        if (rs.red_type == RedType::nonsplit) fill_tamagawa_l2(inst, rs, p);
        fill_norms(inst, rs, p);
        return rs;
    }
}

namespace {

// family divisor function on the d-model; returns nullopt at zeros/poles
std::optional<Rat> eval_family_f(const FamilyInstance& inst, long ell, const CurvePoint& Qd) {
    if (Qd.infinity) return std::nullopt;
    const Rat& d = inst.d;
    const Rat& X = Qd.x;
    const Rat& Y = Qd.y;
    Rat val;
    if (inst.N == 5) {
        val = -X * X + X * Y + Y;
    } else if (inst.N == 7) {
        val = d * d * X * X + X * X * X + d * X * X * X - d * d * Y - X * Y - 2 * d * X * Y -
              X * X * Y;
    } else if (inst.N == 6) {
        if (ell == 2)
            val = X + d;
        else
            val = Y + 2 * d * X - d * d * (d - 1);
    } else { // N = 10
        if (ell == 2)
            val = X + d * d;
        else {
            Rat d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
            Rat den = Y + (d + 1) * X - (d5 + d4 - d3 - d2);
            if (den == 0) return std::nullopt;
            val = X * Y * Y / den;
        }
    }
    if (val == 0) return std::nullopt;
    return val;
}

} // namespace

PowerClass fP_class_image(const FamilyInstance& inst, const CurvePoint& Q, long ell) {
    auto ls = inst.ells();
    if (std::find(ls.begin(), ls.end(), ell) == ls.end())
        raise(ErrorCode::invalid_input, "fP_class_image: ell does not divide N");
    if (!on_curve(inst.E, Q)) raise(ErrorCode::point_not_on_curve, "fP_class_image");
    if (Q.infinity) {
        PowerClass id;
        id.ell = ell;
        return id;
    }
    ModelChange int_to_d = inverse(inst.d_to_int);
    CurvePoint Qd = map_point(int_to_d, Q);
    if (auto val = eval_family_f(inst, ell, Qd)) return class_of(*val, ell);
    // linearity extension: class(f(Q)) = class(f(Q+S)) - class(f(S))
    CurvePoint Pd = map_point(int_to_d, inst.P);
    CurvePoint S = Pd;
    for (long k = 1; k < 4 * inst.N; ++k) {
        auto fs = eval_family_f(inst, ell, S);
        auto fqs = eval_family_f(inst, ell, add(inst.Ed, Qd, S));
        if (fs && fqs) return pc_mul(class_of(*fqs, ell), pc_inv(class_of(*fs, ell)));
        S = add(inst.Ed, S, Pd);
    }
    raise(ErrorCode::undefined_at_point, "fP_class_image: no linearity witness found");
}

Rat coker_eta_tors_phi_side(const FamilyInstance& inst) {
    const Rat& d = inst.d;
    if (inst.N == 6) return (9 * d - 1) * (d - 1);
    if (inst.N == 10) return (d - 1) * (d + 1) * (d * d - 4 * d - 1);
    raise(ErrorCode::invalid_input, "coker_eta_tors_phi_side: only N = 6, 10");
}

namespace {

// zeta-product class of Prop. torsion-quotient-for-l=5 for d = delta^5
CycloElem zeta_product(const Rat& delta) {
    const long ell = 5;
    CycloElem xi1 = cyclo_xi_power(ell, 1);
    CycloElem one = cyclo_from_rational(ell, 1);
    CycloElem xiplus1 = cyclo_add(xi1, one);
    CycloElem out = cyclo_from_rational(ell, 1);
    for (long j = 1; j <= 4; ++j) {
        // zeta_j = -xi^{e_j} (xi + 1), with exponents (4, 1, 3, 0) for j = 1..4
        static const long es[4] = {4, 1, 3, 0};
        CycloElem zeta = cyclo_mul(cyclo_from_rational(ell, -1),
                                   cyclo_mul(cyclo_xi_power(ell, es[j - 1]), xiplus1));
        CycloElem t1 = cyclo_add(cyclo_from_rational(ell, delta), zeta);
        CycloElem t2 = cyclo_sub(cyclo_from_rational(ell, delta), cyclo_inv(zeta));
        out = cyclo_mul(out, cyclo_pow(cyclo_mul(t1, t2), j));
    }
    return out;
}

bool cyclic_subgroups_equal_mod_lth(const CycloElem& t1, const CycloElem& t2, long ell) {
    auto is_power = [&](const CycloElem& w) {
        CyclotomicClassWitness cw{ell, ell, w};
        return is_lth_power_in_cyclotomic(cw);
    };
    bool triv1 = is_power(t1);
    bool triv2 = is_power(t2);
    if (triv1 || triv2) return triv1 == triv2;
    for (long a = 1; a < ell; ++a)
        if (is_power(cyclo_mul(t1, cyclo_pow(t2, ell - a)))) return true;
    return false;
}

Rat fifth_root(const Rat& q) {
    Int n, d;
    if (!mpz_root(n.get_mpz_t(), Int(q.get_num()).get_mpz_t(), 5) ||
        !mpz_root(d.get_mpz_t(), Int(q.get_den()).get_mpz_t(), 5))
        raise(ErrorCode::invalid_input, "fifth_root: not a fifth power");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

void check_torsion_hypotheses(long N, const FamilyInstance& inst) {
    TorsionGroup tE = torsion_subgroup(inst.E);
    if (tE.invariants != std::vector<long>{N})
        raise(ErrorCode::torsion_hypothesis_violated,
              "E(Q)_tors is not Z/" + std::to_string(N) + " for d=" + rational_string(inst.d));
    TorsionGroup tEp = torsion_subgroup(inst.Eprime);
    if (tEp.invariants != std::vector<long>{2})
        raise(ErrorCode::torsion_hypothesis_violated,
              "E'(Q)_tors is not Z/2 for d=" + rational_string(inst.d));
}

} // namespace

TorsionQuotientReport torsion_quotient(long N, const FamilyInstance& inst1,
                                       const FamilyInstance& inst2) {
    if (inst1.N != N || inst2.N != N)
        raise(ErrorCode::invalid_input, "torsion_quotient: family mismatch");
    TorsionQuotientReport rep;

    if (N == 5) {
        PowerClass c1 = class_of(inst1.d, 5), c2 = class_of(inst2.d, 5);
        long dim = subgroup_from({c1, c2}).dim();
        Int coker_dual = 1;
        for (long i = 0; i < dim; ++i) coker_dual *= 5;
        Int coker = 1;
        if (c1.is_identity() && c2.is_identity()) {
            CycloElem t1 = zeta_product(fifth_root(inst1.d));
            CycloElem t2 = zeta_product(fifth_root(inst2.d));
            if (cyclic_subgroups_equal_mod_lth(t1, t2, 5)) coker = 5;
        }
        rep.coker_dual_sizes[5] = coker_dual;
        rep.coker_sizes[5] = coker;
        rep.quotient = Rat(5) * Rat(coker_dual) / Rat(coker);
        return rep;
    }

    if (N == 7) {
        auto w = [](const Rat& d) -> Rat { return d * (d - 1) * (d - 1); };
        PowerClass c1 = class_of(w(inst1.d), 7), c2 = class_of(w(inst2.d), 7);
        long dim = subgroup_from({c1, c2}).dim();
        Int coker_dual = 1;
        for (long i = 0; i < dim; ++i) coker_dual *= 7;
        rep.coker_dual_sizes[7] = coker_dual;
        rep.coker_sizes[7] = 1;
        rep.quotient = Rat(7) * Rat(coker_dual);
        return rep;
    }

    // N = 6 or 10: the torsion lemmas presuppose E ~ Z/N and E' ~ Z/2
    check_torsion_hypotheses(N, inst1);
    check_torsion_hypotheses(N, inst2);

    long ell_big = (N == 6) ? 3 : 5;
    Rat f2_1, f2_2, fb_1, fb_2;
    if (N == 6) {
        auto f2 = [](const Rat& d) -> Rat { return d; };
        auto f3 = [](const Rat& d) -> Rat { return d * d * (d - 1); };
        f2_1 = f2(inst1.d);
        f2_2 = f2(inst2.d);
        fb_1 = f3(inst1.d);
        fb_2 = f3(inst2.d);
    } else {
        auto f2 = [](const Rat& d) -> Rat { return d * (d * d + d - 1); };
        // f_5(P) = d^4 (d-1)^2 (d+1)^3 exactly (X(P)^5 / den(P) simplifies to
        // this; the square on (d-1) is forced by the homomorphism property)
        auto f5 = [](const Rat& d) -> Rat {
            Rat d1 = d - 1, p1 = d + 1;
            return d * d * d * d * d1 * d1 * p1 * p1 * p1;
        };
        f2_1 = f2(inst1.d);
        f2_2 = f2(inst2.d);
        fb_1 = f5(inst1.d);
        fb_2 = f5(inst2.d);
    }
    long dim2 = subgroup_from({class_of(f2_1, 2), class_of(f2_2, 2)}).dim();
    long dimb = subgroup_from({class_of(fb_1, ell_big), class_of(fb_2, ell_big)}).dim();
    Int cd2 = 1, cdb = 1;
    for (long i = 0; i < dim2; ++i) cd2 *= 2;
    for (long i = 0; i < dimb; ++i) cdb *= ell_big;
    rep.coker_dual_sizes[2] = cd2;
    rep.coker_dual_sizes[ell_big] = cdb;

    Int Dfield = (N == 6) ? Int(-3) : Int(5);
    Rat w1 = coker_eta_tors_phi_side(inst1);
    Rat w2 = coker_eta_tors_phi_side(inst2);
    bool triv1 = is_square_in_quadratic(w1, Dfield);
    bool triv2 = is_square_in_quadratic(w2, Dfield);
    Int coker2 = 1;
    if (!triv1 && !triv2 && is_square_in_quadratic(w1 * w2, Dfield)) coker2 = 2;
    rep.coker_sizes[2] = coker2;
    rep.coker_sizes[ell_big] = 1;

    rep.quotient = Rat(ell_big) * Rat(cd2 * cdb) / Rat(coker2);
    return rep;
}

} // namespace shaq
