#include "powerclass.hpp"

#include <algorithm>
#include <set>

namespace shaq {

PowerClass class_of(const Rat& q, long ell) {
    if (q == 0) raise(ErrorCode::invalid_input, "class_of(0)");
    PowerClass c;
    c.ell = ell;
    Factorization fn = factorize(Int(q.get_num()));
    Factorization fd = factorize(Int(q.get_den()));
    for (const auto& [p, e] : fn.exponents) {
        long r = long(e) % ell;
        if (r) c.exps[p] = r;
    }
    for (const auto& [p, e] : fd.exponents) {
        long r = (ell - long(e) % ell) % ell;
        if (r) c.exps[p] = r; // num and den are coprime
    }
    if (ell == 2 && q < 0) c.sign_bit = 1;
    return c;
}

PowerClass pc_mul(const PowerClass& a, const PowerClass& b) {
    if (a.ell != b.ell) raise(ErrorCode::invalid_input, "pc_mul: mixed ell");
    PowerClass c;
    c.ell = a.ell;
    c.exps = a.exps;
    for (const auto& [p, e] : b.exps) {
        long v = ((c.exps.count(p) ? c.exps[p] : 0) + e) % a.ell;
        if (v)
            c.exps[p] = v;
        else
            c.exps.erase(p);
    }
    if (a.ell == 2) c.sign_bit = (a.sign_bit + b.sign_bit) % 2;
    return c;
}

PowerClass pc_pow(const PowerClass& a, long e) {
    long r = ((e % a.ell) + a.ell) % a.ell;
    PowerClass c;
    c.ell = a.ell;
    for (const auto& [p, v] : a.exps) {
        long w = (v * r) % a.ell;
        if (w) c.exps[p] = w;
    }
    if (a.ell == 2) c.sign_bit = (a.sign_bit * r) % 2;
    return c;
}

PowerClass pc_inv(const PowerClass& a) { return pc_pow(a, a.ell - 1); }

Int ClassSubgroup::size() const {
    Int s = 1;
    for (size_t i = 0; i < basis.size(); ++i) s *= ell;
    return s;
}

namespace {

// Coordinates of a class over a fixed prime list (+ sign slot for ell=2).
std::vector<long> coords(const PowerClass& c, const std::vector<Int>& primes, bool sign_slot) {
    std::vector<long> v;
    if (sign_slot) v.push_back(c.sign_bit);
    for (const auto& p : primes) {
        auto it = c.exps.find(p);
        v.push_back(it == c.exps.end() ? 0 : it->second);
    }
    return v;
}

long modl(long x, long ell) { return ((x % ell) + ell) % ell; }

long inv_modl(long a, long ell) {
    long t = 0, newt = 1, r = ell, newr = modl(a, ell);
    while (newr != 0) {
        long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return modl(t, ell);
}

} // namespace

ClassSubgroup subgroup_from(const std::vector<PowerClass>& generators) {
    ClassSubgroup g;
    if (generators.empty()) return g;
    g.ell = generators.front().ell;
    for (const auto& c : generators)
        if (c.ell != g.ell) raise(ErrorCode::invalid_input, "subgroup_from: mixed ell");

    std::set<Int> prime_set;
    for (const auto& c : generators)
        for (const auto& [p, e] : c.exps) prime_set.insert(p);
    std::vector<Int> primes(prime_set.begin(), prime_set.end());
    bool sign_slot = (g.ell == 2);

    // Reduced row echelon over F_ell; pivots[i] is the pivot column of row i,
    // and every row is zero in every other row's pivot column.  Each row
    // carries the PowerClass it represents.
    std::vector<std::vector<long>> rows;
    std::vector<size_t> pivots;
    std::vector<PowerClass> reps;
    const long ell = g.ell;
    for (const auto& c : generators) {
        std::vector<long> v = coords(c, primes, sign_slot);
        PowerClass rep = c;
        for (size_t i = 0; i < rows.size(); ++i) {
            long x = v[pivots[i]];
            if (x == 0) continue;
            // rows are pivot-normalized to 1
            for (size_t j = 0; j < v.size(); ++j) v[j] = modl(v[j] - x * rows[i][j], ell);
            rep = pc_mul(rep, pc_pow(reps[i], ell - x));
        }
        size_t piv = 0;
        while (piv < v.size() && v[piv] == 0) ++piv;
        if (piv == v.size()) continue; // dependent
        // normalize pivot to 1
        long inv = inv_modl(v[piv], ell);
        if (inv != 1) {
            for (auto& x : v) x = modl(x * inv, ell);
            rep = pc_pow(rep, inv);
        }
        // clear this column from existing rows
        for (size_t i = 0; i < rows.size(); ++i) {
            long x = rows[i][piv];
            if (x == 0) continue;
            for (size_t j = 0; j < v.size(); ++j) rows[i][j] = modl(rows[i][j] - x * v[j], ell);
            reps[i] = pc_mul(reps[i], pc_pow(rep, ell - x));
        }
        rows.push_back(v);
        pivots.push_back(piv);
        reps.push_back(rep);
    }
    g.basis = reps;
    return g;
}

bool subgroup_contains(const ClassSubgroup& g, const PowerClass& c) {
    if (c.is_identity()) return true;
    if (g.basis.empty()) return false;
    // Reduce c against the subgroup by brute elimination over the span; dims
    // here are tiny (<= 4).
    std::vector<PowerClass> gens = g.basis;
    gens.push_back(c);
    return subgroup_from(gens).dim() == g.dim();
}

bool is_square_in_quadratic(const Rat& q, const Int& D) {
    if (q == 0) return true;
    if (D == 1 || D == 0) raise(ErrorCode::invalid_input, "is_square_in_quadratic: bad D");
    return is_rational_square(q) || is_rational_square(q * Rat(D));
}

// --- cyclotomic arithmetic ---

bool CycloElem::is_zero() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

CycloElem cyclo_from_rational(long ell, const Rat& q) {
    CycloElem e;
    e.ell = ell;
    e.coeffs.assign(ell - 1, Rat(0));
    e.coeffs[0] = q;
    return e;
}

namespace {

// reduce a polynomial of degree < 2(ell-1) modulo Phi_ell = 1 + x + ... + x^(ell-1)
std::vector<Rat> cyclo_reduce(std::vector<Rat> v, long ell) {
    for (size_t i = v.size(); i-- > size_t(ell - 1);) {
        Rat c = v[i];
        if (c == 0) continue;
        v[i] = 0;
        // x^i = x^(i-ell+1) * x^(ell-1), x^(ell-1) = -(1 + x + ... + x^(ell-2))
        for (long j = 0; j <= ell - 2; ++j) v[i - (ell - 1) + j] -= c;
    }
    v.resize(ell - 1, Rat(0));
    return v;
}

} // namespace

CycloElem cyclo_xi_power(long ell, long k) {
    k = ((k % ell) + ell) % ell;
    CycloElem e;
    e.ell = ell;
    std::vector<Rat> v(ell, Rat(0));
    v[k] = 1;
    e.coeffs = cyclo_reduce(std::move(v), ell);
    return e;
}

CycloElem cyclo_add(const CycloElem& a, const CycloElem& b) {
    CycloElem c = a;
    for (size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] += b.coeffs[i];
    return c;
}

CycloElem cyclo_sub(const CycloElem& a, const CycloElem& b) {
    CycloElem c = a;
    for (size_t i = 0; i < c.coeffs.size(); ++i) c.coeffs[i] -= b.coeffs[i];
    return c;
}

CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b) {
    if (a.ell != b.ell) raise(ErrorCode::invalid_input, "cyclo_mul: mixed fields");
    std::vector<Rat> prod(2 * (a.ell - 1), Rat(0));
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j) prod[i + j] += a.coeffs[i] * b.coeffs[j];
    }
    CycloElem c;
    c.ell = a.ell;
    c.coeffs = cyclo_reduce(std::move(prod), a.ell);
    return c;
}

CycloElem cyclo_pow(const CycloElem& a, long e) {
    if (e < 0) raise(ErrorCode::invalid_input, "cyclo_pow: negative exponent");
    CycloElem result = cyclo_from_rational(a.ell, 1);
    CycloElem base = a;
    while (e > 0) {
        if (e & 1) result = cyclo_mul(result, base);
        base = cyclo_mul(base, base);
        e >>= 1;
    }
    return result;
}

CycloElem cyclo_inv(const CycloElem& a) {
    if (a.is_zero()) raise(ErrorCode::invalid_input, "cyclo_inv(0)");
    // extended Euclid in Q[x] against Phi_ell
    auto to_poly = [](const CycloElem& e) {
        std::vector<Rat> v = e.coeffs;
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    };
    std::vector<Rat> phi(a.ell, Rat(1)); // 1 + x + ... + x^(ell-1)
    std::vector<Rat> r0 = phi, r1 = to_poly(a);
    std::vector<Rat> t0, t1{Rat(1)};
    auto pdeg = [](const std::vector<Rat>& f) { return int(f.size()) - 1; };
    auto psub = [](std::vector<Rat> x, const std::vector<Rat>& y) {
        if (y.size() > x.size()) x.resize(y.size(), Rat(0));
        for (size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
        while (!x.empty() && x.back() == 0) x.pop_back();
        return x;
    };
    auto pshiftmul = [](const std::vector<Rat>& f, const Rat& c, size_t k) {
        std::vector<Rat> out(f.size() + k, Rat(0));
        for (size_t i = 0; i < f.size(); ++i) out[i + k] = f[i] * c;
        return out;
    };
    while (pdeg(r1) > 0) {
        // one division step loop
        std::vector<Rat> q;
        std::vector<Rat> r = r0;
        while (pdeg(r) >= pdeg(r1)) {
            size_t k = r.size() - r1.size();
            Rat c = r.back() / r1.back();
            if (q.size() < k + 1) q.resize(k + 1, Rat(0));
            q[k] += c;
            r = psub(r, pshiftmul(r1, c, k));
        }
        // (r0, r1) <- (r1, r); (t0, t1) <- (t1, t0 - q t1)
        std::vector<Rat> qt1(q.size() + t1.size(), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j) qt1[i + j] += q[i] * t1[j];
        while (!qt1.empty() && qt1.back() == 0) qt1.pop_back();
        std::vector<Rat> tn = psub(t0, qt1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = tn;
        if (r1.empty()) raise(ErrorCode::invalid_input, "cyclo_inv: not invertible");
    }
    Rat c = r1[0];
    CycloElem out;
    out.ell = a.ell;
    out.coeffs.assign(a.ell - 1, Rat(0));
    for (size_t i = 0; i < t1.size() && i < out.coeffs.size(); ++i) out.coeffs[i] = t1[i] / c;
    return out;
}

bool is_lth_power_in_cyclotomic(const CyclotomicClassWitness& w, int witnesses) {
    const long ell = w.ell;
    if (w.conductor != ell)
        raise(ErrorCode::invalid_input, "cyclotomic witness conductor must equal ell");
    if (w.value.is_zero()) raise(ErrorCode::invalid_input, "zero cyclotomic witness");

    // Rational representative: exact test.  q in L*^ell iff q in Q*^ell since
    // [L:Q] = ell-1 is coprime to ell.
    bool rational = true;
    for (size_t i = 1; i < w.value.coeffs.size(); ++i)
        if (w.value.coeffs[i] != 0) rational = false;
    if (rational) {
        PowerClass c = class_of(w.value.coeffs[0], ell);
        if (ell == 2) return c.is_identity();
        return c.exps.empty(); // sign absorbed for odd ell
    }

    int passed = 0;
    Int p = ell; // iterate primes p = 1 mod ell
    while (passed < witnesses) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (mod(p - 1, ell) != 0) continue;
        // roots of Phi_ell mod p: elements of exact order ell
        std::vector<Int> roots;
        for (Int a = 2; a < p && roots.size() < size_t(ell - 1); ++a) {
            Int r = powmod(a, (p - 1) / ell, p);
            if (r != 1) {
                for (long k = 1; k < ell; ++k) {
                    roots.push_back(powmod(r, k, p));
                }
                break;
            }
        }
        for (const Int& r : roots) {
            if (passed >= witnesses) break;
            // evaluate witness at xi = r mod p
            Int val = 0;
            bool degenerate = false;
            Int racc = 1;
            for (size_t i = 0; i < w.value.coeffs.size(); ++i) {
                const Rat& c = w.value.coeffs[i];
                Int den = c.get_den();
                if (mod(den, p) == 0) {
                    degenerate = true;
                    break;
                }
                val = mod(val + mod(Int(c.get_num()), p) * invmod(mod(den, p), p) % p * racc, p);
                racc = racc * r % p;
            }
            if (degenerate || val == 0) continue; // skip ideal, draw replacement
            if (powmod(val, (p - 1) / ell, p) != 1) return false;
            ++passed;
        }
    }
    return true;
}

} // namespace shaq
