#include "qpoly.hpp"

#include <algorithm>

#include "fpoly.hpp"

namespace shaq::qp {

namespace {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
void itrim(IPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Int pow_int(const Int& p, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), e);
    return out;
}

} // namespace

Poly make(std::vector<Rat> coeffs) {
    trim(coeffs);
    return coeffs;
}

int deg(const Poly& f) { return int(f.size()) - 1; }

Rat eval(const Poly& f, const Rat& x) {
    Rat acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    trim(out);
    return out;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

Poly scale(const Poly& a, const Rat& c) {
    if (c == 0) return {};
    Poly out = a;
    for (auto& x : out) x *= c;
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.empty()) raise(ErrorCode::invalid_input, "qp::divmod by zero");
    Poly r = a, q;
    if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Rat(0));
    Rat lc = b.back();
    while (deg(r) >= deg(b)) {
        Rat c = r.back() / lc;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        trim(r);
    }
    trim(q);
    return {q, r};
}

bool divides(const Poly& a, const Poly& b) {
    if (a.empty()) return b.empty();
    return divmod(b, a).second.empty();
}

Poly gcd(Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

Poly derivative(const Poly& f) {
    if (f.size() <= 1) return {};
    Poly out(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) out[i - 1] = f[i] * Rat(long(i));
    trim(out);
    return out;
}

Poly squarefree_part(const Poly& f) {
    if (deg(f) <= 1) return f;
    Poly g = gcd(f, derivative(f));
    if (deg(g) == 0) return f;
    return divmod(f, g).first;
}

IPoly to_integer(const Poly& f) {
    IPoly out;
    if (f.empty()) return out;
    Int den_lcm = 1;
    for (const auto& c : f) den_lcm = lcm(den_lcm, Int(c.get_den()));
    out.reserve(f.size());
    Int content = 0;
    for (const auto& c : f) {
        Rat v = c * den_lcm;
        out.push_back(Int(v.get_num()));
        content = gcd(content, out.back());
    }
    if (content > 1)
        for (auto& c : out) c /= content;
    return out;
}

int ideg(const IPoly& f) { return int(f.size()) - 1; }

Int ieval(const IPoly& f, const Int& x) {
    Int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat ieval(const IPoly& f, const Rat& x) {
    Rat acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace {

// Rational reconstruction of r mod m with |num|, den <= bound.
std::optional<Rat> rational_reconstruct(const Int& r, const Int& m, const Int& bound) {
    Int r0 = m, r1 = mod(r, m);
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int num = r1, den = t1;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    if (den > bound || gcd(num, den) != 1) return std::nullopt;
    Rat q(num, den);
    q.canonicalize();
    return q;
}

} // namespace

std::vector<Rat> rational_roots(const Poly& f) {
    std::vector<Rat> out;
    if (deg(f) < 1) return out;
    Poly g = squarefree_part(f);
    // deflate a root at zero
    while (!g.empty() && g[0] == 0) {
        if (out.empty()) out.push_back(Rat(0));
        g.erase(g.begin());
    }
    if (deg(g) < 1) return out;
    IPoly F = to_integer(g);

    static const Int prime_base = Int(1) << 192;
    Int P = prime_base;
    for (int attempt = 0; attempt < 64; ++attempt) {
        mpz_nextprime(P.get_mpz_t(), P.get_mpz_t());
        if (mpz_divisible_p(F.back().get_mpz_t(), P.get_mpz_t())) continue;
        std::vector<Int> Fc(F.begin(), F.end());
        fp::Poly Fp = fp::make(Fc, P);
        if (fp::deg(fp::gcd(Fp, fp::derivative(Fp, P), P)) != 0) continue;
        Int bound;
        mpz_sqrt(bound.get_mpz_t(), Int((P - 1) / 2).get_mpz_t());
        for (const Int& r : fp::roots(Fp, P)) {
            auto cand = rational_reconstruct(r, P, bound);
            if (cand && ieval(F, *cand) == 0) out.push_back(*cand);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    raise(ErrorCode::invalid_input, "rational_roots: no usable prime found");
}

// --- Sturm ---

SturmChain sturm(const Poly& f) {
    SturmChain s;
    s.chain.push_back(f);
    s.chain.push_back(derivative(f));
    while (!s.chain.back().empty() && deg(s.chain.back()) > 0) {
        Poly r = divmod(s.chain[s.chain.size() - 2], s.chain.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        s.chain.push_back(r);
    }
    return s;
}

namespace {

long count_changes(const std::vector<int>& signs) {
    long changes = 0;
    int prev = 0;
    for (int sgn : signs) {
        if (sgn == 0) continue;
        if (prev != 0 && sgn != prev) ++changes;
        prev = sgn;
    }
    return changes;
}

} // namespace

long sign_changes_at(const SturmChain& s, const Rat& x) {
    std::vector<int> signs;
    for (const auto& f : s.chain) signs.push_back(sgn(eval(f, x)));
    return count_changes(signs);
}

long sign_changes_at_neg_inf(const SturmChain& s) {
    std::vector<int> signs;
    for (const auto& f : s.chain) {
        if (f.empty()) {
            signs.push_back(0);
            continue;
        }
        int lead = sgn(f.back());
        signs.push_back(deg(f) % 2 ? -lead : lead);
    }
    return count_changes(signs);
}

long sign_changes_at_pos_inf(const SturmChain& s) {
    std::vector<int> signs;
    for (const auto& f : s.chain) signs.push_back(f.empty() ? 0 : sgn(f.back()));
    return count_changes(signs);
}

long count_real_roots(const Poly& f) {
    Poly g = squarefree_part(f);
    if (deg(g) < 1) return 0;
    SturmChain s = sturm(g);
    return sign_changes_at_neg_inf(s) - sign_changes_at_pos_inf(s);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const Poly& f) {
    std::vector<std::pair<Rat, Rat>> out;
    if (deg(f) < 1) return out;
    SturmChain s = sturm(f);
    // Cauchy bound
    Rat M = 0;
    for (size_t i = 0; i + 1 < f.size(); ++i) {
        Rat c = abs(f[i] / f.back());
        if (c > M) M = c;
    }
    M += 1;
    struct Seg {
        Rat lo, hi;
        long vlo, vhi;
    };
    std::vector<Seg> work{{-M, M, sign_changes_at(s, -M), sign_changes_at(s, M)}};
    while (!work.empty()) {
        Seg seg = work.back();
        work.pop_back();
        long n = seg.vlo - seg.vhi;
        if (n <= 0) continue;
        if (n == 1) {
            out.push_back({seg.lo, seg.hi});
            continue;
        }
        Rat mid = (seg.lo + seg.hi) / 2;
        long vm = sign_changes_at(s, mid);
        work.push_back({seg.lo, mid, seg.vlo, vm});
        work.push_back({mid, seg.hi, vm, seg.vhi});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

int sign_at_root(const Poly& f, std::pair<Rat, Rat> iv, const Poly& g) {
    Poly gs = squarefree_part(g);
    SturmChain sf = sturm(f);
    SturmChain sg = sturm(gs);
    auto root_count = [](const SturmChain& s, const Rat& lo, const Rat& hi) {
        return sign_changes_at(s, lo) - sign_changes_at(s, hi);
    };
    Rat lo = iv.first, hi = iv.second;
    for (int iter = 0; iter < 4096; ++iter) {
        if (root_count(sg, lo, hi) == 0 && eval(g, hi) != 0 && eval(g, lo) != 0)
            return sgn(eval(g, hi));
        Rat mid = (lo + hi) / 2;
        if (root_count(sf, lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
    raise(ErrorCode::precision_exhausted, "sign_at_root did not separate");
}

// --- p-adic roots ---

namespace {

IPoly strip_p_content(IPoly f, const Int& p) {
    itrim(f);
    if (f.empty()) return f;
    long minv = -1;
    for (const auto& c : f) {
        if (c == 0) continue;
        long v = valuation(c, p);
        if (minv < 0 || v < minv) minv = v;
        if (minv == 0) break;
    }
    if (minv > 0) {
        Int pe = pow_int(p, minv);
        for (auto& c : f) c /= pe;
    }
    return f;
}

// f(r + p*w) as a polynomial in w (p-content stripped by caller).
IPoly shift_and_scale(const IPoly& f, const Int& r, const Int& p) {
    // Taylor shift by r via Horner on coefficients.
    IPoly g = f;
    int n = ideg(g);
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) g[j] += r * g[j + 1];
    // scale w-coefficients by p^i
    Int pe = 1;
    for (int i = 1; i <= n; ++i) {
        pe *= p;
        g[i] *= pe;
    }
    return g;
}

Int hensel_lift(const IPoly& f, const IPoly& fprime, const Int& r0, const Int& p, long K) {
    Int pk = pow_int(p, K);
    // reduce coefficients once
    IPoly fr(f.size()), fpr(fprime.size());
    for (size_t i = 0; i < f.size(); ++i) fr[i] = mod(f[i], pk);
    for (size_t i = 0; i < fprime.size(); ++i) fpr[i] = mod(fprime[i], pk);
    Int x = mod(r0, pk);
    for (int iter = 0; iter < 64; ++iter) {
        Int fx = 0;
        for (auto it = fr.rbegin(); it != fr.rend(); ++it) fx = mod(fx * x + *it, pk);
        if (fx == 0) break;
        Int dfx = 0;
        for (auto it = fpr.rbegin(); it != fpr.rend(); ++it) dfx = mod(dfx * x + *it, pk);
        // r0 is a simple root mod p, so f'(x) stays a unit through the lift
        if (dfx == 0 || mod(dfx, p) == 0)
            raise(ErrorCode::precision_exhausted, "hensel_lift: derivative not a unit");
        x = mod(x - fx * invmod(dfx, pk), pk);
    }
    return x;
}

void zp_roots_rec(const IPoly& f_in, const Int& p, long prec, long depth, const Int& base,
                  const Int& base_scale_pow, std::vector<Int>& out, const Int& out_mod) {
    // collect roots of f_in in Z_p as base + p^base_scale-adjusted digits.
    IPoly f = strip_p_content(f_in, p);
    if (f.empty()) raise(ErrorCode::invalid_input, "zp_roots of zero polynomial");
    std::vector<Int> coeffs(f.begin(), f.end());
    fp::Poly fbar = fp::make(coeffs, p);
    if (fp::deg(fbar) <= 0) return;
    IPoly fprime(f.size() > 1 ? f.size() - 1 : 0);
    for (size_t i = 1; i < f.size(); ++i) fprime[i - 1] = f[i] * Int(long(i));
    for (const Int& r : fp::roots(fbar, p)) {
        bool simple = fp::eval(fp::make(std::vector<Int>(fprime.begin(), fprime.end()), p), r, p) != 0;
        if (simple) {
            long need = std::max<long>(1, prec);
            Int lifted = hensel_lift(f, fprime, r, p, need);
            // assemble absolute root: base + p^base_scale_pow * lifted
            Int root = mod(base + base_scale_pow * lifted, out_mod);
            out.push_back(root);
        } else {
            if (depth <= 0)
                raise(ErrorCode::precision_exhausted, "p-adic root separation depth exhausted");
            IPoly g = shift_and_scale(f, r, p);
            zp_roots_rec(g, p, prec - 1, depth - 1, base + base_scale_pow * r,
                         base_scale_pow * p, out, out_mod);
        }
    }
}

} // namespace

std::vector<PadicRoot> qp_roots(const IPoly& f_in, const Int& p, long target_prec, long max_depth) {
    std::vector<PadicRoot> out;
    IPoly f = f_in;
    itrim(f);
    if (ideg(f) < 1) return out;
    // scale so all roots land in Z_p: x = X / p^m with m bounding the largest
    // negative root valuation (Newton polygon slope (v(lead) - v(c_i))/(n-i))
    long m = 0;
    long vlead = valuation(f.back(), p);
    for (int i = 0; i < ideg(f); ++i) {
        if (f[i] == 0) continue;
        long vi = valuation(f[i], p);
        long num = vlead - vi;
        long d = ideg(f) - i;
        long slope = num <= 0 ? 0 : (num + d - 1) / d;
        m = std::max(m, slope);
    }
    IPoly H = f;
    if (m > 0) {
        // H(X) = p^(m*n) f(X/p^m): coefficient i gets p^(m*(n-i))
        for (int i = 0; i <= ideg(H); ++i) H[i] *= pow_int(p, static_cast<unsigned long>(m) * (ideg(f) - i));
    }
    long K = target_prec + m;
    if (K < 1) K = 1;
    Int out_mod = pow_int(p, K);
    std::vector<Int> xs;
    zp_roots_rec(H, p, K, max_depth, Int(0), Int(1), xs, out_mod);
    Int pm = pow_int(p, m);
    for (const Int& X : xs) {
        PadicRoot r;
        r.approx = Rat(X, pm);
        r.approx.canonicalize();
        r.prec = K - m;
        out.push_back(r);
    }
    return out;
}

bool splits_completely_over_qp(const IPoly& f, const Int& p, long max_depth) {
    IPoly g = f;
    itrim(g);
    if (ideg(g) < 1) return true;
    return long(qp_roots(g, p, 1, max_depth).size()) == ideg(g);
}

} // namespace shaq::qp
