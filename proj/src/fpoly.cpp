#include "fpoly.hpp"

#include <algorithm>

namespace shaq::fp {

namespace {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

} // namespace

Poly make(std::vector<Int> coeffs, const Int& p) {
    for (auto& c : coeffs) c = mod(c, p);
    trim(coeffs);
    return coeffs;
}

int deg(const Poly& f) { return int(f.size()) - 1; }

Int eval(const Poly& f, const Int& x, const Int& p) {
    Int acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * x + *it, p);
    return acc;
}

Poly add(const Poly& a, const Poly& b, const Int& p) {
    Poly out(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < out.size(); ++i) {
        Int c = 0;
        if (i < a.size()) c += a[i];
        if (i < b.size()) c += b[i];
        out[i] = mod(c, p);
    }
    trim(out);
    return out;
}

Poly sub(const Poly& a, const Poly& b, const Int& p) {
    Poly out(std::max(a.size(), b.size()), Int(0));
    for (size_t i = 0; i < out.size(); ++i) {
        Int c = 0;
        if (i < a.size()) c += a[i];
        if (i < b.size()) c -= b[i];
        out[i] = mod(c, p);
    }
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    for (auto& c : out) c = mod(c, p);
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Int& p) {
    if (b.empty()) raise(ErrorCode::invalid_input, "fp::divmod by zero");
    Poly r = a, q;
    Int lc_inv = invmod(b.back(), p);
    if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Int(0));
    while (deg(r) >= deg(b)) {
        Int c = mod(r.back() * lc_inv, p);
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] = mod(r[shift + i] - c * b[i], p);
        trim(r);
    }
    trim(q);
    return {q, r};
}

Poly monic(const Poly& f, const Int& p) {
    if (f.empty()) return f;
    Int inv = invmod(f.back(), p);
    Poly out = f;
    for (auto& c : out) c = mod(c * inv, p);
    return out;
}

Poly gcd(Poly a, Poly b, const Int& p) {
    while (!b.empty()) {
        Poly r = divmod(a, b, p).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly derivative(const Poly& f, const Int& p) {
    if (f.size() <= 1) return {};
    Poly out(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) out[i - 1] = mod(f[i] * Int(long(i)), p);
    trim(out);
    return out;
}

Poly powmod(const Poly& base, const Int& e, const Poly& f, const Int& p) {
    Poly result{Int(1)};
    Poly b = divmod(base, f, p).second;
    Int n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = divmod(mul(result, b, p), f, p).second;
        b = divmod(mul(b, b, p), f, p).second;
        n >>= 1;
    }
    return result;
}

long count_roots(const Poly& f, const Int& p) {
    if (f.empty()) raise(ErrorCode::invalid_input, "count_roots of zero polynomial");
    if (deg(f) == 0) return 0;
    // gcd(x^p - x, f)
    Poly xp = powmod(Poly{Int(0), Int(1)}, p, f, p);
    Poly xpx = sub(xp, Poly{Int(0), Int(1)}, p);
    Poly g = gcd(xpx, f, p);
    return deg(g);
}

namespace {

// Split a product of distinct monic linear factors into roots.
void split_linears(const Poly& h, const Int& p, std::vector<Int>& out) {
    int d = deg(h);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(mod(-h[0], p)); // monic x + c
        return;
    }
    if (p == 2) {
        for (int r = 0; r < 2; ++r)
            if (eval(h, r, p) == 0) out.push_back(r);
        return;
    }
    Int half = (p - 1) / 2;
    for (Int shift = 0;; ++shift) {
        // gcd((x+shift)^((p-1)/2) - 1, h)
        Poly w = powmod(Poly{shift, Int(1)}, half, h, p);
        w = sub(w, Poly{Int(1)}, p);
        Poly g = gcd(w, h, p);
        if (deg(g) > 0 && deg(g) < d) {
            split_linears(g, p, out);
            split_linears(divmod(h, g, p).first, p, out);
            return;
        }
    }
}

} // namespace

std::vector<Int> roots(const Poly& f, const Int& p) {
    std::vector<Int> out;
    if (f.empty()) raise(ErrorCode::invalid_input, "roots of zero polynomial");
    if (deg(f) == 0) return out;
    if (p < 4096) {
        for (Int r = 0; r < p; ++r)
            if (eval(f, r, p) == 0) out.push_back(r);
        return out;
    }
    Poly xp = powmod(Poly{Int(0), Int(1)}, p, f, p);
    Poly xpx = sub(xp, Poly{Int(0), Int(1)}, p);
    Poly h = gcd(xpx, f, p);
    split_linears(h, p, out);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace shaq::fp
