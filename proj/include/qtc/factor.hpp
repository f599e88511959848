#pragma once

// Factorization of univariate polynomials over GF(q): square-free split,
// distinct-degree split, then Cantor-Zassenhaus equal-degree splitting driven
// by a fixed-seed generator so the whole pipeline is deterministic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "qtc/poly.hpp"

namespace qtc {

struct Factorization {
    Elem unit = 1;
    /// Monic irreducible factors with multiplicities, in canonical polynomial order.
    std::vector<std::pair<Poly, unsigned>> factors;

    [[nodiscard]] Poly product(const Field& f) const {
        Poly r = Poly::constant(f, unit);
        for (const auto& [p, e] : factors) r = r * pow(p, e);
        return r;
    }
    /// Number of monic divisors of the factored polynomial.
    [[nodiscard]] std::size_t divisor_count() const {
        std::size_t n = 1;
        for (const auto& fe : factors) n *= fe.second + 1;
        return n;
    }
};

namespace detail {

inline std::vector<unsigned> prime_divisors(unsigned n) {
    std::vector<unsigned> r;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r.push_back(n);
    return r;
}

/// f(x) = sum c_i x^(ip)  ->  sum c_i^(1/p) x^i
inline Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    const unsigned p = F.characteristic();
    // c^(1/p) = c^(q/p) since c^q = c.
    std::vector<Elem> v;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) v.push_back(F.pow(f.coeffs()[i], F.q() / p));
    return Poly(F, std::move(v));
}

/// Square-free decomposition of a monic polynomial: pairs (square-free part, multiplicity).
inline void squarefree(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
    const Field& F = f.field();
    if (f.degree() <= 0) return;
    Poly c = gcd(f, f.derivative());
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (!fac.is_one()) out.emplace_back(fac, i * mult);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) squarefree(pth_root(c).monic(), mult * F.characteristic(), out);
}

/// Distinct-degree split of a monic square-free polynomial: pairs (product of all degree-d factors, d).
inline std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly f) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, unsigned>> out;
    const Poly x = Poly::monomial(F, 1);
    Poly h = x % f;
    for (unsigned d = 1; f.degree() >= static_cast<int>(2 * d); ++d) {
        h = powmod(h, F.q(), f);
        Poly g = gcd(f, h - x);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
    return out;
}

inline Poly random_poly(const Field& F, int below_degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> dist(0, F.q() - 1);
    std::vector<Elem> v(static_cast<std::size_t>(below_degree));
    for (auto& c : v) c = static_cast<Elem>(dist(rng));
    return Poly(F, std::move(v));
}

/// Splits a monic square-free product of degree-d irreducibles into its factors.
inline void equal_degree(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
    const Field& F = f.field();
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    for (;;) {
        Poly a = random_poly(F, f.degree(), rng);
        if (a.degree() < 1) continue;
        Poly b(F);
        if (F.characteristic() == 2) {
            // Absolute trace to GF(2): sum of a^(2^i) for i < e*d.
            Poly t = a % f;
            b = t;
            for (unsigned i = 1; i < F.degree() * d; ++i) {
                t = mulmod(t, t, f);
                b = b + t;
            }
        } else {
            // a^((q^d-1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            Poly norm = a % f;
            Poly conj = norm;
            for (unsigned i = 1; i < d; ++i) {
                conj = powmod(conj, F.q(), f);
                norm = mulmod(norm, conj, f);
            }
            b = powmod(norm, (F.q() - 1) / 2, f) - Poly::one(F);
        }
        Poly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Factors a nonzero polynomial into a unit times monic irreducibles.
inline Factorization poly_factor(const Poly& f) {
    if (f.is_zero()) throw PreconditionFailed("cannot factor the zero polynomial");
    Factorization out;
    out.unit = f.leading();
    std::vector<std::pair<Poly, unsigned>> sqf;
    detail::squarefree(f.monic(), 1, sqf);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::map<Poly, unsigned> acc;
    for (const auto& [part, mult] : sqf) {
        for (const auto& [block, d] : detail::distinct_degree(part)) {
            std::vector<Poly> irr;
            detail::equal_degree(block, d, rng, irr);
            for (auto& p : irr) acc[p] += mult;
        }
    }
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

/// Factorization of x^m - a.
inline Factorization binomial_factor(const Field& F, std::size_t m, Elem a) {
    if (a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
    if (m == 0) throw PreconditionFailed("block length must be positive");
    return poly_factor(Poly::binomial(F, m, a));
}

/// Rabin's irreducibility test.
inline bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    const Field& F = f.field();
    const Poly g = f.monic();
    const unsigned n = static_cast<unsigned>(g.degree());
    const Poly x = Poly::monomial(F, 1) % g;
    for (unsigned r : detail::prime_divisors(n)) {
        Poly h = frobenius_mod(x, n / r, g);
        if (!gcd(g, h - x).is_one()) return false;
    }
    return (frobenius_mod(x, n, g) - x).is_zero();
}

}  // namespace qtc
