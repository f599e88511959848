#pragma once

// Test-only reference computations. Everything here is deliberately naive and
// shares no code path with the library routines it is used to check.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "qtc/linear_code.hpp"
#include "qtc/poly.hpp"

namespace oracle {

using qtc::Elem;
using qtc::Field;
using qtc::Poly;

/// All monic polynomials of exactly degree d.
inline std::vector<Poly> monic_of_degree(const Field& F, unsigned d) {
    std::vector<Poly> out;
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) total *= F.q();
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<Elem> c(d + 1);
        std::uint64_t x = code;
        for (unsigned i = 0; i < d; ++i, x /= F.q()) c[i] = Elem(x % F.q());
        c[d] = 1;
        out.emplace_back(F, c);
    }
    return out;
}

/// True when f has no monic divisor of degree 1..deg(f)/2 (trial division).
inline bool irreducible_by_trial(const Poly& f) {
    if (f.degree() < 1) return false;
    for (unsigned d = 1; 2 * d <= unsigned(f.degree()); ++d)
        for (const auto& p : monic_of_degree(f.field(), d))
            if ((f % p).is_zero()) return false;
    return true;
}

inline bool has_root(const Poly& f) {
    for (unsigned x = 0; x < f.field().q(); ++x)
        if (f.eval(Elem(x)) == 0) return true;
    return false;
}

/// Highest-degree monic common divisor found by scanning every monic divisor candidate of h.
inline Poly gcd_by_scan(const Poly& f, const Poly& h) {
    Poly best = Poly::one(h.field());
    for (unsigned d = 1; d <= unsigned(h.degree()); ++d)
        for (const auto& p : monic_of_degree(h.field(), d))
            if ((h % p).is_zero() && (f % p).is_zero()) best = p;
    return best;
}

inline Poly random_poly(const Field& F, int max_degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> d(0, F.q() - 1);
    std::vector<Elem> c(std::size_t(max_degree + 1));
    for (auto& x : c) x = Elem(d(rng));
    return Poly(F, c);
}

/// Every distinct codeword spanned by `rows`, by summing all q^r coefficient combinations.
inline std::set<std::vector<Elem>> codewords(const Field& F, std::size_t n, const std::vector<std::vector<Elem>>& rows) {
    std::set<std::vector<Elem>> out;
    std::vector<unsigned> coef(rows.size(), 0);
    for (;;) {
        std::vector<Elem> v(n, 0);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] = F.add(v[j], F.mul(Elem(coef[i]), rows[i][j]));
        out.insert(v);
        std::size_t i = 0;
        while (i < coef.size() && ++coef[i] == F.q()) coef[i++] = 0;
        if (i == coef.size()) break;
    }
    return out;
}

inline std::set<std::vector<Elem>> codewords(const qtc::GeneratorMatrix& g) {
    return codewords(g.field(), g.length(), g.rows());
}

inline std::size_t weight(const std::vector<Elem>& v) {
    std::size_t w = 0;
    for (Elem x : v) w += x != 0;
    return w;
}

/// Smallest nonzero weight, 0 for the zero code.
inline std::size_t min_distance(const qtc::GeneratorMatrix& g) {
    std::size_t best = 0;
    for (const auto& v : codewords(g)) {
        const std::size_t w = weight(v);
        if (w > 0 && (best == 0 || w < best)) best = w;
    }
    return best;
}

inline std::vector<std::uint64_t> weight_distribution(const qtc::GeneratorMatrix& g) {
    std::vector<std::uint64_t> out(g.length() + 1, 0);
    for (const auto& v : codewords(g)) ++out[weight(v)];
    return out;
}

/// log_q of the number of codewords.
inline std::size_t dimension(const qtc::GeneratorMatrix& g) {
    std::size_t size = codewords(g).size(), k = 0;
    while (size > 1) size /= g.field().q(), ++k;
    return k;
}

/// Weight distribution over all q^r integer combinations of the rows, prime q only.
inline std::vector<std::uint64_t> weight_distribution_prime(const qtc::GeneratorMatrix& g) {
    const unsigned p = g.field().q();
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("weight_distribution_prime needs a prime field");
    const std::size_t n = g.length(), r = g.row_count();
    std::vector<std::uint64_t> out(n + 1, 0);
    std::vector<unsigned> v(n, 0), coef(r, 0);
    std::size_t w = 0;
    ++out[0];
    for (;;) {
        std::size_t i = 0;
        while (i < r && ++coef[i] == p) coef[i++] = 0;
        if (i == r) break;
        // digits 0..i each moved by one step: wrapped ones from p-1 back to 0, digit i up by one
        for (std::size_t t = 0; t <= i; ++t) {
            const auto& row = g.row(t);
            for (std::size_t j = 0; j < n; ++j) {
                if (row[j] == 0) continue;
                if (v[j] != 0) --w;
                v[j] = (v[j] + row[j]) % p;
                if (v[j] != 0) ++w;
            }
        }
        ++out[w];
    }
    return out;
}

/// Smallest nonzero weight by streaming enumeration, prime q only; 0 for the zero code.
inline std::size_t min_distance_prime(const qtc::GeneratorMatrix& g) {
    const auto dist = weight_distribution_prime(g);
    for (std::size_t w = 1; w < dist.size(); ++w)
        if (dist[w]) return w;
    return 0;
}

inline qtc::GeneratorMatrix random_matrix(const Field& F, std::size_t n, std::size_t k, std::mt19937_64& rng) {
    std::uniform_int_distribution<unsigned> d(0, F.q() - 1);
    std::vector<std::vector<Elem>> rows(k, std::vector<Elem>(n));
    for (auto& r : rows)
        for (auto& x : r) x = Elem(d(rng));
    return qtc::GeneratorMatrix(F, n, rows);
}

}  // namespace oracle
