#pragma once

// Constacyclic codes: ideals of GF(q)[x]/<x^m - a>, their divisor enumeration
// and twistulant (a-circulant) generator matrices.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtc/distance.hpp"
#include "qtc/factor.hpp"
#include "qtc/linear_code.hpp"
#include "qtc/poly.hpp"

namespace qtc {

/// pi_a: (c_0, ..., c_{m-1}) -> (a c_{m-1}, c_0, ..., c_{m-2}).
inline Vec cc_shift(std::span<const Elem> v, const Field& F, Elem a) {
    if (a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
    Vec out(v.size());
    if (v.empty()) return out;
    out[0] = F.mul(a, v.back());
    std::copy(v.begin(), v.end() - 1, out.begin() + 1);
    return out;
}

/// f mod (x^m - a).
inline Poly reduce_mod_binomial(const Poly& f, std::size_t m, Elem a) {
    return f % Poly::binomial(f.field(), m, a);
}

/// Coefficient vector of length m of a residue modulo x^m - a.
inline Vec coefficient_vector(const Poly& f, std::size_t m, Elem a) {
    const Poly r = reduce_mod_binomial(f, m, a);
    Vec v(m, 0);
    std::copy(r.coeffs().begin(), r.coeffs().end(), v.begin());
    return v;
}

struct ConstacyclicCode {
    const Field* field = nullptr;
    std::size_t m = 0;
    Elem a = 1;
    Poly g;  ///< monic standard generator, g | x^m - a
    Poly h;  ///< check polynomial (x^m - a) / g
    std::size_t k = 0;

    [[nodiscard]] Poly modulus() const { return Poly::binomial(*field, m, a); }
    /// v(x) is a codeword iff h(x) v(x) = 0 mod x^m - a.
    [[nodiscard]] bool contains(const Poly& v) const { return (h * v % modulus()).is_zero(); }
};

inline ConstacyclicCode cc_make(const Field& F, std::size_t m, Elem a, const Poly& g) {
    if (a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
    if (g.field_ptr() != &F) throw FieldMismatch("generator over a different field");
    if (!g.is_monic()) throw NotMonic("generator " + g.to_string() + " is not monic");
    const Poly mod = Poly::binomial(F, m, a);
    auto [h, r] = mod.divmod(g);
    if (!r.is_zero()) throw NotADivisor(g.to_string() + " does not divide x^" + std::to_string(m) + " - a");
    return {&F, m, a, g, h, m - static_cast<std::size_t>(g.degree())};
}

/// Every monic divisor of x^m - a as a code, in canonical generator order.
/// The zero code (g = x^m - a) is left out unless `include_zero_code` is set.
inline std::vector<ConstacyclicCode> cc_enumerate(const Field& F, std::size_t m, Elem a,
                                                  std::optional<std::size_t> k_filter = std::nullopt,
                                                  bool include_zero_code = false) {
    const Factorization fac = binomial_factor(F, m, a);
    std::vector<Poly> divisors{Poly::one(F)};
    for (const auto& [p, e] : fac.factors) {
        std::vector<Poly> next;
        for (const auto& d : divisors) {
            Poly acc = d;
            for (unsigned i = 0; i <= e; ++i) {
                next.push_back(acc);
                acc = acc * p;
            }
        }
        divisors = std::move(next);
    }
    std::sort(divisors.begin(), divisors.end());
    std::vector<ConstacyclicCode> out;
    for (const auto& g : divisors) {
        const std::size_t k = m - static_cast<std::size_t>(g.degree());
        if (k == 0 && !include_zero_code) continue;
        if (k_filter && k != *k_filter) continue;
        out.push_back(cc_make(F, m, a, g));
    }
    return out;
}

struct TwistulantBlock {
    Poly source;
    std::size_t m = 0;
    Elem a = 1;
    std::size_t rows = 0;
};

/// Rows x m matrix whose first row is `source` and each later row the pi_a shift of the one above.
inline std::vector<Vec> twistulant_rows(const TwistulantBlock& b) {
    if (b.rows < 1) throw EmptyBlock("a twistulant block needs at least one row");
    const Field& F = b.source.field();
    std::vector<Vec> out;
    out.reserve(b.rows);
    out.push_back(coefficient_vector(b.source, b.m, b.a));
    for (std::size_t i = 1; i < b.rows; ++i) out.push_back(cc_shift(out.back(), F, b.a));
    return out;
}

inline GeneratorMatrix twistulant_expand(const TwistulantBlock& b) {
    return GeneratorMatrix(b.source.field(), b.m, twistulant_rows(b));
}

inline GeneratorMatrix cc_generator_matrix(const ConstacyclicCode& c) {
    if (c.k == 0) return GeneratorMatrix(*c.field, c.m);
    return twistulant_expand({c.g, c.m, c.a, c.k});
}

inline CodeSummary cc_min_distance(const ConstacyclicCode& c, const DistanceOptions& opt = {}) {
    CodeSummary s{c.m, c.k, c.field->q(), DistanceUnknown{}};
    if (c.k == 0) return s;
    const DistanceResult r = min_distance(cc_generator_matrix(c), opt);
    s.d = r.as_status();
    return s;
}

/// Exact minimum distance of a nonzero constacyclic code (throws when the budget does not suffice).
inline std::size_t cc_distance(const ConstacyclicCode& c, const DistanceOptions& opt = {}) {
    const CodeSummary s = cc_min_distance(c, opt);
    if (auto e = std::get_if<DistanceExact>(&s.d)) return e->d;
    throw PreconditionFailed("distance of the constacyclic code <" + c.g.to_string() + "> not certified");
}

}  // namespace qtc
