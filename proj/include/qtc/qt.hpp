#pragma once

// One- and two-generator quasi-twisted codes assembled from twistulant blocks.
//
// Coordinates are laid out block by block: block j occupies columns
// [j*m, (j+1)*m). In this layout the code is invariant under applying pi_a to
// every block at once; `to_interleaved` converts a word to the ordering in
// which that symmetry is the shift by ell positions (`qt_shift`).

#include <optional>
#include <string>
#include <vector>

#include "qtc/constacyclic.hpp"

namespace qtc {

enum class QtForm {
    OneGen,            ///< (g f_1, ..., g f_l)
    TwoGenGeneral,     ///< rows (g f1_j) and (p g f2_j), p | h1
    TwoGenP1,          ///< as above with p = 1
    TwoGenIdentityG1,  ///< g = 1, second row g2 f2_j with g2 stored in `p`
    TwoGenShifted,     ///< second row (x g f1_l, g f1_1, ..., g f1_{l-1})
};

inline const char* to_string(QtForm f) {
    switch (f) {
        case QtForm::OneGen: return "one-gen";
        case QtForm::TwoGenGeneral: return "two-gen";
        case QtForm::TwoGenP1: return "two-gen-p1";
        case QtForm::TwoGenIdentityG1: return "two-gen-g1-one";
        case QtForm::TwoGenShifted: return "two-gen-shifted";
    }
    return "?";
}

inline QtForm qt_form_from_string(const std::string& s) {
    for (QtForm f : {QtForm::OneGen, QtForm::TwoGenGeneral, QtForm::TwoGenP1, QtForm::TwoGenIdentityG1,
                     QtForm::TwoGenShifted})
        if (s == to_string(f)) return f;
    throw ConfigError("unknown generator form '" + s + "'");
}

struct QTGeneratorSpec {
    QtForm form = QtForm::TwoGenP1;
    const Field* field = nullptr;
    std::size_t m = 0;
    std::size_t ell = 0;
    Elem a = 1;
    Poly g;                ///< base constacyclic generator (1 for TwoGenIdentityG1)
    Poly p;                ///< divisor of h1 (the second generator g2 for TwoGenIdentityG1)
    std::vector<Poly> f1;  ///< ell entries
    std::vector<Poly> f2;  ///< ell entries for the two-generator forms, f2[0] = 0 by convention

    [[nodiscard]] std::size_t n() const noexcept { return m * ell; }
    [[nodiscard]] bool two_generator() const noexcept { return form != QtForm::OneGen; }
    [[nodiscard]] Poly modulus() const { return Poly::binomial(*field, m, a); }
    [[nodiscard]] Poly h1() const { return modulus() / g; }
    /// Generator of the second row's constacyclic code.
    [[nodiscard]] Poly second_generator() const {
        if (form == QtForm::TwoGenShifted) return g;
        return p.is_zero() ? g : p * g;
    }
    [[nodiscard]] Poly h2() const { return modulus() / second_generator(); }
    [[nodiscard]] std::size_t k1() const { return m - static_cast<std::size_t>(g.degree()); }
    [[nodiscard]] std::size_t k2() const {
        if (!two_generator()) return 0;
        return m - static_cast<std::size_t>(second_generator().degree());
    }
};

struct QTCode {
    QTGeneratorSpec spec;
    GeneratorMatrix matrix;  ///< (k1 + k2) x n, block layout
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::size_t rank = 0;
    bool dimension_defect = false;
    /// Certified lower bound on d from the construction (1 when the form guarantees none).
    std::size_t distance_floor = 1;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t n() const noexcept { return matrix.length(); }
    [[nodiscard]] std::size_t k() const noexcept { return rank; }
};

enum class DefectPolicy { raise, report };

/// Checks the divisibility and coprimality conditions of the chosen form.
inline void qt_validate(const QTGeneratorSpec& s) {
    if (s.field == nullptr) throw PreconditionFailed("spec has no field");
    const Field& F = *s.field;
    if (s.a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
    if (s.m == 0 || s.ell == 0) throw PreconditionFailed("m and ell must be positive");
    if (s.f1.size() != s.ell)
        throw PreconditionFailed("expected " + std::to_string(s.ell) + " f1 entries, got " + std::to_string(s.f1.size()));
    const Poly mod = s.modulus();
    if (!s.g.is_monic()) throw PreconditionFailed("g = " + s.g.to_string() + " is not monic");
    if (!s.g.divides(mod)) throw PreconditionFailed("g = " + s.g.to_string() + " does not divide x^m - a");
    if (s.g.degree() == static_cast<int>(s.m)) throw PreconditionFailed("g = x^m - a generates the zero code");
    if (s.form == QtForm::TwoGenIdentityG1 && !s.g.is_one())
        throw PreconditionFailed("the g1 = 1 form needs g = 1");
    const Poly h1 = mod / s.g;
    for (std::size_t j = 0; j < s.ell; ++j) {
        if (s.f1[j].field_ptr() != &F) throw FieldMismatch("f1 over a different field");
        if (!gcd(s.f1[j], h1).is_one())
            throw PreconditionFailed("gcd(f1[" + std::to_string(j) + "] = " + s.f1[j].to_string() + ", h1) != 1");
    }
    if (s.form == QtForm::OneGen || s.form == QtForm::TwoGenShifted) return;

    if (s.form == QtForm::TwoGenP1 && !s.p.is_one()) throw PreconditionFailed("p must be 1 for the p = 1 form");
    if (!s.p.is_monic()) throw PreconditionFailed("p = " + s.p.to_string() + " is not monic");
    if (!s.p.divides(h1)) throw PreconditionFailed("p = " + s.p.to_string() + " does not divide h1");
    if (s.f2.size() != s.ell)
        throw PreconditionFailed("expected " + std::to_string(s.ell) + " f2 entries, got " + std::to_string(s.f2.size()));
    const Poly h2 = mod / (s.p * s.g);
    for (std::size_t j = 0; j < s.ell; ++j) {
        if (s.f2[j].field_ptr() != &F) throw FieldMismatch("f2 over a different field");
        if (j == 0 && s.f2[0].is_zero()) continue;
        if (j == 0 && s.form != QtForm::TwoGenGeneral)
            throw PreconditionFailed("f2[0] must be 0 for this form");
        if (!gcd(s.f2[j], h2).is_one())
            throw PreconditionFailed("gcd(f2[" + std::to_string(j) + "] = " + s.f2[j].to_string() + ", h2) != 1");
    }
}

/// Certified minimum distance of <g>, or 1 if the budget does not certify it.
inline std::size_t cc_distance_or_one(const Field& F, std::size_t m, Elem a, const Poly& g,
                                      std::uint64_t budget = 50'000'000) {
    const ConstacyclicCode c = cc_make(F, m, a, g);
    if (c.k == 0) return 0;
    DistanceOptions opt;
    opt.budget = budget;
    const DistanceResult r = min_distance(cc_generator_matrix(c), opt);
    return r.is_exact() ? r.upper : r.lower;
}

/// Lower bound ell * d(C_g) for the one-generator construction.
inline std::size_t qt_1gen_bound(const QTGeneratorSpec& s) {
    qt_validate(s);
    if (s.form != QtForm::OneGen) throw PreconditionFailed("one-generator bound needs a one-generator spec");
    return s.ell * cc_distance_or_one(*s.field, s.m, s.a, s.g);
}

/// Lower bound d(C_g) for the two-generator construction with p | h1.
inline std::size_t qt_2gen_bound(const QTGeneratorSpec& s) {
    qt_validate(s);
    if (s.form == QtForm::OneGen || s.form == QtForm::TwoGenShifted)
        throw PreconditionFailed("two-generator bound applies to the p | h1 forms only");
    return cc_distance_or_one(*s.field, s.m, s.a, s.g);
}

/// Polynomial rows of the generator (two rows of ell polynomials, or one row).
inline std::vector<std::vector<Poly>> qt_polynomial_rows(const QTGeneratorSpec& s) {
    const Poly mod = s.modulus();
    std::vector<std::vector<Poly>> rows(1);
    for (const auto& f : s.f1) rows[0].push_back(s.g * f % mod);
    if (s.form == QtForm::OneGen) return rows;
    rows.emplace_back();
    if (s.form == QtForm::TwoGenShifted) {
        const Poly x = Poly::monomial(*s.field, 1);
        rows[1].push_back(x * rows[0][s.ell - 1] % mod);
        for (std::size_t j = 0; j + 1 < s.ell; ++j) rows[1].push_back(rows[0][j]);
        return rows;
    }
    const Poly pg = s.p * s.g;
    for (const auto& f : s.f2) rows[1].push_back(pg * f % mod);
    return rows;
}

/// Reduces f1 modulo h1 and f2 modulo h2. g f = g (f mod h) modulo x^m - a, so the code is unchanged.
inline QTGeneratorSpec qt_normalize(QTGeneratorSpec s) {
    qt_validate(s);
    const Poly h1 = s.h1();
    for (auto& f : s.f1) f = f % h1;
    if (s.form != QtForm::OneGen && s.form != QtForm::TwoGenShifted) {
        const Poly h2 = s.h2();
        for (auto& f : s.f2) f = f % h2;
    }
    return s;
}

inline QTCode qt_assemble(const QTGeneratorSpec& input, DefectPolicy policy = DefectPolicy::raise) {
    const QTGeneratorSpec spec = qt_normalize(input);
    const Field& F = *spec.field;
    QTCode out;
    out.spec = spec;
    out.k1 = spec.k1();
    out.k2 = spec.k2();
    if (spec.form == QtForm::TwoGenShifted && spec.g.degree() > 2)
        out.warnings.push_back("deg(g) > 2 for the shifted form");

    const auto prow = qt_polynomial_rows(spec);
    const std::size_t n = spec.n();
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < prow.size(); ++r) {
        const std::size_t count = r == 0 ? out.k1 : out.k2;
        if (count == 0) continue;
        std::vector<Vec> block_rows(count, Vec(n, 0));
        for (std::size_t j = 0; j < spec.ell; ++j) {
            const auto b = twistulant_rows({prow[r][j], spec.m, spec.a, count});
            for (std::size_t i = 0; i < count; ++i)
                std::copy(b[i].begin(), b[i].end(), block_rows[i].begin() + static_cast<std::ptrdiff_t>(j * spec.m));
        }
        for (auto& v : block_rows) rows.push_back(std::move(v));
    }
    out.matrix = GeneratorMatrix(F, n, std::move(rows));
    out.rank = rank(out.matrix);
    if (out.rank != out.k1 + out.k2) {
        if (policy == DefectPolicy::raise) throw DimensionDefect(out.k1 + out.k2, out.rank);
        out.dimension_defect = true;
        out.warnings.push_back("rank " + std::to_string(out.rank) + " below k1 + k2 = " +
                               std::to_string(out.k1 + out.k2));
    }
    switch (spec.form) {
        case QtForm::OneGen: out.distance_floor = qt_1gen_bound(spec); break;
        case QtForm::TwoGenShifted: out.distance_floor = 1; break;
        default: out.distance_floor = std::max<std::size_t>(1, qt_2gen_bound(spec)); break;
    }
    return out;
}

/// Second row is the block-rotated first row with its leading block multiplied by x.
inline QTCode qt_2gen_shifted_make(const Field& F, std::size_t m, Elem a, const Poly& g, const std::vector<Poly>& f1,
                                   DefectPolicy policy = DefectPolicy::report) {
    QTGeneratorSpec s;
    s.form = QtForm::TwoGenShifted;
    s.field = &F;
    s.m = m;
    s.ell = f1.size();
    s.a = a;
    s.g = g;
    s.p = Poly::one(F);
    s.f1 = f1;
    return qt_assemble(s, policy);
}

/// (c_0, ..., c_{n-1}) -> (a c_{n-l}, ..., a c_{n-1}, c_0, ..., c_{n-l-1}).
inline Vec qt_shift(std::span<const Elem> v, std::size_t ell, const Field& F, Elem a) {
    if (a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
    if (ell == 0 || v.size() % ell != 0) throw InvalidIndex("ell does not divide the length");
    const std::size_t n = v.size();
    Vec out(n);
    for (std::size_t i = 0; i < ell; ++i) out[i] = F.mul(a, v[n - ell + i]);
    std::copy(v.begin(), v.end() - static_cast<std::ptrdiff_t>(ell), out.begin() + static_cast<std::ptrdiff_t>(ell));
    return out;
}

/// Block layout (block j at [j m, (j+1) m)) to interleaved layout (position t of block j at t ell + j).
inline Vec to_interleaved(std::span<const Elem> v, std::size_t m, std::size_t ell) {
    Vec out(v.size());
    for (std::size_t j = 0; j < ell; ++j)
        for (std::size_t t = 0; t < m; ++t) out[t * ell + j] = v[j * m + t];
    return out;
}

inline Vec from_interleaved(std::span<const Elem> v, std::size_t m, std::size_t ell) {
    Vec out(v.size());
    for (std::size_t j = 0; j < ell; ++j)
        for (std::size_t t = 0; t < m; ++t) out[j * m + t] = v[t * ell + j];
    return out;
}

/// For a p = 1 code with f2[j] = f1[j] (j >= 1): r (row 1) - r (row 2) vanishes outside the
/// first block, leaving r g f1[0]. With r = u f1[0]^{-1} mod h this is u g, so a minimum
/// weight word u g of <g> yields a codeword of the same weight.
inline Vec tightness_codeword(const QTCode& code, const Poly& u) {
    const QTGeneratorSpec& s = code.spec;
    if (s.form != QtForm::TwoGenP1) throw PreconditionFailed("tightness construction needs the p = 1 form");
    for (std::size_t j = 1; j < s.ell; ++j)
        if (!(s.f1[j] == s.f2[j])) throw PreconditionFailed("tightness construction needs f2[j] = f1[j] for j >= 1");
    const Poly mod = s.modulus();
    const Poly h = s.h1();
    const Poly r = u * inverse_mod(s.f1[0], h) % h;
    const auto rows = qt_polynomial_rows(s);
    Vec word;
    for (std::size_t j = 0; j < s.ell; ++j) {
        const Poly block = (r * rows[0][j] - r * rows[1][j]) % mod;
        const Vec v = coefficient_vector(block, s.m, s.a);
        word.insert(word.end(), v.begin(), v.end());
    }
    return word;
}

}  // namespace qtc
