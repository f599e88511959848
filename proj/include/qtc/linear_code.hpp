#pragma once

// Dense generator matrices over GF(q) and the linear algebra on top of them:
// row reduction, Euclidean duals, hull-type property checks and extension.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtc/field.hpp"

namespace qtc {

using Vec = std::vector<Elem>;

inline std::size_t hamming_weight(std::span<const Elem> v) noexcept {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Elem x) { return x != 0; }));
}

/// Rows spanning a code of length n. Rows need not be independent.
class GeneratorMatrix {
public:
    GeneratorMatrix() = default;
    GeneratorMatrix(const Field& f, std::size_t n, std::vector<Vec> rows = {})
        : field_(&f), n_(n), rows_(std::move(rows)) {
        for (const auto& r : rows_) check_row(r);
    }

    [[nodiscard]] const Field& field() const { return *field_; }
    [[nodiscard]] std::size_t length() const noexcept { return n_; }
    [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }
    [[nodiscard]] const std::vector<Vec>& rows() const noexcept { return rows_; }
    [[nodiscard]] const Vec& row(std::size_t i) const { return rows_.at(i); }

    void add_row(Vec r) {
        check_row(r);
        rows_.push_back(std::move(r));
    }

    friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.rows_ == b.rows_;
    }

private:
    void check_row(const Vec& r) const {
        if (r.size() != n_)
            throw InvalidIndex("row of length " + std::to_string(r.size()) + " in a length-" +
                               std::to_string(n_) + " matrix");
        for (Elem x : r)
            if (x >= field_->q()) throw InvalidIndex("entry outside the field");
    }

    const Field* field_ = nullptr;
    std::size_t n_ = 0;
    std::vector<Vec> rows_;
};

struct RrefResult {
    GeneratorMatrix matrix;  ///< only the `rank` nonzero rows are kept
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  ///< pivot column of each row
};

/// Reduced row-echelon form. Pivots are searched in `column_order` (default: 0..n-1);
/// the rows come out sorted by that order, each pivot normalised to 1 and cleared elsewhere.
inline RrefResult rref(const GeneratorMatrix& g, std::span<const std::size_t> column_order = {}) {
    const Field& F = g.field();
    const std::size_t n = g.length();
    std::vector<std::size_t> order;
    if (column_order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
    } else {
        order.assign(column_order.begin(), column_order.end());
    }
    std::vector<Vec> a = g.rows();
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col : order) {
        if (rank == a.size()) break;
        std::size_t sel = rank;
        while (sel < a.size() && a[sel][col] == 0) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[rank], a[sel]);
        Vec& pr = a[rank];
        const Elem s = F.inv(pr[col]);
        if (s != 1)
            for (auto& x : pr) x = F.mul(x, s);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Elem t = F.neg(a[r][col]);
            for (std::size_t j = 0; j < n; ++j)
                if (pr[j] != 0) a[r][j] = F.add(a[r][j], F.mul(t, pr[j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    a.resize(rank);
    return {GeneratorMatrix(F, n, std::move(a)), rank, std::move(pivots)};
}

inline std::size_t rank(const GeneratorMatrix& g) { return rref(g).rank; }

/// Reduces v against a reduced echelon basis; the result is zero iff v lies in the row space.
inline Vec reduce(const RrefResult& r, Vec v) {
    const Field& F = r.matrix.field();
    for (std::size_t i = 0; i < r.rank; ++i) {
        const Elem c = v[r.pivots[i]];
        if (c == 0) continue;
        const Elem t = F.neg(c);
        const Vec& row = r.matrix.row(i);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (row[j] != 0) v[j] = F.add(v[j], F.mul(t, row[j]));
    }
    return v;
}

inline bool in_row_space(const RrefResult& r, const Vec& v) {
    if (v.size() != r.matrix.length()) return false;
    const Vec red = reduce(r, v);
    return std::all_of(red.begin(), red.end(), [](Elem x) { return x == 0; });
}

/// Row space of `a` contained in the row space of `b`.
inline bool subcode_of(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    const RrefResult rb = rref(b);
    return std::all_of(a.rows().begin(), a.rows().end(), [&](const Vec& v) { return in_row_space(rb, v); });
}

inline bool same_code(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    return a.length() == b.length() && rref(a).matrix == rref(b).matrix;
}

inline Elem inner_product(const Field& F, std::span<const Elem> u, std::span<const Elem> v) {
    Elem s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s = F.add(s, F.mul(u[i], v[i]));
    return s;
}

/// Generator of the Euclidean dual code.
inline GeneratorMatrix dual(const GeneratorMatrix& g) {
    const Field& F = g.field();
    const std::size_t n = g.length();
    const RrefResult r = rref(g);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    GeneratorMatrix out(F, n);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec v(n, 0);
        v[j] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = F.neg(r.matrix.row(i)[j]);
        out.add_row(std::move(v));
    }
    return out;
}

/// k x k Gram matrix B * B^T of a row basis B.
inline GeneratorMatrix gram(const GeneratorMatrix& basis) {
    const Field& F = basis.field();
    const std::size_t k = basis.row_count();
    GeneratorMatrix out(F, k);
    for (std::size_t i = 0; i < k; ++i) {
        Vec row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = inner_product(F, basis.row(i), basis.row(j));
        out.add_row(std::move(row));
    }
    return out;
}

/// C and its dual meet only in zero (Gram matrix of a basis is nonsingular).
inline bool is_lcd(const GeneratorMatrix& g) {
    const RrefResult r = rref(g);
    return rank(gram(r.matrix)) == r.rank;
}

inline bool is_dual_containing(const GeneratorMatrix& g) { return subcode_of(dual(g), g); }

inline bool is_self_orthogonal(const GeneratorMatrix& g) {
    const GeneratorMatrix gm = gram(rref(g).matrix);
    for (const auto& row : gm.rows())
        if (std::any_of(row.begin(), row.end(), [](Elem x) { return x != 0; })) return false;
    return true;
}

/// Reversing the coordinate order maps the code onto itself.
inline bool is_reversible(const GeneratorMatrix& g) {
    std::vector<Vec> rev = g.rows();
    for (auto& r : rev) std::reverse(r.begin(), r.end());
    return same_code(g, GeneratorMatrix(g.field(), g.length(), std::move(rev)));
}

/// Appends an overall check coordinate so every codeword sums to zero.
inline GeneratorMatrix extend(const GeneratorMatrix& g) {
    const Field& F = g.field();
    GeneratorMatrix out(F, g.length() + 1);
    const RrefResult basis = rref(g);
    for (Vec r : basis.matrix.rows()) {
        Elem s = 0;
        for (Elem x : r) s = F.add(s, x);
        r.push_back(F.neg(s));
        out.add_row(std::move(r));
    }
    return out;
}

/// Minimum-distance knowledge attached to a code.
struct DistanceExact {
    std::size_t d;
    friend bool operator==(const DistanceExact&, const DistanceExact&) = default;
};
struct DistanceBounds {
    std::size_t lower;
    std::size_t upper;
    friend bool operator==(const DistanceBounds&, const DistanceBounds&) = default;
};
struct DistanceUnknown {
    friend bool operator==(const DistanceUnknown&, const DistanceUnknown&) = default;
};
using DistanceStatus = std::variant<DistanceExact, DistanceBounds, DistanceUnknown>;

struct CodeSummary {
    std::size_t n = 0;
    std::size_t k = 0;
    unsigned q = 0;
    DistanceStatus d = DistanceUnknown{};
};

inline std::string to_string(const DistanceStatus& s) {
    if (auto e = std::get_if<DistanceExact>(&s)) return std::to_string(e->d);
    if (auto b = std::get_if<DistanceBounds>(&s))
        return std::to_string(b->lower) + ".." + std::to_string(b->upper);
    return "?";
}

}  // namespace qtc
