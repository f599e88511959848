#pragma once

// Arithmetic over the small finite fields GF(q), q in {2,3,4,5,7,8,9}.
//
// Elements are represented by their index in [0, q). For a prime field the
// index is the residue. For GF(p^e) the index encodes the coefficient vector
// of the element over GF(p) in the polynomial basis 1, t, ..., t^(e-1):
// index = c_0 + c_1 p + ... + c_(e-1) p^(e-1). The defining moduli are
//
//   GF(4): t^2 + t + 1   (display alphabet 0,1,a,b with a = t, b = a^2 = a + 1)
//   GF(8): t^3 + t + 1
//   GF(9): t^2 + 1 over GF(3)
//
// Fields are singletons: `Field::get(q)` always returns the same object, so two
// elements belong to the same field exactly when their field pointers agree.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtc/errors.hpp"

namespace qtc {

using Elem = std::uint8_t;

class Field {
public:
    static constexpr unsigned kMaxQ = 9;

    static const Field& get(unsigned q);

    [[nodiscard]] unsigned q() const noexcept { return q_; }
    [[nodiscard]] unsigned characteristic() const noexcept { return p_; }
    [[nodiscard]] unsigned degree() const noexcept { return e_; }
    [[nodiscard]] bool is_prime() const noexcept { return e_ == 1; }
    /// Defining polynomial over GF(p), ascending coefficients (empty for prime fields).
    [[nodiscard]] const std::vector<unsigned>& modulus() const noexcept { return modulus_; }

    [[nodiscard]] Elem add(Elem x, Elem y) const noexcept { return add_[x * kMaxQ + y]; }
    [[nodiscard]] Elem sub(Elem x, Elem y) const noexcept { return add_[x * kMaxQ + neg_[y]]; }
    [[nodiscard]] Elem mul(Elem x, Elem y) const noexcept { return mul_[x * kMaxQ + y]; }
    [[nodiscard]] Elem neg(Elem x) const noexcept { return neg_[x]; }
    [[nodiscard]] Elem inv(Elem x) const {
        if (x == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
        return inv_[x];
    }
    [[nodiscard]] Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
    [[nodiscard]] Elem pow(Elem x, std::uint64_t k) const noexcept {
        Elem r = 1;
        while (k) {
            if (k & 1U) r = mul(r, x);
            x = mul(x, x);
            k >>= 1U;
        }
        return r;
    }
    /// x^(p^j): the j-th power of the Frobenius automorphism.
    [[nodiscard]] Elem frobenius(Elem x, unsigned j) const noexcept {
        for (unsigned i = 0; i < j % e_; ++i) x = pow(x, p_);
        return x;
    }
    /// Multiplicative order of a nonzero element.
    [[nodiscard]] unsigned order(Elem x) const {
        if (x == 0) throw DivisionByZero("order of zero");
        unsigned r = 1;
        for (Elem y = x; y != 1; y = mul(y, x)) ++r;
        return r;
    }
    [[nodiscard]] Elem primitive() const noexcept { return primitive_; }

    [[nodiscard]] char symbol(Elem x) const noexcept { return symbols_[x]; }
    [[nodiscard]] std::optional<Elem> from_symbol(char c) const noexcept {
        for (unsigned i = 0; i < q_; ++i)
            if (symbols_[i] == c) return static_cast<Elem>(i);
        return std::nullopt;
    }
    [[nodiscard]] std::string alphabet() const { return std::string(symbols_.data(), q_); }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    explicit Field(unsigned q);
    static Field* make(unsigned q) { return new Field(q); }

    unsigned q_ = 0;
    unsigned p_ = 0;
    unsigned e_ = 0;
    std::vector<unsigned> modulus_;
    std::array<Elem, kMaxQ * kMaxQ> add_{};
    std::array<Elem, kMaxQ * kMaxQ> mul_{};
    std::array<Elem, kMaxQ> neg_{};
    std::array<Elem, kMaxQ> inv_{};
    std::array<char, kMaxQ> symbols_{};
    Elem primitive_ = 1;
};

inline Field::Field(unsigned q) : q_(q) {
    switch (q) {
        case 2: case 3: case 5: case 7: p_ = q; e_ = 1; break;
        case 4: p_ = 2; e_ = 2; modulus_ = {1, 1, 1}; break;
        case 8: p_ = 2; e_ = 3; modulus_ = {1, 1, 0, 1}; break;
        case 9: p_ = 3; e_ = 2; modulus_ = {1, 0, 1}; break;
        default: throw UnsupportedField("q = " + std::to_string(q) + " (supported: 2,3,4,5,7,8,9)");
    }
    auto digits = [&](unsigned x) {
        std::vector<unsigned> d(e_);
        for (unsigned i = 0; i < e_; ++i, x /= p_) d[i] = x % p_;
        return d;
    };
    auto index = [&](const std::vector<unsigned>& d) {
        unsigned x = 0;
        for (unsigned i = e_; i-- > 0;) x = x * p_ + d[i];
        return static_cast<Elem>(x);
    };
    for (unsigned x = 0; x < q; ++x) {
        for (unsigned y = 0; y < q; ++y) {
            auto dx = digits(x);
            auto dy = digits(y);
            std::vector<unsigned> s(e_);
            for (unsigned i = 0; i < e_; ++i) s[i] = (dx[i] + dy[i]) % p_;
            add_[x * kMaxQ + y] = index(s);

            // Schoolbook product reduced by the (monic) modulus.
            std::vector<unsigned> prod(2 * e_, 0);
            for (unsigned i = 0; i < e_; ++i)
                for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + dx[i] * dy[j]) % p_;
            if (e_ > 1) {
                for (unsigned deg = 2 * e_ - 1; deg >= e_; --deg) {
                    unsigned c = prod[deg];
                    if (c == 0) continue;
                    for (unsigned i = 0; i <= e_; ++i) {
                        unsigned idx = deg - e_ + i;
                        prod[idx] = (prod[idx] + (p_ - c) * modulus_[i]) % p_;
                    }
                }
            }
            prod.resize(e_);
            mul_[x * kMaxQ + y] = index(prod);
        }
    }
    for (unsigned x = 0; x < q; ++x) {
        for (unsigned y = 0; y < q; ++y) {
            if (add_[x * kMaxQ + y] == 0) neg_[x] = static_cast<Elem>(y);
            if (mul_[x * kMaxQ + y] == 1) inv_[x] = static_cast<Elem>(y);
        }
    }
    for (unsigned x = 0; x < q; ++x) symbols_[x] = static_cast<char>('0' + x);
    if (q == 4) {
        symbols_[2] = 'a';
        symbols_[3] = 'b';
    }
    for (unsigned x = 2; x < q; ++x) {
        if (order(static_cast<Elem>(x)) == q - 1) {
            primitive_ = static_cast<Elem>(x);
            break;
        }
    }
}

inline const Field& Field::get(unsigned q) {
    static const std::array<Field*, 10> fields = [] {
        std::array<Field*, 10> f{};
        for (unsigned q : {2U, 3U, 4U, 5U, 7U, 8U, 9U}) f[q] = make(q);
        return f;
    }();
    if (q >= fields.size() || fields[q] == nullptr)
        throw UnsupportedField("q = " + std::to_string(q) + " (supported: 2,3,4,5,7,8,9)");
    return *fields[q];
}

inline const Field& field_make(unsigned q) { return Field::get(q); }

/// An element tagged with its field; arithmetic between different fields throws.
struct FieldElement {
    const Field* field = nullptr;
    Elem index = 0;

    FieldElement() = default;
    FieldElement(const Field& f, Elem i) : field(&f), index(i) {
        if (i >= f.q()) throw InvalidIndex("element index " + std::to_string(i) + " outside GF(" +
                                           std::to_string(f.q()) + ")");
    }

    friend bool operator==(const FieldElement& x, const FieldElement& y) {
        return x.field == y.field && x.index == y.index;
    }
    [[nodiscard]] bool is_zero() const noexcept { return index == 0; }
    [[nodiscard]] FieldElement operator-() const { return {*field, field->neg(index)}; }
    [[nodiscard]] FieldElement inverse() const { return {*field, field->inv(index)}; }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        return {same(x, y), x.field->add(x.index, y.index)};
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        return {same(x, y), x.field->sub(x.index, y.index)};
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        return {same(x, y), x.field->mul(x.index, y.index)};
    }
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
        return {same(x, y), x.field->div(x.index, y.index)};
    }

private:
    static const Field& same(const FieldElement& x, const FieldElement& y) {
        if (x.field == nullptr || x.field != y.field) throw FieldMismatch("operands from different fields");
        return *x.field;
    }
};

}  // namespace qtc
