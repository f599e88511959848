#pragma once

// Dense univariate polynomials over GF(q), ascending coefficients.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qtc/errors.hpp"
#include "qtc/field.hpp"

namespace qtc {

class Poly {
public:
    /// Degree of the zero polynomial; compares less than every real degree.
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Poly() = default;
    explicit Poly(const Field& f) : field_(&f) {}
    Poly(const Field& f, std::vector<Elem> coeffs) : field_(&f), c_(std::move(coeffs)) {
        for (Elem x : c_)
            if (x >= f.q()) throw InvalidIndex("coefficient outside GF(" + std::to_string(f.q()) + ")");
        trim();
    }

    static Poly constant(const Field& f, Elem c) { return Poly(f, {c}); }
    static Poly one(const Field& f) { return constant(f, 1); }
    /// c * x^k
    static Poly monomial(const Field& f, std::size_t k, Elem c = 1) {
        std::vector<Elem> v(k + 1, 0);
        v[k] = c;
        return Poly(f, std::move(v));
    }
    /// x^m - a
    static Poly binomial(const Field& f, std::size_t m, Elem a) {
        Poly r = monomial(f, m);
        r.c_[0] = f.sub(r.c_[0], a);
        r.trim();
        return r;
    }

    [[nodiscard]] const Field& field() const { return *field_; }
    [[nodiscard]] const Field* field_ptr() const noexcept { return field_; }
    [[nodiscard]] const std::vector<Elem>& coeffs() const noexcept { return c_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] int degree() const noexcept {
        return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1;
    }
    [[nodiscard]] Elem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Elem{0}; }
    [[nodiscard]] Elem leading() const noexcept { return c_.empty() ? Elem{0} : c_.back(); }
    [[nodiscard]] bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    [[nodiscard]] bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    [[nodiscard]] Poly monic() const {
        if (is_zero()) return *this;
        Elem s = field_->inv(leading());
        return scaled(s);
    }
    [[nodiscard]] Poly scaled(Elem s) const {
        std::vector<Elem> v(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_->mul(c_[i], s);
        return Poly(*field_, std::move(v));
    }
    /// x^k * this
    [[nodiscard]] Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<Elem> v(k, 0);
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(*field_, std::move(v));
    }
    [[nodiscard]] Elem eval(Elem x) const noexcept {
        Elem r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
        return r;
    }
    [[nodiscard]] Poly derivative() const {
        if (c_.size() <= 1) return Poly(*field_);
        std::vector<Elem> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            Elem k = static_cast<Elem>(i % field_->characteristic());
            v[i - 1] = field_->mul(c_[i], k);
        }
        return Poly(*field_, std::move(v));
    }

    friend Poly operator+(const Poly& f, const Poly& g) {
        const Field& F = same(f, g);
        std::vector<Elem> v(std::max(f.c_.size(), g.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(f.coeff(i), g.coeff(i));
        return Poly(F, std::move(v));
    }
    friend Poly operator-(const Poly& f, const Poly& g) {
        const Field& F = same(f, g);
        std::vector<Elem> v(std::max(f.c_.size(), g.c_.size()), 0);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(f.coeff(i), g.coeff(i));
        return Poly(F, std::move(v));
    }
    friend Poly operator-(const Poly& f) { return Poly(f.field()) - f; }
    friend Poly operator*(const Poly& f, const Poly& g) {
        const Field& F = same(f, g);
        if (f.is_zero() || g.is_zero()) return Poly(F);
        std::vector<Elem> v(f.c_.size() + g.c_.size() - 1, 0);
        for (std::size_t i = 0; i < f.c_.size(); ++i) {
            if (f.c_[i] == 0) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                v[i + j] = F.add(v[i + j], F.mul(f.c_[i], g.c_[j]));
        }
        return Poly(F, std::move(v));
    }

    /// (quotient, remainder) with deg(remainder) < deg(divisor).
    [[nodiscard]] std::pair<Poly, Poly> divmod(const Poly& d) const {
        const Field& F = same(*this, d);
        if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
        std::vector<Elem> r = c_;
        if (r.size() < d.c_.size()) return {Poly(F), *this};
        std::vector<Elem> quot(r.size() - d.c_.size() + 1, 0);
        const Elem lead_inv = F.inv(d.leading());
        const std::size_t dn = d.c_.size();
        for (std::size_t i = r.size() - 1;; --i) {
            Elem c = r[i];
            if (c != 0) {
                Elem t = F.mul(c, lead_inv);
                quot[i - dn + 1] = t;
                for (std::size_t j = 0; j < dn; ++j)
                    r[i - dn + 1 + j] = F.sub(r[i - dn + 1 + j], F.mul(t, d.c_[j]));
            }
            if (i == dn - 1) break;
        }
        r.resize(dn - 1);
        return {Poly(F, std::move(quot)), Poly(F, std::move(r))};
    }
    friend Poly operator/(const Poly& f, const Poly& g) { return f.divmod(g).first; }
    friend Poly operator%(const Poly& f, const Poly& g) { return f.divmod(g).second; }

    [[nodiscard]] bool divides(const Poly& f) const { return (f % *this).is_zero(); }

    friend bool operator==(const Poly& f, const Poly& g) {
        return f.field_ == g.field_ && f.c_ == g.c_;
    }
    /// Canonical order: degree first, then coefficient indices from the constant term up.
    friend std::strong_ordering operator<=>(const Poly& f, const Poly& g) {
        if (auto c = f.degree() <=> g.degree(); c != 0) return c;
        for (std::size_t i = 0; i < f.c_.size(); ++i)
            if (auto c = f.c_[i] <=> g.c_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    /// Digits of the coefficients, constant term first ("0" for the zero polynomial).
    [[nodiscard]] std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (Elem x : c_) s.push_back(field_->symbol(x));
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    static const Field& same(const Poly& f, const Poly& g) {
        if (f.field_ == nullptr || f.field_ != g.field_) throw FieldMismatch("polynomials over different fields");
        return *f.field_;
    }

    const Field* field_ = nullptr;
    std::vector<Elem> c_;
};

/// Monic greatest common divisor (the zero polynomial when both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b), g monic.
inline std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b) {
    const Field& F = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(F), s1(F);
    Poly t0(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Elem li = F.inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

/// Inverse of f modulo m; throws PreconditionFailed when gcd(f, m) != 1.
inline Poly inverse_mod(const Poly& f, const Poly& m) {
    auto [g, s, t] = ext_gcd(f % m, m);
    if (!g.is_one()) throw PreconditionFailed("polynomial not invertible modulo " + m.to_string());
    return s % m;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

/// base^e mod m for a 64-bit exponent.
inline Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
    Poly r = Poly::one(base.field()) % m;
    base = base % m;
    while (e) {
        if (e & 1U) r = mulmod(r, base, m);
        e >>= 1U;
        if (e) base = mulmod(base, base, m);
    }
    return r;
}

/// f^(q^j) mod m, i.e. j applications of the q-power Frobenius.
inline Poly frobenius_mod(Poly f, unsigned j, const Poly& m) {
    const unsigned q = f.field().q();
    for (unsigned i = 0; i < j; ++i) f = powmod(f, q, m);
    return f % m;
}

inline Poly pow(const Poly& f, unsigned e) {
    Poly r = Poly::one(f.field());
    for (unsigned i = 0; i < e; ++i) r = r * f;
    return r;
}

}  // namespace qtc
