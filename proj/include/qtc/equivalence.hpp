#pragma once

// Grouping of the constacyclic codes of one (q, m, a) into equivalence classes.
//
// Write m = m' p^t with p the characteristic, so x^m - a = (x^m' - a')^(p^t) where
// a'^(p^t) = a. With r = ord(a) and N = m' r the roots of x^m' - a' are xi^e for a
// primitive N-th root xi with xi^m' = a' and e = 1 (mod r). A code <g> is described by
// the multiplicity of each q-cyclotomic coset of such exponents among the roots of g.
// The maps e -> s e (s = 1 mod r, gcd(s, m r) = 1) come from the coordinate
// monomial maps c(x) -> c(x^s); when a^p = a the Frobenius e -> p e is added.

#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "qtc/constacyclic.hpp"
#include "qtc/distance.hpp"
#include "qtc/factor.hpp"

namespace qtc {

enum class PartitionMode { multiplier, refined };

inline PartitionMode partition_mode_from_string(const std::string& s) {
    if (s == "multiplier") return PartitionMode::multiplier;
    if (s == "refined") return PartitionMode::refined;
    throw ConfigError("unknown partition mode '" + s + "'");
}

inline const char* to_string(PartitionMode m) { return m == PartitionMode::multiplier ? "multiplier" : "refined"; }

/// (k, d, then up to three (weight, count) pairs of the lowest nonzero weights).
struct InvariantKey {
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<std::pair<std::size_t, std::uint64_t>> prefix;  ///< empty when not computed

    friend auto operator<=>(const InvariantKey&, const InvariantKey&) = default;
};

struct EquivClass {
    std::vector<Poly> members;  ///< canonical order
    Poly representative;
    std::vector<unsigned> orbit_key;
    std::optional<InvariantKey> invariant_key;
};

/// Root-exponent bookkeeping for x^m - a.
class RootStructure {
public:
    RootStructure(const Field& F, std::size_t m, Elem a) : F_(&F), m_(m), a_(a) {
        if (a == 0) throw InvalidShiftConstant("shift constant must be nonzero");
        const unsigned p = F.characteristic();
        mp_ = m;
        while (mp_ % p == 0) {
            mp_ /= p;
            pt_ *= p;
        }
        ap_ = root_of_power(a, pt_);
        r_ = F.order(a);
        N_ = mp_ * r_;
        build_cosets();
        build_xi();
        factors_ = binomial_factor(F, m, a);
        for (const auto& [f, e] : factors_.factors) coset_of_factor_.push_back(coset_of(f));
        build_group();
    }

    [[nodiscard]] std::size_t exponent_modulus() const noexcept { return N_; }
    [[nodiscard]] std::size_t repeat() const noexcept { return pt_; }
    [[nodiscard]] const std::vector<std::vector<std::size_t>>& cosets() const noexcept { return cosets_; }
    [[nodiscard]] const std::vector<std::size_t>& multipliers() const noexcept { return group_; }

    /// Multiplicity of each coset among the roots of g (g | x^m - a).
    [[nodiscard]] std::vector<unsigned> multiplicities(const Poly& g) const {
        std::vector<unsigned> mult(cosets_.size(), 0);
        Poly rest = g.monic();
        for (std::size_t i = 0; i < factors_.factors.size(); ++i) {
            const Poly& f = factors_.factors[i].first;
            while (f.divides(rest) && rest.degree() > 0) {
                rest = rest / f;
                ++mult[coset_of_factor_[i]];
            }
        }
        if (rest.degree() != 0) throw NotADivisor(g.to_string() + " does not divide x^m - a");
        return mult;
    }

    /// Lexicographically smallest image of the multiplicity vector under the group.
    [[nodiscard]] std::vector<unsigned> orbit_key(const std::vector<unsigned>& mult) const {
        std::vector<unsigned> best;
        std::vector<unsigned> img(mult.size());
        for (std::size_t s : group_) {
            for (std::size_t i = 0; i < cosets_.size(); ++i)
                img[coset_index_[cosets_[i].front() * s % N_]] = mult[i];
            if (best.empty() || img < best) best = img;
        }
        return best;
    }

private:
    Elem root_of_power(Elem a, std::size_t e) const {
        for (unsigned x = 1; x < F_->q(); ++x)
            if (F_->pow(static_cast<Elem>(x), e) == a) return static_cast<Elem>(x);
        throw PreconditionFailed("no root of the shift constant");
    }

    void build_cosets() {
        const unsigned q = F_->q();
        coset_index_.assign(N_, SIZE_MAX);
        for (std::size_t e = 1 % r_; e < N_; e += r_) {
            if (coset_index_[e] != SIZE_MAX) continue;
            std::vector<std::size_t> c;
            for (std::size_t x = e; coset_index_[x] == SIZE_MAX; x = x * q % N_) {
                coset_index_[x] = cosets_.size();
                c.push_back(x);
            }
            std::sort(c.begin(), c.end());
            cosets_.push_back(std::move(c));
        }
    }

    // xi = y in GF(q)[y]/phi, phi an irreducible factor of y^N - 1 whose root has order N,
    // then replaced by a power xi^t with xi^m' = a'.
    void build_xi() {
        const Field& F = *F_;
        const Factorization fac = binomial_factor(F, N_, 1);
        const auto primes = detail::prime_divisors(static_cast<unsigned>(N_));
        for (const auto& [f, e] : fac.factors) {
            const Poly y = Poly::monomial(F, 1) % f;
            bool primitive = true;
            for (unsigned l : primes)
                if (powmod(y, N_ / l, f).is_one()) primitive = false;
            if (N_ == 1 && !(y == Poly::one(F) % f)) primitive = false;
            if (!primitive) continue;
            phi_ = f;
            break;
        }
        if (phi_.degree() <= 0) throw PreconditionFailed("no primitive root of unity of order " + std::to_string(N_));
        const Poly y = Poly::monomial(F, 1) % phi_;
        const Poly target = Poly::constant(F, ap_) % phi_;
        for (std::size_t t = 1; t <= N_; ++t) {
            if (std::gcd(t, N_) != 1) continue;
            const Poly cand = powmod(y, t, phi_);
            if (powmod(cand, mp_, phi_) == target) {
                xi_ = cand;
                return;
            }
        }
        throw PreconditionFailed("no root of unity matching the shift constant");
    }

    std::size_t coset_of(const Poly& f) const {
        for (std::size_t i = 0; i < cosets_.size(); ++i) {
            const Poly beta = powmod(xi_, cosets_[i].front(), phi_);
            Poly acc(*F_);
            for (std::size_t j = f.coeffs().size(); j-- > 0;) acc = (acc * beta + Poly::constant(*F_, f.coeff(j))) % phi_;
            if (acc.is_zero()) return i;
        }
        throw PreconditionFailed("factor " + f.to_string() + " has no root among the exponents");
    }

    void build_group() {
        std::set<std::size_t> g;
        const std::size_t M = m_ * r_;
        for (std::size_t s = 1; s <= M; ++s)
            if (s % r_ == 1 % r_ && std::gcd(s, M) == 1) g.insert(s % N_);
        const unsigned p = F_->characteristic();
        if (F_->pow(a_, p) == a_) {
            std::set<std::size_t> closed = g;
            for (std::size_t s : g)
                for (std::size_t x = s * p % N_; x != s; x = x * p % N_) closed.insert(x);
            g = std::move(closed);
        }
        group_.assign(g.begin(), g.end());
    }

    const Field* F_;
    std::size_t m_, mp_ = 0, pt_ = 1, r_ = 1, N_ = 1;
    Elem a_, ap_ = 1;
    std::vector<std::vector<std::size_t>> cosets_;
    std::vector<std::size_t> coset_index_;
    Poly phi_, xi_;
    Factorization factors_;
    std::vector<std::size_t> coset_of_factor_;
    std::vector<std::size_t> group_;
};

/// (k, d, lowest weights) of a code; the weight prefix only when q^k <= prefix_limit.
inline InvariantKey invariant_key(const GeneratorMatrix& g, std::uint64_t prefix_limit = std::uint64_t{1} << 20) {
    InvariantKey key;
    key.k = rank(g);
    if (key.k == 0) return key;
    const double size = std::pow(static_cast<double>(g.field().q()), static_cast<double>(key.k));
    if (size <= static_cast<double>(prefix_limit)) {
        const auto counts = weight_distribution_bruteforce(g, prefix_limit);
        key.d = min_weight_of(counts);
        for (std::size_t w = 1; w < counts.size() && key.prefix.size() < 3; ++w)
            if (counts[w] != 0) key.prefix.emplace_back(w, counts[w]);
        return key;
    }
    const DistanceResult r = min_distance(g);
    if (!r.is_exact()) throw PreconditionFailed("distance not certified within the default budget");
    key.d = r.upper;
    return key;
}

inline std::vector<EquivClass> partition(const std::vector<ConstacyclicCode>& codes, PartitionMode mode) {
    if (codes.empty()) return {};
    const ConstacyclicCode& c0 = codes.front();
    for (const auto& c : codes)
        if (c.field != c0.field || c.m != c0.m || c.a != c0.a)
            throw MixedInput("codes do not share (field, m, a)");
    const RootStructure rs(*c0.field, c0.m, c0.a);

    std::map<std::vector<unsigned>, std::vector<Poly>> orbits;
    for (const auto& c : codes) orbits[rs.orbit_key(rs.multiplicities(c.g))].push_back(c.g);

    std::vector<EquivClass> out;
    for (auto& [key, members] : orbits) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (mode == PartitionMode::multiplier) {
            out.push_back({members, members.front(), key, std::nullopt});
            continue;
        }
        std::map<InvariantKey, std::vector<Poly>> split;
        for (const auto& g : members)
            split[invariant_key(cc_generator_matrix(cc_make(*c0.field, c0.m, c0.a, g)))].push_back(g);
        for (auto& [ik, sub] : split) out.push_back({sub, sub.front(), key, ik});
    }
    std::sort(out.begin(), out.end(),
              [](const EquivClass& x, const EquivClass& y) { return x.representative < y.representative; });
    return out;
}

namespace detail {

inline std::vector<Vec> all_codewords(const GeneratorMatrix& g, std::uint64_t limit) {
    const RrefResult r = rref(g);
    const Field& F = g.field();
    const double size = std::pow(static_cast<double>(F.q()), static_cast<double>(r.rank));
    if (size > static_cast<double>(limit)) throw OracleScaleExceeded("code too large for exhaustive comparison");
    std::vector<Vec> words{Vec(g.length(), 0)};
    for (const auto& row : r.matrix.rows()) {
        const std::size_t cur = words.size();
        for (unsigned s = 1; s < F.q(); ++s)
            for (std::size_t i = 0; i < cur; ++i) {
                Vec v = words[i];
                for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.add(v[j], F.mul(static_cast<Elem>(s), row[j]));
                words.push_back(std::move(v));
            }
    }
    return words;
}

/// For each column, counts of codewords by weight among those nonzero at that column.
inline std::vector<std::vector<std::uint64_t>> column_profiles(const std::vector<Vec>& words, std::size_t n) {
    std::vector<std::vector<std::uint64_t>> prof(n, std::vector<std::uint64_t>(n + 1, 0));
    for (const auto& w : words) {
        const std::size_t wt = hamming_weight(w);
        for (std::size_t j = 0; j < n; ++j)
            if (w[j] != 0) ++prof[j][wt];
    }
    return prof;
}

}  // namespace detail

/// Exhaustive search for a coordinate permutation, column scalars and field automorphism
/// mapping the row space of `c1` onto that of `c2`. Limited to n <= 12 and q^k <= 2^20.
inline bool are_equivalent_exhaustive(const GeneratorMatrix& c1, const GeneratorMatrix& c2) {
    const Field& F = c1.field();
    if (&F != &c2.field()) throw FieldMismatch("codes over different fields");
    const std::size_t n = c1.length();
    if (n > 12) throw OracleScaleExceeded("exhaustive equivalence is limited to n <= 12");
    if (n != c2.length()) return false;
    const RrefResult r1 = rref(c1), r2 = rref(c2);
    if (r1.rank != r2.rank) return false;
    constexpr std::uint64_t kLimit = std::uint64_t{1} << 20;
    const auto words1 = detail::all_codewords(c1, kLimit);
    const auto words2 = detail::all_codewords(c2, kLimit);
    std::vector<std::uint64_t> wd1(n + 1, 0), wd2(n + 1, 0);
    for (const auto& w : words1) ++wd1[hamming_weight(w)];
    for (const auto& w : words2) ++wd2[hamming_weight(w)];
    if (wd1 != wd2) return false;
    const auto prof1 = detail::column_profiles(words1, n);
    const auto prof2 = detail::column_profiles(words2, n);

    for (unsigned j = 0; j < F.degree(); ++j) {
        // sigma^j applied to c1's basis
        std::vector<Vec> basis = r1.matrix.rows();
        for (auto& row : basis)
            for (auto& x : row) x = F.frobenius(x, j);

        std::vector<std::size_t> target(n);
        std::vector<Elem> scale(n);
        std::vector<bool> used(n, false);

        // Projections of both codes onto the assigned columns must coincide.
        auto consistent = [&](std::size_t depth) {
            std::vector<Vec> a, b;
            for (const auto& row : basis) {
                Vec v(depth + 1);
                for (std::size_t i = 0; i <= depth; ++i) v[i] = F.mul(scale[i], row[i]);
                a.push_back(std::move(v));
            }
            for (const auto& row : r2.matrix.rows()) {
                Vec v(depth + 1);
                for (std::size_t i = 0; i <= depth; ++i) v[i] = row[target[i]];
                b.push_back(std::move(v));
            }
            return same_code(GeneratorMatrix(F, depth + 1, std::move(a)), GeneratorMatrix(F, depth + 1, std::move(b)));
        };

        std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
            if (i == n) return true;
            for (std::size_t t = 0; t < n; ++t) {
                if (used[t] || prof1[i] != prof2[t]) continue;
                used[t] = true;
                target[i] = t;
                const unsigned first = i == 0 ? 1 : F.q() - 1;
                for (unsigned s = 1; s <= first; ++s) {
                    scale[i] = static_cast<Elem>(i == 0 ? 1 : s);
                    if (consistent(i) && place(i + 1)) return true;
                }
                used[t] = false;
            }
            return false;
        };
        if (place(0)) return true;
    }
    return false;
}

}  // namespace qtc
