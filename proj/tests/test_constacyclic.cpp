#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qtc/constacyclic.hpp"
#include "qtc/tables.hpp"

using namespace qtc;

namespace {
Poly P(unsigned q, const char* s) { return parse_coeffs(s, field_make(q)); }
const unsigned kFields[] = {2, 3, 4, 5, 7, 8, 9};
}  // namespace

TEST(Constacyclic, CyclicShift) {
    const Field& F = field_make(5);
    EXPECT_EQ(cc_shift(Vec{1, 2, 3, 4}, F, 1), (Vec{4, 1, 2, 3}));
}

TEST(Constacyclic, TwistedShiftOverGf3) {
    EXPECT_EQ(cc_shift(Vec{0, 0, 1}, field_make(3), 2), (Vec{2, 0, 0}));
    EXPECT_THROW(cc_shift(Vec{0, 0, 1}, field_make(3), 0), InvalidShiftConstant);
}

TEST(Constacyclic, ShiftIsMultiplicationByX) {
    std::mt19937_64 rng(1);
    for (unsigned q : kFields) {
        const Field& F = field_make(q);
        for (int t = 0; t < 30; ++t) {
            const std::size_t m = 1 + rng() % 12;
            const Elem a = Elem(1 + rng() % (q - 1));
            const Poly v = oracle::random_poly(F, int(m) - 1, rng);
            const Vec shifted = cc_shift(coefficient_vector(v, m, a), F, a);
            const Poly xv = (Poly::monomial(F, 1) * v) % Poly::binomial(F, m, a);
            EXPECT_EQ(shifted, coefficient_vector(xv, m, a));
        }
    }
}

TEST(Constacyclic, MakeFromGoldenGenerators) {
    const Field& F2 = field_make(2);
    const ConstacyclicCode c = cc_make(F2, 13, 1, P(2, "11"));
    EXPECT_EQ(c.k, 12u);
    EXPECT_EQ(c.h * c.g, Poly::binomial(F2, 13, 1));
    EXPECT_EQ(cc_make(field_make(7), 4, 6, P(7, "141")).k, 2u);
    EXPECT_THROW(cc_make(F2, 13, 1, P(2, "101")), NotADivisor);
    EXPECT_THROW(cc_make(field_make(3), 4, 1, P(3, "22")), NotMonic);
    EXPECT_THROW(cc_make(F2, 13, 0, P(2, "11")), InvalidShiftConstant);
}

TEST(Constacyclic, EnumerateCounts) {
    // x^4 - 1 = (x+1)(x+2)(x^2+1) over GF(3); x^13 - 1 has two irreducible factors over GF(2)
    EXPECT_EQ(cc_enumerate(field_make(3), 4, 1, std::nullopt, true).size(), 8u);
    EXPECT_EQ(cc_enumerate(field_make(2), 13, 1, std::nullopt, true).size(), 4u);
    EXPECT_EQ(cc_enumerate(field_make(3), 4, 1).size(), 7u);
    EXPECT_EQ(cc_enumerate(field_make(2), 13, 1).size(), 3u);
    const auto full = cc_enumerate(field_make(5), 6, 2, 6);
    ASSERT_EQ(full.size(), 1u);
    EXPECT_TRUE(full[0].g.is_one());
}

TEST(Constacyclic, EnumerateMatchesDivisorCount) {
    for (unsigned q : kFields) {
        const Field& F = field_make(q);
        for (std::size_t m = 1; m <= 16; ++m) {
            for (unsigned a = 1; a < q; ++a) {
                const auto fac = binomial_factor(F, m, Elem(a));
                const auto all = cc_enumerate(F, m, Elem(a), std::nullopt, true);
                ASSERT_EQ(all.size(), fac.divisor_count());
                for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1].g, all[i].g);
                for (const auto& c : all) {
                    if (c.k == 0) continue;
                    EXPECT_EQ(rank(cc_generator_matrix(c)), c.k);
                }
            }
        }
    }
}

TEST(Constacyclic, TwistulantUnrolled) {
    const Field& F = field_make(3);
    const auto rows = twistulant_rows({Poly(F, {1, 2}), 3, 2, 3});
    // [[g0,g1,0],[0,g0,g1],[2 g1,0,g0]] with g0 = 1, g1 = 2
    EXPECT_EQ(rows, (std::vector<Vec>{{1, 2, 0}, {0, 1, 2}, {1, 0, 1}}));
    const GeneratorMatrix id = twistulant_expand({Poly::one(F), 4, 1, 4});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(id.row(i)[j], i == j ? 1 : 0);
    EXPECT_THROW(twistulant_rows({Poly::one(F), 4, 1, 0}), EmptyBlock);
}

TEST(Constacyclic, TwistulantRowSpaceIsTheIdeal) {
    std::mt19937_64 rng(9);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const Field& F = field_make(q);
        for (std::size_t m = 2; m <= 10; ++m) {
            const Elem a = Elem(1 + rng() % (q - 1));
            for (const auto& c : cc_enumerate(F, m, a)) {
                if (std::pow(double(q), double(c.k)) > 5000) continue;
                // all multiples u g mod x^m - a
                std::set<Vec> ideal;
                for (const auto& u : oracle::monic_of_degree(F, unsigned(c.k))) {
                    const Poly low = u - Poly::monomial(F, c.k);
                    ideal.insert(coefficient_vector(low * c.g, m, a));
                }
                const GeneratorMatrix g = cc_generator_matrix(c);
                EXPECT_EQ(oracle::codewords(g), ideal);
                std::size_t d = 0;
                for (const auto& v : ideal) {
                    const std::size_t w = oracle::weight(v);
                    if (w && (!d || w < d)) d = w;
                }
                EXPECT_EQ(cc_distance(c), d);
            }
        }
    }
}

TEST(Constacyclic, ClosureAndCheckPolynomial) {
    std::mt19937_64 rng(17);
    for (unsigned q : kFields) {
        const Field& F = field_make(q);
        for (std::size_t m = 2; m <= 20; m += 3) {
            const Elem a = Elem(1 + rng() % (q - 1));
            for (const auto& c : cc_enumerate(F, m, a)) {
                const GeneratorMatrix g = cc_generator_matrix(c);
                const RrefResult r = rref(g);
                for (int t = 0; t < 5; ++t) {
                    const Poly u = oracle::random_poly(F, int(c.k) - 1, rng);
                    const Vec word = coefficient_vector(u * c.g, m, a);
                    EXPECT_TRUE(in_row_space(r, cc_shift(word, F, a)));
                    EXPECT_TRUE(c.contains(Poly(F, word)));
                    const Poly v = oracle::random_poly(F, int(m) - 1, rng);
                    EXPECT_EQ(c.contains(v), in_row_space(r, coefficient_vector(v, m, a)));
                }
            }
        }
    }
}

TEST(Constacyclic, SmallDistances) {
    EXPECT_EQ(cc_distance(cc_make(field_make(2), 13, 1, P(2, "11"))), 2u);
    EXPECT_EQ(cc_distance(cc_make(field_make(7), 2, 1, P(7, "11"))), 2u);
    // second generator of the first [12,8,4]_5 table row: m = 6, a = 2
    const ConstacyclicCode c = cc_make(field_make(5), 6, 2, P(5, "42411"));
    EXPECT_EQ(c.k, 2u);
    EXPECT_EQ(cc_distance(c), oracle::min_distance(cc_generator_matrix(c)));
}
