#include "kahler/exactla.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kahler;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound)
{
    std::uniform_int_distribution<int> entry(-bound, bound);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    return m;
}

ExactMatrix product(const ExactMatrix& a, const ExactMatrix& b)
{
    ExactMatrix p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            for (std::size_t k = 0; k < a.cols(); ++k) p(i, j) += a(i, k) * b(k, j);
    return p;
}

}  // namespace

TEST(ParseRational, AcceptsIntegersAndFractions)
{
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("+5/10"), Rational(1, 2));
    EXPECT_EQ(parse_rational("15/6"), Rational(5, 2));
    EXPECT_EQ(parse_rational(" 2 / 3 "), Rational(2, 3));
}

TEST(ParseRational, RejectsMalformedInput)
{
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("a/2"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
    EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(ToString, PrintsLowestTerms)
{
    EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
    EXPECT_EQ(to_string(Rational(-4)), "-4");
}

TEST(Binomial, MatchesPascal)
{
    for (long long a = 0; a <= 20; ++a)
        for (long long b = 1; b < a; ++b) EXPECT_EQ(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
    EXPECT_EQ(binomial(5, 0), 1);
    EXPECT_EQ(binomial(5, 6), 0);
    EXPECT_EQ(binomial(5, -1), 0);
    EXPECT_EQ(binomial(-1, 0), 0);
    EXPECT_EQ(binomial(40, 20), 137846528820LL);
}

TEST(Rank, SmallExamples)
{
    EXPECT_EQ(rank(ExactMatrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(ExactMatrix{{1, 2}, {3, 4}}), 2u);
    EXPECT_EQ(rank(ExactMatrix(0, 3)), 0u);
    EXPECT_EQ(rank(ExactMatrix(3, 3)), 0u);
    ExactMatrix q{{Rational(1, 2), Rational(1, 3)}, {Rational(3, 2), 1}};
    EXPECT_EQ(rank(q), 1u);
    EXPECT_EQ(kernel_dimension(q), 1u);
}

TEST(Rank, AgreesWithRationalGaussOnRandomMatrices)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        ExactMatrix m = random_matrix(rng, 8, 8, 3);
        EXPECT_EQ(rank(m), rank_gauss(m));
    }
}

TEST(Rank, DetectsPlantedDeficiency)
{
    std::mt19937_64 rng(12);
    for (std::size_t k = 0; k <= 6; ++k) {
        for (int t = 0; t < 20; ++t) {
            ExactMatrix m = product(random_matrix(rng, 9, k, 3), random_matrix(rng, k, 7, 3));
            std::size_t r = rank(m);
            EXPECT_LE(r, k);
            EXPECT_EQ(r, rank_gauss(m));
            EXPECT_EQ(rank(m.transpose()), r);
        }
    }
}

TEST(KernelBasis, SpansTheKernel)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        ExactMatrix m = product(random_matrix(rng, 5, 3, 2), random_matrix(rng, 3, 7, 2));
        auto basis = kernel_basis(m);
        EXPECT_EQ(basis.size(), m.cols() - rank(m));
        ExactMatrix b(0, m.cols());
        for (const auto& v : basis) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
                EXPECT_EQ(s, 0);
            }
            b.append_row(v);
        }
        EXPECT_EQ(rank(b), basis.size());
    }
}

TEST(ClearDenominators, ScalesByLcm)
{
    auto v = clear_denominators({Rational(1, 2), Rational(-1, 3), Rational(0)});
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0], 3);
    EXPECT_EQ(v[1], -2);
    EXPECT_EQ(v[2], 0);
}

TEST(IntEchelon, IncrementalRankMatchesBareiss)
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 100; ++t) {
        ExactMatrix m = product(random_matrix(rng, 10, 4 + t % 4, 3), random_matrix(rng, 4 + t % 4, 9, 3));
        IntEchelon ech(m.cols());
        std::size_t accepted = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<Rational> row(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
            if (ech.insert(row)) ++accepted;
        }
        EXPECT_EQ(ech.rank(), rank(m));
        EXPECT_EQ(accepted, ech.rank());
        for (std::size_t i = 0; i < ech.rank(); ++i) {
            EXPECT_GT(ech.row(i)[ech.pivot(i)], 0);
            for (std::size_t j = 0; j < ech.pivot(i); ++j) EXPECT_EQ(ech.row(i)[j], 0);
        }
    }
}

TEST(IntEchelon, RejectsWrongLength)
{
    IntEchelon ech(3);
    EXPECT_THROW(ech.insert(std::vector<Integer>{1, 2}), std::invalid_argument);
}

TEST(ExactMatrix, RejectsRaggedRows)
{
    ExactMatrix m{{1, 2}};
    EXPECT_THROW(m.append_row({Rational(1)}), std::invalid_argument);
}
