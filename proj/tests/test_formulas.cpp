#include "kahler/formulas.hpp"
#include "kahler/report.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace kahler;

namespace {

FatPointScheme scheme(int n, std::vector<std::vector<Rational>> pts, std::vector<int> ms)
{
    return FatPointScheme::from_coords(n, pts, std::move(ms));
}

// Non-increasing multiplicity vectors with sum <= total.
void partitions(int left, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (!cur.empty()) out.push_back(cur);
    for (int m = std::min(left, cap); m >= 1; --m) {
        cur.push_back(m);
        partitions(left - m, m, cur, out);
        cur.pop_back();
    }
}

const HomogPoly& eight_point_conic()
{
    static const HomogPoly c = parse_poly("3*X0^2 - 4*X0*X1 + X1^2 - 4*X0*X2 + X2^2", 2);
    return c;
}

// s points (1:t:t^2) on X0*X2 - X1^2 with distinct random t.
FatPointScheme on_parabola(std::mt19937_64& rng, int s, std::vector<int> ms)
{
    std::uniform_int_distribution<int> pick(-6, 6);
    std::set<int> ts;
    while (static_cast<int>(ts.size()) < s) ts.insert(pick(rng));
    std::vector<std::vector<Rational>> pts;
    for (int t : ts) pts.push_back({1, t, t * t});
    return scheme(2, pts, std::move(ms));
}

}  // namespace

TEST(P1, ClosedFormsMatchEngineExhaustively)
{
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    partitions(8, 8, cur, all);
    for (const auto& ms : all) {
        std::vector<Rational> roots;
        for (std::size_t j = 0; j < ms.size(); ++j) roots.push_back(Rational(static_cast<long>(j) * 2 - 3, 1 + static_cast<long>(j) % 2));
        P1SchemeSpec spec(roots, ms);
        OmegaEngine eng(spec.scheme());
        for (int m = 1; m <= 2; ++m) {
            OmegaHF h = eng.hf(m);
            EXPECT_TRUE(same_values(p1_hf(spec, m), h.table)) << "m=" << m << " mu=" << spec.mu() << " s=" << spec.s();
            if (!(m == 2 && spec.mu() == 1)) {
                EXPECT_EQ(p1_ri(spec), h.ri);  // a single reduced point has Omega^2 = 0
            }
        }
        EXPECT_TRUE(same_values(p1_hf(spec, 1, true), eng.hf(1, true).table)) << "relative mu=" << spec.mu();
        EXPECT_EQ(p1_hf(spec, 2, true).hp, 0);
    }
}

TEST(P1, SpecValidation)
{
    EXPECT_THROW(P1SchemeSpec({}, {}), std::invalid_argument);
    EXPECT_THROW(P1SchemeSpec({1, 1}, {1, 2}), std::invalid_argument);
    EXPECT_THROW(P1SchemeSpec({1}, {0}), std::invalid_argument);
    EXPECT_THROW(p1_hf(P1SchemeSpec({1}, {2}), 3), std::invalid_argument);
}

TEST(Conic, DiscriminantDetectsSingularity)
{
    EXPECT_NE(conic_discriminant(eight_point_conic()), 0);
    EXPECT_NE(conic_discriminant(parse_poly("X0*X2 - X1^2", 2)), 0);
    EXPECT_EQ(conic_discriminant(parse_poly("X0*X1", 2)), 0);
    EXPECT_EQ(conic_discriminant(parse_poly("X0^2 - 2*X0*X1 + X1^2", 2)), 0);
}

TEST(Conic, SpecValidation)
{
    HomogPoly c = parse_poly("X0*X2 - X1^2", 2);
    std::vector<std::vector<Rational>> pts{{1, 0, 0}, {1, 1, 1}, {1, 2, 4}, {1, 3, 9}};
    EXPECT_NO_THROW(ConicSchemeSpec(c, scheme(2, pts, {1, 1, 1, 1})));
    EXPECT_THROW(ConicSchemeSpec(c, scheme(2, {pts[0], pts[1], pts[2]}, {1, 1, 1})), std::invalid_argument);
    EXPECT_THROW(ConicSchemeSpec(parse_poly("X0*X1", 2), scheme(2, pts, {1, 1, 1, 1})), std::invalid_argument);
    auto off = pts;
    off[3] = {1, 3, 8};
    EXPECT_THROW(ConicSchemeSpec(c, scheme(2, off, {1, 1, 1, 1})), std::invalid_argument);
    ConicSchemeSpec sorted(c, scheme(2, pts, {3, 1, 2, 1}));
    EXPECT_EQ(sorted.scheme().mults(), (std::vector<int>{1, 1, 2, 3}));
    EXPECT_EQ(sorted.rho(), 5);
    EXPECT_THROW(conic_hf(sorted, 2), std::invalid_argument);
    EXPECT_THROW(conic_hf(sorted, 4), std::invalid_argument);
}

TEST(Conic, EquimultipleFormulasMatchEngine)
{
    std::mt19937_64 rng(41);
    for (int s = 4; s <= 7; ++s)
        for (int nu = 1; nu <= 3; ++nu) {
            FatPointScheme w = on_parabola(rng, s, std::vector<int>(s, nu));
            ConicSchemeSpec spec(parse_poly("X0*X2 - X1^2", 2), w);
            OmegaEngine eng(w);
            EXPECT_EQ(spec.regularity_index(), eng.r_w()) << "s=" << s << " nu=" << nu;
            for (int m = 1; m <= 3; ++m) {
                HFTable e = eng.hf(m).table;
                EXPECT_TRUE(same_values(conic_hf(spec, m, DeltaSource::table), e)) << "s=" << s << " nu=" << nu << " m=" << m;
                EXPECT_TRUE(same_values(conic_hf(spec, m, DeltaSource::generators), e))
                    << "generators s=" << s << " nu=" << nu << " m=" << m;
            }
            EXPECT_TRUE(same_values(conic_omega3_isomorphism(spec), eng.hf(3).table)) << "s=" << s << " nu=" << nu;
        }
}

TEST(Conic, DeltaSourcesAgree)
{
    std::mt19937_64 rng(42);
    for (int s = 4; s <= 9; ++s)
        for (int nu = 2; nu <= 4; ++nu) {
            ConicSchemeSpec spec(parse_poly("X0*X2 - X1^2", 2), on_parabola(rng, s, std::vector<int>(s, nu)));
            DeltaH d = conic_delta_h(spec, s * (nu + 1) + 4 * nu + 8);
            EXPECT_EQ(d.delta, d.delta_generators) << "s=" << s << " nu=" << nu;
        }
}

TEST(Conic, OmegaOneWithMixedMultiplicities)
{
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int k = 0; k < 20; ++k) {
        const int s = 4 + k % 4;
        std::vector<int> ms;
        for (int j = 0; j < s; ++j) ms.push_back(mult(rng));
        FatPointScheme w = on_parabola(rng, s, ms);
        ConicSchemeSpec spec(parse_poly("X0*X2 - X1^2", 2), w);
        EXPECT_EQ(spec.regularity_index(), regularity_index(w));
        EXPECT_TRUE(same_values(conic_hf(spec, 1), omega_hf(w, 1).table)) << k;
    }
}

TEST(Hyperplane, TopFormIsShiftedHFOfY)
{
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> coord(-3, 3), mult(1, 3);
    HomogPoly h = parse_poly("X0 - 2*X1 + X3", 3);
    for (int k = 0; k < 12; ++k) {
        std::vector<std::vector<Rational>> pts;
        std::vector<int> ms;
        while (pts.size() < 4) {
            Rational x1 = coord(rng), x2 = coord(rng);
            std::vector<Rational> p{1, x1, x2, 2 * x1 - 1};
            if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
            pts.push_back(p);
            ms.push_back(mult(rng));
        }
        FatPointScheme w = scheme(3, pts, ms);
        EXPECT_TRUE(same_values(hyperplane_top_form(w, h), omega_hf(w, 4).table)) << k;
    }
    FatPointScheme off = scheme(3, {{1, 1, 1, 1}, {1, 0, 0, 5}}, {2, 1});
    EXPECT_THROW(hyperplane_top_form(off, h), std::invalid_argument);
    EXPECT_THROW(hyperplane_top_form(off, parse_poly("X0^2", 3)), std::invalid_argument);
}

TEST(ComplexInequality, HoldsAndIsSharpForEquimultiplePlaneSchemes)
{
    std::mt19937_64 rng(45);
    for (int k = 0; k < 20; ++k) {
        const bool equi = k % 2 == 0;
        FatPointScheme w = random_scheme(rng, {2 + (k % 4 == 3), 4, 3, 4, equi});
        ComplexInequality ci(w);
        for (long long i = 0; i <= ci.threshold() + 4; ++i) {
            ComplexCheck c = ci.check(i);
            EXPECT_TRUE(c.holds) << "k=" << k << " i=" << i << " lhs=" << c.lhs << " rhs=" << c.rhs;
            EXPECT_GE(c.lhs, c.rhs);
        }
        if (equi && w.n() == 2) {
            EXPECT_TRUE(ci.check(ci.threshold() + 1).equality_expected);
        }
    }
}

TEST(Reducedness, VerdictMatchesScheme)
{
    std::mt19937_64 rng(46);
    for (int k = 0; k < 20; ++k) {
        FatPointScheme w = random_scheme(rng, {1 + k % 3, 4, 2, 4, false});
        EXPECT_EQ(reducedness_test(w), w.is_reduced());
    }
}

TEST(ConjectureProbe, HoldsOnTheLineAndForEquimultipleSchemes)
{
    std::mt19937_64 rng(47);
    for (int k = 0; k < 12; ++k) {
        FatPointScheme w = random_scheme(rng, {1 + 2 * (k % 2), 4, 3, 4, k % 2 == 1});
        ConjectureReport r = conjecture_probe(w);
        EXPECT_TRUE(r.agree) << k << ": " << r.hp_top << " vs " << r.hp_y;
    }
    ConjectureReport reduced = conjecture_probe(scheme(2, {{1, 0, 0}, {1, 1, 1}}, {1, 1}));
    EXPECT_EQ(reduced.hp_top, 0);
    EXPECT_TRUE(reduced.agree);
}

TEST(Bounds, ExactCasesAndEdges)
{
    FatPointScheme w = scheme(2, {{1, 0, 0}}, {2});
    HPBounds b = hp_bounds(w, 1);
    EXPECT_EQ(b.lower, 3);
    EXPECT_EQ(b.upper, 9);
    EXPECT_THROW(hp_bounds(w, 4), std::invalid_argument);
    EXPECT_THROW(hp_exact_cases(w, 0), std::invalid_argument);
    EXPECT_EQ(hp_exact_cases(w, 3), 1);
    EXPECT_EQ(hp_exact_cases(w, 2), 4);
    EXPECT_FALSE(hp_exact_cases(scheme(2, {{1, 0, 0}, {1, 1, 0}}, {1, 2}), 2).has_value());
    EXPECT_EQ(ri_chain_bound(3, 5, 2), 6);
    EXPECT_TRUE(general_position(scheme(2, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}}, {1, 1, 1, 1})));
    EXPECT_FALSE(general_position(scheme(2, {{1, 0, 0}, {1, 1, 0}, {1, 2, 0}}, {1, 1, 1})));
}
