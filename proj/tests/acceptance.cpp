// One PASS/FAIL line per acceptance criterion. Criterion 10 runs with --slow.
// Exit status is zero when the only failures are the documented ones below.

#include "kahler/formulas.hpp"
#include "kahler/io.hpp"
#include "kahler/kaehler.hpp"
#include "kahler/report.hpp"

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace kahler;

namespace {

// Criterion 6: the printed Omega^3 table of 3X omits the value 22 in degree 9.
// Engine, both correction-term evaluators and the S / M I_{2X} isomorphism all give
// 0 0 0 1 3 6 10 15 18 22 23 25 24 24.
const std::set<int> kKnownFailures = {6};

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
    void add(const std::vector<Check>& checks)
    {
        for (const auto& c : checks)
            require(c.pass, c.name + ": expected " + c.expected + ", computed " + c.computed);
    }
};

SchemeFile load(const std::string& name)
{
    return read_scheme_file(data_path(KAHLER_DATA_DIR, name));
}

Outcome criterion1()
{
    Outcome o;
    o.add(golden_checks("four_points_p3", load("four_points_p3")));
    return o;
}

Outcome criterion2()
{
    Outcome o;
    SchemeFile f = load("p1_three_points");
    TableCache tc(f.scheme);
    o.add(golden_checks("p1_three_points", f, tc));
    std::vector<Rational> roots;
    for (const auto& p : f.scheme.points()) roots.push_back(p[1]);
    P1SchemeSpec spec(roots, f.scheme.mults());
    for (int m : {1, 2}) {
        HFTable closed = p1_hf(spec, m);
        o.add({check_table("closed form Omega^" + std::to_string(m), closed, f.expected.omega.at(m))});
        o.require(same_values(closed, tc.get(m)), "closed form differs from engine, m = " + std::to_string(m));
    }
    o.require(p1_ri(spec) == 8, "closed-form ri is not 8");
    return o;
}

Outcome criterion3()
{
    Outcome o;
    SchemeFile fx = load("six_points_conic"), fy = load("six_points_two_lines");
    TableCache tx(fx.scheme), ty(fy.scheme);
    o.add(golden_checks("conic configuration", fx, tx));
    o.add(golden_checks("two-line configuration", fy, ty));
    o.require(same_values(tx.get(0), ty.get(0)), "HF_X differs from HF_Y");
    o.require(same_values(tx.get(1), ty.get(1)), "Omega^1 tables differ");
    for (long long i = 0; i < 12; ++i)
        o.require((tx.get(2).at(i) != ty.get(2).at(i)) == (i == 4), "Omega^2 comparison wrong in degree " + std::to_string(i));
    o.require(tx.get(2).at(4) == 4 && ty.get(2).at(4) == 5, "Omega^2 in degree 4 is not 4 vs 5");
    o.require(tx.get(3).stable_from == 4 && ty.get(3).stable_from == 5, "ri(Omega^3) is not 4 vs 5");
    return o;
}

Outcome criterion4()
{
    Outcome o;
    SchemeFile fx = load("nine_points_p2");
    TableCache tx(fx.scheme);
    o.add(golden_checks("X", fx, tx));
    o.add(golden_checks("Y", load("ten_points_p2")));
    const HFTable& t = tx.get(1);
    o.require(t.at(4) == 14 && t.at(5) == 13 && t.at(6) == 14, "Omega^1 of X is not 14 > 13 < 14 in degrees 4..6");
    return o;
}

Outcome criterion5()
{
    Outcome o;
    SchemeFile fw = load("fat_p3_w"), fy = load("fat_p3_2y");
    TableCache tw(fw.scheme), ty(fy.scheme);
    for (int m = 1; m <= 4; ++m) {
        const int want = m <= 3 ? m + 4 : 7;
        o.require(tw.get(m).stable_from == want, "ri(Omega^" + std::to_string(m) + ") of W is " +
                                                     std::to_string(tw.get(m).stable_from) + ", want " + std::to_string(want));
        RIBound b = ri_bounds(fy.scheme, m);
        o.require(b.general.has_value(), "support of Y not in general position");
        if (b.general)
            o.require(*b.general == ty.get(m).stable_from,
                      "general-position bound " + std::to_string(*b.general) + " not attained by 2Y for m = " + std::to_string(m));
    }
    o.add(golden_checks("2Y", fy, ty));
    return o;
}

Outcome criterion6()
{
    Outcome o;
    for (const char* name : {"conic8_x", "conic8_2x", "conic8_3x"}) {
        SchemeFile f = load(name);
        TableCache tc(f.scheme);
        ConicSchemeSpec spec(parse_poly(f.extra.at("conic").get<std::string>(), 2), f.scheme);
        o.add({check_table(std::string(name) + " HF engine", tc.get(0), *f.expected.hf)});
        if (spec.nu() == 1) continue;
        const auto& printed = f.expected.omega.at(3);
        o.add({check_table(std::string(name) + " Omega^3 engine", tc.get(3), printed)});
        for (auto src : {DeltaSource::table, DeltaSource::generators})
            o.add({check_table(std::string(name) + " Omega^3 formula (" + std::string(src == DeltaSource::table ? "delta table" : "delta from generators") + ")", conic_hf(spec, 3, src), printed)});
    }
    return o;
}

Outcome criterion7()
{
    Outcome o;
    int nu = 0;
    for (const char* name : {"conic8_x", "conic8_2x", "conic8_3x"}) {
        ++nu;
        SchemeFile f = load(name);
        TableCache tc(f.scheme);
        ConicSchemeSpec spec(parse_poly(f.extra.at("conic").get<std::string>(), 2), f.scheme);
        const auto& printed = f.expected.omega.at(2);
        o.add({check_table(std::string(name) + " Omega^2 engine", tc.get(2), printed)});
        for (auto src : {DeltaSource::table, DeltaSource::generators})
            o.add({check_table(std::string(name) + " Omega^2 formula (" + std::string(src == DeltaSource::table ? "delta table" : "delta from generators") + ")", conic_hf(spec, 2, src), printed)});
        const long long closed = (3LL * nu * nu - nu - 2) * spec.s() / 2;
        o.require(tc.get(2).hp == closed && closed == std::vector<long long>{0, 32, 88}[nu - 1],
                  std::string(name) + " HP(Omega^2) " + std::to_string(tc.get(2).hp) + " vs " + std::to_string(closed));
    }
    return o;
}

Outcome criterion8(bool slow)
{
    Outcome o;
    SchemeFile f = load("hyperplane_p5");
    HomogPoly h = parse_poly(f.extra.at("hyperplane").get<std::string>(), f.scheme.n());
    HFTable t = hyperplane_top_form(f.scheme, h);
    o.add({check_table("Omega^6 via R_Y(-6)", t, f.expected.omega.at(6))});
    o.require(t.hp == 337, "Hilbert polynomial is not 337");
    if (slow) o.add(golden_checks("engine", f));
    return o;
}

Outcome criterion9()
{
    Outcome o;
    std::mt19937_64 rng(777);
    int instances = 0;
    for (int k = 0; k < 105; ++k) {
        const int n = 1 + k % 3;
        FatPointScheme w = random_scheme(rng, {n, 5, n == 3 ? 2 + k % 2 : 3, 4, k % 4 == 0});
        ++instances;
        const std::string tag = "instance " + std::to_string(k);
        OmegaEngine eng(w);
        HFTable hw = eng.hf_w();
        HFTable hv = hf_table(w.fattening());
        const int r = eng.r_w(), alpha = initial_degree(w);
        std::vector<HFTable> omega(1), rel(1);
        for (int m = 1; m <= n + 1; ++m) omega.push_back(eng.hf(m).table);
        for (int m = 1; m <= n; ++m) rel.push_back(eng.hf(m, true).table);
        long long last = hw.values.size();
        for (const auto& t : omega) last = std::max<long long>(last, t.values.size());
        for (long long d = 0; d <= last + 1; ++d) {
            o.require(koszul_check(omega, hw, d), tag + ": Koszul sum fails at degree " + std::to_string(d));
            o.require(omega[1].at(d) == (n + 1) * hw.at(d - 1) + hw.at(d) - hv.at(d), tag + ": fattening identity");
            o.require(rel[1].at(d) == omega[1].at(d) - hw.at(d - 1), tag + ": relative identity");
        }
        o.require(same_values(top_form_hf(w).table, omega[n + 1]), tag + ": top form differs from engine");
        for (int m = 1; m <= n + 1; ++m) {
            const HFTable& t = omega[m];
            const std::string tm = tag + ", m = " + std::to_string(m);
            for (int i = 0; i < m; ++i) o.require(t.at(i) == 0, tm + ": zero range");
            for (int i = m; i < alpha + m - 1; ++i)
                o.require(t.at(i) == binomial(n + 1, m) * binomial(n + i - m, n), tm + ": low-degree binomial law");
            for (int i = r + m; i < t.stable_from; ++i) o.require(t.at(i) > t.at(i + 1), tm + ": strict decrease");
            HPBounds b = hp_bounds(w, m);
            o.require(b.lower <= t.hp && t.hp <= b.upper, tm + ": HP outside bounds");
            if (auto e = hp_exact_cases(w, m)) o.require(*e == t.hp, tm + ": HP exact case");
            o.require(t.stable_from <= ri_bounds(w, m).value, tm + ": ri bound");
            o.require(t.stable_from <= ri_chain_bound(r, omega[1].stable_from, m), tm + ": chain bound");
        }
        for (int m = 1; m <= n; ++m) o.require(rel[m].stable_from <= ri_bounds(w, m, true).value, tag + ": relative ri bound");
    }
    for (int nu = 1; nu <= 3; ++nu)
        for (int k = 0; k < 8; ++k) {
            FatPointScheme w = random_scheme(rng, {2, 5, 1, 4, true}).scaled(nu);
            ComplexInequality ci(w);
            for (long long i = 0; i <= ci.threshold() + 4; ++i) {
                ComplexCheck c = ci.check(i);
                o.require(c.holds, "complex inequality, nu = " + std::to_string(nu) + ", i = " + std::to_string(i));
            }
        }
    o.require(instances >= 100, "fewer than 100 instances");
    return o;
}

Outcome criterion10()
{
    Outcome o;
    SchemeFile f = load("twisted_cubic");
    ConjectureReport c = conjecture_probe(f.scheme);
    o.require(c.hp_top == 141, "HP(Omega^4) = " + std::to_string(c.hp_top));
    o.require(c.hp_y == 141, "HP_Y = " + std::to_string(c.hp_y));
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    bool slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--slow") == 0) slow = true;

    struct Criterion {
        int id;
        std::string title;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria = {
        {1, "four points in P^3: Omega^1..4 tables and ri 3 4 5 5", 5, criterion1},
        {2, "P^1 scheme: Omega^1, Omega^2 and ri 8 via engine and closed form", 1, criterion2},
        {3, "six points, two configurations: shared HF and Omega^1, Omega^2 and Omega^3 differ", 10, criterion3},
        {4, "nine and ten points in P^2: six tables and non-monotonic Omega^1", 10, criterion4},
        {5, "fat points in P^3: ri m+4 for m <= 3, 7 for m = 4; 2Y bounds attained", 60, criterion5},
        {6, "eight conic points: HF of nu X and Omega^3 of 2X, 3X via engine and formula", 60, criterion6},
        {7, "eight conic points: Omega^2 of nu X via engine and formula, HP 0 32 88", 120, criterion7},
        {8, "fat points on a hyperplane in P^5: Omega^6 table ending in 337", slow ? 600.0 : 60.0, [slow] { return criterion8(slow); }},
        {9, "property suites over randomized schemes", 600, criterion9},
    };
    if (slow) criteria.push_back({10, "twisted cubic: HP(Omega^4) = HP_Y = 141", 1800, criterion10});

    bool unexpected = false;
    int passed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit) o.require(false, "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(c.limit) + " s");
        const bool known = kKnownFailures.count(c.id) > 0;
        std::printf("%s criterion %d (%.2f s): %s%s\n", o.pass ? "PASS" : "FAIL", c.id, secs, c.title.c_str(),
                    !o.pass && known ? " [known]" : "");
        for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
        if (o.pass) ++passed;
        if (o.pass == known) unexpected = true;
    }
    std::printf("%d/%zu criteria passed\n", passed, criteria.size());
    return unexpected ? 1 : 0;
}
