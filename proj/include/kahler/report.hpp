#pragma once

// Table rendering and the curated verification suites.

#include "exactla.hpp"
#include "formulas.hpp"
#include "io.hpp"
#include "kaehler.hpp"
#include "schemes.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace kahler {

// ---------------------------------------------------------------- tables

struct NamedTable {
    std::string name;  // "HF_W", "Omega^2", "Omega^1_rel"
    int m = 0;
    bool relative = false;
    HFTable table;
};

inline std::string table_name(int m, bool relative)
{
    if (m == 0) return "HF_W";
    return "Omega^" + std::to_string(m) + (relative ? "_rel" : "");
}

// Stabilization certificate: the last two computed degrees carry the same value.
inline std::string certificate_text(const HFTable& t)
{
    if (!t.certified) return "uncertified (range cut by --max-degree)";
    const long long d = static_cast<long long>(t.values.size()) - 1;
    return "HF(" + std::to_string(d - 1) + ") = HF(" + std::to_string(d) + ") = " + std::to_string(t.hp);
}

inline std::string render_text(const std::string& label, const FatPointScheme& w, const std::vector<NamedTable>& tables)
{
    std::ostringstream out;
    if (!label.empty()) out << "# " << label << "\n";
    out << "n = " << w.n() << ", s = " << w.size() << ", deg = " << w.degree() << "\n";
    for (const auto& t : tables) {
        out << t.name << ": " << join(t.table.values);
        if (t.table.certified) out << " ...";
        out << "\n";
        if (t.table.certified) out << "  ri = " << t.table.stable_from << ", HP = " << t.table.hp << ", ";
        else out << "  ";
        out << "certificate: " << certificate_text(t.table) << "\n";
    }
    return out.str();
}

// One table: degree,value. Several: table,degree,value.
inline std::string render_csv(const std::vector<NamedTable>& tables)
{
    std::ostringstream out;
    const bool many = tables.size() > 1;
    out << (many ? "table,degree,value\n" : "degree,value\n");
    for (const auto& t : tables)
        for (std::size_t d = 0; d < t.table.values.size(); ++d) {
            if (many) out << t.name << ',';
            out << d << ',' << t.table.values[d] << "\n";
        }
    return out.str();
}

inline nlohmann::json table_json(const NamedTable& t)
{
    nlohmann::json j;
    j["name"] = t.name;
    j["m"] = t.m;
    j["relative"] = t.relative;
    j["values"] = t.table.values;
    j["certified"] = t.table.certified;
    if (t.table.certified) {
        const long long d = static_cast<long long>(t.table.values.size()) - 1;
        j["hp"] = t.table.hp;
        j["ri"] = t.table.stable_from;
        j["certificate"] = {{"degree", d}, {"value", t.table.hp}};
    }
    return j;
}

inline std::string render_json(const std::string& label, const FatPointScheme& w, const std::vector<NamedTable>& tables)
{
    nlohmann::json j;
    j["label"] = label;
    j["n"] = w.n();
    j["s"] = w.size();
    j["degree"] = w.degree();
    j["tables"] = nlohmann::json::array();
    for (const auto& t : tables) j["tables"].push_back(table_json(t));
    return j.dump(2) + "\n";
}

// Runs jobs on up to `threads` workers; results keep job order.
template <class R>
std::vector<R> run_jobs(const std::vector<std::function<R()>>& jobs, unsigned threads)
{
    std::vector<R> out(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) {
            try {
                out[k] = jobs[k]();
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

// ---------------------------------------------------------------- checks

struct Check {
    std::string name;
    bool pass = false;
    std::string expected;
    std::string computed;
};

inline Check check_equal(std::string name, const std::string& expected, const std::string& computed)
{
    return Check{std::move(name), expected == computed, expected, computed};
}

inline Check check_true(std::string name, bool ok, const std::string& detail = "")
{
    return Check{std::move(name), ok, "true", ok ? "true" : "false" + (detail.empty() ? "" : " (" + detail + ")")};
}

inline Check check_table(std::string name, const HFTable& t, const std::vector<long long>& printed)
{
    std::vector<long long> shown;
    const std::size_t len = std::max<std::size_t>(printed.size(), t.stable_from + 2);
    for (std::size_t i = 0; i < len; ++i) shown.push_back(t.at(i));
    Check c{std::move(name), matches_printed(t, printed), join(printed) + " ...", join(shown) + " ..."};
    return c;
}

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;

    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::size_t failures() const
    {
        return std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
    }
};

inline std::string render_suite_text(const SuiteResult& r)
{
    std::ostringstream out;
    for (const auto& c : r.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << "\n";
        if (!c.pass) out << "  expected: " << c.expected << "\n  computed: " << c.computed << "\n";
    }
    out << r.suite << ": " << r.checks.size() - r.failures() << "/" << r.checks.size() << " passed\n";
    return out.str();
}

inline std::string render_suite_json(const SuiteResult& r)
{
    nlohmann::json j;
    j["suite"] = r.suite;
    j["passed"] = r.checks.size() - r.failures();
    j["total"] = r.checks.size();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.pass) {
            e["expected"] = c.expected;
            e["computed"] = c.computed;
        }
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

// Engine tables for one scheme, computed on demand.
class TableCache {
public:
    explicit TableCache(const FatPointScheme& w) : eng_(w) {}

    const OmegaEngine& engine() const { return eng_; }
    const HFTable& get(int m, bool relative = false)
    {
        auto key = std::make_pair(m, relative);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, eng_.hf(m, relative).table).first;
        return it->second;
    }

private:
    OmegaEngine eng_;
    std::map<std::pair<int, bool>, HFTable> cache_;
};

// Compares every golden table in the file with the engine.
inline std::vector<Check> golden_checks(const std::string& tag, const SchemeFile& f, TableCache& tc)
{
    std::vector<Check> out;
    const Expected& e = f.expected;
    if (e.hf) out.push_back(check_table(tag + " HF_W", tc.get(0), *e.hf));
    for (const auto& [m, printed] : e.omega) out.push_back(check_table(tag + " " + table_name(m, false), tc.get(m), printed));
    for (const auto& [m, printed] : e.relative)
        out.push_back(check_table(tag + " " + table_name(m, true), tc.get(m, true), printed));
    for (const auto& [m, ri] : e.ri)
        out.push_back(check_equal(tag + " ri(" + table_name(m, false) + ")", std::to_string(ri),
                                  std::to_string(tc.get(m).stable_from)));
    for (const auto& [m, ri] : e.relative_ri)
        out.push_back(check_equal(tag + " ri(" + table_name(m, true) + ")", std::to_string(ri),
                                  std::to_string(tc.get(m, true).stable_from)));
    return out;
}

inline std::vector<Check> golden_checks(const std::string& tag, const SchemeFile& f)
{
    TableCache tc(f.scheme);
    return golden_checks(tag, f, tc);
}

// ---------------------------------------------------------------- random schemes

struct RandomSchemeParams {
    int n = 2;
    int max_points = 5;
    int max_mult = 3;
    int coord_bound = 4;
    bool equimultiple = false;
};

inline FatPointScheme random_scheme(std::mt19937_64& rng, const RandomSchemeParams& p)
{
    std::uniform_int_distribution<int> coord(-p.coord_bound, p.coord_bound);
    std::uniform_int_distribution<int> count(1, p.max_points);
    std::uniform_int_distribution<int> mult(1, p.max_mult);
    const int s = count(rng);
    std::vector<std::vector<Rational>> pts;
    while (static_cast<int>(pts.size()) < s) {
        std::vector<Rational> c{Rational(1)};
        for (int i = 0; i < p.n; ++i) c.push_back(coord(rng));
        if (std::find(pts.begin(), pts.end(), c) == pts.end()) pts.push_back(std::move(c));
    }
    std::vector<int> ms;
    const int nu = mult(rng);
    for (int j = 0; j < s; ++j) ms.push_back(p.equimultiple ? nu : mult(rng));
    return FatPointScheme::from_coords(p.n, pts, ms);
}

// ---------------------------------------------------------------- suites

inline std::string data_path(const std::string& dir, const std::string& name)
{
    return dir + "/examples/" + name + ".json";
}

inline SuiteResult core_suite(const std::string& data_dir)
{
    SuiteResult r{"core", {}};
    auto add = [&](std::vector<Check> cs) { r.checks.insert(r.checks.end(), cs.begin(), cs.end()); };

    add(golden_checks("four_points_p3", read_scheme_file(data_path(data_dir, "four_points_p3"))));

    {
        SchemeFile f = read_scheme_file(data_path(data_dir, "p1_three_points"));
        TableCache tc(f.scheme);
        add(golden_checks("p1_three_points", f, tc));
        std::vector<Rational> roots;
        for (const auto& p : f.scheme.points()) roots.push_back(p[1]);
        P1SchemeSpec spec(roots, f.scheme.mults());
        for (int m : {1, 2}) {
            HFTable closed = p1_hf(spec, m);
            r.checks.push_back(check_true("p1_three_points closed form " + table_name(m, false) + " = engine", same_values(closed, tc.get(m))));
            r.checks.push_back(check_table("p1_three_points closed form " + table_name(m, false) + " vs printed", closed, f.expected.omega.at(m)));
        }
        r.checks.push_back(check_equal("p1_three_points closed-form ri", "8", std::to_string(p1_ri(spec))));
    }

    {
        SchemeFile fx = read_scheme_file(data_path(data_dir, "six_points_conic"));
        SchemeFile fy = read_scheme_file(data_path(data_dir, "six_points_two_lines"));
        TableCache tx(fx.scheme), ty(fy.scheme);
        add(golden_checks("six_points conic", fx, tx));
        add(golden_checks("six_points lines", fy, ty));
        std::vector<long long> diff;
        for (long long i = 0; i < 12; ++i)
            if (tx.get(2).at(i) != ty.get(2).at(i)) diff.push_back(i);
        r.checks.push_back(check_equal("six_points Omega^2 tables differ only in degree 4", "4", join(diff)));
        r.checks.push_back(check_true("six_points Omega^1 tables agree", same_values(tx.get(1), ty.get(1))));
    }

    {
        SchemeFile fx = read_scheme_file(data_path(data_dir, "nine_points_p2"));
        TableCache tx(fx.scheme);
        add(golden_checks("nine_ten_points X", fx, tx));
        add(golden_checks("nine_ten_points Y", read_scheme_file(data_path(data_dir, "ten_points_p2"))));
        const HFTable& o1 = tx.get(1);
        r.checks.push_back(check_true("nine_ten_points Omega^1 of X not monotonic: 14 > 13 < 14",
                                      o1.at(4) == 14 && o1.at(5) == 13 && o1.at(6) == 14));
    }

    {
        SchemeFile fw = read_scheme_file(data_path(data_dir, "fat_p3_w"));
        SchemeFile fy = read_scheme_file(data_path(data_dir, "fat_p3_2y"));
        TableCache tw(fw.scheme), ty(fy.scheme);
        add(golden_checks("fat_p3 W", fw, tw));
        add(golden_checks("fat_p3 2Y", fy, ty));
        r.checks.push_back(check_equal("fat_p3 r_W, r_V", "3 5",
                                       std::to_string(tw.engine().r_w()) + " " + std::to_string(tw.engine().r_v())));
        for (int m = 1; m <= 4; ++m) {
            RIBound bw = ri_bounds(fw.scheme, m);
            r.checks.push_back(check_equal("fat_p3 W ri bound attained, m = " + std::to_string(m),
                                           std::to_string(bw.value), std::to_string(tw.get(m).stable_from)));
            RIBound by = ri_bounds(fy.scheme, m);
            r.checks.push_back(check_equal("fat_p3 2Y general-position bound attained, m = " + std::to_string(m),
                                           by.general ? std::to_string(*by.general) : "none",
                                           std::to_string(ty.get(m).stable_from)));
        }
    }

    // A small fixed-seed sample of the engine identities.
    std::mt19937_64 rng(20240601);
    int bad_koszul = 0, bad_top = 0;
    const int samples = 12;
    for (int k = 0; k < samples; ++k) {
        FatPointScheme w = random_scheme(rng, {1 + k % 3, 4, 2, 4, false});
        TableCache tc(w);
        std::vector<HFTable> omega(1);
        for (int m = 1; m <= w.n() + 1; ++m) omega.push_back(tc.get(m));
        long long last = 0;
        for (const auto& t : omega) last = std::max<long long>(last, t.values.size());
        for (long long d = 0; d <= last; ++d)
            if (!koszul_check(omega, tc.get(0), d)) {
                ++bad_koszul;
                break;
            }
        if (!same_values(top_form_hf(w).table, tc.get(w.n() + 1))) ++bad_top;
    }
    r.checks.push_back(check_equal("sample: Koszul alternating sum (" + std::to_string(samples) + " schemes)", "0",
                                   std::to_string(bad_koszul)));
    r.checks.push_back(check_equal("sample: Jacobian top form = engine (" + std::to_string(samples) + " schemes)", "0",
                                   std::to_string(bad_top)));
    return r;
}

inline SuiteResult conic_suite(const std::string& data_dir)
{
    SuiteResult r{"conic", {}};
    int nu = 0;
    for (const char* name : {"conic8_x", "conic8_2x", "conic8_3x"}) {
        ++nu;
        SchemeFile f = read_scheme_file(data_path(data_dir, name));
        const std::string tag = name;
        TableCache tc(f.scheme);
        auto golden = golden_checks(tag + " engine", f, tc);
        r.checks.insert(r.checks.end(), golden.begin(), golden.end());
        ConicSchemeSpec spec(parse_poly(f.extra.at("conic").get<std::string>(), 2), f.scheme);
        r.checks.push_back(check_equal(tag + " r_W formula", std::to_string(spec.regularity_index()),
                                       std::to_string(tc.engine().r_w())));
        for (int m = 1; m <= 3; ++m) {
            for (auto src : {DeltaSource::table, DeltaSource::generators}) {
                if (m == 1 && src == DeltaSource::generators) continue;
                const std::string how = m == 1 ? "formula" : src == DeltaSource::table ? "formula (delta table)" : "formula (delta from generators)";
                HFTable t = conic_hf(spec, m, src);
                r.checks.push_back(check_true(tag + " " + table_name(m, false) + " " + how + " = engine", same_values(t, tc.get(m))));
                auto it = f.expected.omega.find(m);
                if (it != f.expected.omega.end())
                    r.checks.push_back(check_table(tag + " " + table_name(m, false) + " " + how + " vs printed", t, it->second));
            }
        }
        r.checks.push_back(check_true(tag + " Omega^3 = shifted S / M I_{(nu-1)X}",
                                      same_values(conic_omega3_isomorphism(spec), tc.get(3))));
        const long long s = static_cast<long long>(spec.s());
        r.checks.push_back(check_equal(tag + " HP(Omega^2) = (3nu^2 - nu - 2) s / 2",
                                       std::to_string((3LL * nu * nu - nu - 2) * s / 2), std::to_string(tc.get(2).hp)));
        if (f.extra.contains("generator_degrees")) {
            std::string want, got;
            for (auto it = f.extra["generator_degrees"].begin(); it != f.extra["generator_degrees"].end(); ++it)
                want += it.key() + ":" + std::to_string(it.value().get<int>()) + " ";
            for (const auto& [d, c] : all_generator_degrees(f.scheme)) got += std::to_string(d) + ":" + std::to_string(c) + " ";
            r.checks.push_back(check_equal(tag + " generator degrees", want, got));
        }
    }
    return r;
}

inline SuiteResult slow_suite(const std::string& data_dir)
{
    SuiteResult r{"slow", {}};
    {
        SchemeFile f = read_scheme_file(data_path(data_dir, "hyperplane_p5"));
        HomogPoly h = parse_poly(f.extra.at("hyperplane").get<std::string>(), f.scheme.n());
        HFTable t = hyperplane_top_form(f.scheme, h);
        const int top = f.scheme.n() + 1;
        r.checks.push_back(check_table("hyperplane_p5 " + table_name(top, false) + " via R_Y(-n-1)", t, f.expected.omega.at(top)));
        auto golden = golden_checks("hyperplane_p5 engine", f);
        r.checks.insert(r.checks.end(), golden.begin(), golden.end());
    }
    {
        SchemeFile f = read_scheme_file(data_path(data_dir, "twisted_cubic"));
        ConjectureReport c = conjecture_probe(f.scheme);
        const std::string want = std::to_string(f.extra.at("top_form_hp").get<long long>());
        r.checks.push_back(check_equal("twisted_cubic HP(Omega^4_W)", want, std::to_string(c.hp_top)));
        r.checks.push_back(check_equal("twisted_cubic HP_Y", std::to_string(f.extra.at("hp_Y").get<long long>()),
                                       std::to_string(c.hp_y)));
    }
    return r;
}

}  // namespace kahler
