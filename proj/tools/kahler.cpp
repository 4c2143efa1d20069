// kahler: Hilbert functions of Kaehler differential modules of fat point schemes.

#include "kahler/formulas.hpp"
#include "kahler/io.hpp"
#include "kahler/kaehler.hpp"
#include "kahler/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef KAHLER_DATA_DIR
#define KAHLER_DATA_DIR "data"
#endif

using namespace kahler;

namespace {

enum Exit { ok = 0, verify_failed = 1, parse_failed = 2, bad_coordinates = 3 };

unsigned thread_count()
{
    const char* env = std::getenv("KAHLER_THREADS");
    if (!env) return 1;
    try {
        int t = std::stoi(env);
        if (t >= 1) return static_cast<unsigned>(t);
    } catch (const std::exception&) {
    }
    throw ParseError("KAHLER_THREADS must be an integer >= 1");
}

struct HfOptions {
    std::string file;
    std::vector<int> m;
    bool relative = false;
    int max_degree = -1;
    std::string format = "text";
};

int cmd_hf(const HfOptions& o)
{
    SchemeFile f = read_scheme_file(o.file);
    const FatPointScheme& w = f.scheme;
    std::vector<int> ms = o.m;
    if (ms.empty())
        for (int m = 0; m <= w.n() + (o.relative ? 0 : 1); ++m) ms.push_back(m);
    for (int m : ms) {
        if (m == 0) continue;
        try {
            check_form_degree(w.n(), m, o.relative);
        } catch (const std::invalid_argument& e) {
            throw ParseError("--m " + std::to_string(m) + ": " + e.what());
        }
    }

    OmegaEngine eng(w);
    std::optional<int> cut;
    if (o.max_degree >= 0) cut = o.max_degree;
    std::vector<std::function<NamedTable()>> jobs;
    for (int m : ms)
        jobs.push_back([&, m] {
            return NamedTable{table_name(m, o.relative && m > 0), m, o.relative && m > 0, eng.hf(m, o.relative, cut).table};
        });
    std::vector<NamedTable> tables = run_jobs(jobs, thread_count());

    if (o.format == "csv") std::cout << render_csv(tables);
    else if (o.format == "json") std::cout << render_json(f.label, w, tables);
    else std::cout << render_text(f.label, w, tables);

    if (cut) return ok;
    // Golden tables in the file are verified against what was computed.
    bool good = true;
    for (const auto& t : tables) {
        const std::vector<long long>* printed = nullptr;
        const std::map<int, int>& ris = t.relative ? f.expected.relative_ri : f.expected.ri;
        if (t.m == 0 && f.expected.hf) printed = &*f.expected.hf;
        const auto& group = t.relative ? f.expected.relative : f.expected.omega;
        if (auto it = group.find(t.m); t.m > 0 && it != group.end()) printed = &it->second;
        if (printed && !matches_printed(t.table, *printed)) {
            Check c = check_table(t.name, t.table, *printed);
            std::cerr << "mismatch " << c.name << "\n  expected: " << c.expected << "\n  computed: " << c.computed << "\n";
            good = false;
        }
        if (auto it = ris.find(t.m); t.m > 0 && it != ris.end() && it->second != t.table.stable_from) {
            std::cerr << "mismatch ri(" << t.name << ")\n  expected: " << it->second
                      << "\n  computed: " << t.table.stable_from << "\n";
            good = false;
        }
    }
    return good ? ok : verify_failed;
}

std::string verdict(bool good, const char* yes, const char* no)
{
    return good ? yes : no;
}

int cmd_bounds(const std::string& file)
{
    SchemeFile f = read_scheme_file(file);
    const FatPointScheme& w = f.scheme;
    const int n = w.n();
    OmegaEngine eng(w);
    std::ostringstream out;
    bool good = true;
    if (!f.label.empty()) out << "# " << f.label << "\n";
    out << "n = " << n << ", s = " << w.size() << ", deg = " << w.degree() << ", r_W = " << eng.r_w()
        << ", r_V = " << eng.r_v() << "\n";

    int ri1 = 0;
    for (int rel = 0; rel <= 1; ++rel) {
        for (int m = 1; m <= n + 1 - rel; ++m) {
            const bool relative = rel == 1;
            OmegaHF h = eng.hf(m, relative);
            if (m == 1 && !relative) ri1 = h.ri;
            const std::string name = table_name(m, relative);
            out << name << ": ri = " << h.ri << ", HP = " << h.table.hp << "\n";

            RIBound b = ri_bounds(w, m, relative);
            auto line = [&](const std::string& label, int bound) {
                const bool holds = h.ri <= bound;
                good = good && holds;
                out << "  ri bound [" << label << "] " << bound << ": "
                    << (h.ri == bound ? "attained" : holds ? "satisfied" : "VIOLATED") << "\n";
            };
            line("fattening", b.fattening);
            if (b.general) line("general position", *b.general);
            if (b.reduced) line("reduced", *b.reduced);
            if (!relative && m >= 2) line("chain from Omega^1", ri_chain_bound(eng.r_w(), ri1, m));

            if (!relative) {
                HPBounds hb = hp_bounds(w, m);
                const bool inside = hb.lower <= h.table.hp && h.table.hp <= hb.upper;
                good = good && inside;
                out << "  HP bounds [" << hb.lower << ", " << hb.upper << "]: " << verdict(inside, "inside", "OUTSIDE") << "\n";
            }
            if (auto exact = hp_exact_cases(w, m, relative)) {
                const bool eq = *exact == h.table.hp;
                good = good && eq;
                out << "  HP exact value " << *exact << ": " << verdict(eq, "attained", "DIFFERS") << "\n";
            }
        }
    }

    try {
        const bool reduced = reducedness_test(w);
        out << "reducedness: " << (reduced ? "reduced" : "not reduced") << " (HP(" << table_name(n + 1, false)
            << ") " << (reduced ? "= 0" : "> 0") << ")\n";
    } catch (const std::logic_error& e) {
        good = false;
        out << "reducedness: INCONSISTENT (" << e.what() << ")\n";
    }
    ConjectureReport c = conjecture_probe(w);
    out << "conjecture probe (experimental): HP(" << table_name(n + 1, false) << ") = " << c.hp_top
        << ", HP_Y = " << c.hp_y << ": " << (c.agree ? "agree" : "differ") << "\n";
    std::cout << out.str();
    return good ? ok : verify_failed;
}

int cmd_verify(const std::string& suite, const std::string& format, const std::string& data_dir)
{
    std::vector<SuiteResult> results;
    if (suite == "core") results.push_back(core_suite(data_dir));
    else if (suite == "conic") results.push_back(conic_suite(data_dir));
    else results.push_back(slow_suite(data_dir));
    bool good = true;
    for (const auto& r : results) {
        std::cout << (format == "json" ? render_suite_json(r) : render_suite_text(r));
        good = good && r.pass();
    }
    return good ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hilbert functions of Kaehler differential modules of fat point schemes"};
    app.require_subcommand(1);

    HfOptions hf;
    auto* hf_cmd = app.add_subcommand("hf", "Hilbert function tables of Omega^m");
    hf_cmd->add_option("file", hf.file, "scheme file (JSON)")->required();
    hf_cmd->add_option("--m", hf.m, "form degrees (0 = HF of the scheme); default all");
    hf_cmd->add_flag("--relative", hf.relative, "differentials relative to K[x0]");
    hf_cmd->add_option("--max-degree", hf.max_degree, "compute degrees 0..N only, without certificate")
        ->check(CLI::NonNegativeNumber);
    hf_cmd->add_option("--format", hf.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

    std::string bounds_file;
    auto* bounds_cmd = app.add_subcommand("bounds", "regularity and Hilbert polynomial bounds");
    bounds_cmd->add_option("file", bounds_file, "scheme file (JSON)")->required();

    std::string suite = "core", vformat = "text", data_dir = KAHLER_DATA_DIR;
    auto* verify_cmd = app.add_subcommand("verify-paper", "replay the curated golden tables");
    verify_cmd->add_option("--suite", suite, "core, conic or slow")->check(CLI::IsMember({"core", "conic", "slow"}));
    verify_cmd->add_option("--format", vformat, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--data-dir", data_dir, "directory holding examples/");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : parse_failed;
    }

    try {
        if (*hf_cmd) return cmd_hf(hf);
        if (*bounds_cmd) return cmd_bounds(bounds_file);
        return cmd_verify(suite, vformat, data_dir);
    } catch (const CoordinateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_coordinates;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_failed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return parse_failed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return verify_failed;
    }
}
