#pragma once

// Scheme description files:
//   {"n": 2, "points": [{"coords": ["1","1","0"], "mult": 2}, ...]}
// Optional keys: "label", "comment", "transform" (invertible (n+1)x(n+1)
// matrix of rational strings applied to every point before validation),
// "expected" (golden tables, see Expected).

#include "exactla.hpp"
#include "schemes.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kahler {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Golden tables: printed prefixes whose last entry is the stable value.
struct Expected {
    std::optional<std::vector<long long>> hf;
    std::map<int, std::vector<long long>> omega;
    std::map<int, std::vector<long long>> relative;
    std::map<int, int> ri;
    std::map<int, int> relative_ri;
};

struct SchemeFile {
    FatPointScheme scheme;
    std::string label;
    std::string comment;
    Expected expected;
    nlohmann::json extra;  // any further keys, untouched
};

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& where)
{
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected a rational string");
}

inline std::vector<long long> json_table(const nlohmann::json& v, const std::string& where)
{
    if (!v.is_array() || v.empty()) throw ParseError(where + ": expected a nonempty integer array");
    std::vector<long long> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw ParseError(where + ": expected integers");
        out.push_back(x.get<long long>());
    }
    return out;
}

template <class T, class F>
std::map<int, T> json_keyed(const nlohmann::json& v, const std::string& where, F convert)
{
    if (!v.is_object()) throw ParseError(where + ": expected an object keyed by form degree");
    std::map<int, T> out;
    for (auto it = v.begin(); it != v.end(); ++it) {
        int m;
        try {
            std::size_t used = 0;
            m = std::stoi(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError(where + ": bad form degree key '" + it.key() + "'");
        }
        out.emplace(m, convert(it.value(), where + "." + it.key()));
    }
    return out;
}

}  // namespace detail

inline SchemeFile parse_scheme_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("scheme file must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer()) throw ParseError("missing integer field 'n'");
    const int n = doc["n"].get<int>();
    if (n < 1) throw ParseError("'n' must be at least 1");
    if (!doc.contains("points") || !doc["points"].is_array() || doc["points"].empty())
        throw ParseError("missing nonempty array 'points'");

    std::vector<std::vector<Rational>> coords;
    std::vector<int> mults;
    int k = 0;
    for (const auto& p : doc["points"]) {
        const std::string where = "points[" + std::to_string(k++) + "]";
        if (!p.is_object() || !p.contains("coords") || !p["coords"].is_array())
            throw ParseError(where + ": expected {\"coords\": [...], \"mult\": m}");
        if (static_cast<int>(p["coords"].size()) != n + 1)
            throw ParseError(where + ": expected " + std::to_string(n + 1) + " coordinates");
        std::vector<Rational> c;
        for (const auto& x : p["coords"]) c.push_back(detail::json_rational(x, where));
        int m = 1;
        if (p.contains("mult")) {
            if (!p["mult"].is_number_integer() || p["mult"].get<int>() < 1)
                throw ParseError(where + ": 'mult' must be a positive integer");
            m = p["mult"].get<int>();
        }
        coords.push_back(std::move(c));
        mults.push_back(m);
    }

    if (doc.contains("transform")) {
        const auto& t = doc["transform"];
        if (!t.is_array() || static_cast<int>(t.size()) != n + 1) throw ParseError("'transform' must be an (n+1)x(n+1) matrix");
        ExactMatrix a(n + 1, n + 1);
        for (int r = 0; r <= n; ++r) {
            if (!t[r].is_array() || static_cast<int>(t[r].size()) != n + 1)
                throw ParseError("'transform' must be an (n+1)x(n+1) matrix");
            for (int c = 0; c <= n; ++c) a(r, c) = detail::json_rational(t[r][c], "transform");
        }
        try {
            coords = change_coordinates(coords, a);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }

    SchemeFile out;
    for (const auto& c : coords) {
        bool zero = true;
        for (const auto& x : c) zero = zero && x == 0;
        if (zero) throw ParseError("the zero vector is not a projective point");
    }
    try {
        out.scheme = FatPointScheme::from_coords(n, coords, mults);
    } catch (const CoordinateError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    if (doc.contains("label")) out.label = doc["label"].get<std::string>();
    if (doc.contains("comment")) out.comment = doc["comment"].get<std::string>();
    if (doc.contains("expected")) {
        const auto& e = doc["expected"];
        if (!e.is_object()) throw ParseError("'expected' must be an object");
        if (e.contains("hf")) out.expected.hf = detail::json_table(e["hf"], "expected.hf");
        if (e.contains("omega"))
            out.expected.omega = detail::json_keyed<std::vector<long long>>(e["omega"], "expected.omega", detail::json_table);
        if (e.contains("relative"))
            out.expected.relative =
                detail::json_keyed<std::vector<long long>>(e["relative"], "expected.relative", detail::json_table);
        auto as_int = [](const nlohmann::json& v, const std::string& where) {
            if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
            return v.get<int>();
        };
        if (e.contains("ri")) out.expected.ri = detail::json_keyed<int>(e["ri"], "expected.ri", as_int);
        if (e.contains("relative_ri"))
            out.expected.relative_ri = detail::json_keyed<int>(e["relative_ri"], "expected.relative_ri", as_int);
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        static const char* known[] = {"n", "points", "label", "comment", "transform", "expected"};
        bool seen = false;
        for (const char* k2 : known) seen = seen || it.key() == k2;
        if (!seen) out.extra[it.key()] = it.value();
    }
    return out;
}

inline SchemeFile read_scheme_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scheme_json(buf.str());
}

// A table matches a printed prefix when every printed value agrees and the
// last printed value is the Hilbert polynomial.
inline bool matches_printed(const HFTable& t, const std::vector<long long>& printed)
{
    for (std::size_t i = 0; i < printed.size(); ++i)
        if (t.at(static_cast<long long>(i)) != printed[i]) return false;
    return t.hp == printed.back();
}

inline std::string join(const std::vector<long long>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

}  // namespace kahler
