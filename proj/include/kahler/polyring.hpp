#pragma once

// Homogeneous polynomials in X0..Xn over Q.

#include "exactla.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kahler {

struct Monomial {
    std::vector<int> exps;

    Monomial() = default;
    explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}

    int nvars() const { return static_cast<int>(exps.size()); }
    int degree() const
    {
        int d = 0;
        for (int e : exps) d += e;
        return d;
    }
    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return exps != o.exps; }
};

// Degree-reverse-lexicographic comparison: -1, 0 or 1.
inline int grevlex_compare(const Monomial& a, const Monomial& b)
{
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = a.nvars() - 1; i >= 0; --i) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? 1 : -1;
    }
    return 0;
}

// Orders monomials greatest first.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

inline Monomial operator*(const Monomial& a, const Monomial& b)
{
    if (a.nvars() != b.nvars()) throw std::invalid_argument("monomial arity mismatch");
    std::vector<int> e(a.exps);
    for (int i = 0; i < a.nvars(); ++i) e[i] += b.exps[i];
    return Monomial(std::move(e));
}

// The C(n+d, n) monomials of degree d in X0..Xn, greatest first.
class DegreeSlice {
public:
    DegreeSlice(int n, int d) : n_(n), degree_(d)
    {
        if (n < 0 || d < 0) return;
        std::vector<int> e(n + 1, 0);
        enumerate(e, 0, d);
        std::sort(monomials_.begin(), monomials_.end(), MonomialOrder{});
        for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
    }

    int n() const { return n_; }
    int degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    std::size_t index_of(const Monomial& m) const
    {
        auto it = index_.find(m);
        if (it == index_.end()) throw std::out_of_range("monomial not in slice");
        return it->second;
    }

private:
    void enumerate(std::vector<int>& e, int var, int left)
    {
        if (var == n_) {
            e[var] = left;
            monomials_.emplace_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[var] = k;
            enumerate(e, var + 1, left - k);
        }
        e[var] = 0;
    }

    int n_;
    int degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t, MonomialOrder> index_;
};

class HomogPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    HomogPoly() = default;
    // Zero polynomial of the given degree in X0..Xn.
    HomogPoly(int n, int degree) : n_(n), degree_(degree) {}

    static HomogPoly monomial(const Monomial& m, const Rational& c = 1)
    {
        HomogPoly p(m.nvars() - 1, m.degree());
        if (c != 0) p.terms_.emplace(m, c);
        return p;
    }
    static HomogPoly variable(int n, int i)
    {
        std::vector<int> e(n + 1, 0);
        e.at(i) = 1;
        return monomial(Monomial(std::move(e)));
    }

    int n() const { return n_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (m.nvars() != n_ + 1 || m.degree() != degree_)
            throw std::invalid_argument("term does not match polynomial degree/arity");
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const HomogPoly& o) const
    {
        return n_ == o.n_ && degree_ == o.degree_ && terms_ == o.terms_;
    }
    bool operator!=(const HomogPoly& o) const { return !(*this == o); }

    std::vector<Rational> coefficients(const DegreeSlice& slice) const
    {
        if (slice.degree() != degree_ || slice.n() != n_) throw std::invalid_argument("slice mismatch");
        std::vector<Rational> v(slice.size());
        for (const auto& [m, c] : terms_) v[slice.index_of(m)] = c;
        return v;
    }

    static HomogPoly from_coefficients(const DegreeSlice& slice, const std::vector<Rational>& v)
    {
        HomogPoly p(slice.n(), slice.degree());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) p.terms_.emplace(slice[i], v[i]);
        return p;
    }

private:
    int n_ = 0;
    int degree_ = 0;
    Terms terms_;
};

inline HomogPoly operator+(const HomogPoly& f, const HomogPoly& g)
{
    if (f.n() != g.n() || f.degree() != g.degree()) throw std::invalid_argument("sum of unlike polynomials");
    HomogPoly r = f;
    for (const auto& [m, c] : g.terms()) r.add_term(m, c);
    return r;
}

inline HomogPoly operator*(const Rational& a, const HomogPoly& f)
{
    HomogPoly r(f.n(), f.degree());
    if (a == 0) return r;
    for (const auto& [m, c] : f.terms()) r.add_term(m, a * c);
    return r;
}

inline HomogPoly operator-(const HomogPoly& f, const HomogPoly& g)
{
    return f + Rational(-1) * g;
}

inline HomogPoly multiply(const HomogPoly& f, const HomogPoly& g)
{
    if (f.n() != g.n()) throw std::invalid_argument("product of polynomials in different rings");
    HomogPoly r(f.n(), f.degree() + g.degree());
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) r.add_term(a * b, ca * cb);
    return r;
}

inline HomogPoly operator*(const HomogPoly& f, const HomogPoly& g)
{
    return multiply(f, g);
}

inline HomogPoly partial(const HomogPoly& f, int i)
{
    if (i < 0 || i > f.n()) throw std::out_of_range("partial: variable index out of range");
    HomogPoly r(f.n(), f.degree() > 0 ? f.degree() - 1 : 0);
    if (f.degree() == 0) return r;
    for (const auto& [m, c] : f.terms()) {
        if (m.exps[i] == 0) continue;
        Monomial d = m;
        d.exps[i] -= 1;
        r.add_term(d, c * m.exps[i]);
    }
    return r;
}

inline Rational evaluate(const HomogPoly& f, const std::vector<Rational>& p)
{
    if (static_cast<int>(p.size()) != f.n() + 1) throw std::invalid_argument("evaluate: arity mismatch");
    Rational sum = 0;
    for (const auto& [m, c] : f.terms()) {
        Rational t = c;
        for (int i = 0; i <= f.n(); ++i)
            for (int k = 0; k < m.exps[i]; ++k) t *= p[i];
        sum += t;
    }
    return sum;
}

inline std::string to_string(const HomogPoly& f)
{
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rational a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out << '-';
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        bool constant = m.degree() == 0;
        bool wrote = false;
        if (a != 1 || constant) {
            out << a.get_str();
            wrote = true;
        }
        for (int i = 0; i < m.nvars(); ++i) {
            if (m.exps[i] == 0) continue;
            if (wrote) out << '*';
            out << 'X' << i;
            if (m.exps[i] > 1) out << '^' << m.exps[i];
            wrote = true;
        }
    }
    return out.str();
}

// Parses text such as "3*X0^2 - 4*X0*X1 + X1^2" as a form in X0..Xn.
// The zero polynomial takes degree zero_degree.
inline HomogPoly parse_poly(const std::string& text, int n, int zero_degree = 0)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("polynomial parse error at " + std::to_string(pos) + ": " + what);
    };
    auto read_uint = [&]() -> std::string {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return text.substr(start, pos - start);
    };

    std::vector<std::pair<Monomial, Rational>> terms;
    skip();
    if (pos == text.size()) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        Rational coeff = 1;
        std::vector<int> e(n + 1, 0);
        bool have_factor = false;
        while (true) {
            skip();
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::string num = read_uint();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    num += "/" + read_uint();
                }
                coeff *= parse_rational(num);
            } else if (pos < text.size() && text[pos] == 'X') {
                ++pos;
                int var = std::stoi(read_uint());
                if (var > n) fail("variable X" + std::to_string(var) + " out of range");
                int power = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    skip();
                    power = std::stoi(read_uint());
                }
                e[var] += power;
            } else {
                fail("expected coefficient or variable");
            }
            have_factor = true;
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!have_factor) fail("empty term");
        terms.emplace_back(Monomial(std::move(e)), coeff * sign);
    }
    int degree = -1;
    for (const auto& [m, c] : terms) {
        if (c == 0) continue;
        if (degree < 0) degree = m.degree();
        else if (degree != m.degree()) throw std::invalid_argument("polynomial is not homogeneous");
    }
    HomogPoly p(n, degree < 0 ? zero_degree : degree);
    for (const auto& [m, c] : terms)
        if (c != 0) p.add_term(m, c);
    return p;
}

}  // namespace kahler
