#pragma once

// Exact scalars and dense matrices over Q: rank, kernel dimension, kernel
// basis, and an incremental fraction-free echelon used by the scan engines.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kahler {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a", "-a" or "a/b" into a canonical rational. Throws on bad input.
inline Rational parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational");
    std::size_t slash = s.find('/');
    auto check_int = [](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false))
        throw std::invalid_argument("malformed rational: " + text);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

// Binomial coefficient with C(a, b) = 0 whenever b < 0 or a < b (including a < 0).
inline long long binomial(long long a, long long b)
{
    if (b < 0 || a < b || a < 0) return 0;
    if (b > a - b) b = a - b;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    ExactMatrix(std::initializer_list<std::initializer_list<Rational>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        entries_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix");
            for (const auto& x : row) entries_.push_back(x);
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    ExactMatrix transpose() const
    {
        ExactMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    void append_row(const std::vector<Rational>& row)
    {
        if (rows_ == 0 && entries_.empty()) cols_ = row.size();
        if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
        entries_.insert(entries_.end(), row.begin(), row.end());
        ++rows_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

// Multiplies a rational row by the lcm of its denominators.
inline std::vector<Integer> clear_denominators(const std::vector<Rational>& row)
{
    Integer l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].get_num() * (l / row[i].get_den());
    return out;
}

// Fraction-free Bareiss elimination with partial pivoting on magnitude.
inline std::size_t rank(const ExactMatrix& m)
{
    const std::size_t R = m.rows(), C = m.cols();
    if (R == 0 || C == 0) return 0;
    std::vector<std::vector<Integer>> a(R);
    for (std::size_t r = 0; r < R; ++r) {
        std::vector<Rational> row(C);
        for (std::size_t c = 0; c < C; ++c) row[c] = m(r, c);
        a[r] = clear_denominators(row);
    }
    Integer prev = 1;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < C && rk < R; ++c) {
        std::size_t best = R;
        for (std::size_t r = rk; r < R; ++r) {
            if (a[r][c] == 0) continue;
            if (best == R || abs(a[r][c]) > abs(a[best][c])) best = r;
        }
        if (best == R) continue;
        std::swap(a[rk], a[best]);
        const Integer& p = a[rk][c];
        for (std::size_t r = rk + 1; r < R; ++r) {
            const Integer f = a[r][c];
            for (std::size_t j = c + 1; j < C; ++j) {
                a[r][j] = p * a[r][j] - f * a[rk][j];
                mpz_divexact(a[r][j].get_mpz_t(), a[r][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[r][c] = 0;
        }
        prev = p;
        ++rk;
    }
    return rk;
}

inline std::size_t kernel_dimension(const ExactMatrix& m)
{
    return m.cols() - rank(m);
}

// Plain rational Gaussian elimination; kept as an independent reference.
inline std::size_t rank_gauss(const ExactMatrix& m)
{
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Rational>> a(R, std::vector<Rational>(C));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) a[r][c] = m(r, c);
    std::size_t rk = 0;
    for (std::size_t c = 0; c < C && rk < R; ++c) {
        std::size_t piv = R;
        for (std::size_t r = rk; r < R; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv == R) continue;
        std::swap(a[rk], a[piv]);
        for (std::size_t r = rk + 1; r < R; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rk][c];
            for (std::size_t j = c; j < C; ++j) a[r][j] -= f * a[rk][j];
        }
        ++rk;
    }
    return rk;
}

// Basis of {x : M x = 0}, one vector per free column of the reduced row echelon form.
inline std::vector<std::vector<Rational>> kernel_basis(const ExactMatrix& m)
{
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Rational>> a(R, std::vector<Rational>(C));
    for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c) a[r][c] = m(r, c);
    std::vector<std::size_t> pivot_cols;
    std::size_t rk = 0;
    for (std::size_t c = 0; c < C && rk < R; ++c) {
        std::size_t piv = R;
        for (std::size_t r = rk; r < R; ++r)
            if (a[r][c] != 0) { piv = r; break; }
        if (piv == R) continue;
        std::swap(a[rk], a[piv]);
        Rational inv = 1 / a[rk][c];
        for (std::size_t j = c; j < C; ++j) a[rk][j] *= inv;
        for (std::size_t r = 0; r < R; ++r) {
            if (r == rk || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t j = c; j < C; ++j) a[r][j] -= f * a[rk][j];
        }
        pivot_cols.push_back(c);
        ++rk;
    }
    std::vector<bool> is_pivot(C, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental row echelon over Z. Rows are kept primitive with a positive
// pivot; inserting a vector reduces it only until its leading column is free.
class IntEchelon {
public:
    explicit IntEchelon(std::size_t cols) : cols_(cols), by_pivot_(cols, npos) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<Integer>& row(std::size_t i) const { return rows_[i]; }
    std::size_t pivot(std::size_t i) const { return pivots_[i]; }

    // Returns the pivot column of the new row, or nullopt if v is dependent.
    std::optional<std::size_t> insert(std::vector<Integer> v)
    {
        if (v.size() != cols_) throw std::invalid_argument("echelon: length mismatch");
        std::size_t steps = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (v[c] == 0) continue;
            std::size_t idx = by_pivot_[c];
            if (idx == npos) {
                make_primitive(v, c);
                by_pivot_[c] = rows_.size();
                rows_.push_back(std::move(v));
                pivots_.push_back(c);
                return c;
            }
            const std::vector<Integer>& r = rows_[idx];
            Integer g;
            mpz_gcd(g.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
            Integer a = r[c] / g, b = v[c] / g;
            for (std::size_t j = c; j < cols_; ++j) {
                if (r[j] == 0) {
                    if (a != 1) v[j] *= a;
                } else {
                    v[j] = a * v[j] - b * r[j];
                }
            }
            if (++steps % 8 == 0) make_primitive(v, c + 1);
        }
        return std::nullopt;
    }

    std::optional<std::size_t> insert(const std::vector<Rational>& v)
    {
        return insert(clear_denominators(v));
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void make_primitive(std::vector<Integer>& v, std::size_t from)
    {
        Integer g = 0;
        for (std::size_t j = from; j < v.size(); ++j) {
            if (v[j] == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[j].get_mpz_t());
            if (g == 1) break;
        }
        bool flip = false;
        for (std::size_t j = from; j < v.size(); ++j)
            if (v[j] != 0) { flip = v[j] < 0; break; }
        if (g > 1 || flip) {
            if (flip) g = -g;
            for (std::size_t j = from; j < v.size(); ++j)
                if (v[j] != 0) mpz_divexact(v[j].get_mpz_t(), v[j].get_mpz_t(), g.get_mpz_t());
        }
    }

    std::size_t cols_;
    std::vector<std::size_t> by_pivot_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace kahler
