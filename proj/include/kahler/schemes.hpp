#pragma once

// Fat point schemes W = m_1 P_1 + ... + m_s P_s in P^n. Membership in the
// ideal is tested through Taylor coefficients ("jets") at each point in the
// affine chart X0 = 1; in characteristic zero F lies in P^m iff all jets of
// order < m vanish.

#include "exactla.hpp"
#include "polyring.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kahler {

// Raised when a point lies on the hyperplane X0 = 0.
class CoordinateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ProjPoint {
public:
    ProjPoint() = default;
    // Scales so that the first nonzero coordinate is 1.
    explicit ProjPoint(std::vector<Rational> coords) : coords_(std::move(coords))
    {
        std::size_t lead = 0;
        while (lead < coords_.size() && coords_[lead] == 0) ++lead;
        if (lead == coords_.size()) throw std::invalid_argument("zero vector is not a projective point");
        Rational inv = 1 / coords_[lead];
        for (auto& c : coords_) c *= inv;
    }

    int n() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<Rational>& coords() const { return coords_; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    bool operator==(const ProjPoint& o) const { return coords_ == o.coords_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ':';
            s += coords_[i].get_str();
        }
        return s + ")";
    }

private:
    std::vector<Rational> coords_;
};

class FatPointScheme {
public:
    FatPointScheme() = default;
    FatPointScheme(int n, std::vector<ProjPoint> points, std::vector<int> mults)
        : n_(n), points_(std::move(points)), mults_(std::move(mults))
    {
        if (n_ < 1) throw std::invalid_argument("ambient dimension must be at least 1");
        if (points_.empty()) throw std::invalid_argument("scheme needs at least one point");
        if (points_.size() != mults_.size()) throw std::invalid_argument("points and multiplicities differ in length");
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (points_[j].n() != n_) throw std::invalid_argument("point " + points_[j].to_string() + " has wrong arity");
            if (points_[j][0] == 0)
                throw CoordinateError("point " + points_[j].to_string() +
                                      " lies on X0 = 0; all points must satisfy X0 != 0 (apply a coordinate change)");
            if (mults_[j] < 1) throw std::invalid_argument("multiplicities must be positive");
            for (std::size_t k = 0; k < j; ++k)
                if (points_[k] == points_[j]) throw std::invalid_argument("repeated point " + points_[j].to_string());
        }
    }

    // Builds from raw homogeneous coordinates.
    static FatPointScheme from_coords(int n, const std::vector<std::vector<Rational>>& coords, std::vector<int> mults)
    {
        std::vector<ProjPoint> pts;
        for (const auto& c : coords) {
            if (static_cast<int>(c.size()) != n + 1) throw std::invalid_argument("point has wrong arity");
            if (c[0] == 0) {
                std::string s;
                for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ":" : "") + c[i].get_str();
                throw CoordinateError("point (" + s +
                                      ") lies on X0 = 0; all points must satisfy X0 != 0 (apply a coordinate change)");
            }
            pts.emplace_back(c);
        }
        return FatPointScheme(n, std::move(pts), std::move(mults));
    }

    int n() const { return n_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<ProjPoint>& points() const { return points_; }
    const std::vector<int>& mults() const { return mults_; }
    const ProjPoint& point(std::size_t j) const { return points_[j]; }
    int mult(std::size_t j) const { return mults_[j]; }

    int max_mult() const
    {
        int m = 0;
        for (int x : mults_) m = std::max(m, x);
        return m;
    }
    int mult_sum() const
    {
        int t = 0;
        for (int x : mults_) t += x;
        return t;
    }
    bool is_reduced() const { return max_mult() == 1; }
    bool is_equimultiple() const
    {
        for (int x : mults_)
            if (x != mults_[0]) return false;
        return true;
    }

    // deg W = sum of C(m_j + n - 1, n).
    long long degree() const
    {
        long long d = 0;
        for (int m : mults_) d += binomial(m + n_ - 1, n_);
        return d;
    }

    // Same support, new multiplicities; points with multiplicity 0 are dropped.
    FatPointScheme with_mults(const std::vector<int>& mults) const
    {
        if (mults.size() != points_.size()) throw std::invalid_argument("multiplicity list length mismatch");
        std::vector<ProjPoint> pts;
        std::vector<int> ms;
        for (std::size_t j = 0; j < mults.size(); ++j) {
            if (mults[j] < 0) throw std::invalid_argument("negative multiplicity");
            if (mults[j] == 0) continue;
            pts.push_back(points_[j]);
            ms.push_back(mults[j]);
        }
        if (pts.empty()) throw std::invalid_argument("scheme would be empty");
        return FatPointScheme(n_, std::move(pts), std::move(ms));
    }

    FatPointScheme support() const { return with_mults(std::vector<int>(size(), 1)); }
    FatPointScheme fattening() const
    {
        std::vector<int> ms(mults_);
        for (int& m : ms) ++m;
        return with_mults(ms);
    }
    FatPointScheme scaled(int nu) const
    {
        std::vector<int> ms(mults_);
        for (int& m : ms) m *= nu;
        return with_mults(ms);
    }

private:
    int n_ = 0;
    std::vector<ProjPoint> points_;
    std::vector<int> mults_;
};

// Applies an invertible (n+1)x(n+1) matrix to homogeneous coordinates.
inline std::vector<std::vector<Rational>> change_coordinates(const std::vector<std::vector<Rational>>& coords,
                                                             const ExactMatrix& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("coordinate change must be square");
    if (rank(a) != a.rows()) throw std::invalid_argument("coordinate change is not invertible");
    std::vector<std::vector<Rational>> out;
    for (const auto& c : coords) {
        if (c.size() != a.cols()) throw std::invalid_argument("point arity does not match coordinate change");
        std::vector<Rational> y(a.rows());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t k = 0; k < a.cols(); ++k) y[r] += a(r, k) * c[k];
        out.push_back(std::move(y));
    }
    return out;
}

struct HFTable {
    std::vector<long long> values;
    int stable_from = 0;
    long long hp = 0;
    // False when the range was cut off before stabilization was certified.
    bool certified = true;

    long long at(long long i) const
    {
        if (i < 0) return 0;
        if (i < static_cast<long long>(values.size())) return values[i];
        if (!certified) throw std::out_of_range("value beyond uncertified table");
        return hp;
    }
};

inline HFTable make_table(std::vector<long long> values, bool certified = true)
{
    HFTable t;
    t.values = std::move(values);
    t.certified = certified;
    if (t.values.empty()) return t;
    t.hp = t.values.back();
    int r = static_cast<int>(t.values.size()) - 1;
    while (r > 0 && t.values[r - 1] == t.hp) --r;
    t.stable_from = r;
    return t;
}

// Coordinates of the jet space: Taylor coefficients of order < m_j at each
// P_j (the low block), optionally followed by those of order exactly m_j
// (the top block).
class JetLayout {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    struct Coord {
        int point;
        std::vector<int> beta;
        int order;
    };

    JetLayout(const FatPointScheme& w, bool with_top) : n_(w.n())
    {
        for (std::size_t j = 0; j < w.size(); ++j)
            for (int t = 0; t < w.mult(j); ++t) add_order(static_cast<int>(j), t);
        low_ = coords_.size();
        if (with_top)
            for (std::size_t j = 0; j < w.size(); ++j) add_order(static_cast<int>(j), w.mult(j));
        down_.assign(n_ + 1, std::vector<std::size_t>(coords_.size(), npos));
        for (std::size_t idx = 0; idx < coords_.size(); ++idx) {
            for (int i = 1; i <= n_; ++i) {
                const auto& c = coords_[idx];
                if (c.beta[i - 1] == 0) continue;
                std::vector<int> b = c.beta;
                --b[i - 1];
                down_[i][idx] = index(c.point, b);
            }
        }
    }

    int n() const { return n_; }
    std::size_t size() const { return coords_.size(); }
    std::size_t low_size() const { return low_; }
    const Coord& coord(std::size_t idx) const { return coords_[idx]; }
    std::size_t index(int point, const std::vector<int>& beta) const
    {
        auto it = lookup_.find({point, beta});
        return it == lookup_.end() ? npos : it->second;
    }
    // Index of beta - e_i for variable i in 1..n, or npos.
    std::size_t down(int i, std::size_t idx) const { return down_[i][idx]; }

private:
    void add_order(int point, int order)
    {
        std::vector<int> b(n_, 0);
        enumerate(point, order, b, 0, order);
    }
    void enumerate(int point, int order, std::vector<int>& b, int var, int left)
    {
        if (var == n_ - 1) {
            b[var] = left;
            lookup_.emplace(std::make_pair(point, b), coords_.size());
            coords_.push_back({point, b, order});
            return;
        }
        for (int k = left; k >= 0; --k) {
            b[var] = k;
            enumerate(point, order, b, var + 1, left - k);
        }
        b[var] = 0;
    }

    int n_;
    std::size_t low_ = 0;
    std::vector<Coord> coords_;
    std::map<std::pair<int, std::vector<int>>, std::size_t> lookup_;
    std::vector<std::vector<std::size_t>> down_;
};

// Jets of a form F at the points of the layout (chart X0 = 1).
inline std::vector<Rational> jets_of(const HomogPoly& f, const FatPointScheme& w, const JetLayout& layout)
{
    std::vector<Rational> out(layout.size());
    for (std::size_t idx = 0; idx < layout.size(); ++idx) {
        const auto& c = layout.coord(idx);
        const auto& p = w.point(c.point);
        Rational sum = 0;
        for (const auto& [mono, coef] : f.terms()) {
            Rational t = coef;
            for (int i = 1; i <= w.n() && t != 0; ++i) {
                int a = mono.exps[i], b = c.beta[i - 1];
                if (a < b) {
                    t = 0;
                    break;
                }
                t *= static_cast<long>(binomial(a, b));
                for (int k = 0; k < a - b; ++k) t *= p[i];
            }
            sum += t;
        }
        out[idx] = sum;
    }
    return out;
}

// Multiplication by the affine coordinate x_i on jet vectors, scaled by
// the common denominator of the i-th coordinates so that it stays integral.
class JetMultiplier {
public:
    JetMultiplier(const FatPointScheme& w, const JetLayout& layout) : layout_(layout), n_(w.n())
    {
        scale_.assign(n_ + 1, Integer(1));
        shift_.assign(n_ + 1, std::vector<Integer>(w.size()));
        for (int i = 1; i <= n_; ++i) {
            Integer l = 1;
            for (const auto& p : w.points()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p[i].get_den_mpz_t());
            scale_[i] = l;
            for (std::size_t j = 0; j < w.size(); ++j) {
                Rational v = w.point(j)[i] * Rational(l);
                shift_[i][j] = v.get_num();
            }
        }
    }

    std::vector<Integer> apply(int i, const std::vector<Integer>& v) const
    {
        std::vector<Integer> out(v.size());
        for (std::size_t idx = 0; idx < v.size(); ++idx) {
            const Integer& pv = shift_[i][layout_.coord(idx).point];
            if (v[idx] != 0 && pv != 0) out[idx] = pv * v[idx];
            std::size_t d = layout_.down(i, idx);
            if (d != JetLayout::npos && v[d] != 0) out[idx] += scale_[i] * v[d];
        }
        return out;
    }

private:
    const JetLayout& layout_;
    int n_;
    std::vector<Integer> scale_;
    std::vector<std::vector<Integer>> shift_;
};

// Degree-by-degree span of the jets of S_k. The low block measures HF_W; with
// the top block the total measures HF_V for the fattening V, and the rows
// whose pivot lies in the top block span the jets of (I_W)_k.
struct JetScan {
    std::vector<long long> hf_low;
    std::vector<long long> hf_all;
    // Top-block parts of the rows with a top pivot, in insertion order.
    std::vector<std::vector<Integer>> top_rows;
    // Number of such rows present after degree k.
    std::vector<std::size_t> top_count;

    int last_degree() const { return static_cast<int>(hf_low.size()) - 1; }
    long long hf_w(long long k) const
    {
        if (k < 0) return 0;
        return hf_low[std::min<long long>(k, last_degree())];
    }
    long long hf_v(long long k) const
    {
        if (k < 0) return 0;
        return hf_all[std::min<long long>(k, last_degree())];
    }
    std::size_t z_count(long long k) const
    {
        if (k < 0) return 0;
        return top_count[std::min<long long>(k, last_degree())];
    }
};

inline JetScan jet_scan(const FatPointScheme& w, bool with_top)
{
    JetLayout layout(w, with_top);
    JetMultiplier mul(w, layout);
    IntEchelon ech(layout.size());
    const std::size_t low = layout.low_size();
    const int cap = w.mult_sum() + (with_top ? static_cast<int>(w.size()) : 0) + static_cast<int>(w.size()) + w.n();

    JetScan out;
    long long nlow = 0;
    std::vector<std::vector<Integer>> fresh;
    auto record = [&](const std::vector<Integer>& row, std::size_t piv) {
        fresh.push_back(row);
        if (piv < low) {
            ++nlow;
        } else {
            out.top_rows.emplace_back(row.begin() + low, row.end());
        }
    };

    std::vector<Integer> one(layout.size());
    for (std::size_t idx = 0; idx < layout.size(); ++idx)
        if (layout.coord(idx).order == 0) one[idx] = 1;
    if (auto piv = ech.insert(one)) record(ech.row(ech.rank() - 1), *piv);
    out.hf_low.push_back(nlow);
    out.hf_all.push_back(static_cast<long long>(ech.rank()));
    out.top_count.push_back(out.top_rows.size());

    for (int k = 1; !fresh.empty(); ++k) {
        if (k > cap + 1) throw std::logic_error("jet scan exceeded its degree cap");
        std::vector<std::vector<Integer>> prev;
        prev.swap(fresh);
        for (const auto& b : prev)
            for (int i = 1; i <= w.n(); ++i)
                if (auto piv = ech.insert(mul.apply(i, b))) record(ech.row(ech.rank() - 1), *piv);
        out.hf_low.push_back(nlow);
        out.hf_all.push_back(static_cast<long long>(ech.rank()));
        out.top_count.push_back(out.top_rows.size());
    }
    return out;
}

inline HFTable hf_table(const FatPointScheme& w)
{
    JetScan s = jet_scan(w, false);
    return make_table(s.hf_low);
}

inline long long hilbert_function(const FatPointScheme& w, long long d)
{
    if (d < 0) return 0;
    return hf_table(w).at(d);
}

inline int regularity_index(const FatPointScheme& w)
{
    HFTable t = hf_table(w);
    if (t.stable_from > w.mult_sum() + static_cast<int>(w.size()) + w.n())
        throw std::logic_error("regularity index exceeds its cap");
    return t.stable_from;
}

inline long long degree(const FatPointScheme& w)
{
    return w.degree();
}

// Jet-evaluation matrix of S_d: one row per jet of order < m_j, one column per monomial.
inline ExactMatrix jet_matrix(const FatPointScheme& w, int d)
{
    JetLayout layout(w, false);
    DegreeSlice slice(w.n(), d);
    ExactMatrix m(layout.size(), slice.size());
    for (std::size_t c = 0; c < slice.size(); ++c) {
        std::vector<Rational> col = jets_of(HomogPoly::monomial(slice[c]), w, layout);
        for (std::size_t r = 0; r < layout.size(); ++r) m(r, c) = col[r];
    }
    return m;
}

// Basis of (I_W)_d with primitive integral coefficients.
inline std::vector<HomogPoly> ideal_slice(const FatPointScheme& w, int d)
{
    if (d < 0) throw std::invalid_argument("ideal_slice: negative degree");
    DegreeSlice slice(w.n(), d);
    std::vector<HomogPoly> out;
    for (auto& v : kernel_basis(jet_matrix(w, d))) {
        std::vector<Integer> iv = clear_denominators(v);
        Integer g = 0;
        for (const auto& x : iv) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        std::vector<Rational> q(iv.size());
        for (std::size_t i = 0; i < iv.size(); ++i) q[i] = Rational(iv[i] / g);
        out.push_back(HomogPoly::from_coefficients(slice, q));
    }
    return out;
}

// Least degree with (I_W)_d != 0.
inline int initial_degree(const FatPointScheme& w)
{
    HFTable t = hf_table(w);
    for (int d = 0;; ++d)
        if (t.at(d) < binomial(w.n() + d, w.n())) return d;
}

// dim (M * span(basis))_d inside S_d, for a basis of a degree d-1 slice.
inline std::size_t maximal_ideal_product_dim(const std::vector<HomogPoly>& basis, int n, int d)
{
    DegreeSlice slice(n, d);
    IntEchelon ech(slice.size());
    for (const auto& g : basis)
        for (int i = 0; i <= n; ++i) {
            ech.insert(multiply(HomogPoly::variable(n, i), g).coefficients(slice));
            if (ech.rank() == slice.size()) return ech.rank();
        }
    return ech.rank();
}

// Number of minimal generators of I_W in each degree <= up_to.
inline std::map<int, int> generator_degrees(const FatPointScheme& w, int up_to)
{
    const int alpha = initial_degree(w);
    if (up_to < alpha) throw std::invalid_argument("generator_degrees: bound below the initial degree");
    std::map<int, int> out;
    std::vector<HomogPoly> prev;
    for (int d = alpha; d <= up_to; ++d) {
        std::vector<HomogPoly> cur = ideal_slice(w, d);
        std::size_t below = d == alpha ? 0 : maximal_ideal_product_dim(prev, w.n(), d);
        long long count = static_cast<long long>(cur.size()) - static_cast<long long>(below);
        if (count > 0) out[d] = static_cast<int>(count);
        prev = std::move(cur);
    }
    return out;
}

}  // namespace kahler
