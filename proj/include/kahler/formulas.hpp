#pragma once

// Closed forms and bounds for Hilbert functions of Kaehler differential
// modules, each of which can be checked against OmegaEngine.

#include "exactla.hpp"
#include "kaehler.hpp"
#include "polyring.hpp"
#include "schemes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kahler {

// True when both tables agree in every degree (tails compared through hp).
inline bool same_values(const HFTable& a, const HFTable& b)
{
    if (a.hp != b.hp) return false;
    std::size_t len = std::max(a.values.size(), b.values.size()) + 1;
    for (std::size_t i = 0; i < len; ++i)
        if (a.at(i) != b.at(i)) return false;
    return true;
}

// ---------------------------------------------------------------- P^1

struct P1SchemeSpec {
    std::vector<Rational> roots;
    std::vector<int> mults;

    P1SchemeSpec(std::vector<Rational> r, std::vector<int> m) : roots(std::move(r)), mults(std::move(m))
    {
        if (roots.empty()) throw std::invalid_argument("P1 spec needs at least one root");
        if (roots.size() != mults.size()) throw std::invalid_argument("roots and multiplicities differ in length");
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (mults[i] < 1) throw std::invalid_argument("multiplicities must be positive");
            for (std::size_t j = 0; j < i; ++j)
                if (roots[i] == roots[j]) throw std::invalid_argument("roots must be distinct");
        }
    }

    int s() const { return static_cast<int>(roots.size()); }
    int mu() const { return std::accumulate(mults.begin(), mults.end(), 0); }

    // The scheme cut out by prod (X1 - a_i X0)^{m_i}.
    FatPointScheme scheme() const
    {
        std::vector<std::vector<Rational>> pts;
        for (const auto& a : roots) pts.push_back({Rational(1), a});
        return FatPointScheme::from_coords(1, pts, mults);
    }
};

inline int p1_ri(const P1SchemeSpec& spec)
{
    return spec.mu() + spec.s() - 1;
}

// Omega^1: 0 2 4 .. 2(mu-1) 2mu-1 2mu-2 .. 2mu-s;  Omega^2: 0 0 1 .. mu-1 mu-2 .. mu-s.
// Relative Omega^1: 0 1 .. mu-1 mu-1 mu-2 .. mu-s; relative Omega^2 vanishes.
inline HFTable p1_hf(const P1SchemeSpec& spec, int m, bool relative = false)
{
    if (m != 1 && m != 2) throw std::invalid_argument("p1_hf: form degree must be 1 or 2");
    const long long mu = spec.mu(), s = spec.s();
    const long long last = mu + s;
    std::vector<long long> v;
    for (long long i = 0; i <= last; ++i) {
        long long x;
        if (relative) {
            if (m == 2) x = 0;
            else if (i < mu) x = i;
            else x = std::max(2 * mu - 1 - i, mu - s);
        } else if (m == 1) {
            x = i < mu ? 2 * i : std::max(3 * mu - 1 - i, 2 * mu - s);
        } else {
            x = i <= mu ? std::max(i - 1, 0LL) : std::max(2 * mu - 1 - i, mu - s);
        }
        v.push_back(x);
    }
    return make_table(std::move(v));
}

// ---------------------------------------------------------------- bounds

struct HPBounds {
    long long lower = 0;
    long long upper = 0;
};

inline HPBounds hp_bounds(const FatPointScheme& w, int m, bool relative = false)
{
    if (m < 1 || m > w.n() + 1) throw std::invalid_argument("form degree out of range");
    const int n = w.n();
    const long long c = binomial(relative ? n : n + 1, m);
    HPBounds b;
    for (int mi : w.mults()) {
        b.lower += c * binomial(mi + n - 2, n);
        b.upper += c * binomial(mi + n - 1, n);
    }
    return b;
}

// Hilbert polynomial values fixed by a theorem, when one applies.
inline std::optional<long long> hp_exact_cases(const FatPointScheme& w, int m, bool relative = false)
{
    if (m < 1 || m > w.n() + 1) throw std::invalid_argument("form degree out of range");
    const int n = w.n();
    const long long s = static_cast<long long>(w.size());
    if (relative) {
        // Omega^1_rel = Omega^1 minus HF_X shifted; both polynomials equal deg X when reduced.
        if (w.is_reduced() && m == 1) return 0;
        return std::nullopt;
    }
    if (w.is_reduced()) return m == 1 ? s : 0;
    if (!w.is_equimultiple()) return std::nullopt;
    const long long nu = w.mult(0);
    if (m == n + 1) return s * binomial(nu + n - 2, n);
    if (n == 2 && m == 2) return (3 * nu * nu - nu - 2) * s / 2;
    return std::nullopt;
}

// No n+1 of the points lie on a hyperplane (fewer points: linearly independent).
inline bool general_position(const FatPointScheme& w)
{
    const int n = w.n();
    const std::size_t s = w.size();
    const std::size_t k = std::min<std::size_t>(s, n + 1);
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        ExactMatrix a(k, n + 1);
        for (std::size_t r = 0; r < k; ++r)
            for (int c = 0; c <= n; ++c) a(r, c) = w.point(idx[r])[c];
        if (rank(a) < k) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == s - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct RIBound {
    int fattening = 0;                  // from r_W and r_V
    std::optional<int> general;         // support in general position
    std::optional<int> reduced;         // reduced scheme
    int value = 0;                      // the least of the above
};

inline RIBound ri_bounds(const FatPointScheme& w, int m, bool relative = false)
{
    check_form_degree(w.n(), m, relative);
    const int n = w.n();
    const int r_w = regularity_index(w);
    const int r_v = regularity_index(w.fattening());
    RIBound b;
    b.fattening = std::min(std::max(r_w + m, r_v + m - 1), std::max(r_w + n, r_v + n - 1));
    b.value = b.fattening;
    if (general_position(w)) {
        std::vector<int> ms(w.mults());
        std::sort(ms.begin(), ms.end());
        const int top = ms.back() + (ms.size() > 1 ? ms[ms.size() - 2] : 0);
        const int q = (w.mult_sum() + static_cast<int>(w.size()) + n - 2) / n;
        b.general = std::min(std::max(top + m, q + m - 1), std::max(top + n, q + n - 1));
        b.value = std::min(b.value, *b.general);
    }
    if (w.is_reduced()) {
        b.reduced = relative ? 2 * r_w + m : std::min(2 * r_w + m, 2 * r_w + n);
        b.value = std::min(b.value, *b.reduced);
    }
    return b;
}

// ri(Omega^m) <= max{r_X + m, ri(Omega^1) + m - 1}; for m = n + 1 the value at m = n also bounds.
inline int ri_chain_bound(int r_x, int ri_omega1, int m)
{
    return std::max(r_x + m, ri_omega1 + m - 1);
}

// ---------------------------------------------------------------- hyperplane support

// Omega^{n+1}_W ~ R_Y(-n-1) for Y = sum (m_j - 1) P_j when the support lies on Z(H).
inline HFTable hyperplane_top_form(const FatPointScheme& w, const HomogPoly& h)
{
    if (h.n() != w.n() || h.degree() != 1 || h.is_zero())
        throw std::invalid_argument("hyperplane must be a nonzero linear form in X0..Xn");
    for (const auto& p : w.points())
        if (evaluate(h, p.coords()) != 0) throw std::invalid_argument("point " + p.to_string() + " is off the hyperplane");
    const int shift = w.n() + 1;
    std::vector<long long> v(shift, 0);
    if (w.is_reduced()) {
        v.push_back(0);
        return make_table(std::move(v));
    }
    std::vector<int> ms(w.mults());
    for (int& m : ms) --m;
    HFTable y = hf_table(w.with_mults(ms));
    for (long long x : y.values) v.push_back(x);
    return make_table(std::move(v));
}

// ---------------------------------------------------------------- conic support

// Determinant of the symmetric matrix of 2C; zero iff the conic is singular.
inline Rational conic_discriminant(const HomogPoly& c)
{
    if (c.n() != 2 || c.degree() != 2) throw std::invalid_argument("conic must be a quadratic form in X0, X1, X2");
    Rational a[3][3];
    for (const auto& [mono, coef] : c.terms()) {
        std::vector<int> vars;
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < mono.exps[i]; ++k) vars.push_back(i);
        if (vars[0] == vars[1]) a[vars[0]][vars[0]] += 2 * coef;
        else {
            a[vars[0]][vars[1]] += coef;
            a[vars[1]][vars[0]] += coef;
        }
    }
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

class ConicSchemeSpec {
public:
    // Points are reordered so that multiplicities increase.
    ConicSchemeSpec(HomogPoly conic, const FatPointScheme& w) : conic_(std::move(conic))
    {
        if (w.n() != 2) throw std::invalid_argument("conic schemes live in P^2");
        if (w.size() < 4) throw std::invalid_argument("conic formulas need at least 4 points");
        if (conic_discriminant(conic_) == 0) throw std::invalid_argument("conic is singular");
        std::vector<std::size_t> order(w.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return w.mult(a) < w.mult(b); });
        std::vector<ProjPoint> pts;
        std::vector<int> ms;
        for (auto j : order) {
            if (evaluate(conic_, w.point(j).coords()) != 0)
                throw std::invalid_argument("point " + w.point(j).to_string() + " is not on the conic");
            pts.push_back(w.point(j));
            ms.push_back(w.mult(j));
        }
        w_ = FatPointScheme(2, std::move(pts), std::move(ms));
    }

    const HomogPoly& conic() const { return conic_; }
    const FatPointScheme& scheme() const { return w_; }
    int s() const { return static_cast<int>(w_.size()); }
    int mu() const { return w_.mult_sum() + s(); }
    int rho() const { return w_.mult(s() - 1) + w_.mult(s() - 2); }
    bool equimultiple() const { return w_.is_equimultiple(); }
    int nu() const { return w_.mult(0); }

    // r_W = max{m_s + m_{s-1} - 1, floor(sum m_j / 2)}.
    int regularity_index() const { return std::max(rho() - 1, w_.mult_sum() / 2); }

private:
    HomogPoly conic_;
    FatPointScheme w_;
};

struct DeltaH {
    std::vector<long long> h;                // h_i
    std::vector<long long> delta;            // delta_i from the case tables
    std::vector<long long> delta_generators; // #(B_{nu-1})_{i-3} - h_i
};

// Correction term delta_i for equimultiple nu X on a conic, s points.
inline long long conic_delta(int s, int nu, long long i)
{
    long long d = 0;
    if (s == 4) {
        if (i == 2 * nu + 1) d += nu - 2;
    } else if (s == 5) {
        // The first correction sits at 2nu + 2; for nu = 2 every term vanishes.
        if (nu < 3) return 0;
        if (i == 2 * nu + 2) d += 1;
        if (nu % 2 == 1 && 2 * nu + 3 <= i && 2 * i <= 5 * nu + 1) d += 3;
        if (nu % 2 == 0 && 2 * nu + 3 <= i && 2 * i < 5 * nu + 2) d += 3;
        if (nu % 2 == 0 && 2 * i == 5 * nu + 2) d += 2;
    } else if (s % 2 == 0) {
        for (int k = 2; k <= nu - 1; ++k)
            if (i == 2 * nu - 2 * k + static_cast<long long>(k) * s / 2 + 1) d += 1;
    } else {
        for (int k = 1; k <= (nu - 1) / 2; ++k)
            if (i == 2 * nu + static_cast<long long>(k) * (s - 4) + 1) d += 1;
        for (int k = 1; k <= (nu - 2) / 2; ++k)
            if (i == 2 * nu + static_cast<long long>(k) * (s - 4) + (s + 1) / 2 - 1) d += 2;
    }
    return d;
}

// Generator counts of I_{kX} in every degree, k >= 1.
inline std::map<int, int> all_generator_degrees(const FatPointScheme& w)
{
    return generator_degrees(w, regularity_index(w) + 1);
}

inline DeltaH conic_delta_h(const ConicSchemeSpec& spec, long long up_to)
{
    if (!spec.equimultiple()) throw std::invalid_argument("correction terms need an equimultiple scheme");
    const int nu = spec.nu(), s = spec.s();
    const FatPointScheme x = spec.scheme().support();
    auto b1 = all_generator_degrees(x);
    std::map<int, int> bprev;
    if (nu >= 2) bprev = all_generator_degrees(x.scaled(nu - 1));
    auto count = [](const std::map<int, int>& m, long long d) -> long long {
        auto it = m.find(static_cast<int>(d));
        return it == m.end() ? 0 : it->second;
    };
    DeltaH out;
    for (long long i = 0; i <= up_to; ++i) {
        long long h = count(b1, i + 1 - 2 * nu);
        out.h.push_back(h);
        out.delta.push_back(nu >= 2 ? conic_delta(s, nu, i) : 0);
        out.delta_generators.push_back(nu >= 2 ? count(bprev, i - 3) - h : 0);
    }
    return out;
}

enum class DeltaSource { table, generators };

// Omega^m for W on a nonsingular conic; m = 2, 3 need an equimultiple scheme.
inline HFTable conic_hf(const ConicSchemeSpec& spec, int m, DeltaSource source = DeltaSource::table)
{
    if (m < 1 || m > 3) throw std::invalid_argument("conic_hf: form degree must be 1, 2 or 3");
    if (m >= 2 && !spec.equimultiple()) throw std::invalid_argument("conic_hf: Omega^2 and Omega^3 need an equimultiple scheme");
    const FatPointScheme& w = spec.scheme();
    const long long s = spec.s();
    const long long r_w = spec.regularity_index();
    HFTable hw = hf_table(w);
    auto HF = [&](long long i) { return hw.at(i); };
    std::vector<long long> v;

    if (m == 1) {
        const long long mu = spec.mu(), rho = spec.rho();
        long long hp = 0, sum_c = 0;
        for (int mj : w.mults()) {
            hp += static_cast<long long>(mj + 1) * (3 * mj - 2) / 2;
            sum_c += binomial(mj + 1, 2);
        }
        const long long last = std::max(mu / 2, rho + 1) + 1;
        if (mu >= 2 * rho + 4) {
            for (long long i = 0; i <= last; ++i) {
                if (i >= mu / 2) v.push_back(hp);
                else if (i >= r_w + 2) v.push_back(3 * sum_c - 2 * i - 1);
                else if (i == r_w + 1) v.push_back(4 * sum_c - 2 * i - 1 - HF(i - 2));
                else v.push_back(HF(i) + 3 * HF(i - 1) - HF(i - 2) - 2 * i - 1);
            }
        } else {
            std::vector<int> ym(w.mults());
            for (std::size_t j = 0; j + 2 < ym.size(); ++j) ++ym[j];
            HFTable hy = hf_table(w.with_mults(ym));
            for (long long i = 0; i <= last; ++i) {
                if (i >= rho + 1) v.push_back(hp);
                else if (i >= r_w + 1) v.push_back(4 * sum_c - i - 1 - hy.at(i - 1));
                else v.push_back(HF(i) + 3 * HF(i - 1) - hy.at(i - 1) - i - 1);
            }
        }
        return make_table(std::move(v));
    }

    const long long nu = spec.nu();
    const long long last = s * (nu + 1) + 4 * nu + 8;
    if (nu == 1) {
        if (m == 3) {
            // Omega^3 ~ (S / M)(-3).
            for (long long i = 0; i <= 4; ++i) v.push_back(i == 3 ? 1 : 0);
            return make_table(std::move(v));
        }
        for (long long i = 0; i <= std::max<long long>(s, 4); ++i) {
            if (i < 2) v.push_back(0);  // zero range below the form degree
            else if (i >= s) v.push_back(0);
            else if (i == 3) v.push_back(3 * HF(2) - 9);
            else v.push_back(3 * HF(i - 1) - HF(i - 2) - 2 * i - 1);
        }
        return make_table(std::move(v));
    }

    DeltaH dh = conic_delta_h(spec, last);
    auto corr = [&](long long i) {
        return dh.h[i] + (source == DeltaSource::table ? dh.delta[i] : dh.delta_generators[i]);
    };
    const long long t = s * (nu - 1) / 2 + 3;
    if (m == 3) {
        for (long long i = 0; i <= last; ++i) {
            if (i <= 2) v.push_back(0);
            else if (i >= t) v.push_back(s * binomial(nu, 2) + corr(i));
            else v.push_back(HF(i - 1) - 2 * i + 1 + corr(i));
        }
        return make_table(std::move(v));
    }
    const long long mid = s * nu / 2 + 2;
    const long long top = s * (nu + 1) / 2;
    for (long long i = 0; i <= last; ++i) {
        if (i >= top) v.push_back(s * (3 * nu + 2) * (nu - 1) / 2 + corr(i));
        else if (i >= mid) v.push_back(s * nu * (3 * nu + 1) / 2 + corr(i) - 2 * i - 1);
        else if (i >= t) v.push_back(3 * HF(i - 1) - HF(i - 2) + s * binomial(nu, 2) + corr(i) - 2 * i - 1);
        else v.push_back(4 * HF(i - 1) - HF(i - 2) - 4 * i + corr(i));
    }
    return make_table(std::move(v));
}

// HF of S / M I_{(nu-1)X}, shifted by 3: the Omega^3 isomorphism for nu X on a conic.
inline HFTable conic_omega3_isomorphism(const ConicSchemeSpec& spec)
{
    if (!spec.equimultiple()) throw std::invalid_argument("isomorphism check needs an equimultiple scheme");
    const int nu = spec.nu();
    std::vector<long long> v(3, 0);
    if (nu == 1) {
        v.push_back(1);
        v.push_back(0);
        return make_table(std::move(v));
    }
    const FatPointScheme prev = spec.scheme().support().scaled(nu - 1);
    const int r = regularity_index(prev);
    for (int j = 0; j <= r + 3; ++j) {
        long long dim_s = binomial(j + 2, 2);
        long long below = j == 0 ? 0 : static_cast<long long>(maximal_ideal_product_dim(ideal_slice(prev, j - 1), 2, j));
        v.push_back(dim_s - below);
    }
    return make_table(std::move(v));
}

// ---------------------------------------------------------------- complex inequality

struct ComplexCheck {
    long long lhs = 0;
    long long rhs = 0;
    bool equality_expected = false;
    bool holds = false;
};

class ComplexInequality {
public:
    explicit ComplexInequality(const FatPointScheme& w)
        : n_(w.n()), equimultiple_plane_(w.n() == 2 && w.is_equimultiple())
    {
        OmegaEngine eng(w);
        omega2_ = eng.hf(2).table;
        hw_ = eng.hf_w();
        w1_ = hf_table(w.fattening());
        w2_ = hf_table(w.fattening().fattening());
        threshold_ = std::max({hw_.stable_from, w2_.stable_from - 2, w1_.stable_from - 1, omega2_.stable_from - 2, 0});
    }

    ComplexCheck check(long long i) const
    {
        ComplexCheck c;
        c.lhs = omega2_.at(i + 2);
        c.rhs = static_cast<long long>(n_) * (n_ + 1) / 2 * hw_.at(i) + w2_.at(i + 2) - w1_.at(i + 2) -
                (n_ + 1) * (w1_.at(i + 1) - hw_.at(i + 1));
        c.equality_expected = equimultiple_plane_ && i >= threshold_;
        c.holds = c.equality_expected ? c.lhs == c.rhs : c.lhs >= c.rhs;
        return c;
    }

    int threshold() const { return threshold_; }

private:
    int n_;
    bool equimultiple_plane_;
    HFTable omega2_, hw_, w1_, w2_;
    int threshold_ = 0;
};

inline bool complex_inequality(const FatPointScheme& w, long long i)
{
    return ComplexInequality(w).check(i).holds;
}

// ---------------------------------------------------------------- conjecture and reducedness

struct ConjectureReport {
    long long hp_top = 0;
    long long hp_y = 0;
    bool agree = false;
};

// Experimental: compares HP(Omega^{n+1}_W) with HP_Y for Y = sum (m_j - 1) P_j.
inline ConjectureReport conjecture_probe(const FatPointScheme& w)
{
    ConjectureReport r;
    r.hp_top = OmegaEngine(w).hf(w.n() + 1).table.hp;
    if (!w.is_reduced()) {
        std::vector<int> ms(w.mults());
        for (int& m : ms) --m;
        r.hp_y = w.with_mults(ms).degree();
    }
    r.agree = r.hp_top == r.hp_y;
    return r;
}

// W is reduced iff HP(Omega^{n+1}) = 0; throws if the engine disagrees.
inline bool reducedness_test(const FatPointScheme& w)
{
    const bool reduced = w.is_reduced();
    const bool vanishing = OmegaEngine(w).hf(w.n() + 1).table.hp == 0;
    if (reduced != vanishing) throw std::logic_error("reducedness criterion violated");
    return reduced;
}

}  // namespace kahler
