#pragma once

// Hilbert functions of the modules of Kaehler m-forms of R_W = S/I_W,
// absolute (over K) and relative (over K[x0]).
//
// Engine. In degree d the relation module of Omega^m is
//   I_{d-m} (x) Lambda^m  +  d(I_{d-m+1}) ^ Lambda^{m-1},
// because G dF = d(GF) - F dG. Passing to jets of order < m_j kills the first
// summand, so
//   HF(d) = C(n+1,m) HF_W(d-m) - rank{ sum_i jet(dF/dX_i) e_i ^ e_J }
// with F over a basis of (I_W)_{d-m+1} and |J| = m-1. For F in I_W the jets of
// dF/dx_i only involve the order-m_j Taylor coefficients of F, which the
// fattening scan delivers; the X0 partial follows from Euler's relation.

#include "exactla.hpp"
#include "polyring.hpp"
#include "schemes.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kahler {

class WedgeBasis {
public:
    WedgeBasis(int n, int m, bool relative = false) : n_(n), m_(m), relative_(relative)
    {
        int lo = relative ? 1 : 0;
        if (m < 0) throw std::invalid_argument("negative form degree");
        std::vector<int> cur;
        build(lo, m, cur);
        for (std::size_t i = 0; i < subsets_.size(); ++i) index_.emplace(subsets_[i], i);
    }

    int n() const { return n_; }
    int m() const { return m_; }
    bool relative() const { return relative_; }
    std::size_t size() const { return subsets_.size(); }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }
    const std::vector<int>& operator[](std::size_t i) const { return subsets_[i]; }
    std::size_t index_of(const std::vector<int>& s) const
    {
        auto it = index_.find(s);
        if (it == index_.end()) throw std::out_of_range("subset not in wedge basis");
        return it->second;
    }

private:
    void build(int from, int left, std::vector<int>& cur)
    {
        if (left == 0) {
            subsets_.push_back(cur);
            return;
        }
        for (int i = from; i <= n_; ++i) {
            cur.push_back(i);
            build(i + 1, left - 1, cur);
            cur.pop_back();
        }
    }

    int n_, m_;
    bool relative_;
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, std::size_t> index_;
};

struct ExteriorForm {
    WedgeBasis basis;
    std::vector<HomogPoly> coeffs;
    int degree;

    // Coefficient vector over (subset, monomial of the coefficient slice).
    std::vector<Rational> flatten() const
    {
        DegreeSlice slice(basis.n(), degree - basis.m());
        std::vector<Rational> out;
        out.reserve(basis.size() * slice.size());
        for (const auto& c : coeffs) {
            auto v = c.coefficients(slice);
            out.insert(out.end(), v.begin(), v.end());
        }
        return out;
    }
};

inline ExteriorForm operator*(const HomogPoly& g, const ExteriorForm& w)
{
    ExteriorForm out{w.basis, {}, w.degree + g.degree()};
    for (const auto& c : w.coeffs) out.coeffs.push_back(multiply(g, c));
    return out;
}

// Position of i among the sorted indices of J, i.e. the sign of moving dX_i past them.
inline int wedge_sign(int i, const std::vector<int>& j)
{
    int before = 0;
    for (int x : j)
        if (x < i) ++before;
    return before % 2 ? -1 : 1;
}

// dF ^ dX_J expanded over the sorted wedge basis; the relative differential drops dX0.
inline ExteriorForm wedge_with_differential(const HomogPoly& f, const std::vector<int>& j, bool relative = false)
{
    const int n = f.n();
    const int lo = relative ? 1 : 0;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (j[k] < lo || j[k] > n) throw std::invalid_argument("wedge subset index out of range");
        if (k && j[k] <= j[k - 1]) throw std::invalid_argument("wedge subset must be strictly increasing");
    }
    const int m = static_cast<int>(j.size()) + 1;
    if (m > n + 1 - lo) throw std::invalid_argument("form degree exceeds the number of differentials");
    WedgeBasis basis(n, m, relative);
    const int cdeg = f.degree() > 0 ? f.degree() - 1 : 0;
    ExteriorForm out{basis, std::vector<HomogPoly>(basis.size(), HomogPoly(n, cdeg)), cdeg + m};
    for (int i = lo; i <= n; ++i) {
        if (std::find(j.begin(), j.end(), i) != j.end()) continue;
        HomogPoly p = partial(f, i);
        if (p.is_zero()) continue;
        std::vector<int> t(j);
        t.insert(std::upper_bound(t.begin(), t.end(), i), i);
        std::size_t idx = basis.index_of(t);
        out.coeffs[idx] = out.coeffs[idx] + Rational(wedge_sign(i, j)) * p;
    }
    return out;
}

struct OmegaHF {
    int m = 0;
    bool relative = false;
    HFTable table;
    int ri = 0;
};

inline void check_form_degree(int n, int m, bool relative)
{
    if (m < 1 || m > n + 1) throw std::invalid_argument("form degree out of range");
    if (relative && m > n) throw std::invalid_argument("relative forms exist only up to degree n");
}

class OmegaEngine {
public:
    explicit OmegaEngine(FatPointScheme w) : w_(std::move(w)), layout_(w_, true), scan_(jet_scan(w_, true))
    {
        r_w_ = make_table(scan_.hf_low).stable_from;
        r_v_ = make_table(scan_.hf_all).stable_from;
        // Order-(m_j - 1) coordinates and, for each, the top-block positions of beta + e_i.
        const std::size_t low = layout_.low_size();
        for (std::size_t idx = 0; idx < low; ++idx) {
            const auto& c = layout_.coord(idx);
            if (c.order != w_.mult(c.point) - 1) continue;
            Target t{c.point, std::vector<std::size_t>(w_.n() + 1), std::vector<long>(w_.n() + 1)};
            for (int i = 1; i <= w_.n(); ++i) {
                std::vector<int> b = c.beta;
                ++b[i - 1];
                t.up[i] = layout_.index(c.point, b) - low;
                t.factor[i] = c.beta[i - 1] + 1;
            }
            targets_.push_back(std::move(t));
        }
        denom_ = 1;
        for (const auto& p : w_.points())
            for (int i = 1; i <= w_.n(); ++i) mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(), p[i].get_den_mpz_t());
    }

    const FatPointScheme& scheme() const { return w_; }
    const JetScan& scan() const { return scan_; }
    int r_w() const { return r_w_; }
    int r_v() const { return r_v_; }
    HFTable hf_w() const { return make_table(scan_.hf_low); }
    HFTable hf_v() const { return make_table(scan_.hf_all); }

    // Degree cap for the stabilization scan.
    int degree_cap() const { return std::max(2 * r_w_ + w_.n() + 2, r_v_ + w_.n() + 2); }

    // m = 0 gives HF_W. With max_degree the table is cut there and left uncertified.
    OmegaHF hf(int m, bool relative = false, std::optional<int> max_degree = std::nullopt) const
    {
        OmegaHF out;
        out.m = m;
        out.relative = relative;
        if (m == 0) {
            out.table = cut(scan_.hf_low, max_degree);
            out.ri = out.table.stable_from;
            return out;
        }
        check_form_degree(w_.n(), m, relative);
        const int n = w_.n();
        const int lo = relative ? 1 : 0;
        WedgeBasis bm(n, m, relative), bj(n, m - 1, relative);
        const long long c = static_cast<long long>(bm.size());
        const std::size_t nt = targets_.size();
        IntEchelon ech(bm.size() * nt);

        std::vector<long long> values;
        std::size_t used = 0;
        for (int d = 0;; ++d) {
            if (d >= m) {
                std::size_t avail = scan_.z_count(d - m + 1);
                for (; used < avail; ++used) {
                    auto dz = derivatives(scan_.top_rows[used], relative);
                    for (const auto& j : bj.subsets()) {
                        std::vector<Integer> row(bm.size() * nt);
                        for (int i = lo; i <= n; ++i) {
                            if (std::find(j.begin(), j.end(), i) != j.end()) continue;
                            std::vector<int> t(j);
                            t.insert(std::upper_bound(t.begin(), t.end(), i), i);
                            std::size_t base = bm.index_of(t) * nt;
                            int sg = wedge_sign(i, j);
                            for (std::size_t k = 0; k < nt; ++k)
                                if (dz[i][k] != 0) row[base + k] += sg > 0 ? dz[i][k] : Integer(-dz[i][k]);
                        }
                        ech.insert(std::move(row));
                    }
                }
                values.push_back(c * scan_.hf_w(d - m) - static_cast<long long>(ech.rank()));
            } else {
                values.push_back(0);
            }
            if (max_degree) {
                if (d >= *max_degree) break;
                continue;
            }
            if (d >= 1 && d - 1 >= r_w_ + m && values[d - 1] == values[d]) break;
            if (d > degree_cap() + 1) throw std::logic_error("omega scan exceeded its degree cap");
        }
        out.table = make_table(std::move(values), !max_degree);
        out.ri = out.table.stable_from;
        return out;
    }

private:
    struct Target {
        int point;
        std::vector<std::size_t> up;
        std::vector<long> factor;
    };

    static HFTable cut(const std::vector<long long>& v, std::optional<int> max_degree)
    {
        if (!max_degree) return make_table(v);
        std::vector<long long> out;
        for (int d = 0; d <= *max_degree; ++d) out.push_back(v[std::min<std::size_t>(d, v.size() - 1)]);
        return make_table(std::move(out), false);
    }

    // Scaled jets of dF/dX_i (i = 0..n) at the order-(m_j - 1) coordinates.
    std::vector<std::vector<Integer>> derivatives(const std::vector<Integer>& z, bool relative) const
    {
        const int n = w_.n();
        const std::size_t nt = targets_.size();
        std::vector<std::vector<Integer>> d(n + 1, std::vector<Integer>(nt));
        for (std::size_t k = 0; k < nt; ++k) {
            const auto& t = targets_[k];
            for (int i = 1; i <= n; ++i) d[i][k] = denom_ * t.factor[i] * z[t.up[i]];
            if (relative) continue;
            Rational s = 0;
            for (int i = 1; i <= n; ++i) s -= w_.point(t.point)[i] * Rational(d[i][k]);
            d[0][k] = s.get_num();
        }
        return d;
    }

    FatPointScheme w_;
    JetLayout layout_;
    JetScan scan_;
    int r_w_ = 0, r_v_ = 0;
    std::vector<Target> targets_;
    Integer denom_;
};

inline OmegaHF omega_hf(const FatPointScheme& w, int m, bool relative = false)
{
    return OmegaEngine(w).hf(m, relative);
}

// Literal presentation of Omega^m as a quotient of a free module, and the
// Jacobian-ideal presentation of the top forms. Both are independent of the
// engine above and serve as reference implementations.
class PresentationOracle {
public:
    explicit PresentationOracle(FatPointScheme w) : w_(std::move(w))
    {
        HFTable t = hf_table(w_);
        r_ = t.stable_from;
        alpha_ = 0;
        while (t.at(alpha_) == binomial(w_.n() + alpha_, w_.n())) ++alpha_;
        r_v_ = hf_table(w_.fattening()).stable_from;
    }

    int r() const { return r_; }
    int alpha() const { return alpha_; }

    const std::vector<HomogPoly>& slice(int d)
    {
        auto it = slices_.find(d);
        if (it == slices_.end()) it = slices_.emplace(d, ideal_slice(w_, d)).first;
        return it->second;
    }

    // Generators of I_W: bases of the slices in degrees alpha..r+1.
    std::vector<HomogPoly> pool()
    {
        std::vector<HomogPoly> out;
        for (int d = alpha_; d <= r_ + 1; ++d)
            for (const auto& f : slice(d)) out.push_back(f);
        return out;
    }

    // dim (I Omega^m + dI ^ Omega^{m-1})_d.
    std::size_t submodule_slice(int m, int d, bool relative = false)
    {
        check_form_degree(w_.n(), m, relative);
        const int e = d - m;
        if (e < 0) return 0;
        const int n = w_.n();
        WedgeBasis bm(n, m, relative), bj(n, m - 1, relative);
        DegreeSlice cs(n, e);
        const std::size_t cols = bm.size() * cs.size();
        IntEchelon ech(cols);
        auto full = [&] { return ech.rank() == cols; };
        for (const auto& g : slice(e))
            for (std::size_t t = 0; t < bm.size(); ++t) {
                std::vector<Rational> row(cols);
                auto v = g.coefficients(cs);
                std::copy(v.begin(), v.end(), row.begin() + t * cs.size());
                ech.insert(row);
                if (full()) return cols;
            }
        for (int fd = alpha_; fd <= r_ + 1 && fd - 1 <= e; ++fd) {
            DegreeSlice ms(n, e - (fd - 1));
            for (const auto& f : slice(fd))
                for (const auto& j : bj.subsets()) {
                    ExteriorForm df = wedge_with_differential(f, j, relative);
                    for (const auto& mono : ms.monomials()) {
                        ech.insert((HomogPoly::monomial(mono) * df).flatten());
                        if (full()) return cols;
                    }
                }
        }
        return ech.rank();
    }

    // HF of Omega^m straight from the presentation, degrees 0..max_degree.
    std::vector<long long> presentation_hf(int m, int max_degree, bool relative = false)
    {
        check_form_degree(w_.n(), m, relative);
        const long long c = binomial(relative ? w_.n() : w_.n() + 1, m);
        std::vector<long long> out;
        for (int d = 0; d <= max_degree; ++d) {
            long long total = d < m ? 0 : c * binomial(w_.n() + d - m, w_.n());
            out.push_back(total - static_cast<long long>(submodule_slice(m, d, relative)));
        }
        return out;
    }

    // Omega^{n+1} ~ (S / Jacobian ideal)(-n-1). The Jacobian ideal contains
    // I_W by Euler's relation, so its slices are measured through jets of its
    // image in R_W.
    OmegaHF top_form_hf()
    {
        const int n = w_.n();
        JetLayout layout(w_, false);
        JetMultiplier mul(w_, layout);
        IntEchelon ech(layout.size());
        HFTable hw = hf_table(w_);
        const int cap = std::max(2 * r_ + n + 2, r_v_ + n + 2);
        std::vector<long long> values(n + 1, 0);
        std::vector<std::vector<Integer>> fresh;
        for (int e = 0;; ++e) {
            std::vector<std::vector<Integer>> prev;
            prev.swap(fresh);
            auto add = [&](std::vector<Integer> v) {
                if (ech.insert(std::move(v))) fresh.push_back(ech.row(ech.rank() - 1));
            };
            for (const auto& b : prev)
                for (int i = 1; i <= n; ++i) add(mul.apply(i, b));
            if (e + 1 >= alpha_ && e + 1 <= r_ + 1)
                for (const auto& f : slice(e + 1))
                    for (int i = 0; i <= n; ++i) add(clear_denominators(jets_of(partial(f, i), w_, layout)));
            values.push_back(hw.at(e) - static_cast<long long>(ech.rank()));
            const int d = e + n + 1;
            if (d - 1 >= r_ + n + 1 && values[d - 1] == values[d]) break;
            if (d > cap + 1) throw std::logic_error("top form scan exceeded its degree cap");
        }
        OmegaHF out;
        out.m = n + 1;
        out.table = make_table(std::move(values));
        out.ri = out.table.stable_from;
        return out;
    }

private:
    FatPointScheme w_;
    int r_ = 0, alpha_ = 0, r_v_ = 0;
    std::map<int, std::vector<HomogPoly>> slices_;
};

inline std::size_t submodule_slice(const FatPointScheme& w, int m, int d, bool relative = false)
{
    return PresentationOracle(w).submodule_slice(m, d, relative);
}

inline OmegaHF top_form_hf(const FatPointScheme& w)
{
    return PresentationOracle(w).top_form_hf();
}

// Alternating sum of HF(Omega^m)(d) against HF of the maximal ideal of R_W.
inline bool koszul_check(const std::vector<HFTable>& omega, const HFTable& hf_w, long long d)
{
    long long sum = 0;
    for (std::size_t m = 1; m < omega.size(); ++m) sum += (m % 2 ? 1 : -1) * omega[m].at(d);
    return sum == hf_w.at(d) - (d == 0 ? 1 : 0);
}

inline bool koszul_check(const FatPointScheme& w, long long d)
{
    OmegaEngine eng(w);
    std::vector<HFTable> omega(1);
    for (int m = 1; m <= w.n() + 1; ++m) omega.push_back(eng.hf(m).table);
    return koszul_check(omega, hf_table(w), d);
}

}  // namespace kahler
