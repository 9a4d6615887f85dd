#pragma once

// Kernel transformation identities and derived geometry.
//
// For a biholomorphism f between domains the kernels are related by
//
//   K_1(z, w) = det f'(z) K_2(f(z), f(w)) conj(det f'(w))
//
// and for the proper squaring map the branches of the inverse enter as a
// sum. Both are exposed as residuals so tests and the CLI can check them at
// sampled point pairs. On top of kernel evaluation this header builds the
// Riemann map derivative, the Bergman metric, and representative
// coordinates; derivatives are taken with real-step central differences
// (log K is holomorphic in z and antiholomorphic in w, so real steps in a
// coordinate of w differentiate with respect to conj(w_k)), refined by one
// Richardson level.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "core.hpp"
#include "kernels.hpp"

namespace bergman {

using KernelFn = std::function<EvaluatedValue(const cvec&, const cvec&)>;

inline KernelFn closed_kernel_fn(DomainSpec d) {
    return [d = std::move(d)](const cvec& z, const cvec& w) { return eval_closed(d, z, w); };
}

inline KernelFn series_kernel_fn(std::shared_ptr<const SeriesEvaluator> se) {
    return [se = std::move(se)](const cvec& z, const cvec& w) { return se->eval(z, w); };
}

struct HoloMap {
    int n = 1;
    std::string name;
    std::function<cvec(const cvec&)> apply;
    std::function<cx(const cvec&)> jacobian_det;
};

// Disk automorphism z -> (a - z)/(1 - conj(a) z); an involution.
inline HoloMap mobius_map(cx a) {
    if (!(std::abs(a) < 1.0)) throw std::invalid_argument("mobius_map: |a| must be below 1");
    HoloMap m;
    m.n = 1;
    m.name = "mobius";
    m.apply = [a](const cvec& z) { return cvec{(a - z[0]) / (1.0 - std::conj(a) * z[0])}; };
    m.jacobian_det = [a](const cvec& z) {
        const cx d = 1.0 - std::conj(a) * z[0];
        return -(1.0 - std::norm(a)) / (d * d);
    };
    return m;
}

inline HoloMap squaring_map() {
    HoloMap m;
    m.n = 1;
    m.name = "squaring";
    m.apply = [](const cvec& z) { return cvec{z[0] * z[0]}; };
    m.jacobian_det = [](const cvec& z) { return 2.0 * z[0]; };
    return m;
}

// z -> c z in every coordinate.
inline HoloMap scaling_map(cx c, int n = 1) {
    if (c == 0.0) throw std::invalid_argument("scaling_map: scale must be nonzero");
    HoloMap m;
    m.n = n;
    m.name = "scaling";
    m.apply = [c](const cvec& z) {
        cvec out(z.size());
        for (std::size_t j = 0; j < z.size(); ++j) out[j] = c * z[j];
        return out;
    };
    m.jacobian_det = [c, n](const cvec&) { return ipow(c, n); };
    return m;
}

// | K1(z,w) - det f'(z) K2(f(z), f(w)) conj(det f'(w)) |
inline double transformation_residual(const KernelFn& k1, const KernelFn& k2, const HoloMap& f,
                                      const cvec& z, const cvec& w) {
    const cx lhs = k1(z, w).value;
    const cx rhs = f.jacobian_det(z) * k2(f.apply(z), f.apply(w)).value *
                   std::conj(f.jacobian_det(w));
    return std::abs(lhs - rhs);
}

// Proper-map identity for z -> z^2 on the disk: summing over the two inverse
// branches +-sqrt(w),
//
//   2 z K2(z^2, w) = sum_{+-} K1(z, +-sqrt(w)) conj(+-1/(2 sqrt(w))).
//
inline double bell_residual(const KernelFn& k1, const KernelFn& k2, cx z, cx w) {
    if (w == 0.0) throw std::domain_error("bell_residual: w must be nonzero (branch point)");
    const cx sw = std::sqrt(w);
    const cx db = 1.0 / (2.0 * sw);  // d(sqrt(w))/dw at the principal branch
    const cx lhs = k1(cvec{z}, cvec{sw}).value * std::conj(db) +
                   k1(cvec{z}, cvec{-sw}).value * std::conj(-db);
    const cx rhs = 2.0 * z * k2(cvec{z * z}, cvec{w}).value;
    return std::abs(lhs - rhs);
}

// Derivative of the Riemann map to a disk of area pi, normalized at a:
// f'(z) = K(z, a) sqrt(pi / K(a, a)).
inline cx riemann_derivative(const KernelFn& k, cx a, cx z) {
    const double kaa = k(cvec{a}, cvec{a}).value.real();
    if (!(kaa > 0.0)) throw std::domain_error("riemann_derivative: K(a,a) must be positive");
    return k(cvec{z}, cvec{a}).value * std::sqrt(pi / kaa);
}

struct HermMatrix {
    int n = 0;
    std::array<cx, 16> a{};

    cx& at(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
    const cx& at(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }
};

// Cholesky test: all pivots strictly positive.
inline bool positive_definite(HermMatrix m) {
    for (int k = 0; k < m.n; ++k) {
        double d = m.at(k, k).real();
        for (int j = 0; j < k; ++j) d -= std::norm(m.at(k, j));
        if (!(d > 0.0)) return false;
        const double rt = std::sqrt(d);
        m.at(k, k) = rt;
        for (int i = k + 1; i < m.n; ++i) {
            cx v = m.at(i, k);
            for (int j = 0; j < k; ++j) v -= m.at(i, j) * std::conj(m.at(k, j));
            m.at(i, k) = v / rt;
        }
    }
    return true;
}

namespace detail_tr {

// Gauss-Jordan inverse with partial pivoting; n <= 4.
inline HermMatrix inverse(const HermMatrix& m) {
    const int n = m.n;
    if (n < 1 || n > 4) throw std::invalid_argument("matrix inverse: order must be 1..4");
    std::array<std::array<cx, 8>, 4> w{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w[i][j] = m.at(i, j);
        w[i][static_cast<std::size_t>(n + i)] = 1.0;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(w[i][c]) > std::abs(w[p][c])) p = i;
        if (std::abs(w[p][c]) == 0.0)
            throw std::domain_error("matrix inverse: singular metric");
        std::swap(w[c], w[p]);
        const cx piv = w[c][c];
        for (int j = 0; j < 2 * n; ++j) w[c][j] /= piv;
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            const cx f = w[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * n; ++j) w[i][j] -= f * w[c][j];
        }
    }
    HermMatrix inv;
    inv.n = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = w[i][static_cast<std::size_t>(n + j)];
    return inv;
}

inline cx log_kernel(const KernelFn& k, const cvec& z, const cvec& w) {
    return std::log(k(z, w).value);
}

// d/d conj(w_k) of log K(z, w) at w = a, real central step + Richardson.
inline cx dbar_log(const KernelFn& k, const cvec& z, const cvec& a, int kk, double h) {
    auto central = [&](double step) {
        cvec wp = a, wm = a;
        wp[kk] += step;
        wm[kk] -= step;
        return (log_kernel(k, z, wp) - log_kernel(k, z, wm)) / (2.0 * step);
    };
    const cx ch = central(h), ch2 = central(0.5 * h);
    return (4.0 * ch2 - ch) / 3.0;
}

}  // namespace detail_tr

// Bergman metric g_{j conj(k)} = d_{z_j} d_{conj(w_k)} log K at (a, a).
// Four-point real-step central differences, one Richardson level. The step
// balances O(h^4) truncation against the eps/h^2 roundoff of the second
// difference; 1e-3 puts both near 1e-10 for points away from the boundary.
inline HermMatrix bergman_metric(const KernelFn& k, int n, const cvec& a, double h = 1e-3) {
    if (n < 1 || n > 4) throw std::invalid_argument("bergman_metric: dimension must be 1..4");
    HermMatrix g;
    g.n = n;
    auto cross = [&](int j, int kk, double step) {
        cvec zp = a, zm = a, wp = a, wm = a;
        zp[j] += step;
        zm[j] -= step;
        wp[kk] += step;
        wm[kk] -= step;
        const cx v = detail_tr::log_kernel(k, zp, wp) - detail_tr::log_kernel(k, zp, wm) -
                     detail_tr::log_kernel(k, zm, wp) + detail_tr::log_kernel(k, zm, wm);
        return v / (4.0 * step * step);
    };
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) {
            const cx ah = cross(j, kk, h), ah2 = cross(j, kk, 0.5 * h);
            g.at(j, kk) = (4.0 * ah2 - ah) / 3.0;
        }
    return g;
}

// Representative coordinates centered at a:
//
//   rep_j(z) = sum_k (G^{-1})_{k j} [ D_k(z) - D_k(a) ],
//   D_k(z) = d_{conj(w_k)} log K(z, w) | w = a,
//
// with G the Bergman metric at a. The Jacobian of rep at a is the identity.
inline cvec representative_coordinates(const KernelFn& k, int n, const cvec& a, const cvec& z,
                                       double h = 1e-3) {
    const HermMatrix ginv = detail_tr::inverse(bergman_metric(k, n, a, h));
    cvec dz(n), da(n);
    for (int kk = 0; kk < n; ++kk) {
        dz[kk] = detail_tr::dbar_log(k, z, a, kk, h);
        da[kk] = detail_tr::dbar_log(k, a, a, kk, h);
    }
    cvec rep(n, cx(0.0));
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) rep[j] += ginv.at(kk, j) * (dz[kk] - da[kk]);
    return rep;
}

// Diagonal partial sums S_d(z) = sum_{|alpha| <= d} |z^alpha|^2 / m_alpha.
// Monotone nondecreasing in d with limit K(z, z); the extremal property of
// the kernel in one sequence.
inline std::vector<double> diagonal_partial_sums(const MomentTable& t, const cvec& z) {
    const int dim = dimension(t.domain);
    if (static_cast<int>(z.size()) != dim)
        throw std::invalid_argument("diagonal_partial_sums: point dimension mismatch");
    std::vector<double> by_degree(t.degree_cap + 1, 0.0);
    for (const auto& [alpha, e] : t.entries) {
        double p = 1.0;
        for (int j = 0; j < dim; ++j) p *= std::norm(ipow(z[j], alpha[j]));
        by_degree[degree(alpha)] += p / e.value;
    }
    std::vector<double> sums(by_degree.size());
    double acc = 0.0;
    for (std::size_t d = 0; d < by_degree.size(); ++d) {
        acc += by_degree[d];
        sums[d] = acc;
    }
    return sums;
}

}  // namespace bergman
