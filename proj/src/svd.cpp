#include "polarlens/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polarlens {

namespace {

// One-sided Jacobi on the columns of w (column-major storage here for cache
// friendliness during rotations). Accumulates the right rotations into v.
struct Worker {
    std::size_t m, n;
    std::vector<double> w; // m x n, column-major
    std::vector<double> v; // n x n, column-major

    double* wcol(std::size_t j) { return w.data() + j * m; }
    double* vcol(std::size_t j) { return v.data() + j * n; }

    int run(double tol, int max_sweeps) {
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            bool rotated = false;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    double app = 0, aqq = 0, apq = 0;
                    const double* cp = wcol(p);
                    const double* cq = wcol(q);
                    for (std::size_t i = 0; i < m; ++i) {
                        app += cp[i] * cp[i];
                        aqq += cq[i] * cq[i];
                        apq += cp[i] * cq[i];
                    }
                    if (std::abs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
                    rotated = true;

                    const double zeta = (aqq - app) / (2.0 * apq);
                    const double t = (zeta >= 0 ? 1.0 : -1.0) /
                                     (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                    const double cs = 1.0 / std::sqrt(1.0 + t * t);
                    const double sn = cs * t;

                    double* mp = wcol(p);
                    double* mq = wcol(q);
                    for (std::size_t i = 0; i < m; ++i) {
                        const double wp = mp[i];
                        mp[i] = cs * wp - sn * mq[i];
                        mq[i] = sn * wp + cs * mq[i];
                    }
                    double* vp = vcol(p);
                    double* vq = vcol(q);
                    for (std::size_t i = 0; i < n; ++i) {
                        const double xp = vp[i];
                        vp[i] = cs * xp - sn * vq[i];
                        vq[i] = sn * xp + cs * vq[i];
                    }
                }
            }
            if (!rotated) break;
        }
        return sweep;
    }
};

SvdResult svd_tall(const DenseMatrix& a, double tol, int max_sweeps) {
    const std::size_t m = a.rows, n = a.cols;
    Worker wk;
    wk.m = m;
    wk.n = n;
    wk.w.assign(m * n, 0.0);
    wk.v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) wk.w[j * m + i] = a.at(i, j);
    for (std::size_t j = 0; j < n; ++j) wk.v[j * n + j] = 1.0;

    const int sweeps = wk.run(tol, max_sweeps);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double sq = 0;
        const double* c = wk.wcol(j);
        for (std::size_t i = 0; i < m; ++i) sq += c[i] * c[i];
        sigma[j] = std::sqrt(sq);
    }

    // Nonincreasing singular values; stable order for ties.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult res;
    res.sweeps = sweeps;
    res.tol = tol;
    res.sigma.resize(n);
    res.u = DenseMatrix(m, n);
    res.v = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        res.sigma[k] = sigma[j];
        if (sigma[j] > 0) {
            const double inv = 1.0 / sigma[j];
            const double* c = wk.wcol(j);
            for (std::size_t i = 0; i < m; ++i) res.u.at(i, k) = c[i] * inv;
        }
        const double* vc = wk.vcol(j);
        for (std::size_t i = 0; i < n; ++i) res.v.at(i, k) = vc[i];
    }
    return res;
}

} // namespace

SvdResult jacobi_svd(const DenseMatrix& a, double tol, int max_sweeps) {
    if (a.rows >= a.cols) return svd_tall(a, tol, max_sweeps);
    // Wide matrix: decompose the transpose and swap the factors.
    DenseMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    SvdResult r = svd_tall(t, tol, max_sweeps);
    std::swap(r.u, r.v);
    return r;
}

} // namespace polarlens
