#pragma once

#include <cstddef>
#include <vector>

namespace polarlens {

// Minimal dense row-major matrix used by the correspondence-analysis path.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct SvdResult {
    DenseMatrix u;             // rows x k (thin), columns orthonormal
    std::vector<double> sigma; // k values, nonincreasing
    DenseMatrix v;             // cols x k
    int sweeps = 0;
    double tol = 0.0;
};

// Full thin SVD via one-sided Jacobi rotations (Hestenes). Deterministic:
// fixed pivot order, fixed tolerance, no randomness. Columns of u belonging
// to zero singular values are left as zero vectors.
SvdResult jacobi_svd(const DenseMatrix& a, double tol = 1e-13, int max_sweeps = 60);

} // namespace polarlens
