#include "declab/qcore/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace declab::qcore {

std::pair<Operator, Operator> fock_ladder(const TruncatedFockSpace& space) {
    const int d = space.dim();
    Operator a = Operator::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Operator adag = a.adjoint();
    return {a, adag};
}

std::pair<Operator, Operator> collective_spin(const CollectiveSpinSpace& space) {
    const int d = space.dim();
    const double j = space.j();
    Operator jz = Operator::Zero(d, d);
    Operator jp = Operator::Zero(d, d); // raising, in ascending-m basis
    for (int k = 0; k < d; ++k) {
        const double m = -j + k;
        jz(k, k) = m;
        if (k + 1 < d) jp(k + 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    Operator jx = 0.5 * (jp + Operator(jp.adjoint()));
    return {jx, jz};
}

Operator tensor(const Operator& a, const Operator& b, std::int64_t max_dim) {
    const std::int64_t rows = static_cast<std::int64_t>(a.rows()) * b.rows();
    const std::int64_t cols = static_cast<std::int64_t>(a.cols()) * b.cols();
    if (rows > max_dim || cols > max_dim)
        throw DimensionTooLargeError("tensor product dimension " + std::to_string(rows) +
                                     " exceeds limit " + std::to_string(max_dim));
    return Eigen::kroneckerProduct(a, b);
}

} // namespace declab::qcore
