#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdio>
#include <ostream>

namespace gsmor {

/// Write nonzero entries as "row col value" lines, 1-based indices,
/// 17 significant digits, row-major order.
inline void write_triplets(std::ostream& os,
                           const Eigen::SparseMatrix<double, Eigen::RowMajor>& A) {
    char buf[64];
    for (int k = 0; k < A.outerSize(); ++k)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(A, k);
             it; ++it) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n",
                          static_cast<int>(it.row()) + 1,
                          static_cast<int>(it.col()) + 1, it.value());
            os << buf;
        }
}

inline void write_triplets(std::ostream& os,
                           const Eigen::SparseMatrix<double>& A) {
    write_triplets(os, Eigen::SparseMatrix<double, Eigen::RowMajor>(A));
}

inline void write_triplets(std::ostream& os, const Eigen::MatrixXd& A) {
    char buf[96];
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            if (A(i, j) != 0.0) {
                std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n",
                              static_cast<long>(i) + 1, static_cast<long>(j) + 1,
                              A(i, j));
                os << buf;
            }
}

}  // namespace gsmor
