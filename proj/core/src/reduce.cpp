#include "wtraj/reduce.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wtraj {

Normalized zscore_normalize(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() < 2) throw std::invalid_argument("normalisation needs at least two rows");
    Normalized out;
    out.mean = matrix.colwise().mean().transpose();
    out.data = matrix.rowwise() - out.mean.transpose();
    out.stddev = (out.data.colwise().squaredNorm() / static_cast<double>(matrix.rows())).cwiseSqrt().transpose();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        // Relative threshold: a constant column can leave rounding residue.
        const double scale_ref = std::max(1.0, out.mean.cwiseAbs()(c));
        if (out.stddev(c) <= 1e-12 * scale_ref) {
            out.data.col(c).setZero();
        } else {
            out.data.col(c) /= out.stddev(c);
        }
    }
    return out;
}

double PcaModel::explained_variance_ratio(Eigen::Index k) const {
    const double total = eigenvalues.sum();
    return total > 0.0 ? eigenvalues(k) / total : 0.0;
}

PcaModel pca_fit(const Eigen::MatrixXd& normalized) {
    if (normalized.rows() < 2) throw std::invalid_argument("PCA needs at least two rows");
    const Eigen::MatrixXd centered = normalized.rowwise() - normalized.colwise().mean();
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(normalized.rows() - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw std::runtime_error("covariance eigen-decomposition failed");

    const auto dim = cov.rows();
    PcaModel model;
    model.eigenvalues.resize(dim);
    model.components.resize(dim, dim);
    // Solver output is ascending; reverse it.
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto src = dim - 1 - i;
        model.eigenvalues(i) = std::max(0.0, solver.eigenvalues()(src));
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;
        model.components.col(i) = v;
    }
    return model;
}

Eigen::MatrixXd project(const Eigen::MatrixXd& normalized, const PcaModel& model, Eigen::Index k) {
    if (k < 1 || k > model.components.cols()) throw std::invalid_argument("invalid number of components");
    if (normalized.cols() != model.components.rows()) throw std::invalid_argument("dimension mismatch");
    return normalized * model.components.leftCols(k);
}

}  // namespace wtraj
