#pragma once

#include <Eigen/Dense>

namespace wtraj {

struct Normalized {
    Eigen::MatrixXd data;
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;  ///< population standard deviation
};

/// Column-wise z-scores. Zero-variance columns become all zeros.
/// Throws std::invalid_argument for fewer than two rows.
Normalized zscore_normalize(const Eigen::MatrixXd& matrix);

/// Eigen-decomposition of the sample covariance, largest eigenvalue first.
///
/// Eigenvectors are the columns of `components`, unit length, with their
/// largest-magnitude entry positive.
struct PcaModel {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd components;

    double explained_variance_ratio(Eigen::Index k) const;
};

PcaModel pca_fit(const Eigen::MatrixXd& normalized);

/// Coordinates of each row on the first k components.
/// Throws std::invalid_argument unless 1 <= k <= column count.
Eigen::MatrixXd project(const Eigen::MatrixXd& normalized, const PcaModel& model, Eigen::Index k = 2);

}  // namespace wtraj
