#include "groundctl/eigensystem.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "groundctl/errors.hpp"

namespace groundctl {

EigenSystem EigenSystem::shifted_to_ground() const {
    EigenSystem out = *this;
    out.eigenvalues.array() -= ground_eigenvalue();
    return out;
}

double graded_norm(const State& u, Grading s, const EigenSystem& es) {
    if (u.size() != es.eigenvalues.size())
        throw ValidationError("graded_norm: state length does not match truncation");
    switch (s) {
        case Grading::l2:
            return u.norm();
        case Grading::half:
            return std::sqrt(((1.0 + es.eigenvalues.array()) * u.array().square()).sum());
        case Grading::one:
            return std::sqrt(((1.0 + es.eigenvalues.array().square()) * u.array().square()).sum());
    }
    return 0.0;
}

double half_inner(const State& u, const State& v, const EigenSystem& es) {
    if (u.size() != es.eigenvalues.size() || v.size() != es.eigenvalues.size())
        throw ValidationError("half_inner: state length does not match truncation");
    return ((1.0 + es.eigenvalues.array()) * u.array() * v.array()).sum();
}

double estimate_CB(const EigenSystem& es) {
    const int n = es.size();
    if (es.coupling.rows() != n || es.coupling.cols() != n)
        throw ValidationError("estimate_CB: coupling matrix not populated");
    // Pencil (C^T C, diag(1 + lambda)) reduced to an ordinary symmetric problem.
    Eigen::VectorXd d = (1.0 + es.eigenvalues.array()).sqrt().inverse();
    Eigen::MatrixXd scaled = es.coupling * d.asDiagonal();
    Eigen::MatrixXd pencil = scaled.transpose() * scaled;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pencil, Eigen::EigenvaluesOnly);
    const double top = eig.eigenvalues().maxCoeff();
    return top > 0.0 ? std::sqrt(top) : 0.0;
}

}  // namespace groundctl
