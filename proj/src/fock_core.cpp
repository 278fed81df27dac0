#include "cvrobust/fock_core.hpp"

#include <cmath>

namespace cvrobust {

Ket::Ket(VectorXcd amps, Cutoff c) : amplitudes(std::move(amps)), cutoff(c) {
    if (amplitudes.size() != cutoff.two_mode_dim())
        throw DimensionMismatch("Ket: amplitude vector length != d^2");
    const double nrm = amplitudes.norm();
    if (nrm == 0.0) throw DimensionMismatch("Ket: zero vector is not a state");
    amplitudes /= nrm;
}

DensityOperator::DensityOperator(MatrixXcd m, Cutoff c) : matrix(std::move(m)), cutoff(c) {
    const int n = cutoff.two_mode_dim();
    if (matrix.rows() != n || matrix.cols() != n)
        throw DimensionMismatch("DensityOperator: matrix is not d^2 x d^2");
    const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw NumericalHealthViolation("DensityOperator: Hermiticity deviation " + std::to_string(herm_dev));
    const double tr_dev = std::abs(matrix.trace() - Complex(1.0));
    if (tr_dev > 1e-9)
        throw NumericalHealthViolation("DensityOperator: trace deviation " + std::to_string(tr_dev));
    const double min_eig = hermitian_eigenvalues(matrix).minCoeff();
    if (min_eig < -1e-8)
        throw NumericalHealthViolation("DensityOperator: min eigenvalue " + std::to_string(min_eig));
}

DensityOperator DensityOperator::from_ket(const Ket& psi) {
    MatrixXcd m = psi.amplitudes * psi.amplitudes.adjoint();
    return DensityOperator(std::move(m), psi.cutoff, unchecked_t{});
}

DensityOperator DensityOperator::from_matrix_unchecked(MatrixXcd m, Cutoff c) {
    return DensityOperator(std::move(m), c, unchecked_t{});
}

MatrixXcd annihilation_single_mode(Cutoff cutoff) {
    const int d = cutoff.d;
    MatrixXcd a = MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

MatrixXcd annihilation_operator(ModeIndex mode, Cutoff cutoff) {
    const MatrixXcd a = annihilation_single_mode(cutoff);
    const MatrixXcd id = MatrixXcd::Identity(cutoff.d, cutoff.d);
    return mode == ModeIndex::Mode1 ? tensor(a, id) : tensor(id, a);
}

MatrixXcd tensor(const MatrixXcd& A, const MatrixXcd& B) {
    if (A.rows() != A.cols() || B.rows() != B.cols())
        throw DimensionMismatch("tensor: factors must be square");
    const auto da = A.rows(), db = B.rows();
    MatrixXcd out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = A(i, j) * B;
    return out;
}

MatrixXcd partial_trace(const DensityOperator& rho, ModeIndex keep) {
    const int d = rho.cutoff.d;
    MatrixXcd out = MatrixXcd::Zero(d, d);
    if (keep == ModeIndex::Mode1) {
        for (int n1 = 0; n1 < d; ++n1)
            for (int m1 = 0; m1 < d; ++m1)
                for (int k = 0; k < d; ++k)
                    out(n1, m1) += rho.matrix(n1 * d + k, m1 * d + k);
    } else {
        for (int n2 = 0; n2 < d; ++n2)
            for (int m2 = 0; m2 < d; ++m2)
                for (int k = 0; k < d; ++k)
                    out(n2, m2) += rho.matrix(k * d + n2, k * d + m2);
    }
    return out;
}

MatrixXcd partial_transpose_raw(const MatrixXcd& m, Cutoff cutoff) {
    const int d = cutoff.d;
    MatrixXcd out(d * d, d * d);
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            for (int m1 = 0; m1 < d; ++m1)
                for (int m2 = 0; m2 < d; ++m2)
                    out(n1 * d + m2, m1 * d + n2) = m(n1 * d + n2, m1 * d + m2);
    return out;
}

MatrixXcd partial_transpose(const DensityOperator& rho) {
    return partial_transpose_raw(rho.matrix, rho.cutoff);
}

double mean_energy_raw(const MatrixXcd& m, Cutoff cutoff) {
    const int d = cutoff.d;
    double e = 0.0;
    for (int n1 = 0; n1 < d; ++n1)
        for (int n2 = 0; n2 < d; ++n2)
            e += double(n1 + n2) * m(n1 * d + n2, n1 * d + n2).real();
    return e;
}

double mean_energy(const DensityOperator& rho) {
    return mean_energy_raw(rho.matrix, rho.cutoff);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (!(rho.cutoff == sigma.cutoff))
        throw DimensionMismatch("trace_distance: cutoff mismatch");
    const VectorXd eigs = hermitian_eigenvalues(rho.matrix - sigma.matrix);
    return 0.5 * eigs.cwiseAbs().sum();
}

VectorXd hermitian_eigenvalues(const MatrixXcd& m) {
    MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalHealthViolation("hermitian_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

} // namespace cvrobust
