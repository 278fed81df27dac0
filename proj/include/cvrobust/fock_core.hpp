#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cvrobust/errors.hpp"

namespace cvrobust {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

/// Per-mode Fock dimension. The two-mode space has dimension d*d with
/// basis index n1*d + n2 (mode-1-major, fixed convention).
struct Cutoff {
    int d;

    explicit Cutoff(int dim) : d(dim) {
        if (d < 2) throw CutoffTooSmall("Cutoff: per-mode dimension must be >= 2");
    }
    int two_mode_dim() const { return d * d; }
    bool operator==(const Cutoff&) const = default;
};

enum class ModeIndex { Mode1, Mode2 };

/// Pure two-mode state. Normalized on construction.
struct Ket {
    VectorXcd amplitudes;
    Cutoff cutoff;

    Ket(VectorXcd amps, Cutoff c);

    Complex amplitude(int n1, int n2) const { return amplitudes(n1 * cutoff.d + n2); }
};

/// Mixed two-mode state. Construction validates Hermiticity, trace and
/// (approximate) positivity; use from_matrix_unchecked to skip the
/// eigenvalue check on hot paths.
struct DensityOperator {
    MatrixXcd matrix;
    Cutoff cutoff;

    DensityOperator(MatrixXcd m, Cutoff c);
    static DensityOperator from_ket(const Ket& psi);
    static DensityOperator from_matrix_unchecked(MatrixXcd m, Cutoff c);

  private:
    struct unchecked_t {};
    DensityOperator(MatrixXcd m, Cutoff c, unchecked_t) : matrix(std::move(m)), cutoff(c) {}
};

// Single-mode ladder operator, d x d, <n-1|a|n> = sqrt(n).
MatrixXcd annihilation_single_mode(Cutoff cutoff);

// a_j embedded in the two-mode space, identity on the other mode.
MatrixXcd annihilation_operator(ModeIndex mode, Cutoff cutoff);

// Kronecker composite consistent with mode-1-major ordering.
MatrixXcd tensor(const MatrixXcd& A, const MatrixXcd& B);

// Trace out the mode not kept; returns a d x d matrix.
MatrixXcd partial_trace(const DensityOperator& rho, ModeIndex keep);

// Transpose on mode 2: ((n1,n2),(m1,m2)) -> ((n1,m2),(m1,n2)).
MatrixXcd partial_transpose(const DensityOperator& rho);
MatrixXcd partial_transpose_raw(const MatrixXcd& m, Cutoff cutoff);

// Tr[rho (a1^dag a1 + a2^dag a2)], in photon number units.
double mean_energy(const DensityOperator& rho);
double mean_energy_raw(const MatrixXcd& m, Cutoff cutoff);

// (1/2) sum |eig(rho - sigma)|, in [0, 1].
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Eigenvalues of a Hermitian matrix, hermitized before the solve.
VectorXd hermitian_eigenvalues(const MatrixXcd& m);

} // namespace cvrobust
