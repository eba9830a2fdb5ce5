#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace madcap {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;

/// Real eigenvalues of a Hermitian matrix, sorted descending.
struct Spectrum {
    std::vector<double> eigenvalues;

    double sum() const;
    double min() const;
};

/// max_{ij} |M_ij - conj(M_ji)|
double hermiticity_gap(const Matrix& m);

/// (M + M^dagger)/2
Matrix hermitian_part(const Matrix& m);

/// Eigenvalues of a Hermitian matrix, descending. The input is symmetrized
/// first; inputs farther than `tol` from Hermitian are rejected.
Spectrum eig_hermitian(const Matrix& h, double tol = kDefaultTol);

/// True iff the Hermitian matrix has min eigenvalue >= -tol.
bool is_psd(const Matrix& m, double tol);

/// Kronecker product A (x) B.
Matrix kron(const Matrix& a, const Matrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A (x) B (composite index a*dim_b + b),
/// keeping the named subsystem.
Matrix partial_trace(const Matrix& m, Subsystem keep, int dim_a, int dim_b);

/// Hermitian, unit-trace, positive-semidefinite operator. Immutable.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m, double tol = kDefaultTol);

    static DensityMatrix pure(const CVector& psi);
    static DensityMatrix diagonal(const Eigen::VectorXd& populations);
    static DensityMatrix maximally_mixed(int dim);
    static DensityMatrix basis_state(int dim, int k);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    cplx operator()(int i, int j) const { return m_(i, j); }

private:
    Matrix m_;
};

/// -sum_k p_k log2 p_k with 0 log2 0 := 0. Values within 1e-12 below zero
/// (or above one) are clipped; anything farther out is rejected.
double entropy_of_probs(std::span<const double> probs);

/// Von Neumann entropy in bits.
double entropy(const DensityMatrix& rho);

/// Von Neumann entropy of a Hermitian PSD unit-trace matrix given as a raw
/// matrix; validates the same invariants as DensityMatrix.
double entropy(const Matrix& rho, double tol = kDefaultTol);

}  // namespace madcap
