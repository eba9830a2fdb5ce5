#include "madcap/matrix_core.hpp"

#include <algorithm>
#include <cmath>

namespace madcap {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
    }
}

}  // namespace

double Spectrum::sum() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
}

double Spectrum::min() const {
    return eigenvalues.empty() ? 0.0 : eigenvalues.back();
}

double hermiticity_gap(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitian_part(const Matrix& m) {
    return 0.5 * (m + m.adjoint());
}

Spectrum eig_hermitian(const Matrix& h, double tol) {
    require_square(h, "eig_hermitian");
    if (hermiticity_gap(h) > tol) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    }
    Spectrum out;
    const auto& ev = solver.eigenvalues();
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::reverse(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

bool is_psd(const Matrix& m, double tol) {
    return eig_hermitian(m, std::max(tol, kDefaultTol)).min() >= -tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix partial_trace(const Matrix& m, Subsystem keep, int dim_a, int dim_b) {
    require_square(m, "partial_trace");
    if (dim_a <= 0 || dim_b <= 0 || m.rows() != Eigen::Index(dim_a) * dim_b) {
        throw std::invalid_argument("partial_trace: dims do not factor the matrix dimension");
    }
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (int a = 0; a < dim_a; ++a)
            for (int c = 0; c < dim_a; ++c)
                for (int b = 0; b < dim_b; ++b)
                    out(a, c) += m(a * dim_b + b, c * dim_b + b);
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b)
        for (int d = 0; d < dim_b; ++d)
            for (int a = 0; a < dim_a; ++a)
                out(b, d) += m(a * dim_b + b, a * dim_b + d);
    return out;
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    if (hermiticity_gap(m_) > tol) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol) {
        throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
    }
    m_ = hermitian_part(m_);
    if (eig_hermitian(m_, tol).min() < -tol) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
    double n2 = psi.squaredNorm();
    if (n2 <= 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
    Matrix m = (psi * psi.adjoint()) / n2;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations) {
    Matrix m = Matrix::Zero(populations.size(), populations.size());
    for (Eigen::Index i = 0; i < populations.size(); ++i) m(i, i) = populations(i);
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / double(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
    if (k < 0 || k >= dim) throw std::invalid_argument("basis_state: index out of range");
    Matrix m = Matrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return DensityMatrix(std::move(m));
}

double entropy_of_probs(std::span<const double> probs) {
    constexpr double clip = 1e-12;
    double s = 0.0;
    for (double p : probs) {
        if (p < -clip || p > 1.0 + clip) {
            throw std::domain_error("entropy: probability outside [0,1] beyond clip window");
        }
        double q = std::clamp(p, 0.0, 1.0);
        if (q > 0.0) s -= q * std::log2(q);
    }
    return s;
}

double entropy(const DensityMatrix& rho) {
    Spectrum sp = eig_hermitian(rho.matrix());
    return entropy_of_probs(sp.eigenvalues);
}

double entropy(const Matrix& rho, double tol) {
    return entropy(DensityMatrix(rho, tol));
}

}  // namespace madcap
