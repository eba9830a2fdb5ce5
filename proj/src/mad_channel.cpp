#include "madcap/mad_channel.hpp"

#include <cmath>
#include <sstream>

namespace madcap {

namespace {

constexpr double kRateTol = 1e-12;
constexpr double kMinimalRate = 1e-12;

// residual population scales within float noise of the drained boundary are
// exactly zero; keeps composed boundary channels consistent with their factors
double safe_sqrt(double x) {
    return x <= kRateTol ? 0.0 : std::sqrt(x);
}

void require_dim(const Matrix& op, int d, const char* what) {
    if (op.rows() != d || op.cols() != d) {
        std::ostringstream os;
        os << what << ": expected a " << d << "x" << d << " operator, got " << op.rows() << "x"
           << op.cols();
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

RateMatrix::RateMatrix(int dim) : dim_(dim) {
    if (dim < 2) throw std::invalid_argument("RateMatrix: dimension must be at least 2");
    rates_.assign(static_cast<size_t>(dim) * (dim - 1) / 2, 0.0);
}

RateMatrix RateMatrix::qutrit(double g1, double g2, double g3) {
    RateMatrix r(3);
    r.set_rate(1, 0, g1);
    r.set_rate(2, 1, g2);
    r.set_rate(2, 0, g3);
    return r;
}

RateMatrix RateMatrix::qubit(double g) {
    RateMatrix r(2);
    r.set_rate(1, 0, g);
    return r;
}

int RateMatrix::index(int j, int i) const {
    if (!(0 <= i && i < j && j < dim_)) {
        throw std::invalid_argument("RateMatrix: rate index requires 0 <= i < j < d");
    }
    return j * (j - 1) / 2 + i;
}

double RateMatrix::rate(int j, int i) const {
    return rates_[index(j, i)];
}

void RateMatrix::set_rate(int j, int i, double value) {
    rates_[index(j, i)] = value;
}

double RateMatrix::xi(int j) const {
    double s = 0.0;
    for (int i = 0; i < j; ++i) s += rate(j, i);
    return s;
}

RateMatrix RateVector3::to_rate_matrix() const {
    return RateMatrix::qutrit(g1, g2, g3);
}

double RateVector3::bar2() const {
    if (g3 >= 1.0) throw std::domain_error("bar2 undefined at g3 = 1");
    return g2 / (1.0 - g3);
}

double RateVector3::bar3() const {
    if (g2 >= 1.0) throw std::domain_error("bar3 undefined at g2 = 1");
    return g3 / (1.0 - g2);
}

std::string ValidationIssue::to_string() const {
    std::ostringstream os;
    os << constraint << " violated (value " << value << ")";
    return os.str();
}

std::string ValidationReport::to_string() const {
    if (ok) return "ok";
    std::string s;
    for (size_t k = 0; k < violations.size(); ++k) {
        if (k) s += "; ";
        s += violations[k].to_string();
    }
    return s;
}

ValidationReport validate_rates(const RateMatrix& rates) {
    ValidationReport rep;
    for (int j = 1; j < rates.dim(); ++j) {
        for (int i = 0; i < j; ++i) {
            double g = rates.rate(j, i);
            if (g < -kRateTol) {
                rep.violations.push_back({"0 <= g(" + std::to_string(j) + "->" + std::to_string(i) + ")", g});
            }
            if (g > 1.0 + kRateTol) {
                rep.violations.push_back({"g(" + std::to_string(j) + "->" + std::to_string(i) + ") <= 1", g});
            }
        }
        double x = rates.xi(j);
        if (x > 1.0 + kRateTol) {
            rep.violations.push_back({"xi_" + std::to_string(j) + " <= 1", x});
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

ValidationReport validate_rates(const RateVector3& rates) {
    ValidationReport rep;
    auto bound = [&rep](const char* name, double g) {
        if (g < -kRateTol) rep.violations.push_back({std::string("0 <= ") + name, g});
        if (g > 1.0 + kRateTol) rep.violations.push_back({std::string(name) + " <= 1", g});
    };
    bound("g1", rates.g1);
    bound("g2", rates.g2);
    bound("g3", rates.g3);
    if (rates.g2 + rates.g3 > 1.0 + kRateTol) {
        rep.violations.push_back({"g2+g3 <= 1", rates.g2 + rates.g3});
    }
    rep.ok = rep.violations.empty();
    return rep;
}

void require_valid(const RateMatrix& rates) {
    auto rep = validate_rates(rates);
    if (!rep.ok) throw std::invalid_argument("invalid damping rates: " + rep.to_string());
}

void require_valid(const RateVector3& rates) {
    auto rep = validate_rates(rates);
    if (!rep.ok) throw std::invalid_argument("invalid damping rates: " + rep.to_string());
}

double KrausSet::completeness_residual() const {
    Matrix s = Matrix::Zero(dim_in, dim_in);
    for (const Matrix& k : ops) s += k.adjoint() * k;
    return (s - Matrix::Identity(dim_in, dim_in)).cwiseAbs().maxCoeff();
}

KrausSet kraus_set(const RateMatrix& rates, bool minimal) {
    require_valid(rates);
    const int d = rates.dim();
    KrausSet ks;
    ks.dim_in = d;
    ks.dim_out = d;

    Matrix k0 = Matrix::Zero(d, d);
    k0(0, 0) = 1.0;
    for (int j = 1; j < d; ++j) k0(j, j) = safe_sqrt(1.0 - rates.xi(j));
    ks.ops.push_back(std::move(k0));

    for (int j = 1; j < d; ++j) {
        for (int i = j - 1; i >= 0; --i) {
            double g = rates.rate(j, i);
            if (minimal && g < kMinimalRate) continue;
            Matrix k = Matrix::Zero(d, d);
            k(i, j) = std::sqrt(std::max(g, 0.0));
            ks.ops.push_back(std::move(k));
        }
    }
    return ks;
}

KrausSet kraus_set(const RateVector3& rates, bool minimal) {
    return kraus_set(rates.to_rate_matrix(), minimal);
}

Matrix apply_to(const RateMatrix& rates, const Matrix& op) {
    require_dim(op, rates.dim(), "apply");
    KrausSet ks = kraus_set(rates, true);
    Matrix out = Matrix::Zero(rates.dim(), rates.dim());
    for (const Matrix& k : ks.ops) out += k * op * k.adjoint();
    return out;
}

Matrix apply_to(const RateVector3& rates, const Matrix& op) {
    return apply_to(rates.to_rate_matrix(), op);
}

DensityMatrix apply(const RateMatrix& rates, const DensityMatrix& rho) {
    return DensityMatrix(apply_to(rates, rho.matrix()));
}

DensityMatrix apply(const RateVector3& rates, const DensityMatrix& rho) {
    return apply(rates.to_rate_matrix(), rho);
}

Matrix complement_to(const RateMatrix& rates, const Matrix& op, bool minimal) {
    require_dim(op, rates.dim(), "complement");
    KrausSet ks = kraus_set(rates, minimal);
    const int n = ks.size();
    Matrix out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out(i, j) = (ks.ops[i] * op * ks.ops[j].adjoint()).trace();
        }
    }
    return out;
}

Matrix complement_to(const RateVector3& rates, const Matrix& op, bool minimal) {
    return complement_to(rates.to_rate_matrix(), op, minimal);
}

DensityMatrix complement(const RateMatrix& rates, const DensityMatrix& rho, bool minimal) {
    return DensityMatrix(complement_to(rates, rho.matrix(), minimal));
}

DensityMatrix complement(const RateVector3& rates, const DensityMatrix& rho, bool minimal) {
    return complement(rates.to_rate_matrix(), rho, minimal);
}

RateVector3 compose_rates(const RateVector3& first, const RateVector3& second) {
    require_valid(first);
    require_valid(second);
    RateVector3 out;
    out.g1 = second.g1 + first.g1 - first.g1 * second.g1;
    out.g2 = second.g2 * (1.0 - first.g1 - first.g2) + first.g2 * (1.0 - second.g3);
    out.g3 = second.g3 + second.g2 * (first.g1 - first.g3) + first.g3 * (1.0 - second.g3);
    require_valid(out);
    return out;
}

Matrix stinespring_isometry(const KrausSet& kraus) {
    const int n = kraus.size();
    Matrix v = Matrix::Zero(Eigen::Index(kraus.dim_out) * n, kraus.dim_in);
    for (int k = 0; k < n; ++k) {
        for (int r = 0; r < kraus.dim_out; ++r) {
            // row index of |r>_B (x) |k>_E
            v.row(Eigen::Index(r) * n + k) += kraus.ops[k].row(r);
        }
    }
    return v;
}

std::pair<Matrix, Matrix> effective_qubit_map(double g2, double g3, const Matrix& tau) {
    if (g2 < -kRateTol || g3 < -kRateTol || g2 + g3 > 1.0 + kRateTol) {
        throw std::invalid_argument("effective_qubit_map: rates must satisfy g2,g3 >= 0 and g2+g3 <= 1");
    }
    require_dim(tau, 2, "effective_qubit_map");
    const cplx t00 = tau(0, 0), t02 = tau(0, 1), t20 = tau(1, 0), t22 = tau(1, 1);

    Matrix out = Matrix::Zero(3, 3);
    out(0, 0) = t00 + g3 * t22;
    out(1, 1) = g2 * t22;
    out(2, 2) = (1.0 - g2 - g3) * t22;
    out(0, 2) = safe_sqrt(1.0 - g2 - g3) * t02;
    out(2, 0) = safe_sqrt(1.0 - g2 - g3) * t20;

    Matrix env = Matrix::Zero(3, 3);
    env(0, 0) = t00 + (1.0 - g2 - g3) * t22;
    env(1, 1) = g2 * t22;
    env(2, 2) = g3 * t22;
    env(0, 2) = safe_sqrt(g3) * t02;
    env(2, 0) = safe_sqrt(g3) * t20;
    return {out, env};
}

Matrix erase_level1(const Matrix& rho3) {
    require_dim(rho3, 3, "erase_level1");
    Matrix out(2, 2);
    out(0, 0) = rho3(0, 0) + rho3(1, 1);
    out(0, 1) = rho3(0, 2);
    out(1, 0) = rho3(2, 0);
    out(1, 1) = rho3(2, 2);
    return out;
}

Matrix erase_level2(double g2, const Matrix& rho3) {
    if (g2 < -kRateTol || g2 > 1.0 + kRateTol) {
        throw std::invalid_argument("erase_level2: g2 must lie in [0,1]");
    }
    require_dim(rho3, 3, "erase_level2");
    Matrix out(2, 2);
    out(0, 0) = rho3(0, 0) + (1.0 - g2) * rho3(2, 2);
    out(0, 1) = rho3(0, 1);
    out(1, 0) = rho3(1, 0);
    out(1, 1) = rho3(1, 1) + g2 * rho3(2, 2);
    return out;
}

Matrix qubit_adc(double g, const Matrix& tau) {
    if (g < -kRateTol || g > 1.0 + kRateTol) {
        throw std::invalid_argument("qubit_adc: rate must lie in [0,1]");
    }
    return apply_to(RateMatrix::qubit(std::clamp(g, 0.0, 1.0)), tau);
}

}  // namespace madcap
