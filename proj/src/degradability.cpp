#include "madcap/degradability.hpp"

#include <cmath>
#include <sstream>

namespace madcap {

namespace {

constexpr double kSingularGap = 1e-12;  // xi_j this close to 1 counts as singular
constexpr double kPlaneTol = 1e-12;     // rate this close to 0 counts as on-plane
constexpr double kIdentityResidualTol = 1e-10;

bool invertible_rates(const RateMatrix& rates) {
    for (int j = 1; j < rates.dim(); ++j) {
        if (rates.xi(j) > 1.0 - kSingularGap) return false;
    }
    return true;
}

}  // namespace

CVector vectorize(const Matrix& op) {
    CVector v(op.rows() * op.cols());
    for (Eigen::Index i = 0; i < op.rows(); ++i)
        for (Eigen::Index j = 0; j < op.cols(); ++j) v(i * op.cols() + j) = op(i, j);
    return v;
}

Matrix devectorize(const CVector& v, int rows, int cols) {
    if (v.size() != Eigen::Index(rows) * cols) {
        throw std::invalid_argument("devectorize: size mismatch");
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v(Eigen::Index(i) * cols + j);
    return m;
}

Superoperator superop_matrix(const KrausSet& kraus) {
    Superoperator s;
    s.dim_in = kraus.dim_in;
    s.dim_out = kraus.dim_out;
    s.m = Matrix::Zero(Eigen::Index(s.dim_out) * s.dim_out, Eigen::Index(s.dim_in) * s.dim_in);
    for (const Matrix& k : kraus.ops) s.m += kron(k, k.conjugate());
    return s;
}

Superoperator superop_from_action(const std::function<Matrix(const Matrix&)>& action, int dim_in,
                                  int dim_out) {
    Superoperator s;
    s.dim_in = dim_in;
    s.dim_out = dim_out;
    s.m = Matrix::Zero(Eigen::Index(dim_out) * dim_out, Eigen::Index(dim_in) * dim_in);
    for (int i = 0; i < dim_in; ++i) {
        for (int j = 0; j < dim_in; ++j) {
            Matrix basis = Matrix::Zero(dim_in, dim_in);
            basis(i, j) = 1.0;
            s.m.col(Eigen::Index(i) * dim_in + j) = vectorize(action(basis));
        }
    }
    return s;
}

Superoperator superop_of_channel(const RateVector3& rates) {
    return superop_matrix(kraus_set(rates));
}

Superoperator superop_of_complement(const RateVector3& rates, bool minimal) {
    KrausSet ks = kraus_set(rates, minimal);
    RateMatrix rm = rates.to_rate_matrix();
    return superop_from_action([&](const Matrix& op) { return complement_to(rm, op, minimal); }, 3,
                               ks.size());
}

Superoperator superop_compose(const Superoperator& lhs, const Superoperator& rhs) {
    if (lhs.dim_in != rhs.dim_out) {
        throw std::invalid_argument("superop_compose: dimension mismatch");
    }
    return {lhs.m * rhs.m, rhs.dim_in, lhs.dim_out};
}

InverseResult superop_inverse(const RateMatrix& rates) {
    require_valid(rates);
    const int d = rates.dim();

    // coherence scale of |i><j| is c_i c_j with c_i = sqrt(1 - xi_i), c_0 = 1
    std::vector<double> c(d);
    c[0] = 1.0;
    double min_scale = 1.0;
    for (int j = 1; j < d; ++j) {
        double s = 1.0 - rates.xi(j);
        c[j] = std::sqrt(std::max(s, 0.0));
        min_scale = std::min(min_scale, s);
    }

    InverseResult res;
    res.min_scale = min_scale;
    if (!invertible_rates(rates)) {
        std::ostringstream os;
        os << "not invertible: some level is fully drained (min population scale " << min_scale
           << ")";
        res.report = os.str();
        return res;
    }

    // population block: out_i = (1-xi_i) p_i + sum_{j>i} g_{ji} p_j, upper
    // triangular with positive diagonal; invert by back substitution
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        t(i, i) = 1.0 - rates.xi(i);
        for (int j = i + 1; j < d; ++j) t(i, j) = rates.rate(j, i);
    }
    Eigen::MatrixXd tinv = Eigen::MatrixXd::Zero(d, d);
    for (int col = d - 1; col >= 0; --col) {
        tinv(col, col) = 1.0 / t(col, col);
        for (int row = col - 1; row >= 0; --row) {
            double acc = 0.0;
            for (int k = row + 1; k <= col; ++k) acc += t(row, k) * tinv(k, col);
            tinv(row, col) = -acc / t(row, row);
        }
    }

    Superoperator inv;
    inv.dim_in = d;
    inv.dim_out = d;
    inv.m = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) inv.m(Eigen::Index(i) * d + i, Eigen::Index(k) * d + k) = tinv(i, k);
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            inv.m(Eigen::Index(i) * d + j, Eigen::Index(i) * d + j) = 1.0 / (c[i] * c[j]);
        }
    }
    res.inverse = std::move(inv);
    std::ostringstream os;
    os << "invertible; min population scale " << min_scale << " (condition of the inverse <= "
       << 1.0 / min_scale << ")";
    res.report = os.str();
    return res;
}

InverseResult superop_inverse(const RateVector3& rates) {
    return superop_inverse(rates.to_rate_matrix());
}

Superoperator degrading_candidate(const RateVector3& rates, bool minimal) {
    InverseResult inv = superop_inverse(rates);
    if (!inv.inverse) {
        throw std::domain_error("degrading_candidate: " + inv.report);
    }
    return superop_compose(superop_of_complement(rates, minimal), *inv.inverse);
}

Matrix choi_of_superop(const Superoperator& s) {
    const int da = s.dim_in, db = s.dim_out;
    Matrix choi = Matrix::Zero(Eigen::Index(da) * db, Eigen::Index(da) * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            Matrix basis = Matrix::Zero(da, da);
            basis(i, j) = 1.0;
            Matrix out = devectorize(s.m * vectorize(basis), db, db);
            choi.block(Eigen::Index(i) * db, Eigen::Index(j) * db, db, db) = out;
        }
    }
    return choi / double(da);
}

CptpReport is_cptp_superop(const Superoperator& s, double tol) {
    Matrix choi = choi_of_superop(s);
    CptpReport rep;
    rep.hermiticity_gap = hermiticity_gap(choi);
    rep.choi_min_eigenvalue = eig_hermitian(hermitian_part(choi), 1.0).min();
    Matrix tr_out = partial_trace(choi, Subsystem::A, s.dim_in, s.dim_out);
    rep.trace_preservation_residual =
        (tr_out - Matrix::Identity(s.dim_in, s.dim_in) / double(s.dim_in)).cwiseAbs().maxCoeff();
    rep.cptp = rep.hermiticity_gap <= tol && rep.choi_min_eigenvalue >= -tol &&
               rep.trace_preservation_residual <= tol;
    return rep;
}

std::string to_string(Tristate t) {
    switch (t) {
        case Tristate::Yes: return "yes";
        case Tristate::No: return "no";
        default: return "unknown";
    }
}

namespace {

std::string cptp_summary(const CptpReport& rep) {
    std::ostringstream os;
    os << "choi min eigenvalue " << rep.choi_min_eigenvalue << ", trace-preservation residual "
       << rep.trace_preservation_residual;
    return os.str();
}

// D' = connector o D'~ on the fully-drained-level-1 plane; residual of the
// superoperator identity for the connector D_(0,0,(2 g3 + g2 - 1)/g3).
double effective_antideg_residual(double g2, double g3, RateVector3* connector) {
    double gbar = std::max(0.0, (2.0 * g3 + g2 - 1.0) / g3);
    *connector = {0.0, 0.0, std::min(gbar, 1.0)};
    Superoperator d_prime = superop_from_action(
        [&](const Matrix& tau) { return effective_qubit_map(g2, g3, tau).first; }, 2, 3);
    Superoperator d_prime_compl = superop_from_action(
        [&](const Matrix& tau) { return effective_qubit_map(g2, g3, tau).second; }, 2, 3);
    Superoperator lhs = superop_compose(superop_of_channel(*connector), d_prime_compl);
    return (lhs.m - d_prime.m).cwiseAbs().maxCoeff();
}

}  // namespace

Classification classify(const RateVector3& rates, double tol) {
    require_valid(rates);
    const double g1 = rates.g1, g2 = rates.g2, g3 = rates.g3;
    Classification out;
    out.tol = tol;

    const bool invertible = invertible_rates(rates.to_rate_matrix());
    if (invertible) {
        CptpReport rep = is_cptp_superop(degrading_candidate(rates, true), tol);
        out.degradable = rep.cptp;
        out.degradable_witness =
            (rep.cptp ? "complement o inverse is CPTP (" : "complement o inverse fails CPTP (") +
            cptp_summary(rep) + ")";
    } else {
        out.degradable = false;
        if (g1 > 1.0 - kSingularGap) {
            out.degradable_witness =
                "singular channel: the |0><1| coherence is erased from the output but retained by "
                "the environment, so no linear degrading map exists";
        } else if (g3 > kPlaneTol) {
            out.degradable_witness =
                "singular channel: the |0><2| coherence is erased from the output but retained by "
                "the environment, so no linear degrading map exists";
        } else {
            out.degradable_witness =
                "singular channel: the |1><2| coherence is erased from the output but retained by "
                "the environment, so no linear degrading map exists";
        }
    }

    if (g2 <= kPlaneTol) {
        // two-decay plane g2 = 0: the complement is the channel at mirrored rates
        if (g1 >= 0.5 - tol && g3 >= 0.5 - tol) {
            RateVector3 mirrored{1.0 - g1, 0.0, 1.0 - g3};
            CptpReport rep = is_cptp_superop(degrading_candidate(mirrored, true), tol);
            out.antidegradable = rep.cptp ? Tristate::Yes : Tristate::No;
            out.antidegradable_witness =
                "complement equals the channel at mirrored rates; its degrading map certifies "
                "antidegradability (" +
                cptp_summary(rep) + ")";
        } else if (g3 <= kPlaneTol) {
            out.antidegradable = Tristate::No;
            out.antidegradable_witness = "noiseless qubit subspace span{|0>,|2>}";
        } else {
            out.antidegradable = Tristate::No;
            out.antidegradable_witness =
                "strictly positive quantum capacity on this quadrant (two-level damping value of "
                "the smaller rate)";
        }
    } else if (g1 <= kPlaneTol) {
        out.antidegradable = Tristate::No;
        out.antidegradable_witness = "noiseless qubit subspace span{|0>,|1>}";
    } else if (g1 >= 1.0 - kSingularGap) {
        if (g3 >= 0.5 * (1.0 - g2) - tol) {
            out.antidegradable = Tristate::Yes;
            if (g3 > kPlaneTol) {
                RateVector3 connector;
                double res = effective_antideg_residual(g2, g3, &connector);
                if (res <= kIdentityResidualTol) {
                    out.degrading_connector = connector;
                    std::ostringstream os;
                    os << "the effective two-level-input channel is antidegradable: composing its "
                          "complement with D_(0,0,"
                       << connector.g3 << ") recovers it (residual " << res << ")";
                    out.antidegradable_witness = os.str();
                } else {
                    out.antidegradable = Tristate::Unknown;
                    out.antidegradable_witness = "effective-channel certificate failed numerically";
                }
            } else {
                // g3 = 0 forces g2 = 1: fully classical action, environment
                // dephasing reproduces the output
                out.antidegradable_witness =
                    "fully dephased populations; a classical coarse-graining of the environment "
                    "reproduces the output";
            }
        } else {
            out.antidegradable = Tristate::No;
            out.antidegradable_witness =
                "strictly positive quantum capacity below the effective-channel borderline";
        }
    } else if (g3 <= kPlaneTol) {
        out.antidegradable = Tristate::No;
        out.antidegradable_witness =
            "the environment erases the |0><2| coherence that the output retains, so no recovery "
            "map exists";
    } else {
        out.antidegradable = Tristate::Unknown;
        out.antidegradable_witness = "no certificate known for interior rate vectors";
    }
    return out;
}

}  // namespace madcap
