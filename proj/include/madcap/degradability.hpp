#pragma once

#include "madcap/mad_channel.hpp"

#include <functional>
#include <optional>

namespace madcap {

/// Matrix representation of a linear map on vectorized operators; `m` is
/// (dim_out^2) x (dim_in^2) with row-major vectorization |i><j| -> i*d + j.
struct Superoperator {
    Matrix m;
    int dim_in = 0;
    int dim_out = 0;
};

CVector vectorize(const Matrix& op);
Matrix devectorize(const CVector& v, int rows, int cols);

/// M = sum_k K_k (x) conj(K_k).
Superoperator superop_matrix(const KrausSet& kraus);

/// Superoperator built column by column from an arbitrary linear action.
Superoperator superop_from_action(const std::function<Matrix(const Matrix&)>& action, int dim_in,
                                  int dim_out);

Superoperator superop_of_channel(const RateVector3& rates);
Superoperator superop_of_complement(const RateVector3& rates, bool minimal = true);

/// Matrix product lhs . rhs (rhs acts first).
Superoperator superop_compose(const Superoperator& lhs, const Superoperator& rhs);

struct InverseResult {
    std::optional<Superoperator> inverse;  // empty when the channel is singular
    /// Smallest diagonal scale factor met during the blockwise inversion;
    /// 1/min_scale bounds the conditioning of the inverse.
    double min_scale = 0.0;
    std::string report;
};

/// Blockwise-analytic inverse of a MAD superoperator: the population block is
/// a triangular stochastic matrix solved exactly, each coherence is a scalar.
/// Singular exactly when some xi_j reaches 1 (capped coherence scale 0).
InverseResult superop_inverse(const RateMatrix& rates);
InverseResult superop_inverse(const RateVector3& rates);

/// Candidate degrading map complement . inverse; throws std::domain_error when
/// the channel is not invertible.
Superoperator degrading_candidate(const RateVector3& rates, bool minimal = true);

/// Choi operator of the map: (1/dim_in) sum_{ij} |i><j| (x) Map(|i><j|).
Matrix choi_of_superop(const Superoperator& s);

struct CptpReport {
    bool cptp = false;
    double choi_min_eigenvalue = 0.0;
    double trace_preservation_residual = 0.0;
    double hermiticity_gap = 0.0;
};

/// CPTP iff the Choi operator is PSD within tol and the partial trace over
/// the output equals identity/dim_in within tol.
CptpReport is_cptp_superop(const Superoperator& s, double tol = kDefaultTol);

enum class Tristate { Yes, No, Unknown };

std::string to_string(Tristate t);

struct Classification {
    bool degradable = false;
    Tristate antidegradable = Tristate::Unknown;
    std::string degradable_witness;
    std::string antidegradable_witness;
    /// Rates of the connecting MAD channel proving the positive certificate,
    /// when one exists in closed form.
    std::optional<RateVector3> degrading_connector;
    double tol = kDefaultTol;
};

/// Degradable/antidegradable classification of the qutrit channel. The
/// degradable side is decided by the inversion certificate wherever the
/// channel is invertible and by retained-coherence obstructions elsewhere;
/// the antidegradable side is decided only where a certificate or structural
/// obstruction is known, and reported Unknown otherwise.
Classification classify(const RateVector3& rates, double tol = kDefaultTol);

}  // namespace madcap
