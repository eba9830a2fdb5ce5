#pragma once

#include "madcap/matrix_core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace madcap {

/// Decay rates gamma_{ji} (level j -> level i, i < j) of a d-level
/// multi-level amplitude damping channel.
class RateMatrix {
public:
    explicit RateMatrix(int dim);

    static RateMatrix qutrit(double g1, double g2, double g3);
    static RateMatrix qubit(double g);

    int dim() const { return dim_; }
    double rate(int j, int i) const;
    void set_rate(int j, int i, double value);

    /// xi_j = sum_{i<j} gamma_{ji}; total outflow probability of level j.
    double xi(int j) const;

    bool operator==(const RateMatrix&) const = default;

private:
    int index(int j, int i) const;

    int dim_;
    std::vector<double> rates_;  // packed over pairs i < j
};

/// Qutrit rates: g1 = 1->0, g2 = 2->1, g3 = 2->0.
struct RateVector3 {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;

    RateMatrix to_rate_matrix() const;
    /// g2 / (1 - g3); defined for g3 < 1.
    double bar2() const;
    /// g3 / (1 - g2); defined for g2 < 1.
    double bar3() const;
};

struct ValidationIssue {
    std::string constraint;
    double value;
    std::string to_string() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> violations;
    std::string to_string() const;
};

/// Checks 0 <= gamma_{ji} <= 1 and xi_j <= 1 for every level, within 1e-12;
/// names each violated constraint.
ValidationReport validate_rates(const RateMatrix& rates);
ValidationReport validate_rates(const RateVector3& rates);

/// Throws std::invalid_argument carrying the report when validation fails.
void require_valid(const RateMatrix& rates);
void require_valid(const RateVector3& rates);

/// Ordered Kraus operators. Wire order: K0 first, then the decay operators
/// K_{ij} grouped by source level j ascending and destination i descending,
/// i.e. (K0, K_{01}, K_{12}, K_{02}) for a qutrit. This fixed order is the
/// environment basis used by the complementary channel.
struct KrausSet {
    std::vector<Matrix> ops;
    int dim_in = 0;
    int dim_out = 0;

    int size() const { return static_cast<int>(ops.size()); }
    /// max-norm residual of sum_k K^dag K - identity.
    double completeness_residual() const;
};

/// Kraus operators of the channel. With `minimal` set, decay operators whose
/// rate is below 1e-12 are dropped, shrinking the environment dimension to
/// the number of genuinely active operators.
KrausSet kraus_set(const RateMatrix& rates, bool minimal = false);
KrausSet kraus_set(const RateVector3& rates, bool minimal = false);

/// Linear action of the channel on an arbitrary operator.
Matrix apply_to(const RateMatrix& rates, const Matrix& op);
Matrix apply_to(const RateVector3& rates, const Matrix& op);

/// Channel output for a state input.
DensityMatrix apply(const RateMatrix& rates, const DensityMatrix& rho);
DensityMatrix apply(const RateVector3& rates, const DensityMatrix& rho);

/// Linear action of the complementary channel: out_{ij} = Tr[K_i op K_j^dag]
/// in the wire order above. Environment dimension = number of Kraus
/// operators (4 for a generic qutrit, fewer with `minimal`).
Matrix complement_to(const RateMatrix& rates, const Matrix& op, bool minimal = false);
Matrix complement_to(const RateVector3& rates, const Matrix& op, bool minimal = false);

DensityMatrix complement(const RateMatrix& rates, const DensityMatrix& rho, bool minimal = false);
DensityMatrix complement(const RateVector3& rates, const DensityMatrix& rho, bool minimal = false);

/// Closed-form qutrit concatenation: result acts like `second` applied first,
/// then `first`.
RateVector3 compose_rates(const RateVector3& first, const RateVector3& second);

/// Stinespring isometry V = sum_k K_k (x) |k>_E as a (d*n) x d matrix.
Matrix stinespring_isometry(const KrausSet& kraus);

/// Effective two-level channel obtained when level 1 is fully drained: maps
/// an operator on span{|0>,|2>} to (qutrit output, 3x3 environment output).
std::pair<Matrix, Matrix> effective_qubit_map(double g2, double g3, const Matrix& tau);

/// Erases level 1, moving its population to |0>; output on span{|0>,|2>}.
Matrix erase_level1(const Matrix& rho3);

/// Erases level 2, splitting its population between |1> (weight g2) and |0>;
/// output on span{|0>,|1>}.
Matrix erase_level2(double g2, const Matrix& rho3);

/// Standard two-level amplitude damping map with rate g.
Matrix qubit_adc(double g, const Matrix& tau);

}  // namespace madcap
