#pragma once

#include "madcap/degradability.hpp"

#include <functional>
#include <optional>
#include <string>

namespace madcap {

/// Populations of a diagonal qutrit input state.
struct SimplexPoint {
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

enum class CapacityStatus { Exact, Zero, LowerBound, Interval };

std::string to_string(CapacityStatus s);

/// Capacity value in bits per channel use together with its provenance. For
/// Exact and Zero results lower == upper; LowerBound results carry the
/// trivial log2(3) ceiling; Interval results carry both computed bounds.
struct CapacityEstimate {
    double lower = 0.0;
    double upper = 0.0;
    CapacityStatus status = CapacityStatus::Exact;
    std::string method;
    std::optional<SimplexPoint> argmax;
    std::string note;

    double value() const { return lower; }
    bool is_exact() const {
        return status == CapacityStatus::Exact || status == CapacityStatus::Zero;
    }
};

/// -x log2 x for x > 0, else 0.
double eta(double x);

/// S(channel output) - S(environment output).
double coherent_info(const RateMatrix& rates, const DensityMatrix& rho);
double coherent_info(const RateVector3& rates, const DensityMatrix& rho);

/// S(input) + S(channel output) - S(environment output), clamped at 0.
double mutual_info(const RateMatrix& rates, const DensityMatrix& rho);
double mutual_info(const RateVector3& rates, const DensityMatrix& rho);

/// Closed-form coherent information of a diagonal input (both channel and
/// environment outputs are diagonal for diagonal inputs).
double diag_coherent_info(const RateVector3& rates, const SimplexPoint& p);
double diag_mutual_info(const RateVector3& rates, const SimplexPoint& p);

struct SimplexMax {
    SimplexPoint point;
    double value = 0.0;
};

/// Deterministic maximization over the probability simplex: coarse 0.01 grid,
/// then coordinatewise golden-section refinement from the `starts` best cells
/// until the value improves by less than tol.
SimplexMax maximize_simplex(const std::function<double(const SimplexPoint&)>& f, double tol = 1e-9,
                            int starts = 1);

/// Deterministic 1-d maximization on [lo, hi] (coarse grid + golden section).
SimplexMax maximize_interval(const std::function<double(double)>& f, double lo, double hi,
                             double tol = 1e-9);

/// Diagonal-input maximum of the coherent information: Exact when the channel
/// is degradable, otherwise a lower bound on the quantum capacity.
CapacityEstimate max_diag_coherent_info(const RateVector3& rates);

/// Diagonal-input maximum of the mutual information (before the 1/2 factor).
SimplexMax max_diag_mutual_info(const RateVector3& rates);

/// Quantum (= private classical) capacity of the single-decay channel.
CapacityEstimate q_single_decay(double g1);

/// Quantum capacity on the fully-drained-level-1 plane (g1 = 1).
CapacityEstimate q_gamma1_one(double g2, double g3);

/// Quantum capacity on the g2 = 0 plane, exact on the whole square.
CapacityEstimate q_plane_gamma2_zero(double g1, double g3);

/// Quantum capacity on the g1 = 0 plane, exact on the whole triangle.
CapacityEstimate q_plane_gamma1_zero(double g2, double g3);

/// Quantum capacity on the g2 + g3 = 1 plane (independent of g2).
CapacityEstimate q_plane_sum_one(double g1);

/// Exact two-level amplitude damping capacity (0 for g >= 1/2).
double qubit_adc_capacity(double g);

/// Dispatcher: exact regime value where one applies, the certified zero
/// region, or a [diagonal lower bound, bottleneck upper bound] interval.
CapacityEstimate q_bounds(const RateVector3& rates);

/// Private classical capacity: coincides with the quantum estimate wherever
/// that is exact or zero; interval results are quantum bounds only.
CapacityEstimate cp(const RateVector3& rates);

/// Entanglement-assisted quantum capacity, exact for every valid rate vector.
CapacityEstimate qe(const RateVector3& rates);

}  // namespace madcap
