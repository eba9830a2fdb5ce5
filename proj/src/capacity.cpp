#include "madcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace madcap {

namespace {

const double kLog2Three = std::log2(3.0);
constexpr double kBoundaryTol = 1e-12;
constexpr double kExactGap = 1e-6;  // interval this tight collapses to Exact

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

void require_unit(double g, const char* name) {
    if (!(g >= -kBoundaryTol && g <= 1.0 + kBoundaryTol)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
    }
}

SimplexPoint make_point(double p0, double p1) {
    p0 = clamp01(p0);
    p1 = std::min(clamp01(p1), 1.0 - p0);
    return {p0, p1, std::max(0.0, 1.0 - p0 - p1)};
}

}  // namespace

std::string to_string(CapacityStatus s) {
    switch (s) {
        case CapacityStatus::Exact: return "Exact";
        case CapacityStatus::Zero: return "Zero";
        case CapacityStatus::LowerBound: return "LowerBound";
        default: return "Interval";
    }
}

double eta(double x) {
    return x > 0.0 ? -x * std::log2(x) : 0.0;
}

double coherent_info(const RateMatrix& rates, const DensityMatrix& rho) {
    return entropy(apply(rates, rho)) - entropy(complement(rates, rho, true));
}

double coherent_info(const RateVector3& rates, const DensityMatrix& rho) {
    return coherent_info(rates.to_rate_matrix(), rho);
}

double mutual_info(const RateMatrix& rates, const DensityMatrix& rho) {
    double i = entropy(rho) + coherent_info(rates, rho);
    return i < 0.0 && i > -1e-9 ? 0.0 : i;
}

double mutual_info(const RateVector3& rates, const DensityMatrix& rho) {
    return mutual_info(rates.to_rate_matrix(), rho);
}

double diag_coherent_info(const RateVector3& g, const SimplexPoint& p) {
    double out = eta(p.p0 + g.g1 * p.p1 + g.g3 * p.p2) + eta((1.0 - g.g1) * p.p1 + g.g2 * p.p2) +
                 eta((1.0 - g.g2 - g.g3) * p.p2);
    double env = eta(1.0 - g.g1 * p.p1 - (g.g2 + g.g3) * p.p2) + eta(g.g1 * p.p1) +
                 eta(g.g2 * p.p2) + eta(g.g3 * p.p2);
    return out - env;
}

double diag_mutual_info(const RateVector3& g, const SimplexPoint& p) {
    return eta(p.p0) + eta(p.p1) + eta(p.p2) + diag_coherent_info(g, p);
}

namespace {

// golden-section argmax on [lo, hi]; deterministic, tolerant of boundary maxima
double golden_argmax(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double invphi = 0.6180339887498949;
    constexpr double xtol = 1e-12;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? c : d;
}

}  // namespace

SimplexMax maximize_interval(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
    (void)tol;
    constexpr int kCoarse = 800;
    double h = (hi - lo) / kCoarse;
    int best = 0;
    double best_v = f(lo);
    for (int i = 1; i <= kCoarse; ++i) {
        double v = f(lo + i * h);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double wl = std::max(lo, lo + (best - 2) * h);
    double wh = std::min(hi, lo + (best + 2) * h);
    double x = golden_argmax(f, wl, wh);
    double v = f(x);
    if (best_v > v) {
        x = lo + best * h;
        v = best_v;
    }
    return {{x, 0.0, 0.0}, v};
}

SimplexMax maximize_simplex(const std::function<double(const SimplexPoint&)>& f, double tol,
                            int starts) {
    constexpr int kGrid = 100;  // coarse step 0.01
    struct Cell {
        double value;
        double p0, p1;
    };
    std::vector<Cell> cells;
    cells.reserve((kGrid + 1) * (kGrid + 2) / 2);
    for (int i = 0; i <= kGrid; ++i) {
        double p0 = double(i) / kGrid;
        for (int j = 0; j <= kGrid - i; ++j) {
            double p1 = double(j) / kGrid;
            cells.push_back({f(make_point(p0, p1)), p0, p1});
        }
    }
    starts = std::clamp(starts, 1, int(cells.size()));
    std::partial_sort(cells.begin(), cells.begin() + starts, cells.end(),
                      [](const Cell& a, const Cell& b) {
                          if (a.value != b.value) return a.value > b.value;
                          if (a.p0 != b.p0) return a.p0 < b.p0;
                          return a.p1 < b.p1;
                      });

    SimplexMax best{make_point(cells[0].p0, cells[0].p1), cells[0].value};
    const double improve_tol = tol * 1e-2;
    for (int s = 0; s < starts; ++s) {
        double p0 = cells[s].p0, p1 = cells[s].p1;
        double v = cells[s].value;
        for (int round = 0; round < 80; ++round) {
            // sweep the three exchange directions of the simplex
            p0 = golden_argmax([&](double x) { return f(make_point(x, p1)); }, 0.0, 1.0 - p1);
            p1 = golden_argmax([&](double x) { return f(make_point(p0, x)); }, 0.0, 1.0 - p0);
            const double p2 = std::max(0.0, 1.0 - p0 - p1);
            p0 = golden_argmax([&](double x) { return f(make_point(x, 1.0 - p2 - x)); }, 0.0,
                               1.0 - p2);
            p1 = std::max(0.0, 1.0 - p2 - p0);
            double vn = f(make_point(p0, p1));
            if (vn - v < improve_tol) {
                v = std::max(v, vn);
                break;
            }
            v = vn;
        }
        if (v > best.value) best = {make_point(p0, p1), v};
    }
    return best;
}

CapacityEstimate max_diag_coherent_info(const RateVector3& rates) {
    require_valid(rates);
    Classification cls = classify(rates);
    SimplexMax m = maximize_simplex([&](const SimplexPoint& p) { return diag_coherent_info(rates, p); },
                                    1e-9, cls.degradable ? 1 : 16);
    CapacityEstimate est;
    est.argmax = m.point;
    if (cls.degradable) {
        est.lower = est.upper = m.value;
        est.status = CapacityStatus::Exact;
        est.method = "degradable-diagonal-max";
    } else {
        est.lower = std::max(0.0, m.value);
        est.upper = kLog2Three;
        est.status = CapacityStatus::LowerBound;
        est.method = "diagonal-coherent-info-lower-bound";
    }
    return est;
}

SimplexMax max_diag_mutual_info(const RateVector3& rates) {
    require_valid(rates);
    return maximize_simplex([&](const SimplexPoint& p) { return diag_mutual_info(rates, p); }, 1e-9,
                            4);
}

CapacityEstimate q_single_decay(double g1) {
    require_unit(g1, "g1");
    g1 = clamp01(g1);
    CapacityEstimate est;
    if (g1 >= 0.5) {
        est.lower = est.upper = 1.0;
        est.status = CapacityStatus::Exact;
        est.method = "single-decay-plateau";
        est.argmax = SimplexPoint{0.5, 0.0, 0.5};
        return est;
    }
    SimplexMax m = maximize_simplex(
        [g1](const SimplexPoint& p) {
            return eta(p.p2) + eta(p.p0 + g1 * p.p1) + eta((1.0 - g1) * p.p1) -
                   eta(1.0 - g1 * p.p1) - eta(g1 * p.p1);
        },
        1e-9, 1);
    est.lower = est.upper = m.value;
    est.status = CapacityStatus::Exact;
    est.method = "single-decay-diagonal-max";
    est.argmax = m.point;
    return est;
}

CapacityEstimate q_gamma1_one(double g2, double g3) {
    require_unit(g2, "g2");
    require_unit(g3, "g3");
    if (g2 + g3 > 1.0 + kBoundaryTol) {
        throw std::invalid_argument("q_gamma1_one requires g2+g3 <= 1");
    }
    g2 = clamp01(g2);
    g3 = clamp01(std::min(g3, 1.0 - g2));
    CapacityEstimate est;
    if (g3 >= 0.5 * (1.0 - g2) - kBoundaryTol) {
        est.status = CapacityStatus::Zero;
        est.method = "top-drained-zero-region";
        return est;
    }
    SimplexMax m = maximize_interval(
        [g2, g3](double p) {
            return eta(1.0 - (1.0 - g3) * p) + eta((1.0 - g2 - g3) * p) -
                   eta(1.0 - (g2 + g3) * p) - eta(g3 * p);
        },
        0.0, 1.0);
    est.lower = est.upper = m.value;
    est.status = CapacityStatus::Exact;
    est.method = "top-drained-effective-qubit-max";
    est.argmax = SimplexPoint{1.0 - m.point.p0, 0.0, m.point.p0};
    return est;
}

double qubit_adc_capacity(double g) {
    require_unit(g, "g");
    g = clamp01(g);
    if (g >= 0.5) return 0.0;
    SimplexMax m = maximize_interval(
        [g](double p) {
            return eta((1.0 - g) * p) + eta(1.0 - (1.0 - g) * p) - eta(g * p) - eta(1.0 - g * p);
        },
        0.0, 1.0);
    return m.value;
}

CapacityEstimate q_plane_gamma2_zero(double g1, double g3) {
    require_unit(g1, "g1");
    require_unit(g3, "g3");
    g1 = clamp01(g1);
    g3 = clamp01(g3);
    CapacityEstimate est;
    if (g1 >= 0.5 && g3 >= 0.5) {
        est.status = CapacityStatus::Zero;
        est.method = "g2-zero-antidegradable-zero";
        return est;
    }
    if (g1 <= 0.5 && g3 <= 0.5) {
        SimplexMax m = maximize_simplex(
            [g1, g3](const SimplexPoint& p) {
                double p1 = p.p1, p2 = p.p2;
                return eta(1.0 - (1.0 - g1) * p1 - (1.0 - g3) * p2) + eta((1.0 - g1) * p1) +
                       eta((1.0 - g3) * p2) - eta(1.0 - g1 * p1 - g3 * p2) - eta(g1 * p1) -
                       eta(g3 * p2);
            },
            1e-9, 1);
        est.lower = est.upper = m.value;
        est.status = CapacityStatus::Exact;
        est.method = "g2-zero-degradable-max";
        est.argmax = m.point;
        return est;
    }
    // one rate above 1/2: the value is constant in that rate and equals the
    // two-level damping capacity of the sub-half coordinate
    double v = qubit_adc_capacity(std::min(g1, g3));
    est.lower = est.upper = v;
    est.status = CapacityStatus::Exact;
    est.method = "g2-zero-monotone-constancy";
    return est;
}

CapacityEstimate q_plane_gamma1_zero(double g2, double g3) {
    require_unit(g2, "g2");
    require_unit(g3, "g3");
    if (g2 + g3 > 1.0 + kBoundaryTol) {
        throw std::invalid_argument("q_plane_gamma1_zero requires g2+g3 <= 1");
    }
    g2 = clamp01(g2);
    g3 = clamp01(std::min(g3, 1.0 - g2));
    CapacityEstimate est;
    if (g2 + g3 >= 0.5) {
        est.lower = est.upper = 1.0;
        est.status = CapacityStatus::Exact;
        est.method = "g1-zero-plateau";
        est.argmax = SimplexPoint{0.5, 0.5, 0.0};
        return est;
    }
    SimplexMax m = maximize_simplex(
        [g2, g3](const SimplexPoint& p) {
            double p1 = p.p1, p2 = p.p2;
            return eta(p1 + g2 * p2) + eta(1.0 - p1 - (1.0 - g3) * p2) +
                   eta((1.0 - g2 - g3) * p2) - eta(1.0 - (g2 + g3) * p2) - eta(g2 * p2) -
                   eta(g3 * p2);
        },
        1e-9, 1);
    est.lower = est.upper = m.value;
    est.status = CapacityStatus::Exact;
    est.method = "g1-zero-degradable-max";
    est.argmax = m.point;
    return est;
}

CapacityEstimate q_plane_sum_one(double g1) {
    require_unit(g1, "g1");
    g1 = clamp01(g1);
    CapacityEstimate est;
    if (g1 >= 0.5) {
        est.status = CapacityStatus::Zero;
        est.method = "top-depopulated-qubit-adc-zero";
        return est;
    }
    SimplexMax m = maximize_interval(
        [g1](double p) {
            return eta((1.0 - g1) * p) + eta(1.0 - (1.0 - g1) * p) - eta(g1 * p) -
                   eta(1.0 - g1 * p);
        },
        0.0, 1.0);
    est.lower = est.upper = m.value;
    est.status = CapacityStatus::Exact;
    est.method = "top-depopulated-qubit-adc";
    est.argmax = SimplexPoint{1.0 - m.point.p0, m.point.p0, 0.0};
    return est;
}

namespace {

// argmax of the single-decay functional re-expressed for the channel whose
// decaying pair is (ground, excited) with the remaining level untouched
SimplexPoint permute_single_decay_argmax(const SimplexPoint& a, int ground, int excited) {
    double p[3] = {0.0, 0.0, 0.0};
    int spectator = 3 - ground - excited;
    p[ground] = a.p0;
    p[excited] = a.p1;
    p[spectator] = a.p2;
    return {p[0], p[1], p[2]};
}

}  // namespace

CapacityEstimate q_bounds(const RateVector3& rates) {
    require_valid(rates);
    const double g1 = clamp01(rates.g1), g2 = clamp01(rates.g2), g3 = clamp01(rates.g3);
    const bool z1 = g1 <= kBoundaryTol, z2 = g2 <= kBoundaryTol, z3 = g3 <= kBoundaryTol;

    if (z2 && z3) return q_single_decay(g1);
    if (z1 && z3) {
        CapacityEstimate est = q_single_decay(g2);
        if (est.argmax) est.argmax = permute_single_decay_argmax(*est.argmax, 1, 2);
        return est;
    }
    if (z1 && z2) {
        CapacityEstimate est = q_single_decay(g3);
        if (est.argmax) est.argmax = permute_single_decay_argmax(*est.argmax, 0, 2);
        return est;
    }
    if (g1 >= 1.0 - kBoundaryTol) return q_gamma1_one(g2, g3);
    if (z2) return q_plane_gamma2_zero(g1, g3);
    if (z1) return q_plane_gamma1_zero(g2, g3);
    if (g2 + g3 >= 1.0 - kBoundaryTol) return q_plane_sum_one(g1);
    if (g1 >= 0.5 && g3 >= 0.5) {
        CapacityEstimate est;
        est.status = CapacityStatus::Zero;
        est.method = "antidegradable-bottleneck-zero";
        return est;
    }

    CapacityEstimate lower = max_diag_coherent_info(rates);
    struct Bound {
        double value;
        const char* via;
    };
    RateVector3 rv{g1, g2, g3};
    Bound bounds[] = {
        {q_plane_gamma1_zero(g2, g3).value(), "g1-zero-plane"},
        {q_plane_gamma2_zero(g1, g3).value(), "g2-zero-plane"},
        {q_single_decay(g1).value(), "single-decay-g1"},
        {q_single_decay(rv.bar2()).value(), "single-decay-g2-bar"},
        {q_single_decay(rv.bar3()).value(), "single-decay-g3-bar"},
    };
    Bound best = bounds[0];
    for (const Bound& b : bounds) {
        if (b.value < best.value) best = b;
    }

    CapacityEstimate est;
    est.lower = lower.value();
    est.upper = std::max(best.value, est.lower);
    est.argmax = lower.argmax;
    if (est.upper - est.lower <= kExactGap) {
        est.upper = est.lower;
        est.status = CapacityStatus::Exact;
        est.method = "bounds-coincide";
    } else {
        est.status = CapacityStatus::Interval;
        est.method = std::string("bottleneck-interval(upper via ") + best.via + ")";
    }
    return est;
}

CapacityEstimate cp(const RateVector3& rates) {
    CapacityEstimate est = q_bounds(rates);
    if (!est.is_exact()) {
        est.note = "private value may exceed the quantum lower bound";
    }
    return est;
}

CapacityEstimate qe(const RateVector3& rates) {
    SimplexMax m = max_diag_mutual_info(rates);
    CapacityEstimate est;
    est.lower = est.upper = 0.5 * m.value;
    est.status = CapacityStatus::Exact;
    est.method = "ea-diagonal-max";
    est.argmax = m.point;
    return est;
}

}  // namespace madcap
