#pragma once

#include "madcap/capacity.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace madcap {

enum class Quantity { Q, Cp, QE, Classify };

std::string to_string(Quantity q);
/// Accepts "q", "cp", "qe", "classify" (case-insensitive).
Quantity parse_quantity(const std::string& s);

struct PlaneSpec {
    enum class Kind { FixedG1, FixedG2, FixedG3, SumG2G3 };
    Kind kind = Kind::FixedG2;
    double value = 0.0;  // the fixed coordinate (or the g2+g3 sum, always 1)

    std::string to_string() const;
};

/// Parses "g1=0.3", "g2=0", "g3=0", "g2+g3=1" (whitespace ignored).
PlaneSpec parse_plane(const std::string& s);

struct SweepConfig {
    PlaneSpec plane;
    double step = 0.01;
    std::vector<Quantity> quantities = {Quantity::Q};
    std::string out_path;
    double tol = kDefaultTol;
};

struct SweepRecord {
    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    Quantity quantity = Quantity::Q;
    double lo = 0.0, hi = 0.0;
    std::string status;
    std::string method;
};

/// Evaluates the grid with a bounded worker pool (MADCAP_WORKERS caps the
/// number of threads); records come back in lexicographic grid order
/// regardless of scheduling. Grid points outside the CPTP region are emitted
/// with status "non-CPTP".
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Header g1,g2,g3,quantity,value_lo,value_hi,status,method; floats printed
/// with 9 significant digits; byte-identical for identical inputs.
void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// Emits the data series for one of the reference plots (ids 2..10) into
/// out_dir; returns the written file paths. step = 0 picks the default
/// (0.01 for curves, 0.05 for surfaces).
std::vector<std::string> write_figure(int id, const std::string& out_dir, double step = 0.0);

/// JSON report bodies used by the command-line front end.
std::string classify_json(const RateVector3& rates, double tol);
std::string capacity_json(const RateVector3& rates, Quantity q);

/// Parses {"g1":..,"g2":..,"g3":..} or {"d":3,"rates":{"j,i":..}}.
RateVector3 rates_from_json(const std::string& text);

/// 9-significant-digit float formatting shared by every writer.
std::string fmt_g9(double v);

}  // namespace madcap
