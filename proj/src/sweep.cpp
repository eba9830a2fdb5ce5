#include "madcap/sweep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace madcap {

namespace {

using nlohmann::json;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    }
    return out;
}

int worker_count(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("MADCAP_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

std::vector<double> axis(double step) {
    std::vector<double> xs;
    for (int i = 0;; ++i) {
        double x = i * step;
        if (x > 1.0 + 1e-9) break;
        xs.push_back(std::min(x, 1.0));
    }
    return xs;
}

std::string classification_summary(const Classification& c) {
    return "degradable=" + std::string(c.degradable ? "yes" : "no") +
           ";antidegradable=" + to_string(c.antidegradable);
}

void evaluate_point(const RateVector3& g, const std::vector<Quantity>& quantities, double tol,
                    std::vector<SweepRecord>& out) {
    ValidationReport rep = validate_rates(g);
    for (Quantity q : quantities) {
        SweepRecord rec;
        rec.g1 = g.g1;
        rec.g2 = g.g2;
        rec.g3 = g.g3;
        rec.quantity = q;
        if (!rep.ok) {
            rec.status = "non-CPTP";
            rec.method = rep.to_string();
            out.push_back(std::move(rec));
            continue;
        }
        if (q == Quantity::Classify) {
            Classification c = classify(g, tol);
            rec.lo = c.degradable ? 1.0 : 0.0;
            rec.hi = c.antidegradable == Tristate::Yes ? 1.0 : 0.0;
            rec.status = "Exact";
            rec.method = classification_summary(c);
        } else {
            CapacityEstimate est = q == Quantity::Q    ? q_bounds(g)
                                   : q == Quantity::Cp ? cp(g)
                                                       : qe(g);
            rec.lo = est.lower;
            rec.hi = est.upper;
            rec.status = to_string(est.status);
            rec.method = est.method;
        }
        out.push_back(std::move(rec));
    }
}

std::vector<RateVector3> grid_points(const PlaneSpec& plane, double step) {
    std::vector<RateVector3> pts;
    const std::vector<double> xs = axis(step);
    switch (plane.kind) {
        case PlaneSpec::Kind::FixedG1:
            for (double g2 : xs)
                for (double g3 : xs) pts.push_back({plane.value, g2, g3});
            break;
        case PlaneSpec::Kind::FixedG2:
            for (double g1 : xs)
                for (double g3 : xs) pts.push_back({g1, plane.value, g3});
            break;
        case PlaneSpec::Kind::FixedG3:
            for (double g1 : xs)
                for (double g2 : xs) pts.push_back({g1, g2, plane.value});
            break;
        case PlaneSpec::Kind::SumG2G3:
            for (double g1 : xs)
                for (double g2 : xs) pts.push_back({g1, g2, 1.0 - g2});
            break;
    }
    return pts;
}

void write_or_throw(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string fmt_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string to_string(Quantity q) {
    switch (q) {
        case Quantity::Q: return "q";
        case Quantity::Cp: return "cp";
        case Quantity::QE: return "qe";
        default: return "classify";
    }
}

Quantity parse_quantity(const std::string& s) {
    std::string t = lower(strip_spaces(s));
    if (t == "q") return Quantity::Q;
    if (t == "cp") return Quantity::Cp;
    if (t == "qe") return Quantity::QE;
    if (t == "classify") return Quantity::Classify;
    throw std::invalid_argument("unknown quantity '" + s + "' (expected q|cp|qe|classify)");
}

std::string PlaneSpec::to_string() const {
    switch (kind) {
        case Kind::FixedG1: return "g1=" + fmt_g9(value);
        case Kind::FixedG2: return "g2=" + fmt_g9(value);
        case Kind::FixedG3: return "g3=" + fmt_g9(value);
        default: return "g2+g3=1";
    }
}

PlaneSpec parse_plane(const std::string& s) {
    std::string t = lower(strip_spaces(s));
    if (t == "g2+g3=1") return {PlaneSpec::Kind::SumG2G3, 1.0};
    auto eq = t.find('=');
    if (eq != std::string::npos && t.size() > eq + 1) {
        std::string name = t.substr(0, eq);
        char* end = nullptr;
        double v = std::strtod(t.c_str() + eq + 1, &end);
        bool parsed = end && *end == '\0';
        if (parsed && v >= 0.0 && v <= 1.0) {
            if (name == "g1") return {PlaneSpec::Kind::FixedG1, v};
            if (name == "g2") return {PlaneSpec::Kind::FixedG2, v};
            if (name == "g3") return {PlaneSpec::Kind::FixedG3, v};
        }
    }
    throw std::invalid_argument("unknown plane '" + s +
                                "' (expected g1=<v>|g2=<v>|g3=<v>|g2+g3=1)");
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    if (!(config.step > 0.0 && config.step <= 0.5)) {
        throw std::invalid_argument("sweep step must lie in (0, 0.5]");
    }
    const std::vector<RateVector3> pts = grid_points(config.plane, config.step);
    std::vector<std::vector<SweepRecord>> per_point(pts.size());

    const int workers = worker_count(pts.size());
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < pts.size(); i = next.fetch_add(1)) {
            evaluate_point(pts[i], config.quantities, config.tol, per_point[i]);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<SweepRecord> records;
    for (auto& chunk : per_point) {
        for (auto& rec : chunk) records.push_back(std::move(rec));
    }
    return records;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "g1,g2,g3,quantity,value_lo,value_hi,status,method\n";
    for (const SweepRecord& r : records) {
        os << fmt_g9(r.g1) << ',' << fmt_g9(r.g2) << ',' << fmt_g9(r.g3) << ','
           << to_string(r.quantity) << ',' << fmt_g9(r.lo) << ',' << fmt_g9(r.hi) << ','
           << r.status << ',' << r.method << '\n';
    }
}

namespace {

std::string csv_of(const SweepConfig& config) {
    std::ostringstream os;
    write_csv(os, run_sweep(config));
    return os.str();
}

std::string sweep_csv(PlaneSpec::Kind kind, double value, double step,
                      std::vector<Quantity> quantities) {
    SweepConfig cfg;
    cfg.plane = {kind, value};
    cfg.step = step;
    cfg.quantities = std::move(quantities);
    return csv_of(cfg);
}

// single-decay capacity curve plus the populations of the maximizing states
std::pair<std::string, std::string> single_decay_series(double step) {
    std::ostringstream cap, pops;
    cap << "g1,g2,g3,quantity,value_lo,value_hi,status,method\n";
    pops << "g1,p0,p1,p2\n";
    for (double g1 : axis(step)) {
        CapacityEstimate est = q_single_decay(g1);
        cap << fmt_g9(g1) << ",0,0,q," << fmt_g9(est.lower) << ',' << fmt_g9(est.upper) << ','
            << to_string(est.status) << ',' << est.method << '\n';
        SimplexPoint p = est.argmax.value_or(SimplexPoint{});
        pops << fmt_g9(g1) << ',' << fmt_g9(p.p0) << ',' << fmt_g9(p.p1) << ',' << fmt_g9(p.p2)
             << '\n';
    }
    return {cap.str(), pops.str()};
}

std::string edge_curve_csv(double step) {
    std::ostringstream os;
    os << "g1,g2,g3,quantity,value_lo,value_hi,status,method\n";
    for (double g2 : axis(step)) {
        CapacityEstimate est = q_gamma1_one(g2, 0.0);
        os << "1," << fmt_g9(g2) << ",0,q," << fmt_g9(est.lower) << ',' << fmt_g9(est.upper) << ','
           << to_string(est.status) << ',' << est.method << '\n';
    }
    return os.str();
}

std::string zero_region_csv(double step) {
    std::ostringstream os;
    os << "g1,g3,zero_capacity\n";
    for (double g1 : axis(step)) {
        for (double g3 : axis(step)) {
            int flag = (g1 >= 0.5 && g3 >= 0.5) ? 1 : 0;
            os << fmt_g9(g1) << ',' << fmt_g9(g3) << ',' << flag << '\n';
        }
    }
    return os.str();
}

std::string qe_curve_csv(double step) {
    std::ostringstream os;
    os << "g1,g2,g3,quantity,value_lo,value_hi,status,method\n";
    for (double g1 : axis(step)) {
        CapacityEstimate est = qe(RateVector3{g1, 0.0, 0.0});
        os << fmt_g9(g1) << ",0,0,qe," << fmt_g9(est.lower) << ',' << fmt_g9(est.upper) << ','
           << to_string(est.status) << ',' << est.method << '\n';
    }
    return os.str();
}

}  // namespace

std::vector<std::string> write_figure(int id, const std::string& out_dir, double step) {
    namespace fs = std::filesystem;
    const double curve = step > 0.0 ? step : 0.01;
    const double surface = step > 0.0 ? step : 0.05;

    std::vector<std::pair<std::string, std::string>> files;
    switch (id) {
        case 2: {
            auto [cap, pops] = single_decay_series(curve);
            files.emplace_back("fig02_single_decay_capacity.csv", cap);
            files.emplace_back("fig02_optimal_populations.csv", pops);
            break;
        }
        case 3:
            files.emplace_back("fig03_top_drained_plane.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG1, 1.0, surface, {Quantity::Q}));
            break;
        case 4:
            files.emplace_back("fig04_top_drained_edge.csv", edge_curve_csv(curve));
            break;
        case 5:
            files.emplace_back("fig05_g2_zero_plane.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG2, 0.0, surface, {Quantity::Q}));
            break;
        case 6:
            files.emplace_back("fig06_zero_capacity_region.csv", zero_region_csv(surface));
            break;
        case 7:
            files.emplace_back("fig07_g1_zero_plane.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG1, 0.0, surface, {Quantity::Q}));
            break;
        case 8:
            files.emplace_back("fig08_g3_zero_lower_bound.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG3, 0.0, surface, {Quantity::Q}));
            break;
        case 9:
            files.emplace_back("fig09_depopulated_plane.csv",
                               sweep_csv(PlaneSpec::Kind::SumG2G3, 1.0, surface, {Quantity::Q}));
            break;
        case 10:
            files.emplace_back("fig10_single_decay_qe.csv", qe_curve_csv(curve));
            files.emplace_back("fig10_g3_zero_qe.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG3, 0.0, surface, {Quantity::QE}));
            files.emplace_back("fig10_g2_zero_qe.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG2, 0.0, surface, {Quantity::QE}));
            files.emplace_back("fig10_g1_zero_qe.csv",
                               sweep_csv(PlaneSpec::Kind::FixedG1, 0.0, surface, {Quantity::QE}));
            break;
        default:
            throw std::invalid_argument("unknown figure id " + std::to_string(id) +
                                        " (expected 2..10)");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::vector<std::string> written;
    for (const auto& [name, content] : files) {
        std::string path = (fs::path(out_dir) / name).string();
        write_or_throw(path, content);
        written.push_back(path);
    }
    return written;
}

std::string classify_json(const RateVector3& rates, double tol) {
    Classification c = classify(rates, tol);
    json j;
    j["g"] = {rates.g1, rates.g2, rates.g3};
    j["degradable"] = c.degradable ? "yes" : "no";
    j["antidegradable"] = to_string(c.antidegradable);
    json w;
    w["degradable"] = c.degradable_witness;
    w["antidegradable"] = c.antidegradable_witness;
    if (c.degrading_connector) {
        w["connector_rates"] = {c.degrading_connector->g1, c.degrading_connector->g2,
                                c.degrading_connector->g3};
    }
    j["witness"] = w;
    j["tol"] = c.tol;
    return j.dump();
}

std::string capacity_json(const RateVector3& rates, Quantity q) {
    CapacityEstimate est = q == Quantity::Q    ? q_bounds(rates)
                           : q == Quantity::Cp ? cp(rates)
                                               : qe(rates);
    json j;
    j["g"] = {rates.g1, rates.g2, rates.g3};
    j["quantity"] = to_string(q);
    j["status"] = to_string(est.status);
    j["method"] = est.method;
    if (est.status == CapacityStatus::Interval || est.status == CapacityStatus::LowerBound) {
        j["interval"] = {est.lower, est.upper};
    } else {
        j["value"] = est.value();
    }
    if (est.argmax) {
        j["argmax"] = {{"p0", est.argmax->p0}, {"p1", est.argmax->p1}, {"p2", est.argmax->p2}};
    }
    if (!est.note.empty()) j["note"] = est.note;
    return j.dump();
}

RateVector3 rates_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.contains("rates")) {
        int d = j.value("d", 0);
        if (d != 3) throw std::invalid_argument("rates json: only d=3 is accepted here");
        RateVector3 g;
        for (const auto& [key, value] : j.at("rates").items()) {
            std::string k = strip_spaces(key);
            if (k == "1,0") g.g1 = value.get<double>();
            else if (k == "2,1") g.g2 = value.get<double>();
            else if (k == "2,0") g.g3 = value.get<double>();
            else throw std::invalid_argument("rates json: unknown key '" + key + "'");
        }
        return g;
    }
    RateVector3 g;
    g.g1 = j.value("g1", 0.0);
    g.g2 = j.value("g2", 0.0);
    g.g3 = j.value("g3", 0.0);
    return g;
}

}  // namespace madcap
