#include "dtqw/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace dtqw {

namespace {

constexpr unsigned kNeedsDerivative = kQfi | kPositionFI | kSpinFI | kRatios | kRmse;
constexpr unsigned kNeedsState = kPositionPD | kMoments | kDeltaVariance;

std::string pd_key(int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "pd_%04d", index);
    return buf;
}

// Inputs (swept values and fixed context) for grid point i.
WalkConfig config_at(const SweepSpec& spec, const std::vector<SphereSample>& dirs, size_t i) {
    switch (spec.axis) {
        case SweepAxis::Omega:
            return spec.base.with_omega(spec.grid.value(static_cast<int>(i)));
        case SweepAxis::Theta:
            return spec.base.with_theta(spec.grid.value(static_cast<int>(i)));
        case SweepAxis::Sphere: {
            WalkConfig cfg = spec.base;
            cfg.field.direction = dirs[i].direction;
            return cfg;
        }
    }
    throw std::logic_error("run_sweep: unknown axis");
}

SweepRecord evaluate_point(const SweepSpec& spec, const std::vector<SphereSample>& dirs,
                           size_t i) {
    const WalkConfig cfg = config_at(spec, dirs, i);

    SweepRecord rec;
    rec["omega"] = cfg.field.omega;
    rec["theta"] = cfg.theta;
    if (spec.axis == SweepAxis::Sphere) {
        rec["polar_index"] = dirs[i].polar_index;
        rec["azimuth_index"] = dirs[i].azimuth_index;
        rec["nx"] = cfg.field.direction[0];
        rec["ny"] = cfg.field.direction[1];
        rec["nz"] = cfg.field.direction[2];
    }

    WalkerState state;
    DerivativePair pair;
    const bool with_derivative = (spec.observables & kNeedsDerivative) != 0;
    if (with_derivative) {
        pair = evolve_with_derivative(cfg);
    } else if ((spec.observables & kNeedsState) != 0) {
        state = evolve(cfg);
    }
    const WalkerState& psi = with_derivative ? pair.state : state;

    if (spec.observables & (kPositionPD | kMoments | kDeltaVariance)) {
        const ProbabilityVector pd = position_marginal(psi);
        if (spec.observables & kPositionPD) {
            for (size_t k = 0; k < pd.probs.size(); ++k) {
                rec[pd_key(static_cast<int>(k))] = pd.probs[k];
            }
        }
        const MomentSummary m = moments(pd);
        if (spec.observables & kMoments) {
            rec["mean"] = m.mean;
            rec["variance"] = m.variance;
            rec["skewness"] = m.skewness;
        }
        if (spec.observables & kDeltaVariance) {
            const double base_var =
                moments(position_marginal(evolve(cfg.with_omega(0.0)))).variance;
            rec["delta_sigma2"] = std::abs(m.variance - base_var);
        }
    }

    if (with_derivative) {
        const double h = qfi(pair);
        const double fp = position_fi(pair);
        const double fs = spin_fi(pair);
        if (spec.observables & kQfi) rec["qfi"] = h;
        if (spec.observables & kPositionFI) rec["position_fi"] = fp;
        if (spec.observables & kSpinFI) rec["spin_fi"] = fs;
        if (spec.observables & kRatios) {
            rec["ratio_position"] = efficiency_ratio(fp, h);
            rec["ratio_spin"] = efficiency_ratio(fs, h);
        }
        if (spec.observables & kRmse) {
            // points with vanishing QFI are unestimable; reported as 0
            const double dw = h < 1e-12 ? 0.0 : crb_rmse_omega(h, spec.measurements);
            rec["rmse_omega"] = dw;
            rec["rmse_tesla"] = omega_to_tesla(dw);
        }
    }
    return rec;
}

const SweepRecord& front_record(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("export: no records");
    }
    return records.front();
}

void check_uniform_keys(const std::vector<SweepRecord>& records) {
    const SweepRecord& first = front_record(records);
    for (const SweepRecord& rec : records) {
        if (rec.size() != first.size()) {
            throw std::invalid_argument("export: records have differing keys");
        }
        auto it = first.begin();
        for (const auto& [key, value] : rec) {
            if (key != it->first) {
                throw std::invalid_argument("export: records have differing keys");
            }
            ++it;
        }
    }
}

}  // namespace

void ScalarGrid::validate() const {
    if (count < 2) throw std::invalid_argument("ScalarGrid: count must be >= 2");
    if (!(start < stop)) throw std::invalid_argument("ScalarGrid: start must be < stop");
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
    if (spec.workers < 1) {
        throw std::invalid_argument("run_sweep: workers must be >= 1");
    }
    std::vector<SphereSample> dirs;
    size_t total = 0;
    if (spec.axis == SweepAxis::Sphere) {
        dirs = sphere_directions(spec.sphere);
        total = dirs.size();
    } else {
        spec.grid.validate();
        total = static_cast<size_t>(spec.grid.count);
    }

    // reject the whole sweep before doing any work
    for (size_t i = 0; i < total; ++i) {
        try {
            config_at(spec, dirs, i).validate();
        } catch (const std::exception& e) {
            throw std::invalid_argument("run_sweep: grid point " + std::to_string(i) +
                                        " invalid: " + e.what());
        }
    }

    std::vector<SweepRecord> records(total);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= total || failed.load()) return;
            try {
                records[i] = evaluate_point(spec, dirs, i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const int extra = std::min(spec.workers, 64) - 1;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(extra));
    for (int w = 0; w < extra; ++w) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return records;
}

std::string format_scientific(double value) {
    if (value == 0.0) value = 0.0;  // canonicalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", value);
    std::string s = buf;
    const size_t e = s.find('e');
    if (e == std::string::npos) return s;  // nan/inf
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    const bool negative = exponent[0] == '-';
    if (exponent[0] == '+' || exponent[0] == '-') exponent.erase(0, 1);
    const size_t first_digit = exponent.find_first_not_of('0');
    exponent = first_digit == std::string::npos ? "0" : exponent.substr(first_digit);
    return mantissa + "e" + (negative ? "-" : "") + exponent;
}

std::string to_csv(const std::vector<SweepRecord>& records) {
    check_uniform_keys(records);
    std::string out;
    bool first = true;
    for (const auto& [key, value] : front_record(records)) {
        if (!first) out += ',';
        out += key;
        first = false;
    }
    out += '\n';
    for (const SweepRecord& rec : records) {
        first = true;
        for (const auto& [key, value] : rec) {
            if (!first) out += ',';
            out += format_scientific(value);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<SweepRecord>& records) {
    check_uniform_keys(records);
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const SweepRecord& rec : records) {
        nlohmann::ordered_json obj;
        for (const auto& [key, value] : rec) {
            // carry exactly the CSV's 12-significant-digit values
            obj[key] = std::stod(format_scientific(value));
        }
        array.push_back(std::move(obj));
    }
    return array.dump(2) + "\n";
}

namespace {
void write_file(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("export: cannot open " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("export: write failed for " + path.string());
    }
}
}  // namespace

void export_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
    write_file(to_csv(records), path);
}

void export_json(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
    write_file(to_json(records), path);
}

double parse_angle(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t");
    const auto end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) {
        throw std::invalid_argument("parse_angle: empty angle");
    }
    const std::string body = text.substr(begin, end - begin + 1);

    const auto parse_number = [](const std::string& token) {
        size_t consumed = 0;
        double v;
        try {
            v = std::stod(token, &consumed);
        } catch (const std::exception&) {
            throw std::invalid_argument("parse_angle: cannot parse '" + token + "'");
        }
        if (consumed != token.size()) {
            throw std::invalid_argument("parse_angle: cannot parse '" + token + "'");
        }
        return v;
    };

    const size_t pi_pos = body.find("pi");
    if (pi_pos == std::string::npos) {
        return parse_number(body);
    }

    const std::string prefix = body.substr(0, pi_pos);
    double coefficient = 1.0;
    if (prefix == "-") {
        coefficient = -1.0;
    } else if (!prefix.empty() && prefix != "+") {
        coefficient = parse_number(prefix);
    }

    const std::string suffix = body.substr(pi_pos + 2);
    double denominator = 1.0;
    if (!suffix.empty()) {
        if (suffix[0] != '/') {
            throw std::invalid_argument("parse_angle: expected '/denominator' after pi");
        }
        denominator = parse_number(suffix.substr(1));
        if (denominator == 0.0) {
            throw std::invalid_argument("parse_angle: zero denominator");
        }
    }
    return coefficient * std::numbers::pi / denominator;
}

}  // namespace dtqw
