// sweep.hpp
// Parameter-sweep campaigns: grid definitions, parallel execution with
// deterministic output ordering, and CSV/JSON serialization.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dtqw/estimation.hpp"
#include "dtqw/statistics.hpp"

namespace dtqw {

enum class SweepAxis { Omega, Theta, Sphere };

// Bitmask of observables computed per grid point.
enum Observable : unsigned {
    kPositionPD = 1u << 0,
    kMoments = 1u << 1,
    kDeltaVariance = 1u << 2,
    kQfi = 1u << 3,
    kPositionFI = 1u << 4,
    kSpinFI = 1u << 5,
    kRatios = 1u << 6,
    kRmse = 1u << 7,
};

// Inclusive uniform grid: value(i) = start + i*(stop-start)/(count-1).
struct ScalarGrid {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;

    double value(int i) const { return start + (stop - start) * i / (count - 1); }
    double spacing() const { return (stop - start) / (count - 1); }
    void validate() const;  // count >= 2, start < stop
};

struct SweepSpec {
    WalkConfig base;
    SweepAxis axis = SweepAxis::Omega;
    ScalarGrid grid;          // for Omega/Theta axes
    SphereGrid sphere;        // for the Sphere axis
    unsigned observables = kMoments;
    int measurements = 1;     // M for the Rmse observable
    int workers = 1;
};

// One grid point: swept inputs plus every requested observable, flat and
// sorted by key so serialization order is canonical.
using SweepRecord = std::map<std::string, double>;

// Evaluates every grid point. All configs are validated before any work is
// done; an invalid point rejects the whole sweep naming its index. Records
// are ordered by grid index and bit-identical for any worker count.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

// value -> scientific notation with 12 significant digits and a bare
// exponent: 2500 -> "2.50000000000e3", 0 -> "0.00000000000e0".
std::string format_scientific(double value);

std::string to_csv(const std::vector<SweepRecord>& records);
std::string to_json(const std::vector<SweepRecord>& records);

void export_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);
void export_json(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

// Accepts decimal radians ("0.75") or rational multiples of pi
// ("3pi/8", "pi", "-pi/2", "0.5pi").
double parse_angle(const std::string& text);

}  // namespace dtqw
