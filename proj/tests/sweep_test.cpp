#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "dtqw/sweep.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace dtqw;
using dtqw_test::make_config;
using std::numbers::pi;

namespace {

SweepSpec small_fisher_spec() {
    SweepSpec spec;
    spec.base = make_config(3 * pi / 8, FieldSpec::along_x(0.0), SpinVector::one(), 20, 20);
    spec.axis = SweepAxis::Omega;
    spec.grid = {0.0, pi, 41};
    spec.observables = kQfi | kPositionFI | kSpinFI | kRatios;
    return spec;
}

std::vector<double> parse_csv_row(const std::string& line) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) values.push_back(std::stod(cell));
    return values;
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("format_scientific fixtures") {
    CHECK(format_scientific(0.0) == "0.00000000000e0");
    CHECK(format_scientific(-0.0) == "0.00000000000e0");
    CHECK(format_scientific(2500.0) == "2.50000000000e3");
    CHECK(format_scientific(1e-5) == "1.00000000000e-5");
    CHECK(format_scientific(-0.25) == "-2.50000000000e-1");
    CHECK(format_scientific(pi) == "3.14159265359e0");
    CHECK(format_scientific(2.2715e-13) == "2.27150000000e-13");
}

TEST_CASE("csv matches the byte-exact fixture") {
    std::vector<SweepRecord> records{{{"omega", 0.0}, {"variance", 2500.0}}};
    CHECK(to_csv(records) == "omega,variance\n0.00000000000e0,2.50000000000e3\n");
}

TEST_CASE("scalar grid validation") {
    CHECK_THROWS_AS((ScalarGrid{0.0, 1.0, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((ScalarGrid{1.0, 0.0, 5}).validate(), std::invalid_argument);
    CHECK_NOTHROW((ScalarGrid{0.0, 1.0, 2}).validate());
}

TEST_CASE("two-point moment sweep produces variance fields") {
    SweepSpec spec;
    spec.base = make_config(0.5, FieldSpec::along_x(0.0), SpinVector::plus(), 10, 10);
    spec.grid = {0.0, pi, 2};
    spec.observables = kMoments;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 2);
    for (const auto& rec : records) {
        CHECK(rec.contains("variance"));
        CHECK(rec.contains("mean"));
        CHECK(rec.contains("skewness"));
        CHECK(rec.at("theta") == 0.5);
    }
    CHECK(records[0].at("omega") == 0.0);
    CHECK(records[1].at("omega") == pi);
}

TEST_CASE("record count equals the grid size") {
    SweepSpec spec = small_fisher_spec();
    spec.grid.count = 17;
    CHECK(run_sweep(spec).size() == 17);
}

TEST_CASE("sweeps are deterministic across worker counts") {
    SweepSpec spec = small_fisher_spec();
    spec.workers = 1;
    const std::string serial = to_csv(run_sweep(spec));
    spec.workers = 8;
    const std::string parallel = to_csv(run_sweep(spec));
    CHECK(serial == parallel);
    CHECK(std::hash<std::string>{}(serial) == std::hash<std::string>{}(parallel));
}

TEST_CASE("theta axis sweeps vary theta and keep omega fixed") {
    SweepSpec spec;
    spec.base = make_config(0.0, FieldSpec::along_x(0.8), SpinVector::plus(), 8, 8);
    spec.axis = SweepAxis::Theta;
    spec.grid = {0.1, 1.3, 5};
    spec.observables = kMoments | kDeltaVariance;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 5);
    for (int i = 0; i < 5; ++i) {
        CHECK(records[i].at("theta") == doctest::Approx(spec.grid.value(i)).epsilon(1e-15));
        CHECK(records[i].at("omega") == 0.8);
        CHECK(records[i].contains("delta_sigma2"));
    }
}

TEST_CASE("invalid grid points reject the whole sweep with the offending index") {
    SweepSpec spec;
    spec.base = make_config(0.5, FieldSpec::along_x(0.0), SpinVector::plus(), 10, 10,
                            BoundaryMode::Unbounded);
    spec.axis = SweepAxis::Theta;
    spec.grid = {0.0, 1.0, 4};
    spec.base.lattice.half_width = 9;  // < steps, invalid in unbounded mode
    try {
        run_sweep(spec);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("grid point 0") != std::string::npos);
    }
}

TEST_CASE("position pd observable emits one column per site") {
    SweepSpec spec;
    spec.base = make_config(0.7, FieldSpec::along_z(0.4), SpinVector::plus(), 3, 3);
    spec.grid = {0.0, 1.0, 2};
    spec.observables = kPositionPD;
    const auto records = run_sweep(spec);
    REQUIRE(records.size() == 2);
    // 7 sites + omega + theta
    CHECK(records[0].size() == 9);
    CHECK(records[0].contains("pd_0000"));
    CHECK(records[0].contains("pd_0006"));
    const ProbabilityVector pd = position_marginal(evolve(spec.base.with_omega(0.0)));
    for (size_t k = 0; k < pd.probs.size(); ++k) {
        char key[16];
        std::snprintf(key, sizeof key, "pd_%04zu", k);
        CHECK(records[0].at(key) == pd.probs[k]);
    }
}

TEST_CASE("sphere sweeps carry direction metadata and match sphere_scan") {
    SweepSpec spec;
    spec.base = make_config(0.6, FieldSpec::along_x(0.9), SpinVector::plus(), 8, 8);
    spec.axis = SweepAxis::Sphere;
    spec.sphere = SphereGrid{5, 4};
    spec.observables = kDeltaVariance;
    const auto records = run_sweep(spec);
    const auto samples =
        sphere_scan(0.9, 0.6, SpinVector::plus(), 8, 8, spec.sphere);
    REQUIRE(records.size() == samples.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].at("nx") == samples[i].direction[0]);
        CHECK(records[i].at("ny") == samples[i].direction[1]);
        CHECK(records[i].at("nz") == samples[i].direction[2]);
        CHECK(records[i].at("delta_sigma2") == samples[i].delta_variance);
        CHECK(records[i].at("polar_index") == samples[i].polar_index);
        CHECK(records[i].at("azimuth_index") == samples[i].azimuth_index);
    }
}

TEST_CASE("csv export round-trips within 1e-11 relative") {
    const auto records = run_sweep(small_fisher_spec());
    const std::string csv = to_csv(records);

    std::stringstream ss(csv);
    std::string header;
    std::getline(ss, header);
    std::vector<std::string> keys;
    {
        std::stringstream hs(header);
        std::string k;
        while (std::getline(hs, k, ',')) keys.push_back(k);
    }
    size_t row = 0;
    std::string line;
    while (std::getline(ss, line)) {
        const auto values = parse_csv_row(line);
        REQUIRE(values.size() == keys.size());
        size_t col = 0;
        for (const auto& [key, value] : records[row]) {
            CHECK(keys[col] == key);
            const double back = values[col];
            CHECK(std::abs(back - value) <= 1e-11 * std::max(1.0, std::abs(value)));
            ++col;
        }
        ++row;
    }
    CHECK(row == records.size());
}

TEST_CASE("json export round-trips within 1e-11 relative") {
    const auto records = run_sweep(small_fisher_spec());
    const auto parsed = nlohmann::json::parse(to_json(records));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        for (const auto& [key, value] : records[i]) {
            const double back = parsed[i].at(key).get<double>();
            CHECK(std::abs(back - value) <= 1e-11 * std::max(1.0, std::abs(value)));
        }
    }
}

TEST_CASE("exports write files and reject empty input") {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "dtqw_sweep_test";
    std::filesystem::create_directories(dir);
    std::vector<SweepRecord> records{{{"omega", 1.5}, {"qfi", 12.0}}};
    export_csv(records, dir / "out.csv");
    export_json(records, dir / "out.json");
    CHECK(std::filesystem::file_size(dir / "out.csv") > 0);
    CHECK(std::filesystem::file_size(dir / "out.json") > 0);

    CHECK_THROWS_AS(export_csv({}, dir / "empty.csv"), std::invalid_argument);
    CHECK_THROWS_AS(export_json({}, dir / "empty.json"), std::invalid_argument);
    CHECK_THROWS_AS(export_csv(records, dir / "missing_dir" / "out.csv"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exports reject records with mismatched keys") {
    std::vector<SweepRecord> records{{{"omega", 1.0}}, {{"theta", 2.0}}};
    CHECK_THROWS_AS(to_csv(records), std::invalid_argument);
}

TEST_CASE("rmse observable columns") {
    SweepSpec spec = small_fisher_spec();
    spec.observables = kQfi | kRmse;
    spec.measurements = 4;
    const auto records = run_sweep(spec);
    for (const auto& rec : records) {
        const double h = rec.at("qfi");
        if (h < 1e-12) {
            CHECK(rec.at("rmse_omega") == 0.0);
        } else {
            CHECK(rec.at("rmse_omega") ==
                  doctest::Approx(1.0 / std::sqrt(4.0 * h)).epsilon(1e-14));
            CHECK(rec.at("rmse_tesla") ==
                  doctest::Approx(omega_to_tesla(rec.at("rmse_omega"))).epsilon(1e-14));
        }
    }
}

TEST_CASE("parse_angle accepts radians and pi fractions") {
    CHECK(parse_angle("0.75") == 0.75);
    CHECK(parse_angle("3pi/8") == doctest::Approx(3.0 * pi / 8.0).epsilon(1e-15));
    CHECK(parse_angle("pi") == doctest::Approx(pi).epsilon(1e-15));
    CHECK(parse_angle("-pi/2") == doctest::Approx(-pi / 2.0).epsilon(1e-15));
    CHECK(parse_angle("2pi") == doctest::Approx(2.0 * pi).epsilon(1e-15));
    CHECK(parse_angle("0.5pi") == doctest::Approx(pi / 2.0).epsilon(1e-15));
    CHECK(parse_angle(" pi/4 ") == doctest::Approx(pi / 4.0).epsilon(1e-15));
    CHECK(parse_angle("-1.25e-3") == -1.25e-3);

    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi8"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("threepi"), std::invalid_argument);
}

TEST_CASE("worker count validation") {
    SweepSpec spec = small_fisher_spec();
    spec.workers = 0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_SUITE_END();
