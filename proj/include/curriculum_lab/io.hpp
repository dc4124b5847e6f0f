// Output primitives: CSV rows with a fixed schema, JSON report helpers,
// and the config hash embedded in every artifact. Non-finite numbers are
// never serialized; runs abort instead.
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "curriculum_lab/errors.hpp"
#include "curriculum_lab/stats.hpp"

#include <json.hpp>

namespace curriculum_lab {

using json = nlohmann::json;

inline std::string format_double(double value) {
    if (!std::isfinite(value)) throw error("refusing to serialize non-finite number");
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

inline double checked_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        throw error(std::string("refusing to serialize non-finite ") + what);
    }
    return value;
}

// FNV-1a over the canonical config dump; embedded in reports for provenance.
inline std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001B3ULL;
    }
    return hash;
}

inline std::string hash_hex(std::uint64_t hash) {
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return buffer;
}

// One row of the sweep CSV; optional fields stay empty in the output.
struct SweepRow {
    std::string problem;  // "regression" | "hinge"
    double psi = 0.0;
    std::optional<double> upsilon;
    double lambda_or_theta = 0.0;
    double eta = 0.0;
    std::uint64_t n = 0;
    std::optional<double> delta_mc;
    std::optional<double> delta_se;
    std::optional<double> delta_closed;
    std::string method;  // method of the closed column
};

inline constexpr const char* kSweepHeader =
    "problem,psi,upsilon,lambda_or_theta,eta,n,delta_mc,delta_se,delta_closed,method";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << kSweepHeader << "\n";
    const auto opt_str = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& row : rows) {
        out << row.problem << ',' << format_double(row.psi) << ',' << opt_str(row.upsilon)
            << ',' << format_double(row.lambda_or_theta) << ',' << format_double(row.eta)
            << ',' << row.n << ',' << opt_str(row.delta_mc) << ',' << opt_str(row.delta_se)
            << ',' << opt_str(row.delta_closed) << ',' << row.method << "\n";
    }
}

struct TrajectoryRow {
    std::string policy;
    std::uint64_t run_seed = 0;
    std::uint64_t step = 0;
    std::int64_t example_id = -1;
    double metric = 0.0;
    double pool_loss = 0.0;
};

inline constexpr const char* kTrajectoryHeader =
    "policy,seed,step,example_id,metric,pool_loss";

inline void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
    out << kTrajectoryHeader << "\n";
    for (const auto& row : rows) {
        out << row.policy << ',' << row.run_seed << ',' << row.step << ','
            << row.example_id << ',' << format_double(row.metric) << ','
            << format_double(row.pool_loss) << "\n";
    }
}

inline json rate_to_json(const RateEstimate& est) {
    return json{{"mean", checked_finite(est.mean, "estimate mean")},
                {"std_error", checked_finite(est.std_error, "estimate std error")},
                {"n", est.n},
                {"method", to_string(est.method)}};
}

}  // namespace curriculum_lab
