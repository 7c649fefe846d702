#ifndef OPSIS_EXPERIMENT_HPP
#define OPSIS_EXPERIMENT_HPP

/*
 * Batch experiment runner behind the `opsis` command line tool.
 *
 * A JSON config describes L, the lattice, generators and a sampling scheme
 * (schema in README.md). Each run_* function returns a metrics object plus
 * CSV tables; write_outputs puts them under the output directory as
 * metrics.json and <table>.csv.
 *
 * Exit codes: 0 success, 2 not a frame / not Riesz, 3 invalid
 * configuration, 4 non-finite values in the results.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "opsis/phase_space.hpp"
#include "opsis/sampling.hpp"
#include "opsis/si_space.hpp"

namespace opsis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 2;
inline constexpr int kExitInvalidConfig = 3;
inline constexpr int kExitNumericalFailure = 4;

struct ExperimentConfig {
    int L = 0;
    std::uint64_t seed = 0;
    LatticeDescriptor lattice;
    std::optional<LatticeDescriptor> sublattice;
    std::vector<HsOperator> generators;
    SamplingScheme scheme;
    std::optional<double> tol;
    std::optional<std::uint64_t> c_seed;  // seeds the C family of left inverses
    RieszRoute route = RieszRoute::GramFibers;
    std::string channel = "synthesized";  // channel-demo operator: identity | synthesized | random
    int window_index = 0;                 // channel-demo window pair
    std::vector<int> sweep_a;
    std::vector<int> sweep_b;
    std::vector<int> sweep_M;
};

/// Validates and materializes a config. `seed_override` replaces "seed".
/// Throws ConfigError (or nlohmann::json::exception) on invalid input.
ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
};

struct MetricsReport {
    nlohmann::json metrics = nlohmann::json::object();
    std::vector<Table> tables;
    int exit_code = kExitOk;
};

/// 17 significant digits, '.' decimal separator.
std::string format_double(double v);

MetricsReport run_riesz_check(const ExperimentConfig& config);
MetricsReport run_frame_check(const ExperimentConfig& config);
MetricsReport run_reconstruct(const ExperimentConfig& config);
MetricsReport run_channel_demo(const ExperimentConfig& config);
MetricsReport run_sweep(const ExperimentConfig& config);

/// True when every number in the metrics object is finite.
bool all_finite(const nlohmann::json& metrics);

void write_outputs(const MetricsReport& report, const std::filesystem::path& out_dir);

/// Command line entry point: `opsis <command> --config <path> --out <dir> [--seed N]`.
int run_cli(int argc, const char* const* argv);

}  // namespace opsis

#endif  // OPSIS_EXPERIMENT_HPP
