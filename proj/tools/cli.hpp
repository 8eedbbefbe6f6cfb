#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scenekge/embedding.hpp"
#include "scenekge/enrichment.hpp"
#include "scenekge/metrics.hpp"
#include "scenekge/scenegen.hpp"

namespace scenekge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `scene-kge` invocation. `args` excludes the program name. Data goes to `out`,
/// diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Flat key=value experiment description (see README for the keys).
struct GridConfig {
    std::vector<ModelKind> models;
    std::vector<KgVariant> variants;
    std::vector<std::uint64_t> seeds;
    std::optional<std::string> input;              // N-Triples base graph; generated when absent
    GenConfig generator;                           // seed replaced per run unless graph_seed is set
    std::optional<std::uint64_t> graph_seed;
    TrainConfig training;                          // model and seed replaced per cell
    std::size_t coherence_n = 1000;
    CoherencePool coherence_pool = CoherencePool::ExcludeClasses;
    std::string output_dir = "grid-out";
    int threads = 1;
};

/// Throws ValidationError on unknown keys, malformed values or an empty model/variant/seed list.
GridConfig parse_grid_config(std::istream& in);
GridConfig parse_grid_config_file(const std::string& path);

struct GridCell {
    ModelKind model;
    KgVariant variant;
    std::uint64_t seed;
};

/// Name shared by a cell's artifacts, e.g. `TransE-paths-seed3`.
std::string cell_name(const GridCell& cell);

/// Runs every model x variant x seed cell, writing per-cell artifacts and `merged.csv` into
/// the output directory. Returns 0 when every cell succeeded, 1 otherwise.
int run_grid(const GridConfig& cfg, std::ostream& err);

/// Merges per-cell reports into the wide table: one row per (metric, target), one column per
/// model/variant pair, each value the mean over seeds.
void write_merged_csv(const GridConfig& cfg, const std::vector<std::pair<GridCell, MetricReport>>& reports,
                      std::ostream& out);

}  // namespace scenekge::cli
