#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tdn/freqtable.hpp"
#include "tdn/metrics.hpp"

namespace tdn {

/// Shape of the synthetic abundance curve, ranks i = 1..R:
///   uniform     equal weights (param ignored)
///   geometric   k^i           param = k in (0, 1)
///   zipf        i^-s          param = s > 0
///   lognormal   exp(sigma*z_i) param = sigma > 0, z_i standard normal
enum class AbundanceModel { uniform, geometric, zipf, lognormal };

std::string_view to_string(AbundanceModel model);
AbundanceModel abundance_model_from_string(std::string_view name);

struct PopulationSpec {
    AbundanceModel model = AbundanceModel::uniform;
    std::uint64_t richness = 1;     // R: contributors requested
    double param = 0.0;             // model parameter, see AbundanceModel
    std::uint64_t individuals = 1;  // N: contributions to apportion
    std::uint64_t seed = 0;         // drives lognormal draws only
};

/// Deterministically apportion N contributions across min(R, N) contributors
/// in proportion to the model weights:
///   1. every contributor gets the floor of its exact quota N * w_i / sum w;
///   2. leftover units go to the largest fractional remainders, earlier
///      ranks first on ties;
///   3. contributors left at zero are raised to 1, each unit taken from the
///      currently largest count (smallest rank on ties).
/// Contributor ids are the 1-based ranks, zero-padded ("c07").
///
/// The lognormal draws are pinned for cross-platform reproducibility:
/// std::mt19937_64 seeded with spec.seed, uniforms u = (next() >> 11) *
/// 2^-53, normals via the Box-Muller pair sqrt(-2 ln(1-u1)) * {cos, sin}
/// (2 pi u2). No library distribution object is involved.
FrequencyTable generate(const PopulationSpec& spec);

struct SweepRow {
    std::uint64_t richness = 0;
    std::uint64_t seed = 0;
    MetricSuite suite;
};

/// Generate one population per (richness, seed) pair, holding the model and
/// the contributions-per-contributor ratio fixed, and compute the full
/// metric suite of each. N is round(ratio * R). Rows come back in richness-
/// major, then seed order.
std::vector<SweepRow> richness_sweep(AbundanceModel model, double param,
                                     double individuals_per_contributor,
                                     std::span<const std::uint64_t> richness_values,
                                     std::span<const std::uint64_t> seeds);

}  // namespace tdn
