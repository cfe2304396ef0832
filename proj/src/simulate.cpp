#include "tdn/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <string>

#include "tdn/kahan.hpp"

namespace tdn {

namespace {

// Pinned normal source; see the generate() contract in the header.
class PinnedNormal {
public:
    explicit PinnedNormal(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::vector<double> model_weights(const PopulationSpec& spec, std::uint64_t r_eff) {
    std::vector<double> w(r_eff);
    switch (spec.model) {
        case AbundanceModel::uniform:
            std::fill(w.begin(), w.end(), 1.0);
            break;
        case AbundanceModel::geometric: {
            if (!(spec.param > 0.0 && spec.param < 1.0)) {
                throw InvalidSpecError("geometric ratio must lie in (0, 1)");
            }
            double value = spec.param;
            for (auto& out : w) {
                out = value;
                value *= spec.param;
            }
            break;
        }
        case AbundanceModel::zipf: {
            if (!(spec.param > 0.0)) {
                throw InvalidSpecError("zipf exponent must be positive");
            }
            for (std::uint64_t i = 0; i < r_eff; ++i) {
                w[i] = std::pow(static_cast<double>(i + 1), -spec.param);
            }
            break;
        }
        case AbundanceModel::lognormal: {
            if (!(spec.param > 0.0)) {
                throw InvalidSpecError("lognormal sigma must be positive");
            }
            PinnedNormal normals(spec.seed);
            for (auto& out : w) {
                out = std::exp(spec.param * normals.next());
            }
            break;
        }
    }
    return w;
}

}  // namespace

std::string_view to_string(AbundanceModel model) {
    switch (model) {
        case AbundanceModel::uniform: return "uniform";
        case AbundanceModel::geometric: return "geometric";
        case AbundanceModel::zipf: return "zipf";
        case AbundanceModel::lognormal: return "lognormal";
    }
    return "uniform";
}

AbundanceModel abundance_model_from_string(std::string_view name) {
    if (name == "uniform") return AbundanceModel::uniform;
    if (name == "geometric") return AbundanceModel::geometric;
    if (name == "zipf") return AbundanceModel::zipf;
    if (name == "lognormal") return AbundanceModel::lognormal;
    throw InvalidSpecError("unknown abundance model '" + std::string(name) + "'");
}

FrequencyTable generate(const PopulationSpec& spec) {
    if (spec.richness == 0) throw InvalidSpecError("richness must be >= 1");
    if (spec.individuals == 0) throw InvalidSpecError("individuals must be >= 1");

    // Never more contributors than contributions; excess ranks are dropped.
    const std::uint64_t r_eff = std::min(spec.richness, spec.individuals);
    const std::vector<double> weights = model_weights(spec, r_eff);

    KahanSum weight_sum;
    for (double w : weights) weight_sum.add(w);
    const double total_weight = weight_sum.value();
    if (!(total_weight > 0.0) || !std::isfinite(total_weight)) {
        throw InvalidSpecError("abundance weights vanished or overflowed");
    }

    const auto n = static_cast<double>(spec.individuals);
    std::vector<std::uint64_t> counts(r_eff);
    std::vector<double> remainder(r_eff);
    std::uint64_t assigned = 0;
    for (std::uint64_t i = 0; i < r_eff; ++i) {
        const double quota = n * (weights[i] / total_weight);
        const double floored = std::floor(quota);
        counts[i] = static_cast<std::uint64_t>(floored);
        remainder[i] = quota - floored;
        assigned += counts[i];
    }

    // Largest remainders take the leftover units, earlier ranks first.
    std::vector<std::uint64_t> order(r_eff);
    for (std::uint64_t i = 0; i < r_eff; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return a < b;
    });
    for (std::uint64_t k = 0; assigned < spec.individuals; ++k) {
        ++counts[order[k]];
        ++assigned;
    }

    // Raise zero counts to one, funding each unit from the current maximum
    // (smallest rank on ties). While any zero remains some count is >= 2,
    // so no donor ever drops below one.
    using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (count, rank)
    const auto donor_order = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(donor_order)> donors(donor_order);
    std::vector<std::uint64_t> zeros;
    for (std::uint64_t i = 0; i < r_eff; ++i) {
        if (counts[i] == 0) {
            zeros.push_back(i);
        } else {
            donors.emplace(counts[i], i);
        }
    }
    for (std::uint64_t z : zeros) {
        for (;;) {
            const auto [count, rank] = donors.top();
            donors.pop();
            if (counts[rank] != count) continue;  // stale entry
            --counts[rank];
            donors.emplace(counts[rank], rank);
            break;
        }
        counts[z] = 1;
    }

    const std::size_t width = std::to_string(r_eff).size();
    CountMap out;
    for (std::uint64_t i = 0; i < r_eff; ++i) {
        std::string rank = std::to_string(i + 1);
        out.emplace("c" + std::string(width - rank.size(), '0') + rank, counts[i]);
    }
    return FrequencyTable::from_map(std::move(out));
}

std::vector<SweepRow> richness_sweep(AbundanceModel model, double param,
                                     double individuals_per_contributor,
                                     std::span<const std::uint64_t> richness_values,
                                     std::span<const std::uint64_t> seeds) {
    if (!(individuals_per_contributor > 0.0)) {
        throw InvalidSpecError("individuals per contributor must be positive");
    }
    std::vector<SweepRow> rows;
    rows.reserve(richness_values.size() * seeds.size());
    for (std::uint64_t richness : richness_values) {
        const double n_exact = individuals_per_contributor * static_cast<double>(richness);
        const auto individuals =
            std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(n_exact)));
        for (std::uint64_t seed : seeds) {
            PopulationSpec spec;
            spec.model = model;
            spec.richness = richness;
            spec.param = param;
            spec.individuals = individuals;
            spec.seed = seed;
            rows.push_back(SweepRow{richness, seed, metric_suite(generate(spec))});
        }
    }
    return rows;
}

}  // namespace tdn
