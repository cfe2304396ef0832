#pragma once

// Shared test utilities: deterministic random tables and small conveniences.
// Seeds are fixed so failures reproduce; none of the frozen expectations in
// the test files depend on these draws.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tdn/freqtable.hpp"

namespace testutil {

inline tdn::FrequencyTable random_table(std::mt19937_64& eng, std::uint64_t max_richness,
                                        std::uint64_t max_count) {
    std::uniform_int_distribution<std::uint64_t> r_dist(1, max_richness);
    std::uniform_int_distribution<std::uint64_t> c_dist(1, max_count);
    const std::uint64_t richness = r_dist(eng);
    std::vector<std::pair<std::string, std::uint64_t>> pairs;
    pairs.reserve(richness);
    for (std::uint64_t i = 0; i < richness; ++i) {
        pairs.emplace_back("u" + std::to_string(i), c_dist(eng));
    }
    return tdn::FrequencyTable::from_counts(pairs);
}

inline tdn::FrequencyTable uniform_table(std::uint64_t richness, std::uint64_t count) {
    std::vector<std::pair<std::string, std::uint64_t>> pairs;
    pairs.reserve(richness);
    for (std::uint64_t i = 0; i < richness; ++i) {
        pairs.emplace_back("u" + std::to_string(i), count);
    }
    return tdn::FrequencyTable::from_counts(pairs);
}

inline tdn::FrequencyTable scaled(const tdn::FrequencyTable& t, std::uint64_t k) {
    tdn::CountMap counts;
    for (const auto& [id, count] : t.counts()) counts.emplace(id, count * k);
    return tdn::FrequencyTable::from_map(std::move(counts));
}

}  // namespace testutil
