#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdn/error.hpp"

namespace tdn {

using CountMap = std::map<std::string, std::uint64_t>;

/// Immutable contributor -> contribution-count table.
///
/// Iteration order is the map's lexicographic id order, so every walk over
/// the same table is deterministic. total() is cached at construction.
/// The default-constructed value is empty; operations that need data throw
/// EmptyTableError, and from_counts refuses to build an empty table so an
/// empty value only arises as an ingest edge case or a merge identity.
class FrequencyTable {
public:
    FrequencyTable() = default;

    /// Build from (id, count) pairs. Ids must be distinct, counts >= 1,
    /// and the list non-empty.
    static FrequencyTable from_counts(
        const std::vector<std::pair<std::string, std::uint64_t>>& pairs);

    /// Build from an already-deduplicated map. Counts must be >= 1.
    /// An empty map is allowed here (unlike from_counts).
    static FrequencyTable from_map(CountMap counts);

    const CountMap& counts() const noexcept { return counts_; }

    /// N: total contributions.
    std::uint64_t total() const noexcept { return total_; }

    /// R: number of contributors.
    std::uint64_t richness() const noexcept { return counts_.size(); }

    bool empty() const noexcept { return counts_.empty(); }

    bool operator==(const FrequencyTable& other) const = default;

private:
    FrequencyTable(CountMap counts, std::uint64_t total)
        : counts_(std::move(counts)), total_(total) {}

    CountMap counts_;
    std::uint64_t total_ = 0;
};

/// Keywise sum. Commutative and associative; an empty operand acts as the
/// identity, which is what lets independently ingested shards combine.
FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b);

/// How proportions are based after subsampling.
///
/// truncated keeps the full-population denominator, so retained shares are
/// literal shares of all observed activity. renormalized rebases on the
/// retained total, making the subsample a population of its own.
enum class SubsampleMode { truncated, renormalized };

std::string_view to_string(SubsampleMode mode);
SubsampleMode subsample_mode_from_string(std::string_view name);

/// Share of contributors to retain, stored as an exact rational so that
/// the retained-set size never suffers decimal-to-binary roundoff.
class SubsampleSpec {
public:
    /// fraction = numerator/denominator, required in (0, 1].
    SubsampleSpec(std::uint64_t numerator, std::uint64_t denominator,
                  SubsampleMode mode = SubsampleMode::truncated);

    /// Parse a decimal literal such as "0.2", ".5" or "1", or an explicit
    /// rational such as "1/3".
    static SubsampleSpec parse(std::string_view text,
                               SubsampleMode mode = SubsampleMode::truncated);

    /// Recover the smallest-denominator rational consistent with a double,
    /// e.g. 0.2 -> 1/5. Used when fractions round-trip through JSON.
    static SubsampleSpec from_double(double fraction,
                                     SubsampleMode mode = SubsampleMode::truncated);

    std::uint64_t numerator() const noexcept { return num_; }
    std::uint64_t denominator() const noexcept { return den_; }
    SubsampleMode mode() const noexcept { return mode_; }

    double fraction() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    /// ceil(fraction * richness), computed in integers.
    std::uint64_t retained_count(std::uint64_t richness) const;

    bool is_full() const noexcept { return num_ == den_; }

private:
    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
    SubsampleMode mode_ = SubsampleMode::truncated;
};

/// Denominator against which contributor counts become proportions.
struct ProportionContext {
    std::uint64_t denominator = 0;
};

/// A retained subtable together with the denominator its proportions use.
struct Subpopulation {
    FrequencyTable table;
    ProportionContext context;
};

/// Keep the top ceil(fraction * R) contributors by count, ties broken
/// ascending by id. The returned context carries the full-population total
/// in truncated mode and the retained total in renormalized mode.
Subpopulation top_fraction(const FrequencyTable& table, const SubsampleSpec& spec);

struct TableSummary {
    std::uint64_t total = 0;             // N
    std::uint64_t richness = 0;          // R
    double mean_proportion = 0.0;        // always 1/R
    double sd_proportion = 0.0;          // population sd of the p_j
};

/// Descriptive statistics of the proportion vector p_j = count_j / N.
TableSummary summarize(const FrequencyTable& table);

}  // namespace tdn
