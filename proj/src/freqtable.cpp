#include "tdn/freqtable.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdn/kahan.hpp"

namespace tdn {

FrequencyTable FrequencyTable::from_counts(
    const std::vector<std::pair<std::string, std::uint64_t>>& pairs) {
    if (pairs.empty()) {
        throw EmptyTableError("from_counts: no contributors given");
    }
    CountMap counts;
    std::uint64_t total = 0;
    for (const auto& [id, count] : pairs) {
        if (count == 0) {
            throw InvalidCountError("count for contributor '" + id + "' must be >= 1");
        }
        auto [it, inserted] = counts.emplace(id, count);
        if (!inserted) {
            throw DuplicateIdError("duplicate contributor id '" + id + "'");
        }
        total += count;
    }
    return FrequencyTable(std::move(counts), total);
}

FrequencyTable FrequencyTable::from_map(CountMap counts) {
    std::uint64_t total = 0;
    for (const auto& [id, count] : counts) {
        if (count == 0) {
            throw InvalidCountError("count for contributor '" + id + "' must be >= 1");
        }
        total += count;
    }
    return FrequencyTable(std::move(counts), total);
}

FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b) {
    // Accumulate into a copy of the larger side; keywise addition keeps the
    // operation commutative and associative.
    const FrequencyTable& big = a.richness() >= b.richness() ? a : b;
    const FrequencyTable& small = a.richness() >= b.richness() ? b : a;
    CountMap counts = big.counts();
    for (const auto& [id, count] : small.counts()) {
        counts[id] += count;
    }
    return FrequencyTable::from_map(std::move(counts));
}

std::string_view to_string(SubsampleMode mode) {
    return mode == SubsampleMode::truncated ? "truncated" : "renormalized";
}

SubsampleMode subsample_mode_from_string(std::string_view name) {
    if (name == "truncated") return SubsampleMode::truncated;
    if (name == "renormalized") return SubsampleMode::renormalized;
    throw Error("unknown subsample mode '" + std::string(name) + "'");
}

SubsampleSpec::SubsampleSpec(std::uint64_t numerator, std::uint64_t denominator,
                             SubsampleMode mode)
    : num_(numerator), den_(denominator), mode_(mode) {
    if (den_ == 0 || num_ == 0 || num_ > den_) {
        throw Error("subsample fraction must lie in (0, 1]");
    }
    const std::uint64_t g = std::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
}

SubsampleSpec SubsampleSpec::parse(std::string_view text, SubsampleMode mode) {
    if (text.empty()) throw Error("empty subsample fraction");

    // "num/den" names the rational directly; anything else is a decimal.
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto parse_uint = [&text](std::string_view digits) {
            if (digits.empty()) {
                throw Error("bad subsample fraction '" + std::string(text) + "'");
            }
            std::uint64_t value = 0;
            for (char c : digits) {
                if (c < '0' || c > '9') {
                    throw Error("bad subsample fraction '" + std::string(text) + "'");
                }
                if (value > (UINT64_MAX - 9) / 10) {
                    throw Error("subsample fraction '" + std::string(text) +
                                "' has too many digits");
                }
                value = value * 10 + static_cast<std::uint64_t>(c - '0');
            }
            return value;
        };
        return SubsampleSpec(parse_uint(text.substr(0, slash)),
                             parse_uint(text.substr(slash + 1)), mode);
    }

    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw Error("bad subsample fraction '" + std::string(text) + "'");
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') {
            throw Error("bad subsample fraction '" + std::string(text) + "'");
        }
        seen_digit = true;
        if (num > (UINT64_MAX - 9) / 10) {
            throw Error("subsample fraction '" + std::string(text) + "' has too many digits");
        }
        num = num * 10 + static_cast<std::uint64_t>(c - '0');
        if (seen_dot) {
            if (den > UINT64_MAX / 10) {
                throw Error("subsample fraction '" + std::string(text) + "' has too many digits");
            }
            den *= 10;
        }
    }
    if (!seen_digit) throw Error("bad subsample fraction '" + std::string(text) + "'");
    return SubsampleSpec(num, den, mode);
}

SubsampleSpec SubsampleSpec::from_double(double fraction, SubsampleMode mode) {
    if (!(fraction > 0.0) || !(fraction <= 1.0)) {
        throw Error("subsample fraction must lie in (0, 1]");
    }
    // Continued-fraction expansion; the first convergent within 1e-12 is the
    // smallest-denominator rational that can have produced the double.
    std::uint64_t p_prev = 0, q_prev = 1, p = 1, q = 0;
    double x = fraction;
    for (int i = 0; i < 64; ++i) {
        const double whole = std::floor(x);
        const auto a = static_cast<std::uint64_t>(whole);
        if (q != 0 && a > (UINT64_MAX - q_prev) / q) break;
        const std::uint64_t p_next = a * p + p_prev;
        const std::uint64_t q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        if (q > 1000000000ULL) break;
        if (std::abs(static_cast<double>(p) / static_cast<double>(q) - fraction) <= 1e-12) {
            break;
        }
        const double rem = x - whole;
        if (rem < 1e-15) break;
        x = 1.0 / rem;
    }
    if (p > q) p = q;  // absorb 1.0 + rounding noise
    return SubsampleSpec(p, q, mode);
}

std::uint64_t SubsampleSpec::retained_count(std::uint64_t richness) const {
    const auto prod = static_cast<unsigned __int128>(num_) * richness;
    return static_cast<std::uint64_t>((prod + den_ - 1) / den_);
}

Subpopulation top_fraction(const FrequencyTable& table, const SubsampleSpec& spec) {
    if (table.empty()) throw EmptyTableError("top_fraction: empty table");

    const std::uint64_t keep = spec.retained_count(table.richness());
    FrequencyTable sub;
    if (keep == table.richness()) {
        sub = table;
    } else {
        std::vector<std::pair<std::string_view, std::uint64_t>> order;
        order.reserve(table.richness());
        for (const auto& [id, count] : table.counts()) {
            order.emplace_back(id, count);
        }
        // Highest counts first; equal counts fall back to ascending id. A
        // full sort keeps the retained set reproducible across runs.
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        CountMap kept;
        for (std::uint64_t i = 0; i < keep; ++i) {
            kept.emplace(order[i].first, order[i].second);
        }
        sub = FrequencyTable::from_map(std::move(kept));
    }

    const std::uint64_t denom =
        spec.mode() == SubsampleMode::truncated ? table.total() : sub.total();
    return Subpopulation{std::move(sub), ProportionContext{denom}};
}

TableSummary summarize(const FrequencyTable& table) {
    if (table.empty()) throw EmptyTableError("summarize: empty table");

    TableSummary s;
    s.total = table.total();
    s.richness = table.richness();
    // Proportions over the table's own total always average to 1/R.
    s.mean_proportion = 1.0 / static_cast<double>(s.richness);

    const auto n = static_cast<double>(s.total);
    KahanSum sq;
    for (const auto& [id, count] : table.counts()) {
        const double dev = static_cast<double>(count) / n - s.mean_proportion;
        sq.add(dev * dev);
    }
    s.sd_proportion = std::sqrt(sq.value() / static_cast<double>(s.richness));
    return s;
}

}  // namespace tdn
