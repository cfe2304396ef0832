#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.hpp"
#include "tdn/metrics.hpp"

using tdn::FrequencyTable;
using tdn::SubsampleMode;
using tdn::SubsampleSpec;

namespace {

bool rel_close(double a, long double b, double tol = 1e-10) {
    const long double scale = std::max<long double>(1.0L, std::fabs(b));
    return std::fabs(static_cast<long double>(a) - b) <= tol * scale;
}

// Direct formula transcriptions in extended precision, used as the
// independent oracle for small tables.
long double oracle_shannon(const FrequencyTable& t) {
    const auto n = static_cast<long double>(t.total());
    long double h = 0.0L;
    for (const auto& [id, count] : t.counts()) {
        const long double p = static_cast<long double>(count) / n;
        h -= p * std::log(p);
    }
    return h;
}

long double oracle_log_factorial(std::uint64_t k) {
    long double s = 0.0L;
    for (std::uint64_t i = 2; i <= k; ++i) s += std::log(static_cast<long double>(i));
    return s;
}

long double oracle_brillouin(const FrequencyTable& t) {
    long double s = oracle_log_factorial(t.total());
    for (const auto& [id, count] : t.counts()) s -= oracle_log_factorial(count);
    return s / static_cast<long double>(t.total());
}

long double oracle_simpson(const FrequencyTable& t) {
    unsigned __int128 ss = 0;
    for (const auto& [id, count] : t.counts()) {
        ss += static_cast<unsigned __int128>(count) * count;
    }
    const auto n = static_cast<long double>(t.total());
    return static_cast<long double>(ss) / (n * n);
}

long double oracle_mcintosh(const FrequencyTable& t) {
    unsigned __int128 ss = 0;
    for (const auto& [id, count] : t.counts()) {
        ss += static_cast<unsigned __int128>(count) * count;
    }
    const auto n = static_cast<long double>(t.total());
    const auto r = static_cast<long double>(t.richness());
    return (n - std::sqrt(static_cast<long double>(ss))) / (n - n / std::sqrt(r));
}

long double oracle_e_var(const FrequencyTable& t) {
    const auto n = static_cast<long double>(t.total());
    const auto r = static_cast<long double>(t.richness());
    long double mean = 0.0L;
    for (const auto& [id, count] : t.counts()) {
        mean += std::log(static_cast<long double>(count) / n);
    }
    mean /= r;
    long double var = 0.0L;
    for (const auto& [id, count] : t.counts()) {
        const long double d = std::log(static_cast<long double>(count) / n) - mean;
        var += d * d;
    }
    var /= r;
    return 1.0L - (2.0L / static_cast<long double>(M_PI)) * std::atan(var);
}

}  // namespace

TEST_CASE("frozen index values") {
    const auto t21 = FrequencyTable::from_counts({{"a", 2}, {"b", 1}});
    CHECK(tdn::shannon_h(t21) == doctest::Approx(0.63651416829481282).epsilon(1e-13));
    CHECK(tdn::shannon_j(t21) == doctest::Approx(0.91829583405448951).epsilon(1e-13));
    CHECK(tdn::brillouin_h(t21) == doctest::Approx(0.36620409622270323).epsilon(1e-13));
    CHECK(tdn::simpson_lambda(t21) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK(tdn::mcintosh_e(t21) == doctest::Approx(0.86940902398377547).epsilon(1e-13));

    const auto t11 = FrequencyTable::from_counts({{"a", 1}, {"b", 1}});
    CHECK(tdn::brillouin_h(t11) == doctest::Approx(0.34657359027997265).epsilon(1e-13));

    const auto t124 = FrequencyTable::from_counts({{"a", 1}, {"b", 2}, {"c", 4}});
    CHECK(tdn::e_var(t124) == doctest::Approx(0.80266259132345021).epsilon(1e-13));
}

TEST_CASE("uniform tables hit the closed forms") {
    for (const std::uint64_t r : {2ULL, 4ULL, 10ULL, 1000ULL}) {
        const auto t = testutil::uniform_table(r, 5);
        CHECK(tdn::shannon_h(t) ==
              doctest::Approx(std::log(static_cast<double>(r))).epsilon(1e-12));
        CHECK(tdn::shannon_j(t) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tdn::simpson_lambda(t) ==
              doctest::Approx(1.0 / static_cast<double>(r)).epsilon(1e-12));
        CHECK(tdn::mcintosh_e(t) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tdn::e_var(t) == 1.0);  // exact by contract
    }
}

TEST_CASE("single contributor extremes") {
    const auto t = FrequencyTable::from_counts({{"only", 9}});
    CHECK(tdn::shannon_h(t) == 0.0);
    CHECK(tdn::brillouin_h(t) == 0.0);
    CHECK(tdn::simpson_lambda(t) == 1.0);
    CHECK(tdn::e_var(t) == 1.0);
    CHECK_THROWS_AS(tdn::shannon_j(t), tdn::UndefinedForSingletonError);
    CHECK_THROWS_AS(tdn::mcintosh_e(t), tdn::UndefinedForSingletonError);

    const auto suite = tdn::metric_suite(t);
    CHECK(!suite.shannon_j.has_value());
    CHECK(!suite.mcintosh_e.has_value());
}

TEST_CASE("empty tables are rejected") {
    const FrequencyTable empty;
    CHECK_THROWS_AS(tdn::shannon_h(empty), tdn::EmptyTableError);
    CHECK_THROWS_AS(tdn::brillouin_h(empty), tdn::EmptyTableError);
    CHECK_THROWS_AS(tdn::simpson_lambda(empty), tdn::EmptyTableError);
    CHECK_THROWS_AS(tdn::e_var(empty), tdn::EmptyTableError);
    CHECK_THROWS_AS(tdn::metric_suite(empty), tdn::EmptyTableError);
}

TEST_CASE("scale invariance, Brillouin exempt") {
    std::mt19937_64 eng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = testutil::random_table(eng, 40, 50);
        for (const std::uint64_t k : {2ULL, 10ULL, 1000ULL}) {
            const auto s = testutil::scaled(t, k);
            CHECK(std::abs(tdn::shannon_h(s) - tdn::shannon_h(t)) <= 1e-12);
            CHECK(std::abs(tdn::simpson_lambda(s) - tdn::simpson_lambda(t)) <= 1e-12);
            // Shift invariance in log space, up to rounding of ln(k*t).
            CHECK(std::abs(tdn::e_var(s) - tdn::e_var(t)) <= 1e-12);
            if (t.richness() > 1) {
                CHECK(std::abs(tdn::shannon_j(s) - tdn::shannon_j(t)) <= 1e-12);
                CHECK(std::abs(tdn::mcintosh_e(s) - tdn::mcintosh_e(t)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("bounds hold on random tables") {
    std::mt19937_64 eng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = testutil::random_table(eng, 60, 40);
        const auto r = static_cast<double>(t.richness());
        const double h = tdn::shannon_h(t);
        CHECK(h >= 0.0);
        CHECK(h <= std::log(r) + 1e-12);
        const double lam = tdn::simpson_lambda(t);
        CHECK(lam >= 1.0 / r - 1e-12);
        CHECK(lam <= 1.0);
        const double ev = tdn::e_var(t);
        CHECK(ev > 0.0);
        CHECK(ev <= 1.0);
        CHECK(tdn::brillouin_h(t) <= h + 1e-12);
        if (t.richness() > 1) {
            const double j = tdn::shannon_j(t);
            CHECK(j >= 0.0);
            CHECK(j <= 1.0 + 1e-12);
            const double mci = tdn::mcintosh_e(t);
            CHECK(mci >= 0.0 - 1e-12);
            CHECK(mci <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("brute-force oracle equivalence on small tables") {
    std::mt19937_64 eng(53);
    for (int trial = 0; trial < 500; ++trial) {
        const auto t = testutil::random_table(eng, 10, 20);
        CHECK(rel_close(tdn::shannon_h(t), oracle_shannon(t)));
        CHECK(rel_close(tdn::brillouin_h(t), oracle_brillouin(t)));
        CHECK(rel_close(tdn::simpson_lambda(t), oracle_simpson(t)));
        CHECK(rel_close(tdn::e_var(t), oracle_e_var(t)));
        if (t.richness() > 1) {
            CHECK(rel_close(tdn::shannon_j(t),
                            oracle_shannon(t) / std::log(static_cast<long double>(
                                                   t.richness()))));
            CHECK(rel_close(tdn::mcintosh_e(t), oracle_mcintosh(t)));
        }
    }
}

TEST_CASE("lambda equals the enumerated collision probability") {
    std::mt19937_64 eng(61);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = testutil::random_table(eng, 8, 6);
        // List every individual, then count ordered pairs sharing an owner.
        std::vector<std::string> owners;
        for (const auto& [id, count] : t.counts()) {
            for (std::uint64_t i = 0; i < count; ++i) owners.push_back(id);
        }
        std::uint64_t same = 0;
        for (const auto& a : owners) {
            for (const auto& b : owners) {
                if (a == b) ++same;
            }
        }
        const auto n = static_cast<double>(t.total());
        CHECK(tdn::simpson_lambda(t) == static_cast<double>(same) / (n * n));
    }
}

TEST_CASE("e_var ignores the proportion base entirely") {
    const auto small = FrequencyTable::from_counts({{"a", 1}, {"b", 2}, {"c", 4}});
    const auto big = FrequencyTable::from_counts({{"a", 10}, {"b", 20}, {"c", 40}});
    CHECK(std::abs(tdn::e_var(small) - tdn::e_var(big)) <= 1e-12);
}

TEST_CASE("suite over subsamples") {
    // Ranked table c01..c10 with counts 10..1; the top decile is a single
    // contributor holding 10 of 55 contributions.
    std::vector<std::pair<std::string, std::uint64_t>> pairs;
    for (int i = 1; i <= 10; ++i) {
        pairs.emplace_back((i < 10 ? "c0" : "c") + std::to_string(i),
                           static_cast<std::uint64_t>(11 - i));
    }
    const auto t = FrequencyTable::from_counts(pairs);

    const auto decile = tdn::top_fraction(t, SubsampleSpec(1, 10));
    REQUIRE(decile.table.richness() == 1);
    CHECK(decile.table.counts().count("c01") == 1);
    const auto suite = tdn::metric_suite(decile);
    CHECK(suite.shannon_h == doctest::Approx(0.30995419858880459).epsilon(1e-13));
    CHECK(suite.simpson_lambda ==
          doctest::Approx(0.033057851239669421).epsilon(1e-13));
    CHECK(!suite.shannon_j.has_value());
    CHECK(suite.e_var == 1.0);
    CHECK(suite.brillouin_h == 0.0);

    // A full-sample suite is mode-independent.
    const auto full_t = tdn::metric_suite(
        tdn::top_fraction(t, SubsampleSpec(1, 1, SubsampleMode::truncated)));
    const auto full_r = tdn::metric_suite(
        tdn::top_fraction(t, SubsampleSpec(1, 1, SubsampleMode::renormalized)));
    CHECK(full_t.shannon_h == full_r.shannon_h);
    CHECK(full_t.simpson_lambda == full_r.simpson_lambda);
    CHECK(full_t.e_var == full_r.e_var);

    // Truncated proportions can only shrink entropy and lambda relative to
    // renormalized ones on the same retained set.
    const auto half_t = tdn::metric_suite(
        tdn::top_fraction(t, SubsampleSpec(1, 2, SubsampleMode::truncated)));
    const auto half_r = tdn::metric_suite(
        tdn::top_fraction(t, SubsampleSpec(1, 2, SubsampleMode::renormalized)));
    CHECK(half_t.simpson_lambda < half_r.simpson_lambda);
    CHECK(half_t.e_var == half_r.e_var);
    CHECK(half_t.brillouin_h == half_r.brillouin_h);
}

TEST_CASE("entropy is stable over a 150k-entry table") {
    std::mt19937_64 eng(71);
    std::uniform_int_distribution<std::uint64_t> c_dist(1, 500);
    std::vector<std::pair<std::string, std::uint64_t>> pairs;
    pairs.reserve(150000);
    for (int i = 0; i < 150000; ++i) {
        pairs.emplace_back("u" + std::to_string(i), c_dist(eng));
    }
    auto shuffled = pairs;
    std::shuffle(shuffled.begin(), shuffled.end(), eng);

    const auto a = FrequencyTable::from_counts(pairs);
    const auto b = FrequencyTable::from_counts(shuffled);
    CHECK(a == b);
    const double h = tdn::shannon_h(a);
    CHECK(h == tdn::shannon_h(b));

    // Against a plain accumulation in reversed iteration order the
    // compensated sum must agree to 1e-12 relative.
    const auto n = static_cast<double>(a.total());
    double naive = 0.0;
    const auto& counts = a.counts();
    for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
        const double p = static_cast<double>(it->second) / n;
        naive -= p * std::log(p);
    }
    CHECK(std::abs(h - naive) <= 1e-12 * std::abs(h));
}
