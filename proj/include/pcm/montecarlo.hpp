#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcm/consistency.hpp"
#include "pcm/detail/exact_sum.hpp"
#include "pcm/detail/random.hpp"
#include "pcm/matrix.hpp"
#include "pcm/metrics.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

using RandomStream = detail::SplitMix64;

struct GeneratorConfig {
    std::size_t n = 4;
    double delta = 1.0;
    double weight_low = 1.0;
    double weight_high = 9.0;
    std::uint64_t seed = 0;

    void check() const;
};

/// Perturbs an entry a >= 1 by eps; falls back to 1 / (1 - eps - (a - 1))
/// when a + eps would drop below 1.
double perturb_entry(double a, double eps) noexcept;

/// Consistent matrix from uniform weights, then each pair's entry >= 1 is
/// perturbed by eps ~ U[-delta, delta] and its mirror reset to the exact
/// reciprocal. Draw order: n weights, then one eps per pair (i < j) in
/// row-major order.
PCMatrix generate_perturbed(const GeneratorConfig& cfg, RandomStream& rng);

/// Stream for matrix `index` of the cell (cfg.seed, cfg.n, cfg.delta).
RandomStream matrix_stream(const GeneratorConfig& cfg, std::uint64_t index);

struct SimulationConfig {
    std::vector<std::size_t> dims{4, 5, 6, 7, 8, 9};
    std::vector<double> deltas{1.0, 2.0, 3.0};
    std::uint64_t matrices_per_cell = 1'000'000;
    double bin_width = 0.005;
    std::uint64_t min_bin_count = 1000;
    double cr_cap = 0.5;
    std::uint64_t seed = 0;
    double weight_low = 1.0;
    double weight_high = 9.0;
    EigenSolverConfig solver{};

    void check() const;
    /// Regular bins covering [0, cr_cap); one overflow bucket follows them.
    std::size_t regular_bins() const;
    std::size_t bin_index(double cr) const;
    GeneratorConfig generator(std::size_t n, double delta) const;
};

struct BinStatistics {
    std::size_t index = 0;
    double bin_lower = 0.0;
    bool overflow = false;
    std::uint64_t count = 0;
    bool suppressed = false;
    /// mean[metric][counterpart]
    std::array<std::array<double, 3>, 4> mean{};
    std::array<double, 4> closer_probability{};
    double top_reversal_rate = 0.0;
    double any_reversal_rate = 0.0;

    double mean_of(Metric m, Counterpart c) const noexcept {
        return mean[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)];
    }
    double closer(Metric m) const noexcept { return closer_probability[static_cast<std::size_t>(m)]; }
    friend bool operator==(const BinStatistics&, const BinStatistics&) = default;
};

/// Bins of one dimension, pooled over all deltas (delta empty) or for one delta.
struct BinSeries {
    std::size_t n = 0;
    std::optional<double> delta;
    std::vector<BinStatistics> bins;  // only bins with count > 0, ascending
    friend bool operator==(const BinSeries&, const BinSeries&) = default;
};

struct CrHistogram {
    struct Cell {
        std::size_t n = 0;
        double delta = 0.0;
        std::vector<std::uint64_t> counts;  // regular bins, then overflow
        friend bool operator==(const Cell&, const Cell&) = default;
    };
    double bin_width = 0.0;
    double cr_cap = 0.0;
    std::vector<Cell> cells;
    friend bool operator==(const CrHistogram&, const CrHistogram&) = default;
};

struct SimulationResult {
    CrHistogram histogram;
    std::vector<BinSeries> pooled;     // one per dimension
    std::vector<BinSeries> per_delta;  // one per (dimension, delta)
    std::uint64_t total_matrices = 0;
    std::uint64_t failed_matrices = 0;

    const BinSeries& pooled_for(std::size_t n) const;
    friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Order-independent running sums for one set of bins.
class BinAccumulator {
public:
    explicit BinAccumulator(std::size_t bins = 0);
    void add(std::size_t bin, const ComparisonRecord& rec);
    BinAccumulator& operator+=(const BinAccumulator& other);
    std::vector<BinStatistics> finalize(const SimulationConfig& cfg) const;
    std::uint64_t total() const noexcept;
    friend bool operator==(const BinAccumulator&, const BinAccumulator&) = default;

private:
    struct Slot {
        std::uint64_t count = 0;
        std::array<std::array<detail::ExactSum, 3>, 4> sums{};
        std::array<std::uint64_t, 4> closer{};
        std::uint64_t top_reversals = 0;
        std::uint64_t any_reversals = 0;
        friend bool operator==(const Slot&, const Slot&) = default;
    };
    std::vector<Slot> slots_;
};

/// Partial state of a simulation; partial runs over disjoint index ranges
/// merge into exactly the state of the combined run.
class SimulationAccumulator {
public:
    explicit SimulationAccumulator(const SimulationConfig& cfg);
    void add(std::size_t dim_index, std::size_t delta_index, const ComparisonRecord& rec);
    void add_failure() noexcept { ++failed_; }
    SimulationAccumulator& operator+=(const SimulationAccumulator& other);
    SimulationResult finalize() const;
    friend bool operator==(const SimulationAccumulator& a, const SimulationAccumulator& b) {
        return a.pooled_ == b.pooled_ && a.per_delta_ == b.per_delta_ && a.failed_ == b.failed_;
    }

private:
    SimulationConfig cfg_;
    std::vector<BinAccumulator> pooled_;     // per dim
    std::vector<BinAccumulator> per_delta_;  // per dim * deltas + delta
    std::uint64_t failed_ = 0;
};

/// Runs matrices [first, last) of every (n, delta) cell.
SimulationAccumulator simulate_range(const SimulationConfig& cfg, const RiTable& ri,
                                     std::uint64_t first, std::uint64_t last, unsigned workers = 1);

/// Full run; statistics are bitwise identical for any worker count.
/// Throws MissingRiError before doing any work.
SimulationResult run_simulation(const SimulationConfig& cfg, const RiTable& ri, unsigned workers = 1);

/// Fraction of records whose closer flag for `m` is set. Throws EmptyBinError.
double closest_probability(std::span<const ComparisonRecord> records, Metric m);

}  // namespace pcm
