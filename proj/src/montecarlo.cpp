#include "pcm/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pcm/detail/parallel.hpp"
#include "pcm/error.hpp"

namespace pcm {

void GeneratorConfig::check() const {
    if (n < 2) throw DegenerateOrderError(n);
    if (!(delta > 0.0)) throw Error("delta must be positive");
    if (!(weight_low > 0.0 && weight_low < weight_high)) {
        throw Error("weight range must satisfy 0 < weight_low < weight_high");
    }
}

double perturb_entry(double a, double eps) noexcept {
    const double shifted = a + eps;
    if (shifted >= 1.0) return shifted;
    return 1.0 / (1.0 - eps - (a - 1.0));
}

PCMatrix generate_perturbed(const GeneratorConfig& cfg, RandomStream& rng) {
    cfg.check();
    const std::size_t n = cfg.n;
    std::vector<double> w(n);
    for (auto& x : w) x = rng.uniform(cfg.weight_low, cfg.weight_high);

    std::vector<double> a(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double eps = rng.uniform(-cfg.delta, cfg.delta);
            // Perturb whichever of a_ij, a_ji is >= 1; ties go to (i, j).
            const bool upper = w[i] >= w[j];
            const double big = upper ? w[i] / w[j] : w[j] / w[i];
            const double perturbed = perturb_entry(big, eps);
            const auto [hi, lo] = upper ? std::pair{i, j} : std::pair{j, i};
            a[hi * n + lo] = perturbed;
            a[lo * n + hi] = 1.0 / perturbed;
        }
    }
    return unchecked_matrix(n, std::move(a));
}

RandomStream matrix_stream(const GeneratorConfig& cfg, std::uint64_t index) {
    return RandomStream(detail::derive_seed(cfg.seed, {cfg.n, std::bit_cast<std::uint64_t>(cfg.delta), index}));
}

void SimulationConfig::check() const {
    if (dims.empty()) throw Error("simulation needs at least one dimension");
    if (deltas.empty()) throw Error("simulation needs at least one delta");
    for (auto n : dims) {
        if (n < 3) throw DegenerateOrderError(n);
    }
    for (double d : deltas) {
        if (!(d > 0.0)) throw Error("delta must be positive");
    }
    if (matrices_per_cell < 1) throw Error("matrices_per_cell must be at least 1");
    if (!(bin_width > 0.0)) throw Error("bin_width must be positive");
    if (!(cr_cap > 0.0)) throw Error("cr_cap must be positive");
    if (!(weight_low > 0.0 && weight_low < weight_high)) {
        throw Error("weight range must satisfy 0 < weight_low < weight_high");
    }
    solver.check();
}

std::size_t SimulationConfig::regular_bins() const {
    return static_cast<std::size_t>(std::ceil(cr_cap / bin_width - 1e-9));
}

std::size_t SimulationConfig::bin_index(double cr) const {
    const std::size_t regular = regular_bins();
    if (!(cr >= 0.0)) return 0;
    if (cr >= cr_cap) return regular;
    return std::min(static_cast<std::size_t>(std::floor(cr / bin_width)), regular - 1);
}

GeneratorConfig SimulationConfig::generator(std::size_t n, double delta) const {
    return GeneratorConfig{n, delta, weight_low, weight_high, seed};
}

const BinSeries& SimulationResult::pooled_for(std::size_t n) const {
    for (const auto& s : pooled) {
        if (s.n == n) return s;
    }
    throw Error("no pooled series for n = " + std::to_string(n));
}

BinAccumulator::BinAccumulator(std::size_t bins) : slots_(bins) {}

void BinAccumulator::add(std::size_t bin, const ComparisonRecord& rec) {
    Slot& s = slots_.at(bin);
    ++s.count;
    for (Metric m : kAllMetrics) {
        const auto mi = static_cast<std::size_t>(m);
        for (Counterpart c : kAllCounterparts) {
            s.sums[mi][static_cast<std::size_t>(c)].add(rec.value(m, c));
        }
        if (rec.closer[mi]) ++s.closer[mi];
    }
    if (rec.top_reversal) ++s.top_reversals;
    if (rec.any_reversal) ++s.any_reversals;
}

BinAccumulator& BinAccumulator::operator+=(const BinAccumulator& other) {
    if (slots_.size() != other.slots_.size()) throw DimensionMismatchError("bin layouts differ");
    for (std::size_t b = 0; b < slots_.size(); ++b) {
        Slot& s = slots_[b];
        const Slot& o = other.slots_[b];
        s.count += o.count;
        for (std::size_t m = 0; m < 4; ++m) {
            for (std::size_t c = 0; c < 3; ++c) s.sums[m][c] += o.sums[m][c];
            s.closer[m] += o.closer[m];
        }
        s.top_reversals += o.top_reversals;
        s.any_reversals += o.any_reversals;
    }
    return *this;
}

std::uint64_t BinAccumulator::total() const noexcept {
    std::uint64_t t = 0;
    for (const auto& s : slots_) t += s.count;
    return t;
}

std::vector<BinStatistics> BinAccumulator::finalize(const SimulationConfig& cfg) const {
    std::vector<BinStatistics> out;
    const std::size_t regular = cfg.regular_bins();
    for (std::size_t b = 0; b < slots_.size(); ++b) {
        const Slot& s = slots_[b];
        if (s.count == 0) continue;
        BinStatistics st;
        st.index = b;
        st.overflow = b >= regular;
        st.bin_lower = st.overflow ? cfg.cr_cap : static_cast<double>(b) * cfg.bin_width;
        st.count = s.count;
        st.suppressed = s.count < cfg.min_bin_count;
        const auto count = static_cast<double>(s.count);
        for (std::size_t m = 0; m < 4; ++m) {
            for (std::size_t c = 0; c < 3; ++c) st.mean[m][c] = s.sums[m][c].mean(s.count);
            st.closer_probability[m] = static_cast<double>(s.closer[m]) / count;
        }
        st.top_reversal_rate = static_cast<double>(s.top_reversals) / count;
        st.any_reversal_rate = static_cast<double>(s.any_reversals) / count;
        out.push_back(st);
    }
    return out;
}

SimulationAccumulator::SimulationAccumulator(const SimulationConfig& cfg)
    : cfg_(cfg),
      pooled_(cfg.dims.size(), BinAccumulator(cfg.regular_bins() + 1)),
      per_delta_(cfg.dims.size() * cfg.deltas.size(), BinAccumulator(cfg.regular_bins() + 1)) {}

void SimulationAccumulator::add(std::size_t dim_index, std::size_t delta_index, const ComparisonRecord& rec) {
    const std::size_t bin = cfg_.bin_index(rec.cr);
    pooled_.at(dim_index).add(bin, rec);
    per_delta_.at(dim_index * cfg_.deltas.size() + delta_index).add(bin, rec);
}

SimulationAccumulator& SimulationAccumulator::operator+=(const SimulationAccumulator& other) {
    if (pooled_.size() != other.pooled_.size() || per_delta_.size() != other.per_delta_.size()) {
        throw DimensionMismatchError("simulation layouts differ");
    }
    for (std::size_t i = 0; i < pooled_.size(); ++i) pooled_[i] += other.pooled_[i];
    for (std::size_t i = 0; i < per_delta_.size(); ++i) per_delta_[i] += other.per_delta_[i];
    failed_ += other.failed_;
    return *this;
}

SimulationResult SimulationAccumulator::finalize() const {
    SimulationResult r;
    r.histogram.bin_width = cfg_.bin_width;
    r.histogram.cr_cap = cfg_.cr_cap;
    r.failed_matrices = failed_;
    for (std::size_t d = 0; d < cfg_.dims.size(); ++d) {
        const std::size_t n = cfg_.dims[d];
        r.pooled.push_back(BinSeries{n, std::nullopt, pooled_[d].finalize(cfg_)});
        r.total_matrices += pooled_[d].total();
        for (std::size_t k = 0; k < cfg_.deltas.size(); ++k) {
            const auto& acc = per_delta_[d * cfg_.deltas.size() + k];
            auto bins = acc.finalize(cfg_);
            CrHistogram::Cell cell{n, cfg_.deltas[k], std::vector<std::uint64_t>(cfg_.regular_bins() + 1, 0)};
            for (const auto& b : bins) cell.counts[b.index] = b.count;
            r.histogram.cells.push_back(std::move(cell));
            r.per_delta.push_back(BinSeries{n, cfg_.deltas[k], std::move(bins)});
        }
    }
    return r;
}

namespace {

constexpr std::uint64_t kSimulationChunk = 2048;

}  // namespace

SimulationAccumulator simulate_range(const SimulationConfig& cfg, const RiTable& ri, std::uint64_t first,
                                     std::uint64_t last, unsigned workers) {
    cfg.check();
    for (auto n : cfg.dims) ri.at(n);
    workers = std::max(1u, workers);
    last = std::min(last, cfg.matrices_per_cell);
    first = std::min(first, last);

    const std::uint64_t chunks_per_cell = (last - first + kSimulationChunk - 1) / kSimulationChunk;
    const std::size_t cells = cfg.dims.size() * cfg.deltas.size();
    std::vector<SimulationAccumulator> partial(workers, SimulationAccumulator(cfg));

    detail::run_chunks(cells * chunks_per_cell, workers, [&](unsigned worker, std::size_t task) {
        const std::size_t cell = task / chunks_per_cell;
        const std::uint64_t chunk = task % chunks_per_cell;
        const std::size_t dim_index = cell / cfg.deltas.size();
        const std::size_t delta_index = cell % cfg.deltas.size();
        const GeneratorConfig gen = cfg.generator(cfg.dims[dim_index], cfg.deltas[delta_index]);
        const std::uint64_t begin = first + chunk * kSimulationChunk;
        const std::uint64_t end = std::min(last, begin + kSimulationChunk);
        auto& acc = partial[worker];
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            auto rng = matrix_stream(gen, idx);
            const PCMatrix a = generate_perturbed(gen, rng);
            try {
                acc.add(dim_index, delta_index, compare_methods(a, cfg.solver, ri));
            } catch (const NoConvergenceError&) {
                acc.add_failure();
            }
        }
    });

    SimulationAccumulator total(cfg);
    for (const auto& p : partial) total += p;
    return total;
}

SimulationResult run_simulation(const SimulationConfig& cfg, const RiTable& ri, unsigned workers) {
    return simulate_range(cfg, ri, 0, cfg.matrices_per_cell, workers).finalize();
}

double closest_probability(std::span<const ComparisonRecord> records, Metric m) {
    if (records.empty()) throw EmptyBinError("no records in bin");
    const auto hits = std::count_if(records.begin(), records.end(),
                                    [m](const ComparisonRecord& r) { return r.rgm_closer(m); });
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

}  // namespace pcm
