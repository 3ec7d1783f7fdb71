// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <thread>

#include <fmt/format.h>

#include "oracles.hpp"
#include "pcm/consistency.hpp"
#include "pcm/io.hpp"
#include "pcm/metrics.hpp"
#include "pcm/montecarlo.hpp"
#include "pcm/report.hpp"
#include "pcm/verify.hpp"
#include "pcm/weighting.hpp"

using namespace pcm;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const VerifyCase& find_case(const std::string& name) {
    for (const auto& c : verify_cases()) {
        if (c.name == name) return c;
    }
    throw std::runtime_error("missing case " + name);
}

// 1: published priority vectors
Outcome weights_oracle() {
    const auto t0 = Clock::now();
    const auto report = run_verify(default_ri_table());
    const double elapsed = seconds_since(t0);
    std::size_t checked = 0, failed = 0;
    double worst = 0.0;
    std::string first;
    for (const auto& r : report.results) {
        if (r.expectation.kind != QuantityKind::Weight) continue;
        ++checked;
        worst = std::max(worst, r.residual / r.expectation.tolerance);
        if (!r.passed) {
            ++failed;
            if (first.empty()) first = r.case_name + " " + r.expectation.quantity;
        }
    }
    const bool ok = failed == 0 && checked > 0 && elapsed < 1.0;
    return {ok, fmt::format("{} weight quantities over {} matrices, {} failed{}, worst residual {:.2f} of "
                            "tolerance, {:.3f} s",
                            checked, verify_cases().size(), failed, first.empty() ? "" : " (" + first + ")",
                            worst, elapsed)};
}

// 2: published consistency ratios with the shipped table
Outcome cr_oracle() {
    struct Want {
        const char* name;
        double cr, tol;
    };
    const Want wants[] = {{"johnson-A", 0.331, 0.01},
                          {"dodd-C", 0.082, 0.005},
                          {"simulated-M1", 0.0007, 0.0005},
                          {"simulated-M2", 0.078, 0.005},
                          {"simulated-M3", 0.0993, 0.003}};
    bool ok = true;
    std::string detail;
    for (const auto& w : wants) {
        const double cr = consistency_ratio(find_case(w.name).matrix(), default_ri_table()).cr;
        const bool pass = std::abs(cr - w.cr) <= w.tol;
        ok = ok && pass;
        detail += fmt::format("{}{} {:.4f} (want {} +- {})", detail.empty() ? "" : "; ", w.name, cr, w.cr, w.tol);
    }
    return {ok, detail};
}

// 3: rank reversal witnesses
Outcome reversal_witnesses() {
    const auto& ri = default_ri_table();
    auto q = [&](const char* name, const std::string& key) {
        return evaluate_quantity(find_case(name).matrix(), key, ri);
    };
    const bool a = q("johnson-A", "order_R.4.1") == 1 && q("johnson-A", "order_IL.1.4") == 1;
    const double m1_cr = q("simulated-M1", "cr");
    const bool m1 = q("simulated-M1", "order_R.1.3") == 1 && q("simulated-M1", "order_IL.3.1") == 1 &&
                    std::abs(m1_cr - 0.0007) <= 0.0005;
    const bool m2 = q("simulated-M2", "kendall_R_IL") == -1.0;
    const double gap_r = q("simulated-M3", "gap_R.2.5"), gap_il = q("simulated-M3", "gap_IL.2.5");
    const bool m3 = q("simulated-M3", "top_R") == 5 && q("simulated-M3", "top_IL") == 2 &&
                    std::abs(gap_r - 4.85) <= 0.05 && std::abs(gap_il - 4.44) <= 0.05;
    return {a && m1 && m2 && m3,
            fmt::format("A flips 1/4: {}; M1 flips 1/3 at CR {:.5f}: {}; M2 kendall -1: {}; "
                        "M3 top 5 -> 2 with gaps {:.3f} / {:.3f}: {}",
                        a, m1_cr, m1, m2, gap_r, gap_il, m3)};
}

// 4: n = 3, inverse left equals right
Outcome three_by_three() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(30003);
    double worst = 0.0;
    for (int k = 0; k < 10'000; ++k) {
        const auto a = oracle::random_reciprocal(3, rng);
        const auto r = right_eigenvector(a).weights;
        const auto il = inverse_left(a);
        for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r[i] - il[i]));
    }
    const double elapsed = seconds_since(t0);
    return {worst < 1e-9 && elapsed < 10.0,
            fmt::format("10000 matrices, max |w^-L - w^R| = {:.2e}, {:.2f} s", worst, elapsed)};
}

// 5: consistent matrices
Outcome consistent_degeneracy() {
    std::mt19937_64 rng(50005);
    double worst_w = 0.0, worst_lambda = 0.0, worst_cr = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 4 + static_cast<std::size_t>(k % 6);
        const auto w = oracle::random_weights(n, rng);
        const auto truth = oracle::sum_one(w);
        const auto a = consistent_from_weights(w);
        const auto p = all_priorities(a);
        const auto rl_sqrt = rl_combined(p.right, p.inverse_left, RlVariant::GeometricMean);
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) sq[i] = truth[i] * truth[i];
        const auto rl_expected = normalize(sq);
        for (std::size_t i = 0; i < n; ++i) {
            worst_w = std::max({worst_w, std::abs(p.right[i] - truth[i]), std::abs(p.inverse_left[i] - truth[i]),
                                std::abs(p.row_geometric_mean[i] - truth[i]), std::abs(rl_sqrt[i] - truth[i]),
                                std::abs(p.rl_combined[i] - rl_expected[i])});
        }
        worst_lambda = std::max(worst_lambda, std::abs(p.lambda_max - static_cast<double>(n)));
        worst_cr = std::max(worst_cr, std::abs(consistency_ratio(a, default_ri_table()).cr));
    }
    return {worst_w < 1e-9 && worst_lambda < 1e-9 && worst_cr == 0.0,
            fmt::format("1000 matrices n=4..9: max weight error {:.2e} (w^RL product checked against w^2), "
                        "max |lambda - n| {:.2e}, max CR {}",
                        worst_w, worst_lambda, worst_cr)};
}

double share_below(const BinSeries& s, double limit) {
    std::uint64_t below = 0, total = 0;
    for (const auto& b : s.bins) {
        total += b.count;
        if (!b.overflow && b.bin_lower < limit - 1e-12) below += b.count;
    }
    return static_cast<double>(below) / static_cast<double>(total);
}

// 6: share of generated matrices below CR 0.1 at delta = 1
Outcome generator_share() {
    const auto t0 = Clock::now();
    SimulationConfig cfg;
    cfg.dims = {4, 5, 6, 7, 8, 9};
    cfg.deltas = {1.0};
    cfg.matrices_per_cell = 100'000;
    cfg.seed = 60006;
    const auto r = run_simulation(cfg, default_ri_table(), std::max(1u, std::thread::hardware_concurrency()));
    bool ok = r.failed_matrices == 0;
    std::string detail;
    double worst = 1.0;
    for (std::size_t n = 5; n <= 9; ++n) {
        const double s = share_below(r.pooled_for(n), 0.1);
        worst = std::min(worst, s);
        ok = ok && s >= 0.99;
        detail += fmt::format("n={} {:.4f}; ", n, s);
    }
    const double s4 = share_below(r.pooled_for(4), 0.1);
    ok = ok && s4 < worst;
    detail += fmt::format("n=4 {:.4f} (lower); {:.1f} s", s4, seconds_since(t0));
    return {ok, detail};
}

struct DeskRun {
    SimulationResult result;
    SimulationConfig cfg;
};

const DeskRun& desk_run() {
    static const DeskRun run = [] {
        SimulationConfig cfg;
        cfg.dims = {6};
        cfg.deltas = {1.0, 2.0, 3.0};
        cfg.matrices_per_cell = 100'000;
        cfg.seed = 70007;
        return DeskRun{run_simulation(cfg, default_ri_table(), std::max(1u, std::thread::hardware_concurrency())),
                       cfg};
    }();
    return run;
}

std::vector<BinStatistics> qualifying_bins() {
    const auto& run = desk_run();
    std::vector<BinStatistics> out;
    for (const auto& b : run.result.pooled_for(6).bins) {
        if (!b.overflow && b.bin_lower < 0.1 - 1e-12 && b.count >= run.cfg.min_bin_count) out.push_back(b);
    }
    return out;
}

// 7: RGM sits near the midpoint between w^R and w^-L
Outcome midpoint() {
    const auto bins = qualifying_bins();
    double lo = 1e300, hi = -1e300;
    for (const auto& b : bins) {
        const double ratio = b.mean_of(Metric::Euclidean, Counterpart::RowGeometricMean) /
                             b.mean_of(Metric::Euclidean, Counterpart::InverseLeft);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {!bins.empty() && lo >= 0.40 && hi <= 0.60,
            fmt::format("n=6, {} bins with CR < 0.1 and count >= 1000: ratio in [{:.4f}, {:.4f}]", bins.size(), lo,
                        hi)};
}

// 8: RGM at least as close as w^-L
Outcome closer_probability() {
    const auto bins = qualifying_bins();
    double euc = 1, cheb = 1, kend = 1;
    for (const auto& b : bins) {
        euc = std::min(euc, b.closer(Metric::Euclidean));
        cheb = std::min(cheb, b.closer(Metric::Chebyshev));
        kend = std::min(kend, b.closer(Metric::Kendall));
    }
    return {!bins.empty() && euc >= 0.95 && cheb >= 0.99 && kend >= 0.95,
            fmt::format("n=6, {} bins: min closer_prob euclidean {:.4f} (>= 0.95), chebyshev {:.4f} (>= 0.99), "
                        "kendall {:.4f} (>= 0.95)",
                        bins.size(), euc, cheb, kend)};
}

// 9: byte-identical CSVs across worker counts
Outcome determinism() {
    SimulationConfig cfg;
    cfg.dims = {4, 5};
    cfg.deltas = {1.0, 2.0, 3.0};
    cfg.matrices_per_cell = 5000;
    cfg.seed = 90009;
    const auto root = fs::temp_directory_path() /
                      fmt::format("pcm_acceptance_{}", Clock::now().time_since_epoch().count());
    std::vector<std::string> files;
    bool ok = true;
    std::string reference;
    for (unsigned workers : {1u, 2u, 8u}) {
        const auto result = run_simulation(cfg, default_ri_table(), workers);
        const auto dir = root / std::to_string(workers);
        write_simulation_outputs(dir, result, RunManifest{cfg, default_ri_table(), "default", workers,
                                                          result.total_matrices, result.failed_matrices, "-"});
        std::string all;
        files.clear();
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".csv") files.push_back(entry.path().filename().string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) all += f + "\n" + read_text_file(dir / f);
        if (workers == 1) {
            reference = all;
        } else {
            ok = ok && all == reference;
        }
    }
    fs::remove_all(root);
    return {ok && files.size() == 10,
            fmt::format("{} CSV files, workers 1/2/8 {}", files.size(), ok ? "byte-identical" : "differ")};
}

// 10: power iteration against repeated squaring
Outcome eigen_oracle() {
    std::mt19937_64 rng(100010);
    double worst = 0.0;
    for (std::size_t n : {4u, 5u}) {
        for (int k = 0; k < 1000; ++k) {
            const auto a = oracle::random_reciprocal(n, rng);
            const auto r = right_eigenvector(a).weights;
            const auto l = left_eigenvector(a).weights;
            const auto ro = oracle::perron_by_squaring(a);
            const auto lo = oracle::perron_by_squaring(a, true);
            for (std::size_t i = 0; i < n; ++i) {
                worst = std::max({worst, std::abs(r[i] - ro[i]), std::abs(l[i] - lo[i])});
            }
        }
    }
    return {worst < 1e-8, fmt::format("1000 4x4 + 1000 5x5, right and left, max deviation {:.2e}", worst)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"paper-oracle weights", weights_oracle},
        {"consistency ratio oracles", cr_oracle},
        {"rank-reversal witnesses", reversal_witnesses},
        {"n = 3 reciprocity theorem", three_by_three},
        {"consistent-matrix degeneracy", consistent_degeneracy},
        {"generator CR share at delta = 1", generator_share},
        {"RGM midpoint property", midpoint},
        {"RGM closer probability", closer_probability},
        {"worker-count determinism", determinism},
        {"power iteration vs squaring oracle", eigen_oracle},
    };
    int failures = 0, index = 0;
    for (const auto& [name, fn] : criteria) {
        ++index;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << fmt::format("{} criterion {:>2}: {} -- {}", o.pass ? "PASS" : "FAIL", index, name, o.detail)
                  << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed", index - failures, index) << std::endl;
    return failures == 0 ? 0 : 1;
}
