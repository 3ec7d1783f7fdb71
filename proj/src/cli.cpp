#include "pcm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pcm/consistency.hpp"
#include "pcm/error.hpp"
#include "pcm/io.hpp"
#include "pcm/metrics.hpp"
#include "pcm/montecarlo.hpp"
#include "pcm/report.hpp"
#include "pcm/verify.hpp"
#include "pcm/weighting.hpp"

namespace pcm::cli {

namespace {

struct LoadOptions {
    std::string reciprocity = "strict";
    double tolerance = kFileTolerance;

    ReciprocityPolicy policy() const {
        if (reciprocity == "repair-upper") return {ReciprocityMode::RepairFromUpper, tolerance};
        if (reciprocity == "reconcile") return {ReciprocityMode::ReconcileRounded, tolerance};
        return {ReciprocityMode::Strict, tolerance};
    }
};

void add_load_options(CLI::App* cmd, LoadOptions& o) {
    cmd->add_option("--reciprocity", o.reciprocity, "How to treat non-reciprocal pairs")
        ->check(CLI::IsMember({"strict", "repair-upper", "reconcile"}))
        ->capture_default_str();
    cmd->add_option("--tolerance", o.tolerance, "Reciprocity tolerance |a_ij a_ji - 1|")
        ->check(CLI::Range(1e-15, 0.1))
        ->capture_default_str();
}

struct RiOptions {
    std::string table_path;
    double scale = 1.0;

    RiTable load() const {
        RiTable t = table_path.empty() ? default_ri_table() : RiTable::load(table_path);
        return scale == 1.0 ? t : t.scaled(scale);
    }
    std::string source() const { return table_path.empty() ? "default" : table_path; }
};

void add_ri_options(CLI::App* cmd, RiOptions& o) {
    cmd->add_option("--ri-table", o.table_path, "Random index table (lines: n ri samples seed)")
        ->check(CLI::ExistingFile);
}

unsigned default_workers() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string provenance_text(const RiProvenance& p) {
    if (!p.estimated()) return "user-supplied";
    return fmt::format("estimated, samples={}, seed={}", p.samples, p.seed);
}

void print_vectors(std::ostream& out, const std::vector<WeightVector>& rows, Normalization scale, bool csv) {
    if (rows.empty()) return;
    const std::size_t n = rows.front().n();
    if (csv) {
        out << "method";
        for (std::size_t i = 0; i < n; ++i) out << ",w" << i + 1;
        out << '\n';
    } else {
        out << fmt::format("{:<14}", "method");
        for (std::size_t i = 0; i < n; ++i) out << fmt::format("{:>10}", fmt::format("w{}", i + 1));
        out << '\n';
    }
    for (const auto& w : rows) {
        const auto scaled = w.rescaled(scale);
        if (csv) {
            out << method_name(w.method());
            for (std::size_t i = 0; i < n; ++i) out << ',' << format_fixed(scaled[i], 4);
        } else {
            out << fmt::format("{:<14}", method_name(w.method()));
            for (std::size_t i = 0; i < n; ++i) out << fmt::format("{:>10}", format_fixed(scaled[i], 4));
        }
        out << '\n';
    }
}

std::vector<WeightVector> vectors_for(const PCMatrix& a, const std::string& method, RlVariant variant) {
    if (method == "right") return {right_eigenvector(a).weights};
    if (method == "left") return {left_eigenvector(a).weights};
    if (method == "left-inverse") return {inverse_left(a)};
    if (method == "rl") return {rl_combined(a, {}, variant)};
    if (method == "rgm") return {row_geometric_mean(a)};
    auto p = all_priorities(a, {}, variant);
    return {p.right, p.inverse_left, p.rl_combined, p.row_geometric_mean};
}

void print_matrix(std::ostream& out, const PCMatrix& a) {
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) out << fmt::format("{:>10}", format_fixed(a(i, j), 4));
        out << '\n';
    }
}

int cmd_verify(std::ostream& out, const RiOptions& ri_opts) {
    const RiTable ri = ri_opts.load();
    const auto report = run_verify(ri);
    std::string current;
    for (const auto& r : report.results) {
        if (r.case_name != current) {
            current = r.case_name;
            out << "== " << current << '\n';
        }
        const auto& e = r.expectation;
        out << fmt::format("  {} {:<14} expected {:<12.6g} actual {:<14.8g} residual {:<10.3g} tol {:.3g}{}\n",
                           r.passed ? "PASS" : "FAIL", e.quantity, e.value, r.actual, r.residual, e.tolerance,
                           e.tolerance_kind == ToleranceKind::Relative ? " (rel)" : "");
    }
    out << fmt::format("{} cases, {} quantities, {} failed\n", verify_cases().size(), report.results.size(),
                       report.failures());
    if (!report.all_passed()) {
        for (const auto& r : report.results) {
            if (!r.passed) {
                out << fmt::format("first failure: {} {} expected {} got {}\n", r.case_name,
                                   r.expectation.quantity, r.expectation.value, r.actual);
                break;
            }
        }
        return kFailure;
    }
    return kSuccess;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Priority derivation, consistency analysis and right-left asymmetry simulations "
                 "for pairwise comparison matrices",
                 "pcmtool"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // weights
    std::string matrix_file;
    LoadOptions load;
    std::string method = "all";
    int scale = 100;
    std::string format = "table";
    std::string rl_variant = "product";
    auto* weights = app.add_subcommand("weights", "Priority vectors of a matrix file");
    weights->add_option("matrix", matrix_file, "Matrix text file")->required()->check(CLI::ExistingFile);
    weights->add_option("--method", method)
        ->check(CLI::IsMember({"right", "left", "left-inverse", "rl", "rgm", "all"}))
        ->capture_default_str();
    weights->add_option("--scale", scale, "Sum of printed priorities")
        ->check(CLI::IsMember({1, 100}))
        ->capture_default_str();
    weights->add_option("--format", format)->check(CLI::IsMember({"table", "csv"}))->capture_default_str();
    weights->add_option("--rl-variant", rl_variant, "product (default) or sqrt of the product")
        ->check(CLI::IsMember({"product", "sqrt"}))
        ->capture_default_str();
    add_load_options(weights, load);

    // consistency
    RiOptions ri_opts;
    auto* consistency = app.add_subcommand("consistency", "Saaty consistency index and ratio");
    consistency->add_option("matrix", matrix_file)->required()->check(CLI::ExistingFile);
    add_ri_options(consistency, ri_opts);
    add_load_options(consistency, load);

    // compare
    auto* compare = app.add_subcommand("compare", "Distances between w^R and the other vectors");
    compare->add_option("matrix", matrix_file)->required()->check(CLI::ExistingFile);
    add_ri_options(compare, ri_opts);
    add_load_options(compare, load);

    // generate
    GeneratorConfig gen;
    std::uint64_t count = 1;
    std::string out_dir;
    auto* generate = app.add_subcommand("generate", "Write perturbed random matrices to files");
    generate->add_option("--n", gen.n)->required()->check(CLI::Range(3, 64));
    generate->add_option("--delta", gen.delta)->required()->check(CLI::PositiveNumber);
    generate->add_option("--count", count)->capture_default_str();
    generate->add_option("--seed", gen.seed)->capture_default_str();
    generate->add_option("--weight-low", gen.weight_low)->capture_default_str();
    generate->add_option("--weight-high", gen.weight_high)->capture_default_str();
    generate->add_option("--out", out_dir)->required();

    // simulate
    std::string config_file;
    unsigned workers = 0;
    auto* simulate = app.add_subcommand("simulate", "Binned Monte Carlo comparison run");
    simulate->add_option("config", config_file, "key = value config file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out_dir)->required();
    simulate->add_option("--workers", workers, std::string("Worker threads (default: $") + kWorkersEnv +
                                                   " or hardware concurrency)");

    // aggregate
    std::vector<std::string> files;
    std::string mode = "AIJ";
    auto* aggregate = app.add_subcommand("aggregate", "Group aggregation (AIJ or AIP)");
    aggregate->add_option("matrices", files)->required()->check(CLI::ExistingFile);
    aggregate->add_option("--mode", mode)
        ->check(CLI::IsMember({"AIJ", "AIP"}, CLI::ignore_case))
        ->capture_default_str();
    aggregate->add_option("--method", method, "Weighting method aggregated under AIP")
        ->check(CLI::IsMember({"right", "left-inverse", "rl", "rgm", "all"}));
    aggregate->add_option("--scale", scale)->check(CLI::IsMember({1, 100}))->capture_default_str();
    add_load_options(aggregate, load);

    // verify
    auto* verify = app.add_subcommand("verify", "Check the library against published worked examples");
    add_ri_options(verify, ri_opts);
    verify->add_option("--ri-scale", ri_opts.scale, "Multiply every RI value (diagnostics)")
        ->check(CLI::PositiveNumber);

    // ri-estimate
    std::size_t n_min = 3, n_max = 15;
    std::uint64_t samples = 1'000'000, seed = 20240601;
    std::string out_file;
    auto* ri_estimate = app.add_subcommand("ri-estimate", "Estimate random indices on the Saaty scale");
    ri_estimate->add_option("--n-min", n_min)->check(CLI::Range(3, 64))->capture_default_str();
    ri_estimate->add_option("--n-max", n_max)->check(CLI::Range(3, 64))->capture_default_str();
    ri_estimate->add_option("--samples", samples)->check(CLI::Range(1000ULL, 1ULL << 40))->capture_default_str();
    ri_estimate->add_option("--seed", seed)->capture_default_str();
    ri_estimate->add_option("--workers", workers);
    ri_estimate->add_option("--out", out_file, "Write the table here instead of stdout");

    if (!args.empty()) args.erase(args.begin());
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    const RlVariant variant = rl_variant == "sqrt" ? RlVariant::GeometricMean : RlVariant::Product;
    const Normalization norm = scale == 1 ? Normalization::SumOne : Normalization::SumHundred;
    if (workers == 0) workers = default_workers();

    try {
        if (*weights) {
            const PCMatrix a = load_matrix(matrix_file, load.policy());
            print_vectors(out, vectors_for(a, method, variant), norm, format == "csv");
            return kSuccess;
        }
        if (*consistency) {
            const PCMatrix a = load_matrix(matrix_file, load.policy());
            const auto r = consistency_ratio(a, ri_opts.load());
            out << fmt::format("n = {}\nlambda_max = {:.6f}\nCI = {:.6f}\nRI = {:.6f} ({}; {})\nCR = {:.4f}\n"
                               "acceptable = {}\n",
                               r.n, r.lambda_max, r.ci, r.ri, ri_opts.source(), provenance_text(r.ri_source),
                               r.cr, r.acceptable ? "yes" : "no");
            return kSuccess;
        }
        if (*compare) {
            const PCMatrix a = load_matrix(matrix_file, load.policy());
            const auto rec = compare_methods(a, {}, ri_opts.load());
            out << fmt::format("CR = {:.6f}\n", rec.cr);
            out << fmt::format("{:<10} {:>14} {:>14} {:>14} {:>12}\n", "metric", "R vs -L", "R vs RL", "R vs RGM",
                               "RGM closer");
            for (Metric m : kAllMetrics) {
                out << fmt::format("{:<10} {:>14.8f} {:>14.8f} {:>14.8f} {:>12}\n", metric_name(m),
                                   rec.value(m, Counterpart::InverseLeft), rec.value(m, Counterpart::RlCombined),
                                   rec.value(m, Counterpart::RowGeometricMean), rec.rgm_closer(m) ? "yes" : "no");
            }
            out << "top_reversal = " << (rec.top_reversal ? "yes" : "no") << '\n';
            out << "any_reversal = " << (rec.any_reversal ? "yes" : "no") << '\n';
            return kSuccess;
        }
        if (*generate) {
            gen.check();
            std::filesystem::create_directories(out_dir);
            for (std::uint64_t i = 0; i < count; ++i) {
                auto rng = matrix_stream(gen, i);
                const PCMatrix a = generate_perturbed(gen, rng);
                const auto path = std::filesystem::path(out_dir) / fmt::format("matrix_{:06}.txt", i);
                std::ofstream f(path, std::ios::binary);
                if (!f) throw Error("cannot write " + path.string());
                f << fmt::format("# n={} delta={} seed={} index={}\n", gen.n, gen.delta, gen.seed, i);
                write_matrix(f, a);
            }
            out << fmt::format("wrote {} matrices to {}\n", count, out_dir);
            return kSuccess;
        }
        if (*simulate) {
            const SimulationFile file = load_simulation_config(config_file);
            RiOptions sim_ri;
            if (file.ri_table) sim_ri.table_path = file.ri_table->string();
            const RiTable ri = sim_ri.load();
            const SimulationResult result = run_simulation(file.config, ri, workers);
            RunManifest manifest{file.config,           ri, sim_ri.source(), workers, result.total_matrices,
                                 result.failed_matrices, utc_timestamp()};
            write_simulation_outputs(out_dir, result, manifest);
            out << fmt::format("simulated {} matrices ({} failed) into {}\n", result.total_matrices,
                               result.failed_matrices, out_dir);
            if (result.failed_matrices > 0) {
                err << "error: power iteration failed to converge on " << result.failed_matrices
                    << " matrices; statistics exclude them\n";
                return kFailure;
            }
            return kSuccess;
        }
        if (*aggregate) {
            std::vector<PCMatrix> mats;
            for (const auto& f : files) mats.push_back(load_matrix(f, load.policy()));
            for (const auto& m : mats) {
                if (m.n() != mats.front().n()) throw DimensionMismatchError("matrices have different orders");
            }
            if (CLI::detail::to_lower(mode) == "aij") {
                const PCMatrix agg = aggregate_matrices_geometric(mats);
                out << "aggregated matrix (AIJ)\n";
                print_matrix(out, agg);
                print_vectors(out, vectors_for(agg, "all", variant), norm, false);
            } else {
                const std::string m = method == "all" ? "right" : method;
                std::vector<WeightVector> per;
                for (const auto& a : mats) per.push_back(vectors_for(a, m, variant).front());
                const auto agg = aggregate_priorities_geometric(per).with_method(per.front().method());
                out << "aggregated priorities (AIP, " << m << ")\n";
                print_vectors(out, {agg}, norm, false);
            }
            return kSuccess;
        }
        if (*verify) return cmd_verify(out, ri_opts);
        if (*ri_estimate) {
            if (n_min > n_max) throw Error("--n-min exceeds --n-max");
            RiTable table;
            for (std::size_t n = n_min; n <= n_max; ++n) {
                table.set(n, estimate_random_index(n, samples, seed, workers), RiProvenance{samples, seed});
            }
            if (out_file.empty()) {
                table.write(out);
            } else {
                std::ofstream f(out_file, std::ios::binary);
                if (!f) throw Error("cannot write " + out_file);
                table.write(f);
            }
            return kSuccess;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonSquareError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonPositiveEntryError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ReciprocityViolationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateOrderError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace pcm::cli
