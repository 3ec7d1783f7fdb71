#include "pcm/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "pcm/error.hpp"
#include "pcm/io.hpp"

namespace pcm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view s, std::size_t line) {
    try {
        return parse_number(s).value;
    } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
    }
}

std::uint64_t to_uint(std::string_view s, std::size_t line) {
    const double v = to_double(s, line);
    if (v < 0 || v != std::floor(v)) throw ParseError("expected a non-negative integer", line);
    return static_cast<std::uint64_t>(v);
}

}  // namespace

SimulationFile parse_simulation_config(std::string_view text, const std::filesystem::path& base_dir) {
    SimulationFile file;
    SimulationConfig& cfg = file.config;
    std::istringstream in{std::string(text)};
    std::string raw_line;
    std::size_t line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        const std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) throw ParseError("missing value for '" + std::string(key) + "'", line_no);

        if (key == "dims") {
            cfg.dims.clear();
            for (auto item : split_list(value)) {
                const auto dash = item.find('-');
                if (dash != std::string_view::npos) {
                    const auto lo = to_uint(trim(item.substr(0, dash)), line_no);
                    const auto hi = to_uint(trim(item.substr(dash + 1)), line_no);
                    if (lo > hi) throw ParseError("empty dimension range", line_no);
                    for (auto n = lo; n <= hi; ++n) cfg.dims.push_back(n);
                } else {
                    cfg.dims.push_back(to_uint(item, line_no));
                }
            }
        } else if (key == "deltas") {
            cfg.deltas.clear();
            for (auto item : split_list(value)) cfg.deltas.push_back(to_double(item, line_no));
        } else if (key == "matrices_per_cell") {
            cfg.matrices_per_cell = to_uint(value, line_no);
        } else if (key == "seed") {
            std::uint64_t seed = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
            if (ec != std::errc{} || ptr != value.data() + value.size()) {
                throw ParseError("seed must be an unsigned 64-bit integer", line_no);
            }
            cfg.seed = seed;
        } else if (key == "bin_width") {
            cfg.bin_width = to_double(value, line_no);
        } else if (key == "min_bin_count") {
            cfg.min_bin_count = to_uint(value, line_no);
        } else if (key == "cr_cap") {
            cfg.cr_cap = to_double(value, line_no);
        } else if (key == "weight_low") {
            cfg.weight_low = to_double(value, line_no);
        } else if (key == "weight_high") {
            cfg.weight_high = to_double(value, line_no);
        } else if (key == "max_iterations") {
            cfg.solver.max_iterations = static_cast<int>(to_uint(value, line_no));
        } else if (key == "convergence_tol") {
            cfg.solver.convergence_tol = to_double(value, line_no);
        } else if (key == "ri_table") {
            std::filesystem::path p{std::string(value)};
            file.ri_table = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'", line_no);
        }
    }
    try {
        cfg.check();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), 0);
    }
    return file;
}

SimulationFile load_simulation_config(const std::filesystem::path& path) {
    return parse_simulation_config(read_text_file(path), path.parent_path());
}

std::string format_simulation_config(const SimulationConfig& cfg) {
    std::string out;
    auto join = [](const auto& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) s += ',';
            s += fmt::format("{:.17g}", static_cast<double>(values[i]));
        }
        return s;
    };
    out += "dims = " + join(cfg.dims) + "\n";
    out += "deltas = " + join(cfg.deltas) + "\n";
    out += fmt::format("matrices_per_cell = {}\n", cfg.matrices_per_cell);
    out += fmt::format("seed = {}\n", cfg.seed);
    out += fmt::format("bin_width = {:.17g}\n", cfg.bin_width);
    out += fmt::format("min_bin_count = {}\n", cfg.min_bin_count);
    out += fmt::format("cr_cap = {:.17g}\n", cfg.cr_cap);
    out += fmt::format("weight_low = {:.17g}\n", cfg.weight_low);
    out += fmt::format("weight_high = {:.17g}\n", cfg.weight_high);
    out += fmt::format("max_iterations = {}\n", cfg.solver.max_iterations);
    out += fmt::format("convergence_tol = {:.17g}\n", cfg.solver.convergence_tol);
    return out;
}

std::string csv_number(double v) { return fmt::format("{:.12g}", v); }

void write_histogram_csv(std::ostream& out, const CrHistogram& h) {
    out << "n,delta,bin_lower,count\n";
    for (const auto& cell : h.cells) {
        for (std::size_t b = 0; b < cell.counts.size(); ++b) {
            if (cell.counts[b] == 0) continue;
            const bool overflow = b + 1 == cell.counts.size();
            const double lower = overflow ? h.cr_cap : static_cast<double>(b) * h.bin_width;
            out << cell.n << ',' << csv_number(cell.delta) << ',' << csv_number(lower) << ','
                << cell.counts[b] << '\n';
        }
    }
}

namespace {

void write_bin_row(std::ostream& out, const BinStatistics& b, Metric m) {
    out << csv_number(b.bin_lower) << ',' << b.count;
    for (Counterpart c : kAllCounterparts) out << ',' << csv_number(b.mean_of(m, c));
    out << ',' << csv_number(b.closer(m)) << ',' << (b.suppressed ? 1 : 0) << '\n';
}

}  // namespace

void write_bins_csv(std::ostream& out, const std::vector<BinSeries>& series, Metric m) {
    out << "n,bin_lower,count,mean_R_vs_invL,mean_R_vs_RL,mean_R_vs_RGM,closer_prob,suppressed\n";
    for (const auto& s : series) {
        for (const auto& b : s.bins) {
            out << s.n << ',';
            write_bin_row(out, b, m);
        }
    }
}

void write_bins_by_delta_csv(std::ostream& out, const std::vector<BinSeries>& series, Metric m) {
    out << "n,delta,bin_lower,count,mean_R_vs_invL,mean_R_vs_RL,mean_R_vs_RGM,closer_prob,suppressed\n";
    for (const auto& s : series) {
        for (const auto& b : s.bins) {
            out << s.n << ',' << csv_number(s.delta.value_or(0.0)) << ',';
            write_bin_row(out, b, m);
        }
    }
}

void write_reversals_csv(std::ostream& out, const std::vector<BinSeries>& series) {
    out << "n,bin_lower,count,top_reversal_rate,any_reversal_rate,suppressed\n";
    for (const auto& s : series) {
        for (const auto& b : s.bins) {
            out << s.n << ',' << csv_number(b.bin_lower) << ',' << b.count << ','
                << csv_number(b.top_reversal_rate) << ',' << csv_number(b.any_reversal_rate) << ','
                << (b.suppressed ? 1 : 0) << '\n';
        }
    }
}

std::vector<BinsCsvRow> parse_bins_csv(std::string_view text) {
    std::vector<BinsCsvRow> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (!line.starts_with("n,bin_lower,count,")) throw ParseError("unexpected header", 1);
            continue;
        }
        if (line.empty()) continue;
        const auto f = split_list(line);
        if (f.size() != 8) throw ParseError("expected 8 fields", line_no);
        BinsCsvRow r;
        r.n = to_uint(f[0], line_no);
        r.bin_lower = to_double(f[1], line_no);
        r.count = to_uint(f[2], line_no);
        r.mean_inv_left = to_double(f[3], line_no);
        r.mean_rl = to_double(f[4], line_no);
        r.mean_rgm = to_double(f[5], line_no);
        r.closer_prob = to_double(f[6], line_no);
        r.suppressed = to_uint(f[7], line_no) != 0;
        rows.push_back(r);
    }
    return rows;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
    // metadata is commented out so the manifest itself is a valid config file
    out << "# simulation run manifest\n";
    out << "# tool = pcmtool " << kToolVersion << '\n';
    out << "# timestamp = " << m.timestamp << '\n';
    out << "# workers = " << m.workers << '\n';
    out << "# total_matrices = " << m.total_matrices << '\n';
    out << "# failed_matrices = " << m.failed_matrices << '\n';
    out << "# ri_source = " << m.ri_source << '\n';
    out << "\n" << format_simulation_config(m.config);
    if (m.ri_source != "default") {
        out << "ri_table = " << std::filesystem::absolute(m.ri_source).string() << '\n';
    }
    out << "\n# random index table (n ri samples seed)\n";
    for (const auto& [n, e] : m.ri.entries()) {
        out << "# ri " << n << ' ' << fmt::format("{:.17g}", e.ri) << ' ' << e.provenance.samples << ' '
            << e.provenance.seed << '\n';
    }
}

void write_simulation_outputs(const std::filesystem::path& dir, const SimulationResult& result,
                              const RunManifest& manifest) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string& name) {
        std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("histogram.csv");
        write_histogram_csv(f, result.histogram);
    }
    for (Metric m : kAllMetrics) {
        const std::string name(metric_name(m));
        auto f = open("bins_" + name + ".csv");
        write_bins_csv(f, result.pooled, m);
        auto g = open("bins_" + name + "_by_delta.csv");
        write_bins_by_delta_csv(g, result.per_delta, m);
    }
    {
        auto f = open("reversals.csv");
        write_reversals_csv(f, result.pooled);
    }
    {
        auto f = open("manifest.txt");
        write_manifest(f, manifest);
        if (!f) throw Error("failed writing manifest");
    }
}

std::string format_fixed(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double rounded = std::round(v * scale) / scale;
    return fmt::format("{:.{}f}", rounded == 0.0 ? 0.0 : rounded, decimals);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace pcm
