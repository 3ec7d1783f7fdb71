#include "pcm/consistency.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "pcm/detail/exact_sum.hpp"
#include "pcm/detail/parallel.hpp"
#include "pcm/detail/random.hpp"
#include "pcm/error.hpp"
#include "pcm/io.hpp"

namespace pcm {

void RiTable::set(std::size_t n, double ri, RiProvenance provenance) {
    if (!(ri > 0.0) || !std::isfinite(ri)) throw Error("random index must be positive");
    entries_[n] = RiEntry{ri, provenance};
}

const RiEntry& RiTable::at(std::size_t n) const {
    auto it = entries_.find(n);
    if (it == entries_.end()) throw MissingRiError(n);
    return it->second;
}

RiTable RiTable::scaled(double factor) const {
    RiTable out;
    for (const auto& [n, e] : entries_) out.set(n, e.ri * factor, e.provenance);
    return out;
}

void RiTable::write(std::ostream& out) const {
    out << "# n ri samples seed\n";
    for (const auto& [n, e] : entries_) {
        out << fmt::format("{} {:.17g} {} {}\n", n, e.ri, e.provenance.samples, e.provenance.seed);
    }
}

RiTable RiTable::parse(std::string_view text) {
    RiTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::size_t n = 0;
        std::string ri_text;
        std::uint64_t samples = 0, seed = 0;
        if (!(fields >> n >> ri_text)) throw ParseError("expected 'n ri [samples seed]'", line_no);
        fields >> samples >> seed;
        double ri = 0.0;
        try {
            ri = parse_number(ri_text).value;
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
        if (!(ri > 0.0)) throw ParseError("random index must be positive", line_no);
        table.set(n, ri, RiProvenance{samples, seed});
    }
    return table;
}

RiTable RiTable::load(const std::filesystem::path& path) {
    return parse(read_text_file(path));
}

double consistency_index(double lambda_max, std::size_t n) {
    if (n < 2) throw DegenerateOrderError(n);
    const double ci = (lambda_max - static_cast<double>(n)) / static_cast<double>(n - 1);
    return std::abs(ci) < 1e-9 ? 0.0 : ci;
}

double consistency_index(const PCMatrix& a, const EigenSolverConfig& cfg) {
    return consistency_index(right_eigenvector(a, cfg).lambda_max, a.n());
}

namespace {

constexpr std::array<double, 17> kSaatyScale = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};

constexpr std::uint64_t kRiChunk = 10'000;

}  // namespace

double estimate_random_index(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers, const EigenSolverConfig& cfg) {
    if (n < 3) throw DegenerateOrderError(n);
    if (samples < 1000) throw Error("random index estimation needs at least 1000 samples");
    const std::size_t chunks = (samples + kRiChunk - 1) / kRiChunk;
    workers = std::max(1u, workers);
    std::vector<detail::ExactSum> partial(workers);

    detail::run_chunks(chunks, workers, [&](unsigned worker, std::size_t chunk) {
        detail::SplitMix64 rng(detail::derive_seed(seed, {n, chunk}));
        const std::uint64_t begin = chunk * kRiChunk;
        const std::uint64_t end = std::min(samples, begin + kRiChunk);
        std::vector<double> a(n * n, 1.0);
        for (std::uint64_t s = begin; s < end; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double v = kSaatyScale[rng.below(kSaatyScale.size())];
                    a[i * n + j] = v;
                    a[j * n + i] = 1.0 / v;
                }
            }
            const auto m = unchecked_matrix(n, a);
            partial[worker].add(consistency_index(right_eigenvector(m, cfg).lambda_max, n));
        }
    });

    detail::ExactSum total;
    for (const auto& p : partial) total += p;
    return total.mean(samples);
}

ConsistencyReport consistency_ratio(std::size_t n, double lambda_max, const RiTable& ri) {
    const RiEntry& entry = ri.at(n);
    ConsistencyReport r;
    r.n = n;
    r.lambda_max = lambda_max;
    r.ci = consistency_index(lambda_max, n);
    r.ri = entry.ri;
    r.ri_source = entry.provenance;
    r.cr = r.ci / r.ri;
    r.acceptable = r.cr <= kAcceptableCr;
    return r;
}

ConsistencyReport consistency_ratio(const PCMatrix& a, const RiTable& ri, const EigenSolverConfig& cfg) {
    if (a.n() < 3) throw DegenerateOrderError(a.n());
    ri.at(a.n());
    return consistency_ratio(a.n(), right_eigenvector(a, cfg).lambda_max, ri);
}

}  // namespace pcm
