#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "pcm/matrix.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

/// Where an RI value came from. samples == 0 marks a user-supplied value.
struct RiProvenance {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    bool estimated() const noexcept { return samples > 0; }
    friend bool operator==(const RiProvenance&, const RiProvenance&) = default;
};

struct RiEntry {
    double ri = 0.0;
    RiProvenance provenance;
    friend bool operator==(const RiEntry&, const RiEntry&) = default;
};

/// Random index per matrix order.
class RiTable {
public:
    RiTable() = default;

    void set(std::size_t n, double ri, RiProvenance provenance = {});
    bool contains(std::size_t n) const { return entries_.contains(n); }
    /// Throws MissingRiError.
    const RiEntry& at(std::size_t n) const;
    const std::map<std::size_t, RiEntry>& entries() const noexcept { return entries_; }

    /// Every value multiplied by `factor`, provenance kept.
    RiTable scaled(double factor) const;

    /// Text form: one `n ri samples seed` line per order; `#` comments allowed.
    void write(std::ostream& out) const;
    static RiTable parse(std::string_view text);
    static RiTable load(const std::filesystem::path& path);

    friend bool operator==(const RiTable&, const RiTable&) = default;

private:
    std::map<std::size_t, RiEntry> entries_;
};

/// Table shipped with the library (n = 3..15), see data/ri_table.txt.
const RiTable& default_ri_table();

struct ConsistencyReport {
    std::size_t n = 0;
    double lambda_max = 0.0;
    double ci = 0.0;
    double ri = 0.0;
    RiProvenance ri_source;
    double cr = 0.0;
    bool acceptable = false;
};

inline constexpr double kAcceptableCr = 0.1;

/// (lambda_max - n) / (n - 1), clamped to 0 when |CI| < 1e-9.
double consistency_index(double lambda_max, std::size_t n);
double consistency_index(const PCMatrix& a, const EigenSolverConfig& cfg = {});

/// Mean CI of `samples` random matrices whose upper-triangle entries are drawn
/// uniformly from the 17-value scale {1/9, ..., 1/2, 1, 2, ..., 9}.
/// Deterministic in `seed` and independent of `workers`.
double estimate_random_index(std::size_t n, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers = 1, const EigenSolverConfig& cfg = {});

/// Throws MissingRiError, NoConvergenceError.
ConsistencyReport consistency_ratio(const PCMatrix& a, const RiTable& ri,
                                    const EigenSolverConfig& cfg = {});
ConsistencyReport consistency_ratio(std::size_t n, double lambda_max, const RiTable& ri);

}  // namespace pcm
