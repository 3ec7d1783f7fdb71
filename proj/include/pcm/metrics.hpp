#pragma once

#include <array>
#include <string_view>

#include "pcm/consistency.hpp"
#include "pcm/matrix.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

/// Euclidean distance. Both vectors must be SumOne-normalized and of equal length.
double euclidean(const WeightVector& u, const WeightVector& v);
/// Largest componentwise absolute difference.
double chebyshev(const WeightVector& u, const WeightVector& v);
/// max_i max(u_i / v_i, v_i / u_i); always >= 1.
double max_ratio(const WeightVector& u, const WeightVector& v);
/// (#concordant - #discordant) / (n(n-1)/2). Tied pairs count as neither and
/// the denominator is not corrected for ties.
double kendall_tau(const WeightVector& u, const WeightVector& v);

enum class Metric { Euclidean = 0, Chebyshev, MaxRatio, Kendall };
inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::Euclidean, Metric::Chebyshev,
                                                     Metric::MaxRatio, Metric::Kendall};

/// Which vector w^R is compared with.
enum class Counterpart { InverseLeft = 0, RlCombined, RowGeometricMean };
inline constexpr std::array<Counterpart, 3> kAllCounterparts = {
    Counterpart::InverseLeft, Counterpart::RlCombined, Counterpart::RowGeometricMean};

std::string_view metric_name(Metric m) noexcept;
Metric metric_from_name(std::string_view name);

double evaluate(Metric m, const WeightVector& u, const WeightVector& v);

/// Absolute slack under which two distances count as tied (and so as "closer").
inline constexpr double kCloserTieSlack = 1e-12;

/// True when `rgm_value` is not farther from w^R than `inv_left_value`
/// (for Kendall: not lower).
bool rgm_not_farther(Metric m, double rgm_value, double inv_left_value) noexcept;

/// First index of the largest component.
std::size_t argmax(const WeightVector& w);

/// True when some pair of alternatives is ordered differently by u and v.
bool orderings_differ(const WeightVector& u, const WeightVector& v);

struct ComparisonRecord {
    std::size_t n = 0;
    double cr = 0.0;
    /// values[metric][counterpart] = metric(w^R, counterpart)
    std::array<std::array<double, 3>, 4> values{};
    std::array<bool, 4> closer{};
    bool top_reversal = false;
    bool any_reversal = false;

    double value(Metric m, Counterpart c) const noexcept {
        return values[static_cast<std::size_t>(m)][static_cast<std::size_t>(c)];
    }
    bool rgm_closer(Metric m) const noexcept { return closer[static_cast<std::size_t>(m)]; }
};

ComparisonRecord compare_vectors(const PriorityVectors& p, double cr);

/// Throws NoConvergenceError, MissingRiError.
ComparisonRecord compare_methods(const PCMatrix& a, const EigenSolverConfig& cfg, const RiTable& ri);

}  // namespace pcm
