#include "pcm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcm/error.hpp"

namespace pcm {

namespace {

void check_pair(const WeightVector& u, const WeightVector& v) {
    if (u.n() != v.n()) throw DimensionMismatchError("weight vectors have different lengths");
    if (u.normalization() != Normalization::SumOne || v.normalization() != Normalization::SumOne) {
        throw Error("metrics require SumOne-normalized vectors");
    }
}

int sign(double x) noexcept { return (x > 0.0) - (x < 0.0); }

}  // namespace

double euclidean(const WeightVector& u, const WeightVector& v) {
    check_pair(u, v);
    double s = 0.0;
    for (std::size_t i = 0; i < u.n(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
    return std::sqrt(s);
}

double chebyshev(const WeightVector& u, const WeightVector& v) {
    check_pair(u, v);
    double m = 0.0;
    for (std::size_t i = 0; i < u.n(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

double max_ratio(const WeightVector& u, const WeightVector& v) {
    check_pair(u, v);
    double m = 1.0;
    for (std::size_t i = 0; i < u.n(); ++i) m = std::max({m, u[i] / v[i], v[i] / u[i]});
    return m;
}

double kendall_tau(const WeightVector& u, const WeightVector& v) {
    check_pair(u, v);
    const std::size_t n = u.n();
    if (n < 2) return 1.0;
    long balance = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) balance += sign(u[i] - u[j]) * sign(v[i] - v[j]);
    }
    return static_cast<double>(balance) / (static_cast<double>(n * (n - 1)) / 2.0);
}

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
        case Metric::Euclidean: return "euclidean";
        case Metric::Chebyshev: return "chebyshev";
        case Metric::MaxRatio: return "max_ratio";
        case Metric::Kendall: return "kendall";
    }
    return "unknown";
}

Metric metric_from_name(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (metric_name(m) == name) return m;
    }
    throw Error("unknown metric '" + std::string(name) + "'");
}

double evaluate(Metric m, const WeightVector& u, const WeightVector& v) {
    switch (m) {
        case Metric::Euclidean: return euclidean(u, v);
        case Metric::Chebyshev: return chebyshev(u, v);
        case Metric::MaxRatio: return max_ratio(u, v);
        case Metric::Kendall: return kendall_tau(u, v);
    }
    return 0.0;
}

bool rgm_not_farther(Metric m, double rgm_value, double inv_left_value) noexcept {
    if (m == Metric::Kendall) return rgm_value >= inv_left_value;
    return rgm_value <= inv_left_value + kCloserTieSlack;
}

std::size_t argmax(const WeightVector& w) {
    const auto v = w.values();
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

bool orderings_differ(const WeightVector& u, const WeightVector& v) {
    if (u.n() != v.n()) throw DimensionMismatchError("weight vectors have different lengths");
    for (std::size_t i = 0; i < u.n(); ++i) {
        for (std::size_t j = i + 1; j < u.n(); ++j) {
            if (sign(u[i] - u[j]) != sign(v[i] - v[j])) return true;
        }
    }
    return false;
}

ComparisonRecord compare_vectors(const PriorityVectors& p, double cr) {
    ComparisonRecord rec;
    rec.n = p.right.n();
    rec.cr = cr;
    const WeightVector* counterparts[3] = {&p.inverse_left, &p.rl_combined, &p.row_geometric_mean};
    for (Metric m : kAllMetrics) {
        auto& row = rec.values[static_cast<std::size_t>(m)];
        for (Counterpart c : kAllCounterparts) {
            row[static_cast<std::size_t>(c)] = evaluate(m, p.right, *counterparts[static_cast<std::size_t>(c)]);
        }
        rec.closer[static_cast<std::size_t>(m)] =
            rgm_not_farther(m, row[static_cast<std::size_t>(Counterpart::RowGeometricMean)],
                            row[static_cast<std::size_t>(Counterpart::InverseLeft)]);
    }
    rec.top_reversal = argmax(p.right) != argmax(p.inverse_left);
    rec.any_reversal = orderings_differ(p.right, p.inverse_left);
    return rec;
}

ComparisonRecord compare_methods(const PCMatrix& a, const EigenSolverConfig& cfg, const RiTable& ri) {
    ri.at(a.n());
    const auto p = all_priorities(a, cfg);
    return compare_vectors(p, consistency_ratio(a.n(), p.lambda_max, ri).cr);
}

}  // namespace pcm
