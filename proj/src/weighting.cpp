#include "pcm/weighting.hpp"

#include <algorithm>
#include <cmath>

#include "pcm/error.hpp"

namespace pcm {

void EigenSolverConfig::check() const {
    if (max_iterations < 1) throw Error("max_iterations must be at least 1");
    if (!(convergence_tol > 0.0 && convergence_tol <= 1e-3)) {
        throw Error("convergence_tol must lie in (0, 1e-3]");
    }
}

namespace {

// Power iteration on the matrix whose entries are read through `entry(i, j)`.
template <class Entry>
EigenResult power_iteration(std::size_t n, Entry entry, const EigenSolverConfig& cfg, Method method) {
    cfg.check();
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<double> aw(n);
    double lambda = 0.0;
    double residual = 0.0;

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += entry(i, j) * w[j];
            aw[i] = s;
            total += s;
        }
        // Rayleigh-style estimate: mean of (A w)_i / w_i.
        double ratio_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) ratio_sum += aw[i] / w[i];
        lambda = ratio_sum / static_cast<double>(n);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            residual = std::max(residual, std::abs(aw[i] / w[i] - lambda));
        }
        if (residual <= cfg.convergence_tol * lambda) {
            return EigenResult{normalize(w, Normalization::SumOne, method), lambda, it, residual};
        }
        for (std::size_t i = 0; i < n; ++i) w[i] = aw[i] / total;
    }
    throw NoConvergenceError(cfg.max_iterations, residual);
}

}  // namespace

EigenResult right_eigenvector(const PCMatrix& a, const EigenSolverConfig& cfg) {
    return power_iteration(
        a.n(), [&a](std::size_t i, std::size_t j) { return a(i, j); }, cfg, Method::Right);
}

EigenResult left_eigenvector(const PCMatrix& a, const EigenSolverConfig& cfg) {
    return power_iteration(
        a.n(), [&a](std::size_t i, std::size_t j) { return a(j, i); }, cfg, Method::Left);
}

namespace {

WeightVector reciprocal_of(const WeightVector& left) {
    std::vector<double> inv(left.n());
    for (std::size_t i = 0; i < left.n(); ++i) inv[i] = 1.0 / left[i];
    return normalize(inv, Normalization::SumOne, Method::InverseLeft);
}

}  // namespace

WeightVector inverse_left(const PCMatrix& a, const EigenSolverConfig& cfg) {
    return reciprocal_of(left_eigenvector(a, cfg).weights);
}

WeightVector rl_combined(const WeightVector& right, const WeightVector& inv_left, RlVariant variant) {
    if (right.n() != inv_left.n()) throw DimensionMismatchError("vector lengths differ");
    std::vector<double> w(right.n());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = right[i] * inv_left[i];
        if (variant == RlVariant::GeometricMean) w[i] = std::sqrt(w[i]);
    }
    return normalize(w, Normalization::SumOne, Method::RlCombined);
}

WeightVector rl_combined(const PCMatrix& a, const EigenSolverConfig& cfg, RlVariant variant) {
    const auto pair = eigen_pair(a, cfg);
    return rl_combined(pair.right.weights, pair.inverse_left, variant);
}

WeightVector row_geometric_mean(const PCMatrix& a) {
    const std::size_t n = a.n();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_sum = 0.0;
        for (double v : a.row(i)) log_sum += std::log(v);
        w[i] = std::exp(log_sum / static_cast<double>(n));
    }
    return normalize(w, Normalization::SumOne, Method::RowGeometricMean);
}

EigenPair eigen_pair(const PCMatrix& a, const EigenSolverConfig& cfg) {
    EigenResult right = right_eigenvector(a, cfg);
    EigenResult left = left_eigenvector(a, cfg);
    const double lambda = right.lambda_max;
    if (std::abs(left.lambda_max - lambda) > 1e-9 * lambda) {
        throw Error("left and right dominant eigenvalues disagree beyond 1e-9 relative");
    }
    WeightVector inv = reciprocal_of(left.weights);
    return EigenPair{std::move(right), std::move(left), std::move(inv), lambda};
}

PriorityVectors all_priorities(const PCMatrix& a, const EigenSolverConfig& cfg, RlVariant variant) {
    auto pair = eigen_pair(a, cfg);
    WeightVector rl = rl_combined(pair.right.weights, pair.inverse_left, variant);
    return PriorityVectors{std::move(pair.right.weights), std::move(pair.inverse_left),
                           std::move(rl), row_geometric_mean(a), pair.lambda_max};
}

PCMatrix aggregate_matrices_geometric(std::span<const PCMatrix> matrices) {
    if (matrices.empty()) throw EmptyListError("no matrices to aggregate");
    const std::size_t n = matrices.front().n();
    for (const auto& m : matrices) {
        if (m.n() != n) throw DimensionMismatchError("matrices have different orders");
    }
    if (matrices.size() == 1) return matrices.front();
    const double k = static_cast<double>(matrices.size());
    std::vector<double> out(n * n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double log_sum = 0.0;
            for (const auto& m : matrices) log_sum += std::log(m(i, j));
            const double g = std::exp(log_sum / k);
            out[i * n + j] = g;
            out[j * n + i] = 1.0 / g;
        }
    }
    return unchecked_matrix(n, std::move(out));
}

WeightVector aggregate_priorities_geometric(std::span<const WeightVector> vectors) {
    if (vectors.empty()) throw EmptyListError("no weight vectors to aggregate");
    const std::size_t n = vectors.front().n();
    for (const auto& v : vectors) {
        if (v.n() != n) throw DimensionMismatchError("weight vectors have different lengths");
    }
    const double k = static_cast<double>(vectors.size());
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double log_sum = 0.0;
        for (const auto& v : vectors) log_sum += std::log(v[i]);
        w[i] = std::exp(log_sum / k);
    }
    return normalize(w, Normalization::SumOne, Method::Aggregated);
}

}  // namespace pcm
