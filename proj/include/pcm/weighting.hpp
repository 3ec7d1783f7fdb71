#pragma once

#include <span>
#include <vector>

#include "pcm/matrix.hpp"

namespace pcm {

struct EigenSolverConfig {
    int max_iterations = 10'000;
    /// Stop once max_i |(A w)_i / w_i - lambda| <= convergence_tol * lambda.
    double convergence_tol = 1e-12;

    void check() const;
};

struct EigenResult {
    WeightVector weights;
    double lambda_max = 0.0;
    int iterations = 0;
    /// max_i |(A w)_i - lambda w_i| / w_i for the returned weights.
    double residual = 0.0;
};

/// Perron vector of A by power iteration from the uniform vector.
EigenResult right_eigenvector(const PCMatrix& a, const EigenSolverConfig& cfg = {});

/// Left Perron vector (right Perron vector of the transpose).
EigenResult left_eigenvector(const PCMatrix& a, const EigenSolverConfig& cfg = {});

/// Componentwise reciprocal of the left Perron vector, renormalized.
WeightVector inverse_left(const PCMatrix& a, const EigenSolverConfig& cfg = {});

enum class RlVariant {
    Product,        // w_i = w^R_i * w^-L_i, renormalized
    GeometricMean,  // w_i = sqrt(w^R_i * w^-L_i), renormalized
};

WeightVector rl_combined(const PCMatrix& a, const EigenSolverConfig& cfg = {},
                         RlVariant variant = RlVariant::Product);
WeightVector rl_combined(const WeightVector& right, const WeightVector& inv_left,
                         RlVariant variant = RlVariant::Product);

/// Closed form, no iteration: w_i proportional to the geometric mean of row i.
WeightVector row_geometric_mean(const PCMatrix& a);

/// Right and left runs with a cross-check that both report the same lambda_max
/// to 1e-9 relative. lambda_max is taken from the right run.
struct EigenPair {
    EigenResult right;
    EigenResult left;
    WeightVector inverse_left;
    double lambda_max = 0.0;
};
EigenPair eigen_pair(const PCMatrix& a, const EigenSolverConfig& cfg = {});

/// All four priority vectors for one matrix.
struct PriorityVectors {
    WeightVector right;
    WeightVector inverse_left;
    WeightVector rl_combined;
    WeightVector row_geometric_mean;
    double lambda_max = 0.0;
};
PriorityVectors all_priorities(const PCMatrix& a, const EigenSolverConfig& cfg = {},
                               RlVariant variant = RlVariant::Product);

/// Entrywise geometric mean (AIJ). Throws EmptyListError, DimensionMismatchError.
PCMatrix aggregate_matrices_geometric(std::span<const PCMatrix> matrices);

/// Componentwise geometric mean, renormalized (AIP).
WeightVector aggregate_priorities_geometric(std::span<const WeightVector> vectors);

}  // namespace pcm
