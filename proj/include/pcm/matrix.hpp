#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace pcm {

/// Unvalidated square input as read from a file or built by a caller.
///
/// `resolution` optionally holds, per entry, the half-width of the rounding
/// interval the printed value stands for (0 for exact input such as `1/3`).
/// It is only consulted by ReciprocityMode::ReconcileRounded.
struct RawMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;     // row-major
    std::vector<double> resolution;  // empty, or same size as entries

    static RawMatrix square(std::size_t n, std::vector<double> values);
    double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

enum class ReciprocityMode {
    /// Keep entries as given; reject pairs with |a_ij a_ji - 1| above tolerance.
    Strict,
    /// Overwrite the lower triangle with exact reciprocals of the upper one.
    RepairFromUpper,
    /// Treat each printed pair as two roundings of one reciprocal pair and take
    /// the log-midpoint of the values compatible with both.
    ReconcileRounded,
};

struct ReciprocityPolicy {
    ReciprocityMode mode = ReciprocityMode::Strict;
    double tolerance = 1e-9;

    static ReciprocityPolicy strict(double tol = 1e-9) { return {ReciprocityMode::Strict, tol}; }
    static ReciprocityPolicy repair_from_upper(double tol = 1e-9) {
        return {ReciprocityMode::RepairFromUpper, tol};
    }
    static ReciprocityPolicy reconcile_rounded(double tol = 1e-3) {
        return {ReciprocityMode::ReconcileRounded, tol};
    }
};

inline constexpr double kProgrammaticTolerance = 1e-9;
inline constexpr double kFileTolerance = 1e-3;

/// Positive reciprocal judgment matrix. Immutable once built.
class PCMatrix {
public:
    std::size_t n() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }
    std::span<const double> data() const noexcept { return a_; }

    /// Largest |a_ij a_ji - 1| over all pairs.
    double reciprocity_residual() const noexcept;

    friend bool operator==(const PCMatrix&, const PCMatrix&) = default;

private:
    friend PCMatrix unchecked_matrix(std::size_t n, std::vector<double> entries);
    PCMatrix(std::size_t n, std::vector<double> a) : n_(n), a_(std::move(a)) {}

    std::size_t n_ = 0;
    std::vector<double> a_;
};

/// Checks and builds a PCMatrix from raw input. Throws NonSquareError,
/// DegenerateOrderError (n < 3), NonPositiveEntryError or
/// ReciprocityViolationError.
PCMatrix validate(const RawMatrix& raw, const ReciprocityPolicy& policy);

/// a_ij = w_i / w_j.
PCMatrix consistent_from_weights(std::span<const double> weights);

/// True iff every triad satisfies |a_ij a_jk / a_ik - 1| <= tol.
bool is_consistent(const PCMatrix& a, double tol);

PCMatrix transpose(const PCMatrix& a);

/// Simultaneous row/column permutation: result(i, j) = a(perm[i], perm[j]).
PCMatrix permute(const PCMatrix& a, std::span<const std::size_t> perm);

/// Builds a matrix from entries the caller has already made reciprocal.
/// Intended for library-internal construction (aggregation, generators).
PCMatrix unchecked_matrix(std::size_t n, std::vector<double> entries);

enum class Normalization { SumOne, SumHundred };

enum class Method { Right, Left, InverseLeft, RlCombined, RowGeometricMean, Aggregated, Raw };

/// Normalized priority vector. Every component is strictly positive.
class WeightVector {
public:
    std::size_t n() const noexcept { return w_.size(); }
    double operator[](std::size_t i) const noexcept { return w_[i]; }
    std::span<const double> values() const noexcept { return w_; }
    Normalization normalization() const noexcept { return norm_; }
    Method method() const noexcept { return method_; }

    WeightVector rescaled(Normalization target) const;
    WeightVector with_method(Method m) const;

private:
    friend WeightVector normalize(std::span<const double>, Normalization, Method);
    WeightVector(std::vector<double> w, Normalization norm, Method m)
        : w_(std::move(w)), norm_(norm), method_(m) {}

    std::vector<double> w_;
    Normalization norm_ = Normalization::SumOne;
    Method method_ = Method::Raw;
};

/// Scales positive values so they sum to 1 or 100. Throws NonPositiveWeightError.
WeightVector normalize(std::span<const double> raw, Normalization target = Normalization::SumOne,
                       Method method = Method::Raw);

double normalization_total(Normalization n) noexcept;

std::string_view method_name(Method m) noexcept;

}  // namespace pcm
