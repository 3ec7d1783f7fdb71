#include "pcm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pcm/error.hpp"

namespace pcm {

RawMatrix RawMatrix::square(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) {
        throw NonSquareError("expected " + std::to_string(n * n) + " entries, got " +
                             std::to_string(values.size()));
    }
    return RawMatrix{n, n, std::move(values), {}};
}

double PCMatrix::reciprocity_residual() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i; j < n_; ++j) {
            worst = std::max(worst, std::abs((*this)(i, j) * (*this)(j, i) - 1.0));
        }
    }
    return worst;
}

PCMatrix unchecked_matrix(std::size_t n, std::vector<double> entries) {
    return PCMatrix(n, std::move(entries));
}

namespace {

// Log-midpoint of the upper entry values compatible with both printed roundings.
// Returns NaN when the two rounding intervals do not overlap.
double reconcile_pair(double upper, double upper_half, double lower, double lower_half) {
    const double lo = std::max(upper - upper_half, 1.0 / (lower + lower_half));
    const double lower_min = lower - lower_half;
    const double hi = std::min(upper + upper_half, lower_min > 0.0
                                                       ? 1.0 / lower_min
                                                       : std::numeric_limits<double>::infinity());
    if (lo > hi || !std::isfinite(hi)) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(lo * hi);
}

}  // namespace

PCMatrix validate(const RawMatrix& raw, const ReciprocityPolicy& policy) {
    if (raw.rows != raw.cols || raw.entries.size() != raw.rows * raw.cols) {
        throw NonSquareError("matrix is " + std::to_string(raw.rows) + "x" +
                             std::to_string(raw.cols) + ", expected a square matrix");
    }
    const std::size_t n = raw.rows;
    if (n < 3) throw DegenerateOrderError(n);
    if (!(policy.tolerance > 0.0 && policy.tolerance <= 0.1)) {
        throw Error("reciprocity tolerance must lie in (0, 0.1]");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = raw.at(i, j);
            if (!(v > 0.0) || !std::isfinite(v)) throw NonPositiveEntryError(i, j);
        }
    }

    std::vector<double> a = raw.entries;
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    const bool has_resolution = raw.resolution.size() == raw.entries.size();

    switch (policy.mode) {
        case ReciprocityMode::Strict:
            for (std::size_t i = 0; i < n; ++i) {
                if (at(i, i) != 1.0) throw ReciprocityViolationError(i, i, std::abs(at(i, i) - 1.0));
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double residual = std::abs(at(i, j) * at(j, i) - 1.0);
                    if (residual > policy.tolerance) throw ReciprocityViolationError(i, j, residual);
                }
            }
            break;
        case ReciprocityMode::RepairFromUpper:
            for (std::size_t i = 0; i < n; ++i) {
                at(i, i) = 1.0;
                for (std::size_t j = i + 1; j < n; ++j) at(j, i) = 1.0 / at(i, j);
            }
            break;
        case ReciprocityMode::ReconcileRounded:
            for (std::size_t i = 0; i < n; ++i) {
                at(i, i) = 1.0;
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double upper = at(i, j), lower = at(j, i);
                    const double uh = has_resolution ? raw.resolution[i * n + j] : 0.0;
                    const double lh = has_resolution ? raw.resolution[j * n + i] : 0.0;
                    double v = reconcile_pair(upper, uh, lower, lh);
                    if (std::isnan(v)) {
                        const double residual = std::abs(upper * lower - 1.0);
                        if (residual > policy.tolerance) throw ReciprocityViolationError(i, j, residual);
                        v = std::sqrt(upper / lower);
                    }
                    at(i, j) = v;
                    at(j, i) = 1.0 / v;
                }
            }
            break;
    }
    return unchecked_matrix(n, std::move(a));
}

PCMatrix consistent_from_weights(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw EmptyListError("weight vector is empty");
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw NonPositiveWeightError("weights must be positive");
    }
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = i == j ? 1.0 : weights[i] / weights[j];
    }
    return unchecked_matrix(n, std::move(a));
}

bool is_consistent(const PCMatrix& a, double tol) {
    const std::size_t n = a.n();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (std::abs(a(i, j) * a(j, k) / a(i, k) - 1.0) > tol) return false;
            }
        }
    }
    return true;
}

PCMatrix transpose(const PCMatrix& a) {
    const std::size_t n = a.n();
    std::vector<double> t(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a(i, j);
    }
    return unchecked_matrix(n, std::move(t));
}

PCMatrix permute(const PCMatrix& a, std::span<const std::size_t> perm) {
    const std::size_t n = a.n();
    if (perm.size() != n) throw DimensionMismatchError("permutation length differs from matrix order");
    std::vector<bool> seen(n, false);
    for (std::size_t p : perm) {
        if (p >= n || seen[p]) throw Error("not a permutation");
        seen[p] = true;
    }
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a(perm[i], perm[j]);
    }
    return unchecked_matrix(n, std::move(out));
}

double normalization_total(Normalization n) noexcept {
    return n == Normalization::SumHundred ? 100.0 : 1.0;
}

WeightVector normalize(std::span<const double> raw, Normalization target, Method method) {
    if (raw.empty()) throw EmptyListError("weight vector is empty");
    for (double v : raw) {
        if (!(v > 0.0) || !std::isfinite(v)) throw NonPositiveWeightError("weights must be positive");
    }
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);
    const double scale = normalization_total(target) / sum;
    std::vector<double> w(raw.size());
    std::transform(raw.begin(), raw.end(), w.begin(), [scale](double v) { return v * scale; });
    return WeightVector(std::move(w), target, method);
}

WeightVector WeightVector::rescaled(Normalization target) const {
    return normalize(w_, target, method_);
}

WeightVector WeightVector::with_method(Method m) const {
    WeightVector out = *this;
    out.method_ = m;
    return out;
}

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::Right: return "right";
        case Method::Left: return "left";
        case Method::InverseLeft: return "left-inverse";
        case Method::RlCombined: return "rl";
        case Method::RowGeometricMean: return "rgm";
        case Method::Aggregated: return "aggregated";
        case Method::Raw: return "raw";
    }
    return "unknown";
}

}  // namespace pcm
