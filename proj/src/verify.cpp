#include "pcm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "pcm/error.hpp"
#include "pcm/io.hpp"
#include "pcm/metrics.hpp"
#include "pcm/weighting.hpp"

namespace pcm {

PCMatrix VerifyCase::matrix() const { return validate(parse_matrix_text(matrix_text), policy); }

bool VerifyReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::size_t VerifyReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; }));
}

namespace {

Expectation abs_(std::string q, double v, double tol, QuantityKind kind = QuantityKind::Weight) {
    return {std::move(q), v, tol, ToleranceKind::Absolute, kind};
}

void add_vector(std::vector<Expectation>& out, const std::string& prefix, std::initializer_list<double> values,
                double tol, ToleranceKind tk = ToleranceKind::Absolute) {
    std::size_t k = 1;
    for (double v : values) {
        out.push_back({prefix + "." + std::to_string(k++), v, tol, tk, QuantityKind::Weight});
    }
}

std::vector<VerifyCase> build_cases() {
    using K = QuantityKind;
    std::vector<VerifyCase> cases;

    {
        VerifyCase c{"example1-A", "group decision example, DM1", R"(4
1    1    1    9
1    1    2    5
1    1/2  1    9
1/9  1/5  1/9  1
)", ReciprocityPolicy::strict(kProgrammaticTolerance), {}};
        add_vector(c.expected, "wR", {32.42, 35.02, 28.21, 4.35}, 0.005);
        add_vector(c.expected, "aij", {25, 25, 25, 25}, 1e-9);
        for (auto& e : c.expected) {
            if (e.quantity.starts_with("aij")) e.kind = K::Aggregation;
        }
        c.expected.push_back(abs_("aip_gt.2.1", 1, 0, K::Aggregation));
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"example1-B", "group decision example, DM2 (transpose of DM1)", R"(4
1    1    1    1/9
1    1    1/2  1/5
1    2    1    1/9
9    5    9    1
)", ReciprocityPolicy::strict(kProgrammaticTolerance), {}};
        add_vector(c.expected, "wR", {8.86, 9.05, 11.04, 71.05}, 0.005);
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"johnson-A", "Johnson, Beine and Wang (1979)", R"(4
1    3    1/3  1/2
1/3  1    1/6  2
3    6    1    1
2    1/2  1    1
)", ReciprocityPolicy::strict(kProgrammaticTolerance), {}};
        add_vector(c.expected, "wR", {18.44, 15.19, 43.64, 22.73}, 0.005);
        add_vector(c.expected, "wL", {24.82, 38.78, 10.49, 25.91}, 0.005);
        add_vector(c.expected, "wIL", {20.14, 12.89, 47.67, 19.29}, 0.005);
        c.expected.push_back(abs_("cr", 0.331, 0.01, K::Consistency));
        c.expected.push_back(abs_("acceptable", 0, 0, K::Consistency));
        c.expected.push_back(abs_("order_R.4.1", 1, 0, K::Ranking));
        c.expected.push_back(abs_("order_IL.1.4", 1, 0, K::Ranking));
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"deturck-B", "De Turck (1987)", R"(4
1    8/5   1/4  4
5/8  1     5/8  10
4    8/5   1    4
1/4  1/10  1/4  1
)", ReciprocityPolicy::strict(kProgrammaticTolerance), {}};
        add_vector(c.expected, "wR", {200.0 / 9, 500.0 / 18, 400.0 / 9, 100.0 / 18}, 1e-6, ToleranceKind::Relative);
        // (1/4, 1/5, 1/8, 1) rescaled to sum 100.
        add_vector(c.expected, "wL", {1000.0 / 63, 800.0 / 63, 500.0 / 63, 4000.0 / 63}, 1e-6,
                   ToleranceKind::Relative);
        add_vector(c.expected, "wIL", {200.0 / 9, 500.0 / 18, 400.0 / 9, 100.0 / 18}, 1e-6, ToleranceKind::Relative);
        c.expected.push_back(abs_("acceptable", 0, 0, K::Consistency));
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"dodd-C", "Dodd, Donegan and McMaster (1995)", R"(5
1    1    3    9    9
1    1    5    8    5
1/3  1/5  1    9    5
1/9  1/8  1/9  1    1
1/9  1/5  1/5  1    1
)", ReciprocityPolicy::strict(kProgrammaticTolerance), {}};
        add_vector(c.expected, "wR", {36.5652, 38.9564, 16.7155, 3.4693, 4.2936}, 0.0005);
        add_vector(c.expected, "wIL", {40.6431, 36.4208, 15.0669, 3.4391, 4.4302}, 0.0005);
        c.expected.push_back(abs_("cr", 0.082, 0.005, K::Consistency));
        c.expected.push_back(abs_("acceptable", 1, 0, K::Consistency));
        c.expected.push_back(abs_("top_R", 2, 0, K::Ranking));
        c.expected.push_back(abs_("top_IL", 1, 0, K::Ranking));
        cases.push_back(std::move(c));
    }
    // The simulated matrices are printed rounded; each printed pair is
    // reconciled to the reciprocal value consistent with both roundings.
    {
        VerifyCase c{"simulated-M1", "rank reversal at minimal inconsistency", R"(4
1       0.4759  0.9832  0.4025
2.1011  1       1.9975  0.7374
1.0171  0.5006  1       0.3704
2.4842  1.3560  2.6998  1
)", ReciprocityPolicy::reconcile_rounded(kFileTolerance), {}};
        add_vector(c.expected, "wR", {15.042, 30.274, 15.037, 39.647}, 0.005);
        add_vector(c.expected, "wIL", {15.036, 30.281, 15.049, 39.635}, 0.005);
        c.expected.push_back(abs_("cr", 0.0007, 0.0005, K::Consistency));
        c.expected.push_back(abs_("order_R.1.3", 1, 0, K::Ranking));
        c.expected.push_back(abs_("order_IL.3.1", 1, 0, K::Ranking));
        c.expected.push_back(abs_("any_reversal", 1, 0, K::Ranking));
        c.expected.push_back(abs_("euclid_R_IL", 0.0, 0.001, K::Ranking));
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"simulated-M2", "fully reversed ranking", R"(5
1      1.624  0.574  1.072  1.054
0.616  1      1.132  1.089  1.269
1.743  0.884  1      1.515  0.467
0.933  0.919  0.660  1      1.694
0.949  0.788  2.140  0.590  1
)", ReciprocityPolicy::reconcile_rounded(kFileTolerance), {}};
        add_vector(c.expected, "wR", {19.75, 19.16, 20.85, 19.53, 20.71}, 0.005);
        add_vector(c.expected, "wIL", {20.25, 20.55, 19.31, 20.27, 19.62}, 0.005);
        c.expected.push_back(abs_("cr", 0.078, 0.005, K::Consistency));
        c.expected.push_back(abs_("kendall_R_IL", -1, 0, K::Ranking));
        cases.push_back(std::move(c));
    }
    {
        VerifyCase c{"simulated-M3", "top reversal between distant weights", R"(5
1      0.371  2.013  5.389  0.243
2.698  1      4.596  7.527  0.736
0.497  0.218  1      2.321  0.167
0.186  0.133  0.431  1      0.385
4.120  1.359  5.973  2.598  1
)", ReciprocityPolicy::reconcile_rounded(kFileTolerance), {}};
        add_vector(c.expected, "wR", {15.26, 33.23, 7.74, 5.68, 38.08}, 0.005);
        add_vector(c.expected, "wIL", {15.29, 37.84, 8.55, 4.93, 33.39}, 0.005);
        c.expected.push_back(abs_("cr", 0.0993, 0.003, K::Consistency));
        c.expected.push_back(abs_("acceptable", 1, 0, K::Consistency));
        c.expected.push_back(abs_("top_R", 5, 0, K::Ranking));
        c.expected.push_back(abs_("top_IL", 2, 0, K::Ranking));
        c.expected.push_back(abs_("gap_R.2.5", 4.85, 0.05, K::Ranking));
        c.expected.push_back(abs_("gap_IL.2.5", 4.44, 0.05, K::Ranking));
        cases.push_back(std::move(c));
    }
    return cases;
}

struct Context {
    const PCMatrix& a;
    const RiTable& ri;
    PriorityVectors p;
    WeightVector left;

    Context(const PCMatrix& m, const RiTable& table)
        : a(m), ri(table), p(all_priorities(m)), left(left_eigenvector(m).weights) {}

    const WeightVector& vec(std::string_view name) const {
        if (name == "R") return p.right;
        if (name == "L") return left;
        if (name == "IL") return p.inverse_left;
        if (name == "RL") return p.rl_combined;
        if (name == "RGM") return p.row_geometric_mean;
        throw Error("unknown vector '" + std::string(name) + "'");
    }
};

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::size_t index_arg(const std::string& s, std::size_t n) {
    std::size_t k = 0;
    try {
        k = std::stoul(s);
    } catch (const std::exception&) {
        throw Error("bad index '" + s + "'");
    }
    if (k < 1 || k > n) throw Error("index " + s + " out of range");
    return k - 1;
}

double evaluate(const Context& ctx, const std::string& quantity) {
    const auto parts = split(quantity, '.');
    const std::string& head = parts[0];
    const std::size_t n = ctx.a.n();
    auto sum100 = [](const WeightVector& w, std::size_t k) { return w.rescaled(Normalization::SumHundred)[k]; };

    if (parts.size() == 2 && head.size() > 1 && head[0] == 'w') {
        return sum100(ctx.vec(head.substr(1)), index_arg(parts[1], n));
    }
    if (head == "cr" && parts.size() == 1) return consistency_ratio(n, ctx.p.lambda_max, ctx.ri).cr;
    if (head == "acceptable" && parts.size() == 1) {
        return consistency_ratio(n, ctx.p.lambda_max, ctx.ri).acceptable ? 1.0 : 0.0;
    }
    if (head == "kendall_R_IL") return kendall_tau(ctx.p.right, ctx.p.inverse_left);
    if (head == "euclid_R_IL") return euclidean(ctx.p.right, ctx.p.inverse_left);
    if (head == "any_reversal") return orderings_differ(ctx.p.right, ctx.p.inverse_left) ? 1.0 : 0.0;
    if (head.starts_with("top_") && parts.size() == 1) {
        return static_cast<double>(argmax(ctx.vec(head.substr(4))) + 1);
    }
    if ((head.starts_with("order_") || head.starts_with("gap_")) && parts.size() == 3) {
        const auto& w = ctx.vec(head.substr(head.find('_') + 1));
        const double d = sum100(w, index_arg(parts[1], n)) - sum100(w, index_arg(parts[2], n));
        if (head.starts_with("gap_")) return std::abs(d);
        return static_cast<double>((d > 0) - (d < 0));
    }
    if (head == "aij" && parts.size() == 2) {
        const PCMatrix both[2] = {ctx.a, transpose(ctx.a)};
        return sum100(right_eigenvector(aggregate_matrices_geometric(both)).weights, index_arg(parts[1], n));
    }
    if (head == "aip_gt" && parts.size() == 3) {
        const WeightVector both[2] = {ctx.p.right, right_eigenvector(transpose(ctx.a)).weights};
        const auto agg = aggregate_priorities_geometric(both);
        return agg[index_arg(parts[1], n)] > agg[index_arg(parts[2], n)] ? 1.0 : 0.0;
    }
    throw Error("unknown verify quantity '" + quantity + "'");
}

}  // namespace

const std::vector<VerifyCase>& verify_cases() {
    static const std::vector<VerifyCase> cases = build_cases();
    return cases;
}

double evaluate_quantity(const PCMatrix& a, const std::string& quantity, const RiTable& ri) {
    return evaluate(Context(a, ri), quantity);
}

VerifyReport run_verify(const RiTable& ri, const std::vector<VerifyCase>& cases) {
    VerifyReport report;
    for (const auto& c : cases) {
        const PCMatrix a = c.matrix();
        const Context ctx(a, ri);
        for (const auto& e : c.expected) {
            QuantityResult r{c.name, e, 0.0, 0.0, false};
            try {
                r.actual = evaluate(ctx, e.quantity);
                const double diff = std::abs(r.actual - e.value);
                r.residual = e.tolerance_kind == ToleranceKind::Relative ? diff / std::abs(e.value) : diff;
                r.passed = r.residual <= e.tolerance;
            } catch (const MissingRiError&) {
                r.actual = std::nan("");
                r.residual = std::nan("");
            }
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

}  // namespace pcm
