#pragma once

#include <string>
#include <vector>

#include "pcm/consistency.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

enum class ToleranceKind { Absolute, Relative };

/// Which part of the pipeline a quantity exercises.
enum class QuantityKind { Weight, Consistency, Ranking, Aggregation };

/// One expected value. Quantity keys (weights on the sum-100 scale, indices 1-based):
///   wR.k, wL.k, wIL.k, wRL.k, wRGM.k   component k of a priority vector
///   cr, acceptable                     consistency ratio, 10% rule (1/0)
///   kendall_R_IL, euclid_R_IL          metrics between w^R and w^-L (sum-one scale)
///   top_R, top_IL                      1-based index of the best alternative
///   order_R.i.j, order_IL.i.j          sign of w_i - w_j
///   gap_R.i.j, gap_IL.i.j              |w_i - w_j|
///   any_reversal                       1 if w^R and w^-L order some pair differently
///   aij.k                              w^R of the geometric aggregate of A and A^T
///   aip_gt.i.j                         1 if the AIP aggregate of w^R(A), w^R(A^T) ranks i above j
struct Expectation {
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
    ToleranceKind tolerance_kind = ToleranceKind::Absolute;
    QuantityKind kind = QuantityKind::Weight;
};

struct VerifyCase {
    std::string name;
    std::string source;
    std::string matrix_text;
    ReciprocityPolicy policy;
    std::vector<Expectation> expected;

    PCMatrix matrix() const;
};

struct QuantityResult {
    std::string case_name;
    Expectation expectation;
    double actual = 0.0;
    double residual = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<QuantityResult> results;
    bool all_passed() const;
    std::size_t failures() const;
};

/// Worked examples with published values, embedded verbatim.
const std::vector<VerifyCase>& verify_cases();

/// Evaluates one quantity key on a matrix. Throws Error for unknown keys.
double evaluate_quantity(const PCMatrix& a, const std::string& quantity, const RiTable& ri);

VerifyReport run_verify(const RiTable& ri, const std::vector<VerifyCase>& cases = verify_cases());

}  // namespace pcm
