#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pcm/io.hpp"
#include "pcm/matrix.hpp"
#include "pcm/verify.hpp"

namespace testing {

inline const pcm::VerifyCase& find_case(std::string_view name) {
    for (const auto& c : pcm::verify_cases()) {
        if (c.name == name) return c;
    }
    throw std::runtime_error("no case " + std::string(name));
}

inline pcm::PCMatrix case_matrix(std::string_view name) { return find_case(name).matrix(); }

inline pcm::PCMatrix matrix_from(std::string_view text,
                                 pcm::ReciprocityPolicy policy = pcm::ReciprocityPolicy::strict()) {
    return pcm::validate(pcm::parse_matrix_text(text), policy);
}

inline pcm::PCMatrix ones(std::size_t n) {
    return pcm::consistent_from_weights(std::vector<double>(n, 1.0));
}

inline std::vector<double> values(const pcm::WeightVector& w) {
    return {w.values().begin(), w.values().end()};
}

}  // namespace testing
