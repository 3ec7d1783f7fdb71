#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "pcm/error.hpp"
#include "pcm/io.hpp"
#include "pcm/matrix.hpp"

using namespace pcm;
using testing::case_matrix;
using testing::matrix_from;

TEST_CASE("validate accepts the identity judgment") {
    const auto a = validate(RawMatrix::square(3, std::vector<double>(9, 1.0)), ReciprocityPolicy::strict());
    CHECK(a.n() == 3);
    CHECK(a == testing::ones(3));
}

TEST_CASE("validate accepts exact fractions at 1e-9") {
    const auto a = matrix_from("4\n1 3 1/3 1/2\n1/3 1 1/6 2\n3 6 1 1\n2 1/2 1 1\n",
                               ReciprocityPolicy::strict(1e-9));
    CHECK(a(0, 2) == doctest::Approx(1.0 / 3));
    CHECK(a.reciprocity_residual() < 1e-15);
}

TEST_CASE("printed M1 needs the relaxed tolerance") {
    const char* m1 = "4\n1 0.4759 0.9832 0.4025\n2.1011 1 1.9975 0.7374\n"
                     "1.0171 0.5006 1 0.3704\n2.4842 1.3560 2.6998 1\n";
    CHECK(std::abs(0.4759 * 2.1011 - 1.0) > 1e-6);
    CHECK_THROWS_AS(matrix_from(m1, ReciprocityPolicy::strict(1e-6)), ReciprocityViolationError);
    const auto a = matrix_from(m1, ReciprocityPolicy::strict(1e-3));
    CHECK(a(0, 1) == 0.4759);
    CHECK(a(1, 0) == 2.1011);
}

TEST_CASE("validate error paths") {
    SUBCASE("non-square") {
        CHECK_THROWS_AS(validate(RawMatrix{2, 3, std::vector<double>(6, 1.0), {}}, ReciprocityPolicy::strict()),
                        NonSquareError);
        CHECK_THROWS_AS(RawMatrix::square(3, std::vector<double>(8, 1.0)), NonSquareError);
    }
    SUBCASE("order below 3") {
        CHECK_THROWS_AS(validate(RawMatrix::square(2, {1, 2, 0.5, 1}), ReciprocityPolicy::strict()),
                        DegenerateOrderError);
    }
    SUBCASE("non-positive entries") {
        CHECK_THROWS_AS(matrix_from("3\n1 0 1\n1 1 1\n1 1 1\n"), NonPositiveEntryError);
        CHECK_THROWS_AS(matrix_from("3\n1 -2 1\n-0.5 1 1\n1 1 1\n"), NonPositiveEntryError);
        try {
            matrix_from("3\n1 1 1\n1 1 1\n1 0 1\n");
            FAIL("expected throw");
        } catch (const NonPositiveEntryError& e) {
            CHECK(e.row() == 2);
            CHECK(e.col() == 1);
        }
    }
    SUBCASE("reciprocity") {
        try {
            matrix_from("3\n1 2 1\n0.6 1 1\n1 1 1\n");
            FAIL("expected throw");
        } catch (const ReciprocityViolationError& e) {
            CHECK(e.row() == 0);
            CHECK(e.col() == 1);
            CHECK(e.residual() == doctest::Approx(0.2));
        }
        CHECK_THROWS_AS(matrix_from("3\n2 1 1\n1 1 1\n1 1 1\n"), ReciprocityViolationError);
    }
    SUBCASE("tolerance range") {
        CHECK_THROWS_AS(validate(RawMatrix::square(3, std::vector<double>(9, 1.0)), ReciprocityPolicy::strict(0.5)),
                        Error);
        CHECK_THROWS_AS(validate(RawMatrix::square(3, std::vector<double>(9, 1.0)), ReciprocityPolicy::strict(0.0)),
                        Error);
    }
}

TEST_CASE("repair and reconcile policies") {
    const char* text = "3\n1 2 4\n0.7 1 3\n0.2 0.3 1\n";
    const auto up = matrix_from(text, ReciprocityPolicy::repair_from_upper());
    CHECK(up(1, 0) == 0.5);
    CHECK(up(2, 0) == 0.25);
    CHECK(up(2, 1) == doctest::Approx(1.0 / 3));
    CHECK(up.reciprocity_residual() < 1e-15);

    // 0.4759 and 2.1011 overlap after rounding: the reconciled value lies in both intervals
    const auto m1 = case_matrix("simulated-M1");
    CHECK(m1(0, 1) >= 0.47585);
    CHECK(m1(0, 1) <= 0.47595);
    CHECK(1.0 / m1(0, 1) >= 2.10105);
    CHECK(1.0 / m1(0, 1) <= 2.10115);
    CHECK(m1.reciprocity_residual() < 1e-15);

    // disjoint intervals fall back to the tolerance check
    CHECK_THROWS_AS(matrix_from("3\n1 2.0 1\n0.4 1 1\n1 1 1\n", ReciprocityPolicy::reconcile_rounded()),
                    ReciprocityViolationError);
    const auto close = matrix_from("3\n1 2 1\n0.5001 1 1\n1 1 1\n", ReciprocityPolicy::reconcile_rounded());
    CHECK(close(0, 1) * close(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("consistent_from_weights") {
    const std::vector<double> w{4, 2, 1};
    const auto a = consistent_from_weights(w);
    const double expected[3][3] = {{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(a(i, j) == expected[i][j]);

    CHECK(consistent_from_weights(std::vector<double>{1, 1, 1, 1}) == testing::ones(4));

    const auto two = consistent_from_weights(std::vector<double>{9, 1});
    CHECK(two.n() == 2);
    CHECK(two(0, 1) == 9);
    CHECK(two(1, 0) == doctest::Approx(1.0 / 9));

    CHECK_THROWS_AS(consistent_from_weights(std::vector<double>{}), EmptyListError);
    CHECK_THROWS_AS(consistent_from_weights(std::vector<double>{1, 0, 2}), NonPositiveWeightError);
    CHECK_THROWS_AS(consistent_from_weights(std::vector<double>{1, -3}), NonPositiveWeightError);
}

TEST_CASE("is_consistent") {
    CHECK(is_consistent(consistent_from_weights(std::vector<double>{4, 2, 1}), 1e-9));
    CHECK_FALSE(is_consistent(case_matrix("johnson-A"), 1e-3));
    CHECK(is_consistent(consistent_from_weights(std::vector<double>{3, 7}), 1e-12));
    CHECK(is_consistent(consistent_from_weights(std::vector<double>{0.1, 5}), 1e-12));
}

TEST_CASE("transpose") {
    CHECK(transpose(case_matrix("example1-A")) == case_matrix("example1-B"));
    CHECK(transpose(testing::ones(5)) == testing::ones(5));
    const auto a = case_matrix("dodd-C");
    CHECK(transpose(transpose(a)) == a);
}

TEST_CASE("permute") {
    const auto a = case_matrix("johnson-A");
    const std::vector<std::size_t> p{2, 0, 3, 1};
    const auto b = permute(a, p);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(b(i, j) == a(p[i], p[j]));
    CHECK_THROWS_AS(permute(a, std::vector<std::size_t>{0, 1, 2}), DimensionMismatchError);
    CHECK_THROWS_AS(permute(a, std::vector<std::size_t>{0, 1, 1, 2}), Error);
}

TEST_CASE("normalize") {
    const auto h = normalize(std::vector<double>{2, 1, 1}, Normalization::SumHundred);
    CHECK(h[0] == doctest::Approx(50));
    CHECK(h[1] == doctest::Approx(25));
    CHECK(h[2] == doctest::Approx(25));

    const auto o = normalize(std::vector<double>{4, 5, 8, 1});
    CHECK(o[0] == doctest::Approx(2.0 / 9).epsilon(1e-15));
    CHECK(o[1] == doctest::Approx(5.0 / 18).epsilon(1e-15));
    CHECK(o[2] == doctest::Approx(4.0 / 9).epsilon(1e-15));
    CHECK(o[3] == doctest::Approx(1.0 / 18).epsilon(1e-15));

    const auto again = normalize(o.values());
    for (std::size_t i = 0; i < 4; ++i) CHECK(again[i] == doctest::Approx(o[i]).epsilon(1e-15));

    const auto back = h.rescaled(Normalization::SumOne);
    CHECK(back[0] == doctest::Approx(0.5));
    CHECK(back.normalization() == Normalization::SumOne);

    CHECK_THROWS_AS(normalize(std::vector<double>{}), EmptyListError);
    CHECK_THROWS_AS(normalize(std::vector<double>{1, 0}), NonPositiveWeightError);
    CHECK(method_name(Method::InverseLeft) == "left-inverse");
}

TEST_CASE("number parsing") {
    CHECK(parse_number("1/3").value == 1.0 / 3);
    CHECK(parse_number("1/3").half_width == 0.0);
    CHECK(parse_number("0.4759").value == 0.4759);
    CHECK(parse_number("0.4759").half_width == doctest::Approx(0.00005));
    CHECK(parse_number("2.140").half_width == doctest::Approx(0.0005));
    CHECK(parse_number("9").half_width == 0.0);
    CHECK(parse_number("1.5e-3").value == 0.0015);
    CHECK(parse_number("1.5e-3").half_width == doctest::Approx(0.00005));
    CHECK_THROWS_AS(parse_number("abc"), ParseError);
    CHECK_THROWS_AS(parse_number("1/0"), ParseError);
    CHECK_THROWS_AS(parse_number(""), ParseError);
    CHECK_THROWS_AS(parse_number("3x"), ParseError);
}

TEST_CASE("fraction input matches full-precision decimal input") {
    const auto frac = matrix_from("3\n1 1/3 2\n3 1 1\n1/2 1 1\n");
    const auto dec = matrix_from("3\n1 0.333333333333 2\n3 1 1\n0.5 1 1\n", ReciprocityPolicy::strict(1e-9));
    CHECK(frac(0, 1) == doctest::Approx(dec(0, 1)).epsilon(1e-11));
    CHECK(frac(1, 0) == dec(1, 0));
}

TEST_CASE("matrix text format") {
    SUBCASE("comments and blank lines") {
        const auto raw = parse_matrix_text("# header\n\n3\n1 2 4 # row one\n1/2 1 2\n\n1/4 1/2 1\n");
        CHECK(raw.rows == 3);
        CHECK(raw.at(0, 2) == 4);
        CHECK(raw.at(2, 1) == 0.5);
    }
    SUBCASE("row length mismatch reports the line") {
        try {
            parse_matrix_text("3\n1 2 4\n1/2 1\n1/4 1/2 1\n");
            FAIL("expected throw");
        } catch (const NonSquareError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("bad token") {
        try {
            parse_matrix_text("3\n1 2 4\n1/2 1 two\n1/4 1/2 1\n");
            FAIL("expected throw");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("missing rows") { CHECK_THROWS_AS(parse_matrix_text("3\n1 1 1\n1 1 1\n"), NonSquareError); }
    SUBCASE("extra rows") { CHECK_THROWS_AS(parse_matrix_text("3\n1 1 1\n1 1 1\n1 1 1\n1 1 1\n"), NonSquareError); }
    SUBCASE("empty") { CHECK_THROWS_AS(parse_matrix_text("# nothing\n"), ParseError); }
    SUBCASE("bad order") { CHECK_THROWS_AS(parse_matrix_text("x\n1\n"), ParseError); }
}

TEST_CASE("write_matrix round-trips bit-exactly") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> e(25, 1.0);
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            e[i * 5 + j] = std::exp(u(rng));
            e[j * 5 + i] = 1.0 / e[i * 5 + j];
        }
    }
    const auto a = validate(RawMatrix::square(5, e), ReciprocityPolicy::strict(1e-12));
    std::ostringstream out;
    write_matrix(out, a);
    const auto b = matrix_from(out.str(), ReciprocityPolicy::strict(1e-12));
    CHECK(a == b);
}
