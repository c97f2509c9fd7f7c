#include "cfs/lie.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cfs;
using cfs_test::from_terms;
using cfs_test::rat;

namespace {

Series<Rational> random_lie(std::mt19937& gen, Alphabet a, int cap) {
    std::uniform_int_distribution<int> letter(0, a.m);
    Series<Rational> out = Series<Rational>::zero(a, cap);
    std::uniform_int_distribution<int> pieces(1, 3);
    const int count = pieces(gen);
    for (int i = 0; i < count; ++i) {
        Series<Rational> piece = Series<Rational>::letter(a, cap, letter(gen));
        std::uniform_int_distribution<int> wraps(0, 2);
        for (int d = wraps(gen); d > 0; --d)
            piece = bracket(Series<Rational>::letter(a, cap, letter(gen)), piece);
        out = add(out, scale(cfs_test::random_rational(gen), piece));
    }
    return out;
}

/// Direct Ree check: shuffles of word pairs against the series. Slower
/// route kept as the oracle for the subsequence-split implementation.
bool primitive_by_word_pairs(const Series<Rational>& p, int N) {
    const auto words = enumerate_words(p.alphabet(), N - 1);
    for (const Word& u : words) {
        if (u.empty()) continue;
        for (const Word& v : words) {
            if (v.empty() || static_cast<int>(u.length() + v.length()) > N) continue;
            const auto sh = shuffle(Series<Rational>::monomial(p.alphabet(), N, u),
                                    Series<Rational>::monomial(p.alphabet(), N, v));
            if (scalar_product(sh, p) != Rational(0)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("bracket expansions") {
    const Alphabet a(1);
    const auto x0 = Series<Rational>::letter(a, 4, 0);
    const auto x1 = Series<Rational>::letter(a, 4, 1);
    CHECK(bracket(x0, x1) == from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1 x0", rat(-1)}}));
    const auto p = from_terms(a, 4, {{"x0", rat(2)}, {"x1 x0", rat(1)}});
    CHECK(bracket(p, p).is_zero());
    CHECK(bracket(x0, bracket(x0, x1)) == from_terms(a, 4, {{"x0 x0 x1", rat(1)},
                                                            {"x0 x1 x0", rat(-2)},
                                                            {"x1 x0 x0", rat(1)}}));
}

TEST_CASE("exponential and logarithm") {
    const Alphabet a(1);
    const auto x0 = Series<Rational>::letter(a, 2, 0);
    CHECK(exp_truncated(x0, 2) ==
          from_terms(a, 2, {{"", rat(1)}, {"x0", rat(1)}, {"x0 x0", rat(1, 2)}}));
    CHECK(exp_truncated(Series<Rational>::zero(a, 3), 3) == Series<Rational>::one(a, 3));
    const auto both = add(Series<Rational>::letter(a, 2, 0), Series<Rational>::letter(a, 2, 1));
    CHECK(exp_truncated(both, 2).coefficient(parse_word("x0 x1", a)) == rat(1, 2));

    CHECK(log_truncated(Series<Rational>::one(a, 4), 4).is_zero());
    const auto x1 = Series<Rational>::letter(a, 4, 1);
    CHECK(log_truncated(exp_truncated(x1, 4), 4) == x1);

    // degree-2 combination of two exponentials
    const auto z = concat(exp_truncated(truncate(x0, 2), 2), exp_truncated(truncate(x1, 2), 2));
    const auto expected = add(add(truncate(x0, 2), truncate(x1, 2)),
                              scale(rat(1, 2), bracket(truncate(x0, 2), truncate(x1, 2))));
    CHECK(log_truncated(z, 2) == expected);

    CHECK_THROWS_AS(exp_truncated(Series<Rational>::one(a, 3), 3), validation_error);
    CHECK_THROWS_AS(log_truncated(x1, 4), validation_error);
}

TEST_CASE("exp/log are mutually inverse on random Lie polynomials") {
    std::mt19937 gen(12);
    const Alphabet a(2);
    for (int trial = 0; trial < 6; ++trial) {
        const auto p = truncate(random_lie(gen, a, 4), 4);
        const auto z = exp_truncated(p, 4);
        CHECK(log_truncated(z, 4) == p);
        CHECK(exp_truncated(log_truncated(z, 4), 4) == z);
    }
}

TEST_CASE("primitivity criterion") {
    const Alphabet a(1);
    const auto br = from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1 x0", rat(-1)}});
    CHECK(is_primitive_ree(br, 4));
    CHECK_FALSE(is_primitive_ree(from_terms(a, 4, {{"x0 x1", rat(1)}}), 4));

    std::mt19937 gen(3);
    const Alphabet a2(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_lie(gen, a2, 4);
        CHECK(is_primitive_ree(p, 4));
        CHECK(is_primitive_ree(log_truncated(exp_truncated(p, 4), 4), 4));
        // cross-check the split-based implementation against plain shuffles
        CHECK(primitive_by_word_pairs(p, 4));
        auto spoiled = p;
        spoiled.accumulate(parse_word("x1 x2", a2), rat(1));
        CHECK(is_primitive_ree(spoiled, 4) == primitive_by_word_pairs(spoiled, 4));
    }
}

TEST_CASE("group-likeness") {
    const Alphabet a(1);
    CHECK(is_group_like(Series<Rational>::one(a, 4), 4));
    CHECK(is_group_like(exp_truncated(Series<Rational>::letter(a, 4, 1), 4), 4));
    Series<Rational> bad = Series<Rational>::one(a, 4);
    bad.set(parse_word("x0 x1", a), rat(1));
    CHECK_FALSE(is_group_like(bad, 4));

    std::mt19937 gen(7);
    const Alphabet a2(2);
    for (int trial = 0; trial < 5; ++trial) {
        const auto z1 = exp_truncated(random_lie(gen, a2, 4), 4);
        const auto z2 = exp_truncated(random_lie(gen, a2, 4), 4);
        CHECK(is_group_like(z1, 4));
        CHECK(is_group_like(concat(z1, z2), 4));
    }

    CHECK_THROWS_AS(GroupElement(bad), validation_error);
    CHECK(GroupElement::identity(a, 4).is_identity());
    CHECK_THROWS_AS(LieElement(from_terms(a, 4, {{"x0 x1", rat(1)}})), validation_error);
    const LieElement ok(from_terms(a, 4, {{"x1", rat(2)}}));
    CHECK(exp_group(ok, 4).series().coefficient(parse_word("x1 x1", a)) == rat(2));
}

TEST_CASE("chen series of constant inputs") {
    const Alphabet a(1);
    const std::vector<Rational> unit_alpha{rat(1), rat(0)};
    CHECK(chen_series_constant(unit_alpha, rat(1), a, 2) ==
          from_terms(a, 2, {{"", rat(1)}, {"x0", rat(1)}, {"x0 x0", rat(1, 2)}}));

    const std::vector<Rational> alpha{rat(1), rat(5, 3)};
    const Rational t = rat(7, 2);
    const auto P = chen_series_constant(alpha, t, a, 4);
    CHECK(P.coefficient(parse_word("x1 x0", a)) == Rational(alpha[1] * t * t / rat(2)));
    CHECK(is_group_like(P, 4));
    CHECK_NOTHROW(GroupElement(P));

    // closed-form time derivative matches the formal state equation:
    // (k+1) <P, x_i w> = alpha_i t <P, w>
    for (const Word& w : enumerate_words(a, 3))
        for (int letter = 0; letter <= 1; ++letter)
            CHECK(Rational(P.coefficient(w.prepended(letter)) *
                           Rational(static_cast<int>(w.length()) + 1)) ==
                  Rational(alpha[letter] * t * P.coefficient(w)));

    CHECK_THROWS_AS(chen_series_constant(std::vector<Rational>{rat(2), rat(0)}, rat(1), a, 2),
                    validation_error);

    // float flavor agrees with the rational one
    const auto Pd = chen_series_constant(std::vector<double>{1.0, 5.0 / 3.0}, 3.5, a, 4);
    for (const auto& [w, c] : P.terms())
        CHECK(Pd.coefficient(w) == Catch::Approx(c.get_d()).epsilon(1e-12));
}
