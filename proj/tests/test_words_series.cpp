#include "cfs/series.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cfs;
using cfs_test::from_terms;
using cfs_test::random_polynomial;
using cfs_test::rat;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/2") == rat(3, 2));
    CHECK(parse_rational("-4/6") == rat(-2, 3));
    CHECK(parse_rational("+7") == rat(7));
    CHECK(to_string(rat(-2, 3)) == "-2/3");
    CHECK(to_string(rat(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), validation_error);
    CHECK_THROWS_AS(parse_rational("1.5"), validation_error);
    CHECK_THROWS_AS(parse_rational(""), validation_error);
    CHECK_THROWS_AS(parse_rational("1/ 2"), validation_error);
}

TEST_CASE("word parsing and order") {
    const Alphabet a1(1);
    CHECK(parse_word("x0 x1", a1) == Word({0, 1}));
    CHECK(parse_word("", Alphabet(2)).empty());
    CHECK(parse_word("  ", Alphabet(2)).empty());
    CHECK_THROWS_WITH(parse_word("x5", Alphabet(2)), Catch::Matchers::ContainsSubstring("x5"));
    CHECK_THROWS_WITH(parse_word("y1", a1), Catch::Matchers::ContainsSubstring("y1"));

    const auto words = enumerate_words(a1, 1);
    REQUIRE(words.size() == 3);
    CHECK(words[0].empty());
    CHECK(words[1] == Word({0}));
    CHECK(words[2] == Word({1}));
    // length-lex: every word compares below any longer word
    const auto more = enumerate_words(Alphabet(2), 3);
    CHECK(more.size() == 1 + 3 + 9 + 27);
    CHECK(std::is_sorted(more.begin(), more.end(),
                         [](const Word& x, const Word& y) { return x < y; }));
}

TEST_CASE("shuffle product basics") {
    const Alphabet a(1);
    const auto x0 = Series<Rational>::letter(a, 4, 0);
    const auto x1 = Series<Rational>::letter(a, 4, 1);

    CHECK(shuffle(x1, x1) == from_terms(a, 4, {{"x1 x1", rat(2)}}));
    CHECK(shuffle(x0, x1) == from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1 x0", rat(1)}}));

    const auto c = from_terms(a, 4, {{"x0 x1", rat(3)}, {"x1", rat(-1, 2)}});
    CHECK(shuffle(Series<Rational>::one(a, 4), c) == c);
    CHECK(shuffle(c, Series<Rational>::one(a, 4)) == c);
}

TEST_CASE("concatenation basics") {
    const Alphabet a(1);
    const auto x0 = Series<Rational>::letter(a, 4, 0);
    const auto x1 = Series<Rational>::letter(a, 4, 1);
    CHECK(concat(x0, x1) == from_terms(a, 4, {{"x0 x1", rat(1)}}));
    const auto sum = add(x0, x1);
    CHECK(concat(sum, sum) == from_terms(a, 4, {{"x0 x0", rat(1)},
                                                {"x0 x1", rat(1)},
                                                {"x1 x0", rat(1)},
                                                {"x1 x1", rat(1)}}));
    const auto c = from_terms(a, 4, {{"x1 x0", rat(5)}, {"", rat(2)}});
    CHECK(concat(Series<Rational>::one(a, 4), c) == c);
}

TEST_CASE("left shifts") {
    const Alphabet a(1);
    CHECK(left_shift_letter(1, from_terms(a, 4, {{"x1 x0", rat(1)}})) ==
          from_terms(a, 4, {{"x0", rat(1)}}));
    CHECK(left_shift_letter(1, from_terms(a, 4, {{"x0 x1", rat(1)}})).is_zero());

    const auto sq = from_terms(a, 4, {{"x1 x1", rat(1)}});
    const auto shifted = left_shift_letter(1, sq);
    CHECK(shifted.coefficient(Word()) == rat(0));
    CHECK(shifted.coefficient(Word({1})) == rat(1));

    // (x0 x1)^{-1} applies x1^{-1} after x0^{-1}
    const auto p = from_terms(a, 4, {{"x0 x1", rat(1)}});
    CHECK(left_shift_poly(p, from_terms(a, 4, {{"x0 x1 x0", rat(1)}})) ==
          from_terms(a, 4, {{"x0", rat(1)}}));
    // identity shift
    const auto c = from_terms(a, 4, {{"x0", rat(1)}, {"x1 x1", rat(-3)}});
    CHECK(left_shift_poly(Series<Rational>::one(a, 4), c) == c);
    // bracket shift: [x0,x1]^{-1}(x0 x1) = 1
    const auto br = from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1 x0", rat(-1)}});
    CHECK(left_shift_poly(br, from_terms(a, 4, {{"x0 x1", rat(1)}})) ==
          Series<Rational>::one(a, 4));
}

TEST_CASE("scalar product and linear ops") {
    const Alphabet a(1);
    const auto x1 = Series<Rational>::letter(a, 4, 1);
    CHECK(scalar_product(x1, x1) == rat(1));
    const auto c = from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1", rat(2)}, {"", rat(7)}});
    CHECK(scalar_product(c, Series<Rational>::one(a, 4)) == rat(7));
    CHECK(scalar_product(c, from_terms(a, 4, {{"x0 x1", rat(1)}})) == rat(1));

    CHECK(add(x1, x1) == scale(rat(2), x1));
    CHECK(truncate(from_terms(a, 4, {{"", rat(1)}, {"x0", rat(1)}, {"x0 x0", rat(1)}}), 1) ==
          from_terms(a, 1, {{"", rat(1)}, {"x0", rat(1)}}));
    CHECK(coefficient_of(c, parse_word("x1", a)) == rat(2));
    CHECK(subtract(c, c).is_zero());
    CHECK(scale(rat(0), c).is_zero());
}

TEST_CASE("result caps take the minimum") {
    const Alphabet a(1);
    auto big = from_terms(a, 5, {{"x1 x1 x1", rat(1)}});
    auto small = Series<Rational>::one(a, 2);
    CHECK(shuffle(big, small).is_zero());       // cap 2 drops the length-3 word
    CHECK(concat(small, big).cap() == 2);
    CHECK(add(big, small).coefficient(parse_word("x1 x1 x1", a)) == rat(0));
}

TEST_CASE("alphabet mismatch is rejected") {
    const auto c = Series<Rational>::one(Alphabet(1), 3);
    const auto d = Series<Rational>::one(Alphabet(2), 3);
    CHECK_THROWS_AS(shuffle(c, d), validation_error);
    CHECK_THROWS_AS(concat(c, d), validation_error);
    CHECK_THROWS_AS(scalar_product(c, d), validation_error);
}

TEST_CASE("series invariants never store zeros or over-cap words") {
    const Alphabet a(2);
    Series<Rational> s(a, 2);
    s.set(parse_word("x1", a), rat(0));
    CHECK(s.terms().empty());
    s.set(parse_word("x1 x2 x1", a), rat(3));
    CHECK(s.terms().empty());
    s.accumulate(parse_word("x1", a), rat(2));
    s.accumulate(parse_word("x1", a), rat(-2));
    CHECK(s.is_zero());
}

TEST_CASE("shuffle algebra laws on random polynomials") {
    std::mt19937 gen(99);
    const Alphabet a(2);
    for (int trial = 0; trial < 8; ++trial) {
        const auto x = random_polynomial(gen, a, {0, 1, 2}, 3, 4);
        const auto y = random_polynomial(gen, a, {0, 1, 2}, 3, 4);
        const auto z = random_polynomial(gen, a, {0, 1, 2}, 3, 4);
        CHECK(shuffle(x, y) == shuffle(y, x));
        CHECK(shuffle(shuffle(x, y), z) == shuffle(x, shuffle(y, z)));
        CHECK(concat(concat(x, y), z) == concat(x, concat(y, z)));

        // widen caps so the derivation law sees the whole shuffle
        const auto xw = truncate(x, 8);
        const auto yw = truncate(y, 8);
        for (int letter = 0; letter <= 2; ++letter) {
            CHECK(left_shift_letter(letter, shuffle(xw, yw)) ==
                  add(shuffle(left_shift_letter(letter, xw), yw),
                      shuffle(xw, left_shift_letter(letter, yw))));
        }
        for (const Word& w : enumerate_words(a, 3))
            CHECK(left_shift_letter(2, x).coefficient(w) == x.coefficient(w.prepended(2)));
    }
}

TEST_CASE("shuffle of two words spreads binomial mass") {
    const Alphabet a(1);
    for (int p = 0; p <= 4; ++p) {
        for (int q = 0; q <= 4; ++q) {
            const auto u = Series<Rational>::monomial(a, 8, Word(std::vector<std::uint8_t>(p, 1)));
            const auto v = Series<Rational>::monomial(a, 8, Word(std::vector<std::uint8_t>(q, 0)));
            const auto sh = shuffle(u, v);
            Rational mass(0);
            for (const auto& [w, c] : sh.terms()) mass = Rational(mass + c);
            Rational binom(1);
            for (int i = 1; i <= p; ++i) binom = Rational(binom * Rational(q + i) / Rational(i));
            CHECK(mass == binom);
        }
    }
}
