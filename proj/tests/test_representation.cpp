#include "cfs/representation.hpp"

#include "cfs/network.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace cfs;
using cfs_test::from_terms;
using cfs_test::rat;

TEST_CASE("field terms enforce the Lie-polynomial hypothesis") {
    const Alphabet a(1);
    StateField V(a, 4, 1);
    const auto unit = TensorFunctional::unit(a, 4, 1);
    CHECK_NOTHROW(V.add_term(1, FieldTerm{Series<Rational>::letter(a, 4, 1), unit}));
    CHECK_THROWS_AS(V.add_term(1, FieldTerm{from_terms(a, 4, {{"x0 x1", rat(1)}}), unit}),
                    validation_error);
    CHECK_THROWS_AS(V.add_term(1, FieldTerm{Series<Rational>::one(a, 4), unit}),
                    validation_error);
    CHECK_THROWS_AS(V.add_term(2, FieldTerm{Series<Rational>::letter(a, 4, 1), unit}),
                    validation_error);
    // a bracket is a fine shift
    CHECK_NOTHROW(V.add_term(
        1, FieldTerm{bracket(Series<Rational>::letter(a, 4, 0), Series<Rational>::letter(a, 4, 1)),
                     unit}));
    CHECK(V.max_shift_degree() == 2);
}

TEST_CASE("derivative chain of the squaring cascade") {
    const Alphabet a(1);
    const auto outer = from_terms(a, 4, {{"x1 x1", rat(1)}});
    const auto inner = Series<Rational>::letter(a, 4, 1);
    const auto rep = build_cascade(outer, inner);

    const auto x1 = Series<Rational>::letter(a, 4, 1);
    const auto one = Series<Rational>::one(a, 4);
    auto tensor2 = [&](const Rational& s, const Series<Rational>& s1, const Series<Rational>& s2) {
        TensorFunctional t(a, 4, 2);
        t.add_term(TensorTerm{s, {s1, s2}});
        return t;
    };

    auto running = rep.output(1);
    running = lie_derivative(rep.field(0), running, 3);
    CHECK(running == tensor2(rat(1), x1, x1));
    running = lie_derivative(rep.field(0), running, 2);
    CHECK(running == tensor2(rat(2), from_terms(a, 4, {{"x1 x1", rat(1)}}), one));
    running = lie_derivative(rep.field(1), running, 1);
    CHECK(running == tensor2(rat(2), x1, one));
    running = lie_derivative(rep.field(1), running, 0);
    CHECK(evaluate_identity(running) == rat(2));

    CHECK(coefficient(rep, 1, parse_word("x0 x0 x1 x1", a)) == rat(2));
    CHECK(coefficient(rep, 1, Word()) == rat(0));
}

TEST_CASE("a field with zero coefficients derives to zero") {
    const Alphabet a(1);
    StateField V(a, 4, 2);
    V.add_term(1, FieldTerm{Series<Rational>::letter(a, 4, 1), TensorFunctional(a, 4, 2)});
    const auto f = embed(from_terms(a, 4, {{"x1", rat(2)}}), 1, 2);
    CHECK(lie_derivative(V, f, 4).is_zero());
    CHECK_THROWS_AS(lie_derivative(V, embed(Series<Rational>::one(a, 4), 1, 3), 4),
                    validation_error);
}

TEST_CASE("trivial representation reproduces stored coefficients") {
    std::mt19937 gen(17);
    const Alphabet a(2);
    const auto c = cfs_test::random_polynomial(gen, a, {0, 1, 2}, 4, 4);
    const auto rep = trivial_representation(c);
    for (const Word& w : enumerate_words(a, 4))
        CHECK(coefficient(rep, 1, w) == c.coefficient(w));
    CHECK(generating_series(rep, 1, 4) == c);
}

TEST_CASE("coefficient is linear in the output functional") {
    const Alphabet a(1);
    const auto c = from_terms(a, 3, {{"x1", rat(1)}, {"x0 x1", rat(-2)}, {"", rat(1, 3)}});
    const auto d = from_terms(a, 3, {{"x1 x1", rat(4)}, {"x0", rat(1)}});
    FormalRepresentation rep(a, 3, 1);
    for (int letter = 0; letter <= 1; ++letter)
        rep.field(letter).add_term(1, FieldTerm{Series<Rational>::letter(a, 3, letter),
                                                TensorFunctional::unit(a, 3, 1)});
    rep.add_output(embed(c, 1, 1));
    rep.add_output(embed(d, 1, 1));
    rep.add_output(add(embed(c, 1, 1), scale(rat(5), embed(d, 1, 1))));
    for (const Word& w : enumerate_words(a, 3))
        CHECK(coefficient(rep, 3, w) ==
              Rational(coefficient(rep, 1, w) + rat(5) * coefficient(rep, 2, w)));
}

TEST_CASE("budget pruning never changes a value") {
    std::mt19937 gen(23);
    const Alphabet a(1);
    const auto c = cfs_test::random_polynomial(gen, a, {0, 1}, 3, 4);
    NetworkSpec spec;
    spec.m = 1;
    spec.kind = InterconnectionKind::additive;
    spec.degree = 4;
    spec.M = WeightMatrix::zero(1);
    spec.M.entries[0][0] = rat(-3, 2);
    spec.nodes.push_back(NodeSpec{1, truncate(c, 4)});
    const auto rep = build_additive(spec);
    for (const Word& w : enumerate_words(a, 4)) {
        TensorFunctional running = rep.output(1);
        for (std::size_t i = 0; i < w.length(); ++i)
            running = lie_derivative(rep.field(w.letter(i)), running, rep.cap());
        CHECK(coefficient(rep, 1, w) == evaluate_identity(running));
    }
    // prefix-sharing enumeration agrees with per-word chains
    const auto series = generating_series(rep, 1, 4);
    for (const Word& w : enumerate_words(a, 4))
        CHECK(series.coefficient(w) == coefficient(rep, 1, w));
}

TEST_CASE("derivation law at group-like states") {
    std::mt19937 gen(41);
    const Alphabet a(1);
    for (int trial = 0; trial < 4; ++trial) {
        StateField V(a, 4, 2);
        std::uniform_int_distribution<int> letter(0, 1);
        for (int j = 1; j <= 2; ++j)
            V.add_term(j, FieldTerm{Series<Rational>::letter(a, 4, letter(gen)),
                                    scale(cfs_test::random_rational(gen),
                                          TensorFunctional::unit(a, 4, 2))});
        auto random_functional = [&]() {
            TensorFunctional f(a, 4, 2);
            TensorTerm t;
            t.scalar = cfs_test::random_rational(gen);
            t.slots.push_back(cfs_test::random_polynomial(gen, a, {0, 1}, 2, 4));
            t.slots.push_back(cfs_test::random_polynomial(gen, a, {0, 1}, 2, 4));
            f.add_term(std::move(t));
            return f;
        };
        const auto c = random_functional();
        const auto d = random_functional();
        std::vector<GroupElement> z;
        for (int s = 0; s < 2; ++s) {
            auto p = scale(cfs_test::random_rational(gen), Series<Rational>::letter(a, 4, 1));
            p = add(p, scale(cfs_test::random_rational(gen), Series<Rational>::letter(a, 4, 0)));
            z.emplace_back(exp_truncated(p, 4));
        }
        CHECK(evaluate_grouplike(lie_derivative(V, shuffle_functionals(c, d), 8), z) ==
              Rational(evaluate_grouplike(lie_derivative(V, c, 8), z) * evaluate_grouplike(d, z) +
                       evaluate_grouplike(c, z) * evaluate_grouplike(lie_derivative(V, d, 8), z)));
    }
}

TEST_CASE("generating series degree is bounded by the build cap") {
    const Alphabet a(1);
    const auto rep = trivial_representation(Series<Rational>::letter(a, 3, 1));
    CHECK_THROWS_AS(generating_series(rep, 1, 4), validation_error);
    CHECK_NOTHROW(generating_series(rep, 1, 3));
    CHECK_THROWS_AS(coefficient(rep, 1, parse_word("x2", Alphabet(2))), validation_error);
    CHECK_THROWS_AS(rep.output(2), validation_error);
}

TEST_CASE("general Lie-polynomial shifts stay consistent with letters") {
    // A field shifting by [x0,x1] must match two letter fields composed:
    // L_{[p,q]} = L_p L_q - L_q L_p on series content.
    const Alphabet a(1);
    const auto c = from_terms(a, 4, {{"x0 x1", rat(1)}, {"x1 x0", rat(3)}, {"x1 x1", rat(-2)}});
    FormalRepresentation rep(a, 4, 1);
    const auto unit = TensorFunctional::unit(a, 4, 1);
    const auto br = bracket(Series<Rational>::letter(a, 4, 0), Series<Rational>::letter(a, 4, 1));
    rep.field(0).add_term(1, FieldTerm{br, unit});
    rep.field(1).add_term(1, FieldTerm{Series<Rational>::letter(a, 4, 1), unit});
    rep.add_output(embed(c, 1, 1));

    const auto direct = coefficient(rep, 1, parse_word("x0", a));
    const auto expected = Rational(left_shift_poly(br, c).coefficient(Word()));
    CHECK(direct == expected);
    // and with one more derivative after it
    const auto two = coefficient(rep, 1, parse_word("x0 x1", a));
    CHECK(two == left_shift_letter(1, left_shift_poly(br, c)).coefficient(Word()));
}
