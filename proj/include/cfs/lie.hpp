#pragma once

#include "cfs/series.hpp"

#include <map>
#include <utility>
#include <vector>

namespace cfs {

/// [p, q] = pq - qp under the concatenation product.
template <coefficient_ring R>
Series<R> bracket(const Series<R>& p, const Series<R>& q) {
    return subtract(concat(p, q), concat(q, p));
}

/// sum_{n<=N} p^n / n!. Requires a vanishing constant term, so the sum is
/// finite under the cap.
template <coefficient_ring R>
Series<R> exp_truncated(const Series<R>& p, int N) {
    if (p.coefficient(Word()) != R(0))
        throw validation_error("exponential requires a zero constant term");
    const Series<R> base = truncate(p, N);
    Series<R> out = Series<R>::one(p.alphabet(), N);
    Series<R> term = Series<R>::one(p.alphabet(), N);
    for (int n = 1; n <= N; ++n) {
        term = scale(R(R(1) / R(n)), concat(term, base));
        if (term.is_zero()) break;
        out = add(out, term);
    }
    return out;
}

/// sum_{1<=n<=N} (-1)^{n+1} (z-1)^n / n. Requires a unit constant term.
template <coefficient_ring R>
Series<R> log_truncated(const Series<R>& z, int N) {
    if (z.coefficient(Word()) != R(1))
        throw validation_error("logarithm requires a unit constant term");
    Series<R> w = truncate(z, N);
    w.set(Word(), R(0));
    Series<R> out = Series<R>::zero(z.alphabet(), N);
    Series<R> power = Series<R>::one(z.alphabet(), N);
    for (int n = 1; n <= N; ++n) {
        power = concat(power, w);
        if (power.is_zero()) break;
        const R sign = (n % 2 == 1) ? R(1) : R(-1);
        out = add(out, scale(R(sign / R(n)), power));
    }
    return out;
}

namespace detail {

/// Splits every supported word of length <= N into an ordered pair of
/// complementary nonempty subsequences. The resulting pair weights are the
/// coefficients of the deconcatenation-free "unshuffle": the value at
/// (eta, nu) equals <eta shuffle nu, c>.
template <coefficient_ring R>
std::map<std::pair<Word, Word>, R> nonempty_unshuffle(const Series<R>& c, int N) {
    std::map<std::pair<Word, Word>, R> out;
    for (const auto& [w, a] : c.terms()) {
        const int len = static_cast<int>(w.length());
        if (len < 2 || len > N) continue;
        const unsigned total = 1u << len;
        for (unsigned mask = 1; mask + 1 < total; ++mask) {
            std::vector<std::uint8_t> left, right;
            for (int i = 0; i < len; ++i) {
                if (mask & (1u << i))
                    left.push_back(static_cast<std::uint8_t>(w.letter(i)));
                else
                    right.push_back(static_cast<std::uint8_t>(w.letter(i)));
            }
            auto key = std::make_pair(Word(std::move(left)), Word(std::move(right)));
            auto [it, fresh] = out.try_emplace(std::move(key), a);
            if (!fresh) {
                it->second = R(it->second + a);
                if (it->second == R(0)) out.erase(it);
            }
        }
    }
    return out;
}

}  // namespace detail

/// True iff <eta shuffle nu, p> = 0 for all nonempty words eta, nu with
/// |eta| + |nu| <= N.
template <coefficient_ring R>
bool is_primitive_ree(const Series<R>& p, int N) {
    return detail::nonempty_unshuffle(p, N).empty();
}

/// True iff <z, e> = 1 and <eta shuffle nu, z> = <eta, z><nu, z> for all
/// nonempty eta, nu with |eta| + |nu| <= N.
template <coefficient_ring R>
bool is_group_like(const Series<R>& z, int N) {
    if (z.coefficient(Word()) != R(1)) return false;
    auto splits = detail::nonempty_unshuffle(z, N);
    // Every product of two supported-word evaluations must be matched.
    std::map<std::pair<Word, Word>, R> expected;
    for (const auto& [u, a] : z.terms()) {
        if (u.empty()) continue;
        for (const auto& [v, b] : z.terms()) {
            if (v.empty()) continue;
            if (static_cast<int>(u.length() + v.length()) > N) continue;
            const R prod = R(a * b);
            if (prod != R(0)) expected.emplace(std::make_pair(u, v), prod);
        }
    }
    return splits == expected;
}

/// A series known to be group-like up to its cap; the constructor checks.
class GroupElement {
public:
    explicit GroupElement(Series<Rational> z) : z_(std::move(z)) {
        if (!is_group_like(z_, z_.cap()))
            throw validation_error("series is not group-like up to its cap");
    }

    static GroupElement identity(Alphabet a, int cap) {
        return GroupElement(Series<Rational>::one(a, cap));
    }

    const Series<Rational>& series() const { return z_; }
    bool is_identity() const { return z_ == Series<Rational>::one(z_.alphabet(), z_.cap()); }

private:
    Series<Rational> z_;
};

/// A series known to be a Lie element up to its cap (zero constant term
/// and Ree's criterion); the constructor checks.
class LieElement {
public:
    explicit LieElement(Series<Rational> p) : p_(std::move(p)) {
        if (p_.coefficient(Word()) != Rational(0))
            throw validation_error("Lie element must have a zero constant term");
        if (!is_primitive_ree(p_, p_.cap()))
            throw validation_error("series fails the primitivity criterion up to its cap");
    }

    const Series<Rational>& series() const { return p_; }

private:
    Series<Rational> p_;
};

inline GroupElement exp_group(const LieElement& p, int N) {
    return GroupElement(exp_truncated(p.series(), N));
}

/// Chen series of constant inputs: exp(t * sum_i alpha_i x_i), whose
/// coefficient at x_{i_1}..x_{i_k} is alpha_{i_1}...alpha_{i_k} t^k / k!.
/// alpha_0 must be 1 (the drift channel carries the unity input).
template <coefficient_ring R>
Series<R> chen_series_constant(const std::vector<R>& alpha, const R& t, const Alphabet& a,
                               int N) {
    if (static_cast<int>(alpha.size()) != a.letter_count())
        throw validation_error("chen series needs one alpha per letter (m+1 values)");
    if (alpha[0] != R(1)) throw validation_error("chen series requires alpha_0 = 1");
    Series<R> out(a, N);
    R t_over_factorial(1);  // t^k / k! for the current length k
    std::vector<Word> level{Word()};
    out.set(Word(), R(1));
    for (int k = 1; k <= N; ++k) {
        t_over_factorial = R(t_over_factorial * t / R(k));
        std::vector<Word> next;
        next.reserve(level.size() * a.letter_count());
        for (const Word& w : level)
            for (int letter = 0; letter <= a.m; ++letter) next.push_back(w.appended(letter));
        for (const Word& w : next) {
            R prod(1);
            for (std::size_t i = 0; i < w.length(); ++i) prod = R(prod * alpha[w.letter(i)]);
            out.set(w, R(prod * t_over_factorial));
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace cfs
