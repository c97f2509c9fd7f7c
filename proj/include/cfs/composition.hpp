#pragma once

#include "cfs/series.hpp"

#include <map>
#include <vector>

namespace cfs {

namespace detail {

// psi(x_i)(e) = x_0 (d_i shuffle e), applied right to left over the word's
// letters; psi of the empty word is the identity. Memoized per suffix: the
// same tails recur across the outer series' support.
class CompositionHomomorphism {
public:
    CompositionHomomorphism(const std::vector<Series<Rational>>& inner, Alphabet inner_alphabet,
                            int cap)
        : inner_(inner), one_(Series<Rational>::one(inner_alphabet, cap)) {}

    const Series<Rational>& apply(const Word& word) {
        auto it = memo_.find(word);
        if (it != memo_.end()) return it->second;
        Series<Rational> value = word.empty()
                                     ? one_
                                     : prepend_letter(0, shuffle(series_for_letter(word.letter(0)),
                                                                 apply(word.tail())));
        return memo_.emplace(word, std::move(value)).first->second;
    }

private:
    const Series<Rational>& series_for_letter(int letter) {
        // Channel 0 is the unity input: d_0 = 1.
        return letter == 0 ? one_ : inner_[letter - 1];
    }

    const std::vector<Series<Rational>>& inner_;
    Series<Rational> one_;
    std::map<Word, Series<Rational>> memo_;
};

}  // namespace detail

/// Composition product: the generating series of the cascade in which the
/// outer series' input channels are fed by the inner series. The outer
/// series lives over its own (m~+1)-letter alphabet with one inner series
/// per non-drift channel; the result lives over the inner alphabet.
/// Every letter application prepends one x_0, so outer words longer than N
/// cannot reach the truncation window and are skipped.
inline Series<Rational> compose(const Series<Rational>& outer,
                                const std::vector<Series<Rational>>& inner, int N) {
    if (outer.alphabet().m != static_cast<int>(inner.size()))
        throw validation_error("composition needs one inner series per outer input channel");
    if (inner.empty()) throw validation_error("composition needs at least one inner series");
    const Alphabet inner_alphabet = inner.front().alphabet();
    std::vector<Series<Rational>> truncated;
    truncated.reserve(inner.size());
    for (const Series<Rational>& d : inner) {
        if (!(d.alphabet() == inner_alphabet))
            throw validation_error("inner series must share one alphabet");
        truncated.push_back(truncate(d, N));
    }
    detail::CompositionHomomorphism psi(truncated, inner_alphabet, N);
    Series<Rational> out(inner_alphabet, N);
    for (const auto& [word, coeff] : outer.terms()) {
        if (static_cast<int>(word.length()) > N) continue;
        for (const auto& [w, a] : psi.apply(word).terms()) out.accumulate(w, Rational(coeff * a));
    }
    return out;
}

/// Single-inner-series convenience form.
inline Series<Rational> compose(const Series<Rational>& outer, const Series<Rational>& inner,
                                int N) {
    return compose(outer, std::vector<Series<Rational>>{inner}, N);
}

}  // namespace cfs
