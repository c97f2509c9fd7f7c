#pragma once

#include "cfs/rational.hpp"
#include "cfs/word.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cfs {

/// A truncated noncommutative formal power series: a finite map from words
/// to nonzero coefficients, with a degree cap bounding the word length any
/// operation may populate. Equality compares alphabet and support only;
/// the cap is bookkeeping for truncation, not part of the value.
template <coefficient_ring R>
class Series {
public:
    Series(Alphabet alphabet, int cap) : alphabet_(alphabet), cap_(cap) {
        if (cap_ < 0) throw validation_error("series degree cap must be nonnegative");
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int cap() const { return cap_; }
    const std::map<Word, R>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    R coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? R(0) : it->second;
    }

    /// Stores a coefficient. Zero erases; words beyond the cap are dropped,
    /// which is what truncation means here.
    void set(const Word& w, R value) {
        if (static_cast<int>(w.length()) > cap_) return;
        if (value == R(0))
            terms_.erase(w);
        else
            terms_[w] = std::move(value);
    }

    void accumulate(const Word& w, const R& delta) {
        if (static_cast<int>(w.length()) > cap_) return;
        auto [it, fresh] = terms_.try_emplace(w, delta);
        if (!fresh) {
            it->second = R(it->second + delta);
            if (it->second == R(0)) terms_.erase(it);
        } else if (it->second == R(0)) {
            terms_.erase(it);
        }
    }

    /// Length of the shortest supported word; cap()+1 when zero.
    int min_degree() const {
        if (terms_.empty()) return cap_ + 1;
        return static_cast<int>(terms_.begin()->first.length());
    }

    /// Length of the longest supported word; -1 when zero.
    int max_degree() const {
        if (terms_.empty()) return -1;
        return static_cast<int>(terms_.rbegin()->first.length());
    }

    static Series zero(Alphabet a, int cap) { return Series(a, cap); }

    static Series one(Alphabet a, int cap) {
        Series s(a, cap);
        s.set(Word(), R(1));
        return s;
    }

    static Series letter(Alphabet a, int cap, int index) {
        if (!a.contains(index))
            throw validation_error("letter x" + std::to_string(index) + " outside alphabet");
        Series s(a, cap);
        s.set(Word::single(index), R(1));
        return s;
    }

    static Series monomial(Alphabet a, int cap, const Word& w, R coeff = R(1)) {
        Series s(a, cap);
        s.set(w, std::move(coeff));
        return s;
    }

    friend bool operator==(const Series& x, const Series& y) {
        return x.alphabet_ == y.alphabet_ && x.terms_ == y.terms_;
    }

private:
    Alphabet alphabet_;
    int cap_;
    std::map<Word, R> terms_;
};

namespace detail {

template <coefficient_ring R>
void require_same_alphabet(const Series<R>& x, const Series<R>& y, const char* op) {
    if (!(x.alphabet() == y.alphabet()))
        throw validation_error(std::string("alphabet mismatch in ") + op);
}

// Enumerates every interleaving of u and v, accumulating coeff per leaf.
template <coefficient_ring R>
void shuffle_rec(Series<R>& out, const Word& u, const Word& v, std::size_t iu, std::size_t iv,
                 std::vector<std::uint8_t>& scratch, const R& coeff) {
    if (iu == u.length() && iv == v.length()) {
        out.accumulate(Word(scratch), coeff);
        return;
    }
    if (iu < u.length()) {
        scratch.push_back(static_cast<std::uint8_t>(u.letter(iu)));
        shuffle_rec(out, u, v, iu + 1, iv, scratch, coeff);
        scratch.pop_back();
    }
    if (iv < v.length()) {
        scratch.push_back(static_cast<std::uint8_t>(v.letter(iv)));
        shuffle_rec(out, u, v, iu, iv + 1, scratch, coeff);
        scratch.pop_back();
    }
}

}  // namespace detail

template <coefficient_ring R>
Series<R> add(const Series<R>& x, const Series<R>& y) {
    detail::require_same_alphabet(x, y, "add");
    Series<R> out(x.alphabet(), std::min(x.cap(), y.cap()));
    for (const auto& [w, a] : x.terms()) out.accumulate(w, a);
    for (const auto& [w, a] : y.terms()) out.accumulate(w, a);
    return out;
}

template <coefficient_ring R>
Series<R> subtract(const Series<R>& x, const Series<R>& y) {
    detail::require_same_alphabet(x, y, "subtract");
    Series<R> out(x.alphabet(), std::min(x.cap(), y.cap()));
    for (const auto& [w, a] : x.terms()) out.accumulate(w, a);
    for (const auto& [w, a] : y.terms()) out.accumulate(w, R(-a));
    return out;
}

template <coefficient_ring R>
Series<R> scale(const R& factor, const Series<R>& x) {
    Series<R> out(x.alphabet(), x.cap());
    if (factor == R(0)) return out;
    for (const auto& [w, a] : x.terms()) out.set(w, R(factor * a));
    return out;
}

/// Cauchy (concatenation) product, truncated at the smaller cap.
template <coefficient_ring R>
Series<R> concat(const Series<R>& x, const Series<R>& y) {
    detail::require_same_alphabet(x, y, "concat");
    Series<R> out(x.alphabet(), std::min(x.cap(), y.cap()));
    for (const auto& [u, a] : x.terms()) {
        for (const auto& [v, b] : y.terms()) {
            if (static_cast<int>(u.length() + v.length()) > out.cap()) continue;
            out.accumulate(u + v, R(a * b));
        }
    }
    return out;
}

/// Shuffle product, truncated at the smaller cap.
template <coefficient_ring R>
Series<R> shuffle(const Series<R>& x, const Series<R>& y) {
    detail::require_same_alphabet(x, y, "shuffle");
    Series<R> out(x.alphabet(), std::min(x.cap(), y.cap()));
    std::vector<std::uint8_t> scratch;
    for (const auto& [u, a] : x.terms()) {
        for (const auto& [v, b] : y.terms()) {
            if (static_cast<int>(u.length() + v.length()) > out.cap()) continue;
            scratch.clear();
            scratch.reserve(u.length() + v.length());
            detail::shuffle_rec(out, u, v, 0, 0, scratch, R(a * b));
        }
    }
    return out;
}

/// Left shift by one letter: x_i^{-1}(x_i w) = w, zero on other words.
template <coefficient_ring R>
Series<R> left_shift_letter(int letter, const Series<R>& x) {
    if (!x.alphabet().contains(letter))
        throw validation_error("left shift by letter x" + std::to_string(letter) +
                               " outside alphabet");
    Series<R> out(x.alphabet(), x.cap());
    for (const auto& [w, a] : x.terms())
        if (w.starts_with(letter)) out.accumulate(w.tail(), a);
    return out;
}

/// Left shift by a polynomial: (x_i w)^{-1} = w^{-1} x_i^{-1}, extended
/// linearly over the support of p. A word's letters therefore shift in
/// left-to-right order.
template <coefficient_ring R>
Series<R> left_shift_poly(const Series<R>& p, const Series<R>& x) {
    detail::require_same_alphabet(p, x, "left shift");
    Series<R> out(x.alphabet(), x.cap());
    for (const auto& [w, a] : p.terms()) {
        Series<R> shifted = x;
        for (std::size_t i = 0; i < w.length() && !shifted.is_zero(); ++i)
            shifted = left_shift_letter(w.letter(i), shifted);
        for (const auto& [v, b] : shifted.terms()) out.accumulate(v, R(a * b));
    }
    return out;
}

/// Prepends a letter to every word: the series x_i * x.
template <coefficient_ring R>
Series<R> prepend_letter(int letter, const Series<R>& x) {
    if (!x.alphabet().contains(letter))
        throw validation_error("prepend of letter x" + std::to_string(letter) +
                               " outside alphabet");
    Series<R> out(x.alphabet(), x.cap());
    for (const auto& [w, a] : x.terms()) out.set(w.prepended(letter), a);
    return out;
}

/// <x, y> = sum over words of the product of coefficients.
template <coefficient_ring R>
R scalar_product(const Series<R>& x, const Series<R>& y) {
    detail::require_same_alphabet(x, y, "scalar product");
    const bool x_smaller = x.terms().size() <= y.terms().size();
    const Series<R>& small = x_smaller ? x : y;
    const Series<R>& large = x_smaller ? y : x;
    R total(0);
    for (const auto& [w, a] : small.terms()) {
        auto it = large.terms().find(w);
        if (it != large.terms().end()) total = R(total + a * it->second);
    }
    return total;
}

template <coefficient_ring R>
R coefficient_of(const Series<R>& x, const Word& w) {
    return x.coefficient(w);
}

/// Re-caps the series at N, dropping longer words. N may exceed the old
/// cap, which widens the headroom without changing the support.
template <coefficient_ring R>
Series<R> truncate(const Series<R>& x, int N) {
    Series<R> out(x.alphabet(), N);
    for (const auto& [w, a] : x.terms()) out.set(w, a);
    return out;
}

/// The degree-k part of the series.
template <coefficient_ring R>
Series<R> homogeneous_component(const Series<R>& x, int k) {
    Series<R> out(x.alphabet(), x.cap());
    for (const auto& [w, a] : x.terms())
        if (static_cast<int>(w.length()) == k) out.set(w, a);
    return out;
}

template <coefficient_ring R>
Series<R> operator+(const Series<R>& x, const Series<R>& y) {
    return add(x, y);
}

template <coefficient_ring R>
Series<R> operator-(const Series<R>& x, const Series<R>& y) {
    return subtract(x, y);
}

/// Diagnostic rendering: "2[x1 x1] + -1/2[x0]"; the empty word shows as [e].
inline std::string to_string(const Series<Rational>& x) {
    if (x.is_zero()) return "0";
    std::string out;
    for (const auto& [w, a] : x.terms()) {
        if (!out.empty()) out += " + ";
        out += to_string(a);
        out += '[';
        out += display_word(w);
        out += ']';
    }
    return out;
}

/// Strict total order on series values (alphabet, then support maps);
/// used to canonicalize term lists, no algebraic meaning.
inline bool series_less(const Series<Rational>& x, const Series<Rational>& y) {
    if (x.alphabet().m != y.alphabet().m) return x.alphabet().m < y.alphabet().m;
    auto xi = x.terms().begin();
    auto yi = y.terms().begin();
    for (; xi != x.terms().end() && yi != y.terms().end(); ++xi, ++yi) {
        if (xi->first < yi->first) return true;
        if (yi->first < xi->first) return false;
        if (xi->second != yi->second) return xi->second < yi->second;
    }
    return xi == x.terms().end() && yi != y.terms().end();
}

}  // namespace cfs
