#pragma once

#include "cfs/tensor.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace cfs {

/// One summand of a state-dependent formal vector field component: a Lie
/// polynomial shift together with the functional multiplying it. The shift
/// must be primitive with no constant term; that hypothesis is what keeps
/// iterated derivatives well defined.
struct FieldTerm {
    Series<Rational> shift;
    TensorFunctional coeff;
};

/// A formal right-invariant vector field with state-dependent coefficients:
/// per slot j, the Lie element acting on z_j as a sum of weighted shifts.
class StateField {
public:
    StateField(Alphabet alphabet, int cap, int slot_count)
        : alphabet_(alphabet), cap_(cap), slots_(slot_count) {
        if (slot_count < 1) throw validation_error("state field needs at least one slot");
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int cap() const { return cap_; }
    int slot_count() const { return static_cast<int>(slots_.size()); }
    const std::vector<FieldTerm>& slot(int j) const { return slots_.at(j - 1); }

    /// Installs a field term on slot j (1-based) after checking the
    /// Lie-polynomial hypothesis on the shift.
    void add_term(int j, FieldTerm term) {
        if (j < 1 || j > slot_count())
            throw validation_error("field slot index out of range");
        if (!(term.shift.alphabet() == alphabet_))
            throw validation_error("field shift over a different alphabet");
        if (term.coeff.slot_count() != slot_count())
            throw validation_error("field coefficient has the wrong slot count");
        if (term.shift.coefficient(Word()) != Rational(0))
            throw validation_error("field shift must have a zero constant term");
        if (!is_primitive_ree(term.shift, term.shift.cap()))
            throw validation_error("field shift is not a Lie polynomial (primitivity fails)");
        slots_[j - 1].push_back(std::move(term));
    }

    /// Longest word in any shift; 1 for the letter fields every network
    /// builder emits.
    int max_shift_degree() const {
        int deg = 1;
        for (const auto& terms : slots_)
            for (const FieldTerm& t : terms) deg = std::max(deg, t.shift.max_degree());
        return deg;
    }

private:
    Alphabet alphabet_;
    int cap_;
    std::vector<std::vector<FieldTerm>> slots_;
};

/// Formal Lie derivative of a functional along a state field. Per term T of
/// the functional, slot j and field term (q, f): the shift acts on the slot
/// content first, then every slot is shuffled with f's slots:
///
///   slot j  ->  (q^{-1} T_j) shuffle f_j,      slot l  ->  T_l shuffle f_l.
///
/// The coefficient functional is a scalar function of the state, not series
/// content, so the shift must not reach it; shifting the shuffled product
/// instead would double the state-dependent summands.
///
/// Monomial content of total cross-slot degree above the budget is dropped:
/// with one derivative still to apply before evaluating at the identity,
/// such content can never reach the empty word.
inline TensorFunctional lie_derivative(const StateField& field, const TensorFunctional& f,
                                       int budget) {
    if (field.slot_count() != f.slot_count())
        throw validation_error("slot-count mismatch in Lie derivative");
    const int n = f.slot_count();
    TensorFunctional out(f.alphabet(), std::min(f.cap(), field.cap()), n);
    for (const TensorTerm& term : f.terms()) {
        for (int j = 1; j <= n; ++j) {
            for (const FieldTerm& ft : field.slot(j)) {
                if (ft.coeff.is_zero()) continue;
                const Series<Rational> shifted = left_shift_poly(ft.shift, term.slots[j - 1]);
                if (shifted.is_zero()) continue;
                for (const TensorTerm& cterm : ft.coeff.terms()) {
                    TensorTerm emitted;
                    emitted.scalar = Rational(term.scalar * cterm.scalar);
                    emitted.slots.reserve(n);
                    for (int l = 1; l <= n; ++l)
                        emitted.slots.push_back(
                            shuffle(l == j ? shifted : term.slots[l - 1], cterm.slots[l - 1]));
                    out.add_term(std::move(emitted));
                }
            }
        }
    }
    return prune_total_degree(out, budget);
}

/// The triple (mu, z_0, outputs): a letter-indexed family of state fields,
/// an initial group tuple, and output functionals. Iterating the Lie
/// derivative along a word's letters and evaluating at z_0 produces the
/// coefficients of a well-defined generating series.
class FormalRepresentation {
public:
    FormalRepresentation(Alphabet alphabet, int cap, int dimension)
        : alphabet_(alphabet),
          cap_(cap),
          dimension_(dimension),
          fields_(alphabet.letter_count(), StateField(alphabet, cap, dimension)),
          initial_(dimension, GroupElement::identity(alphabet, cap)) {}

    const Alphabet& alphabet() const { return alphabet_; }
    int cap() const { return cap_; }
    int dimension() const { return dimension_; }

    StateField& field(int letter) { return fields_.at(letter); }
    const StateField& field(int letter) const { return fields_.at(letter); }

    void set_initial(std::vector<GroupElement> initial) {
        if (static_cast<int>(initial.size()) != dimension_)
            throw validation_error("initial state tuple size does not match dimension");
        initial_ = std::move(initial);
    }
    const std::vector<GroupElement>& initial() const { return initial_; }

    bool initial_is_identity() const {
        return std::all_of(initial_.begin(), initial_.end(),
                           [](const GroupElement& z) { return z.is_identity(); });
    }

    void add_output(TensorFunctional output) {
        if (output.slot_count() != dimension_)
            throw validation_error("output functional slot count does not match dimension");
        outputs_.push_back(std::move(output));
    }
    int output_count() const { return static_cast<int>(outputs_.size()); }
    const TensorFunctional& output(int k) const {
        if (k < 1 || k > output_count()) throw validation_error("output index out of range");
        return outputs_[k - 1];
    }

    int max_shift_degree() const {
        int deg = 1;
        for (const StateField& f : fields_) deg = std::max(deg, f.max_shift_degree());
        return deg;
    }

private:
    Alphabet alphabet_;
    int cap_;
    int dimension_;
    std::vector<StateField> fields_;
    std::vector<GroupElement> initial_;
    std::vector<TensorFunctional> outputs_;
};

namespace detail {

inline Rational evaluate_at_initial(const FormalRepresentation& rep, const TensorFunctional& f,
                                    bool identity_initial) {
    return identity_initial ? evaluate_identity(f) : evaluate_grouplike(f, rep.initial());
}

/// Budget for a derivative step with `remaining` further derivatives to go.
/// Each later step removes at most max_shift_degree letters of slot content;
/// at a non-identity initial state the evaluation reads arbitrary degrees,
/// so pruning is disabled (the cap still bounds everything).
inline int step_budget(const FormalRepresentation& rep, bool identity_initial, int remaining) {
    if (!identity_initial) return rep.cap();
    return std::min(rep.cap(), remaining * rep.max_shift_degree());
}

}  // namespace detail

/// Coefficient of the represented series at a word: the word's letters are
/// consumed left to right, each applying its field's Lie derivative to the
/// running functional, and the result is evaluated at the initial state.
/// The first letter of the word is thus the innermost derivative.
inline Rational coefficient(const FormalRepresentation& rep, int k, const Word& eta) {
    const bool identity_initial = rep.initial_is_identity();
    TensorFunctional running = rep.output(k);
    const int len = static_cast<int>(eta.length());
    for (int i = 0; i < len; ++i) {
        const int letter = eta.letter(i);
        if (!rep.alphabet().contains(letter))
            throw validation_error("word contains letter x" + std::to_string(letter) +
                                   " outside the representation's alphabet");
        if (running.is_zero()) return Rational(0);
        running = lie_derivative(rep.field(letter), running,
                                 detail::step_budget(rep, identity_initial, len - 1 - i));
    }
    return detail::evaluate_at_initial(rep, running, identity_initial);
}

namespace detail {

inline void generating_series_rec(const FormalRepresentation& rep, const TensorFunctional& running,
                                  bool identity_initial, Word& prefix, int depth, int N,
                                  Series<Rational>& out) {
    out.set(prefix, evaluate_at_initial(rep, running, identity_initial));
    if (depth == N || running.is_zero()) return;
    // One branch per letter; the budget covers the longest extension, so
    // every shorter word under this prefix is also exact.
    const int budget = step_budget(rep, identity_initial, N - depth - 1);
    for (int letter = 0; letter <= rep.alphabet().m; ++letter) {
        TensorFunctional next = lie_derivative(rep.field(letter), running, budget);
        prefix = prefix.appended(letter);
        generating_series_rec(rep, next, identity_initial, prefix, depth + 1, N, out);
        prefix = Word({prefix.letters().begin(), prefix.letters().end() - 1});
    }
}

}  // namespace detail

/// All coefficients for words up to length N, sharing derivative chains
/// across common prefixes. N must not exceed the cap the representation was
/// built at: beyond it the truncated inputs no longer determine the output.
inline Series<Rational> generating_series(const FormalRepresentation& rep, int k, int N) {
    if (N < 0) throw validation_error("generating series degree must be nonnegative");
    if (N > rep.cap())
        throw validation_error("generating series degree " + std::to_string(N) +
                               " exceeds the representation's cap " + std::to_string(rep.cap()));
    Series<Rational> out(rep.alphabet(), N);
    Word prefix;
    detail::generating_series_rec(rep, rep.output(k), rep.initial_is_identity(), prefix, 0, N, out);
    return out;
}

/// The one-dimensional representation whose coefficients are the stored
/// coefficients of c itself: mu(x_i) shifts by the letter, the output is c.
inline FormalRepresentation trivial_representation(const Series<Rational>& c) {
    FormalRepresentation rep(c.alphabet(), c.cap(), 1);
    for (int letter = 0; letter <= c.alphabet().m; ++letter) {
        FieldTerm term{Series<Rational>::letter(c.alphabet(), c.cap(), letter),
                       TensorFunctional::unit(c.alphabet(), c.cap(), 1)};
        rep.field(letter).add_term(1, std::move(term));
    }
    rep.add_output(embed(c, 1, 1));
    return rep;
}

}  // namespace cfs
