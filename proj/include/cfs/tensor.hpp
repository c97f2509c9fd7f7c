#pragma once

#include "cfs/lie.hpp"
#include "cfs/series.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cfs {

/// One summand scalar * (c_1 (x) ... (x) c_n) of a function on the n-fold
/// group: evaluation at (z_1,...,z_n) multiplies the slotwise scalar
/// products.
struct TensorTerm {
    Rational scalar;
    std::vector<Series<Rational>> slots;
};

/// Finite sum of tensor terms over a fixed slot count. The represented
/// function is only ever evaluated at group-like tuples; that is what makes
/// slotwise shuffle the right product.
class TensorFunctional {
public:
    TensorFunctional(Alphabet alphabet, int cap, int slot_count)
        : alphabet_(alphabet), cap_(cap), slot_count_(slot_count) {
        if (slot_count_ < 1) throw validation_error("tensor functional needs at least one slot");
    }

    static TensorFunctional unit(Alphabet alphabet, int cap, int slot_count) {
        TensorFunctional f(alphabet, cap, slot_count);
        TensorTerm term;
        term.scalar = Rational(1);
        term.slots.assign(slot_count, Series<Rational>::one(alphabet, cap));
        f.terms_.push_back(std::move(term));
        return f;
    }

    const Alphabet& alphabet() const { return alphabet_; }
    int cap() const { return cap_; }
    int slot_count() const { return slot_count_; }
    const std::vector<TensorTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Appends a term; terms with a zero scalar or a zero slot vanish.
    void add_term(TensorTerm term) {
        if (static_cast<int>(term.slots.size()) != slot_count_)
            throw validation_error("tensor term has the wrong slot count");
        if (term.scalar == Rational(0)) return;
        for (Series<Rational>& slot : term.slots) {
            if (!(slot.alphabet() == alphabet_))
                throw validation_error("tensor term slot over a different alphabet");
            if (slot.is_zero()) return;
            if (slot.cap() != cap_) slot = truncate(slot, cap_);
        }
        terms_.push_back(std::move(term));
    }

private:
    Alphabet alphabet_;
    int cap_;
    int slot_count_;
    std::vector<TensorTerm> terms_;
};

/// 1 (x) ... (x) c (x) ... (x) 1 with c in the given slot (1-based).
inline TensorFunctional embed(const Series<Rational>& c, int slot, int slot_count) {
    if (slot < 1 || slot > slot_count)
        throw validation_error("embed slot index out of range");
    TensorFunctional f(c.alphabet(), c.cap(), slot_count);
    TensorTerm term;
    term.scalar = Rational(1);
    term.slots.assign(slot_count, Series<Rational>::one(c.alphabet(), c.cap()));
    term.slots[slot - 1] = c;
    f.add_term(std::move(term));
    return f;
}

inline TensorFunctional add(const TensorFunctional& a, const TensorFunctional& b) {
    if (a.slot_count() != b.slot_count())
        throw validation_error("slot-count mismatch in tensor sum");
    TensorFunctional out(a.alphabet(), std::min(a.cap(), b.cap()), a.slot_count());
    for (const TensorTerm& t : a.terms()) out.add_term(t);
    for (const TensorTerm& t : b.terms()) out.add_term(t);
    return out;
}

inline TensorFunctional scale(const Rational& factor, const TensorFunctional& a) {
    TensorFunctional out(a.alphabet(), a.cap(), a.slot_count());
    if (factor == Rational(0)) return out;
    for (TensorTerm t : a.terms()) {
        t.scalar = Rational(t.scalar * factor);
        out.add_term(std::move(t));
    }
    return out;
}

/// Product of functions on the n-fold group: bilinear over terms, slotwise
/// shuffle inside each pair of terms.
inline TensorFunctional shuffle_functionals(const TensorFunctional& a, const TensorFunctional& b) {
    if (a.slot_count() != b.slot_count())
        throw validation_error("slot-count mismatch in tensor shuffle");
    TensorFunctional out(a.alphabet(), std::min(a.cap(), b.cap()), a.slot_count());
    for (const TensorTerm& ta : a.terms()) {
        for (const TensorTerm& tb : b.terms()) {
            TensorTerm term;
            term.scalar = Rational(ta.scalar * tb.scalar);
            term.slots.reserve(a.slot_count());
            for (int l = 0; l < a.slot_count(); ++l)
                term.slots.push_back(shuffle(ta.slots[l], tb.slots[l]));
            out.add_term(std::move(term));
        }
    }
    return out;
}

/// Evaluation at the identity tuple: only empty-word mass survives.
inline Rational evaluate_identity(const TensorFunctional& f) {
    Rational total(0);
    for (const TensorTerm& t : f.terms()) {
        Rational prod = t.scalar;
        for (const Series<Rational>& slot : t.slots) {
            prod = Rational(prod * slot.coefficient(Word()));
            if (prod == Rational(0)) break;
        }
        total = Rational(total + prod);
    }
    return total;
}

/// Evaluation at a group-like tuple via slotwise scalar products.
inline Rational evaluate_grouplike(const TensorFunctional& f, const std::vector<GroupElement>& z) {
    if (static_cast<int>(z.size()) != f.slot_count())
        throw validation_error("group tuple size does not match slot count");
    Rational total(0);
    for (const TensorTerm& t : f.terms()) {
        Rational prod = t.scalar;
        for (int l = 0; l < f.slot_count() && prod != Rational(0); ++l)
            prod = Rational(prod * scalar_product(t.slots[l], z[l].series()));
        total = Rational(total + prod);
    }
    return total;
}

namespace detail {

inline bool slots_less(const std::vector<Series<Rational>>& a,
                       const std::vector<Series<Rational>>& b) {
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (series_less(a[l], b[l])) return true;
        if (series_less(b[l], a[l])) return false;
    }
    return false;
}

// Scales each slot so its first supported coefficient is 1, folding the
// factors into the term scalar. Makes identical tensors compare equal no
// matter how scalars were distributed across slots.
inline void make_slots_monic(TensorTerm& term) {
    for (Series<Rational>& slot : term.slots) {
        const Rational lead = slot.terms().begin()->second;
        if (lead != Rational(1)) {
            slot = scale(Rational(Rational(1) / lead), slot);
            term.scalar = Rational(term.scalar * lead);
        }
    }
}

}  // namespace detail

/// Canonical form: monic slots, terms sorted, equal slot tuples merged,
/// zero terms dropped. Evaluation-equivalent at every group-like tuple and
/// idempotent.
inline TensorFunctional normalize(const TensorFunctional& f) {
    std::vector<TensorTerm> terms = f.terms();
    for (TensorTerm& t : terms) detail::make_slots_monic(t);
    std::sort(terms.begin(), terms.end(), [](const TensorTerm& a, const TensorTerm& b) {
        return detail::slots_less(a.slots, b.slots);
    });
    TensorFunctional out(f.alphabet(), f.cap(), f.slot_count());
    std::size_t i = 0;
    while (i < terms.size()) {
        Rational total = terms[i].scalar;
        std::size_t j = i + 1;
        while (j < terms.size() && !detail::slots_less(terms[i].slots, terms[j].slots) &&
               !detail::slots_less(terms[j].slots, terms[i].slots)) {
            total = Rational(total + terms[j].scalar);
            ++j;
        }
        if (total != Rational(0)) {
            TensorTerm merged;
            merged.scalar = std::move(total);
            merged.slots = terms[i].slots;
            out.add_term(std::move(merged));
        }
        i = j;
    }
    return out;
}

/// Structural equality of the canonical forms. Deliberately finer than
/// functional equality: linear dependence across distinct slot tuples is
/// not decided.
inline bool operator==(const TensorFunctional& a, const TensorFunctional& b) {
    if (a.slot_count() != b.slot_count() || !(a.alphabet() == b.alphabet())) return false;
    const TensorFunctional na = normalize(a);
    const TensorFunctional nb = normalize(b);
    if (na.terms().size() != nb.terms().size()) return false;
    for (std::size_t i = 0; i < na.terms().size(); ++i) {
        if (na.terms()[i].scalar != nb.terms()[i].scalar) return false;
        for (int l = 0; l < a.slot_count(); ++l)
            if (!(na.terms()[i].slots[l] == nb.terms()[i].slots[l])) return false;
    }
    return true;
}

namespace detail {

template <typename Emit>
void graded_product_rec(const std::vector<std::vector<Series<Rational>>>& graded, std::size_t slot,
                        int used, int budget, std::vector<Series<Rational>>& chosen,
                        const Emit& emit) {
    if (slot == graded.size()) {
        emit(chosen);
        return;
    }
    for (const Series<Rational>& piece : graded[slot]) {
        const int degree = piece.max_degree();
        if (used + degree > budget) continue;
        chosen.push_back(piece);
        graded_product_rec(graded, slot + 1, used + degree, budget, chosen, emit);
        chosen.pop_back();
    }
}

}  // namespace detail

/// Drops all monomial content whose total degree across slots exceeds the
/// budget. Terms are split into homogeneous slot components so the cut is
/// exact; the result is normalized.
inline TensorFunctional prune_total_degree(const TensorFunctional& f, int budget) {
    TensorFunctional out(f.alphabet(), f.cap(), f.slot_count());
    if (budget < 0) return out;
    for (const TensorTerm& t : f.terms()) {
        // Cheap reject: even the lightest monomial is over budget.
        int min_total = 0;
        for (const Series<Rational>& slot : t.slots) min_total += slot.min_degree();
        if (min_total > budget) continue;
        std::vector<std::vector<Series<Rational>>> graded(t.slots.size());
        for (std::size_t l = 0; l < t.slots.size(); ++l) {
            const Series<Rational>& slot = t.slots[l];
            for (int k = slot.min_degree(); k <= slot.max_degree(); ++k) {
                Series<Rational> piece = homogeneous_component(slot, k);
                if (!piece.is_zero()) graded[l].push_back(std::move(piece));
            }
        }
        std::vector<Series<Rational>> chosen;
        chosen.reserve(t.slots.size());
        detail::graded_product_rec(graded, 0, 0, budget, chosen,
                                   [&](const std::vector<Series<Rational>>& slots) {
                                       TensorTerm part;
                                       part.scalar = t.scalar;
                                       part.slots = slots;
                                       out.add_term(std::move(part));
                                   });
    }
    return normalize(out);
}

/// Diagnostic rendering of the canonical form.
inline std::string to_string(const TensorFunctional& f) {
    const TensorFunctional n = normalize(f);
    if (n.is_zero()) return "0";
    std::string out;
    for (const TensorTerm& t : n.terms()) {
        if (!out.empty()) out += "  +  ";
        out += to_string(t.scalar);
        out += " * ";
        for (std::size_t l = 0; l < t.slots.size(); ++l) {
            if (l) out += " (x) ";
            out += '(' + to_string(t.slots[l]) + ')';
        }
    }
    return out;
}

}  // namespace cfs
