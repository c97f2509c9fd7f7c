#pragma once

#include "cfs/representation.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cfs {

/// One node of a network: a single-input single-output series. Node i may
/// only use the drift letter x_0 and its own input letter x_i.
struct NodeSpec {
    int index = 1;
    Series<Rational> series;
};

struct WeightMatrix {
    std::vector<std::vector<Rational>> entries;

    int dimension() const { return static_cast<int>(entries.size()); }
    const Rational& at(int i, int j) const { return entries[i - 1][j - 1]; }

    static WeightMatrix zero(int m) {
        WeightMatrix M;
        M.entries.assign(m, std::vector<Rational>(m, Rational(0)));
        return M;
    }
};

enum class InterconnectionKind { additive, multiplicative, cascade };

inline const char* to_string(InterconnectionKind kind) {
    switch (kind) {
        case InterconnectionKind::additive: return "additive";
        case InterconnectionKind::multiplicative: return "multiplicative";
        case InterconnectionKind::cascade: return "cascade";
    }
    return "?";
}

/// A validated network description: node series (already truncated to the
/// working degree), weight matrix, and interconnection kind. For the
/// cascade kind the two nodes are the outer and inner series of a chain
/// and the weight matrix is ignored.
struct NetworkSpec {
    int m = 1;
    InterconnectionKind kind = InterconnectionKind::additive;
    int degree = 0;
    WeightMatrix M;
    std::vector<NodeSpec> nodes;

    Alphabet alphabet() const {
        return kind == InterconnectionKind::cascade ? Alphabet(1) : Alphabet(m);
    }
};

namespace detail {

inline void check_node_letters(const NodeSpec& node, const std::string& path) {
    for (const auto& [w, a] : node.series.terms()) {
        for (std::size_t i = 0; i < w.length(); ++i) {
            const int letter = w.letter(i);
            if (letter != 0 && letter != node.index)
                throw validation_error(path + ": node " + std::to_string(node.index) +
                                       " uses foreign letter x" + std::to_string(letter));
        }
    }
}

}  // namespace detail

/// Additive interconnection u_i = v_i + sum_j M_ij y_j. The drift field of
/// slot i picks up one x_i summand per nonzero weight, multiplied by the
/// corresponding node's output evaluation; each external input acts on its
/// own slot alone.
inline FormalRepresentation build_additive(const NetworkSpec& spec) {
    if (spec.kind != InterconnectionKind::additive)
        throw validation_error("build_additive requires an additive spec");
    const Alphabet a = spec.alphabet();
    const int m = spec.m;
    const int cap = spec.degree;
    FormalRepresentation rep(a, cap, m);
    const TensorFunctional unit = TensorFunctional::unit(a, cap, m);
    for (int i = 1; i <= m; ++i) {
        rep.field(0).add_term(i, FieldTerm{Series<Rational>::letter(a, cap, 0), unit});
        for (int j = 1; j <= m; ++j) {
            const Rational& weight = spec.M.at(i, j);
            if (weight == Rational(0)) continue;
            rep.field(0).add_term(
                i, FieldTerm{Series<Rational>::letter(a, cap, i),
                             scale(weight, embed(spec.nodes[j - 1].series, j, m))});
        }
        rep.field(i).add_term(i, FieldTerm{Series<Rational>::letter(a, cap, i), unit});
    }
    for (int k = 1; k <= m; ++k) rep.add_output(embed(spec.nodes[k - 1].series, k, m));
    return rep;
}

/// Multiplicative interconnection u_i = v_i * prod_j M_ij y_j. Every slot
/// drifts plainly; input letter x_i acts on slot i weighted by the full
/// product of weighted node outputs, taken literally over all j, so a zero
/// weight annihilates node i's input path.
inline FormalRepresentation build_multiplicative(const NetworkSpec& spec) {
    if (spec.kind != InterconnectionKind::multiplicative)
        throw validation_error("build_multiplicative requires a multiplicative spec");
    const Alphabet a = spec.alphabet();
    const int m = spec.m;
    const int cap = spec.degree;
    FormalRepresentation rep(a, cap, m);
    const TensorFunctional unit = TensorFunctional::unit(a, cap, m);
    for (int j = 1; j <= m; ++j)
        rep.field(0).add_term(j, FieldTerm{Series<Rational>::letter(a, cap, 0), unit});
    for (int i = 1; i <= m; ++i) {
        TensorTerm product;
        product.scalar = Rational(1);
        for (int j = 1; j <= m; ++j) {
            product.scalar = Rational(product.scalar * spec.M.at(i, j));
            product.slots.push_back(spec.nodes[j - 1].series);
        }
        TensorFunctional coeff(a, cap, m);
        coeff.add_term(std::move(product));
        rep.field(i).add_term(i, FieldTerm{Series<Rational>::letter(a, cap, i), std::move(coeff)});
    }
    for (int k = 1; k <= m; ++k) rep.add_output(embed(spec.nodes[k - 1].series, k, m));
    return rep;
}

/// Two-node chain: the inner system drives the outer one's input. Slot 1
/// carries the inner state (driven by the external input), slot 2 the outer
/// state whose input channel is the inner output evaluation; the single
/// output reads the outer series on slot 2.
inline FormalRepresentation build_cascade(const Series<Rational>& outer,
                                          const Series<Rational>& inner) {
    const Alphabet a(1);
    if (outer.alphabet().m != 1 || inner.alphabet().m != 1)
        throw validation_error("cascade nodes must be single-input series over {x0, x1}");
    const int cap = std::min(outer.cap(), inner.cap());
    const Series<Rational> outer_t = truncate(outer, cap);
    const Series<Rational> inner_t = truncate(inner, cap);
    FormalRepresentation rep(a, cap, 2);
    const TensorFunctional unit = TensorFunctional::unit(a, cap, 2);
    rep.field(0).add_term(1, FieldTerm{Series<Rational>::letter(a, cap, 0), unit});
    rep.field(0).add_term(2, FieldTerm{Series<Rational>::letter(a, cap, 0), unit});
    rep.field(0).add_term(
        2, FieldTerm{Series<Rational>::letter(a, cap, 1), embed(inner_t, 1, 2)});
    rep.field(1).add_term(1, FieldTerm{Series<Rational>::letter(a, cap, 1), unit});
    rep.add_output(embed(outer_t, 2, 2));
    return rep;
}

/// Builds the representation matching the spec's interconnection kind.
inline FormalRepresentation build(const NetworkSpec& spec) {
    switch (spec.kind) {
        case InterconnectionKind::additive: return build_additive(spec);
        case InterconnectionKind::multiplicative: return build_multiplicative(spec);
        case InterconnectionKind::cascade:
            return build_cascade(spec.nodes[0].series, spec.nodes[1].series);
    }
    throw validation_error("unknown interconnection kind");
}

/// Number of generating series the network exposes.
inline int output_count(const NetworkSpec& spec) {
    return spec.kind == InterconnectionKind::cascade ? 1 : spec.m;
}

/// sum_k k! x_letter^k, truncated at N.
inline Series<Rational> builtin_factorial_geometric(Alphabet a, int letter, int N) {
    if (letter < 1 || letter > a.m)
        throw validation_error("builtin series letter x" + std::to_string(letter) +
                               " is not an input letter of the alphabet");
    Series<Rational> out(a, N);
    Rational factorial(1);
    Word w;
    out.set(w, Rational(1));
    for (int k = 1; k <= N; ++k) {
        factorial = Rational(factorial * Rational(k));
        w = w.appended(letter);
        out.set(w, factorial);
    }
    return out;
}

namespace detail {

[[noreturn]] inline void spec_error(const std::string& path, const std::string& what) {
    throw validation_error(path + ": " + what);
}

inline const nlohmann::json& member(const nlohmann::json& doc, const std::string& path,
                                    const char* key) {
    if (!doc.is_object()) spec_error(path, "expected an object");
    auto it = doc.find(key);
    if (it == doc.end()) spec_error(path, std::string("missing required key '") + key + "'");
    return *it;
}

inline int int_member(const nlohmann::json& doc, const std::string& path, const char* key) {
    const nlohmann::json& v = member(doc, path, key);
    if (!v.is_number_integer()) spec_error(path + "." + key, "expected an integer");
    return v.get<int>();
}

inline Series<Rational> parse_series(const nlohmann::json& doc, const std::string& path,
                                     Alphabet alphabet, int degree) {
    if (!doc.is_object()) spec_error(path, "expected a series object");
    if (doc.contains("builtin")) {
        const nlohmann::json& name = doc.at("builtin");
        if (!name.is_string()) spec_error(path + ".builtin", "expected a string");
        if (name.get<std::string>() != "factorial_geometric")
            spec_error(path + ".builtin", "unknown builtin '" + name.get<std::string>() + "'");
        const int letter = int_member(doc, path, "letter");
        if (letter < 1 || letter > alphabet.m)
            spec_error(path + ".letter", "letter x" + std::to_string(letter) +
                                             " is not an input letter of the alphabet");
        return builtin_factorial_geometric(alphabet, letter, degree);
    }
    const nlohmann::json& terms = member(doc, path, "terms");
    if (!terms.is_array()) spec_error(path + ".terms", "expected an array");
    Series<Rational> out(alphabet, degree);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tpath = path + ".terms[" + std::to_string(i) + "]";
        const nlohmann::json& entry = terms[i];
        if (!entry.is_object()) spec_error(tpath, "expected an object");
        const nlohmann::json& wtext = member(entry, tpath, "word");
        const nlohmann::json& ctext = member(entry, tpath, "coeff");
        if (!wtext.is_string()) spec_error(tpath + ".word", "expected a string");
        if (!ctext.is_string()) spec_error(tpath + ".coeff", "expected a string (\"p\" or \"p/q\")");
        Word w;
        try {
            w = parse_word(wtext.get<std::string>(), alphabet);
        } catch (const validation_error& e) {
            spec_error(tpath + ".word", e.what());
        }
        Rational c;
        try {
            c = parse_rational(ctext.get<std::string>());
        } catch (const validation_error& e) {
            spec_error(tpath + ".coeff", e.what());
        }
        out.accumulate(w, c);  // words beyond the degree are truncated away
    }
    return out;
}

}  // namespace detail

/// Parses and validates a network document. Builtin node series are
/// expanded and every node series is truncated to the working degree. The
/// optional degree override replaces the document's degree before
/// expansion.
inline NetworkSpec parse_network_spec(const nlohmann::json& doc,
                                      std::optional<int> degree_override = std::nullopt) {
    const std::string root = "$";
    NetworkSpec spec;
    spec.m = detail::int_member(doc, root, "m");
    if (spec.m < 1) detail::spec_error(root + ".m", "need at least one node (m >= 1)");
    const nlohmann::json& kind = detail::member(doc, root, "kind");
    if (!kind.is_string()) detail::spec_error(root + ".kind", "expected a string");
    const std::string kind_text = kind.get<std::string>();
    if (kind_text == "additive")
        spec.kind = InterconnectionKind::additive;
    else if (kind_text == "multiplicative")
        spec.kind = InterconnectionKind::multiplicative;
    else if (kind_text == "cascade")
        spec.kind = InterconnectionKind::cascade;
    else
        detail::spec_error(root + ".kind",
                           "expected \"additive\", \"multiplicative\" or \"cascade\"");
    spec.degree = detail::int_member(doc, root, "degree");
    if (degree_override) spec.degree = *degree_override;
    if (spec.degree < 0) detail::spec_error(root + ".degree", "degree must be nonnegative");

    const bool cascade = spec.kind == InterconnectionKind::cascade;
    if (cascade && spec.m != 2)
        detail::spec_error(root + ".m", "cascade networks have exactly two nodes (m = 2)");

    if (cascade) {
        spec.M = WeightMatrix::zero(spec.m);  // ignored for chains
    } else {
        const nlohmann::json& M = detail::member(doc, root, "M");
        if (!M.is_array() || static_cast<int>(M.size()) != spec.m)
            detail::spec_error(root + ".M", "expected an array of " + std::to_string(spec.m) +
                                                " rows");
        spec.M = WeightMatrix::zero(spec.m);
        for (int i = 0; i < spec.m; ++i) {
            const std::string rpath = root + ".M[" + std::to_string(i) + "]";
            const nlohmann::json& row = M[i];
            if (!row.is_array() || static_cast<int>(row.size()) != spec.m)
                detail::spec_error(rpath,
                                   "expected a row of " + std::to_string(spec.m) + " entries");
            for (int j = 0; j < spec.m; ++j) {
                const nlohmann::json& entry = row[j];
                if (!entry.is_string())
                    detail::spec_error(rpath + "[" + std::to_string(j) + "]",
                                       "expected a string coefficient (\"p\" or \"p/q\")");
                try {
                    spec.M.entries[i][j] = parse_rational(entry.get<std::string>());
                } catch (const validation_error& e) {
                    detail::spec_error(rpath + "[" + std::to_string(j) + "]", e.what());
                }
            }
        }
    }

    const nlohmann::json& nodes = detail::member(doc, root, "nodes");
    if (!nodes.is_array() || static_cast<int>(nodes.size()) != spec.m)
        detail::spec_error(root + ".nodes",
                           "expected " + std::to_string(spec.m) + " node entries");
    const Alphabet alphabet = spec.alphabet();
    for (int i = 0; i < spec.m; ++i) {
        const std::string npath = root + ".nodes[" + std::to_string(i) + "]";
        NodeSpec node{i + 1, detail::parse_series(detail::member(nodes[i], npath, "series"),
                                                  npath + ".series", alphabet, spec.degree)};
        if (!cascade) detail::check_node_letters(node, npath + ".series");
        spec.nodes.push_back(std::move(node));
    }
    return spec;
}

inline NetworkSpec parse_network_spec_text(const std::string& text,
                                           std::optional<int> degree_override = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_network_spec(doc, degree_override);
}

}  // namespace cfs
