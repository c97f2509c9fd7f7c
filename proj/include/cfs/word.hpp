#pragma once

#include "cfs/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cfs {

/// The alphabet {x_0, x_1, ..., x_m}. x_0 is the drift letter (unity
/// input), x_1..x_m are the input letters.
struct Alphabet {
    int m = 1;

    Alphabet() = default;
    explicit Alphabet(int input_letters) : m(input_letters) {
        if (m < 1) throw validation_error("alphabet needs at least one input letter (m >= 1)");
    }

    int letter_count() const { return m + 1; }
    bool contains(int letter) const { return 0 <= letter && letter <= m; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// A word over the alphabet: an ordered sequence of letter indices. The
/// empty sequence is the empty word. Ordering is length first, then
/// lexicographic with x_0 smallest, which is the canonical order used for
/// every table and enumeration.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {}

    static Word single(int letter) { return Word({static_cast<std::uint8_t>(letter)}); }

    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int letter(std::size_t at) const { return letters_[at]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }

    bool starts_with(int letter) const { return !letters_.empty() && letters_.front() == letter; }

    /// Word with the first letter removed.
    Word tail() const { return Word({letters_.begin() + 1, letters_.end()}); }

    Word prepended(int letter) const {
        std::vector<std::uint8_t> out;
        out.reserve(letters_.size() + 1);
        out.push_back(static_cast<std::uint8_t>(letter));
        out.insert(out.end(), letters_.begin(), letters_.end());
        return Word(std::move(out));
    }

    Word appended(int letter) const {
        std::vector<std::uint8_t> out = letters_;
        out.push_back(static_cast<std::uint8_t>(letter));
        return Word(std::move(out));
    }

    friend Word operator+(const Word& a, const Word& b) {
        std::vector<std::uint8_t> out = a.letters_;
        out.insert(out.end(), b.letters_.begin(), b.letters_.end());
        return Word(std::move(out));
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

    friend bool operator<(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        return a.letters_ < b.letters_;
    }

private:
    std::vector<std::uint8_t> letters_;
};

/// Parses "x0 x1 x1" style text; the empty (or all-blank) string is the
/// empty word. Unknown tokens and out-of-range letters are reported by name.
inline Word parse_word(const std::string& text, const Alphabet& alphabet) {
    std::vector<std::uint8_t> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::string token = text.substr(start, i - start);
        if (token.size() < 2 || token[0] != 'x')
            throw validation_error("unknown token '" + token + "' in word");
        int index = 0;
        for (std::size_t k = 1; k < token.size(); ++k) {
            if (!std::isdigit(static_cast<unsigned char>(token[k])))
                throw validation_error("unknown token '" + token + "' in word");
            index = index * 10 + (token[k] - '0');
            if (index > 255) throw validation_error("letter '" + token + "' out of range");
        }
        if (!alphabet.contains(index))
            throw validation_error("letter '" + token + "' outside alphabet x0..x" +
                                   std::to_string(alphabet.m));
        letters.push_back(static_cast<std::uint8_t>(index));
    }
    return Word(std::move(letters));
}

/// "x0 x1"; the empty word renders as the empty string.
inline std::string format_word(const Word& word) {
    std::string out;
    for (std::size_t i = 0; i < word.length(); ++i) {
        if (i) out += ' ';
        out += 'x';
        out += std::to_string(word.letter(i));
    }
    return out;
}

/// Like format_word but prints the empty word as "e" for table display.
inline std::string display_word(const Word& word) {
    return word.empty() ? std::string("e") : format_word(word);
}

/// All words of length <= max_length in length-lexicographic order.
inline std::vector<Word> enumerate_words(const Alphabet& alphabet, int max_length) {
    std::vector<Word> out;
    out.emplace_back();
    std::vector<Word> current{Word()};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        next.reserve(current.size() * alphabet.letter_count());
        for (const Word& w : current)
            for (int letter = 0; letter <= alphabet.m; ++letter) next.push_back(w.appended(letter));
        for (const Word& w : next) out.push_back(w);
        current = std::move(next);
    }
    return out;
}

}  // namespace cfs
