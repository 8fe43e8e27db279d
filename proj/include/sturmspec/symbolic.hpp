#pragma once

// Finite-alphabet combinatorics: words, substitutions, fixed points, factors
// and frequencies.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace sturmspec {

using Symbol = std::uint8_t;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A finite word over {0, ..., alphabet_size-1}.
class Word {
public:
    Word() = default;
    explicit Word(std::size_t alphabet_size) : alphabet_size_(alphabet_size) {}
    Word(std::vector<Symbol> symbols, std::size_t alphabet_size)
        : symbols_(std::move(symbols)), alphabet_size_(alphabet_size) {
        if (alphabet_size_ == 0 || alphabet_size_ > 256)
            throw Error(ErrorKind::invalid_input, "symbolic", "alphabet_size", "alphabet size must be in [1, 256]");
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] >= alphabet_size_)
                throw Error(ErrorKind::invalid_input, "symbolic", "word",
                            "symbol at position " + std::to_string(i) + " outside alphabet");
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::span<const Symbol> view() const noexcept { return symbols_; }

    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    Word& operator+=(const Word& other) {
        symbols_.insert(symbols_.end(), other.symbols_.begin(), other.symbols_.end());
        alphabet_size_ = std::max(alphabet_size_, other.alphabet_size_);
        return *this;
    }
    friend Word operator+(Word a, const Word& b) { return a += b; }

    /// w^k; the zero power is the empty word.
    Word power(std::size_t k) const {
        Word out(alphabet_size_);
        out.symbols_.reserve(symbols_.size() * k);
        for (std::size_t i = 0; i < k; ++i)
            out.symbols_.insert(out.symbols_.end(), symbols_.begin(), symbols_.end());
        return out;
    }

    Word slice(std::size_t pos, std::size_t len) const {
        if (pos + len > symbols_.size())
            throw Error(ErrorKind::window, "symbolic", "len", "slice exceeds word length");
        return Word(std::vector<Symbol>(symbols_.begin() + pos, symbols_.begin() + pos + len), alphabet_size_);
    }

    void push_back(Symbol s) {
        if (s >= alphabet_size_)
            throw Error(ErrorKind::invalid_input, "symbolic", "symbol", "symbol outside alphabet");
        symbols_.push_back(s);
    }
    void truncate(std::size_t len) {
        if (len < symbols_.size()) symbols_.resize(len);
    }

    bool is_prefix_of(const Word& other) const {
        return size() <= other.size() && std::equal(begin(), end(), other.begin());
    }

    friend bool operator==(const Word& a, const Word& b) { return a.symbols_ == b.symbols_; }
    friend auto operator<=>(const Word& a, const Word& b) { return a.symbols_ <=> b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::size_t alphabet_size_ = 2;
};

/// Display alphabet used to print and parse words; symbol i is shown as glyphs[i].
struct Alphabet {
    std::string glyphs;

    static Alphabet binary() { return {"01"}; }
    static Alphabet letters(std::size_t n) { return {std::string("abcdefghijklmnopqrstuvwxyz").substr(0, n)}; }

    std::size_t size() const noexcept { return glyphs.size(); }

    Word parse(std::string_view text) const {
        std::vector<Symbol> out;
        out.reserve(text.size());
        for (char c : text) {
            auto pos = glyphs.find(c);
            if (pos == std::string::npos)
                throw Error(ErrorKind::invalid_input, "symbolic", "word",
                            std::string("symbol '") + c + "' not in alphabet \"" + glyphs + "\"");
            out.push_back(static_cast<Symbol>(pos));
        }
        return Word(std::move(out), glyphs.size());
    }

    std::string format(const Word& w) const {
        std::string out;
        out.reserve(w.size());
        for (Symbol s : w) {
            if (s >= glyphs.size())
                throw Error(ErrorKind::invalid_input, "symbolic", "word", "symbol has no glyph");
            out.push_back(glyphs[s]);
        }
        return out;
    }
};

inline std::string to_string(const Word& w) {
    return w.alphabet_size() <= 2 ? Alphabet::binary().format(w) : Alphabet::letters(w.alphabet_size()).format(w);
}

/// A map from symbols to non-empty words, extended homomorphically.
class Substitution {
public:
    explicit Substitution(std::vector<Word> images) : images_(std::move(images)) {
        if (images_.empty())
            throw Error(ErrorKind::invalid_input, "symbolic", "substitution", "no images");
        for (std::size_t a = 0; a < images_.size(); ++a) {
            if (images_[a].empty())
                throw Error(ErrorKind::invalid_input, "symbolic", "substitution",
                            "image of symbol " + std::to_string(a) + " is empty");
            for (Symbol s : images_[a])
                if (s >= images_.size())
                    throw Error(ErrorKind::invalid_input, "symbolic", "substitution",
                                "image of symbol " + std::to_string(a) + " leaves the alphabet");
        }
    }

    std::size_t alphabet_size() const noexcept { return images_.size(); }
    const Word& image(Symbol a) const { return images_.at(a); }
    const std::vector<Word>& images() const noexcept { return images_; }

    /// Smallest k <= max_power with every S^k(a) containing every symbol, or 0.
    std::size_t primitivity_power(std::size_t max_power = 16) const {
        const std::size_t n = alphabet_size();
        // reach[a][b]: b occurs in S^k(a), tracked as a boolean matrix power.
        std::vector<std::vector<bool>> step(n, std::vector<bool>(n, false));
        for (std::size_t a = 0; a < n; ++a)
            for (Symbol b : images_[a]) step[a][b] = true;
        auto reach = step;
        for (std::size_t k = 1; k <= max_power; ++k) {
            bool full = std::all_of(reach.begin(), reach.end(),
                                    [](const auto& row) { return std::all_of(row.begin(), row.end(), std::identity{}); });
            if (full) return k;
            std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t m = 0; m < n; ++m)
                    if (reach[a][m])
                        for (std::size_t b = 0; b < n; ++b)
                            if (step[m][b]) next[a][b] = true;
            reach = std::move(next);
        }
        return 0;
    }

private:
    std::vector<Word> images_;
};

/// Parses "a:ab,b:a". Keys define the display alphabet in order of appearance.
inline std::pair<Substitution, Alphabet> parse_substitution(std::string_view text) {
    std::vector<std::pair<char, std::string>> rules;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item.size() < 2 || item[1] != ':')
            throw Error(ErrorKind::invalid_input, "symbolic", "substitution",
                        "expected rules like a:ab, got \"" + std::string(item) + "\"");
        rules.emplace_back(item[0], std::string(item.substr(2)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    Alphabet alphabet;
    for (const auto& [key, _] : rules) {
        if (alphabet.glyphs.find(key) != std::string::npos)
            throw Error(ErrorKind::invalid_input, "symbolic", "substitution",
                        std::string("duplicate rule for '") + key + "'");
        alphabet.glyphs.push_back(key);
    }
    std::vector<Word> images;
    for (const auto& [_, image] : rules) images.push_back(alphabet.parse(image));
    return {Substitution(std::move(images)), alphabet};
}

inline std::string format_substitution(const Substitution& s, const Alphabet& alphabet) {
    std::string out;
    for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
        if (a) out += ',';
        out += alphabet.glyphs.at(a);
        out += ':';
        out += alphabet.format(s.image(static_cast<Symbol>(a)));
    }
    return out;
}

/// The classical primitive substitutions, by lower-case name.
inline const std::map<std::string, std::string>& substitution_registry() {
    static const std::map<std::string, std::string> registry{
        {"fibonacci", "a:ab,b:a"},
        {"period-doubling", "a:ab,b:aa"},
        {"binary-non-pisot", "a:ab,b:aaa"},
        {"thue-morse", "a:ab,b:ba"},
        {"rudin-shapiro", "a:ab,b:ac,c:db,d:dc"},
    };
    return registry;
}

inline std::pair<Substitution, Alphabet> named_substitution(const std::string& name) {
    const auto& reg = substitution_registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw Error(ErrorKind::invalid_input, "symbolic", "substitution", "unknown substitution '" + name + "'");
    return parse_substitution(it->second);
}

/// S^power(w).
inline Word substitute(const Substitution& s, const Word& w, std::size_t power = 1) {
    if (power == 0)
        throw Error(ErrorKind::invalid_input, "symbolic", "power", "power must be >= 1");
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] >= s.alphabet_size())
            throw Error(ErrorKind::invalid_input, "symbolic", "word",
                        "symbol at position " + std::to_string(i) + " outside substitution alphabet");
    Word cur = w;
    for (std::size_t k = 0; k < power; ++k) {
        std::vector<Symbol> next;
        for (Symbol a : cur) {
            const auto& img = s.image(a).symbols();
            next.insert(next.end(), img.begin(), img.end());
        }
        cur = Word(std::move(next), s.alphabet_size());
    }
    return cur;
}

/// Prefix of u = lim S^n(seed) with at least min_length symbols.
inline Word fixed_point_prefix(const Substitution& s, Symbol seed, std::size_t min_length) {
    constexpr std::size_t max_stalled_rounds = 64;
    if (seed >= s.alphabet_size())
        throw Error(ErrorKind::invalid_input, "symbolic", "seed", "seed outside alphabet");
    if (s.image(seed)[0] != seed)
        throw Error(ErrorKind::invalid_input, "symbolic", "seed", "S(seed) does not start with seed; no fixed point");
    Word cur(std::vector<Symbol>{seed}, s.alphabet_size());
    std::size_t stalled = 0;
    while (cur.size() < min_length) {
        // Only the first min_length symbols of S(cur) are needed.
        std::vector<Symbol> next;
        for (Symbol a : cur) {
            const auto& img = s.image(a).symbols();
            next.insert(next.end(), img.begin(), img.end());
            if (next.size() >= min_length) break;
        }
        if (next.size() <= cur.size()) {
            if (++stalled >= max_stalled_rounds)
                throw Error(ErrorKind::numeric, "symbolic", "seed",
                            "fixed-point iteration does not grow (|S^n(seed)| bounded)");
        } else {
            stalled = 0;
        }
        cur = Word(std::move(next), s.alphabet_size());
    }
    return cur;
}

/// All distinct length-L contiguous subwords of w, in lexicographic order.
inline std::set<Word> factor_set(const Word& w, std::size_t L) {
    if (L == 0 || L > w.size())
        throw Error(ErrorKind::window, "symbolic", "L", "factor length must be in [1, |w|]");
    std::set<Word> out;
    for (std::size_t i = 0; i + L <= w.size(); ++i) out.insert(w.slice(i, L));
    return out;
}

/// Start positions of every (overlapping) occurrence of target in w.
inline std::vector<std::size_t> occurrences(std::span<const Symbol> w, std::span<const Symbol> target) {
    std::vector<std::size_t> out;
    if (target.empty() || target.size() > w.size()) return out;
    const std::boyer_moore_horspool_searcher searcher(target.begin(), target.end());
    auto it = w.begin();
    while (true) {
        auto [hit, hit_end] = searcher(it, w.end());
        if (hit == w.end()) break;
        out.push_back(static_cast<std::size_t>(hit - w.begin()));
        it = hit + 1;
    }
    return out;
}

struct FrequencyEstimate {
    Word target;
    std::size_t prefix_length = 0;
    std::size_t occurrence_count = 0;

    std::size_t window_count() const noexcept { return prefix_length - target.size() + 1; }
    Rational density() const { return Rational(occurrence_count, window_count()); }
    double density_value() const {
        return static_cast<double>(occurrence_count) / static_cast<double>(window_count());
    }
};

/// Overlapping occurrence count of target in w, with density count / (|w| - |target| + 1).
inline FrequencyEstimate frequency(const Word& w, const Word& target) {
    if (target.empty())
        throw Error(ErrorKind::invalid_input, "symbolic", "target", "empty target word");
    if (target.size() > w.size())
        throw Error(ErrorKind::window, "symbolic", "target", "target longer than word");
    return {target, w.size(), occurrences(w.view(), target.view()).size()};
}

/// True iff w(k) = w(k+n) for 1 <= k <= n.
inline bool detect_square_prefix(std::span<const Symbol> w, std::size_t n) {
    if (n == 0 || w.size() < 2 * n)
        throw Error(ErrorKind::window, "symbolic", "n", "need |w| >= 2n with n >= 1");
    return std::equal(w.begin(), w.begin() + n, w.begin() + n);
}
inline bool detect_square_prefix(const Word& w, std::size_t n) { return detect_square_prefix(w.view(), n); }

/// Start positions of the palindromic length-L factors of w.
inline std::vector<std::size_t> detect_palindromes(const Word& w, std::size_t L) {
    if (L == 0 || L > w.size())
        throw Error(ErrorKind::window, "symbolic", "L", "palindrome length must be in [1, |w|]");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + L <= w.size(); ++i) {
        bool pal = true;
        for (std::size_t a = i, b = i + L - 1; a < b; ++a, --b)
            if (w[a] != w[b]) { pal = false; break; }
        if (pal) out.push_back(i);
    }
    return out;
}

} // namespace sturmspec
