#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symbolic.hpp"

namespace sturmspec {

enum class Provenance {
    circle,                    // v_theta for a rational theta
    boundary_limit_zero,       // omega_0, left limit at theta = 0
    boundary_limit_one_minus_beta, // omega_{1-beta}
    substitution,
    standard_word,
    periodic,
};

inline std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::circle: return "circle";
    case Provenance::boundary_limit_zero: return "boundary-limit-0";
    case Provenance::boundary_limit_one_minus_beta: return "boundary-limit-1-beta";
    case Provenance::substitution: return "substitution";
    case Provenance::standard_word: return "standard-word";
    case Provenance::periodic: return "periodic";
    }
    return "unknown";
}

/// Finite slice lo..hi (inclusive) of a two-sided potential V(n) = f(symbol(n)).
class PotentialWindow {
public:
    PotentialWindow(long long lo, Word symbols, std::vector<double> symbol_values, Provenance provenance)
        : lo_(lo), symbols_(std::move(symbols)), f_(std::move(symbol_values)), provenance_(provenance) {
        if (f_.size() < symbols_.alphabet_size())
            throw Error(ErrorKind::invalid_input, "potential", "values", "every symbol needs a value");
    }

    /// Binary window with V = lambda * symbol.
    static PotentialWindow binary(long long lo, Word symbols, double lambda, Provenance provenance) {
        return PotentialWindow(lo, std::move(symbols), {0.0, lambda}, provenance);
    }

    long long lo() const noexcept { return lo_; }
    long long hi() const noexcept { return lo_ + static_cast<long long>(symbols_.size()) - 1; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool covers(long long a, long long b) const noexcept { return a >= lo_ && b <= hi() && a <= b; }
    Provenance provenance() const noexcept { return provenance_; }
    const Word& symbols() const noexcept { return symbols_; }
    const std::vector<double>& symbol_values() const noexcept { return f_; }

    Symbol symbol(long long n) const { return symbols_[index(n)]; }
    double value(long long n) const { return f_[symbols_[index(n)]]; }
    double operator()(long long n) const { return value(n); }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(size());
        for (Symbol s : symbols_) out.push_back(f_[s]);
        return out;
    }

    /// Window re-indexed so that old index `from` becomes `to`.
    PotentialWindow relabeled(long long from, long long to) const {
        PotentialWindow out = *this;
        out.lo_ = lo_ + (to - from);
        return out;
    }

    /// Sub-window lo..hi with the same indexing.
    PotentialWindow restricted(long long a, long long b) const {
        if (!covers(a, b))
            throw Error(ErrorKind::window, "potential", "range",
                        "[" + std::to_string(a) + "," + std::to_string(b) + "] outside window");
        return PotentialWindow(a, symbols_.slice(index(a), static_cast<std::size_t>(b - a + 1)), f_, provenance_);
    }

private:
    std::size_t index(long long n) const {
        if (n < lo_ || n > hi())
            throw Error(ErrorKind::window, "potential", "n", "index " + std::to_string(n) + " outside window");
        return static_cast<std::size_t>(n - lo_);
    }

    long long lo_;
    Word symbols_;
    std::vector<double> f_;
    Provenance provenance_;
};

} // namespace sturmspec
