#pragma once

// Circle-rotation potentials v_theta(n) = lambda * chi_[1-beta,1)(alpha n + theta mod 1),
// evaluated in exact rational arithmetic with alpha replaced by a convergent.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/integer/common_factor_rt.hpp>

#include "potential.hpp"
#include "sturmian.hpp"

namespace sturmspec {

struct CircleParams {
    Rational alpha;
    Rational beta;
    double lambda = 1.0;
    /// Orbit points closer than this to 0 or 1-beta (but not on them) abort evaluation.
    Rational epsilon;
    /// Largest |n| that may be evaluated with this approximant.
    long long index_limit = 0;

    /// alpha replaced by the first convergent with q_N > precision_factor * max_index.
    static CircleParams from_cf(const CfSpec& cf, Rational beta, double lambda, long long max_index,
                                long long precision_factor = 100) {
        if (max_index < 1 || precision_factor < 1)
            throw Error(ErrorKind::invalid_input, "circlemap", "max_index", "must be positive");
        auto expansion = cf.until_denominator_exceeds(BigInt(precision_factor) * max_index);
        const std::size_t N = expansion.depth();
        CircleParams p;
        p.alpha = expansion.convergent(N);
        p.beta = std::move(beta);
        p.lambda = lambda;
        p.epsilon = Rational(1, 10 * expansion.q(N));
        p.index_limit = max_index;
        p.validate();
        return p;
    }

    /// The Sturmian case beta = alpha (same approximant for both).
    static CircleParams sturmian(const CfSpec& cf, double lambda, long long max_index, long long precision_factor = 100) {
        auto p = from_cf(cf, Rational(1, 2), lambda, max_index, precision_factor);
        p.beta = p.alpha;
        return p;
    }

    /// Exact rational alpha (tests); index_limit derived from the denominator.
    static CircleParams exact(Rational alpha, Rational beta, double lambda) {
        CircleParams p;
        p.alpha = std::move(alpha);
        p.beta = std::move(beta);
        p.lambda = lambda;
        const BigInt den = denominator(p.alpha);
        p.epsilon = Rational(1, 10 * den);
        p.index_limit = static_cast<long long>(den / 100);
        p.validate();
        return p;
    }

    void validate() const {
        if (!(beta > 0 && beta < 1))
            throw Error(ErrorKind::invalid_input, "circlemap", "beta", "beta must lie in (0,1)");
        if (!(alpha > 0 && alpha < 1))
            throw Error(ErrorKind::invalid_input, "circlemap", "alpha", "alpha must lie in (0,1)");
        if (epsilon < 0)
            throw Error(ErrorKind::invalid_input, "circlemap", "precision", "guard must be non-negative");
    }
};

inline Rational parse_rational(const std::string& text, const std::string& parameter) {
    const auto bad = [&] {
        return Error(ErrorKind::invalid_input, "circlemap", parameter, "malformed rational \"" + text + "\"");
    };
    // Decimal digits only; leading zeros must not switch BigInt's parser to octal.
    const auto integer = [&](std::string digits) {
        bool negative = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            negative = digits[0] == '-';
            digits.erase(0, 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
        const auto nz = digits.find_first_not_of('0');
        BigInt v(nz == std::string::npos ? std::string("0") : digits.substr(nz));
        return negative ? BigInt(-v) : v;
    };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt den = integer(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(integer(text.substr(0, slash)), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(integer(text));
    const std::string fraction = text.substr(dot + 1);
    if (fraction.empty() || fraction.find_first_not_of("0123456789") != std::string::npos) throw bad();
    BigInt den = 1;
    for (std::size_t i = 0; i < fraction.size(); ++i) den *= 10;
    const std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    const BigInt w = whole.empty() || whole == "-" || whole == "+" ? BigInt(0) : integer(whole);
    const Rational magnitude = Rational(negative ? BigInt(-w) : w) + Rational(integer(fraction), den);
    return negative ? Rational(-magnitude) : magnitude;
}

inline Rational frac(const Rational& x) {
    BigInt n = numerator(x), d = denominator(x);
    BigInt r = n % d;
    if (r < 0) r += d;
    return Rational(r, d);
}

namespace detail {

/// Integer model of the orbit alpha n + theta on Z / D Z.
class Orbit {
public:
    Orbit(const CircleParams& p, const Rational& theta) : limit_(p.index_limit) {
        const Rational t = frac(theta);
        D_ = boost::integer::lcm(boost::integer::lcm(denominator(p.alpha), denominator(t)), denominator(p.beta));
        step_ = numerator(p.alpha) * (D_ / denominator(p.alpha)) % D_;
        start_ = numerator(t) * (D_ / denominator(t)) % D_;
        cut_ = D_ - numerator(p.beta) * (D_ / denominator(p.beta));
        eps_num_ = numerator(p.epsilon);
        eps_den_ = denominator(p.epsilon);
    }

    const BigInt& modulus() const noexcept { return D_; }
    const BigInt& cut() const noexcept { return cut_; }

    BigInt residue(long long n) const {
        check_index(n);
        BigInt r = (start_ + step_ * n) % D_;
        if (r < 0) r += D_;
        return r;
    }
    BigInt advance(const BigInt& r) const {
        BigInt next = r + step_;
        if (next >= D_) next -= D_;
        return next;
    }

    void check_index(long long n) const {
        if (n > limit_ || n < -limit_)
            throw Error(ErrorKind::numeric, "circlemap", "n=" + std::to_string(n),
                        "index exceeds approximant precision limit " + std::to_string(limit_));
    }

    bool on_boundary(const BigInt& r) const { return r == 0 || r == cut_; }

    /// 0 < distance to {0, 1-beta} <= epsilon.
    bool ambiguous(const BigInt& r) const {
        auto near = [&](const BigInt& target) {
            BigInt d = r > target ? BigInt(r - target) : BigInt(target - r);
            if (D_ - d < d) d = D_ - d;
            return d != 0 && d * eps_den_ <= eps_num_ * D_;
        };
        return near(0) || near(cut_);
    }

    /// [1-beta, 1) membership of r / D in [0,1).
    bool in_interval(const BigInt& r) const { return r >= cut_; }
    /// (1-beta, 1] membership with r / D read in (0,1] (left-limit indicator).
    bool in_interval_left_limit(const BigInt& r) const { return r == 0 || r > cut_; }

private:
    BigInt D_, step_, start_, cut_, eps_num_, eps_den_;
    long long limit_;
};

inline Word evaluate(const detail::Orbit& orbit, long long lo, long long hi, bool left_limit) {
    if (hi < lo) throw Error(ErrorKind::window, "circlemap", "hi", "empty range");
    orbit.check_index(lo);
    orbit.check_index(hi);
    std::vector<Symbol> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    BigInt r = orbit.residue(lo);
    for (long long n = lo; n <= hi; ++n) {
        if (orbit.ambiguous(r))
            throw BoundaryAmbiguity(n, "orbit point within guard distance of an interval endpoint");
        out.push_back((left_limit ? orbit.in_interval_left_limit(r) : orbit.in_interval(r)) ? 1 : 0);
        r = orbit.advance(r);
    }
    return Word(std::move(out), 2);
}

} // namespace detail

/// v_theta on lo..hi.
inline PotentialWindow circle_potential_window(const CircleParams& params, const Rational& theta, long long lo,
                                               long long hi) {
    detail::Orbit orbit(params, theta);
    return PotentialWindow::binary(lo, detail::evaluate(orbit, lo, hi, false), params.lambda, Provenance::circle);
}

enum class BoundaryPoint { at_zero, at_one_minus_beta };

/// omega_0 or omega_{1-beta}: the limit of v_theta as theta approaches the point from the left.
inline PotentialWindow boundary_limit_window(const CircleParams& params, BoundaryPoint which, long long lo,
                                             long long hi) {
    const Rational gamma = which == BoundaryPoint::at_zero ? Rational(0) : Rational(1) - params.beta;
    detail::Orbit orbit(params, gamma);
    return PotentialWindow::binary(lo, detail::evaluate(orbit, lo, hi, true), params.lambda,
                                   which == BoundaryPoint::at_zero ? Provenance::boundary_limit_zero
                                                                   : Provenance::boundary_limit_one_minus_beta);
}

/// Indices n in [-N, N] where alpha n + theta hits 0 or 1-beta exactly.
inline std::vector<long long> discontinuity_indices(const CircleParams& params, const Rational& theta, long long N) {
    detail::Orbit orbit(params, theta);
    std::vector<long long> out;
    BigInt r = orbit.residue(-N);
    for (long long n = -N; n <= N; ++n) {
        if (orbit.on_boundary(r)) out.push_back(n);
        r = orbit.advance(r);
    }
    return out;
}

struct HullComparison {
    std::size_t L = 0;
    std::size_t grid = 0;
    std::size_t prefix_length = 0;
    std::set<Word> factors_v0;   // F1: factors of v_0 on 1..prefix_length
    std::set<Word> factors_grid; // F2: grid windows plus boundary-limit windows
    std::set<Word> missing;      // F1 \ F2
    std::set<Word> extra;        // F2 \ F1
    std::size_t skipped_theta = 0;
    bool subset = false;
};

/// Legal length-L words of v_0 versus those seen across a theta grid and the
/// two boundary-limit sequences.
inline HullComparison hull_factor_comparison(const CircleParams& params, std::size_t L, std::size_t grid,
                                             std::size_t prefix_length) {
    if (L == 0) throw Error(ErrorKind::invalid_input, "circlemap", "L", "L must be >= 1");
    if (grid < 4 * L) throw Error(ErrorKind::invalid_input, "circlemap", "grid", "grid must be >= 4 L");
    if (prefix_length < L) throw Error(ErrorKind::window, "circlemap", "prefix", "prefix shorter than L");
    if (static_cast<long long>(prefix_length) > params.index_limit)
        throw Error(ErrorKind::numeric, "circlemap", "prefix", "prefix exceeds approximant precision");

    HullComparison r;
    r.L = L;
    r.grid = grid;
    r.prefix_length = prefix_length;

    const auto v0 = circle_potential_window(params, Rational(0), 1, static_cast<long long>(prefix_length));
    r.factors_v0 = factor_set(v0.symbols(), L);

    for (std::size_t k = 0; k < grid; ++k) {
        try {
            auto w = circle_potential_window(params, Rational(k, grid), 0, static_cast<long long>(L) - 1);
            r.factors_grid.insert(w.symbols());
        } catch (const BoundaryAmbiguity&) {
            ++r.skipped_theta;
        }
    }

    // Boundary-limit sequences differ from v_0 / v_{1-beta} only near their
    // discontinuity indices; collect every window touching those.
    const long long span = static_cast<long long>(L);
    const long long N = static_cast<long long>(prefix_length);
    const std::pair<BoundaryPoint, Rational> points[] = {{BoundaryPoint::at_zero, Rational(0)},
                                                         {BoundaryPoint::at_one_minus_beta, Rational(1) - params.beta}};
    for (const auto& [which, gamma] : points) {
        for (long long d : discontinuity_indices(params, gamma, N - span)) {
            auto w = boundary_limit_window(params, which, d - span + 1, d + span - 1);
            r.factors_grid.merge(factor_set(w.symbols(), L));
        }
    }

    for (const auto& f : r.factors_v0)
        if (!r.factors_grid.contains(f)) r.missing.insert(f);
    for (const auto& f : r.factors_grid)
        if (!r.factors_v0.contains(f)) r.extra.insert(f);
    r.subset = r.missing.empty();
    return r;
}

/// Smallest n in [1, horizon] with v_theta1(n) != v_theta2(n).
inline std::optional<long long> first_disagreement(const CircleParams& params, const Rational& theta1,
                                                   const Rational& theta2, long long horizon) {
    if (frac(theta1) == frac(theta2)) {
        // Identical sequences; still validate the range.
        detail::Orbit(params, theta1).check_index(horizon);
        return std::nullopt;
    }
    detail::Orbit a(params, theta1), b(params, theta2);
    a.check_index(horizon);
    BigInt ra = a.residue(1), rb = b.residue(1);
    for (long long n = 1; n <= horizon; ++n) {
        if (a.ambiguous(ra) || b.ambiguous(rb))
            throw BoundaryAmbiguity(n, "orbit point within guard distance of an interval endpoint");
        if (a.in_interval(ra) != b.in_interval(rb)) return n;
        ra = a.advance(ra);
        rb = b.advance(rb);
    }
    return std::nullopt;
}

} // namespace sturmspec
