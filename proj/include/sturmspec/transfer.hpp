#pragma once

// Transfer-matrix cocycle for u(n+1) + u(n-1) + V(n) u(n) = E u(n).
//
// Single-site matrix A(n) = [[E - V(n), -1], [1, 0]] maps (u(n), u(n-1)) to
// (u(n+1), u(n)); M(E, k, n) = A(n) ... A(k).

#include <array>
#include <cmath>
#include <algorithm>
#include <concepts>
#include <limits>
#include <optional>
#include <map>
#include <utility>

#include "potential.hpp"
#include "sturmian.hpp"

namespace sturmspec {

struct Vec2 {
    double x = 0, y = 0; // (upper, lower) = (u(n+1), u(n))
    double norm() const { return std::hypot(x, y); }
};

struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {}; }
    static Mat2 site(double E, double V) { return {E - V, -1.0, 1.0, 0.0}; }

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    /// Max absolute row sum.
    double norm() const { return std::max(std::abs(a) + std::abs(b), std::abs(c) + std::abs(d)); }

    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
    Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }
};

/// m * exp(log_scale); the product is unimodular. The scale is accumulated in
/// extended precision: over ~10^6 sites it reaches ~10^6, where double round-off
/// in the running sum would dominate the relative error of the product.
struct TransferState {
    Mat2 m;
    long double log_scale = 0.0L;

    static TransferState identity() { return {}; }

    void renormalize() {
        const double n = m.norm();
        if (!(n > 0) || !std::isfinite(n))
            throw Error(ErrorKind::numeric, "operator", "norm", "transfer matrix norm is zero or non-finite");
        m = m.scaled(1.0 / n);
        log_scale += std::log(static_cast<long double>(n));
    }

    /// Left-multiplies by a single-site matrix.
    void push(double E, double V) { m = Mat2::site(E, V) * m; }

    double trace() const { return static_cast<double>(m.trace() * std::exp(log_scale)); }
    double log_norm() const { return static_cast<double>(std::log(m.norm()) + log_scale); }
    double det() const { return static_cast<double>(m.det() * std::exp(2.0L * log_scale)); }
    /// |det - 1| / exp(2 log_scale): the determinant defect relative to the squared
    /// scale, which stays meaningful for hyperbolic products with huge norms.
    double det_drift() const { return static_cast<double>(std::abs(m.det() - std::exp(-2.0L * log_scale))); }
    /// |det - 1| in absolute terms; only informative while the norm stays moderate.
    double det_drift_absolute() const { return static_cast<double>(std::abs(m.det() * std::exp(2.0L * log_scale) - 1.0L)); }
    /// The matrix with its scale applied (may overflow for long hyperbolic products).
    Mat2 matrix() const { return m.scaled(static_cast<double>(std::exp(log_scale))); }

    friend TransferState operator*(const TransferState& l, const TransferState& r) {
        TransferState out{l.m * r.m, l.log_scale + r.log_scale};
        out.renormalize();
        return out;
    }
};

inline constexpr int rescale_period = 32;

/// M(E, k, n) = A(n) ... A(k) for any potential callable V(long long) -> double.
template <class Potential>
    requires std::invocable<const Potential&, long long>
TransferState transfer_product_fn(const Potential& V, double E, long long k, long long n) {
    if (k > n) throw Error(ErrorKind::window, "operator", "k", "need k <= n");
    TransferState t;
    int since = 0;
    for (long long j = k; j <= n; ++j) {
        t.push(E, V(j));
        if (++since == rescale_period) {
            t.renormalize();
            since = 0;
        }
    }
    t.renormalize();
    return t;
}

inline TransferState transfer_product(const PotentialWindow& window, double E, long long k, long long n) {
    if (!window.covers(k, n))
        throw Error(ErrorKind::window, "operator", "range",
                    "[" + std::to_string(k) + "," + std::to_string(n) + "] not inside window [" +
                        std::to_string(window.lo()) + "," + std::to_string(window.hi()) + "]");
    return transfer_product_fn(window, E, k, n);
}

/// Transfer matrix over a word read left to right (first symbol acts first).
inline TransferState word_transfer(const Word& w, const std::vector<double>& symbol_values, double E) {
    TransferState t;
    int since = 0;
    for (Symbol s : w) {
        t.push(E, symbol_values[s]);
        if (++since == rescale_period) {
            t.renormalize();
            since = 0;
        }
    }
    t.renormalize();
    return t;
}

inline TransferState power(TransferState base, std::uint64_t k) {
    TransferState out;
    while (k) {
        if (k & 1) out = base * out;
        k >>= 1;
        if (k) base = base * base;
    }
    return out;
}

/// M_{lambda,alpha,E}(n), the transfer matrix over s_n, through
/// M(s_n) = M(s_{n-2}) M(s_{n-1})^{a_n} and M(s_1) = M(s_{-1}) M(s_0)^{a_1 - 1}.
inline TransferState sturmian_transfer(const ContinuedFraction& cf, double lambda, double E, std::size_t level) {
    if (level > cf.depth())
        throw Error(ErrorKind::depth, "operator", "level", "CF depth below requested level");
    TransferState prev{Mat2::site(E, lambda), 0.0}; // s_{-1} = "1"
    TransferState cur{Mat2::site(E, 0.0), 0.0};     // s_0 = "0"
    for (std::size_t n = 1; n <= level; ++n) {
        TransferState next = n == 1 ? prev * power(cur, cf.a(1) - 1) : prev * power(cur, cf.a(n));
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Traces of M_{lambda,alpha,E}(k) for k = 0..level, from one pass of the recursion.
inline std::vector<double> sturmian_traces(const ContinuedFraction& cf, double lambda, double E, std::size_t level) {
    if (level > cf.depth())
        throw Error(ErrorKind::depth, "operator", "level", "CF depth below requested level");
    std::vector<double> out;
    TransferState prev{Mat2::site(E, lambda), 0.0};
    TransferState cur{Mat2::site(E, 0.0), 0.0};
    out.push_back(cur.trace());
    for (std::size_t n = 1; n <= level; ++n) {
        TransferState next = n == 1 ? prev * power(cur, cf.a(1) - 1) : prev * power(cur, cf.a(n));
        prev = cur;
        cur = next;
        out.push_back(cur.trace());
    }
    return out;
}

struct SolutionTrajectory {
    double energy = 0;
    double u0 = 0, u1 = 0;
    /// u(first_index), u(first_index+1), ...
    long long first_index = 0;
    std::vector<double> u;

    double at(long long n) const {
        if (n < first_index || n >= first_index + static_cast<long long>(u.size()))
            throw Error(ErrorKind::window, "operator", "n", "index " + std::to_string(n) + " outside trajectory");
        return u[static_cast<std::size_t>(n - first_index)];
    }
    long long last_index() const { return first_index + static_cast<long long>(u.size()) - 1; }
    /// U(k) = (u(k+1), u(k)).
    Vec2 state(long long k) const { return {at(k + 1), at(k)}; }
};

/// Solves forward from (u(0), u(1)) through u(hi+1) with u(n+1) = (E - V(n)) u(n) - u(n-1).
inline SolutionTrajectory iterate_solution(const PotentialWindow& window, double E, double u0, double u1) {
    if (u0 == 0.0 && u1 == 0.0)
        throw Error(ErrorKind::invalid_input, "operator", "seed", "degenerate seed (0,0)");
    if (window.lo() > 1 || window.hi() < 1)
        throw Error(ErrorKind::window, "operator", "window", "window must contain index 1");
    SolutionTrajectory s{E, u0, u1, 0, {u0, u1}};
    s.u.reserve(static_cast<std::size_t>(window.hi()) + 2);
    for (long long n = 1; n <= window.hi(); ++n) {
        const double next = (E - window.value(n)) * s.u[n] - s.u[n - 1];
        if (!std::isfinite(next))
            throw Error(ErrorKind::numeric, "operator", "n=" + std::to_string(n), "solution overflowed");
        s.u.push_back(next);
    }
    return s;
}

/// Largest |u(n+1) + u(n-1) + V(n) u(n) - E u(n)| relative to the local solution size.
inline double equation_residual(const SolutionTrajectory& s, const PotentialWindow& window) {
    double worst = 0;
    for (long long n = 1; n < s.last_index(); ++n) {
        const double lhs = s.at(n + 1) + s.at(n - 1) + window.value(n) * s.at(n);
        const double rhs = s.energy * s.at(n);
        const double scale = std::max({std::abs(s.at(n + 1)), std::abs(s.at(n - 1)), std::abs(s.at(n)), 1e-300});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

struct LyapunovEstimate {
    double energy = 0;
    long long steps = 0;
    double gamma_plus = 0;
    double gamma_minus = 0;
    /// |gamma_plus - gamma_minus|, a diagnostic only.
    double forward_backward_gap() const { return std::abs(gamma_plus - gamma_minus); }
};

/// (1/n) ln ||M(E,1,n)|| and (1/n) ln ||M(E,-n,-1)||.
template <class Potential>
    requires std::invocable<const Potential&, long long>
LyapunovEstimate lyapunov_estimate_fn(const Potential& V, double E, long long steps, bool with_backward = true) {
    if (steps < 1000) throw Error(ErrorKind::invalid_input, "operator", "steps", "need at least 1000 steps");
    LyapunovEstimate r{E, steps, 0, 0};
    const auto fwd = transfer_product_fn(V, E, 1, steps);
    r.gamma_plus = fwd.log_norm() / static_cast<double>(steps);
    if (with_backward) {
        const auto bwd = transfer_product_fn(V, E, -steps, -1);
        r.gamma_minus = bwd.log_norm() / static_cast<double>(steps);
    }
    if (!std::isfinite(r.gamma_plus) || !std::isfinite(r.gamma_minus))
        throw Error(ErrorKind::numeric, "operator", "steps", "non-finite Lyapunov estimate");
    return r;
}

inline LyapunovEstimate lyapunov_estimate(const PotentialWindow& window, double E, long long steps) {
    if (!window.covers(-steps, steps))
        throw Error(ErrorKind::window, "operator", "steps", "window must cover [-steps, steps]");
    return lyapunov_estimate_fn(window, E, steps, true);
}

/// Forward exponent only; the window needs to cover [1, steps].
inline LyapunovEstimate lyapunov_estimate_forward(const PotentialWindow& window, double E, long long steps) {
    if (!window.covers(1, steps))
        throw Error(ErrorKind::window, "operator", "steps", "window must cover [1, steps]");
    auto r = lyapunov_estimate_fn(window, E, steps, false);
    r.gamma_minus = std::numeric_limits<double>::quiet_NaN();
    return r;
}

} // namespace sturmspec
