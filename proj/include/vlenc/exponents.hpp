#ifndef VLENC_EXPONENTS_HPP
#define VLENC_EXPONENTS_HPP

// Error exponents of the universal scheme:
//
//   E(R|p) = min { D(P||p) : H(P) >= R }
//   F(R|p) = min_P { [H(P) - R]^+ + D(P||p) }
//
// Both minimizers lie in the tilted family P_s(x) ∝ p(x)^s, so the solvers
// work on that one-parameter curve. grid_oracle() is a brute-force check
// over the discretized simplex that shares nothing with the tilted path.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "vlenc/error.hpp"
#include "vlenc/numeric.hpp"
#include "vlenc/typespace.hpp"

namespace vlenc {

enum class ExponentMethod { tilted, grid };
enum class ExponentKind { E, F };

struct ExponentResult {
    ExtReal value;
    std::optional<Distribution> argmin; // empty when no finite minimizer exists
    ExponentMethod method = ExponentMethod::tilted;
};

struct RateThresholds {
    double H_X = 0.0;
    double H_K = 0.0;
    ExtReal R_star;  // H_X if H_X <  H_K, else +inf
    ExtReal R_star2; // H_X if H_X <= H_K, else +inf
    /// Open interval (H_X, H_K) where both exponents are positive; empty
    /// when H_X >= H_K.
    double window_lo = 0.0;
    double window_hi = 0.0;
    bool window_empty() const { return !(window_lo < window_hi); }
};

namespace detail {

inline constexpr double boundary_tol = 1e-12;

/// P_s ∝ p^s on supp(p). s = 0 gives the uniform law on the support and
/// s = +inf the uniform law on the set of most likely symbols.
inline std::vector<double> tilt(std::span<const double> p, double s)
{
    std::vector<double> out(p.size(), 0.0);
    if (std::isinf(s)) {
        const double pmax = *std::max_element(p.begin(), p.end());
        double count = 0;
        for (double x : p)
            count += (x == pmax);
        for (std::size_t i = 0; i < p.size(); ++i)
            out[i] = p[i] == pmax ? 1.0 / count : 0.0;
        return out;
    }
    double top = -std::numeric_limits<double>::infinity();
    for (double x : p)
        if (x > 0.0)
            top = std::max(top, s * std::log(x));
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            out[i] = std::exp(s * std::log(p[i]) - top);
            total += out[i];
        }
    }
    for (double& x : out)
        x /= total;
    return out;
}

inline double f_objective(std::span<const double> P, std::span<const double> p, double R)
{
    return std::max(entropy(P) - R, 0.0) + kl_divergence(P, p).as_double();
}

/// Bisection for the tilt parameter in [lo, hi] where H(P_s) crosses R.
/// H(P_s) is nonincreasing in s; the returned s keeps H(P_s) >= R when
/// keep_feasible is set, otherwise H(P_s) <= R.
inline double solve_tilt_for_entropy(std::span<const double> p, double R, double lo,
                                     double hi, bool keep_feasible)
{
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (entropy(tilt(p, mid)) >= R)
            lo = mid;
        else
            hi = mid;
    }
    return keep_feasible ? lo : hi;
}

} // namespace detail

inline ExponentResult exponent_E(double R, const Distribution& p)
{
    require(R >= 0.0 && std::isfinite(R), errc::invalid_argument, "rate R must be >= 0");
    const double H = entropy(p);
    if (R <= H)
        return {0.0, p, ExponentMethod::tilted};

    const double log_q = std::log2(static_cast<double>(p.size()));
    const double log_supp = std::log2(static_cast<double>(p.support_size()));
    if (R > log_q + detail::boundary_tol)
        return {ExtReal::infinity(), std::nullopt, ExponentMethod::tilted};
    if (R > log_supp + detail::boundary_tol) {
        // feasible only by charging symbols p never emits
        return {ExtReal::infinity(), Distribution::uniform(p.size()), ExponentMethod::tilted};
    }

    std::vector<double> best;
    if (R >= log_supp)
        best = detail::tilt(p.probs(), 0.0);
    else
        best = detail::tilt(p.probs(),
                            detail::solve_tilt_for_entropy(p.probs(), R, 0.0, 1.0, true));
    const ExtReal value = kl_divergence(best, p.probs());
    return {value, Distribution(std::move(best)), ExponentMethod::tilted};
}

inline ExponentResult exponent_F(double R, const Distribution& p)
{
    require(R >= 0.0 && std::isfinite(R), errc::invalid_argument, "rate R must be >= 0");
    const double H = entropy(p);
    if (R >= H)
        return {0.0, p, ExponentMethod::tilted};

    const auto probs = p.probs();
    // t in [0,1] maps to s = t/(1-t) in [0, +inf]
    auto at = [&](double t) {
        const double s = t >= 1.0 ? std::numeric_limits<double>::infinity() : t / (1.0 - t);
        return detail::tilt(probs, s);
    };
    auto objective = [&](double t) { return detail::f_objective(at(t), probs, R); };

    constexpr int coarse = 2000;
    int best_i = 0;
    double best_val = objective(0.0);
    for (int i = 1; i <= coarse; ++i) {
        const double v = objective(static_cast<double>(i) / coarse);
        if (v < best_val) {
            best_val = v;
            best_i = i;
        }
    }

    double best_t = static_cast<double>(best_i) / coarse;
    {
        double a = std::max(0, best_i - 1) / static_cast<double>(coarse);
        double b = std::min(coarse, best_i + 1) / static_cast<double>(coarse);
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = objective(c), fd = objective(d);
        while (b - a > 1e-12) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = objective(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = objective(d);
            }
        }
        const double t = 0.5 * (a + b);
        const double v = objective(t);
        if (v < best_val) {
            best_val = v;
            best_t = t;
        }
    }

    std::vector<double> best = at(best_t);

    // The optimum sits where H(P_s) = R with s > 1, whenever the family
    // reaches that entropy; solve for it directly and keep the better point.
    const double H_inf = entropy(detail::tilt(probs, std::numeric_limits<double>::infinity()));
    if (H_inf < R) {
        double hi = 2.0;
        while (entropy(detail::tilt(probs, hi)) >= R && hi < 1e12)
            hi *= 2.0;
        const double s = detail::solve_tilt_for_entropy(probs, R, 1.0, hi, false);
        auto cand = detail::tilt(probs, s);
        const double v = detail::f_objective(cand, probs, R);
        if (v < best_val) {
            best_val = v;
            best = std::move(cand);
        }
    }
    return {std::max(best_val, 0.0), Distribution(std::move(best)), ExponentMethod::tilted};
}

inline ExponentResult exponent(ExponentKind kind, double R, const Distribution& p)
{
    return kind == ExponentKind::E ? exponent_E(R, p) : exponent_F(R, p);
}

/// Brute-force minimization over the simplex discretized with the given
/// step (q = 2 or 3). Only grid points are evaluated, so the result bounds
/// the true minimum from above within O(step).
inline ExtReal grid_oracle(double R, const Distribution& p, ExponentKind which, double step)
{
    const unsigned q = p.size();
    require(q == 2 || q == 3, errc::grid_too_large, "grid oracle supports q = 2 or 3 only");
    require(step > 0.0 && step <= 1e-3, errc::invalid_argument, "grid step must be in (0, 1e-3]");
    require(R >= 0.0, errc::invalid_argument, "rate R must be >= 0");
    const long long N = std::llround(1.0 / step);
    const double points = q == 2 ? static_cast<double>(N + 1)
                                 : 0.5 * static_cast<double>(N + 1) * static_cast<double>(N + 2);
    require(points <= 1e8, errc::grid_too_large, "grid has too many points");

    // Self-contained entropy/divergence so the oracle shares no numerics
    // with the solver path.
    auto evaluate = [&](const double* P) {
        double h = 0.0, d = 0.0;
        for (unsigned i = 0; i < q; ++i) {
            if (P[i] <= 0.0)
                continue;
            if (p[i] <= 0.0)
                return std::numeric_limits<double>::infinity();
            h -= P[i] * std::log2(P[i]);
            d += P[i] * (std::log2(P[i]) - std::log2(p[i]));
        }
        if (which == ExponentKind::E)
            return h >= R ? d : std::numeric_limits<double>::infinity();
        return (h > R ? h - R : 0.0) + d;
    };

    double best = std::numeric_limits<double>::infinity();
    double P[3];
    if (q == 2) {
        for (long long i = 0; i <= N; ++i) {
            P[0] = static_cast<double>(i) / N;
            P[1] = static_cast<double>(N - i) / N;
            best = std::min(best, evaluate(P));
        }
    } else {
        for (long long i = 0; i <= N; ++i) {
            for (long long j = 0; i + j <= N; ++j) {
                P[0] = static_cast<double>(i) / N;
                P[1] = static_cast<double>(j) / N;
                P[2] = static_cast<double>(N - i - j) / N;
                best = std::min(best, evaluate(P));
            }
        }
    }
    if (std::isinf(best))
        return ExtReal::infinity();
    return std::max(best, 0.0);
}

inline RateThresholds rate_thresholds(const Distribution& p_X, const Distribution& p_K)
{
    require(p_X.size() == p_K.size(), errc::invalid_argument,
            "source and key must share the alphabet");
    RateThresholds t;
    t.H_X = entropy(p_X);
    t.H_K = entropy(p_K);
    t.R_star = t.H_X < t.H_K ? ExtReal(t.H_X) : ExtReal::infinity();
    t.R_star2 = t.H_X <= t.H_K ? ExtReal(t.H_X) : ExtReal::infinity();
    t.window_lo = t.H_X;
    t.window_hi = t.H_K;
    return t;
}

} // namespace vlenc

#endif // VLENC_EXPONENTS_HPP
