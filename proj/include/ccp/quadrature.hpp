#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "ccp/errors.hpp"

namespace ccp
{

//! Tolerances and panel parameters for composite Gauss-Legendre quadrature.
struct QuadratureSpec
{
    double relative_tolerance = 1e-9;
    double absolute_floor = 1e-15;
    int panel_order = 16;
    int max_panels = 4096;

    // Throws DomainError unless rel in (0, 1e-4], order in [8, 64] and
    // max_panels >= 16.
    void validate() const;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

//! Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
    //! tail[i * n + j] = integral from nodes[i] to 1 of the j-th Lagrange
    //! basis polynomial through the nodes.
    std::vector<double> tail;
};

// Cached rule of the given order (1..64); thread-safe.
GaussLegendreRule const& gauss_legendre(int order);

// Integrals from x to 1 of each Lagrange basis polynomial of the rule,
// for arbitrary x in [-1, 1].
std::vector<double> lagrange_tail_weights(GaussLegendreRule const& rule,
                                          double x);

// Value at x in [-1, 1] of the polynomial through (nodes[j], values[j]),
// barycentric form.
double lagrange_interpolate(GaussLegendreRule const& rule,
                            double const* values, double x);

namespace detail
{
struct AdaptivePanel
{
    double a;
    double b;
    double left;
    double right;
    double err;
    double mass;

    bool operator<(AdaptivePanel const& other) const
    {
        return err < other.err;
    }
};

template<class F>
double rule_sum(F& f, double a, double b, GaussLegendreRule const& rule,
                double& mass)
{
    double const half = 0.5 * (b - a);
    double const mid = 0.5 * (a + b);
    double s = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        double const v = f(mid + half * rule.nodes[i]);
        s += rule.weights[i] * v;
        m += rule.weights[i] * std::abs(v);
    }
    mass = m * std::abs(half);
    return s * half;
}

template<class F>
AdaptivePanel make_panel(F& f, double a, double b, double whole,
                         GaussLegendreRule const& rule)
{
    double const mid = 0.5 * (a + b);
    double ml = 0.0;
    double mr = 0.0;
    double const left = rule_sum(f, a, mid, rule, ml);
    double const right = rule_sum(f, mid, b, rule, mr);
    return {a, b, left, right, std::abs(whole - (left + right)), ml + mr};
}
}  // namespace detail

/*!
 * Adaptive composite Gauss-Legendre quadrature over the given breakpoints.
 *
 * Each panel is estimated by the rule on its two halves; the difference from
 * the single-panel rule is its error estimate. The panel with the largest
 * error is bisected until the summed error meets
 * max(rel * |I|, abs_floor, 64 eps * integral of |f|) or max_panels is hit.
 */
template<class F>
QuadratureResult integrate_adaptive(F&& f, std::span<double const> breaks,
                                    QuadratureSpec const& spec)
{
    spec.validate();
    if (breaks.size() < 2)
        throw DomainError("integrate_adaptive: need at least two breakpoints");
    auto const& rule = gauss_legendre(spec.panel_order);

    std::priority_queue<detail::AdaptivePanel> heap;
    double total = 0.0;
    double err = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double const a = breaks[i];
        double const b = breaks[i + 1];
        if (!(b >= a))
            throw DomainError("integrate_adaptive: breakpoints must increase");
        if (b == a)
            continue;
        double m = 0.0;
        double const whole = detail::rule_sum(f, a, b, rule, m);
        auto panel = detail::make_panel(f, a, b, whole, rule);
        total += panel.left + panel.right;
        err += panel.err;
        mass += panel.mass;
        heap.push(panel);
    }
    auto target = [&] {
        return std::max({spec.relative_tolerance * std::abs(total),
                         spec.absolute_floor,
                         64 * std::numeric_limits<double>::epsilon() * mass});
    };
    int count = static_cast<int>(heap.size());
    while (!heap.empty() && err > target())
    {
        if (count + 1 > spec.max_panels)
        {
            throw ConvergenceError(
                "quadrature did not converge within "
                    + std::to_string(spec.max_panels) + " panels",
                total, err);
        }
        auto top = heap.top();
        heap.pop();
        double const mid = 0.5 * (top.a + top.b);
        auto lp = detail::make_panel(f, top.a, mid, top.left, rule);
        auto rp = detail::make_panel(f, mid, top.b, top.right, rule);
        total += (lp.left + lp.right + rp.left + rp.right)
                 - (top.left + top.right);
        err += lp.err + rp.err - top.err;
        mass += lp.mass + rp.mass - top.mass;
        heap.push(lp);
        heap.push(rp);
        ++count;
    }
    // Recompute the error sum to shed accumulated cancellation.
    double e = 0.0;
    while (!heap.empty())
    {
        e += heap.top().err;
        heap.pop();
    }
    return {total, e, count};
}

//! Integral of f over [a, b].
template<class F>
QuadratureResult integrate_panel(F&& f, double a, double b,
                                 QuadratureSpec const& spec = {})
{
    if (!(a <= b))
        throw DomainError("integrate_panel: require a <= b");
    double const br[2] = {a, b};
    return integrate_adaptive(f, std::span<double const>(br, 2), spec);
}

// Breakpoints with spacing at most a quarter period 2 pi / (4 k); limited to
// max_panels / 2 panels. k = 0 yields {a, b}.
std::vector<double> oscillatory_breaks(double wavenumber, double a, double b,
                                       QuadratureSpec const& spec);

/*!
 * Integral of an oscillatory integrand f over [a, b].
 *
 * f is the complete integrand; wavenumber only controls the initial
 * panelization (quarter-period panels), after which the same adaptive
 * refinement as integrate_panel applies.
 */
template<class F>
QuadratureResult integrate_oscillatory(F&& f, double wavenumber, double a,
                                       double b,
                                       QuadratureSpec const& spec = {})
{
    if (!(a <= b))
        throw DomainError("integrate_oscillatory: require a <= b");
    if (!(wavenumber >= 0.0))
        throw DomainError("integrate_oscillatory: negative wavenumber");
    auto const br = oscillatory_breaks(wavenumber, a, b, spec);
    return integrate_adaptive(f, std::span<double const>(br), spec);
}

//! Integral over [a, inf) through the map x = a + t / (1 - t).
template<class F>
QuadratureResult integrate_semi_infinite(F&& f, double a,
                                         QuadratureSpec const& spec = {})
{
    auto mapped = [&](double t) {
        double const s = 1.0 - t;
        return f(a + t / s) / (s * s);
    };
    return integrate_panel(mapped, 0.0, 1.0, spec);
}

}  // namespace ccp
