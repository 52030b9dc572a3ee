#include "ccp/quadrature.hpp"

#include <array>
#include <cmath>

#include "ccp/specfun.hpp"

namespace ccp
{
namespace
{
constexpr int max_order = 64;

// Legendre P_0..P_kmax at x.
void legendre_values(int kmax, double x, std::vector<double>& out)
{
    out.assign(kmax + 1, 0.0);
    out[0] = 1.0;
    if (kmax >= 1)
        out[1] = x;
    for (int k = 1; k < kmax; ++k)
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1);
}

GaussLegendreRule build_rule(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i)
    {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 1; k < n; ++k)
            {
                double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
                p0 = p1;
                p1 = p2;
            }
            double const pn = n == 1 ? x : p1;
            double const pm = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            double const dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Ascending node order.
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }

    // Lagrange basis l_j(x) = sum_k (2k+1)/2 w_j P_k(x_j) P_k(x); its integral
    // from x to 1 uses (P_{k+1} - P_{k-1}) / (2k+1).
    rule.tail.assign(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> pj;
    std::vector<double> pi_vals;
    for (int i = 0; i < n; ++i)
    {
        legendre_values(n, rule.nodes[i], pi_vals);
        std::vector<double> tail_int(n);
        tail_int[0] = 1.0 - rule.nodes[i];
        for (int k = 1; k < n; ++k)
            tail_int[k] = -(pi_vals[k + 1] - pi_vals[k - 1]) / (2 * k + 1);
        for (int j = 0; j < n; ++j)
        {
            legendre_values(n - 1, rule.nodes[j], pj);
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += 0.5 * (2 * k + 1) * pj[k] * tail_int[k];
            rule.tail[static_cast<std::size_t>(i) * n + j] = rule.weights[j] * s;
        }
    }
    return rule;
}
}  // namespace

void QuadratureSpec::validate() const
{
    if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-4))
        throw DomainError("QuadratureSpec: relative tolerance outside (0, 1e-4]");
    if (!(absolute_floor >= 0.0))
        throw DomainError("QuadratureSpec: negative absolute floor");
    if (panel_order < 8 || panel_order > max_order)
        throw DomainError("QuadratureSpec: panel order outside [8, 64]");
    if (max_panels < 16)
        throw DomainError("QuadratureSpec: max panels below 16");
}

GaussLegendreRule const& gauss_legendre(int order)
{
    static std::array<GaussLegendreRule, max_order + 1> const rules = [] {
        std::array<GaussLegendreRule, max_order + 1> r;
        for (int n = 1; n <= max_order; ++n)
            r[n] = build_rule(n);
        return r;
    }();
    if (order < 1 || order > max_order)
        throw DomainError("gauss_legendre: order outside 1..64");
    return rules[order];
}

std::vector<double> lagrange_tail_weights(GaussLegendreRule const& rule,
                                          double x)
{
    int const n = static_cast<int>(rule.nodes.size());
    std::vector<double> px;
    legendre_values(n, x, px);
    std::vector<double> tail_int(n);
    tail_int[0] = 1.0 - x;
    for (int k = 1; k < n; ++k)
        tail_int[k] = -(px[k + 1] - px[k - 1]) / (2 * k + 1);
    std::vector<double> out(n);
    std::vector<double> pj;
    for (int j = 0; j < n; ++j)
    {
        legendre_values(n - 1, rule.nodes[j], pj);
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            s += 0.5 * (2 * k + 1) * pj[k] * tail_int[k];
        out[j] = rule.weights[j] * s;
    }
    return out;
}

double lagrange_interpolate(GaussLegendreRule const& rule,
                            double const* values, double x)
{
    std::size_t const n = rule.nodes.size();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < n; ++j)
    {
        double const d = x - rule.nodes[j];
        if (d == 0.0)
            return values[j];
        double const xj = rule.nodes[j];
        double w = std::sqrt((1.0 - xj * xj) * rule.weights[j]);
        if (j % 2 == 1)
            w = -w;
        num += w / d * values[j];
        den += w / d;
    }
    return num / den;
}

std::vector<double> oscillatory_breaks(double wavenumber, double a, double b,
                                       QuadratureSpec const& spec)
{
    std::vector<double> br;
    double const len = b - a;
    int n = 1;
    if (wavenumber > 0.0 && len > 0.0)
    {
        double const quarter = 0.5 * pi / wavenumber;
        double const want = std::ceil(len / quarter);
        n = static_cast<int>(std::min<double>(want, spec.max_panels / 2));
        n = std::max(n, 1);
    }
    br.reserve(n + 1);
    for (int i = 0; i < n; ++i)
        br.push_back(a + len * i / n);
    br.push_back(b);
    return br;
}

}  // namespace ccp
