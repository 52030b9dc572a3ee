#include "ccp/compton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccp/errors.hpp"
#include "ccp/specfun.hpp"

namespace ccp
{
namespace
{
std::size_t panel_of(std::vector<double> const& breaks, double q)
{
    auto it = std::upper_bound(breaks.begin(), breaks.end(), q);
    std::size_t k = static_cast<std::size_t>(it - breaks.begin());
    k = std::clamp<std::size_t>(k, 1, breaks.size() - 1);
    return k - 1;
}

// (1/2) int_q^inf I/p over the model tail of emd, reference units.
double model_profile(MomentumDensity const& emd, double q)
{
    auto const& tm = emd.tail_model();
    QuadratureSpec qs;
    qs.relative_tolerance = 1e-10;
    qs.absolute_floor = 0.0;
    qs.max_panels = 16384;
    auto f = [&](double p) {
        return (tm.confined() ? tm.averaged_density(p) : tm.density(p)) / p;
    };
    return 0.5 * emd.scale() * integrate_semi_infinite(f, q, qs).value;
}
}  // namespace

ComptonProfile build_profile(MomentumDensity const& emd)
{
    ComptonProfile cp;
    cp.spec_ = emd.spec();
    cp.emd_ = emd;
    cp.order_ = emd.order();
    cp.breaks_ = emd.breaks();
    cp.grid_ = emd.grid();
    auto const& rule = gauss_legendre(cp.order_);
    int const n = cp.order_;
    std::size_t const npan = cp.breaks_.size() - 1;

    cp.dIp_.assign(cp.grid_.size(), 0.0);
    for (std::size_t i = 1; i < cp.grid_.size(); ++i)
        cp.dIp_[i] = emd.density()[i] / cp.grid_[i];

    cp.J_.assign(cp.grid_.size(), 0.0);
    double J = 0.5 * emd.tail_moment(-1);
    cp.J_.back() = J;
    cp.edge_.assign(npan + 1, 0.0);
    cp.edge_[npan] = J;
    int clamped = 0;
    int increments = 0;
    auto add = [&](double inc) {
        ++increments;
        if (inc < 0.0)
        {
            ++clamped;
            inc = 0.0;
        }
        J += 0.5 * inc;
    };
    for (std::size_t k = npan; k-- > 0;)
    {
        double const half = 0.5 * (cp.breaks_[k + 1] - cp.breaks_[k]);
        double const* h = cp.dIp_.data() + 1 + k * n;
        double* out = cp.J_.data() + 1 + k * n;
        // tail integrals from each node to the panel's right end
        std::vector<double> from(n);
        for (int i = 0; i < n; ++i)
        {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += rule.tail[static_cast<std::size_t>(i) * n + j] * h[j];
            from[i] = half * s;
        }
        double total = 0.0;
        for (int j = 0; j < n; ++j)
            total += rule.weights[j] * h[j];
        total *= half;

        add(from[n - 1]);
        out[n - 1] = J;
        for (int i = n - 2; i >= 0; --i)
        {
            add(from[i] - from[i + 1]);
            out[i] = J;
        }
        add(total - from[0]);
        cp.edge_[k] = J;
    }
    cp.J_.front() = J;

    if (clamped > 0.001 * increments)
    {
        throw AccuracyError("build_profile: " + std::to_string(clamped)
                            + " of " + std::to_string(increments)
                            + " increments were negative for "
                            + cp.spec_.label());
    }
    cp.clamp_count_ = clamped;

    double half_norm = 0.0;
    for (std::size_t k = 0; k < npan; ++k)
    {
        double const half = 0.5 * (cp.breaks_[k + 1] - cp.breaks_[k]);
        double const* v = cp.panel_values(k);
        for (int j = 0; j < n; ++j)
            half_norm += rule.weights[j] * half * v[j];
    }
    cp.half_norm_residual_ = std::abs(half_norm - 0.5);
    return cp;
}

double ComptonProfile::at(double q) const
{
    q = std::abs(q);
    if (q >= q_max())
        return tail_value(q);
    auto const& rule = gauss_legendre(order_);
    std::size_t const k = panel_of(breaks_, q);
    double const a = breaks_[k];
    double const b = breaks_[k + 1];
    double const half = 0.5 * (b - a);
    double const x = (2.0 * q - a - b) / (b - a);
    auto const w = lagrange_tail_weights(rule, x);
    double const* h = dIp_.data() + 1 + k * order_;
    double s = 0.0;
    for (int j = 0; j < order_; ++j)
        s += w[j] * h[j];
    double const right = edge_[k + 1];
    double const value = right + 0.5 * half * s;
    return std::clamp(value, right, edge_[k]);
}

double ComptonProfile::tail_value(double q) const
{
    if (q < q_max())
        throw DomainError("tail_value: q below q_max");
    return model_profile(emd_, q / qscale_) / qscale_;
}

double ComptonProfile::tail_moment(int m) const
{
    if (m < 0)
        throw DomainError("tail_moment: m must be nonnegative");
    double const P = emd_.p_max();
    double const t = (emd_.tail_moment(m) - std::pow(P, m + 1) * emd_.tail_moment(-1))
                     / (2.0 * (m + 1));
    return std::pow(qscale_, m) * t;
}

ComptonProfile ComptonProfile::scaled(double factor) const
{
    if (!(factor > 0.0))
        throw DomainError("scaled: factor must be positive");
    ComptonProfile out = *this;
    for (auto& q : out.grid_)
        q *= factor;
    for (auto& b : out.breaks_)
        b *= factor;
    for (auto& j : out.J_)
        j /= factor;
    for (auto& j : out.edge_)
        j /= factor;
    // I/p scales as 1 / factor^2 so that J = (1/2) int I/p dp scales as 1/factor.
    for (auto& h : out.dIp_)
        h /= factor * factor;
    out.qscale_ *= factor;
    out.spec_.Z *= factor;
    if (out.spec_.rc)
        *out.spec_.rc /= factor;
    return out;
}

double circular_profile_closed_form(int n, double Z, double q)
{
    if (n < 1)
        throw DomainError("circular_profile_closed_form: n must be >= 1");
    if (!(Z > 0.0))
        throw DomainError("circular_profile_closed_form: Z must be positive");
    int const l = n - 1;
    // n^2/(4Z) (2/pi) / (n+l)! 2^(4l+4) (l!)^2
    double const ln_c = 2.0 * std::log(n) - std::log(4.0 * Z)
                        + std::log(2.0 / pi) - ln_gamma(n + l + 1.0)
                        + (4 * l + 4) * std::log(2.0) + 2.0 * ln_gamma(l + 1.0);
    double const y0 = (n * q / Z) * (n * q / Z);
    double const t = 1.0 / (1.0 + y0);
    // int_{y0}^inf y^l (y+1)^-(2l+4) dy with y^l = sum_k C(l,k) (-1)^k (y+1)^(l-k)
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= l; ++k)
    {
        int const e = l + k + 3;
        double const term = binom * std::pow(t, e) / e;
        sum += (k % 2 == 0) ? term : -term;
        binom = binom * (l - k) / (k + 1);
    }
    return std::exp(ln_c) * sum;
}

int hump_count(ComptonProfile const& cp)
{
    auto const& rule = gauss_legendre(cp.order());
    auto const& br = cp.breaks();
    double acc = 0.0;
    double q99 = cp.q_max();
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        double const* v = cp.panel_values(k);
        for (int j = 0; j < cp.order(); ++j)
            acc += rule.weights[j] * half * v[j];
        if (acc >= 0.99 * 0.5)
        {
            q99 = br[k + 1];
            break;
        }
    }
    // J'' = -(1/2) d(I/p)/dp
    int const samples = 8000;
    auto const& emd = cp.emd();
    double const s = cp.q_max() / emd.p_max();
    std::vector<double> g(samples + 1);
    double gmax = 0.0;
    for (int i = 1; i <= samples; ++i)
    {
        double const p = q99 / s * i / samples;
        g[i] = emd.at(p) / p;
        gmax = std::max(gmax, g[i]);
    }
    int changes = 0;
    int sign = 0;
    for (int i = 2; i <= samples; ++i)
    {
        double const d = g[i] - g[i - 1];
        if (std::abs(d) <= 1e-12 * gmax)
            continue;
        int const sd = d > 0.0 ? 1 : -1;
        if (sign != 0 && sd != sign)
            ++changes;
        sign = sd;
    }
    return std::max(0, (changes - 1) / 2);
}

double moment_from_profile(ComptonProfile const& cp, int m)
{
    if (m < -1 || m > 4)
        throw DomainError("moment_from_profile: m outside [-1, 4]");
    if (m == -1)
        return 2.0 * cp.J0();
    double const tail = cp.tail_moment(m);
    auto const& rule = gauss_legendre(cp.order());
    auto const& br = cp.breaks();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        double const* v = cp.panel_values(k);
        double const* q = cp.panel_nodes(k);
        for (int j = 0; j < cp.order(); ++j)
            s += rule.weights[j] * half * std::pow(q[j], m) * v[j];
    }
    return 2.0 * (m + 1) * (s + tail);
}

}  // namespace ccp
