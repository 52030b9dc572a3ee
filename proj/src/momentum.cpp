#include "ccp/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccp/errors.hpp"
#include "ccp/specfun.hpp"

namespace ccp
{
namespace
{
constexpr double two_over_pi = 2.0 / pi;
constexpr int max_refine_depth = 6;

// r-panel nodes and weight * u for a band of momenta up to p_top. Panels
// span at most one period of s_l(p_top r); a 16-point rule is then exact
// to about 1e-19.
struct Band
{
    std::vector<double> r;
    std::vector<double> wu;
};

Band make_band(RadialSolution const& sol, double p_top, int order)
{
    auto const& rule = gauss_legendre(order);
    auto const& br = sol.breaks();
    double const period = p_top > 0.0 ? 2.0 * pi / p_top : sol.extent();
    Band band;
    for (std::size_t i = 0; i + 1 < br.size(); ++i)
    {
        double const a = br[i];
        double const b = br[i + 1];
        int const pieces = std::max(1, static_cast<int>(std::ceil((b - a) / period)));
        double const step = (b - a) / pieces;
        for (int k = 0; k < pieces; ++k)
        {
            double const lo = a + k * step;
            double const half = 0.5 * step;
            double const mid = lo + half;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            {
                double const r = mid + half * rule.nodes[j];
                band.r.push_back(r);
                band.wu.push_back(rule.weights[j] * half * sol.value(r));
            }
        }
    }
    return band;
}

double band_transform(Band const& band, int l, double p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < band.r.size(); ++i)
        s += band.wu[i] * riccati_bessel(l, p * band.r[i]);
    return s;
}

// Smallness of the two highest Legendre coefficients of f on a panel.
double legendre_residual(GaussLegendreRule const& rule,
                         std::vector<double> const& f)
{
    int const n = static_cast<int>(f.size());
    double c1 = 0.0;
    double c2 = 0.0;
    for (int j = 0; j < n; ++j)
    {
        double const x = rule.nodes[j];
        double p0 = 1.0;
        double p1 = x;
        for (int k = 1; k < n - 1; ++k)
        {
            double const p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
            p0 = p1;
            p1 = p2;
        }
        // p1 = P_{n-1}, p0 = P_{n-2}
        c1 += rule.weights[j] * p1 * f[j];
        c2 += rule.weights[j] * p0 * f[j];
    }
    return 0.5 * (2 * n - 1) * std::abs(c1) + 0.5 * (2 * n - 3) * std::abs(c2);
}

double mellin_factor(int l, int k)
{
    // sqrt(pi) 2^(l+k) Gamma((2l+k+2)/2) / Gamma((1-k)/2), k even
    double const g = std::tgamma(0.5 * (1 - k));
    return std::sqrt(pi) * std::ldexp(1.0, l + k)
           * std::exp(ln_gamma(0.5 * (2 * l + k + 2))) / g;
}

QuadratureSpec tail_spec(QuadratureSpec const& base)
{
    QuadratureSpec s = base;
    s.relative_tolerance = std::min(base.relative_tolerance, 1e-10);
    s.absolute_floor = 0.0;
    s.max_panels = std::max(base.max_panels, 16384);
    return s;
}

std::size_t panel_of(std::vector<double> const& breaks, double p)
{
    auto it = std::upper_bound(breaks.begin(), breaks.end(), p);
    std::size_t k = static_cast<std::size_t>(it - breaks.begin());
    k = std::clamp<std::size_t>(k, 1, breaks.size() - 1);
    return k - 1;
}
}  // namespace

TailModel::TailModel(RadialSolution const& sol)
    : confined_(sol.spec().is_confined()),
      l_(sol.spec().l),
      Z_(sol.spec().Z),
      E_(sol.energy()),
      rc_(sol.spec().rc.value_or(0.0)),
      slope_(sol.wall_slope())
{
    auto const& g = sol.origin_coefficients();
    for (int k = 0; k <= 4; k += 2)
        mk_.push_back(g[k] * mellin_factor(l_, k));
}

double TailModel::origin_series(double p) const
{
    double s = 0.0;
    double pk = std::pow(p, -(l_ + 1));
    for (double c : mk_)
    {
        s += c * pk;
        pk /= p * p;
    }
    return s;
}

double TailModel::amplitude(double p) const
{
    double num = 2.0 * Z_ * origin_series(p);
    if (confined_)
    {
        num += slope_ * riccati_bessel(l_, p * rc_)
               * (1.0 + 2.0 * Z_ / (rc_ * p * p));
    }
    return std::sqrt(two_over_pi) * num / (p * p - 2.0 * E_);
}

double TailModel::density(double p) const
{
    double const a = amplitude(p);
    return a * a;
}

double TailModel::averaged_density(double p) const
{
    double const k = 2.0 * Z_ * origin_series(p);
    double wall = 0.0;
    if (confined_)
    {
        double const w = slope_ * (1.0 + 2.0 * Z_ / (rc_ * p * p));
        wall = 0.5 * w * w;
    }
    double const d = p * p - 2.0 * E_;
    return two_over_pi * (wall + k * k) / (d * d);
}

double transform_to_momentum(RadialSolution const& sol, double p,
                             QuadratureSpec const& qspec)
{
    if (!(p >= 0.0))
        throw DomainError("transform_to_momentum: p must be nonnegative");
    int const l = sol.spec().l;
    auto f = [&](double r) { return sol.value(r) * r * spherical_bessel_j(l, p * r); };
    auto const& br = sol.breaks();
    double total = 0.0;
    try
    {
        for (std::size_t i = 0; i + 1 < br.size(); ++i)
            total += integrate_oscillatory(f, p, br[i], br[i + 1], qspec).value;
    }
    catch (ConvergenceError const& e)
    {
        throw ConvergenceError(std::string(e.what()) + " (transform of "
                                   + sol.spec().label() + " at p = "
                                   + std::to_string(p) + ")",
                               e.best_estimate(), e.error_estimate());
    }
    return std::sqrt(two_over_pi) * total;
}

double emd_free_closed_form(StateSpec const& spec, double p)
{
    spec.validate();
    if (spec.is_confined())
        throw ContractError("emd_free_closed_form: state is confined");
    if (!(p >= 0.0))
        throw DomainError("emd_free_closed_form: p must be nonnegative");
    int const n = spec.n;
    int const l = spec.l;
    double const Z = spec.Z;
    double const x = n * p / Z;
    double const x2 = x * x;
    // ln of n^2 Z^-3/2 sqrt(2/pi (n-l-1)!/(n+l)!) 2^(2l+2) l!
    double const ln_pref = 2.0 * std::log(n) - 1.5 * std::log(Z)
                           + 0.5 * (std::log(two_over_pi) + ln_gamma(n - l)
                                    - ln_gamma(n + l + 1.0))
                           + (2 * l + 2) * std::log(2.0) + ln_gamma(l + 1.0);
    double const geg = gegenbauer(n - l - 1, l + 1.0, (x2 - 1.0) / (x2 + 1.0));
    double const phi = std::exp(ln_pref) * std::pow(x, l)
                       / std::pow(x2 + 1.0, l + 2) * geg;
    return p * p * phi * phi;
}

double MomentumDensity::at(double p) const
{
    if (p <= 0.0)
        return 0.0;
    if (p > p_max_)
        return scale_ * tail_.density(p);
    auto const& rule = gauss_legendre(order_);
    std::size_t const k = panel_of(breaks_, p);
    double const a = breaks_[k];
    double const b = breaks_[k + 1];
    double const x = (2.0 * p - a - b) / (b - a);
    return std::max(0.0, lagrange_interpolate(rule, panel_values(k), x));
}

double MomentumDensity::amplitude_at(double p) const
{
    if (p <= 0.0)
        return 0.0;
    if (p > p_max_)
        return std::sqrt(scale_) * tail_.amplitude(p);
    auto const& rule = gauss_legendre(order_);
    std::size_t const k = panel_of(breaks_, p);
    double const a = breaks_[k];
    double const b = breaks_[k + 1];
    double const x = (2.0 * p - a - b) / (b - a);
    return lagrange_interpolate(rule, panel_amplitudes(k), x);
}

double MomentumDensity::tail_moment(int m) const
{
    if (m >= -1 && m <= 2 && !tail_cache_.empty())
        return tail_cache_[m + 1];
    if (tail_.confined() && m >= 3)
    {
        throw DivergenceError(
            "<p^" + std::to_string(m) + "> diverges for the hard-wall state "
            + spec_.label() + ": p^4 I tends to u'(rc)^2/pi = "
            + std::to_string(p4_slope_) + " beyond p_max = "
            + std::to_string(p_max_));
    }
    if (m < -1)
        throw DomainError("tail_moment: m below -1");
    QuadratureSpec const qs = tail_spec({});
    auto f = [&](double p) { return std::pow(p, m) * tail_.density(p); };
    return scale_ * integrate_semi_infinite(f, p_max_, qs).value;
}

MomentumDensity build_emd(RadialSolution const& sol, QuadratureSpec const& qspec,
                          std::optional<double> pmax_override)
{
    qspec.validate();
    auto const& spec = sol.spec();
    int const l = spec.l;
    double const Z = spec.Z;
    double const k0 = std::sqrt(std::max(sol.p2_virial(), 0.0));
    double const kappa = k0 + Z / spec.n;

    MomentumDensity emd;
    emd.spec_ = spec;
    emd.energy_ = sol.energy();
    emd.order_ = qspec.panel_order;
    emd.tail_ = TailModel(sol);

    double P = 30.0 * kappa;
    double width = kappa / 8.0;
    if (spec.is_confined())
    {
        double const rc = *spec.rc;
        P = std::max(P, 40.0 * pi / rc);
        width = std::min(width, 0.5 * pi / rc);
    }
    if (pmax_override)
    {
        if (!(*pmax_override > 0.0))
            throw DomainError("build_emd: p_max override must be positive");
        P = *pmax_override;
    }
    emd.p_max_ = P;

    auto const& rule = gauss_legendre(emd.order_);
    int const n0 = std::max(1, static_cast<int>(std::ceil(P / width)));

    struct Panel
    {
        double a;
        double b;
        std::vector<double> F;
    };
    auto evaluate = [&](double a, double b) {
        Band const band = make_band(sol, b, std::max(16, qspec.panel_order));
        Panel pan{a, b, {}};
        double const half = 0.5 * (b - a);
        double const mid = 0.5 * (a + b);
        for (double x : rule.nodes)
            pan.F.push_back(band_transform(band, l, mid + half * x));
        return pan;
    };

    std::vector<Panel> done;
    double fmax = 0.0;
    std::vector<std::pair<Panel, int>> work;
    for (int i = n0 - 1; i >= 0; --i)
        work.push_back({evaluate(P * i / n0, P * (i + 1) / n0), 0});
    for (auto const& w : work)
        for (double v : w.first.F)
            fmax = std::max(fmax, std::abs(v));
    while (!work.empty())
    {
        auto [pan, depth] = std::move(work.back());
        work.pop_back();
        double local = 0.0;
        for (double v : pan.F)
            local = std::max(local, std::abs(v));
        double const res = legendre_residual(rule, pan.F);
        if (depth < max_refine_depth && res > 1e-11 * local + 1e-14 * fmax)
        {
            double const mid = 0.5 * (pan.a + pan.b);
            work.push_back({evaluate(mid, pan.b), depth + 1});
            work.push_back({evaluate(pan.a, mid), depth + 1});
            continue;
        }
        done.push_back(std::move(pan));
    }

    emd.breaks_.push_back(0.0);
    emd.grid_.push_back(0.0);
    emd.amplitude_.push_back(0.0);
    for (auto const& pan : done)
    {
        emd.breaks_.push_back(pan.b);
        double const half = 0.5 * (pan.b - pan.a);
        double const mid = 0.5 * (pan.a + pan.b);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        {
            emd.grid_.push_back(mid + half * rule.nodes[j]);
            emd.amplitude_.push_back(std::sqrt(two_over_pi) * pan.F[j]);
        }
    }
    {
        Band const band = make_band(sol, P, std::max(16, qspec.panel_order));
        emd.grid_.push_back(P);
        emd.amplitude_.push_back(std::sqrt(two_over_pi)
                                 * band_transform(band, l, P));
    }
    emd.density_.resize(emd.amplitude_.size());
    for (std::size_t i = 0; i < emd.amplitude_.size(); ++i)
        emd.density_[i] = emd.amplitude_[i] * emd.amplitude_[i];

    // Raw tail moments of the model, m = -1..2.
    auto const& tm = emd.tail_;
    QuadratureSpec const qs = tail_spec(qspec);
    std::vector<double> raw_tail(4, 0.0);
    double bound = 0.0;
    for (int m = -1; m <= 2; ++m)
    {
        if (tm.confined())
        {
            double const rc = *spec.rc;
            double const far = std::min(16.0 * P, P + 500.0 * pi / rc);
            auto f = [&](double p) { return std::pow(p, m) * tm.density(p); };
            auto g = [&](double p) {
                return std::pow(p, m) * tm.averaged_density(p);
            };
            double const near
                = integrate_oscillatory(f, 2.0 * rc, P, far, qs).value;
            double const rest = integrate_semi_infinite(g, far, qs).value;
            raw_tail[m + 1] = near + rest;
            if (m == 0)
                bound = std::abs(rest) / (far * rc);
        }
        else
        {
            auto f = [&](double p) { return std::pow(p, m) * tm.density(p); };
            raw_tail[m + 1] = integrate_semi_infinite(f, P, qs).value;
        }
    }

    double inner = 0.0;
    for (std::size_t k = 0; k + 1 < emd.breaks_.size(); ++k)
    {
        double const half = 0.5 * (emd.breaks_[k + 1] - emd.breaks_[k]);
        double const* v = emd.panel_values(k);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            inner += rule.weights[j] * half * v[j];
    }
    emd.raw_norm_ = inner + raw_tail[1];
    if (!(std::abs(emd.raw_norm_ - 1.0) <= 1e-4))
    {
        throw AccuracyError("build_emd: raw norm " + std::to_string(emd.raw_norm_)
                            + " for " + spec.label()
                            + " deviates from 1 by more than 1e-4");
    }
    emd.scale_ = 1.0 / emd.raw_norm_;
    double const amp_scale = std::sqrt(emd.scale_);
    for (auto& v : emd.density_)
        v *= emd.scale_;
    for (auto& v : emd.amplitude_)
        v *= amp_scale;
    emd.tail_cache_.resize(4);
    for (int i = 0; i < 4; ++i)
        emd.tail_cache_[i] = raw_tail[i] * emd.scale_;
    emd.tail_bound_ = bound * emd.scale_;
    emd.p4_slope_ = tm.wall_slope() * tm.wall_slope() / pi;
    emd.tail_exponent_ = std::log(tm.averaged_density(2.0 * P)
                                  / tm.averaged_density(P))
                         / std::log(2.0);
    return emd;
}

double truncated_moment(MomentumDensity const& emd, double m)
{
    auto const& rule = gauss_legendre(emd.order());
    auto const& br = emd.breaks();
    auto const& grid = emd.grid();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        double const* v = emd.panel_values(k);
        double const* p = grid.data() + 1 + k * emd.order();
        double ps = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            ps += rule.weights[j] * std::pow(p[j], m) * v[j];
        s += ps * half;
    }
    return s;
}

double moment_from_emd(MomentumDensity const& emd, int m)
{
    if (m < -1 || m > 4)
        throw DomainError("moment_from_emd: m outside [-1, 4]");
    double const tail = emd.tail_moment(m);
    return truncated_moment(emd, m) + tail;
}

double overlap(MomentumDensity const& a, MomentumDensity const& b)
{
    auto const& rule = gauss_legendre(a.order());
    auto const& br = a.breaks();
    auto const& grid = a.grid();
    if (a.p_max() != b.p_max())
        throw ContractError("overlap: densities must share p_max");
    double const top = a.p_max();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < br.size() && br[k] < top; ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        double const* fa = a.panel_amplitudes(k);
        double const* p = grid.data() + 1 + k * a.order();
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
            s += rule.weights[j] * half * fa[j] * b.amplitude_at(p[j]);
    }
    auto f = [&](double p) { return a.amplitude_at(p) * b.amplitude_at(p); };
    double const rc = a.spec().rc.value_or(0.0);
    QuadratureSpec qs = tail_spec({});
    double const far = rc > 0.0 ? std::min(16.0 * top, top + 500.0 * pi / rc)
                                : 16.0 * top;
    s += integrate_oscillatory(f, 2.0 * rc, top, far, qs).value;
    return s;
}

}  // namespace ccp
