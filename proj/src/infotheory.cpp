#include "ccp/infotheory.hpp"

#include <cmath>
#include <string>

#include "ccp/errors.hpp"
#include "ccp/specfun.hpp"

namespace ccp
{
namespace
{
double xlogx(double x)
{
    return x > 0.0 ? x * std::log(x) : 0.0;
}

template<class F>
double panel_sum(ComptonProfile const& cp, F&& f)
{
    auto const& rule = gauss_legendre(cp.order());
    auto const& br = cp.breaks();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        double const* v = cp.panel_values(k);
        double ps = 0.0;
        for (int j = 0; j < cp.order(); ++j)
            ps += rule.weights[j] * f(v[j]);
        s += ps * half;
    }
    return s;
}

template<class F>
double tail_integral(ComptonProfile const& cp, F&& f)
{
    QuadratureSpec qs;
    qs.relative_tolerance = 1e-8;
    qs.absolute_floor = 0.0;
    auto g = [&](double q) { return f(cp.tail_value(q)); };
    return integrate_semi_infinite(g, cp.q_max(), qs).value;
}

void check_tail(double tail, double total, char const* what)
{
    if (std::abs(tail) > 1e-4 * std::abs(total))
    {
        throw AccuracyError(std::string(what) + ": tail correction "
                            + std::to_string(tail)
                            + " exceeds 1e-4 of the total");
    }
}
}  // namespace

double shannon_of_profile(ComptonProfile const& cp)
{
    double s = -panel_sum(cp, xlogx);
    if (!cp.spec().is_confined())
    {
        double const tail = -tail_integral(cp, xlogx);
        check_tail(tail, s + tail, "shannon_of_profile");
        s += tail;
    }
    return s;
}

double onicescu_of_profile(ComptonProfile const& cp)
{
    return entropic_moment(cp, 2.0);
}

double entropic_moment(ComptonProfile const& cp, double alpha)
{
    if (!(alpha > 1.0 / 6.0))
        throw DomainError("entropic_moment: alpha must exceed 1/6");
    auto pw = [alpha](double x) { return x > 0.0 ? std::pow(x, alpha) : 0.0; };
    double s = panel_sum(cp, pw);
    if (!cp.spec().is_confined())
    {
        double const tail = tail_integral(cp, pw);
        check_tail(tail, s + tail, "entropic_moment");
        s += tail;
    }
    return s;
}

double shannon_tail_estimate(ComptonProfile const& cp)
{
    return std::abs(tail_integral(cp, xlogx));
}

InfoMeasures info_measures(ComptonProfile const& cp,
                           std::vector<double> const& alphas)
{
    InfoMeasures m;
    m.spec = cp.spec();
    m.shannon = shannon_of_profile(cp);
    m.onicescu = onicescu_of_profile(cp);
    for (double a : alphas)
        m.entropic_moments.emplace_back(a, entropic_moment(cp, a));
    m.route = InfoRoute::numeric;
    if (cp.spec().is_confined())
        m.tail_bound = shannon_tail_estimate(cp);
    return m;
}

double closed_1s_shannon(double Z)
{
    if (!(Z > 0.0))
        throw DomainError("closed_1s_shannon: Z must be positive");
    return 0.5 * std::log(24.0 * pi) + 0.5 * std::log(Z) - 1.75;
}

double closed_1s_onicescu(double Z)
{
    if (!(Z > 0.0))
        throw DomainError("closed_1s_onicescu: Z must be positive");
    return 7.0 / (8.0 * pi * Z);
}

double closed_1s_entropic_moment(double alpha, double Z)
{
    if (!(Z > 0.0))
        throw DomainError("closed_1s_entropic_moment: Z must be positive");
    if (!(alpha > 1.0 / 6.0))
        throw DomainError("closed_1s_entropic_moment: alpha must exceed 1/6");
    double const mu = 0.5 * (6.0 * alpha - 1.0);
    return std::pow(8.0 / (3.0 * pi), alpha) * std::pow(Z, 1.0 - alpha)
           * std::exp2(6.0 * alpha - 3.0) * beta(mu, mu);
}

InfoMeasures closed_1s_measures(double Z, std::vector<double> const& alphas)
{
    InfoMeasures m;
    m.spec = StateSpec::free(Z, 1, 0);
    m.shannon = closed_1s_shannon(Z);
    m.onicescu = closed_1s_onicescu(Z);
    for (double a : alphas)
        m.entropic_moments.emplace_back(a, closed_1s_entropic_moment(a, Z));
    m.route = InfoRoute::closed_form;
    return m;
}

std::vector<DensityPoint> entropy_density_curve(ComptonProfile const& cp)
{
    std::vector<DensityPoint> out;
    out.reserve(cp.grid().size());
    for (std::size_t i = 0; i < cp.grid().size(); ++i)
        out.push_back({cp.grid()[i], -xlogx(cp.values()[i])});
    return out;
}

double integrate_density_curve(ComptonProfile const& cp,
                               std::vector<DensityPoint> const& curve)
{
    if (curve.size() != cp.grid().size())
        throw ContractError("integrate_density_curve: curve not on profile grid");
    auto const& rule = gauss_legendre(cp.order());
    auto const& br = cp.breaks();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < br.size(); ++k)
    {
        double const half = 0.5 * (br[k + 1] - br[k]);
        for (int j = 0; j < cp.order(); ++j)
            s += rule.weights[j] * half * curve[1 + k * cp.order() + j].density;
    }
    return s;
}

}  // namespace ccp
