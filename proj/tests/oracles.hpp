#pragma once

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

namespace oracle
{

// Regular radial solution u'' = (l(l+1)/r^2 - 2Z/r - 2E) u, u ~ r^(l+1),
// integrated by an adaptive Runge-Kutta-Fehlberg 7(8) stepper from a short
// series start. Returns {u, u'} at r.
inline std::array<double, 2> rk_radial(double E, double Z, int l, double r)
{
    using state = std::array<double, 2>;
    double const r0 = 1e-4;
    // Series to 6 terms at r0.
    double c[8] = {1.0};
    for (int m = 1; m < 8; ++m)
    {
        double const prev2 = m >= 2 ? c[m - 2] : 0.0;
        c[m] = -(2 * Z * c[m - 1] + 2 * E * prev2) / (m * (m + 2.0 * l + 1));
    }
    double u = 0.0;
    double du = 0.0;
    for (int m = 7; m >= 0; --m)
    {
        u = u * r0 + c[m];
        du = du * r0 + (m + l + 1) * c[m];
    }
    state y{u * std::pow(r0, l + 1), du * std::pow(r0, l)};
    auto rhs = [&](state const& s, state& d, double x) {
        d[0] = s[1];
        d[1] = (l * (l + 1) / (x * x) - 2 * Z / x - 2 * E) * s[0];
    };
    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-14, 1e-14 * std::pow(r0, l + 1),
                                        ode::runge_kutta_fehlberg78<state>());
    ode::integrate_adaptive(stepper, rhs, y, r0, r, 1e-4);
    return y;
}

// Dirichlet eigenvalue in [lo, hi] by plain bisection on rk_radial(rc).
inline double bisect_energy(double Z, int l, double rc, double lo, double hi)
{
    double flo = rk_radial(lo, Z, l, rc)[0];
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++i)
    {
        double const mid = 0.5 * (lo + hi);
        double const fm = rk_radial(mid, Z, l, rc)[0];
        if ((fm < 0) == (flo < 0))
        {
            lo = mid;
            flo = fm;
        }
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
