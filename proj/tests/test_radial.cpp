#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "ccp/errors.hpp"
#include "ccp/quadrature.hpp"
#include "ccp/radial.hpp"
#include "oracles.hpp"

using namespace ccp;

TEST_SUITE("radial")
{
    TEST_CASE("series solution against free hydrogen")
    {
        for (double r : {0.5, 1.0, 5.0})
        {
            auto v = radial_series_eval(-0.5, 1.0, 0, r);
            double const e = r * std::exp(-r);
            CHECK(std::abs(v.u - e) <= 1e-10 * e);
            double const de = (1 - r) * std::exp(-r);
            CHECK(std::abs(v.du - de) <= 1e-10 * std::max(std::abs(de), e));

            auto w = radial_series_eval(-0.125, 1.0, 1, r);
            double const f = r * r * std::exp(-r / 2);
            CHECK(std::abs(w.u - f) <= 1e-10 * f);
        }
    }

    TEST_CASE("series solution at positive energy against Runge-Kutta")
    {
        auto v = radial_series_eval(2.0, 1.0, 0, 1.0);
        auto o = oracle::rk_radial(2.0, 1.0, 0, 1.0);
        CHECK(std::abs(v.u - o[0]) <= 1e-9 * std::abs(o[0]));
        CHECK(std::abs(v.du - o[1]) <= 1e-9 * std::abs(o[1]));
        // Kummer-function values r^(l+1) e^(-kr) M(l+1-Z/k, 2l+2, 2kr) at 30 digits,
        // continued to k = i sqrt(2E) for E > 0
        struct Golden
        {
            double E;
            int l;
            double r, u, du;
        };
        for (auto g : {Golden{50.0, 2, 3.0, 0.01080001163947858, -0.06954032075512036},
                       Golden{-3.0, 1, 4.0, 1382.910386023296, 3275.817017244427},
                       Golden{700.0, 0, 0.3, -0.02424622983412983, 0.3094073116675516}})
        {
            auto a = radial_series_eval(g.E, 1.0, g.l, g.r);
            CHECK(std::abs(a.u - g.u) <= 1e-11 * std::abs(g.u));
            CHECK(std::abs(a.du - g.du) <= 1e-11 * std::abs(g.du));
        }
        CHECK_THROWS_AS(radial_series_eval(-0.5, 1.0, 0, 0.0), DomainError);
    }

    TEST_CASE("solve_energy examples")
    {
        double const e10 = solve_energy(StateSpec::confined(1, 10, 1, 0));
        CHECK(std::abs(e10 + 0.5) < 5e-5);

        double const e1 = solve_energy(StateSpec::confined(1, 1, 1, 0));
        double const o1 = oracle::bisect_energy(1.0, 0, 1.0, 2.0, 3.0);
        CHECK(e1 > 0);
        CHECK(std::abs(e1 - o1) < 1e-9);
        CHECK(std::abs(e1 - 2.3739908660) < 1e-9);

        // a tiny final step onto the wall used to stall the Taylor restart
        auto f9 = solve_state(StateSpec::confined(1, 1, 9, 3));
        CHECK(f9.node_count() == 5);
        double const o9 = oracle::bisect_energy(1.0, 3, 1.0, 268.0, 270.0);
        CHECK(std::abs(f9.energy() - o9) <= 1e-9 * o9);

        auto sol = solve_state(StateSpec::confined(1, 0.1, 2, 1));
        CHECK(std::abs(sol.p2_virial() - 2019.114160) <= 1e-6 * 2019.114160);
    }

    TEST_CASE("solve_energy picks the (n-l)-th root")
    {
        // 3s at rc = 5: third root of the s channel.
        double const E = solve_energy(StateSpec::confined(1, 5, 3, 0));
        double const e1 = solve_energy(StateSpec::confined(1, 5, 1, 0));
        double const e2 = solve_energy(StateSpec::confined(1, 5, 2, 0));
        CHECK(e1 < e2);
        CHECK(e2 < E);
        double const o = oracle::bisect_energy(1.0, 0, 5.0, E - 1e-3, E + 1e-3);
        CHECK(std::abs(E - o) < 1e-9 * std::max(1.0, std::abs(E)));
    }

    TEST_CASE("search error below ceiling")
    {
        SolveOptions opts;
        opts.ceiling = 1.0;
        CHECK_THROWS_AS(solve_energy(StateSpec::confined(1, 0.1, 1, 0), opts), SearchError);
    }

    TEST_CASE("free_energy")
    {
        CHECK(free_energy(StateSpec::free(1, 1, 0)) == -0.5);
        CHECK(std::abs(free_energy(StateSpec::free(1, 3, 2)) + 1.0 / 18) < 1e-16);
        CHECK(free_energy(StateSpec::free(2, 1, 0)) == -2.0);
        CHECK_THROWS_AS(free_energy(StateSpec::confined(1, 2, 1, 0)), ContractError);
    }

    TEST_CASE("StateSpec validation")
    {
        CHECK_THROWS_AS(StateSpec::confined(1, 1, 2, 2).validate(), DomainError);
        CHECK_THROWS_AS(StateSpec::confined(0, 1, 1, 0).validate(), DomainError);
        CHECK_THROWS_AS(StateSpec::confined(1, -1, 1, 0).validate(), DomainError);
        CHECK(StateSpec::free(1, 3, 2).label() == "3d");
    }

    TEST_CASE("build_wavefunction")
    {
        auto s = solve_state(StateSpec::free(1, 1, 0));
        CHECK(s.norm_residual() <= 1e-11);
        for (double r : {0.1, 1.0, 3.0, 10.0})
            CHECK(std::abs(s.value(r) - 2 * r * std::exp(-r)) <= 1e-12);

        auto c = solve_state(StateSpec::confined(1, 0.1, 1, 0));
        CHECK(c.node_count() == 0);
        double umax = 0.0;
        for (double u : c.u())
            umax = std::max(umax, std::abs(u));
        CHECK(std::abs(c.value(0.1)) <= 1e-9 * umax);
        CHECK(c.value(0.0) == 0.0);
        CHECK(c.norm_residual() <= 1e-10);
        CHECK(c.grid().size() >= 2000);

        CHECK(solve_state(StateSpec::confined(1, 5, 3, 0)).node_count() == 2);

        double const e2s = solve_energy(StateSpec::confined(1, 5, 2, 0));
        CHECK_THROWS_AS(build_wavefunction(StateSpec::confined(1, 5, 1, 0), e2s), WrongRootError);
    }

    TEST_CASE("energy ordering and confinement monotonicity")
    {
        for (int l : {0, 1, 2})
            for (double rc : {0.5, 5.0})
            {
                double prev = -1e300;
                for (int n = l + 1; n <= l + 5; ++n)
                {
                    double const e = solve_energy(StateSpec::confined(1, rc, n, l));
                    CHECK(e > prev);
                    prev = e;
                }
            }
        for (auto [n, l] : {std::pair{1, 0}, {2, 0}, {2, 1}, {3, 2}})
        {
            double prev = 1e300;
            for (double rc : {0.1, 0.5, 1.0, 5.0, 10.0})
            {
                double const e = solve_energy(StateSpec::confined(1, rc, n, l));
                CHECK(e < prev);
                prev = e;
            }
        }
    }

    TEST_CASE("free limit")
    {
        for (auto [n, l] : {std::pair{1, 0}, {2, 1}, {3, 2}})
        {
            auto spec = StateSpec::confined(1, 40.0 * n * n, n, l);
            double const e = solve_energy(spec);
            CHECK(std::abs(e - free_energy(StateSpec::free(1, n, l))) <= 1e-6);
        }
    }

    TEST_CASE("Kummer consistency for bound confined states")
    {
        for (auto spec : {StateSpec::confined(1, 5, 1, 0), StateSpec::confined(1, 10, 2, 1),
                          StateSpec::confined(1, 30, 3, 0), StateSpec::confined(2, 12, 3, 2)})
        {
            auto sol = solve_state(spec);
            double const E = sol.energy();
            REQUIRE(E < 0);
            double const k = std::sqrt(-2 * E);
            int const l = spec.l;
            double const Z = spec.Z;
            auto kummer = [&](double r) {
                return std::pow(r, l + 1) * std::exp(-k * r)
                       * boost::math::hypergeometric_1F1(l + 1 - Z / k, 2.0 * l + 2, 2 * k * r);
            };
            double const rc = *spec.rc;
            double const nk = integrate_panel([&](double r) { return kummer(r) * kummer(r); },
                                              0.0, rc).value;
            double const c = std::copysign(1.0 / std::sqrt(nk), sol.value(0.5 * rc / (spec.n + 1))
                                                                   * kummer(0.5 * rc / (spec.n + 1)));
            double umax = 0.0;
            for (double u : sol.u())
                umax = std::max(umax, std::abs(u));
            for (int i = 1; i < 200; ++i)
            {
                double const r = rc * i / 200.0;
                double const a = sol.value(r);
                double const b = c * kummer(r);
                CHECK(std::abs(a - b) <= 1e-8 * umax);
                if (std::abs(b) > 1e-3 * umax)
                    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
            }
        }
    }

    TEST_CASE("large box wall condition")
    {
        auto sol = solve_state(StateSpec::confined(1, 20, 1, 0));
        double umax = 0.0;
        for (double u : sol.u())
            umax = std::max(umax, std::abs(u));
        CHECK(std::abs(sol.value(20.0)) <= 1e-9 * umax);
        CHECK(sol.node_count() == 0);
    }
}
