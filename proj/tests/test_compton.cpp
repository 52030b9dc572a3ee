#include <doctest.h>

#include <cmath>

#include "ccp/compton.hpp"
#include "ccp/errors.hpp"
#include "circular_forms.hpp"

using namespace ccp;

namespace
{
double const pi = std::acos(-1.0);

ComptonProfile profile_of(StateSpec const& s)
{
    return build_profile(build_emd(solve_state(s)));
}
}  // namespace

TEST_SUITE("compton")
{
    TEST_CASE("free 1s profile")
    {
        auto cp = profile_of(StateSpec::free(1, 1, 0));
        for (std::size_t i = 0; i < cp.grid().size(); ++i)
        {
            double const q = cp.grid()[i];
            double const e = 8 / (3 * pi) / std::pow(q * q + 1, 3);
            CHECK(std::abs(cp.values()[i] - e) <= 1e-8 * std::max(e, 1e-8));
        }
        for (double q : {0.05, 0.77, 2.3, 6.0})
        {
            double const e = 8 / (3 * pi) / std::pow(q * q + 1, 3);
            CHECK(std::abs(cp.at(q) - e) <= 1e-8 * e);
        }
        CHECK(std::abs(cp.J0() - 0.848826) < 5e-7);
        CHECK(cp.half_norm_residual() <= 1e-6);
        CHECK(cp.clamp_count() == 0);
    }

    TEST_CASE("profile invariants")
    {
        for (auto spec : {StateSpec::confined(1, 0.1, 1, 0), StateSpec::confined(1, 10, 3, 0),
                          StateSpec::confined(1, 2.5, 3, 2), StateSpec::free(1, 3, 1)})
        {
            auto cp = profile_of(spec);
            CHECK(cp.half_norm_residual() <= 1e-6);
            CHECK(cp.J0() == cp.values().front());
            for (std::size_t i = 0; i < cp.values().size(); ++i)
            {
                CHECK(cp.values()[i] >= 0.0);
                if (i > 0)
                    CHECK(cp.values()[i] <= cp.values()[i - 1]);
            }
            // off-grid values respect the ordering up to interpolation noise
            double prev = cp.at(0.0);
            for (int i = 1; i <= 500; ++i)
            {
                double const v = cp.at(cp.q_max() * i / 500.0);
                CHECK(v <= prev + 1e-12 * cp.J0() + 1e-13);
                prev = v;
            }
        }
    }

    TEST_CASE("slope of J is -I/(2q)")
    {
        for (auto spec : {StateSpec::confined(1, 1, 2, 0), StateSpec::confined(1, 5, 3, 1)})
        {
            auto cp = profile_of(spec);
            auto const& emd = cp.emd();
            double imax = 0.0;
            for (double v : emd.density())
                imax = std::max(imax, v);
            int checked = 0;
            for (int i = 1; i < 400; ++i)
            {
                double const q = 20.0 * i / 400.0;
                double const I = emd.at(q);
                if (I < 1e-2 * imax)
                    continue;
                double const h = 1e-5 * q;
                double const fd = (cp.at(q + h) - cp.at(q - h)) / (2 * h);
                double const exact = -I / (2 * q);
                CHECK(std::abs(fd - exact) <= 1e-5 * std::abs(exact));
                ++checked;
            }
            CHECK(checked > 30);
        }
    }

    TEST_CASE("circular closed form")
    {
        CHECK(std::abs(circular_profile_closed_form(2, 1, 0) - 64 / (15 * pi)) < 1e-14);
        CHECK(std::abs(circular_profile_closed_form(5, 1, 0) - 131072 / (14553 * pi)) < 1e-12);
        for (int n = 1; n <= 5; ++n)
            for (double Z : {1.0, 3.0})
                for (double q : {0.0, 0.1, 0.45, 1.2, 4.0, 9.0})
                {
                    double const e = circular_explicit(n, Z, q);
                    CHECK(std::abs(circular_profile_closed_form(n, Z, q) - e) <= 1e-12 * e);
                }
        for (int n = 1; n <= 5; ++n)
            CHECK(std::abs(circular_explicit_half_norm(n, 1.0) - 0.5) < 1e-12);

        auto cp = profile_of(StateSpec::free(1, 3, 2));
        for (double q = 0.0; q <= 10.0; q += 0.137)
            CHECK(std::abs(cp.at(q) - circular_profile_closed_form(3, 1, q)) <= 1e-8);
        CHECK_THROWS_AS(circular_profile_closed_form(0, 1, 0), DomainError);
    }

    TEST_CASE("moments from the profile")
    {
        auto c1 = profile_of(StateSpec::confined(1, 1, 1, 0));
        CHECK(std::abs(moment_from_profile(c1, 2) - 10.146273) <= 1e-6 * 10.146273);
        auto c2 = profile_of(StateSpec::confined(1, 5, 2, 1));
        CHECK(std::abs(moment_from_profile(c2, 2) - 0.873647) <= 1e-6);
        auto f3 = profile_of(StateSpec::free(1, 3, 2));
        CHECK(std::abs(moment_from_profile(f3, -1) / 2 - 1.86256756) <= 1e-8);
        CHECK_THROWS_AS(moment_from_profile(c1, 5), DomainError);
    }

    TEST_CASE("Fubini identity and virial check")
    {
        for (auto spec : {StateSpec::confined(1, 0.2, 1, 0), StateSpec::confined(1, 1, 3, 0),
                          StateSpec::confined(1, 10, 2, 1), StateSpec::free(1, 3, 2)})
        {
            auto sol = solve_state(spec);
            auto emd = build_emd(sol);
            auto cp = build_profile(emd);
            for (int m : {-1, 1, 2})
            {
                double const a = moment_from_profile(cp, m);
                double const b = moment_from_emd(emd, m);
                CHECK(std::abs(a - b) <= 1e-7 * std::abs(b));
            }
            double const v = sol.p2_virial();
            CHECK(std::abs(moment_from_profile(cp, 2) - v) <= 1e-6 * v);
        }
    }

    TEST_CASE("humps follow radial nodes")
    {
        CHECK(hump_count(profile_of(StateSpec::confined(1, 10, 3, 0))) == 2);
        CHECK(hump_count(profile_of(StateSpec::free(1, 3, 0))) == 2);
        CHECK(hump_count(profile_of(StateSpec::confined(1, 10, 2, 0))) == 1);
        CHECK(hump_count(profile_of(StateSpec::confined(1, 10, 3, 1))) == 1);
        for (double rc : {0.1, 0.5, 1.0, 5.0, 10.0})
            CHECK(hump_count(profile_of(StateSpec::confined(1, rc, 1, 0))) == 0);
        CHECK(hump_count(profile_of(StateSpec::free(1, 1, 0))) == 0);
    }
}
