#include <doctest.h>

#include <cmath>

#include "ccp/errors.hpp"
#include "ccp/infotheory.hpp"
#include "ccp/specfun.hpp"

using namespace ccp;

namespace
{
double const kPi = std::acos(-1.0);

ComptonProfile profile_of(StateSpec const& s)
{
    return build_profile(build_emd(solve_state(s)));
}
}  // namespace

TEST_SUITE("infotheory")
{
    TEST_CASE("closed forms")
    {
        CHECK(std::abs(closed_1s_shannon(1) - 0.411391858) < 1e-9);
        CHECK(std::abs(closed_1s_shannon(2) - 0.757965) < 5e-7);
        CHECK(std::abs(closed_1s_shannon(5) - 1.2161108) < 5e-8);
        CHECK(std::abs(closed_1s_onicescu(1) - 0.27852115) < 5e-9);
        CHECK(std::abs(closed_1s_onicescu(2) - 7 / (16 * kPi)) < 1e-15);
        CHECK(std::abs(closed_1s_onicescu(5) - 0.05570423) < 5e-9);
        CHECK(std::abs(closed_1s_entropic_moment(2, 1) - 7 / (8 * kPi)) < 1e-14);
        CHECK(std::abs(closed_1s_entropic_moment(1, 3.7) - 0.5) < 1e-14);
        double const w3 = std::pow(8 / (3 * kPi), 3) * std::pow(2.0, 15) * beta(8.5, 8.5);
        CHECK(std::abs(closed_1s_entropic_moment(3, 1) - w3) < 1e-14 * w3);
        CHECK_THROWS_AS(closed_1s_shannon(0), DomainError);
        CHECK_THROWS_AS(closed_1s_entropic_moment(1.0 / 6, 1), DomainError);
    }

    TEST_CASE("free 1s numeric measures match the closed forms")
    {
        auto cp = profile_of(StateSpec::free(1, 1, 0));
        CHECK(std::abs(shannon_of_profile(cp) - closed_1s_shannon(1)) <= 1e-8);
        CHECK(std::abs(onicescu_of_profile(cp) - closed_1s_onicescu(1)) <= 1e-8);
        CHECK(std::abs(entropic_moment(cp, 1) - 0.5) <= 1e-8);
        CHECK(entropic_moment(cp, 2) == onicescu_of_profile(cp));
        double const w3 = closed_1s_entropic_moment(3, 1);
        CHECK(std::abs(entropic_moment(cp, 3) - w3) <= 1e-8);
        CHECK_THROWS_AS(entropic_moment(cp, 0.1), DomainError);

        auto m = info_measures(cp, {1.0, 3.0});
        CHECK(m.route == InfoRoute::numeric);
        CHECK(m.entropic_moments.size() == 2);
        auto c = closed_1s_measures(1, {3.0});
        CHECK(c.route == InfoRoute::closed_form);
        CHECK(std::abs(m.shannon - c.shannon) <= 1e-8);
    }

    TEST_CASE("printed confined values")
    {
        CHECK(std::abs(shannon_of_profile(profile_of(StateSpec::confined(1, 1, 3, 2))) - 1.29064) < 5e-4);
        auto c1 = profile_of(StateSpec::confined(1, 0.1, 1, 0));
        CHECK(std::abs(shannon_of_profile(c1) - 2.14595) < 5e-4);
        CHECK(std::abs(onicescu_of_profile(c1) - 0.007964) < 5e-4);
        CHECK(std::abs(onicescu_of_profile(profile_of(StateSpec::confined(1, 10, 2, 0))) - 0.596075) < 5e-4);
    }

    TEST_CASE("entropy density curve")
    {
        auto cp = profile_of(StateSpec::free(1, 1, 0));
        auto curve = entropy_density_curve(cp);
        CHECK(curve.size() == cp.grid().size());
        CHECK(std::abs(integrate_density_curve(cp, curve) - 0.411391858) < 1e-8);

        auto c = profile_of(StateSpec::confined(1, 0.1, 1, 0));
        auto cc = entropy_density_curve(c);
        CHECK(std::abs(integrate_density_curve(c, cc) - shannon_of_profile(c)) <= 1e-8);
        double best = -1.0;
        double qbest = -1.0;
        for (auto const& pt : cc)
            if (pt.density > best)
            {
                best = pt.density;
                qbest = pt.q;
            }
        CHECK(qbest == 0.0);

        // unit density contributes nothing
        for (auto const& pt : cc)
            if (std::abs(c.at(pt.q) - 1.0) < 1e-15)
                CHECK(pt.density == 0.0);
    }

    TEST_CASE("entropic moments decrease in alpha where J < 1")
    {
        for (auto spec : {StateSpec::confined(1, 0.5, 1, 0), StateSpec::confined(1, 2.5, 2, 1)})
        {
            auto cp = profile_of(spec);
            REQUIRE(cp.J0() < 1.0);
            double prev = entropic_moment(cp, 1.0);
            for (double a = 1.25; a <= 3.0; a += 0.25)
            {
                double const w = entropic_moment(cp, a);
                CHECK(w < prev);
                prev = w;
            }
        }
    }

    TEST_CASE("Table II trends and reciprocity")
    {
        std::pair<int, int> const states[] = {{1, 0}, {2, 0}, {3, 0}, {2, 1}, {3, 1}, {3, 2}};
        double const rcs[] = {0.1, 0.2, 0.5, 1, 2.5, 5};
        std::vector<std::vector<std::pair<double, double>>> se(6);
        for (int s = 0; s < 6; ++s)
            for (double rc : rcs)
            {
                auto cp = profile_of(StateSpec::confined(1, rc, states[s].first, states[s].second));
                se[s].emplace_back(shannon_of_profile(cp), onicescu_of_profile(cp));
            }
        for (auto const& row : se)
            for (std::size_t i = 1; i < row.size(); ++i)
            {
                CHECK(row[i].first < row[i - 1].first);
                CHECK(row[i].second > row[i - 1].second);
            }
        for (std::size_t k : {0u, 3u})  // rc = 0.1 and 1
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b)
                    if (se[a][k].first < se[b][k].first)
                        CHECK(se[a][k].second > se[b][k].second);
    }
}
