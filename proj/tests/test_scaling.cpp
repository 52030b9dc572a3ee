#include <doctest.h>

#include <cmath>

#include "ccp/errors.hpp"
#include "ccp/scaling.hpp"

using namespace ccp;

namespace
{
ComptonProfile profile_of(StateSpec const& s)
{
    return build_profile(build_emd(solve_state(s)));
}
}  // namespace

TEST_SUITE("scaling")
{
    TEST_CASE("ScaleMap")
    {
        auto m = ScaleMap::for_charge(4.0);
        CHECK(m.lambda * m.Z == 1.0);
        CHECK_THROWS_AS(ScaleMap::for_charge(0.0), DomainError);
    }

    TEST_CASE("reference_spec")
    {
        auto r = reference_spec(StateSpec::confined(2, 5, 1, 0));
        CHECK(r.Z == 1.0);
        CHECK(*r.rc == 10.0);
        auto same = reference_spec(StateSpec::confined(1, 3, 2, 1));
        CHECK(*same.rc == 3.0);
        CHECK(same.n == 2);
        CHECK(same.l == 1);
        auto f = reference_spec(StateSpec::free(5, 1, 0));
        CHECK(!f.is_confined());
        CHECK(f.Z == 1.0);
    }

    TEST_CASE("scale_energy")
    {
        CHECK(scale_energy(-0.5, 2) == -2.0);
        CHECK(scale_energy(-0.37, 1) == -0.37);
        double const ref = solve_energy(StateSpec::confined(1, 10, 1, 0));
        double const direct = solve_energy(StateSpec::confined(2, 5, 1, 0));
        CHECK(std::abs(scale_energy(ref, 2) - direct) <= 1e-8 * std::abs(direct));
    }

    TEST_CASE("scale_profile")
    {
        auto f1 = profile_of(StateSpec::free(1, 1, 0));
        auto id = scale_profile(f1, 1.0);
        CHECK(id.values() == f1.values());
        CHECK(id.grid() == f1.grid());

        auto f3 = scale_profile(f1, 3.0);
        CHECK(std::abs(f3.J0() - 0.848826 / 3) < 5e-7);
        CHECK(f3.spec().Z == 3.0);
        CHECK(std::abs(f3.half_norm_residual() - f1.half_norm_residual()) < 1e-15);

        auto ref = profile_of(StateSpec::confined(1, 10, 1, 0));
        auto scaled = scale_profile(ref, 2.0);
        auto direct = profile_of(StateSpec::confined(2, 5, 1, 0));
        for (double q = 0.0; q < 12.0; q += 0.173)
            CHECK(std::abs(scaled.at(q) - direct.at(q)) <= 1e-7 * direct.J0());
    }

    TEST_CASE("scale_moments")
    {
        auto m = scale_moments({{2, 1.0}, {0, 1.0}, {-1, 2 * 1.35812218}}, 3.0);
        CHECK(std::abs(m[2] - 9.0) < 1e-14);
        CHECK(m[0] == 1.0);
        auto n = scale_moments({{-1, 2 * 1.35812218}}, 5.0);
        CHECK(std::abs(n[-1] / 2 - 1.35812218 / 5) < 1e-15);
    }

    TEST_CASE("scale_entropies")
    {
        auto c1 = closed_1s_measures(1, {3.0});
        auto z4 = scale_entropies(c1, 4);
        CHECK(std::abs(z4.shannon - 1.104539) < 5e-7);
        auto z3 = scale_entropies(c1, 3);
        CHECK(std::abs(z3.onicescu - 0.09284038) < 5e-9);
        CHECK(std::abs(z3.entropic_moments[0].second - closed_1s_entropic_moment(3, 3)) < 1e-14);
        auto id = scale_entropies(c1, 1);
        CHECK(id.shannon == c1.shannon);
        CHECK(id.onicescu == c1.onicescu);
    }

    TEST_CASE("normalization and entropy trends under scaling")
    {
        auto ref = profile_of(StateSpec::confined(1, 2, 2, 1));
        auto info = info_measures(ref);
        double prevS = info.shannon;
        double prevE = info.onicescu;
        for (double Z : {2.0, 3.0, 4.0, 5.0})
        {
            auto cp = scale_profile(ref, Z);
            CHECK(std::abs(entropic_moment(cp, 1.0) - entropic_moment(ref, 1.0)) < 1e-15);
            auto s = scale_entropies(info, Z);
                        // the truncated profile carries mass slightly below 1/2
            double const kept = entropic_moment(ref, 1.0);
            CHECK(std::abs(shannon_of_profile(cp) - (info.shannon + std::log(Z) * kept)) < 1e-12);
            CHECK(std::abs(shannon_of_profile(cp) - s.shannon) < 1e-6);
            CHECK(std::abs(onicescu_of_profile(cp) - s.onicescu) < 1e-14);
            CHECK(s.shannon > prevS);
            CHECK(s.onicescu < prevE);
            prevS = s.shannon;
            prevE = s.onicescu;
        }
    }
}
