#pragma once

#include <utility>
#include <vector>

#include "ccp/compton.hpp"

namespace ccp
{

enum class InfoRoute
{
    numeric,
    closed_form
};

/*!
 * Information measures of a Compton profile on the half line q >= 0.
 *
 * Free states include the modeled tail beyond q_max; for confined states the
 * tail is only estimated and reported in tail_bound.
 */
struct InfoMeasures
{
    StateSpec spec;
    double shannon = 0.0;
    double onicescu = 0.0;
    std::vector<std::pair<double, double>> entropic_moments;
    InfoRoute route = InfoRoute::numeric;
    double tail_bound = 0.0;
};

//! S = -int J ln J dq, with 0 ln 0 = 0.
double shannon_of_profile(ComptonProfile const& cp);

//! E = int J^2 dq.
double onicescu_of_profile(ComptonProfile const& cp);

// omega^alpha = int J^alpha dq for alpha > 1/6.
double entropic_moment(ComptonProfile const& cp, double alpha);

//! Estimated magnitude of the Shannon integrand beyond q_max.
double shannon_tail_estimate(ComptonProfile const& cp);

InfoMeasures info_measures(ComptonProfile const& cp,
                           std::vector<double> const& alphas = {});

double closed_1s_shannon(double Z);
double closed_1s_onicescu(double Z);
double closed_1s_entropic_moment(double alpha, double Z);

//! Closed-form measures of the free 1s state.
InfoMeasures closed_1s_measures(double Z, std::vector<double> const& alphas = {});

struct DensityPoint
{
    double q;
    double density;
};

//! -J ln J on the profile grid.
std::vector<DensityPoint> entropy_density_curve(ComptonProfile const& cp);

//! int of the sampled curve with the profile's panel weights.
double integrate_density_curve(ComptonProfile const& cp,
                               std::vector<DensityPoint> const& curve);

}  // namespace ccp
