#pragma once

#include <map>

#include "ccp/compton.hpp"
#include "ccp/infotheory.hpp"
#include "ccp/radial.hpp"

namespace ccp
{

//! Isoelectronic scale map, atomic units: lambda = 1 / Z.
struct ScaleMap
{
    double Z = 1.0;
    double lambda = 1.0;

    static ScaleMap for_charge(double Z);
};

//! (Z, rc, n, l) -> (1, Z rc, n, l); free stays free.
StateSpec reference_spec(StateSpec const& spec);

//! Z^2 E_ref.
double scale_energy(double E_ref, double Z);

//! q -> Z q, J -> J / Z.
ComptonProfile scale_profile(ComptonProfile const& cp_ref, double Z);

//! <p^m> -> Z^m <p^m>, keyed by m.
std::map<int, double> scale_moments(std::map<int, double> const& moments_ref,
                                    double Z);

//! S + ln(Z)/2, E / Z, omega^alpha Z^(1 - alpha).
InfoMeasures scale_entropies(InfoMeasures const& info_ref, double Z);

}  // namespace ccp
