#include "ccp/scaling.hpp"

#include <cmath>

#include "ccp/errors.hpp"

namespace ccp
{
namespace
{
void check_charge(double Z)
{
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("scaling: Z must be positive");
}
}  // namespace

ScaleMap ScaleMap::for_charge(double Z)
{
    check_charge(Z);
    return {Z, 1.0 / Z};
}

StateSpec reference_spec(StateSpec const& spec)
{
    spec.validate();
    StateSpec ref = spec;
    ref.Z = 1.0;
    if (spec.rc)
        ref.rc = spec.Z * *spec.rc;
    return ref;
}

double scale_energy(double E_ref, double Z)
{
    check_charge(Z);
    return Z * Z * E_ref;
}

ComptonProfile scale_profile(ComptonProfile const& cp_ref, double Z)
{
    check_charge(Z);
    return cp_ref.scaled(Z);
}

std::map<int, double> scale_moments(std::map<int, double> const& moments_ref,
                                    double Z)
{
    check_charge(Z);
    std::map<int, double> out;
    for (auto const& [m, v] : moments_ref)
        out[m] = std::pow(Z, m) * v;
    return out;
}

InfoMeasures scale_entropies(InfoMeasures const& info_ref, double Z)
{
    check_charge(Z);
    InfoMeasures out = info_ref;
    out.spec.Z *= Z;
    if (out.spec.rc)
        *out.spec.rc /= Z;
    out.shannon = info_ref.shannon + 0.5 * std::log(Z);
    out.onicescu = info_ref.onicescu / Z;
    for (auto& [alpha, w] : out.entropic_moments)
        w *= std::pow(Z, 1.0 - alpha);
    out.tail_bound = info_ref.tail_bound / Z;
    return out;
}

}  // namespace ccp
