#pragma once

#include <optional>
#include <vector>

#include "ccp/quadrature.hpp"
#include "ccp/radial.hpp"

namespace ccp
{

/*!
 * Large-p model of the momentum density.
 *
 * For a confined state Green's identity gives
 *   F(p) = [u'(rc) s_l(p rc) + 2Z K(p)] / (p^2 - 2E),  K = int u/r s_l(pr) dr
 * with s_l(x) = x j_l(x). K is replaced by its endpoint expansion: the wall
 * term u'(rc) s_l(p rc) / (rc p^2) and the origin series
 * sum_k g_k M_k / p^(l+k+1) from u/r = r^l sum g_k r^k. Free states keep only
 * the origin series.
 */
class TailModel
{
  public:
    TailModel() = default;
    explicit TailModel(RadialSolution const& sol);

    //! Unnormalized density (2/pi) F^2 at p.
    double density(double p) const;
    //! Signed sqrt(2/pi) F at p.
    double amplitude(double p) const;
    //! Density with s_l(p rc)^2 replaced by its mean 1/2.
    double averaged_density(double p) const;
    bool confined() const { return confined_; }
    double wall_slope() const { return slope_; }

  private:
    double origin_series(double p) const;

    bool confined_ = false;
    int l_ = 0;
    double Z_ = 1.0;
    double E_ = 0.0;
    double rc_ = 0.0;
    double slope_ = 0.0;
    std::vector<double> mk_;  // g_k M_k for k = 0, 2, 4
};

/*!
 * Spherically averaged electron momentum density I(p) = p^2 |phi(p)|^2.
 *
 * I is held at the Gauss-Legendre nodes of panels covering [0, p_max]; the
 * flattened grid() also carries the end points 0 and p_max. Beyond p_max the
 * TailModel supplies moments analytically.
 */
class MomentumDensity
{
  public:
    StateSpec const& spec() const { return spec_; }
    double energy() const { return energy_; }
    std::vector<double> const& grid() const { return grid_; }
    std::vector<double> const& density() const { return density_; }
    //! Signed p phi(p) on grid(), normalized like density().
    std::vector<double> const& amplitude() const { return amplitude_; }
    double p_max() const { return p_max_; }
    double raw_norm() const { return raw_norm_; }
    double tail_exponent() const { return tail_exponent_; }
    //! Integral of I beyond p_max (after renormalization).
    double tail_mass() const { return tail_moment(0); }
    //! Estimated size of what the averaged far-tail treatment neglects.
    double tail_bound() const { return tail_bound_; }
    //! u'(rc)^2 / pi: averaged large-p limit of p^4 I for confined states.
    double p4_tail_slope() const { return p4_slope_; }

    std::vector<double> const& breaks() const { return breaks_; }
    int order() const { return order_; }
    //! I at the nodes of panel k.
    double const* panel_values(std::size_t k) const
    {
        return density_.data() + 1 + k * order_;
    }
    double const* panel_amplitudes(std::size_t k) const
    {
        return amplitude_.data() + 1 + k * order_;
    }

    //! I at any p >= 0: panel interpolation below p_max, tail model above.
    double at(double p) const;
    //! Signed p phi(p) at any p >= 0.
    double amplitude_at(double p) const;
    TailModel const& tail_model() const { return tail_; }
    //! Normalization factor applied to the raw density.
    double scale() const { return scale_; }

    //! Integral over (p_max, inf) of p^m I, m in [-1, 2] (any m for free
    //! states). Throws DivergenceError when it diverges.
    double tail_moment(int m) const;

  private:
    friend MomentumDensity build_emd(RadialSolution const&,
                                     QuadratureSpec const&,
                                     std::optional<double>);

    StateSpec spec_;
    double energy_ = 0.0;
    std::vector<double> grid_;
    std::vector<double> density_;
    std::vector<double> amplitude_;
    std::vector<double> breaks_;
    int order_ = 16;
    double p_max_ = 0.0;
    double raw_norm_ = 1.0;
    double tail_exponent_ = 0.0;
    double tail_bound_ = 0.0;
    double p4_slope_ = 0.0;
    double scale_ = 1.0;
    TailModel tail_;
    std::vector<double> tail_cache_;  // tail moments for m = -1..2
};

/*!
 * phi(p) = sqrt(2/pi) int u(r) r j_l(p r) dr, the (-i)^l phase dropped, by
 * oscillatory quadrature at wavenumber p.
 */
double transform_to_momentum(RadialSolution const& sol, double p,
                             QuadratureSpec const& qspec = {});

//! Closed-form I(p) of a free state from the Gegenbauer representation.
double emd_free_closed_form(StateSpec const& spec, double p);

/*!
 * Momentum density on panels of width min(pi / (2 rc), (k0 + Z/n) / 8) up to
 * p_max = max(40 pi / rc, 30 (k0 + Z/n)), k0 = sqrt(<p^2>). The raw norm
 * including the modeled tail is recorded and the density renormalized.
 * Throws AccuracyError when |raw_norm - 1| > 1e-4.
 */
MomentumDensity build_emd(RadialSolution const& sol,
                          QuadratureSpec const& qspec = {},
                          std::optional<double> pmax_override = {});

//! int_0^{p_max} p^m I dp without any tail contribution.
double truncated_moment(MomentumDensity const& emd, double m);

//! <p^m> = int p^m I dp including the tail, m in [-1, 4].
double moment_from_emd(MomentumDensity const& emd, int m);

//! int phi_a phi_b p^2 dp on the panels of a, with b interpolated, plus
//! the modeled cross tail.
double overlap(MomentumDensity const& a, MomentumDensity const& b);

}  // namespace ccp
