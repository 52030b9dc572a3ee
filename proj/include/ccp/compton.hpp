#pragma once

#include <vector>

#include "ccp/momentum.hpp"

namespace ccp
{

/*!
 * Compton profile J(q) = (1/2) int_q^inf I(p)/p dp on the momentum grid, so
 * that int_0^inf J dq = 1/2.
 */
class ComptonProfile
{
  public:
    StateSpec const& spec() const { return spec_; }
    std::vector<double> const& grid() const { return grid_; }
    std::vector<double> const& values() const { return J_; }
    double J0() const { return J_.front(); }
    double q_max() const { return grid_.back(); }
    double half_norm_residual() const { return half_norm_residual_; }
    int clamp_count() const { return clamp_count_; }

    std::vector<double> const& breaks() const { return breaks_; }
    int order() const { return order_; }
    double const* panel_values(std::size_t k) const
    {
        return J_.data() + 1 + k * order_;
    }
    double const* panel_nodes(std::size_t k) const
    {
        return grid_.data() + 1 + k * order_;
    }

    //! J at any q >= 0; beyond q_max from the EMD tail model.
    double at(double q) const;

    //! int_{q_max}^inf q^m J dq, m in [0, 2] (any m >= 0 for free states).
    double tail_moment(int m) const;

    //! J(q) beyond q_max from the tail model; only defined for q >= q_max.
    double tail_value(double q) const;

    MomentumDensity const& emd() const { return emd_; }

    //! Rescaled copy: q -> q * factor, J -> J / factor, describing the same
    //! state at charge Z * factor and radius rc / factor.
    ComptonProfile scaled(double factor) const;

  private:
    friend ComptonProfile build_profile(MomentumDensity const&);

    StateSpec spec_;
    std::vector<double> grid_;
    std::vector<double> J_;
    std::vector<double> breaks_;
    std::vector<double> dIp_;  // I/p at the nodes, for off-grid queries
    std::vector<double> edge_; // J at the panel breaks
    int order_ = 16;
    double half_norm_residual_ = 0.0;
    int clamp_count_ = 0;
    double qscale_ = 1.0;
    MomentumDensity emd_;
};

/*!
 * Backward cumulative quadrature of I/p from q_max towards 0. Negative
 * increments are clamped to zero and counted; more than 0.1% clamped
 * increments raises AccuracyError.
 */
ComptonProfile build_profile(MomentumDensity const& emd);

// Free circular (l = n - 1) profile in closed form.
double circular_profile_closed_form(int n, double Z, double q);

/*!
 * Humps of J beyond the central lobe on (0, q99), q99 enclosing 99% of
 * int J dq: (sign changes of J'' - 1) / 2, read from the extrema of I/p.
 */
int hump_count(ComptonProfile const& cp);

//! <p^m> from the profile: 2 J(0) for m = -1, else 2(m+1) int q^m J dq.
double moment_from_profile(ComptonProfile const& cp, int m);

}  // namespace ccp
