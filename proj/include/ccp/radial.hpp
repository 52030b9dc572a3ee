#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ccp
{

/*!
 * Hydrogen-like state: nuclear charge Z, confinement radius rc (bohr) or
 * unbounded, principal n >= 1 and orbital 0 <= l < n.
 */
struct StateSpec
{
    double Z = 1.0;
    std::optional<double> rc;
    int n = 1;
    int l = 0;

    static StateSpec confined(double Z, double rc, int n, int l)
    {
        return {Z, rc, n, l};
    }
    static StateSpec free(double Z, int n, int l) { return {Z, {}, n, l}; }

    bool is_confined() const { return rc.has_value(); }
    int radial_nodes() const { return n - l - 1; }

    // Throws DomainError on Z <= 0, rc <= 0, n < 1 or l outside [0, n).
    void validate() const;

    //! Spectroscopic label such as "3d".
    std::string label() const;
};

//! Regular solution value and derivative at a radius.
struct RadialValue
{
    double u;
    double du;
};

/*!
 * Regular solution of u'' = (l(l+1)/r^2 - 2Z/r - 2E) u with u ~ r^(l+1),
 * leading coefficient 1, evaluated at r_target > 0 by a Frobenius series
 * near the origin followed by Taylor-restart stepping. Valid for either
 * sign of E.
 */
RadialValue radial_series_eval(double E, double Z, int l, double r_target);

struct SolveOptions
{
    double tolerance = 1e-11;
    //! Scan ceiling; defaults to 1e4 (n+l+1)^2 / rc^2.
    std::optional<double> ceiling;
};

// (n-l)-th Dirichlet eigenvalue of the confined l channel, hartree.
double solve_energy(StateSpec const& spec, SolveOptions const& opts = {});

// -Z^2 / (2 n^2) for an unbounded state.
double free_energy(StateSpec const& spec);

//! Grid sampling policy for RadialSolution.
struct GridPolicy
{
    int min_points = 2000;
    //! Maximum trapezoid-vs-quadrature norm discrepancy.
    double norm_tolerance = 1e-10;
};

/*!
 * Normalized reduced radial eigenfunction u = r R.
 *
 * Confined states store the piecewise power series of the march, so u and
 * u' can be evaluated anywhere in [0, rc] to near machine precision; free
 * states use the closed Laguerre form truncated where |u| < 1e-16 max|u|.
 */
class RadialSolution
{
  public:
    //! Local power series valid on [lo, hi], expanded about center.
    struct Segment
    {
        double lo;
        double hi;
        double center;
        std::vector<double> coef;
    };

    StateSpec const& spec() const { return spec_; }
    double energy() const { return energy_; }
    std::vector<double> const& grid() const { return grid_; }
    std::vector<double> const& u() const { return u_; }
    int node_count() const { return node_count_; }
    double norm_residual() const { return norm_residual_; }

    //! Upper integration limit: rc, or the free-state cutoff.
    double extent() const { return extent_; }

    //! Natural panel boundaries for quadrature over [0, extent].
    std::vector<double> const& breaks() const { return breaks_; }

    double value(double r) const;
    double derivative(double r) const;
    RadialValue evaluate(double r) const;

    //! u'(rc); zero for free states.
    double wall_slope() const { return wall_slope_; }

    //! Taylor coefficients g_k of u/r^(l+1) at the origin, k = 0..5.
    std::array<double, 6> const& origin_coefficients() const
    {
        return origin_;
    }

    // Integral of u^2 f(r) over [0, extent] with the stored panels.
    template<class F>
    double expectation(F&& f) const;

    double mean_inverse_r() const;
    double mean_inverse_r2() const;

    //! <p^2> = 2E + 2Z <1/r>.
    double p2_virial() const;
    //! <p^4> = integral |-u'' + l(l+1) u / r^2|^2 dr = 4 <(E + Z/r)^2>.
    double p4_position() const;

  private:
    friend RadialSolution build_wavefunction(StateSpec const&, double,
                                             GridPolicy const&);

    void sample_grid(GridPolicy const& policy);

    StateSpec spec_;
    double energy_ = 0.0;
    double extent_ = 0.0;
    std::vector<double> grid_;
    std::vector<double> u_;
    int node_count_ = 0;
    double norm_residual_ = 0.0;
    std::vector<double> breaks_;
    double wall_slope_ = 0.0;
    std::array<double, 6> origin_{};

    // Confined representation.
    std::vector<Segment> segments_;

    // Free representation.
    double free_norm_ = 0.0;
};

// Normalized eigenfunction at eigenvalue E. Throws WrongRootError when the
// node count differs from n - l - 1.
RadialSolution build_wavefunction(StateSpec const& spec, double E,
                                  GridPolicy const& policy = {});

//! Solve (confined) or take the closed-form energy (free), then build.
RadialSolution solve_state(StateSpec const& spec,
                           SolveOptions const& opts = {},
                           GridPolicy const& policy = {});

}  // namespace ccp

#include "ccp/radial.ipp"
