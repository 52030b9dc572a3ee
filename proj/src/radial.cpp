#include "ccp/radial.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "ccp/errors.hpp"
#include "ccp/specfun.hpp"

namespace ccp
{
namespace
{
constexpr int max_terms = 160;
constexpr double series_eps = 1e-17;
constexpr double rescale_limit = 1e100;

struct Channel
{
    double E;
    double Z;
    int l;
    double L() const { return l * (l + 1.0); }
};

struct MarchResult
{
    double u = 0.0;
    double du = 0.0;
    std::vector<RadialSolution::Segment> segments;
};

// Frobenius coefficients c_m of u = r^(l+1) sum c_m r^m up to convergence at
// radius r.
std::vector<double> frobenius_coefficients(Channel const& ch, double r)
{
    std::vector<double> c{1.0};
    double cm2 = 0.0;
    double cm1 = 1.0;
    double rp = 1.0;
    int small = 0;
    for (int m = 1; m < max_terms; ++m)
    {
        double const cm = -(2.0 * ch.Z * cm1 + 2.0 * ch.E * cm2)
                          / (m * (m + 2.0 * ch.l + 1.0));
        c.push_back(cm);
        rp *= r;
        if (std::abs(cm * rp) * m < series_eps)
        {
            if (++small >= 2 && m >= 6)
                return c;
        }
        else
        {
            small = 0;
        }
        cm2 = cm1;
        cm1 = cm;
    }
    throw SeriesError("radial series: Frobenius expansion did not converge");
}

RadialValue eval_frobenius(std::vector<double> const& c, int l, double r)
{
    double s = 0.0;
    double ds = 0.0;
    for (std::size_t m = c.size(); m-- > 0;)
    {
        s = s * r + c[m];
        if (m > 0)
            ds = ds * r + m * c[m];
    }
    double const rl = std::pow(r, l);
    return {rl * r * s, rl * ((l + 1.0) * s + r * ds)};
}

// Taylor coefficients of u about r0 from u(r0), u'(r0), converged at step h.
std::vector<double> taylor_coefficients(Channel const& ch, double r0, double u0,
                                        double du0, double h)
{
    double const A = ch.L() - 2.0 * ch.Z * r0 - 2.0 * ch.E * r0 * r0;
    double const B = -(2.0 * ch.Z + 4.0 * ch.E * r0);
    double const C = -2.0 * ch.E;
    double const r02 = r0 * r0;

    std::vector<double> a{u0, du0};
    a.reserve(64);
    int small = 0;
    double const ah = std::abs(h);
    double const ref = std::max(std::abs(u0), std::abs(du0) * ah) + 1e-300;
    double hp = ah;
    for (int k = 0; k + 2 < max_terms; ++k)
    {
        double const ak = a[k];
        double const ak1 = a[k + 1];
        double const akm1 = k >= 1 ? a[k - 1] : 0.0;
        double const akm2 = k >= 2 ? a[k - 2] : 0.0;
        double const num = A * ak + B * akm1 + C * akm2
                           - 2.0 * r0 * (k + 1.0) * k * ak1
                           - k * (k - 1.0) * ak;
        double const next = num / (r02 * (k + 2.0) * (k + 1.0));
        a.push_back(next);
        hp *= ah;
        if (std::abs(next) * hp * (k + 2) < series_eps * ref)
        {
            if (++small >= 2 && k >= 4)
                return a;
        }
        else
        {
            small = 0;
        }
    }
    throw SeriesError("radial series: Taylor restart did not converge");
}

RadialValue eval_taylor(std::vector<double> const& a, double t)
{
    double s = 0.0;
    double ds = 0.0;
    for (std::size_t k = a.size(); k-- > 0;)
    {
        s = s * t + a[k];
        if (k > 0)
            ds = ds * t + k * a[k];
    }
    return {s, ds};
}

double max_step(Channel const& ch)
{
    double h = 0.5;
    if (ch.E != 0.0)
        h = std::min(h, 0.1 / std::sqrt(2.0 * std::abs(ch.E)));
    return h;
}

double origin_step(Channel const& ch)
{
    return std::min(max_step(ch), 1.0 / ch.Z);
}

double step_at(Channel const& ch, double r0)
{
    double const local = std::abs(2.0 * ch.E) + 2.0 * ch.Z / r0
                         + ch.L() / (r0 * r0);
    return std::min({max_step(ch), 0.5 * r0, 0.5 / std::sqrt(local)});
}

int sign_of(double v)
{
    return (v > 0.0) - (v < 0.0);
}

void rescale(RadialValue& v, std::vector<RadialSolution::Segment>& segs)
{
    if (std::abs(v.u) <= rescale_limit && std::abs(v.du) <= rescale_limit)
        return;
    v.u /= rescale_limit;
    v.du /= rescale_limit;
    for (auto& seg : segs)
        for (auto& x : seg.coef)
            x /= rescale_limit;
}

// Outward march of the regular solution from the origin to r_end.
MarchResult march_out(Channel const& ch, double r_end)
{
    MarchResult out;
    double const r1 = std::min(origin_step(ch), r_end);
    auto c = frobenius_coefficients(ch, r1);
    auto v = eval_frobenius(c, ch.l, r1);
    out.segments.push_back({0.0, r1, 0.0, std::move(c)});

    double r = r1;
    while (r < r_end)
    {
        double h = step_at(ch, r);
        if (r + h > r_end || r_end - (r + h) < 1e-3 * h)
            h = r_end - r;
        auto a = taylor_coefficients(ch, r, v.u, v.du, h);
        v = eval_taylor(a, h);
        out.segments.push_back({r, r + h, r, std::move(a)});
        r += h;
        rescale(v, out.segments);
    }
    out.u = v.u;
    out.du = v.du;
    return out;
}

// Inward march from the wall with u(rc) = 0, u'(rc) = -1 down to r_stop.
// Segments are returned in increasing radius.
MarchResult march_in(Channel const& ch, double rc, double r_stop)
{
    MarchResult out;
    RadialValue v{0.0, -1.0};
    double r = rc;
    while (r > r_stop)
    {
        double h = step_at(ch, r);
        if (r - h < r_stop || (r - h) - r_stop < 1e-3 * h)
            h = r - r_stop;
        auto a = taylor_coefficients(ch, r, v.u, v.du, -h);
        v = eval_taylor(a, -h);
        out.segments.push_back({r - h, r, r, std::move(a)});
        r -= h;
        rescale(v, out.segments);
    }
    std::reverse(out.segments.begin(), out.segments.end());
    out.u = v.u;
    out.du = v.du;
    return out;
}

// Outer classical turning point, or +inf when the state is allowed out to
// any radius.
double outer_turning_point(Channel const& ch)
{
    if (ch.E >= 0.0)
        return std::numeric_limits<double>::infinity();
    double const disc = ch.Z * ch.Z + 2.0 * ch.E * ch.L();
    if (disc <= 0.0)
        return std::numeric_limits<double>::infinity();
    return (ch.Z + std::sqrt(disc)) / (-2.0 * ch.E);
}

struct ShootValue
{
    double g;
    int count;
};

ShootValue shoot(Channel const& ch, double rc)
{
    double const r1 = std::min(origin_step(ch), rc);
    auto c = frobenius_coefficients(ch, r1);
    auto v = eval_frobenius(c, ch.l, r1);
    double r = r1;
    int prev = sign_of(v.u);
    int count = 0;
    while (r < rc)
    {
        double h = step_at(ch, r);
        if (r + h > rc || rc - (r + h) < 1e-3 * h)
            h = rc - r;
        auto a = taylor_coefficients(ch, r, v.u, v.du, h);
        v = eval_taylor(a, h);
        r += h;
        int const s = sign_of(v.u);
        if (s != 0 && prev != 0 && s != prev)
            ++count;
        if (s != 0)
            prev = s;
        if (std::abs(v.u) > rescale_limit || std::abs(v.du) > rescale_limit)
        {
            v.u /= rescale_limit;
            v.du /= rescale_limit;
        }
    }
    return {v.u / std::hypot(v.u, rc * v.du), count};
}

double grid_map(double t, double R, double b)
{
    return R * (t * t + b * t) / (1.0 + b);
}

double grid_jacobian(double t, double R, double b)
{
    return R * (2.0 * t + b) / (1.0 + b);
}

constexpr double grid_b = 0.05;

std::string format_double(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}
}  // namespace

void StateSpec::validate() const
{
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("StateSpec: Z must be positive");
    if (rc && !(*rc > 0.0 && std::isfinite(*rc)))
        throw DomainError("StateSpec: rc must be positive and finite");
    if (n < 1)
        throw DomainError("StateSpec: n must be >= 1");
    if (l < 0 || l >= n)
        throw DomainError("StateSpec: need 0 <= l < n");
    if (l > max_bessel_l)
        throw DomainError("StateSpec: l above supported maximum");
}

std::string StateSpec::label() const
{
    static char const letters[] = "spdfghikl";
    std::string s = std::to_string(n);
    s += (l >= 0 && l <= max_bessel_l) ? letters[l] : '?';
    return s;
}

RadialValue radial_series_eval(double E, double Z, int l, double r_target)
{
    if (!(r_target > 0.0))
        throw DomainError("radial_series_eval: r must be positive");
    if (!(Z > 0.0) || l < 0)
        throw DomainError("radial_series_eval: need Z > 0 and l >= 0");
    Channel const ch{E, Z, l};
    double const r1 = std::min(origin_step(ch), r_target);
    auto c = frobenius_coefficients(ch, r1);
    auto v = eval_frobenius(c, l, r1);
    double r = r1;
    while (r < r_target)
    {
        double h = step_at(ch, r);
        if (r + h > r_target || r_target - (r + h) < 1e-3 * h)
            h = r_target - r;
        auto a = taylor_coefficients(ch, r, v.u, v.du, h);
        v = eval_taylor(a, h);
        r += h;
    }
    return v;
}

double free_energy(StateSpec const& spec)
{
    spec.validate();
    if (spec.is_confined())
        throw ContractError("free_energy: state is confined");
    return -spec.Z * spec.Z / (2.0 * spec.n * spec.n);
}

double solve_energy(StateSpec const& spec, SolveOptions const& opts)
{
    spec.validate();
    if (!spec.is_confined())
        throw ContractError("solve_energy: state is unbounded");
    double const rc = *spec.rc;
    int const k = spec.n - spec.l;
    double const ceiling
        = opts.ceiling.value_or(1e4 * (spec.n + spec.l + 1.0)
                                * (spec.n + spec.l + 1.0) / (rc * rc));
    double const step = std::max(0.1, 0.5 / (rc * rc));

    // Confinement raises every level above its free value.
    double lo = -spec.Z * spec.Z / (2.0 * spec.n * spec.n)
                - 1e-3 * spec.Z * spec.Z;
    auto eval = [&](double E) { return shoot({E, spec.Z, spec.l}, rc); };
    auto lo_v = eval(lo);
    if (lo_v.count >= k)
        throw SearchError("solve_energy: lower scan bound already above root",
                          lo, lo);
    double hi = lo;
    ShootValue hi_v{};
    for (;;)
    {
        hi = lo + step;
        hi_v = eval(hi);
        if (hi_v.count >= k)
            break;
        lo = hi;
        lo_v = hi_v;
        if (hi > ceiling)
        {
            throw SearchError("solve_energy: no bracket below ceiling "
                                  + format_double(ceiling) + " hartree",
                              lo, hi);
        }
    }
    // Refine until the bracket isolates exactly the k-th root.
    while (lo_v.count != k - 1 || hi_v.count != k)
    {
        double const mid = 0.5 * (lo + hi);
        auto mv = eval(mid);
        if (mv.count >= k)
        {
            hi = mid;
            hi_v = mv;
        }
        else
        {
            lo = mid;
            lo_v = mv;
        }
        if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi)))
            break;
    }
    if (sign_of(lo_v.g) == sign_of(hi_v.g))
    {
        throw SearchError("solve_energy: bracket without sign change", lo, hi);
    }
    double const tol = std::max(opts.tolerance,
                                4e-16 * std::max(std::abs(lo), std::abs(hi)));
    auto g = [&](double E) { return eval(E).g; };
    std::uintmax_t iters = 200;
    auto const root = boost::math::tools::toms748_solve(
        g, lo, hi, lo_v.g, hi_v.g,
        [tol](double a, double b) { return std::abs(b - a) <= tol; }, iters);
    return 0.5 * (root.first + root.second);
}

double RadialSolution::value(double r) const
{
    return evaluate(r).u;
}

double RadialSolution::derivative(double r) const
{
    return evaluate(r).du;
}

RadialValue RadialSolution::evaluate(double r) const
{
    if (r <= 0.0)
        return {0.0, spec_.l == 0 ? origin_[0] : 0.0};
    if (r >= extent_)
    {
        if (spec_.is_confined() && r == extent_)
            return {0.0, wall_slope_};
        if (spec_.is_confined())
            return {0.0, 0.0};
    }
    if (!segments_.empty())
    {
        auto it = std::upper_bound(
            segments_.begin(), segments_.end(), r,
            [](double x, Segment const& s) { return x < s.lo; });
        auto const& seg = *(it - 1);
        return (it - 1) == segments_.begin()
                   ? eval_frobenius(seg.coef, spec_.l, r)
                   : eval_taylor(seg.coef, r - seg.center);
    }
    // Free: u = N r rho^l exp(-rho/2) L(rho), rho = 2 Z r / n.
    int const n = spec_.n;
    int const l = spec_.l;
    double const k = 2.0 * spec_.Z / n;
    double const rho = k * r;
    double const e = std::exp(-0.5 * rho);
    double const lag = assoc_laguerre(n - l - 1, 2 * l + 1, rho);
    double const dlag
        = n - l - 1 > 0 ? -assoc_laguerre(n - l - 2, 2 * l + 2, rho) : 0.0;
    double const rl = std::pow(rho, l);
    double const u = free_norm_ * r * rl * e * lag;
    // d/dr [r rho^l e L] = rho^l e L + r k rho^l e (l/rho L - L/2 + L')
    double const du = free_norm_ * rl * e
                      * (lag * (1.0 + l) - 0.5 * rho * lag + rho * dlag);
    return {u, du};
}

double RadialSolution::mean_inverse_r() const
{
    return expectation([](double r) { return 1.0 / r; });
}

double RadialSolution::mean_inverse_r2() const
{
    return expectation([](double r) { return 1.0 / (r * r); });
}

double RadialSolution::p2_virial() const
{
    return 2.0 * energy_ + 2.0 * spec_.Z * mean_inverse_r();
}

double RadialSolution::p4_position() const
{
    double const E = energy_;
    double const Z = spec_.Z;
    return 4.0 * expectation([E, Z](double r) {
               double const t = E + Z / r;
               return t * t;
           });
}

void RadialSolution::sample_grid(GridPolicy const& policy)
{
    double const R = extent_;
    int npts = std::max(policy.min_points, 16);
    for (;;)
    {
        grid_.resize(npts);
        u_.resize(npts);
        double const dt = 1.0 / (npts - 1);
        double trap = 0.0;
        for (int i = 0; i < npts; ++i)
        {
            double const t = i * dt;
            double const r = grid_map(t, R, grid_b);
            grid_[i] = r;
            u_[i] = value(r);
            double const w = (i == 0 || i == npts - 1) ? 0.5 : 1.0;
            trap += w * u_[i] * u_[i] * grid_jacobian(t, R, grid_b);
        }
        trap *= dt;
        norm_residual_ = std::abs(trap - 1.0);
        if (norm_residual_ <= policy.norm_tolerance || npts > (1 << 21))
            break;
        npts = 2 * (npts - 1) + 1;
    }
    if (spec_.is_confined())
        u_.back() = 0.0;
}

RadialSolution build_wavefunction(StateSpec const& spec, double E,
                                  GridPolicy const& policy)
{
    spec.validate();
    RadialSolution sol;
    sol.spec_ = spec;
    sol.energy_ = E;
    Channel const ch{E, spec.Z, spec.l};

    if (spec.is_confined())
    {
        double const rc = *spec.rc;
        // Match an outward and an inward solution at the outer turning
        // point so that the decaying tail near the wall stays accurate.
        double rm = outer_turning_point(ch);
        if (!(rm < 0.9 * rc))
            rm = rc;
        auto out = march_out(ch, rm);
        auto& segs = sol.segments_;
        segs = std::move(out.segments);
        if (rm < rc)
        {
            auto in = march_in(ch, rc, rm);
            double const ratio = out.u / in.u;
            if (!std::isfinite(ratio) || in.u == 0.0)
                throw ContractError("build_wavefunction: matching failed for "
                                    + spec.label());
            for (auto& seg : in.segments)
            {
                for (auto& x : seg.coef)
                    x *= ratio;
                segs.push_back(std::move(seg));
            }
        }
        sol.extent_ = rc;
        sol.breaks_.reserve(segs.size() + 1);
        for (auto const& seg : segs)
            sol.breaks_.push_back(seg.lo);
        sol.breaks_.push_back(rc);

        double const norm = sol.expectation([](double) { return 1.0; });
        double const scale = 1.0 / std::sqrt(norm);
        for (auto& seg : segs)
            for (auto& x : seg.coef)
                x *= scale;

        double umax = 0.0;
        int prev = 0;
        int nodes = 0;
        for (std::size_t i = 0; i + 1 < sol.breaks_.size(); ++i)
        {
            double const mid = sol.value(0.5 * (sol.breaks_[i] + sol.breaks_[i + 1]));
            umax = std::max(umax, std::abs(mid));
            if (i == 0)
                continue;
            double const v = sol.value(sol.breaks_[i]);
            umax = std::max(umax, std::abs(v));
            int const s = sign_of(v);
            if (s != 0 && prev != 0 && s != prev)
                ++nodes;
            if (s != 0)
                prev = s;
        }
        sol.node_count_ = nodes;

        auto const& last = segs.back();
        RadialValue const wall = segs.size() == 1
                                     ? eval_frobenius(last.coef, spec.l, rc)
                                     : eval_taylor(last.coef, rc - last.center);
        sol.wall_slope_ = wall.du;
        if (std::abs(wall.u) > 1e-9 * umax)
        {
            throw ContractError("build_wavefunction: E = " + format_double(E)
                                + " does not satisfy u(rc) = 0 for "
                                + spec.label());
        }
        // Derivative mismatch at the junction flags an energy that is not an
        // eigenvalue.
        if (rm < rc)
        {
            auto it = std::find_if(segs.begin(), segs.end(),
                                   [rm](RadialSolution::Segment const& g) { return g.lo >= rm; });
            auto const& left = *(it - 1);
            RadialValue const a = (it - 1) == segs.begin()
                                      ? eval_frobenius(left.coef, spec.l, rm)
                                      : eval_taylor(left.coef, rm - left.center);
            RadialValue const b = eval_taylor(it->coef, rm - it->center);
            double const dscale = std::max(std::abs(a.du), std::abs(a.u) / rm);
            if (std::abs(a.du - b.du) > 1e-6 * dscale)
            {
                throw ContractError("build_wavefunction: E = " + format_double(E)
                                    + " is not an eigenvalue for " + spec.label());
            }
        }
        auto const& head = segs.front().coef;
        for (std::size_t k = 0; k < sol.origin_.size() && k < head.size(); ++k)
            sol.origin_[k] = head[k];
    }
    else
    {
        int const n = spec.n;
        int const l = spec.l;
        double const Z = spec.Z;
        double const k = 2.0 * Z / n;
        sol.free_norm_ = std::pow(k, 1.5)
                         * std::exp(0.5
                                    * (ln_gamma(n - l) - ln_gamma(n + l + 1.0)
                                       - std::log(2.0 * n)));
        sol.extent_ = std::numeric_limits<double>::infinity();

        // Cutoff where |u| drops below 1e-16 of its maximum.
        double const dr = n / (8.0 * Z);
        double const r_peak = n * n / Z;
        double umax = 0.0;
        double last_big = 0.0;
        for (double r = dr; r < 200.0 * r_peak + 400.0 / Z; r += dr)
        {
            double const v = std::abs(sol.value(r));
            umax = std::max(umax, v);
            if (v >= 1e-16 * umax)
                last_big = r;
            else if (r > 2.0 * r_peak && v < 1e-18 * umax)
                break;
        }
        double const R = last_big + dr;
        sol.extent_ = R;
        double const width = std::min(n / (4.0 * Z), R / 64.0);
        int const npan = static_cast<int>(std::ceil(R / width));
        for (int i = 0; i <= npan; ++i)
            sol.breaks_.push_back(R * i / npan);
        sol.node_count_ = 0;
        int prev = 0;
        for (int i = 1; i < 64 * npan; ++i)
        {
            int const s = sign_of(sol.value(R * i / (64.0 * npan)));
            if (s != 0 && prev != 0 && s != prev)
                ++sol.node_count_;
            if (s != 0)
                prev = s;
        }
        double const lead = sol.free_norm_ * std::pow(k, l)
                            * std::exp(ln_gamma(n + l + 1.0) - ln_gamma(n - l)
                                       - ln_gamma(2.0 * l + 2.0));
        auto const frob = frobenius_coefficients(ch, 1e-3);
        for (std::size_t j = 0; j < sol.origin_.size() && j < frob.size(); ++j)
            sol.origin_[j] = frob[j] * lead;
    }

    if (sol.node_count_ != spec.radial_nodes())
    {
        throw WrongRootError("build_wavefunction: " + spec.label() + " has "
                             + std::to_string(sol.node_count_)
                             + " radial nodes, expected "
                             + std::to_string(spec.radial_nodes()));
    }
    sol.sample_grid(policy);
    return sol;
}

RadialSolution solve_state(StateSpec const& spec, SolveOptions const& opts,
                           GridPolicy const& policy)
{
    double const E = spec.is_confined() ? solve_energy(spec, opts)
                                        : free_energy(spec);
    return build_wavefunction(spec, E, policy);
}

}  // namespace ccp
