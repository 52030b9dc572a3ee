#include "ccp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "ccp/errors.hpp"

namespace ccp
{

StateResult compute_state(StateSpec const& spec, RunOptions const& opts)
{
    spec.validate();
    opts.qspec.validate();
    StateResult r;
    r.spec = spec;
    r.tolerance = opts.qspec.relative_tolerance;

    auto sol = std::make_shared<RadialSolution>(solve_state(spec, opts.solve));
    MomentumDensity const emd = build_emd(*sol, opts.qspec, opts.pmax_override);
    auto cp = std::make_shared<ComptonProfile>(build_profile(emd));

    r.energy = sol->energy();
    r.J0 = cp->J0();
    for (int m : {-1, 1, 2})
    {
        r.moments[m] = moment_from_profile(*cp, m);
        r.emd_moments[m] = moment_from_emd(emd, m);
    }
    r.moments[0] = 1.0;
    r.emd_moments[0] = moment_from_emd(emd, 0);
    r.moments[4] = sol->p4_position();
    r.p4_momentum_cutoff = truncated_moment(emd, 4);
    r.p2_virial = sol->p2_virial();

    InfoMeasures const info = info_measures(*cp, opts.alphas);
    r.shannon = info.shannon;
    r.onicescu = info.onicescu;
    r.entropic_moments = info.entropic_moments;

    r.diag.node_count = sol->node_count();
    r.diag.radial_norm_residual = sol->norm_residual();
    r.diag.raw_norm = emd.raw_norm();
    r.diag.half_norm_residual = cp->half_norm_residual();
    r.diag.p_max = emd.p_max();
    r.diag.tail_exponent = emd.tail_exponent();
    r.diag.tail_mass = emd.tail_mass();
    r.diag.clamp_count = cp->clamp_count();
    r.diag.shannon_tail_bound = info.tail_bound;
    r.diag.p4_tail_slope = emd.p4_tail_slope();

    r.solution = std::move(sol);
    r.profile = std::move(cp);
    return r;
}

FailureKind classify_failure(std::exception const& e)
{
    if (dynamic_cast<AccuracyError const*>(&e)
        || dynamic_cast<ConvergenceError const*>(&e)
        || dynamic_cast<DivergenceError const*>(&e))
        return FailureKind::accuracy;
    if (dynamic_cast<SearchError const*>(&e)
        || dynamic_cast<SeriesError const*>(&e)
        || dynamic_cast<WrongRootError const*>(&e)
        || dynamic_cast<ContractError const*>(&e)
        || dynamic_cast<DomainError const*>(&e))
        return FailureKind::solver;
    return FailureKind::other;
}

Outcome StateCache::get(StateSpec const& spec)
{
    Key const key{spec.Z, spec.rc.value_or(std::numeric_limits<double>::infinity()),
                  spec.n, spec.l};
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = done_.find(key);
        if (it != done_.end())
            return it->second;
    }
    Outcome out;
    out.spec = spec;
    try
    {
        out.result = std::make_shared<StateResult const>(compute_state(spec, opts_));
    }
    catch (std::exception const& e)
    {
        out.failure = classify_failure(e);
        out.message = e.what();
    }
    std::lock_guard<std::mutex> lock(mutex_);
    return done_.emplace(key, out).first->second;
}

std::vector<Outcome> StateCache::all() const
{
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<Outcome> out;
    out.reserve(done_.size());
    for (auto const& [key, o] : done_)
        out.push_back(o);
    return out;
}

std::vector<Outcome> run_states(std::vector<StateSpec> const& specs,
                                StateCache& cache, unsigned threads)
{
    std::vector<Outcome> out(specs.size());
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(specs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++)
            out[i] = cache.get(specs[i]);
    };
    if (threads <= 1)
    {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    return out;
}

}  // namespace ccp
