#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ccp/compton.hpp"
#include "ccp/infotheory.hpp"
#include "ccp/momentum.hpp"
#include "ccp/radial.hpp"

namespace ccp
{

struct RunOptions
{
    QuadratureSpec qspec;
    SolveOptions solve;
    std::optional<double> pmax_override;
    std::vector<double> alphas;
};

struct Diagnostics
{
    int node_count = 0;
    double radial_norm_residual = 0.0;
    double raw_norm = 1.0;
    double half_norm_residual = 0.0;
    double p_max = 0.0;
    double tail_exponent = 0.0;
    double tail_mass = 0.0;
    int clamp_count = 0;
    double shannon_tail_bound = 0.0;
    double p4_tail_slope = 0.0;
};

/*!
 * Everything computed for one state. moments holds <p^m> for m = -1, 1, 2
 * from the profile and m = 0, 4; <p^4> comes from the position-space
 * operator, with the momentum-space value up to p_max kept separately.
 */
struct StateResult
{
    StateSpec spec;
    double energy = 0.0;
    double J0 = 0.0;
    std::map<int, double> moments;
    std::map<int, double> emd_moments;
    double p2_virial = 0.0;
    double p4_momentum_cutoff = 0.0;
    double shannon = 0.0;
    double onicescu = 0.0;
    std::vector<std::pair<double, double>> entropic_moments;
    Diagnostics diag;
    double tolerance = 0.0;

    std::shared_ptr<RadialSolution const> solution;
    std::shared_ptr<ComptonProfile const> profile;
};

StateResult compute_state(StateSpec const& spec, RunOptions const& opts = {});

enum class FailureKind
{
    none,
    accuracy,
    solver,
    other
};

FailureKind classify_failure(std::exception const& e);

struct Outcome
{
    StateSpec spec;
    std::shared_ptr<StateResult const> result;
    FailureKind failure = FailureKind::none;
    std::string message;

    bool ok() const { return failure == FailureKind::none; }
};

//! Thread-safe memo of computed states for one set of RunOptions.
class StateCache
{
  public:
    explicit StateCache(RunOptions opts = {}) : opts_(std::move(opts)) {}

    RunOptions const& options() const { return opts_; }

    //! Computes on first use; failures are remembered too.
    Outcome get(StateSpec const& spec);

    //! Every outcome computed so far, ordered by (Z, rc, n, l).
    std::vector<Outcome> all() const;

  private:
    using Key = std::tuple<double, double, int, int>;

    RunOptions opts_;
    mutable std::mutex mutex_;
    std::map<Key, Outcome> done_;
};

/*!
 * Runs every spec on up to `threads` workers (0: hardware concurrency) and
 * returns outcomes in input order.
 */
std::vector<Outcome> run_states(std::vector<StateSpec> const& specs,
                                StateCache& cache, unsigned threads = 0);

}  // namespace ccp
