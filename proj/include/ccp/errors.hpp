#pragma once

#include <stdexcept>
#include <string>

namespace ccp
{

//! Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Caller violated an operation contract (e.g. free-atom routine on a
//! confined state).
class ContractError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

//! Adaptive quadrature ran out of panels before meeting its tolerance.
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(std::string const& what, double best, double err)
        : std::runtime_error(what), best_estimate_(best), error_estimate_(err)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

  private:
    double best_estimate_;
    double error_estimate_;
};

//! A local power series failed to converge in the allotted terms.
class SeriesError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Eigenvalue bracket search exhausted its energy window.
class SearchError : public std::runtime_error
{
  public:
    SearchError(std::string const& what, double e_lo, double e_hi)
        : std::runtime_error(what), e_lo_(e_lo), e_hi_(e_hi)
    {
    }

    double scan_low() const noexcept { return e_lo_; }
    double scan_high() const noexcept { return e_hi_; }

  private:
    double e_lo_;
    double e_hi_;
};

//! Eigenfunction has the wrong number of radial nodes for its state.
class WrongRootError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! A numerical result failed its own accuracy self-check.
class AccuracyError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Requested quantity diverges (e.g. <p^4> of a hard-wall state in
//! momentum space).
class DivergenceError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ccp
