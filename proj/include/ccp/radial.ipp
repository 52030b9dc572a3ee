#pragma once

#include "ccp/quadrature.hpp"

namespace ccp
{

template<class F>
double RadialSolution::expectation(F&& f) const
{
    auto const& rule = gauss_legendre(20);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
    {
        double const a = breaks_[i];
        double const b = breaks_[i + 1];
        double const half = 0.5 * (b - a);
        double const mid = 0.5 * (a + b);
        double s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        {
            double const r = mid + half * rule.nodes[k];
            double const v = value(r);
            s += rule.weights[k] * v * v * f(r);
        }
        sum += s * half;
    }
    return sum;
}

}  // namespace ccp
