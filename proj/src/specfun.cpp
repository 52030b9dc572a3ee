#include "ccp/specfun.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "ccp/errors.hpp"

namespace ccp
{
namespace
{
// Miller recurrence start offset above the requested order.
constexpr int miller_offset = 24;
}  // namespace

double ln_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
    {
        throw DomainError("ln_gamma: argument must be positive and finite, got "
                          + std::to_string(x));
    }
    return boost::math::lgamma(x);
}

double beta(double a, double b)
{
    return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

double assoc_laguerre(int k, double alpha, double x)
{
    if (k < 0 || !(alpha > -1.0) || !(x >= 0.0))
    {
        throw DomainError("assoc_laguerre: need k >= 0, alpha > -1, x >= 0");
    }
    if (k == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j)
    {
        double next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev)
                      / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer(int k, double eta, double t)
{
    if (k < 0 || !(eta > 0.0) || !(t >= -1.0 && t <= 1.0))
    {
        throw DomainError("gegenbauer: need k >= 0, eta > 0, |t| <= 1");
    }
    if (k == 0)
        return 1.0;
    double prev = 1.0;
    double cur = 2.0 * eta * t;
    for (int j = 1; j < k; ++j)
    {
        double next = (2.0 * (j + eta) * t * cur - (j + 2.0 * eta - 1.0) * prev)
                      / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double spherical_bessel_j(int l, double x)
{
    if (l < 0 || l > max_bessel_l)
    {
        throw DomainError("spherical_bessel_j: order " + std::to_string(l)
                          + " outside 0.." + std::to_string(max_bessel_l));
    }
    if (!(x >= 0.0))
        throw DomainError("spherical_bessel_j: negative argument");
    if (x == 0.0)
        return l == 0 ? 1.0 : 0.0;

    if (x < 1.0)
    {
        // x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)...(2l+2k+1))
        double lead = 1.0;
        for (int k = 1; k <= l; ++k)
            lead *= x / (2 * k + 1);
        double const h = -0.5 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 40; ++k)
        {
            term *= h / (k * (2 * l + 2 * k + 1));
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum))
                break;
        }
        return lead * sum;
    }

    if (x >= l)
    {
        double const s = std::sin(x);
        double const c = std::cos(x);
        double jm = s / x;
        if (l == 0)
            return jm;
        double j = (s / x - c) / x;
        for (int k = 1; k < l; ++k)
        {
            double next = (2 * k + 1) / x * j - jm;
            jm = j;
            j = next;
        }
        return j;
    }

    // 1 <= x < l: downward recurrence, normalized by the sum rule. With
    // x >= 1 and l <= 8 the growth over the recurrence stays below 1e60.
    int const top = l + miller_offset;
    double fp = 0.0;
    double f = 1e-30;
    double norm = 0.0;
    double result = 0.0;
    for (int k = top; k >= 0; --k)
    {
        norm += (2 * k + 1) * f * f;
        if (k == l)
            result = f;
        double fm = (2 * k + 1) / x * f - fp;
        fp = f;
        f = fm;
    }
    // j_l(x) > 0 below its first zero, which lies above l + 1.
    return std::abs(result) / std::sqrt(norm);
}

double riccati_bessel(int l, double x)
{
    return x * spherical_bessel_j(l, x);
}

}  // namespace ccp
