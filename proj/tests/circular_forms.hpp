#pragma once

#include <cmath>

// Explicit free circular-state profiles for n = 1..5 (polynomial forms).
inline double circular_explicit(int n, double Z, double q)
{
    double const pi = std::acos(-1.0);
    double const x = n * q / Z;
    double const y = x * x;
    double const d = y + 1.0;
    switch (n)
    {
    case 1:
        return 8.0 / (3.0 * pi * Z) / std::pow(d, 3);
    case 2:
        return 64.0 / (15.0 * pi * Z) * (5 * y + 1) / std::pow(d, 5);
    case 3:
        return 3072.0 / (525.0 * pi * Z) * (21 * y * y + 7 * y + 1) / std::pow(d, 7);
    case 4:
        return 16384.0 / (2205.0 * pi * Z) * (84 * y * y * y + 36 * y * y + 9 * y + 1)
               / std::pow(d, 9);
    case 5:
        return 131072.0 / (14553.0 * pi * Z)
               * (330 * y * y * y * y + 165 * y * y * y + 55 * y * y + 11 * y + 1)
               / std::pow(d, 11);
    default:
        return std::nan("");
    }
}

// Integral over [0, inf) of circular_explicit, by the exact antiderivative of
// each term: int_0^inf y^k / (y+1)^m dq with y = (n q / Z)^2.
inline double circular_explicit_half_norm(int n, double Z)
{
    double const pi = std::acos(-1.0);
    // int_0^inf x^(2k) / (x^2+1)^m dx = B(k + 1/2, m - k - 1/2) / 2
    auto moment = [](int k, int m) {
        return 0.5 * std::exp(std::lgamma(k + 0.5) + std::lgamma(m - k - 0.5) - std::lgamma(m));
    };
    static double const coef[5][5] = {{1},
                                      {1, 5},
                                      {1, 7, 21},
                                      {1, 9, 36, 84},
                                      {1, 11, 55, 165, 330}};
    static double const pref[5] = {8.0 / 3, 64.0 / 15, 3072.0 / 525, 16384.0 / 2205,
                                   131072.0 / 14553};
    int const m = 2 * n + 1;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        s += coef[n - 1][k] * moment(k, m);
    return pref[n - 1] / (pi * Z) * s * Z / n;
}
