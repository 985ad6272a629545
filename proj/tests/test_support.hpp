// SPDX-License-Identifier: MIT
#pragma once

#include <cmath>
#include <functional>

namespace mtdd::test {

/// Composite Simpson rule on [a, b] with an even number of panels. Used as a
/// quadrature oracle independent of the library's Gauss-Legendre path.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
    if (panels % 2) ++panels;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace mtdd::test
