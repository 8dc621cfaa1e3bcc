// SPDX-License-Identifier: Apache-2.0
//
// fasrssi - RSSI ranging with fluid antenna systems
// Copyright (C) 2026 The fasrssi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fasrssi/solve1d.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "fasrssi/errors.hpp"

namespace fasrssi::solve1d {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_bracket(double lo, double hi, double xtol) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw InputError("solve1d: bracket must satisfy lo < hi");
    }
    if (!(xtol > 0.0)) throw InputError("solve1d: tolerance must be > 0");
}

} // namespace

Result find_root(const std::function<double(double)>& f, double lo, double hi, double xtol,
                 int max_iterations) {
    check_bracket(lo, hi, xtol);
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    Result res;
    if (fa == 0.0) return {a, fa, 0, true, 0.0};
    if (fb == 0.0) return {b, fb, 0, true, 0.0};
    if ((fa > 0.0) == (fb > 0.0)) {
        res.x = std::abs(fa) < std::abs(fb) ? a : b;
        res.fx = std::abs(fa) < std::abs(fb) ? fa : fb;
        res.converged = false;
        res.last_step = hi - lo;
        return res;
    }

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * kEps * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            return {b, fb, iter, true, std::abs(c - b)};
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        res.iterations = iter;
    }
    return {b, fb, max_iterations, false, std::abs(c - b)};
}

Result minimize(const std::function<double(double)>& f, double lo, double hi, double xtol,
                int max_iterations) {
    check_bracket(lo, hi, xtol);
    const double golden = 0.5 * (3.0 - std::sqrt(5.0));
    const double sqrt_eps = std::sqrt(kEps);
    double a = lo, b = hi;
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x);
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 1; iter <= max_iterations; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = sqrt_eps * std::abs(x) + xtol / 3.0;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
            return {x, fx, iter, true, b - a};
        }
        bool golden_step = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
                golden_step = false;
            }
        }
        if (golden_step) {
            e = (x >= xm) ? a - x : b - x;
            d = golden * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx, max_iterations, false, b - a};
}

} // namespace fasrssi::solve1d
