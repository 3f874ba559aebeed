#pragma once

#include <abscont/algebraic.hpp>
#include <abscont/errors.hpp>

#include <cmath>
#include <vector>

namespace abscont {

/// For each n <= max_degree, the minimum of |p(lambda)| over polynomials p of
/// degree <= n with coefficients in {-1, 0, 1} and p(lambda) != 0.  Used to
/// probe the exponential decay rate against the Mahler measure.
///
/// Branch and bound: coefficients are fixed from degree 0 upward and branches
/// are cut when the partial sum cannot come back within the incumbent given
/// the remaining geometric tail.  Values within `zero_tol` of zero count as
/// exact vanishing and are skipped.
inline std::vector<std::pair<int, double>> min_pm01_value(double lambda, int max_degree,
                                                          double zero_tol = 1e-12) {
    if (max_degree < 0 || max_degree > 30)
        throw PreconditionError("min_pm01_value requires 0 <= max_degree <= 30");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw PreconditionError("min_pm01_value requires lambda in (0, 1)");

    std::vector<double> pow(static_cast<size_t>(max_degree) + 1);
    pow[0] = 1.0;
    for (int i = 1; i <= max_degree; ++i) pow[static_cast<size_t>(i)] = pow[static_cast<size_t>(i - 1)] * lambda;

    // tail[k] = sum_{i=k}^{n} lambda^i, recomputed per n below
    std::vector<std::pair<int, double>> out;
    for (int n = 0; n <= max_degree; ++n) {
        std::vector<double> tail(static_cast<size_t>(n) + 2, 0.0);
        for (int k = n; k >= 0; --k)
            tail[static_cast<size_t>(k)] = tail[static_cast<size_t>(k) + 1] + pow[static_cast<size_t>(k)];

        double best = out.empty() ? std::numeric_limits<double>::infinity() : out.back().second;

        // DFS; the first nonzero coefficient is fixed to +1 (sign symmetry).
        auto rec = [&](auto&& self, int k, double partial, bool any_nonzero) -> void {
            if (k > n) {
                if (any_nonzero && std::abs(partial) > zero_tol) best = std::min(best, std::abs(partial));
                return;
            }
            if (std::abs(partial) > best + tail[static_cast<size_t>(k)]) return;
            const double p = pow[static_cast<size_t>(k)];
            // visit branches in order of resulting |partial| so small values
            // tighten the incumbent early
            double cand[3] = {partial, partial + p, partial - p};
            int order[3] = {0, 1, 2};
            std::sort(order, order + 3,
                      [&](int a, int b) { return std::abs(cand[a]) < std::abs(cand[b]); });
            for (int oi = 0; oi < 3; ++oi) {
                const int c = order[oi];
                if (!any_nonzero && c == 2) continue; // sign symmetry
                self(self, k + 1, cand[c], any_nonzero || c != 0);
            }
        };
        rec(rec, 0, 0.0, false);
        out.emplace_back(n, best);
    }
    return out;
}

inline std::vector<std::pair<int, double>> min_pm01_value(const AlgebraicParameter& lam,
                                                          int max_degree) {
    return min_pm01_value(lam.value_d(), max_degree);
}

/// Least-squares slope of log(min) against n over the window [n_lo, n_hi].
inline double pm01_log_slope(const std::vector<std::pair<int, double>>& mins, int n_lo, int n_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& [n, v] : mins) {
        if (n < n_lo || n > n_hi) continue;
        const double x = n, y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw PreconditionError("pm01_log_slope needs at least two points in window");
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace abscont
