#pragma once

#include <abscont/detail_scale.hpp>
#include <abscont/discrete_measure.hpp>
#include <abscont/quadrature.hpp>

#include <cmath>
#include <vector>

namespace abscont {

struct EntropyOptions {
    double quad_tol = 1e-9;
    uint64_t eval_budget = 120'000'000;
};

/// Differential entropy of mu * n_y in nats.  Computed at y = 1 after scaling
/// positions by 1/sqrt(y); H(mu * n_y) = H(scaled * n_1) + (d/2) log y.
inline double entropy_gauss(const DiscreteMeasure& mu, double y, EntropyOptions opt = {}) {
    mu.validate();
    if (!(y > 0)) throw PreconditionError("entropy_gauss requires y > 0");
    using namespace smoothdetail;
    const double sd = std::sqrt(y);

    double hhat = 0;
    if (mu.dim == 1) {
        ScaledAtoms1D atoms(mu, sd);
        auto f = [&](double x) {
            const double v = atoms.sum(x, [](double z2) { return phi(z2, 1); });
            return v > 1e-300 ? -v * std::log(v) : 0.0;
        };
        hhat = integrate_1d(f, atoms.clusters(), opt.quad_tol, opt.eval_budget).value;
    } else {
        std::vector<double> ux(mu.size()), uy(mu.size());
        for (size_t i = 0; i < mu.size(); ++i) {
            ux[i] = mu.x(i) / sd;
            uy[i] = mu.y(i) / sd;
        }
        auto f = [&](double x, double yy) {
            double v = 0;
            for (size_t i = 0; i < mu.size(); ++i) {
                const double dx = x - ux[i], dy = yy - uy[i];
                const double z2 = dx * dx + dy * dy;
                if (z2 < kWindow * kWindow * 1.44) v += mu.w[i] * phi(z2, 2);
            }
            return v > 1e-300 ? -v * std::log(v) : 0.0;
        };
        const double x0 = *std::min_element(ux.begin(), ux.end()) - kWindow;
        const double x1 = *std::max_element(ux.begin(), ux.end()) + kWindow;
        const double y0 = *std::min_element(uy.begin(), uy.end()) - kWindow;
        const double y1 = *std::max_element(uy.begin(), uy.end()) + kWindow;
        hhat = integrate_2d(f, x0, x1, y0, y1, opt.quad_tol, opt.eval_budget).value;
    }
    return hhat + 0.5 * mu.dim * std::log(y);
}

/// Fisher information of mu * n_y: integral of |grad f|^2 / f.
inline double fisher_information(const DiscreteMeasure& mu, double y, EntropyOptions opt = {}) {
    mu.validate();
    if (!(y > 0)) throw PreconditionError("fisher_information requires y > 0");
    using namespace smoothdetail;
    const double sd = std::sqrt(y);

    double jhat = 0;
    if (mu.dim == 1) {
        ScaledAtoms1D atoms(mu, sd);
        auto f = [&](double x) {
            double v = 0, g = 0;
            const auto lo = std::lower_bound(atoms.u.begin(), atoms.u.end(), x - kWindow);
            const auto hi = std::upper_bound(atoms.u.begin(), atoms.u.end(), x + kWindow);
            for (size_t i = static_cast<size_t>(lo - atoms.u.begin());
                 i < static_cast<size_t>(hi - atoms.u.begin()); ++i) {
                const double z = x - atoms.u[i];
                const double ph = atoms.w[i] * phi(z * z, 1);
                v += ph;
                g += -z * ph;
            }
            return v > 1e-300 ? g * g / v : 0.0;
        };
        jhat = integrate_1d(f, atoms.clusters(), opt.quad_tol, opt.eval_budget).value;
    } else {
        std::vector<double> ux(mu.size()), uy(mu.size());
        for (size_t i = 0; i < mu.size(); ++i) {
            ux[i] = mu.x(i) / sd;
            uy[i] = mu.y(i) / sd;
        }
        auto f = [&](double x, double yy) {
            double v = 0, gx = 0, gy = 0;
            for (size_t i = 0; i < mu.size(); ++i) {
                const double dx = x - ux[i], dy = yy - uy[i];
                const double z2 = dx * dx + dy * dy;
                if (z2 >= kWindow * kWindow * 1.44) continue;
                const double ph = mu.w[i] * phi(z2, 2);
                v += ph;
                gx += -dx * ph;
                gy += -dy * ph;
            }
            return v > 1e-300 ? (gx * gx + gy * gy) / v : 0.0;
        };
        const double x0 = *std::min_element(ux.begin(), ux.end()) - kWindow;
        const double x1 = *std::max_element(ux.begin(), ux.end()) + kWindow;
        const double y0 = *std::min_element(uy.begin(), uy.end()) - kWindow;
        const double y1 = *std::max_element(uy.begin(), uy.end()) + kWindow;
        jhat = integrate_2d(f, x0, x1, y0, y1, opt.quad_tol, opt.eval_budget).value;
    }
    return jhat / y;
}

struct SlopeEstimate {
    double finite_difference = 0;
    double fisher = 0; // (1/2) * Fisher information, the de Bruijn identity
};

/// d/dy H(mu * n_y), estimated both by a central finite difference
/// (relative step 1e-4) and by Fisher-information quadrature.
inline SlopeEstimate entropy_slope(const DiscreteMeasure& mu, double y, EntropyOptions opt = {}) {
    if (!(y > 0)) throw PreconditionError("entropy_slope requires y > 0");
    SlopeEstimate s;
    const double dy = 1e-4 * y;
    s.finite_difference =
        (entropy_gauss(mu, y + dy, opt) - entropy_gauss(mu, y - dy, opt)) / (2 * dy);
    s.fisher = 0.5 * fisher_information(mu, y, opt);
    return s;
}

struct EntropyDetailCheck {
    double lhs = 0;
    double lhs_err = 0;
    double rhs = 0;
    double tolerance = 0;
    bool holds = false;
};

/// Verifies s_r(mu * nu) <= r^2 kappa_d sqrt(dH(mu*n_u)/du * dH(nu*n_v)/dv)
/// for r^2 = u + v.
inline EntropyDetailCheck entropy_to_detail_check(const DiscreteMeasure& mu,
                                                  const DiscreteMeasure& nu, double r, double u,
                                                  double v, DetailOptions dopt = {},
                                                  EntropyOptions eopt = {}) {
    if (!(r > 0 && u > 0 && v > 0)) throw PreconditionError("r, u, v must be positive");
    if (std::abs(r * r - (u + v)) > 1e-12 * r * r)
        throw PreconditionError("entropy_to_detail_check requires r^2 = u + v");
    EntropyDetailCheck out;
    DetailResult d = detail(convolve(mu, nu), r, dopt);
    out.lhs = d.value;
    out.lhs_err = d.err;
    const double su = 0.5 * fisher_information(mu, u, eopt);
    const double sv = 0.5 * fisher_information(nu, v, eopt);
    const KernelConstants kc = KernelConstants::for_dim(mu.dim);
    out.rhs = r * r * kc.kappa * std::sqrt(su * sv);
    out.tolerance = d.err + 2e-3 * out.rhs; // quadrature bound plus slope-estimator slack
    out.holds = out.lhs <= out.rhs + out.tolerance;
    return out;
}

struct ConvolutionDetailCheck {
    double alpha1 = 0;
    double alpha2 = 0;
    double lhs = 0;
    double bound = 0; // C_{K,d} alpha1 alpha2
    double tolerance = 0;
    bool holds = false;
};

/// Verifies the two-factor convolution contraction
///   s_r(mu1 * mu2) <= C_{K,d} alpha_1 alpha_2,
/// with alpha_i the grid supremum of s_t(mu_i) over
/// [r/sqrt(2), K alpha_1^{-1/2} alpha_2^{-1/2} r]; the upper end is resolved
/// by iterating the alpha fixed point twice from alpha = 1.
inline ConvolutionDetailCheck convolution_detail_check(const DiscreteMeasure& mu1,
                                                       const DiscreteMeasure& mu2, double r,
                                                       double K, int grid_points = 33,
                                                       DetailOptions dopt = {}) {
    if (!(r > 0 && K > 1)) throw PreconditionError("requires r > 0 and K > 1");
    ConvolutionDetailCheck out;
    double a1 = 1.0, a2 = 1.0, quad_err = 0;
    for (int pass = 0; pass < 2; ++pass) {
        const double t_lo = r / std::sqrt(2.0);
        const double t_hi = std::max(t_lo * (1 + 1e-9), K * r / std::sqrt(a1 * a2));
        double m1 = 0, m2 = 0, e = 0;
        for (int i = 0; i < grid_points; ++i) {
            const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / (grid_points - 1));
            DetailResult d1 = detail(mu1, t, dopt);
            DetailResult d2 = detail(mu2, t, dopt);
            m1 = std::max(m1, d1.value);
            m2 = std::max(m2, d2.value);
            e = std::max(e, std::max(d1.err, d2.err));
        }
        a1 = m1;
        a2 = m2;
        quad_err = e;
    }
    out.alpha1 = a1;
    out.alpha2 = a2;
    DetailResult lhs = detail(convolve(mu1, mu2), r, dopt);
    out.lhs = lhs.value;
    const KernelConstants kc = KernelConstants::for_dim(mu1.dim);
    out.bound = kc.c_kd(K) * a1 * a2;
    out.tolerance = lhs.err + kc.c_kd(K) * (a1 + a2) * quad_err;
    out.holds = out.lhs <= out.bound + out.tolerance;
    return out;
}

struct InitialGapRow {
    int n = 0;
    double h_coarse = 0; // H(mu_n * n_1)
    double h_fine = 0;   // H(mu_n * n_{M^{-2n}})
    double gap = 0;
};

struct InitialGapProbe {
    std::vector<InitialGapRow> rows;
    double fitted_slope = 0;
    double slope_bound = 0; // d log M - h_F + 0.1
    bool holds = false;
};

/// Probes H(mu_n * n_1) - H(mu_n * n_{M^{-2n}}) on depth-n supports and fits
/// the growth slope against (d log M - h_F) + 0.1.
inline InitialGapProbe initial_gap_probe(const UniformIFS& F, double M, double garsia_h,
                                         const std::vector<int>& n_grid, EntropyOptions eopt = {}) {
    if (F.rep() == ExactRep::floating)
        throw PreconditionError("initial_gap_probe requires an exact-mode IFS");
    if (!(M > 1)) throw PreconditionError("initial_gap_probe requires M > 1");
    if (n_grid.size() < 2) throw PreconditionError("initial_gap_probe needs >= 2 depths");
    InitialGapProbe out;
    SupportExpander ex(F);
    for (int n : n_grid) {
        DiscreteMeasure mu = measure_from_support(F, ex.level(n));
        InitialGapRow row;
        row.n = n;
        row.h_coarse = entropy_gauss(mu, 1.0, eopt);
        row.h_fine = entropy_gauss(mu, std::pow(M, -2.0 * n), eopt);
        row.gap = row.h_coarse - row.h_fine;
        out.rows.push_back(row);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : out.rows) {
        sx += r.n;
        sy += r.gap;
        sxx += static_cast<double>(r.n) * r.n;
        sxy += r.n * r.gap;
    }
    const double cnt = static_cast<double>(out.rows.size());
    out.fitted_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    out.slope_bound = F.dim * std::log(M) - garsia_h + 0.1;
    out.holds = out.fitted_slope <= out.slope_bound;
    return out;
}

} // namespace abscont
