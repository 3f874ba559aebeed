#pragma once

#include <abscont/errors.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

namespace abscont {

struct QuadResult {
    double value = 0;
    double err = 0; // accumulated local estimates plus analytic tails
    uint64_t evals = 0;
};

namespace quaddetail {

struct Budget {
    uint64_t remaining;
    void charge(uint64_t n) {
        if (n > remaining) throw BudgetExceeded("quadrature evaluation budget exhausted");
        remaining -= n;
    }
};

inline double simpson(double a, double fa, double fm, double fb, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double bisect_root(const F& v, double a, double b, double fa, double fb) {
    (void)fb;
    for (int i = 0; i < 80 && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        const double m = 0.5 * (a + b);
        const double fm = v(m);
        if ((fa <= 0) == (fm <= 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Composite Simpson for a short single-signed analytic piece.
template <class F>
double short_simpson(const F& v, double a, double b, Budget& bud) {
    const int panels = 8;
    bud.charge(2 * panels + 1);
    const double h = (b - a) / (2 * panels);
    double s = v(a) + v(b);
    for (int i = 1; i < 2 * panels; ++i) s += v(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Adaptive Simpson of |v|.  Cells with a sign change are pushed down to
// kink_width and then split exactly at the located crossings, so the corner
// of |.| contributes no quadrature error.
template <class F>
void adapt_abs(const F& v, double a, double fa, double m, double fm, double b, double fb,
               double S_abs, double tol, double kink_width, int depth, QuadResult& out,
               Budget& bud) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    bud.charge(2);
    const double flm = v(lm), frm = v(rm);
    const double Sl = simpson(a, std::abs(fa), std::abs(flm), std::abs(fm), m);
    const double Sr = simpson(m, std::abs(fm), std::abs(frm), std::abs(fb), b);
    const double S2 = Sl + Sr;
    const double est = std::abs(S2 - S_abs) / 15.0;

    const bool mixed = !((fa <= 0) == (flm <= 0) && (fa <= 0) == (fm <= 0) &&
                         (fa <= 0) == (frm <= 0) && (fa <= 0) == (fb <= 0));
    if (mixed && b - a <= kink_width) {
        const double xs[5] = {a, lm, m, rm, b};
        const double fs[5] = {fa, flm, fm, frm, fb};
        double prev = a;
        double total = 0;
        for (int i = 0; i + 1 < 5; ++i) {
            if ((fs[i] <= 0) != (fs[i + 1] <= 0)) {
                const double root = bisect_root(v, xs[i], xs[i + 1], fs[i], fs[i + 1]);
                total += std::abs(short_simpson(v, prev, root, bud));
                prev = root;
            }
        }
        total += std::abs(short_simpson(v, prev, b, bud));
        out.value += total;
        out.err += 1e-14 * (std::abs(total) + (b - a));
        return;
    }
    if ((!mixed && est <= tol) || depth > 48) {
        out.value += S2 + (S2 - S_abs) / 15.0;
        out.err += mixed ? std::abs(S2 - S_abs) : est;
        return;
    }
    adapt_abs(v, a, fa, lm, flm, m, fm, Sl, tol / 2, kink_width, depth + 1, out, bud);
    adapt_abs(v, m, fm, rm, frm, b, fb, Sr, tol / 2, kink_width, depth + 1, out, bud);
}

template <class F>
void adapt_smooth(const F& f, double a, double fa, double m, double fm, double b, double fb,
                  double S, double tol, int depth, QuadResult& out, Budget& bud) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    bud.charge(2);
    const double flm = f(lm), frm = f(rm);
    const double Sl = simpson(a, fa, flm, fm, m);
    const double Sr = simpson(m, fm, frm, fb, b);
    const double S2 = Sl + Sr;
    const double est = std::abs(S2 - S) / 15.0;
    if (est <= tol || depth > 48) {
        out.value += S2 + (S2 - S) / 15.0;
        out.err += est;
        return;
    }
    adapt_smooth(f, a, fa, lm, flm, m, fm, Sl, tol / 2, depth + 1, out, bud);
    adapt_smooth(f, m, fm, rm, frm, b, fb, Sr, tol / 2, depth + 1, out, bud);
}

template <bool Abs, class F>
void run_segments(const F& f, const std::vector<std::pair<double, double>>& segments,
                  double tol_abs, double kink_width, QuadResult& out, Budget& bud) {
    double total_len = 0;
    for (const auto& s : segments) total_len += s.second - s.first;
    for (const auto& [lo, hi] : segments) {
        const int seed = 16;
        const double h = (hi - lo) / seed;
        const double seg_tol = tol_abs * ((hi - lo) / total_len) / seed;
        bud.charge(static_cast<uint64_t>(2 * seed + 1));
        for (int i = 0; i < seed; ++i) {
            const double a = lo + i * h, b = lo + (i + 1) * h, m = 0.5 * (a + b);
            const double fa = f(a), fm = f(m), fb = f(b);
            if constexpr (Abs) {
                const double S = simpson(a, std::abs(fa), std::abs(fm), std::abs(fb), b);
                adapt_abs(f, a, fa, m, fm, b, fb, S, seg_tol, kink_width, 0, out, bud);
            } else {
                const double S = simpson(a, fa, fm, fb, b);
                adapt_smooth(f, a, fa, m, fm, b, fb, S, seg_tol, 0, out, bud);
            }
        }
    }
}

} // namespace quaddetail

/// Integral of |v| over a union of intervals; `tol_abs` is the absolute
/// tolerance target for the whole integral.
template <class F>
QuadResult integrate_abs_1d(const F& v, const std::vector<std::pair<double, double>>& segments,
                            double tol_abs, double kink_width, uint64_t eval_budget = 60'000'000) {
    QuadResult out;
    quaddetail::Budget bud{eval_budget};
    quaddetail::run_segments<true>(v, segments, tol_abs, kink_width, out, bud);
    out.evals = eval_budget - bud.remaining;
    return out;
}

/// Integral of a smooth f over a union of intervals.
template <class F>
QuadResult integrate_1d(const F& f, const std::vector<std::pair<double, double>>& segments,
                        double tol_abs, uint64_t eval_budget = 60'000'000) {
    QuadResult out;
    quaddetail::Budget bud{eval_budget};
    quaddetail::run_segments<false>(f, segments, tol_abs, 0.0, out, bud);
    out.evals = eval_budget - bud.remaining;
    return out;
}

namespace quaddetail {

// 3x3 tensor Simpson; when Abs is set the integrand is |v| and sign mixing
// across the nodes is reported.
template <bool Abs, class F>
double simpson2(const F& v, double x0, double x1, double y0, double y1, Budget& bud, bool& mixed) {
    bud.charge(9);
    const double xv[3] = {x0, 0.5 * (x0 + x1), x1};
    const double yv[3] = {y0, 0.5 * (y0 + y1), y1};
    const double w[3] = {1, 4, 1};
    double s = 0;
    bool pos = false, neg = false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double val = v(xv[i], yv[j]);
            if constexpr (Abs) {
                (val <= 0 ? neg : pos) = true;
                val = std::abs(val);
            }
            s += w[i] * w[j] * val;
        }
    mixed = Abs && pos && neg;
    return s * (x1 - x0) * (y1 - y0) / 36.0;
}

template <bool Abs, class F>
void adapt2(const F& v, double x0, double x1, double y0, double y1, double S, double tol,
            double kink_width, int depth, QuadResult& out, Budget& bud) {
    const double xs[3] = {x0, 0.5 * (x0 + x1), x1};
    const double ys[3] = {y0, 0.5 * (y0 + y1), y1};
    double Sc[4];
    bool cm[4];
    double S2 = 0;
    bool mixed = false;
    int c = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j, ++c) {
            Sc[c] = simpson2<Abs>(v, xs[i], xs[i + 1], ys[j], ys[j + 1], bud, cm[c]);
            S2 += Sc[c];
            mixed = mixed || cm[c];
        }
    const double est = std::abs(S2 - S) / 15.0;
    const double width = std::max(x1 - x0, y1 - y0);
    if (mixed && width > kink_width && depth <= 40) {
        c = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j, ++c)
                adapt2<Abs>(v, xs[i], xs[i + 1], ys[j], ys[j + 1], Sc[c], tol / 4, kink_width,
                            depth + 1, out, bud);
        return;
    }
    if (est <= tol || mixed || depth > 40) {
        out.value += S2 + (S2 - S) / 15.0;
        out.err += mixed ? std::abs(S2 - S) : est;
        return;
    }
    c = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j, ++c)
            adapt2<Abs>(v, xs[i], xs[i + 1], ys[j], ys[j + 1], Sc[c], tol / 4, kink_width, depth + 1,
                        out, bud);
}

template <bool Abs, class F>
QuadResult run_2d(const F& v, double x0, double x1, double y0, double y1, double tol_abs,
                  double kink_width, uint64_t eval_budget) {
    QuadResult out;
    Budget bud{eval_budget};
    const int nx = 8, ny = 8;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double a = x0 + (x1 - x0) * i / nx, b = x0 + (x1 - x0) * (i + 1) / nx;
            const double cc = y0 + (y1 - y0) * j / ny, d = y0 + (y1 - y0) * (j + 1) / ny;
            bool mixed = false;
            const double S = simpson2<Abs>(v, a, b, cc, d, bud, mixed);
            adapt2<Abs>(v, a, b, cc, d, S, tol_abs / (nx * ny), kink_width, 0, out, bud);
        }
    }
    out.evals = eval_budget - bud.remaining;
    return out;
}

} // namespace quaddetail

/// Integral of |v| over a rectangle; cells straddling sign changes are
/// refined to `kink_width` before acceptance.
template <class F>
QuadResult integrate_abs_2d(const F& v, double x0, double x1, double y0, double y1, double tol_abs,
                            double kink_width, uint64_t eval_budget = 300'000'000) {
    return quaddetail::run_2d<true>(v, x0, x1, y0, y1, tol_abs, kink_width, eval_budget);
}

/// Integral of a smooth f over a rectangle.
template <class F>
QuadResult integrate_2d(const F& f, double x0, double x1, double y0, double y1, double tol_abs,
                        uint64_t eval_budget = 300'000'000) {
    return quaddetail::run_2d<false>(f, x0, x1, y0, y1, tol_abs, 0.0, eval_budget);
}

} // namespace abscont
