#pragma once

#include <abscont/errors.hpp>
#include <abscont/ifs.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace abscont {

/// Finitely-atomic probability measure in dimension 1 or 2.
struct DiscreteMeasure {
    int dim = 1;
    std::vector<double> pos; // dim doubles per atom
    std::vector<double> w;   // positive, sums to 1 within 1e-12

    size_t size() const { return w.size(); }
    double x(size_t i) const { return pos[i * static_cast<size_t>(dim)]; }
    double y(size_t i) const { return pos[i * static_cast<size_t>(dim) + 1]; }

    void validate() const {
        if (dim != 1 && dim != 2) throw PreconditionError("measure dimension must be 1 or 2");
        if (w.empty()) throw PreconditionError("measure needs at least one atom");
        double s = 0, comp = 0;
        for (double wi : w) {
            if (!(wi > 0)) throw PreconditionError("weights must be positive");
            const double t = s + (wi - comp);
            comp = (t - s) - (wi - comp);
            s = t;
        }
        if (std::abs(s - 1.0) > 1e-12) throw PreconditionError("weights must sum to 1");
    }

    static DiscreteMeasure point_mass(int dim, std::vector<double> at) {
        DiscreteMeasure m;
        m.dim = dim;
        m.pos = std::move(at);
        m.w = {1.0};
        return m;
    }

    DiscreteMeasure dilated(double a) const {
        DiscreteMeasure m = *this;
        for (double& p : m.pos) p *= a;
        return m;
    }

    DiscreteMeasure translated(double dx, double dy = 0) const {
        DiscreteMeasure m = *this;
        for (size_t i = 0; i < size(); ++i) {
            m.pos[i * static_cast<size_t>(dim)] += dx;
            if (dim == 2) m.pos[i * static_cast<size_t>(dim) + 1] += dy;
        }
        return m;
    }

    double min_coord(int axis) const {
        double v = pos[static_cast<size_t>(axis)];
        for (size_t i = 0; i < size(); ++i)
            v = std::min(v, pos[i * static_cast<size_t>(dim) + static_cast<size_t>(axis)]);
        return v;
    }

    double max_coord(int axis) const {
        double v = pos[static_cast<size_t>(axis)];
        for (size_t i = 0; i < size(); ++i)
            v = std::max(v, pos[i * static_cast<size_t>(dim) + static_cast<size_t>(axis)]);
        return v;
    }
};

/// Depth-k prefix-sum distribution of an IFS as a numeric measure
/// (positions evaluated at 128-bit precision, then rounded).
inline DiscreteMeasure measure_from_support(const UniformIFS& F, const SupportLevel& s) {
    DiscreteMeasure m;
    m.dim = F.dim;
    m.w.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) m.w[i] = s.weight(i);
    m.pos.resize(s.size() * static_cast<size_t>(F.dim));
    if (F.dim == 1) {
        auto xs = positions_1d(F, s);
        for (size_t i = 0; i < xs.size(); ++i) m.pos[i] = static_cast<double>(xs[i]);
    } else {
        auto ps = positions_2d(F, s);
        for (size_t i = 0; i < ps.size(); ++i) {
            m.pos[2 * i] = static_cast<double>(ps[i].first);
            m.pos[2 * i + 1] = static_cast<double>(ps[i].second);
        }
    }
    return m;
}

inline DiscreteMeasure measure_from_support(const UniformIFS& F, int k) {
    return measure_from_support(F, k_step_support(F, k));
}

/// All pairwise sums with product weights; exactly-equal positions merged.
inline DiscreteMeasure convolve(const DiscreteMeasure& a, const DiscreteMeasure& b,
                                size_t atom_budget = (size_t(1) << 22)) {
    if (a.dim != b.dim) throw PreconditionError("convolve: dimension mismatch");
    if (a.size() * b.size() > atom_budget)
        throw BudgetExceeded("convolve: atom-count product exceeds budget");
    const int d = a.dim;
    DiscreteMeasure out;
    out.dim = d;
    out.pos.resize(a.size() * b.size() * static_cast<size_t>(d));
    out.w.resize(a.size() * b.size());
    size_t n = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < b.size(); ++j, ++n) {
            out.w[n] = a.w[i] * b.w[j];
            out.pos[n * static_cast<size_t>(d)] = a.x(i) + b.x(j);
            if (d == 2) out.pos[n * static_cast<size_t>(d) + 1] = a.y(i) + b.y(j);
        }
    }
    // merge identical positions
    std::vector<size_t> idx(out.w.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t p, size_t q) {
        for (int j = 0; j < d; ++j) {
            const double xp = out.pos[p * static_cast<size_t>(d) + static_cast<size_t>(j)];
            const double xq = out.pos[q * static_cast<size_t>(d) + static_cast<size_t>(j)];
            if (xp != xq) return xp < xq;
        }
        return false;
    });
    DiscreteMeasure merged;
    merged.dim = d;
    merged.pos.reserve(out.pos.size());
    merged.w.reserve(out.w.size());
    for (size_t t = 0; t < idx.size(); ++t) {
        const double* p = out.pos.data() + idx[t] * static_cast<size_t>(d);
        const bool same = !merged.w.empty() &&
                          std::equal(p, p + d, merged.pos.end() - d, merged.pos.end());
        if (same)
            merged.w.back() += out.w[idx[t]];
        else {
            merged.pos.insert(merged.pos.end(), p, p + d);
            merged.w.push_back(out.w[idx[t]]);
        }
    }
    return merged;
}

/// Merges atoms closer than `radius` into weight centroids (1D: sorted sweep;
/// 2D: grid cells of size `radius`).  Returns the mass-weighted displacement
/// bound sum w_i * |moved_i|, which callers convert into an L1 perturbation
/// bound on smoothed quantities.
inline double coalesce(DiscreteMeasure& m, double radius) {
    if (!(radius > 0) || m.size() < 2) return 0.0;
    double displaced = 0;
    if (m.dim == 1) {
        std::vector<size_t> idx(m.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return m.pos[a] < m.pos[b]; });
        std::vector<double> np, nw;
        size_t i = 0;
        while (i < idx.size()) {
            size_t j = i;
            double wsum = 0, xsum = 0;
            const double x0 = m.pos[idx[i]];
            while (j < idx.size() && m.pos[idx[j]] - x0 <= radius) {
                wsum += m.w[idx[j]];
                xsum += m.w[idx[j]] * m.pos[idx[j]];
                ++j;
            }
            const double c = xsum / wsum;
            for (size_t t = i; t < j; ++t) displaced += m.w[idx[t]] * std::abs(m.pos[idx[t]] - c);
            np.push_back(c);
            nw.push_back(wsum);
            i = j;
        }
        m.pos = std::move(np);
        m.w = std::move(nw);
    } else {
        // snap to grid cells and centroid within each cell
        std::vector<size_t> idx(m.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        auto cell = [&](size_t i) {
            return std::pair<long long, long long>(
                static_cast<long long>(std::floor(m.x(i) / radius)),
                static_cast<long long>(std::floor(m.y(i) / radius)));
        };
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return cell(a) < cell(b); });
        std::vector<double> np, nw;
        size_t i = 0;
        while (i < idx.size()) {
            size_t j = i;
            double wsum = 0, xsum = 0, ysum = 0;
            while (j < idx.size() && cell(idx[j]) == cell(idx[i])) {
                wsum += m.w[idx[j]];
                xsum += m.w[idx[j]] * m.x(idx[j]);
                ysum += m.w[idx[j]] * m.y(idx[j]);
                ++j;
            }
            const double cx = xsum / wsum, cy = ysum / wsum;
            for (size_t t = i; t < j; ++t)
                displaced += m.w[idx[t]] * std::hypot(m.x(idx[t]) - cx, m.y(idx[t]) - cy);
            np.push_back(cx);
            np.push_back(cy);
            nw.push_back(wsum);
            i = j;
        }
        m.pos = std::move(np);
        m.w = std::move(nw);
    }
    return displaced;
}

} // namespace abscont
