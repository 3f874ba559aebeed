#pragma once

#include <abscont/errors.hpp>
#include <abscont/int_polynomial.hpp>
#include <abscont/precision.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace abscont {

// Exact point coordinates for support expansion are kept as small integer
// vectors.  Everything is overflow-checked; the families this library builds
// stay far inside the int64 range, so a trip means a genuinely oversized
// request rather than silent corruption.

inline int64_t add_ck(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow("exact coordinate overflow in addition");
    return r;
}

inline int64_t mul_ck(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow("exact coordinate overflow in product");
    return r;
}

/// Z[lambda] for a monic integral lambda: elements are coefficient vectors on
/// the basis 1, lambda, ..., lambda^{D-1}.  Provides the reduced powers
/// lambda^i used by support expansion and 128-bit numeric evaluation.
class NumberFieldContext {
public:
    explicit NumberFieldContext(const IntPolynomial& monic_min_poly, Real256 value)
        : D_(monic_min_poly.degree()), value_(std::move(value)) {
        if (monic_min_poly.lead() != 1)
            throw PreconditionError("number-field mode requires a monic minimal polynomial");
        red_.resize(static_cast<size_t>(D_));
        for (int j = 0; j < D_; ++j) {
            // lambda^D = -sum m_j lambda^j
            red_[static_cast<size_t>(j)] = -static_cast<int64_t>(monic_min_poly.coeff(j));
        }
        pows_.push_back(std::vector<int64_t>(static_cast<size_t>(D_), 0));
        pows_[0][0] = 1;
    }

    int dim() const { return D_; }

    const std::vector<int64_t>& power(int i) {
        while (static_cast<int>(pows_.size()) <= i) {
            const auto& prev = pows_.back();
            std::vector<int64_t> nxt(static_cast<size_t>(D_), 0);
            const int64_t carry = prev[static_cast<size_t>(D_ - 1)];
            for (int j = D_ - 1; j > 0; --j) nxt[static_cast<size_t>(j)] = prev[static_cast<size_t>(j - 1)];
            if (carry != 0)
                for (int j = 0; j < D_; ++j)
                    nxt[static_cast<size_t>(j)] =
                        add_ck(nxt[static_cast<size_t>(j)], mul_ck(carry, red_[static_cast<size_t>(j)]));
            pows_.push_back(std::move(nxt));
        }
        return pows_[static_cast<size_t>(i)];
    }

    /// Evaluates a coefficient vector at lambda with 128-bit arithmetic.
    Real128 evaluate(const int64_t* key) const {
        Real128 lam(value_);
        Real128 acc(key[D_ - 1]);
        for (int j = D_ - 2; j >= 0; --j) acc = acc * lam + Real128(key[j]);
        return acc;
    }

private:
    int D_;
    Real256 value_;
    std::vector<int64_t> red_;
    std::vector<std::vector<int64_t>> pows_;
};

/// Points of the form (integer) / den^{k-1} on the line.
struct ScaledRationalContext {
    int64_t num = 0, den = 1;
    std::vector<int64_t> num_pows{1};

    int64_t num_power(int i) {
        while (static_cast<int>(num_pows.size()) <= i) num_pows.push_back(mul_ck(num_pows.back(), num));
        return num_pows[static_cast<size_t>(i)];
    }

    Real128 evaluate(int64_t key, int k) const {
        Real128 d(1);
        for (int i = 1; i < k; ++i) d *= Real128(den);
        return Real128(key) / d;
    }
};

/// Points of the form (Gaussian integer) / p^{k-1} in the plane,
/// alpha = (re + i im) / p.
struct GaussianContext {
    int64_t alpha_re = 0, alpha_im = 0, p = 1;
    std::vector<std::pair<int64_t, int64_t>> alpha_pows{{1, 0}};

    const std::pair<int64_t, int64_t>& alpha_power(int i) {
        while (static_cast<int>(alpha_pows.size()) <= i) {
            auto [ar, ai] = alpha_pows.back();
            alpha_pows.emplace_back(add_ck(mul_ck(ar, alpha_re), -mul_ck(ai, alpha_im)),
                                    add_ck(mul_ck(ar, alpha_im), mul_ck(ai, alpha_re)));
        }
        return alpha_pows[static_cast<size_t>(i)];
    }

    std::pair<Real128, Real128> evaluate(const int64_t* key, int k) const {
        Real128 d(1);
        for (int i = 1; i < k; ++i) d *= Real128(p);
        return {Real128(key[0]) / d, Real128(key[1]) / d};
    }
};

/// Sorts the flat key array lexicographically and merges equal keys, summing
/// the attached counts/weights.  Deterministic by construction.
template <class Weight>
inline void sort_merge_keys(std::vector<int64_t>& keys, std::vector<Weight>& weights, int stride) {
    const size_t n = weights.size();
    std::vector<uint32_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = static_cast<uint32_t>(i);
    std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
        const int64_t* ka = keys.data() + static_cast<size_t>(a) * stride;
        const int64_t* kb = keys.data() + static_cast<size_t>(b) * stride;
        for (int j = 0; j < stride; ++j) {
            if (ka[j] != kb[j]) return ka[j] < kb[j];
        }
        return false;
    });
    std::vector<int64_t> out_keys;
    std::vector<Weight> out_w;
    out_keys.reserve(keys.size());
    out_w.reserve(n);
    for (size_t t = 0; t < n; ++t) {
        const int64_t* k = keys.data() + static_cast<size_t>(idx[t]) * stride;
        const bool same = !out_w.empty() &&
                          std::equal(k, k + stride, out_keys.end() - stride, out_keys.end());
        if (same) {
            out_w.back() += weights[idx[t]];
        } else {
            out_keys.insert(out_keys.end(), k, k + stride);
            out_w.push_back(weights[idx[t]]);
        }
    }
    keys = std::move(out_keys);
    weights = std::move(out_w);
}

} // namespace abscont
