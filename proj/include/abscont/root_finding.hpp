#pragma once

#include <abscont/errors.hpp>
#include <abscont/int_polynomial.hpp>
#include <abscont/precision.hpp>

#include <algorithm>
#include <vector>

namespace abscont {

struct Root {
    Complex256 value;
    int multiplicity = 1;
    double abs_error = 0.0; // first-order bound on |value - true root|
};

struct RootSet {
    std::vector<Root> roots;    // ordered by (real part, imaginary part)
    double residual_bound = 0;  // max |p(root)| over returned roots

    int total_degree() const {
        int n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        return n;
    }
};

namespace rootdetail {

template <unsigned Bits>
std::vector<ComplexBits<Bits>> to_complex_coeffs(const IntPolynomial& p) {
    std::vector<ComplexBits<Bits>> c(p.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = ComplexBits<Bits>(RealBits<Bits>(p.coeffs()[i]));
    return c;
}

template <unsigned Bits>
ComplexBits<Bits> horner(const std::vector<ComplexBits<Bits>>& c, const ComplexBits<Bits>& z) {
    ComplexBits<Bits> acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

template <unsigned Bits>
ComplexBits<Bits> horner_derivative(const std::vector<ComplexBits<Bits>>& c,
                                    const ComplexBits<Bits>& z) {
    ComplexBits<Bits> acc(0);
    for (size_t i = c.size(); i-- > 1;) acc = acc * z + c[i] * RealBits<Bits>(static_cast<unsigned>(i));
    return acc;
}

/// Aberth-Ehrlich simultaneous iteration on a squarefree polynomial.
/// Deterministic: fixed starting circle, Jacobi-style updates.
template <unsigned Bits>
std::vector<ComplexBits<Bits>> aberth(const IntPolynomial& p, int max_rounds = 400) {
    using C = ComplexBits<Bits>;
    using R = RealBits<Bits>;
    const int n = p.degree();
    auto c = to_complex_coeffs<Bits>(p);

    R lead_abs = abs(c.back());
    R max_ratio(0);
    for (int i = 0; i < n; ++i) max_ratio = std::max(max_ratio, R(abs(c[static_cast<size_t>(i)]) / lead_abs));
    R radius = std::max(R(1), R(1) + max_ratio);

    std::vector<C> z(static_cast<size_t>(n));
    const R two_pi = 2 * acos(R(-1));
    for (int k = 0; k < n; ++k) {
        R theta = two_pi * R(k) / R(n) + R("0.437");
        z[static_cast<size_t>(k)] = C(radius * cos(theta), radius * sin(theta));
    }

    const R eps = std::numeric_limits<R>::epsilon();
    std::vector<C> corr(static_cast<size_t>(n));
    for (int round = 0; round < max_rounds; ++round) {
        R worst(0);
        for (int k = 0; k < n; ++k) {
            const C& zk = z[static_cast<size_t>(k)];
            C pv = horner(c, zk);
            C dv = horner_derivative(c, zk);
            if (abs(dv) == 0) {
                corr[static_cast<size_t>(k)] = C(eps * (1 + abs(zk)), eps);
                worst = std::max(worst, R(1));
                continue;
            }
            C w = pv / dv;
            C s(0);
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                C d = zk - z[static_cast<size_t>(j)];
                if (abs(d) == 0) d = C(eps, eps);
                s += C(1) / d;
            }
            C denom = C(1) - w * s;
            C step = (abs(denom) == 0) ? w : C(w / denom);
            corr[static_cast<size_t>(k)] = step;
            worst = std::max(worst, R(abs(step) / (1 + abs(zk))));
        }
        for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] -= corr[static_cast<size_t>(k)];
        if (worst < 16 * eps) return z;
    }
    throw NonConvergence("Aberth iteration did not converge at " + std::to_string(Bits) +
                         " bits for " + p.to_human());
}

/// Newton polish of simple roots at (typically doubled) precision.
template <unsigned Bits>
void newton_polish(const IntPolynomial& p, std::vector<ComplexBits<Bits>>& z, int steps = 6) {
    auto c = to_complex_coeffs<Bits>(p);
    for (auto& zk : z) {
        for (int s = 0; s < steps; ++s) {
            ComplexBits<Bits> dv = horner_derivative(c, zk);
            if (abs(dv) == 0) break;
            zk -= horner(c, zk) / dv;
        }
    }
}

template <unsigned IterBits>
RootSet find_roots_at(const IntPolynomial& p) {
    constexpr unsigned PolishBits = 2 * IterBits;
    using CP = ComplexBits<PolishBits>;
    using RP = RealBits<PolishBits>;

    RootSet out;
    RP residual(0);
    auto cp = to_complex_coeffs<PolishBits>(p);

    for (const auto& [factor, mult] : [&] {
             std::vector<std::pair<IntPolynomial, int>> fs;
             auto sf = p.squarefree_decomposition();
             for (size_t i = 0; i < sf.size(); ++i)
                 if (sf[i].degree() >= 1) fs.emplace_back(sf[i], static_cast<int>(i) + 1);
             return fs;
         }()) {
        std::vector<CP> zs;
        if (factor.degree() == 1) {
            zs.push_back(CP(RP(-factor.coeff(0)) / RP(factor.coeff(1))));
        } else {
            auto zi = aberth<IterBits>(factor);
            zs.reserve(zi.size());
            for (const auto& z : zi)
                zs.push_back(CP(RP(z.real()), RP(z.imag())));
            newton_polish<PolishBits>(factor, zs);
        }
        auto cf = to_complex_coeffs<PolishBits>(factor);
        for (const auto& z : zs) {
            RP pv = abs(horner(cp, z));
            RP dv = abs(horner_derivative(cf, z));
            double err = (dv == 0) ? 0.0
                                   : static_cast<double>(RP(abs(horner(cf, z)) / dv)) +
                                         static_cast<double>(RP(abs(z) *
                                                                std::numeric_limits<RP>::epsilon()));
            residual = std::max(residual, pv);
            Root r;
            r.value = Complex256(Real256(z.real()), Real256(z.imag()));
            r.multiplicity = mult;
            r.abs_error = err;
            out.roots.push_back(r);
        }
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    out.residual_bound = static_cast<double>(residual);
    return out;
}

} // namespace rootdetail

/// All complex roots of `p` with multiplicities, deterministically ordered by
/// (real part, imaginary part).  Iterates at the configured working precision
/// and polishes at twice that; escalates once before giving up.
inline RootSet find_roots(const IntPolynomial& p, double tol = 1e-12) {
    if (p.degree() < 1) throw PreconditionError("find_roots requires degree >= 1");
    const unsigned bits = working_precision().iterate_bits;
    auto run = [&](unsigned b) {
        switch (b) {
            case 64: return rootdetail::find_roots_at<64>(p);
            case 128: return rootdetail::find_roots_at<128>(p);
            case 512: return rootdetail::find_roots_at<512>(p);
            default: return rootdetail::find_roots_at<256>(p);
        }
    };
    RootSet rs = run(bits);
    if (rs.residual_bound > tol) rs = run(bits * 2);
    if (rs.residual_bound > tol)
        throw NonConvergence("root residual " + std::to_string(rs.residual_bound) +
                             " above tolerance for " + p.to_human());
    return rs;
}

/// Real roots of `p` inside (lo, hi), in increasing order.
inline std::vector<Real256> real_roots_in(const RootSet& rs, double lo, double hi) {
    std::vector<Real256> out;
    for (const auto& r : rs.roots) {
        if (abs(r.value.imag()) < 1e-25 && r.value.real() > lo && r.value.real() < hi)
            out.push_back(r.value.real());
    }
    return out;
}

} // namespace abscont
