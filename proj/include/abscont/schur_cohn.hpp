#pragma once

#include <abscont/errors.hpp>
#include <abscont/int_polynomial.hpp>
#include <abscont/root_finding.hpp>

#include <cmath>
#include <vector>

namespace abscont {

/// p*(z) = z^n conj(p(conj(z)^-1)); for integer coefficients this reverses
/// the coefficient list.
inline IntPolynomial reciprocal_adjoint(const IntPolynomial& p) {
    if (p.is_zero()) return p;
    std::vector<Int> r(p.coeffs().rbegin(), p.coeffs().rend());
    return IntPolynomial(std::move(r));
}

/// Tp = p(0) p - p*(0) p* (real integer case).  The degree-n coefficient
/// cancels exactly, so deg Tp < deg p.  Returns the zero polynomial when the
/// transform collapses entirely (self-reciprocal inputs); callers must then
/// use a scaling fallback.
inline IntPolynomial schur_cohn_transform(const IntPolynomial& p) {
    if (p.is_zero()) return p;
    const int n = p.degree();
    const Int a0 = p.coeff(0);
    const Int an = p.lead();
    std::vector<Int> t(static_cast<size_t>(n)); // degree <= n-1
    for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = a0 * p.coeff(i) - an * p.coeff(n - i);
    return IntPolynomial(std::move(t));
}

struct DiskCount {
    int count = 0;                   // roots with modulus < radius (with multiplicity)
    bool schur_cohn_verified = false;
    std::string note;
};

namespace scdetail {

// Floating Schur-Cohn recursion at 512 bits with per-level normalisation.
// Guard trips (|T(0)| or the whole transform too small to trust) surface as
// a retry request.
struct GuardTrip {};

inline int inside_recursive(std::vector<Real512> c) {
    const Real512 guard("1e-120");
    // trim leading coefficients that vanished
    while (c.size() > 1 && abs(c.back()) <= guard) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return 0;
    std::vector<Real512> t(static_cast<size_t>(n));
    Real512 scale(0);
    for (int i = 0; i < n; ++i) {
        t[static_cast<size_t>(i)] =
            c[0] * c[static_cast<size_t>(i)] - c[static_cast<size_t>(n)] * c[static_cast<size_t>(n - i)];
        scale = std::max(scale, Real512(abs(t[static_cast<size_t>(i)])));
    }
    if (scale == 0) throw GuardTrip{};
    const Real512 delta = t[0];
    if (abs(delta) <= guard * scale) throw GuardTrip{};
    for (auto& x : t) x /= scale;
    const int sub = inside_recursive(std::move(t));
    return delta > 0 ? sub : n - sub;
}

inline int inside_unit_disk(const IntPolynomial& p, const Rational& rho) {
    // q(X) = p(rho X); roots of q inside the unit disk <=> roots of p inside |z| < rho
    std::vector<Real512> c(p.coeffs().size());
    const Real512 r = Real512(numerator(rho)) / Real512(denominator(rho));
    Real512 pw(1);
    for (size_t i = 0; i < c.size(); ++i) {
        c[i] = Real512(p.coeffs()[i]) * pw;
        pw *= r;
    }
    Real512 scale(0);
    for (const auto& x : c) scale = std::max(scale, Real512(abs(x)));
    for (auto& x : c) x /= scale;
    return inside_recursive(std::move(c));
}

} // namespace scdetail

/// Number of roots of `p` with modulus < radius.  Counted two independent
/// ways: directly from root moduli and by the recursive Schur-Cohn test on
/// the radius-rescaled polynomial; the two must agree.
///
/// Preconditions: no root within 1e-8 of the circle (else BoundaryRoot).
/// When every rescaling attempt degenerates, the direct count is returned
/// flagged as unverified.
inline DiskCount count_roots_in_disk_checked(const IntPolynomial& p, double radius) {
    if (p.degree() < 1) throw PreconditionError("count_roots_in_disk requires degree >= 1");
    if (radius <= 0) throw PreconditionError("radius must be positive");

    // strip exact zero roots (inside any disk)
    IntPolynomial q = p;
    int origin_roots = 0;
    while (!q.is_zero() && q.coeff(0) == 0) {
        std::vector<Int> c(q.coeffs().begin() + 1, q.coeffs().end());
        q = IntPolynomial(std::move(c));
        ++origin_roots;
    }

    RootSet rs = find_roots(p);
    int direct = 0;
    for (const auto& r : rs.roots) {
        const double m = static_cast<double>(Real256(abs(r.value)));
        if (std::abs(m - radius) < 1e-8 + r.abs_error)
            throw BoundaryRoot("root of modulus " + std::to_string(m) + " too close to radius " +
                               std::to_string(radius));
        if (m < radius) direct += r.multiplicity;
    }

    DiskCount out;
    out.count = direct;
    if (q.degree() < 1) {
        out.schur_cohn_verified = true; // only origin roots
        return out;
    }

    // dyadic rational within 1.2e-10 of the radius; safe under the 1e-8 margin
    const Int den = Int(1) << 33;
    const Int num = Int(std::llround(radius * 8589934592.0));
    for (int attempt = 0; attempt < 4; ++attempt) {
        // nudge by ~2^-33 per attempt, staying inside the margin
        Rational rho(num - attempt, den);
        try {
            const int sc = origin_roots + scdetail::inside_unit_disk(q, rho);
            if (sc != direct)
                throw Error("schur_cohn_mismatch",
                            "Schur-Cohn count " + std::to_string(sc) + " != direct count " +
                                std::to_string(direct) + " for " + p.to_human());
            out.schur_cohn_verified = true;
            return out;
        } catch (const scdetail::GuardTrip&) {
            continue;
        }
    }
    out.note = "unverified by Schur-Cohn (transform degenerate at every rescaling attempt)";
    return out;
}

/// As count_roots_in_disk_checked, but raises DegenerateTransform instead of
/// returning an unverified count.
inline int count_roots_in_disk(const IntPolynomial& p, double radius) {
    DiskCount dc = count_roots_in_disk_checked(p, radius);
    if (!dc.schur_cohn_verified) throw DegenerateTransform(dc.note + ": " + p.to_human());
    return dc.count;
}

} // namespace abscont
