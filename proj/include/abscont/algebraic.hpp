#pragma once

#include <abscont/errors.hpp>
#include <abscont/int_polynomial.hpp>
#include <abscont/irreducible.hpp>
#include <abscont/root_finding.hpp>

#include <optional>

namespace abscont {

/// |lead| * prod max(|root|, 1) over all roots of `p`, with multiplicity.
inline Real256 mahler_measure_hp(const IntPolynomial& p, const RootSet& rs) {
    Real256 m(abs(p.lead()));
    for (const auto& r : rs.roots) {
        Real256 a = abs(r.value);
        if (a > 1)
            for (int k = 0; k < r.multiplicity; ++k) m *= a;
    }
    return m;
}

inline double mahler_measure(const IntPolynomial& p) {
    if (p.degree() < 1) throw PreconditionError("mahler_measure requires degree >= 1");
    return static_cast<double>(mahler_measure_hp(p, find_roots(p)));
}

/// Number of conjugates on the unit circle, tolerance 1e-9 on |alpha| - 1.
inline int modulus_one_count(const RootSet& rs) {
    int n = 0;
    for (const auto& r : rs.roots)
        if (abs(abs(r.value) - 1) < Real256("1e-9")) n += r.multiplicity;
    return n;
}

/// A contraction ratio lambda together with its exact algebraic description.
struct AlgebraicParameter {
    IntPolynomial min_poly;
    Real256 value;  // the chosen real root in (0, 1)
    RootSet conjugates;
    double mahler = 0;
    int modulus_one_count = 0;
    bool irreducibility_verified = false; // by is_irreducible or by the caller's certificate

    double value_d() const { return static_cast<double>(value); }
};

/// Builds an AlgebraicParameter from a minimal polynomial, selecting the real
/// root in (lo, hi).  When several roots qualify, `hint` picks the nearest.
/// Irreducibility is checked for degrees <= 24 unless the caller certifies it.
inline AlgebraicParameter make_algebraic_parameter(IntPolynomial min_poly, double lo = 0.0,
                                                   double hi = 1.0,
                                                   std::optional<double> hint = std::nullopt,
                                                   bool caller_certifies_irreducible = false) {
    if (min_poly.degree() < 1) throw PreconditionError("minimal polynomial must have degree >= 1");
    AlgebraicParameter ap;
    ap.min_poly = std::move(min_poly);
    if (caller_certifies_irreducible) {
        ap.irreducibility_verified = true;
    } else if (ap.min_poly.degree() <= 24) {
        if (!is_irreducible(ap.min_poly))
            throw PreconditionError("polynomial is reducible: " + ap.min_poly.to_human());
        ap.irreducibility_verified = true;
    }
    ap.conjugates = find_roots(ap.min_poly);
    auto cands = real_roots_in(ap.conjugates, lo, hi);
    if (cands.empty())
        throw PreconditionError("no real root of " + ap.min_poly.to_human() + " in (" +
                                std::to_string(lo) + ", " + std::to_string(hi) + ")");
    if (cands.size() == 1) {
        ap.value = cands.front();
    } else if (hint) {
        ap.value = *std::min_element(cands.begin(), cands.end(), [&](const Real256& a, const Real256& b) {
            return abs(a - Real256(*hint)) < abs(b - Real256(*hint));
        });
    } else {
        throw PreconditionError("several real roots in range; pass a hint to choose one");
    }
    ap.mahler = static_cast<double>(mahler_measure_hp(ap.min_poly, ap.conjugates));
    ap.modulus_one_count = abscont::modulus_one_count(ap.conjugates);
    return ap;
}

/// Largest conjugate modulus; > 2 certifies that lambda is not a root of any
/// nonzero {-1, 0, 1} polynomial (geometric series domination).
inline double max_conjugate_modulus(const AlgebraicParameter& ap) {
    Real256 m(0);
    for (const auto& r : ap.conjugates.roots) m = std::max(m, Real256(abs(r.value)));
    return static_cast<double>(m);
}

} // namespace abscont
