#pragma once

#include <abscont/errors.hpp>
#include <abscont/int_polynomial.hpp>
#include <abscont/root_finding.hpp>

#include <cmath>
#include <vector>

namespace abscont {

namespace irrdetail {

// Conjugate-closed root groups: real roots alone, complex conjugate pairs
// together.  Only such groups can multiply out to integer factors.
inline std::vector<std::vector<Complex256>> conjugate_units(const RootSet& rs) {
    std::vector<std::vector<Complex256>> units;
    std::vector<Complex256> upper;
    for (const auto& r : rs.roots) {
        for (int m = 0; m < r.multiplicity; ++m) {
            if (abs(r.value.imag()) < 1e-25)
                units.push_back({Complex256(r.value.real(), Real256(0))});
            else if (r.value.imag() > 0)
                upper.push_back(r.value);
        }
    }
    for (const auto& z : upper) units.push_back({z, Complex256(z.real(), -z.imag())});
    return units;
}

// lead * prod (X - z) over the chosen units, expanded exactly in Complex256.
inline std::vector<Complex256> expand_factor(const std::vector<const std::vector<Complex256>*>& sel,
                                             const Int& lead) {
    // ascending coefficients throughout
    std::vector<Complex256> c{Complex256(Real256(lead))};
    for (const auto* unit : sel) {
        for (const auto& z : *unit) {
            c.push_back(Complex256(Real256(0)));
            for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - z * c[i];
            c[0] = -z * c[0];
        }
    }
    return c;
}

inline double integer_closeness(const std::vector<Complex256>& c, std::vector<Int>& rounded) {
    Real256 worst(0);
    rounded.resize(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        Real256 re = c[i].real();
        Int r = static_cast<Int>(round(re));
        worst = std::max(worst, Real256(abs(re - Real256(r))));
        worst = std::max(worst, Real256(abs(c[i].imag())));
        rounded[i] = std::move(r);
    }
    return static_cast<double>(worst);
}

} // namespace irrdetail

/// True iff `p` has no integer polynomial factor of degree in [1, degree/2].
/// Works by reconstructing candidate factors from conjugate-closed root
/// subsets and verifying them with exact division.
inline bool is_irreducible(const IntPolynomial& p) {
    if (p.degree() < 1 || p.degree() > 24)
        throw PreconditionError("is_irreducible requires 1 <= degree <= 24");
    if (p.content() != 1) throw PreconditionError("is_irreducible requires content 1");
    const int n = p.degree();
    if (n == 1) return true;
    if (p.coeff(0) == 0) return false; // X divides
    if (!p.is_squarefree()) return false;

    RootSet rs = find_roots(p);
    auto units = irrdetail::conjugate_units(rs);
    const size_t u = units.size();
    const int half = n / 2;

    for (uint64_t mask = 1; mask < (uint64_t(1) << u); ++mask) {
        int deg = 0;
        std::vector<const std::vector<Complex256>*> sel;
        for (size_t i = 0; i < u; ++i) {
            if (mask & (uint64_t(1) << i)) {
                deg += static_cast<int>(units[i].size());
                sel.push_back(&units[i]);
            }
        }
        if (deg < 1 || deg > half) continue;

        std::vector<Int> rounded;
        double close = irrdetail::integer_closeness(irrdetail::expand_factor(sel, p.lead()), rounded);
        if (close > 1e-6) continue;
        IntPolynomial cand = IntPolynomial(std::move(rounded)).primitive_part();
        if (cand.degree() < 1) continue;
        if (p.divide_exact(cand)) return false;
        if (close < 1e-30) {
            // Numerically certain factor that fails exact division: the root
            // precision must be inadequate.  Double it once and re-judge.
            RootSet rs2 = rootdetail::find_roots_at<256>(p); // polish at 512
            auto units2 = irrdetail::conjugate_units(rs2);
            if (units2.size() == u) {
                std::vector<const std::vector<Complex256>*> sel2;
                for (size_t i = 0; i < u; ++i)
                    if (mask & (uint64_t(1) << i)) sel2.push_back(&units2[i]);
                std::vector<Int> rounded2;
                double close2 =
                    irrdetail::integer_closeness(irrdetail::expand_factor(sel2, p.lead()), rounded2);
                IntPolynomial cand2 = IntPolynomial(std::move(rounded2)).primitive_part();
                if (cand2.degree() >= 1 && p.divide_exact(cand2)) return false;
                if (close2 < 1e-30)
                    throw PrecisionExhausted("near-integer factor candidate of " + p.to_human() +
                                             " fails exact division after precision doubling");
            }
        }
    }
    return true;
}

} // namespace abscont
