#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <string>

namespace abscont {

namespace mp = boost::multiprecision;

using Int = mp::cpp_int;
using Rational = mp::cpp_rational;

template <unsigned Bits>
using RealBits =
    mp::number<mp::backends::cpp_bin_float<Bits, mp::backends::digit_base_2>, mp::et_off>;
template <unsigned Bits>
using ComplexBits =
    mp::number<mp::complex_adaptor<mp::backends::cpp_bin_float<Bits, mp::backends::digit_base_2>>,
               mp::et_off>;

using Real128 = RealBits<128>;
using Real256 = RealBits<256>;
using Real512 = RealBits<512>;
using Complex128 = ComplexBits<128>;
using Complex256 = ComplexBits<256>;
using Complex512 = ComplexBits<512>;

/// Working precision for the root-finding pipeline.  Iteration runs at
/// `iterate_bits`, Newton polishing at twice that.  The default (128/256)
/// can be overridden through the BC_PRECISION_BITS environment variable;
/// supported values are 64, 128 and 256.
struct Precision {
    unsigned iterate_bits = 128;

    static Precision from_env() {
        Precision p;
        if (const char* s = std::getenv("BC_PRECISION_BITS")) {
            const long v = std::strtol(s, nullptr, 10);
            if (v == 64 || v == 128 || v == 256) p.iterate_bits = static_cast<unsigned>(v);
        }
        return p;
    }
};

inline const Precision& working_precision() {
    static const Precision p = Precision::from_env();
    return p;
}

} // namespace abscont
