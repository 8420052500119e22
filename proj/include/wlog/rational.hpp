#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace wlog {

// Exact coefficient field. cpp_rational keeps gcd(num,den)=1 and den>0
// as class invariants, including on construction.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_pow(const Rat& base, unsigned exp) {
    Rat result(1);
    Rat b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

inline int sign_of(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace wlog
