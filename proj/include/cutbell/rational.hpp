#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cutbell {

// Exact arbitrary-precision integers and rationals. No floating point
// appears anywhere in the library; facet certificates require exactness.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Scale a rational vector to a primitive integer vector: multiply by the
// lcm of denominators, divide by the gcd of numerators. Sign is preserved
// (only positive scaling), so inequalities keep their orientation.
// The all-zero vector maps to itself with scale 1.
inline Rat primitive_scale(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const Rat& x : v) {
        if (x == 0) continue;
        Int d = rat_den(x);
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    Int g = 0;
    for (const Rat& x : v) {
        if (x == 0) continue;
        Int n = rat_num(x) * (lcm / rat_den(x));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(n));
        if (g == 1) break;
    }
    if (g == 0) return Rat(1);
    return Rat(lcm, g);
}

inline std::vector<Int> to_primitive(const std::vector<Rat>& v, Rat* scale_out = nullptr) {
    Rat s = primitive_scale(v);
    if (scale_out) *scale_out = s;
    std::vector<Int> out;
    out.reserve(v.size());
    for (const Rat& x : v) {
        Rat y = x * s;
        // y is integral by construction
        out.push_back(rat_num(y));
    }
    return out;
}

inline std::int64_t to_int64_checked(const Int& x) {
    if (x > std::int64_t(1) << 62 || x < -(std::int64_t(1) << 62))
        throw std::overflow_error("coefficient does not fit in int64");
    return static_cast<std::int64_t>(x);
}

}  // namespace cutbell
