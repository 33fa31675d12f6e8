#pragma once

#include <complex>

#include "ellw/ellw.hpp"

namespace ellw::testing {

using C = std::complex<long double>;

inline C polar(long double m, long double ph) { return std::polar(m, ph); }

// A fixed generic parameter point, away from every special value used below.
inline Params<long double> generic()
{
    Params<long double> P;
    P.q = polar(0.35L, 0.4L);
    P.p = polar(0.12L, 1.1L);
    P.t = polar(0.45L, -0.6L);
    P.a = polar(0.8L, 0.9L);
    P.b = polar(1.3L, -0.3L);
    P.r = polar(0.7L, 0.5L);
    P.s = polar(1.4L, 2.0L);
    return P;
}

inline Point<long double> point(std::initializer_list<C> xs) { return Point<long double>(xs); }

inline Partition P_(std::initializer_list<int> parts) { return Partition(std::vector<int>(parts)); }

} // namespace ellw::testing
