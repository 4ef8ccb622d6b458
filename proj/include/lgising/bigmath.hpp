#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace lgising {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// x!! with the convention (-1)!! = 0!! = 1.  Rejects x < -1.
inline BigInt double_factorial(long x) {
    if (x < -1) throw std::domain_error("double_factorial: x < -1");
    BigInt r = 1;
    for (long v = x; v > 1; v -= 2) r *= v;
    return r;
}

// C(n,k), zero when k < 0 or k > n.
inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long t = 0; t < k; ++t) {
        r *= (n - t);
        r /= (t + 1);
    }
    return r;
}

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long v = 2; v <= n; ++v) r *= v;
    return r;
}

// Number of partitions of q labelled objects into pairs and singletons
// (involutions of S_q, the telephone numbers: 1, 1, 2, 4, 10, 26, ...).
inline BigInt involution_count(long q) {
    if (q < 0) throw std::domain_error("involution_count: q < 0");
    BigInt r = 0;
    for (long p = 0; 2 * p <= q; ++p)
        r += factorial(q) / (BigInt(1) << p) / factorial(p) / factorial(q - 2 * p);
    return r;
}

}  // namespace lgising
