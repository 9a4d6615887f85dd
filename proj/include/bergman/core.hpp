#pragma once

// Shared aliases, error types, and small numeric helpers used across the
// library. Everything lives in namespace bergman; headers are self-contained.

#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

using cx = std::complex<double>;
using cvec = std::vector<cx>;

inline constexpr double pi = std::numbers::pi;

// Multi-index of monomial exponents. Entries may be negative only for the
// annulus Laurent basis; everywhere else they are >= 0.
using MultiIndex = std::vector<int>;

// Block degree used for series grouping and table caps: sum of |alpha_j|.
inline int degree(const MultiIndex& alpha) {
    int d = 0;
    for (int a : alpha) d += a < 0 ? -a : a;
    return d;
}

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cache and table-file failures: corrupt payload, schema mismatch, or a
// domain hash that does not match the requesting domain.
struct cache_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// x^n for integer n; n < 0 requires x != 0.
inline cx ipow(cx x, int n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    cx r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

inline double ipow(double x, int n) {
    if (n < 0) return 1.0 / ipow(x, -n);
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

inline double sqr(double x) { return x * x; }

// Canonical number formatting for hashing: 15 significant digits, locale
// independent. Two doubles serialize identically iff they agree to 15 digits.
inline std::string canonical_num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

// FNV-1a, 64-bit. Not cryptographic; used for content-addressed table keys.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bergman
