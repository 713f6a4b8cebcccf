#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "uci/errors.hpp"

namespace uci {

// Exact integer for symbol values, codeword counts and length sums.
using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision float (MPFR backed, runtime precision).
using Real = boost::multiprecision::mpfr_float;

// Number of bits needed to represent v; 0 for v == 0.
inline unsigned bit_length(const BigInt& v) {
    return v.is_zero() ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

// floor(log2 v) on exact integers; requires v >= 1.
inline unsigned floor_log2(const BigInt& v) {
    if (v < 1) throw domain_error("floor_log2 requires v >= 1");
    return static_cast<unsigned>(boost::multiprecision::msb(v));
}

inline BigInt pow2(unsigned e) {
    BigInt one = 1;
    return one << e;
}

// log2(v) as a double, accurate to ~1 ulp for any magnitude.
double log2_big(const BigInt& v);

// Sets Real's default precision for the current scope and restores on exit.
class precision_guard {
  public:
    explicit precision_guard(unsigned digits10)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~precision_guard() { Real::default_precision(saved_); }
    precision_guard(const precision_guard&) = delete;
    precision_guard& operator=(const precision_guard&) = delete;

  private:
    unsigned saved_;
};

// Exact nonnegative decimal, value = digits / 10^scale. Keeps the source
// text so printed constants round-trip verbatim.
struct ExactDecimal {
    std::string text;
    BigInt digits;
    unsigned scale = 0;

    BigInt denominator() const {
        BigInt d = 1;
        for (unsigned i = 0; i < scale; ++i) d *= 10;
        return d;
    }
    Real to_real() const { return Real(digits) / Real(denominator()); }
    bool operator==(const ExactDecimal& o) const {
        return digits * o.denominator() == o.digits * denominator();
    }
};

// Parses "0.98678557", "1", ".5"; throws domain_error on anything else.
ExactDecimal parse_decimal(std::string_view text);

// Parses a nonnegative integer in decimal, arbitrary precision.
BigInt parse_bigint(std::string_view text);

}  // namespace uci
