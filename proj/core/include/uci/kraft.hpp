#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uci/bigmath.hpp"
#include "uci/codes.hpp"

namespace uci {

// Exact nonnegative dyadic rational num / 2^shift, kept normalized
// (num odd or zero). Every Kraft quantity of these codes is dyadic, so
// sums and comparisons are exact.
struct Dyadic {
    BigInt num;
    unsigned shift = 0;

    static Dyadic zero() { return {0, 0}; }
    static Dyadic one() { return {1, 0}; }
    // 2^-e
    static Dyadic unit(unsigned e) { return {1, e}; }

    bool is_zero() const { return num.is_zero(); }
    std::string to_string() const;  // "1187/4096", "1", "0"
    double to_double() const;
};

// Normalizes num/2^shift.
Dyadic make_dyadic(BigInt num, unsigned shift);

Dyadic operator+(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a, const Dyadic& b);  // requires a >= b
Dyadic operator*(const BigInt& k, const Dyadic& d);
bool operator==(const Dyadic& a, const Dyadic& b);
std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

// 2^-L(a) for one symbol. alpha is capped at a <= 2^20 because the term
// needs an a-bit denominator.
Dyadic kraft_term(CodeId code, const BigInt& a);

// Sum of 2^-L(a) over the dyadic block t (symbols 2^t .. 2^(t+1)-1),
// exact. Uses the per-block closed form; the small-symbol exceptions of
// delta_delta and nu (t <= 2) are summed per symbol.
Dyadic kraft_block(CodeId code, unsigned t);

// Exact sum of 2^-L(a) for a = 1..a_max.
Dyadic kraft_prefix_sum(CodeId code, const BigInt& a_max);

// Exact tail sum over all blocks t > T for delta. partial(T) + tail(T) == 1.
Dyadic delta_kraft_tail(unsigned last_block);

// One verified component of the nu mass-rearrangement identity.
struct KraftComponent {
    std::string label;       // "a=2", "t=15", ...
    Dyadic delta_side;       // 2^-L_delta mass of the component
    Dyadic nu_side;          // 2^-L_nu mass of the component
    Dyadic expected_delta;   // closed-form reference values
    Dyadic expected_nu;
    bool ok = false;
};

// Checks the rearrangement identity: over the modified symbols (a = 2..7)
// and the adjusted blocks, both the delta-side and nu-side masses equal
// 1187/4096 exactly; also checks that the delta total mass converges to 1
// (partial sums strictly increasing, partial + closed-form tail == 1) and
// that the nu total mass is exactly 1 once blocks through t = 84 are
// combined with the delta tail.
struct NuIdentityReport {
    std::vector<KraftComponent> components;
    Dyadic delta_total;                   // sum over components, delta lengths
    Dyadic nu_total;                      // sum over components, nu lengths
    Dyadic expected;                      // 1187/4096
    bool sides_match = false;             // both totals == expected
    std::string first_mismatch;           // label of first bad component, else ""

    Dyadic delta_partial_84;              // sum of delta blocks t = 0..84
    Dyadic nu_partial_84;                 // sum of nu blocks t = 0..84
    bool nu_mass_is_one = false;          // nu_partial_84 + delta tail == 1
    bool delta_tail_consistent = false;   // partial(T) + tail(T) == 1, partials increasing
    bool ok = false;
};

NuIdentityReport verify_nu_identity();

}  // namespace uci
