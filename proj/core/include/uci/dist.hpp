#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "uci/bigmath.hpp"
#include "uci/codes.hpp"

namespace uci {

// Decreasing probability model over {1, 2, ...}.
//
// spike_uniform puts p1 on symbol 1 and spreads 1-p1 uniformly over the
// 2^m symbols 2 .. 2^m+1; p1 is kept as an exact decimal so printed
// constants survive to full precision. geometric and zipf are truncated,
// renormalized demo families.
struct Distribution {
    enum class Kind { explicit_probs, spike_uniform, geometric, zipf };

    Kind kind = Kind::explicit_probs;
    std::vector<double> probs;  // explicit_probs
    ExactDecimal p1;            // spike_uniform
    unsigned m = 0;             // spike_uniform
    double param = 0.0;         // geometric ratio r / zipf exponent s
    std::uint64_t support = 0;  // geometric/zipf truncation

    static Distribution explicit_probs_of(std::vector<double> probs);
    static Distribution spike_uniform_of(std::string_view p1_text, unsigned m);
    static Distribution geometric_of(double r, std::uint64_t n);
    static Distribution zipf_of(double s, std::uint64_t n);

    // Throws domain_error unless decreasing and normalized (1e-12).
    void validate() const;
};

// Shannon entropy in bits, double precision. Zero-probability terms
// contribute zero. For spike_uniform uses the closed form
// h(p1) + m (1 - p1) with h the binary entropy.
double entropy(const Distribution& d);

// Entropy of spike_uniform at the working Real precision.
Real entropy_hp(const Distribution& d);

// Exact sum of code_length over lo..hi via per-block closed forms.
BigInt sum_len(CodeId code, const BigInt& lo, const BigInt& hi);

// Average codeword length. spike_uniform is evaluated exactly as a
// rational (big-integer length sum) and rounded only on conversion.
Real avg_len(CodeId code, const Distribution& d);

struct RatioReport {
    Real avg_len;
    Real entropy;
    Real ratio;  // avg_len / max(1, entropy)
    std::optional<BigInt> exact_len_sum;
};

// digits10 controls the working precision of the spike_uniform path;
// the double-backed families are exact well beyond their own accuracy.
RatioReport expansion_ratio(CodeId code, const Distribution& d, unsigned digits10 = 40);

// 2 / (1 + h(1/m)): the ratio no code can beat on the spike-uniform
// family with p1 = 1 - 1/m. Strictly increasing in m, limit 2.
double pm_lower_bound(std::uint64_t m);

// Deterministic decreasing distribution sampler for property tests.
Distribution random_decreasing(std::uint64_t seed, std::size_t support);

}  // namespace uci
