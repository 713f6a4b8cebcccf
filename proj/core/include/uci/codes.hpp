#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uci/bigmath.hpp"
#include "uci/bitio.hpp"

namespace uci {

// The six codes over the alphabet {1, 2, ...}:
//   alpha       unary, |alpha(a)| = a
//   beta        plain binary, |beta(a)| = 1 + floor(log2 a); not prefix-free
//   gamma       unary-prefixed binary, |gamma(a)| = 1 + 2 floor(log2 a)
//   delta       gamma-prefixed binary
//   delta_delta delta with codewords reassigned at a = 2, 3, 6, 7
//   nu          canonical prefix code realizing L_delta(a) + nu_adjust(a)
enum class CodeId : std::uint8_t {
    alpha = 0,
    beta = 1,
    gamma = 2,
    delta = 3,
    delta_delta = 4,
    nu = 5,
};

inline constexpr CodeId all_codes[] = {CodeId::alpha, CodeId::beta,  CodeId::gamma,
                                       CodeId::delta, CodeId::delta_delta, CodeId::nu};
inline constexpr CodeId prefix_codes[] = {CodeId::alpha, CodeId::gamma, CodeId::delta,
                                          CodeId::delta_delta, CodeId::nu};

std::string_view to_string(CodeId code);
std::optional<CodeId> code_from_string(std::string_view name);
std::optional<CodeId> code_from_byte(std::uint8_t id);

// Length adjustment of the nu code relative to delta, in {-2,...,2}.
// The explicit small-symbol rules (a <= 7) take precedence; for a >= 8 the
// value depends only on the block index t = floor(log2 a).
int nu_adjust(const BigInt& a);

// Per-block adjustment for t >= 3 (constant across a block).
int nu_block_adjust(unsigned t);

// Blocks whose delta lengths shrink by 1 resp. 2 under nu.
bool in_shrink1_blocks(unsigned t);  // {7, 15..24, 37..50, 68..84}
bool in_shrink2_blocks(unsigned t);  // {31..36, 63..67}

// Shape of the dyadic block t (symbols 2^t .. 2^(t+1)-1) under the nu
// length function. For t >= 3 every symbol of the block has length
// final_len; final_len >= t + 1, so each length is shared by finitely
// many symbols.
struct BlockShape {
    unsigned t = 0;
    BigInt count;                // 2^t symbols
    std::uint64_t base_len = 0;  // 1 + t + 2 floor(log2(1+t))
    int adjust = 0;              // block-wise nu adjustment
    std::uint64_t final_len = 0;
};
BlockShape nu_block_shape(unsigned t);

// Exact codeword length in bits. Defined for every code including beta.
// Only alpha grows faster than logarithmically, hence the BigInt result.
BigInt code_length(CodeId code, const BigInt& a);

// Length of the b-bit codes as plain integers, for block arithmetic.
// Requires code != alpha.
std::uint64_t code_length_u64(CodeId code, const BigInt& a);

// Emits the codeword for a >= 1. For alpha the symbol value must be small
// enough to materialize (the codeword has `a` bits).
BitString encode(CodeId code, const BigInt& a);

// Reads exactly one codeword and returns its symbol. Throws
// truncated_codeword if the stream ends mid-codeword and
// not_prefix_decodable for beta.
BigInt decode(CodeId code, BitReader& reader);

// Canonical layout of the nu code for one codeword length: the first code
// value assigned at that length and how many symbols share it. count == 0
// means the length is unattained (first_code is then meaningless).
struct LengthBucket {
    BigInt first_code;
    BigInt count;
};
LengthBucket canonical_layout(unsigned length);

// Container round trip: header + concatenated codewords, zero padded to a
// byte boundary. encode_stream returns total bytes written.
std::uint64_t encode_stream(CodeId code, std::span<const BigInt> symbols, std::ostream& sink);
std::pair<CodeId, std::vector<BigInt>> decode_stream(std::istream& source);

std::uint64_t encode_stream_bytes(CodeId code, std::span<const BigInt> symbols,
                                  std::vector<std::uint8_t>& out);
std::pair<CodeId, std::vector<BigInt>> decode_stream_bytes(std::span<const std::uint8_t> bytes);

}  // namespace uci
