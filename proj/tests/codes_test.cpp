#include "uci/codes.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

namespace uci {
namespace {

const char* kGammaTable[16] = {"1",       "010",     "011",     "00100",   "00101",
                               "00110",   "00111",   "0001000", "0001001", "0001010",
                               "0001011", "0001100", "0001101", "0001110", "0001111",
                               "000010000"};
const char* kDeltaTable[16] = {"1",        "0100",     "0101",     "01100",    "01101",
                               "01110",    "01111",    "00100000", "00100001", "00100010",
                               "00100011", "00100100", "00100101", "00100110", "00100111",
                               "001010000"};
const char* kDeltaDeltaTable[8] = {"1",     "010",    "01111",  "01100",
                                   "01101", "011100", "011101", "00100000"};

BigInt decode_bits(CodeId code, const std::string& bits) {
    BitWriter w;
    w.write(BitString::from_string(bits));
    auto bytes = w.take_bytes();
    BitReader r(bytes, bits.size());
    return decode(code, r);
}

TEST(GoldenVectors, GammaAndDelta) {
    for (int a = 1; a <= 16; ++a) {
        EXPECT_EQ(encode(CodeId::gamma, a).to_string(), kGammaTable[a - 1]) << a;
        EXPECT_EQ(encode(CodeId::delta, a).to_string(), kDeltaTable[a - 1]) << a;
    }
}

TEST(GoldenVectors, DeltaDelta) {
    for (int a = 1; a <= 8; ++a)
        EXPECT_EQ(encode(CodeId::delta_delta, a).to_string(), kDeltaDeltaTable[a - 1]) << a;
}

TEST(GoldenVectors, AlphaAndBeta) {
    EXPECT_EQ(encode(CodeId::alpha, 1).to_string(), "1");
    EXPECT_EQ(encode(CodeId::alpha, 4).to_string(), "0001");
    EXPECT_EQ(encode(CodeId::beta, 4).to_string(), "100");
    EXPECT_EQ(encode(CodeId::beta, 11).to_string(), "1011");
    EXPECT_EQ(encode(CodeId::beta, 1).to_string(), "1");
}

TEST(Lengths, SpotValues) {
    EXPECT_EQ(code_length(CodeId::delta, 16), 9);
    EXPECT_EQ(code_length(CodeId::delta_delta, 2), 3);
    EXPECT_EQ(code_length(CodeId::delta_delta, 3), 5);
    EXPECT_EQ(code_length(CodeId::gamma, 1), 1);
    EXPECT_EQ(code_length(CodeId::nu, 8), 8);
    EXPECT_EQ(code_length(CodeId::nu, 128), 13);  // t=7 block shrinks by one
    EXPECT_EQ(code_length(CodeId::alpha, 7), 7);
    BigInt huge = pow2(200) + 12345;
    EXPECT_EQ(code_length(CodeId::alpha, huge), huge);
    EXPECT_EQ(code_length(CodeId::beta, huge), 201);
}

TEST(Lengths, RejectsNonPositiveSymbols) {
    EXPECT_THROW(code_length(CodeId::gamma, 0), domain_error);
    EXPECT_THROW(encode(CodeId::delta, BigInt(-3)), domain_error);
}

TEST(NuAdjust, SmallSymbolRulesTakePrecedence) {
    EXPECT_EQ(nu_adjust(1), 0);
    EXPECT_EQ(nu_adjust(2), -1);
    EXPECT_EQ(nu_adjust(3), 1);
    EXPECT_EQ(nu_adjust(4), 1);
    EXPECT_EQ(nu_adjust(5), 1);
    EXPECT_EQ(nu_adjust(6), 2);
    EXPECT_EQ(nu_adjust(7), 2);
}

TEST(NuAdjust, BlockRules) {
    EXPECT_EQ(nu_adjust(pow2(31)), -2);
    EXPECT_EQ(nu_adjust(pow2(7) + 5), -1);
    EXPECT_EQ(nu_adjust(pow2(14)), 0);
    EXPECT_EQ(nu_adjust(pow2(85)), 0);
    EXPECT_EQ(nu_adjust(pow2(84) + 123), -1);
    EXPECT_EQ(nu_adjust(pow2(63)), -2);
    EXPECT_EQ(nu_adjust(8), 0);
}

TEST(Decode, SpotCodewords) {
    EXPECT_EQ(decode_bits(CodeId::delta, "01111"), 7);
    EXPECT_EQ(decode_bits(CodeId::delta, "0111100000"), 7);  // trailing bits untouched
    EXPECT_EQ(decode_bits(CodeId::delta_delta, "010"), 2);
    EXPECT_EQ(decode_bits(CodeId::delta_delta, "0101111111"), 2);  // stops after 010
    EXPECT_EQ(decode_bits(CodeId::delta_delta, "011100"), 6);
    EXPECT_EQ(decode_bits(CodeId::delta_delta, "011101"), 7);
    EXPECT_EQ(decode_bits(CodeId::delta_delta, "01111"), 3);
    EXPECT_EQ(decode_bits(CodeId::alpha, "0001"), 4);
}

TEST(Decode, ConsumesExactlyTheCodeword) {
    for (CodeId code : prefix_codes) {
        for (int a = 1; a <= 300; ++a) {
            BitString cw = encode(code, a);
            BitWriter w;
            w.write(cw);
            w.write(BitString::from_string("1011"));  // arbitrary continuation
            auto bytes = w.take_bytes();
            BitReader r(bytes, cw.size() + 4);
            EXPECT_EQ(decode(code, r), a);
            EXPECT_EQ(r.position(), cw.size()) << to_string(code) << " a=" << a;
        }
    }
}

TEST(Decode, BetaIsNotPrefixDecodable) {
    std::uint8_t buf[] = {0xff};
    BitReader r(buf);
    EXPECT_THROW(decode(CodeId::beta, r), not_prefix_decodable);
}

TEST(Decode, TruncatedCodeword) {
    BitString cw = encode(CodeId::delta, 1000);
    BitWriter w;
    for (std::size_t i = 0; i + 1 < cw.size(); ++i) w.write_bit(cw.bit(i));
    auto bytes = w.take_bytes();
    BitReader r(bytes, cw.size() - 1);
    EXPECT_THROW(decode(CodeId::delta, r), truncated_codeword);

    std::vector<std::uint8_t> empty;
    BitReader r2(empty);
    EXPECT_THROW(decode(CodeId::nu, r2), truncated_codeword);
}

TEST(RoundTrip, DenseSmallRange) {
    for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
        BitWriter w;
        for (int a = 1; a <= 20000; ++a) w.write(encode(code, a));
        auto bytes = w.take_bytes();
        BitReader r(bytes);
        for (int a = 1; a <= 20000; ++a) {
            ASSERT_EQ(decode(code, r), a) << to_string(code);
        }
    }
}

TEST(RoundTrip, RandomHugeSymbols) {
    std::mt19937_64 rng(2024);
    std::vector<BigInt> symbols;
    for (int i = 0; i < 200; ++i) {
        unsigned bits = 1 + static_cast<unsigned>(rng() % 200);
        BigInt a = 0;
        for (unsigned b = 0; b < bits; ++b)
            if (rng() & 1) a |= pow2(b);
        a |= pow2(bits - 1);  // keep the draw at the chosen magnitude
        if (a < 1) a = 1;
        symbols.push_back(a);
    }
    for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
        BitWriter w;
        for (const BigInt& a : symbols) w.write(encode(code, a));
        auto bytes = w.take_bytes();
        BitReader r(bytes);
        for (const BigInt& a : symbols) {
            ASSERT_EQ(decode(code, r), a) << to_string(code);
        }
    }
}

TEST(LengthAgreement, EncodedSizeMatchesLengthFunction) {
    std::mt19937_64 rng(99);
    for (CodeId code : prefix_codes) {
        for (int i = 0; i < 500; ++i) {
            BigInt a = code == CodeId::alpha ? BigInt(1 + rng() % 4096)
                                             : BigInt(1 + rng() % 1000000);
            EXPECT_EQ(BigInt(encode(code, a).size()), code_length(code, a))
                << to_string(code) << " a=" << a;
        }
    }
    for (int a = 1; a <= 64; ++a)
        EXPECT_EQ(BigInt(encode(CodeId::beta, a).size()), code_length(CodeId::beta, a));
}

// Explicit trie: each codeword must end on a fresh leaf, never passing
// through or stopping at another codeword's end.
class Trie {
  public:
    bool insert(const BitString& cw) {
        std::size_t node = 0;
        for (std::size_t i = 0; i < cw.size(); ++i) {
            if (terminal_[node]) return false;  // another codeword is a proper prefix
            int bit = cw.bit(i) ? 1 : 0;
            if (child_[node][bit] == 0) {
                child_.push_back({0, 0});
                terminal_.push_back(false);
                child_[node][bit] = child_.size() - 1;
            }
            node = child_[node][bit];
        }
        if (terminal_[node]) return false;                        // duplicate
        if (child_[node][0] || child_[node][1]) return false;     // prefix of earlier word
        terminal_[node] = true;
        return true;
    }

  private:
    std::vector<std::array<std::size_t, 2>> child_{{0, 0}};
    std::vector<bool> terminal_{false};
};

TEST(PrefixFreeness, TrieOverSmallSymbols) {
    for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
        Trie trie;
        for (int a = 1; a <= 4096; ++a)
            ASSERT_TRUE(trie.insert(encode(code, a))) << to_string(code) << " a=" << a;
    }
}

TEST(NuLengthLaw, MatchesDeltaPlusAdjustment) {
    for (int a = 1; a <= 20000; ++a) {
        BigInt expected = code_length(CodeId::delta, a) + nu_adjust(a);
        ASSERT_EQ(code_length(CodeId::nu, a), expected) << a;
        if (a <= 2000) {
            ASSERT_EQ(BigInt(encode(CodeId::nu, a).size()), expected) << a;
        }
    }
    for (unsigned t : {15u, 24u, 31u, 36u, 37u, 50u, 63u, 67u, 68u, 84u, 85u, 200u}) {
        for (const BigInt& a :
             {pow2(t), BigInt(pow2(t) + 12345 % (t + 1)), BigInt(pow2(t + 1) - 1)}) {
            BigInt expected = code_length(CodeId::delta, a) + nu_adjust(a);
            EXPECT_EQ(BigInt(encode(CodeId::nu, a).size()), expected) << "t=" << t;
        }
    }
}

TEST(BlockStructure, ConstantLengthWithinBlocks) {
    std::mt19937_64 rng(5);
    for (unsigned t = 3; t <= 100; t += 7) {
        for (CodeId code : {CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
            BigInt lo = pow2(t);
            BigInt hi = pow2(t + 1) - 1;
            BigInt mid = lo + rng() % (1ull << std::min(t, 20u));
            EXPECT_EQ(code_length(code, lo), code_length(code, hi));
            EXPECT_EQ(code_length(code, lo), code_length(code, mid));
        }
    }
}

TEST(CanonicalLayout, SmallLengths) {
    LengthBucket l1 = canonical_layout(1);
    EXPECT_EQ(l1.first_code, 0);
    EXPECT_EQ(l1.count, 1);  // only a=1
    EXPECT_EQ(encode(CodeId::nu, 1).to_string(), "0");

    EXPECT_EQ(canonical_layout(2).count, 0);  // unattained
    LengthBucket l3 = canonical_layout(3);
    EXPECT_EQ(l3.count, 1);  // only a=2
    EXPECT_EQ(l3.first_code, 4);
    EXPECT_EQ(encode(CodeId::nu, 2).to_string(), "100");
}

TEST(BlockShape, InvariantsAndConstancy) {
    EXPECT_THROW(nu_block_shape(2), domain_error);
    std::mt19937_64 rng(31);
    for (unsigned t = 3; t <= 256; ++t) {
        BlockShape s = nu_block_shape(t);
        EXPECT_EQ(s.t, t);
        EXPECT_EQ(s.count, pow2(t));
        EXPECT_EQ(s.base_len, 1ull + t + 2 * static_cast<unsigned>(std::log2(1.0 + t)));
        EXPECT_EQ(s.final_len, s.base_len + s.adjust);
        EXPECT_GE(s.adjust, -2);
        EXPECT_LE(s.adjust, 2);
        EXPECT_GE(s.final_len, t + 1);  // each length is shared by finitely many symbols
        BigInt probe = pow2(t) + rng() % std::min<std::uint64_t>(1000, 1ull << std::min(t, 20u));
        EXPECT_EQ(code_length_u64(CodeId::nu, probe), s.final_len) << t;
    }
}

TEST(CanonicalLayout, StaysBelowCapacity) {
    for (unsigned l = 1; l <= 300; ++l) {
        LengthBucket b = canonical_layout(l);
        if (b.count.is_zero()) continue;
        EXPECT_LE(b.first_code + b.count, pow2(l)) << l;
    }
}

TEST(Streams, GammaSingleSymbol) {
    std::vector<BigInt> symbols = {BigInt(1)};
    std::vector<std::uint8_t> bytes;
    std::uint64_t n = encode_stream_bytes(CodeId::gamma, symbols, bytes);
    EXPECT_EQ(n, 14u);  // 13-byte header + 1 padded payload byte
    EXPECT_EQ(bytes.size(), 14u);
    EXPECT_EQ(bytes[13], 0x80);  // single bit "1"
    auto [code, back] = decode_stream_bytes(bytes);
    EXPECT_EQ(code, CodeId::gamma);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0], 1);
}

TEST(Streams, PayloadBitsAreConcatenatedCodewords) {
    std::vector<BigInt> symbols = {BigInt(2), BigInt(3)};
    std::vector<std::uint8_t> bytes;
    encode_stream_bytes(CodeId::delta, symbols, bytes);
    ASSERT_EQ(bytes.size(), container_header_size + 1);
    EXPECT_EQ(bytes[13], 0b0100'0101);  // delta(2)=0100, delta(3)=0101

    bytes.clear();
    encode_stream_bytes(CodeId::delta_delta, symbols, bytes);
    ASSERT_EQ(bytes.size(), container_header_size + 1);
    EXPECT_EQ(bytes[13], 0b0100'1111);  // 010 + 01111
}

TEST(Streams, RoundTripViaIostream) {
    std::vector<BigInt> symbols;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) symbols.push_back(BigInt(1 + rng() % 100000));
    for (CodeId code : prefix_codes) {
        if (code == CodeId::alpha) continue;  // unary blows up on large draws
        std::stringstream ss;
        encode_stream(code, symbols, ss);
        auto [back_code, back] = decode_stream(ss);
        EXPECT_EQ(back_code, code);
        EXPECT_EQ(back, symbols);
    }
}

TEST(Streams, MalformedContainers) {
    std::vector<BigInt> symbols = {BigInt(5)};
    std::vector<std::uint8_t> bytes;
    encode_stream_bytes(CodeId::delta, symbols, bytes);

    auto bad_magic = bytes;
    bad_magic[1] = 'x';
    EXPECT_THROW(decode_stream_bytes(bad_magic), bad_container);

    auto bad_id = bytes;
    bad_id[4] = 42;
    EXPECT_THROW(decode_stream_bytes(bad_id), bad_container);

    auto truncated = bytes;
    truncated[5] = 3;  // claim more symbols than the payload holds
    EXPECT_THROW(decode_stream_bytes(truncated), bad_container);

    auto hostile = bytes;
    for (int i = 5; i < 13; ++i) hostile[i] = 0xff;  // absurd element count
    EXPECT_THROW(decode_stream_bytes(hostile), bad_container);
}

// With total Kraft mass 1 every bit string is a prefix of some codeword,
// so decoding arbitrary bytes must yield a symbol or run out of input;
// it must never crash or spin.
TEST(Decode, ArbitraryBytesTerminate) {
    std::mt19937_64 rng(1234);
    for (CodeId code : {CodeId::gamma, CodeId::delta, CodeId::delta_delta, CodeId::nu}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::uint8_t> bytes(1 + rng() % 64);
            for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
            BitReader r(bytes);
            try {
                while (!r.exhausted()) {
                    BigInt a = decode(code, r);
                    ASSERT_GE(a, 1);
                }
            } catch (const truncated_codeword&) {
            } catch (const domain_error&) {
                // hostile length fields are rejected, not honored
            }
        }
    }
}

TEST(Concurrency, NuEncodeIsReentrant) {
    // hit the lazily built canonical layout from several threads at once
    std::vector<std::thread> threads;
    std::atomic<bool> ok{true};
    for (int w = 0; w < 8; ++w) {
        threads.emplace_back([w, &ok] {
            std::mt19937_64 rng(w);
            for (int i = 0; i < 2000; ++i) {
                unsigned bits = 1 + static_cast<unsigned>(rng() % 150);
                BigInt a = pow2(bits - 1) | BigInt(rng() % 1000);
                if (BigInt(encode(CodeId::nu, a).size()) != code_length(CodeId::nu, a))
                    ok = false;
            }
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_TRUE(ok);
}

TEST(Names, RoundTrip) {
    for (CodeId code : all_codes) {
        auto parsed = code_from_string(to_string(code));
        ASSERT_TRUE(parsed.has_value());
        EXPECT_EQ(*parsed, code);
        auto by_byte = code_from_byte(static_cast<std::uint8_t>(code));
        ASSERT_TRUE(by_byte.has_value());
        EXPECT_EQ(*by_byte, code);
    }
    EXPECT_FALSE(code_from_string("omega").has_value());
    EXPECT_FALSE(code_from_byte(6).has_value());
}

}  // namespace
}  // namespace uci
