#include "uci/codes.hpp"

#include <array>
#include <istream>
#include <mutex>
#include <ostream>

namespace uci {

namespace {

constexpr std::uint64_t max_unary_symbol = 1u << 26;  // alpha codewords have `a` bits

unsigned floor_log2_u(unsigned v) {
    unsigned r = 0;
    while (v >>= 1) ++r;
    return r;
}

void require_symbol(const BigInt& a) {
    if (a < 1) throw domain_error("symbols start at 1");
}

// delta length of any symbol in block t.
std::uint64_t delta_block_len(unsigned t) {
    return 1ull + t + 2ull * floor_log2_u(1u + t);
}

std::uint64_t nu_block_len(unsigned t) {
    return delta_block_len(t) + static_cast<std::int64_t>(nu_block_adjust(t));
}

// beta(a) with the leading 1 removed; floor_log2(a) bits.
BitString beta_tail(const BigInt& a) {
    BitString bs;
    unsigned t = floor_log2(a);
    for (unsigned i = t; i-- > 0;) bs.push_back(boost::multiprecision::bit_test(a, i));
    return bs;
}

BitString unary_bits(std::uint64_t a) {
    BitString bs;
    for (std::uint64_t i = 1; i < a; ++i) bs.push_back(false);
    bs.push_back(true);
    return bs;
}

BitString gamma_bits(const BigInt& a) {
    unsigned t = floor_log2(a);
    BitString bs = unary_bits(static_cast<std::uint64_t>(t) + 1);
    bs.append(beta_tail(a));
    return bs;
}

BitString delta_bits(const BigInt& a) {
    unsigned t = floor_log2(a);
    BitString bs = gamma_bits(BigInt(t + 1));
    bs.append(beta_tail(a));
    return bs;
}

// --- canonical nu layout -------------------------------------------------
//
// Symbols sorted by (length, value) receive consecutive code values; the
// first code of each attained length is the previous length's end shifted
// up. Because the nu Kraft mass is exactly 1, first_code + count never
// exceeds 2^length. A length class is made of at most two of the
// hand-assigned symbols 1..7 plus whole blocks t with nu_block_len(t) ==
// length; nu_block_len(t) >= t + 3 keeps the contributing blocks finite.

struct LengthClass {
    BigInt first_code;
    BigInt count;
    std::array<std::uint8_t, 2> small{};  // symbols <= 7 of this length, ascending
    int small_n = 0;
    std::vector<unsigned> blocks;  // block indices t, ascending
};

constexpr std::uint8_t small_nu_len[8] = {0, 1, 3, 5, 6, 6, 7, 7};  // index = symbol

class NuLayout {
  public:
    static NuLayout& instance() {
        static NuLayout layout;
        return layout;
    }

    // Copy of the class for length l (count 0 when unattained).
    LengthClass at(unsigned l) {
        std::lock_guard<std::mutex> lock(mu_);
        extend(l);
        return classes_[l];
    }

  private:
    void extend(unsigned upto) {
        while (computed_ <= upto) {
            unsigned l = computed_++;
            LengthClass cls;
            if (l >= 1) {
                for (std::uint8_t a = 1; a <= 7; ++a)
                    if (small_nu_len[a] == l) cls.small[cls.small_n++] = a;
                for (unsigned t = 3; t + 3 <= l; ++t)
                    if (nu_block_shape(t).final_len == l) cls.blocks.push_back(t);
                cls.count = cls.small_n;
                for (unsigned t : cls.blocks) cls.count += pow2(t);
                if (!cls.count.is_zero()) {
                    cls.first_code = have_any_ ? (prev_end_ << (l - prev_len_)) : BigInt(0);
                    prev_end_ = cls.first_code + cls.count;
                    prev_len_ = l;
                    have_any_ = true;
                }
            }
            if (classes_.size() <= l) classes_.resize(l + 1);
            classes_[l] = std::move(cls);
        }
    }

    std::mutex mu_;
    std::vector<LengthClass> classes_;
    unsigned computed_ = 0;
    BigInt prev_end_;
    unsigned prev_len_ = 0;
    bool have_any_ = false;
};

BitString nu_bits(const BigInt& a) {
    unsigned l = static_cast<unsigned>(code_length_u64(CodeId::nu, a));
    LengthClass cls = NuLayout::instance().at(l);
    BigInt rank = 0;
    if (a <= 7) {
        for (int i = 0; i < cls.small_n; ++i)
            if (BigInt(cls.small[i]) < a) ++rank;
    } else {
        rank = cls.small_n;
        unsigned t = floor_log2(a);
        for (unsigned tp : cls.blocks) {
            if (tp >= t) break;
            rank += pow2(tp);
        }
        rank += a - pow2(t);
    }
    BigInt value = cls.first_code + rank;
    BitString bs;
    for (unsigned i = l; i-- > 0;) bs.push_back(boost::multiprecision::bit_test(value, i));
    return bs;
}

BigInt nu_symbol_at(const LengthClass& cls, BigInt rank) {
    if (rank < cls.small_n) return BigInt(cls.small[rank.convert_to<int>()]);
    rank -= cls.small_n;
    for (unsigned t : cls.blocks) {
        BigInt block = pow2(t);
        if (rank < block) return block + rank;
        rank -= block;
    }
    throw error("canonical layout rank out of range");
}

// --- scalar decoders ------------------------------------------------------

std::uint64_t decode_unary(BitReader& reader) {
    std::uint64_t zeros = 0;
    while (!reader.read_bit()) {
        if (++zeros > max_unary_symbol) throw domain_error("unary run too long");
    }
    return zeros + 1;
}

BigInt read_suffix(BitReader& reader, std::uint64_t bits) {
    BigInt v = 1;  // implicit leading 1 of beta
    for (std::uint64_t i = 0; i < bits; ++i) {
        v <<= 1;
        if (reader.read_bit()) v |= 1;
    }
    return v;
}

BigInt decode_gamma(BitReader& reader) {
    std::uint64_t n = decode_unary(reader);  // |beta(a)|
    return read_suffix(reader, n - 1);
}

std::uint64_t checked_length_field(const BigInt& n) {
    if (n > max_unary_symbol) throw domain_error("length field too large");
    return n.convert_to<std::uint64_t>();
}

BigInt decode_delta(BitReader& reader) {
    BigInt n = decode_gamma(reader);  // |beta(a)|
    return read_suffix(reader, checked_length_field(n) - 1);
}

// The length part m = |beta(a)| is still gamma coded; only the suffix
// handling changes for the reassigned symbols:
//   m=1 -> 1;  m=2 -> 2 with no suffix;  m=3 -> 00:4 01:5 11:3 10+b:6/7;
//   m>=4 -> plain delta suffix.
BigInt decode_delta_delta(BitReader& reader) {
    std::uint64_t m = decode_unary(reader);
    std::uint64_t n = 1;
    if (m > 1) n = checked_length_field(read_suffix(reader, m - 1));
    if (n == 1) return 1;
    if (n == 2) return 2;
    if (n == 3) {
        bool b0 = reader.read_bit();
        bool b1 = reader.read_bit();
        if (!b0) return b1 ? 5 : 4;
        if (b1) return 3;
        return reader.read_bit() ? 7 : 6;
    }
    return read_suffix(reader, n - 1);
}

BigInt decode_nu(BitReader& reader) {
    BigInt value = 0;
    NuLayout& layout = NuLayout::instance();
    for (unsigned l = 1;; ++l) {
        value <<= 1;
        if (reader.read_bit()) value |= 1;
        LengthClass cls = layout.at(l);
        if (!cls.count.is_zero() && value >= cls.first_code &&
            value - cls.first_code < cls.count) {
            return nu_symbol_at(cls, value - cls.first_code);
        }
    }
}

}  // namespace

std::string_view to_string(CodeId code) {
    switch (code) {
        case CodeId::alpha: return "alpha";
        case CodeId::beta: return "beta";
        case CodeId::gamma: return "gamma";
        case CodeId::delta: return "delta";
        case CodeId::delta_delta: return "delta_delta";
        case CodeId::nu: return "nu";
    }
    return "?";
}

std::optional<CodeId> code_from_string(std::string_view name) {
    for (CodeId c : all_codes)
        if (to_string(c) == name) return c;
    if (name == "dd") return CodeId::delta_delta;
    return std::nullopt;
}

std::optional<CodeId> code_from_byte(std::uint8_t id) {
    if (id > static_cast<std::uint8_t>(CodeId::nu)) return std::nullopt;
    return static_cast<CodeId>(id);
}

bool in_shrink1_blocks(unsigned t) {
    return t == 7 || (15 <= t && t <= 24) || (37 <= t && t <= 50) || (68 <= t && t <= 84);
}

bool in_shrink2_blocks(unsigned t) {
    return (31 <= t && t <= 36) || (63 <= t && t <= 67);
}

int nu_block_adjust(unsigned t) {
    if (in_shrink1_blocks(t)) return -1;
    if (in_shrink2_blocks(t)) return -2;
    return 0;
}

int nu_adjust(const BigInt& a) {
    require_symbol(a);
    if (a == 6 || a == 7) return 2;
    if (a >= 3 && a <= 5) return 1;
    if (a == 2) return -1;
    if (a == 1) return 0;
    return nu_block_adjust(floor_log2(a));
}

BlockShape nu_block_shape(unsigned t) {
    if (t < 3) throw domain_error("block shapes are uniform only for t >= 3");
    BlockShape shape;
    shape.t = t;
    shape.count = pow2(t);
    shape.base_len = delta_block_len(t);
    shape.adjust = nu_block_adjust(t);
    shape.final_len = nu_block_len(t);
    return shape;
}

BigInt code_length(CodeId code, const BigInt& a) {
    require_symbol(a);
    if (code == CodeId::alpha) return a;
    return BigInt(code_length_u64(code, a));
}

std::uint64_t code_length_u64(CodeId code, const BigInt& a) {
    require_symbol(a);
    unsigned t = floor_log2(a);
    switch (code) {
        case CodeId::alpha:
            throw domain_error("alpha lengths may exceed 64 bits; use code_length");
        case CodeId::beta:
            return 1ull + t;
        case CodeId::gamma:
            return 1ull + 2ull * t;
        case CodeId::delta:
            return delta_block_len(t);
        case CodeId::delta_delta:
            if (a == 2) return 3;
            if (a == 3) return 5;
            if (a == 6 || a == 7) return 6;
            return delta_block_len(t);
        case CodeId::nu:
            return static_cast<std::uint64_t>(static_cast<std::int64_t>(delta_block_len(t)) +
                                              nu_adjust(a));
    }
    throw domain_error("unknown code");
}

BitString encode(CodeId code, const BigInt& a) {
    require_symbol(a);
    switch (code) {
        case CodeId::alpha:
            if (a > max_unary_symbol) throw domain_error("alpha codeword too long to materialize");
            return unary_bits(a.convert_to<std::uint64_t>());
        case CodeId::beta: {
            BitString bs;
            bs.push_back(true);
            bs.append(beta_tail(a));
            return bs;
        }
        case CodeId::gamma:
            return gamma_bits(a);
        case CodeId::delta:
            return delta_bits(a);
        case CodeId::delta_delta:
            if (a == 2) return BitString::from_string("010");
            if (a == 3) return delta_bits(BigInt(7));
            if (a == 6 || a == 7) {
                BitString bs = delta_bits(BigInt(6));
                bs.push_back(a == 7);
                return bs;
            }
            return delta_bits(a);
        case CodeId::nu:
            return nu_bits(a);
    }
    throw domain_error("unknown code");
}

BigInt decode(CodeId code, BitReader& reader) {
    try {
        switch (code) {
            case CodeId::alpha:
                return BigInt(decode_unary(reader));
            case CodeId::beta:
                throw not_prefix_decodable("beta is not a prefix code");
            case CodeId::gamma:
                return decode_gamma(reader);
            case CodeId::delta:
                return decode_delta(reader);
            case CodeId::delta_delta:
                return decode_delta_delta(reader);
            case CodeId::nu:
                return decode_nu(reader);
        }
    } catch (const stream_exhausted&) {
        throw truncated_codeword();
    }
    throw domain_error("unknown code");
}

LengthBucket canonical_layout(unsigned length) {
    if (length < 1) throw domain_error("codeword lengths start at 1");
    LengthClass cls = NuLayout::instance().at(length);
    return {cls.first_code, cls.count};
}

std::uint64_t encode_stream_bytes(CodeId code, std::span<const BigInt> symbols,
                                  std::vector<std::uint8_t>& out) {
    ContainerHeader h;
    h.code_id = static_cast<std::uint8_t>(code);
    h.count = symbols.size();
    write_container_header(out, h);
    BitWriter writer;
    for (const BigInt& a : symbols) writer.write(encode(code, a));
    std::vector<std::uint8_t> payload = writer.take_bytes();
    out.insert(out.end(), payload.begin(), payload.end());
    return container_header_size + payload.size();
}

std::pair<CodeId, std::vector<BigInt>> decode_stream_bytes(std::span<const std::uint8_t> bytes) {
    ContainerHeader h = parse_container_header(bytes);
    std::optional<CodeId> code = code_from_byte(h.code_id);
    if (!code) throw bad_container("unknown code id");
    BitReader reader(bytes.subspan(container_header_size));
    // every codeword takes at least one bit
    if (h.count > reader.total_bits()) throw bad_container("truncated payload");
    std::vector<BigInt> symbols;
    symbols.reserve(h.count);
    try {
        for (std::uint64_t i = 0; i < h.count; ++i) symbols.push_back(decode(*code, reader));
    } catch (const truncated_codeword&) {
        throw bad_container("truncated payload");
    }
    return {*code, std::move(symbols)};
}

std::uint64_t encode_stream(CodeId code, std::span<const BigInt> symbols, std::ostream& sink) {
    std::vector<std::uint8_t> bytes;
    std::uint64_t n = encode_stream_bytes(code, symbols, bytes);
    sink.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!sink) throw error("write failed");
    return n;
}

std::pair<CodeId, std::vector<BigInt>> decode_stream(std::istream& source) {
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(source)),
                                    std::istreambuf_iterator<char>());
    return decode_stream_bytes(bytes);
}

}  // namespace uci
