#include "uci/kraft.hpp"

#include <algorithm>
#include <cmath>

namespace uci {

namespace {

constexpr unsigned max_alpha_kraft_symbol = 1u << 20;

unsigned floor_log2_u(unsigned v) {
    unsigned r = 0;
    while (v >>= 1) ++r;
    return r;
}

// Exponent of the exact block sum 2^t * 2^-L(block t) for codes whose
// length is constant on block t.
unsigned block_sum_exponent(CodeId code, unsigned t) {
    switch (code) {
        case CodeId::beta:
            return 1;  // 2^t * 2^-(1+t)
        case CodeId::gamma:
            return 1 + t;
        case CodeId::delta:
            return 1 + 2 * floor_log2_u(1 + t);
        case CodeId::nu:
            return static_cast<unsigned>(static_cast<int>(1 + 2 * floor_log2_u(1 + t)) +
                                         nu_block_adjust(t));
        default:
            throw domain_error("no block closed form for this code");
    }
}

}  // namespace

Dyadic make_dyadic(BigInt num, unsigned shift) {
    if (num < 0) throw domain_error("dyadic values are nonnegative");
    if (num.is_zero()) return {0, 0};
    unsigned drop = static_cast<unsigned>(boost::multiprecision::lsb(num));
    if (drop > shift) drop = shift;
    return {num >> drop, shift - drop};
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned shift = std::max(a.shift, b.shift);
    BigInt num = (a.num << (shift - a.shift)) + (b.num << (shift - b.shift));
    return make_dyadic(std::move(num), shift);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    unsigned shift = std::max(a.shift, b.shift);
    BigInt an = a.num << (shift - a.shift);
    BigInt bn = b.num << (shift - b.shift);
    if (an < bn) throw domain_error("dyadic subtraction would go negative");
    return make_dyadic(an - bn, shift);
}

Dyadic operator*(const BigInt& k, const Dyadic& d) {
    if (k < 0) throw domain_error("dyadic values are nonnegative");
    return make_dyadic(k * d.num, d.shift);
}

bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.num == b.num && a.shift == b.shift;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    unsigned shift = std::max(a.shift, b.shift);
    BigInt an = a.num << (shift - a.shift);
    BigInt bn = b.num << (shift - b.shift);
    if (an < bn) return std::strong_ordering::less;
    if (an > bn) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Dyadic::to_string() const {
    if (shift == 0) return num.str();
    return num.str() + "/" + pow2(shift).str();
}

double Dyadic::to_double() const {
    // Adequate for display; exact comparisons never go through here.
    if (num.is_zero()) return 0.0;
    unsigned bits = bit_length(num);
    if (bits <= 52 && shift < 1000)
        return static_cast<double>(num.convert_to<std::uint64_t>()) / std::pow(2.0, shift);
    double l2 = log2_big(num) - static_cast<double>(shift);
    return std::pow(2.0, l2);
}

Dyadic kraft_term(CodeId code, const BigInt& a) {
    BigInt len = code_length(code, a);
    if (code == CodeId::alpha && a > max_alpha_kraft_symbol)
        throw domain_error("alpha kraft terms limited to small symbols");
    return Dyadic::unit(static_cast<unsigned>(len.convert_to<std::uint64_t>()));
}

Dyadic kraft_block(CodeId code, unsigned t) {
    if (code == CodeId::alpha) {
        if (t > 20) throw domain_error("alpha kraft blocks limited to small t");
        // sum_{a=2^t}^{2^(t+1)-1} 2^-a = (2^(2^t) - 1) / 2^(2^(t+1) - 1)
        unsigned lo = 1u << t;
        return make_dyadic(pow2(lo) - 1, 2 * lo - 1);
    }
    if (t <= 2 && (code == CodeId::delta_delta || code == CodeId::nu)) {
        Dyadic sum = Dyadic::zero();
        for (BigInt a = pow2(t); a < pow2(t + 1); ++a) sum = sum + kraft_term(code, a);
        return sum;
    }
    if (code == CodeId::delta_delta) return Dyadic::unit(block_sum_exponent(CodeId::delta, t));
    return Dyadic::unit(block_sum_exponent(code, t));
}

Dyadic kraft_prefix_sum(CodeId code, const BigInt& a_max) {
    if (a_max < 1) throw domain_error("a_max must be at least 1");
    if (code == CodeId::alpha) {
        if (a_max > max_alpha_kraft_symbol)
            throw domain_error("alpha kraft sums limited to small symbols");
        // sum_{a=1}^{n} 2^-a = (2^n - 1) / 2^n
        unsigned n = a_max.convert_to<unsigned>();
        return make_dyadic(pow2(n) - 1, n);
    }
    Dyadic sum = Dyadic::zero();
    unsigned t_last = floor_log2(a_max);
    for (unsigned t = 0; t <= t_last; ++t) {
        BigInt lo = pow2(t);
        BigInt block_end = pow2(t + 1) - 1;
        BigInt hi = block_end > a_max ? a_max : block_end;
        if (hi == block_end) {
            sum = sum + kraft_block(code, t);
            continue;
        }
        if (t <= 2 && (code == CodeId::delta_delta || code == CodeId::nu)) {
            for (BigInt a = lo; a <= hi; ++a) sum = sum + kraft_term(code, a);
        } else {
            CodeId base = code == CodeId::delta_delta ? CodeId::delta : code;
            unsigned len = static_cast<unsigned>(code_length_u64(base, lo));
            sum = sum + ((hi - lo + 1) * Dyadic::unit(len));
        }
    }
    return sum;
}

Dyadic delta_kraft_tail(unsigned last_block) {
    // Group s covers t in [2^s - 1, 2^(s+1) - 2]; each t contributes
    // 2^-(1+2s), so a full group contributes 2^-(1+s) and all full groups
    // beyond s1 sum to 2^-(1+s1).
    unsigned s1 = floor_log2_u(last_block + 2);
    std::uint64_t group_end = (2ull << s1) - 2;  // last t of group s1
    BigInt remaining = BigInt(group_end) - last_block;
    Dyadic tail = remaining * Dyadic::unit(1 + 2 * s1);
    return tail + Dyadic::unit(1 + s1);
}

NuIdentityReport verify_nu_identity() {
    NuIdentityReport rep;
    rep.expected = make_dyadic(1187, 12);

    // Reference terms as displayed in the derivation: per symbol for
    // a = 2..7, per block for the adjusted blocks.
    auto delta_ref = [](const std::string& label, unsigned t) -> Dyadic {
        (void)label;
        if (15 <= t && t <= 24) return Dyadic::unit(9);
        if (31 <= t && t <= 50) return Dyadic::unit(11);
        if (63 <= t && t <= 84) return Dyadic::unit(13);
        return Dyadic::unit(7);  // t = 7
    };
    auto nu_ref = [](unsigned t) -> Dyadic {
        if (15 <= t && t <= 24) return Dyadic::unit(8);
        if (31 <= t && t <= 36) return Dyadic::unit(9);
        if (37 <= t && t <= 50) return Dyadic::unit(10);
        if (63 <= t && t <= 67) return Dyadic::unit(11);
        if (68 <= t && t <= 84) return Dyadic::unit(12);
        return Dyadic::unit(6);  // t = 7
    };
    const unsigned delta_small_len[8] = {0, 0, 4, 4, 5, 5, 5, 5};
    const unsigned nu_small_len[8] = {0, 0, 3, 5, 6, 6, 7, 7};

    for (unsigned a = 2; a <= 7; ++a) {
        KraftComponent c;
        c.label = "a=" + std::to_string(a);
        c.delta_side = kraft_term(CodeId::delta, a);
        c.nu_side = kraft_term(CodeId::nu, a);
        c.expected_delta = Dyadic::unit(delta_small_len[a]);
        c.expected_nu = Dyadic::unit(nu_small_len[a]);
        c.ok = c.delta_side == c.expected_delta && c.nu_side == c.expected_nu;
        rep.components.push_back(std::move(c));
    }
    for (unsigned t = 0; t <= 84; ++t) {
        if (!in_shrink1_blocks(t) && !in_shrink2_blocks(t)) continue;
        KraftComponent c;
        c.label = "t=" + std::to_string(t);
        c.delta_side = kraft_block(CodeId::delta, t);
        c.nu_side = kraft_block(CodeId::nu, t);
        c.expected_delta = delta_ref(c.label, t);
        c.expected_nu = nu_ref(t);
        c.ok = c.delta_side == c.expected_delta && c.nu_side == c.expected_nu;
        rep.components.push_back(std::move(c));
    }

    rep.delta_total = Dyadic::zero();
    rep.nu_total = Dyadic::zero();
    for (const KraftComponent& c : rep.components) {
        rep.delta_total = rep.delta_total + c.delta_side;
        rep.nu_total = rep.nu_total + c.nu_side;
        if (!c.ok && rep.first_mismatch.empty()) rep.first_mismatch = c.label;
    }
    rep.sides_match = rep.delta_total == rep.expected && rep.nu_total == rep.expected;

    // Total-mass checks: delta partial sums increase strictly, close with
    // the exact tail, and equal the nu partials through t = 84.
    Dyadic part = Dyadic::zero();
    rep.delta_tail_consistent = true;
    for (unsigned t = 0; t <= 84; ++t) {
        Dyadic next = part + kraft_block(CodeId::delta, t);
        if (!(part < next) || !(next < Dyadic::one())) rep.delta_tail_consistent = false;
        if (!(next + delta_kraft_tail(t) == Dyadic::one())) rep.delta_tail_consistent = false;
        part = next;
    }
    rep.delta_partial_84 = part;
    Dyadic nu_part = Dyadic::zero();
    for (unsigned t = 0; t <= 84; ++t) nu_part = nu_part + kraft_block(CodeId::nu, t);
    rep.nu_partial_84 = nu_part;
    rep.nu_mass_is_one = (nu_part + delta_kraft_tail(84)) == Dyadic::one();

    rep.ok = rep.sides_match && rep.first_mismatch.empty() && rep.nu_mass_is_one &&
             rep.delta_tail_consistent;
    return rep;
}

}  // namespace uci
