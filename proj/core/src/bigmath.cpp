#include "uci/bigmath.hpp"

#include <cctype>
#include <cmath>

namespace uci {

double log2_big(const BigInt& v) {
    if (v < 1) throw domain_error("log2_big requires v >= 1");
    unsigned bits = bit_length(v);
    if (bits <= 62) return std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
    // Keep a 62-bit window below the msb and scale back.
    unsigned drop = bits - 62;
    BigInt top = v >> drop;
    return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) +
           static_cast<double>(drop);
}

namespace {

// cpp_int reads a leading 0 as an octal prefix; decimal digit strings need
// the zeros stripped first.
BigInt bigint_from_digits(std::string digits) {
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string::npos) return BigInt(0);
    return BigInt(digits.substr(first));
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
    if (text.empty()) throw domain_error("empty integer");
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw domain_error("bad integer: " + std::string(text));
    }
    return bigint_from_digits(std::string(text));
}

ExactDecimal parse_decimal(std::string_view text) {
    if (text.empty()) throw domain_error("empty decimal");
    ExactDecimal d;
    d.text = std::string(text);
    std::string digits;
    bool seen_dot = false;
    unsigned scale = 0;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw domain_error("bad decimal: " + d.text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++scale;
        } else {
            throw domain_error("bad decimal: " + d.text);
        }
    }
    if (digits.empty()) throw domain_error("bad decimal: " + d.text);
    d.digits = bigint_from_digits(digits);
    d.scale = scale;
    return d;
}

}  // namespace uci
