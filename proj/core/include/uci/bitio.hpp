#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uci/errors.hpp"

namespace uci {

// A finite bit sequence, most significant bit first. The empty string is
// valid (it is the payload of beta(1)).
class BitString {
  public:
    BitString() = default;

    // From literal "0101..."; rejects anything but '0'/'1'.
    static BitString from_string(std::string_view s);

    void push_back(bool bit) { bits_.push_back(bit); }
    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    bool bit(std::size_t i) const { return bits_[i]; }
    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    bool is_prefix_of(const BitString& other) const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

  private:
    std::vector<bool> bits_;
};

// Appends bits MSB-first into a growable byte buffer. An optional bit
// capacity turns overruns into sink_overflow instead of growth.
class BitWriter {
  public:
    BitWriter() = default;
    explicit BitWriter(std::uint64_t capacity_bits) : capacity_(capacity_bits) {}

    void write_bit(bool bit);
    void write(const BitString& bs);

    // Zero-pads to the next byte boundary (no-op when already aligned).
    void align_to_byte();

    std::uint64_t position() const { return pos_; }

    // Padded byte image of everything written so far.
    std::vector<std::uint8_t> take_bytes();
    const std::vector<std::uint8_t>& bytes_unpadded() const { return buf_; }

  private:
    std::vector<std::uint8_t> buf_;
    std::uint64_t pos_ = 0;
    std::optional<std::uint64_t> capacity_;
};

// Reads bits MSB-first from a borrowed byte buffer. Single-owner mutable
// cursor; the position never exceeds the total bit count.
class BitReader {
  public:
    explicit BitReader(std::span<const std::uint8_t> bytes)
        : data_(bytes), total_(8 * static_cast<std::uint64_t>(bytes.size())) {}
    BitReader(std::span<const std::uint8_t> bytes, std::uint64_t total_bits)
        : data_(bytes), total_(total_bits) {}

    // Throws stream_exhausted at end of stream.
    bool read_bit();

    std::uint64_t position() const { return pos_; }
    std::uint64_t total_bits() const { return total_; }
    bool exhausted() const { return pos_ >= total_; }

  private:
    std::span<const std::uint8_t> data_;
    std::uint64_t total_ = 0;
    std::uint64_t pos_ = 0;
};

// Container header for encoded integer streams:
//   magic "UCI1" | code id (1 byte) | element count (8 bytes little endian)
inline constexpr std::size_t container_header_size = 13;
inline constexpr std::uint8_t container_magic[4] = {'U', 'C', 'I', '1'};

struct ContainerHeader {
    std::uint8_t code_id = 0;
    std::uint64_t count = 0;
};

void write_container_header(std::vector<std::uint8_t>& out, const ContainerHeader& h);
// Throws bad_container on short input or wrong magic.
ContainerHeader parse_container_header(std::span<const std::uint8_t> bytes);

}  // namespace uci
