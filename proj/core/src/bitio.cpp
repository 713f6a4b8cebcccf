#include "uci/bitio.hpp"

namespace uci {

BitString BitString::from_string(std::string_view s) {
    BitString bs;
    bs.bits_.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            bs.bits_.push_back(false);
        else if (c == '1')
            bs.bits_.push_back(true);
        else
            throw domain_error("bit string literal may contain only 0 and 1");
    }
    return bs;
}

bool BitString::is_prefix_of(const BitString& other) const {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (bits_[i] != other.bits_[i]) return false;
    return true;
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

void BitWriter::write_bit(bool bit) {
    if (capacity_ && pos_ >= *capacity_) throw sink_overflow();
    if (pos_ % 8 == 0) buf_.push_back(0);
    if (bit) buf_.back() |= static_cast<std::uint8_t>(0x80u >> (pos_ % 8));
    ++pos_;
}

void BitWriter::write(const BitString& bs) {
    for (std::size_t i = 0; i < bs.size(); ++i) write_bit(bs.bit(i));
}

void BitWriter::align_to_byte() {
    // Bytes in buf_ are already zero beyond pos_; only the position moves.
    pos_ = (pos_ + 7) / 8 * 8;
}

std::vector<std::uint8_t> BitWriter::take_bytes() {
    align_to_byte();
    return std::move(buf_);
}

bool BitReader::read_bit() {
    if (pos_ >= total_) throw stream_exhausted();
    std::uint8_t byte = data_[pos_ / 8];
    bool bit = (byte >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
}

void write_container_header(std::vector<std::uint8_t>& out, const ContainerHeader& h) {
    out.insert(out.end(), std::begin(container_magic), std::end(container_magic));
    out.push_back(h.code_id);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>((h.count >> (8 * i)) & 0xffu));
}

ContainerHeader parse_container_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < container_header_size)
        throw bad_container("container shorter than its header");
    for (int i = 0; i < 4; ++i)
        if (bytes[i] != container_magic[i]) throw bad_container("bad magic");
    ContainerHeader h;
    h.code_id = bytes[4];
    for (int i = 0; i < 8; ++i)
        h.count |= static_cast<std::uint64_t>(bytes[5 + i]) << (8 * i);
    return h;
}

}  // namespace uci
