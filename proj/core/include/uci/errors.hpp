#pragma once

#include <stdexcept>
#include <string>

namespace uci {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reading past the end of a bit source.
struct stream_exhausted : error {
    stream_exhausted() : error("bit stream exhausted") {}
};

// A codeword started but the stream ended before it completed.
struct truncated_codeword : error {
    truncated_codeword() : error("truncated codeword") {}
};

// Writing past the capacity of a fixed-size bit sink.
struct sink_overflow : error {
    sink_overflow() : error("bit sink capacity exhausted") {}
};

// Asked to decode a code that is not prefix-free.
struct not_prefix_decodable : error {
    using error::error;
};

// Malformed container: bad magic, unknown code id, short payload.
struct bad_container : error {
    using error::error;
};

struct domain_error : error {
    using error::error;
};

}  // namespace uci
