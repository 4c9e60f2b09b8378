#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caylab/rng.hpp"

namespace caylab {

// Ordered sequence over {0,1}. One byte per bit; inputs in this tool top out
// around a few megabits, so compactness is not worth the bit fiddling.
class BitString {
public:
    BitString() = default;

    static BitString from_ascii(std::string_view text);  // "0101"
    // "len:hex", big-endian: the first bit is the high bit of the first
    // nibble; unused pad bits in the last nibble must be zero.
    static BitString from_len_hex(std::string_view text);
    static BitString zeros(std::size_t n);

    std::string to_ascii() const;
    std::string to_len_hex() const;

    void push_back(int bit);
    void append(const BitString& o);

    int operator[](std::size_t i) const { return bits_[i]; }
    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::span<const std::uint8_t> span() const { return bits_; }

    std::size_t count_ones() const;
    std::size_t count_zeros() const { return size() - count_ones(); }

    BitString operator^(const BitString& o) const;  // equal lengths only
    friend BitString operator+(BitString a, const BitString& b) {
        a.append(b);
        return a;
    }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

BitString random_bits(std::size_t n, Rng& rng);
// floor(n/2) zeros and ceil(n/2) ones, in seeded Fisher-Yates order.
BitString random_balanced_bits(std::size_t n, Rng& rng);

}  // namespace caylab
