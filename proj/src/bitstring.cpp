#include "caylab/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace caylab {

namespace {

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

char hex_digit(int v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }

}  // namespace

BitString BitString::from_ascii(std::string_view text) {
    BitString out;
    out.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
}

BitString BitString::from_len_hex(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("expected \"len:hex\"");
    std::size_t len = 0;
    for (char c : text.substr(0, colon)) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("bad length in \"len:hex\"");
        len = len * 10 + static_cast<std::size_t>(c - '0');
    }
    const std::string_view hex = text.substr(colon + 1);
    const std::size_t need = (len + 3) / 4;
    if (hex.size() != need)
        throw std::invalid_argument("hex payload length does not match bit count");

    BitString out;
    out.bits_.reserve(len);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const int v = hex_digit_value(hex[i]);
        if (v < 0) throw std::invalid_argument("bad hex digit in \"len:hex\"");
        for (int b = 3; b >= 0; --b) {
            const std::size_t pos = i * 4 + static_cast<std::size_t>(3 - b);
            const int bit = (v >> b) & 1;
            if (pos < len) {
                out.bits_.push_back(static_cast<std::uint8_t>(bit));
            } else if (bit != 0) {
                throw std::invalid_argument("nonzero pad bits in \"len:hex\"");
            }
        }
    }
    return out;
}

BitString BitString::zeros(std::size_t n) {
    BitString out;
    out.bits_.assign(n, 0);
    return out;
}

std::string BitString::to_ascii() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(char('0' + b));
    return s;
}

std::string BitString::to_len_hex() const {
    std::string s = std::to_string(bits_.size());
    s.push_back(':');
    for (std::size_t i = 0; i < bits_.size(); i += 4) {
        int v = 0;
        for (std::size_t j = 0; j < 4; ++j)
            v = (v << 1) | (i + j < bits_.size() ? bits_[i + j] : 0);
        s.push_back(hex_digit(v));
    }
    return s;
}

void BitString::push_back(int bit) {
    if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(bit));
}

void BitString::append(const BitString& o) {
    bits_.insert(bits_.end(), o.bits_.begin(), o.bits_.end());
}

std::size_t BitString::count_ones() const {
    std::size_t n = 0;
    for (auto b : bits_) n += b;
    return n;
}

BitString BitString::operator^(const BitString& o) const {
    if (bits_.size() != o.bits_.size())
        throw std::invalid_argument("xor requires equal lengths");
    BitString out;
    out.bits_.resize(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i)
        out.bits_[i] = bits_[i] ^ o.bits_[i];
    return out;
}

BitString random_bits(std::size_t n, Rng& rng) {
    BitString out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(rng.coin() ? 1 : 0);
    return out;
}

BitString random_balanced_bits(std::size_t n, Rng& rng) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = n / 2; i < n; ++i) v[i] = 1;
    // Fisher-Yates with our own rng; std::shuffle is not stable across
    // library versions
    for (std::size_t i = n; i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
    BitString out;
    for (auto b : v) out.push_back(b);
    return out;
}

}  // namespace caylab
