#pragma once

#include <map>
#include <optional>
#include <string>

#include "caylab/affine_group.hpp"
#include "caylab/bitstring.hpp"
#include "caylab/hashes.hpp"

namespace caylab {

// Message text forms: plain '0'/'1' ASCII, "len:hex", or "@path" naming a
// file that holds either form (surrounding whitespace ignored).
BitString parse_message(const std::string& text);

// "r,s" decimal pair.
AffineMap parse_affine(const std::string& text, const PrimeModulus& p);
HashOutput parse_hash_output(const std::string& text, const PrimeModulus& p);

// Bare hex for a c_rnd of exactly 2*ceil(log2 p) bits.
BitString parse_c_rnd_hex(const std::string& hex, const PrimeModulus& p);

// Flat key=value file; '#' starts a comment, blank lines ignored.
// Recognized keys: p, t, g_r, g_s, g_word, g_inv_word, c_rnd.
std::map<std::string, std::string> load_key_value_file(const std::string& path);

}  // namespace caylab
