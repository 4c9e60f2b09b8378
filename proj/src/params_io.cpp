#include "caylab/params_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace caylab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

FieldElement parse_field(const std::string& text, const PrimeModulus& p) {
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), text.c_str(), 0) != 0)
        throw std::invalid_argument("cannot parse field element: " + text);
    return FieldElement(v, p);
}

std::pair<std::string, std::string> split_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected \"x,y\": " + text);
    return {trim(text.substr(0, comma)), trim(text.substr(comma + 1))};
}

}  // namespace

BitString parse_message(const std::string& text) {
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1), std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open file: " + text.substr(1));
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string content = trim(buf.str());
        if (!content.empty() && content.front() == '@')
            throw std::invalid_argument("message files may not chain to other files");
        return parse_message(content);
    }
    if (text.find(':') != std::string::npos)
        return BitString::from_len_hex(text);
    return BitString::from_ascii(text);
}

AffineMap parse_affine(const std::string& text, const PrimeModulus& p) {
    const auto [r, s] = split_pair(text);
    return AffineMap(parse_field(r, p), parse_field(s, p));
}

HashOutput parse_hash_output(const std::string& text, const PrimeModulus& p) {
    const auto [first, second] = split_pair(text);
    return HashOutput{parse_field(first, p), parse_field(second, p)};
}

BitString parse_c_rnd_hex(const std::string& hex, const PrimeModulus& p) {
    const std::size_t bits = 2 * p.bit_length();
    try {
        return BitString::from_len_hex(std::to_string(bits) + ":" + hex);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("c_rnd must encode exactly " +
                                    std::to_string(bits) +
                                    " bits as hex with zero pad bits (" +
                                    e.what() + ")");
    }
}

std::map<std::string, std::string> load_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config lines must be key=value: " + line);
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

}  // namespace caylab
