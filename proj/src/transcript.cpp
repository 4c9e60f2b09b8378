#include "caylab/transcript.hpp"

#include <cstdio>

namespace caylab {

std::string Transcript::to_text() const {
    std::string out = kTranscriptHeader;
    out.push_back('\n');
    for (const auto& line : lines_) {
        out += line;
        out.push_back('\n');
    }
    return out;
}

std::string Transcript::timings_text() const {
    std::string out;
    char buf[64];
    for (const auto& [stage, seconds] : timings_) {
        std::snprintf(buf, sizeof buf, "%.6f", seconds);
        out += stage;
        out += ": ";
        out += buf;
        out += " s\n";
    }
    return out;
}

}  // namespace caylab
