#pragma once

#include <string>
#include <utility>
#include <vector>

namespace caylab {

inline constexpr const char* kTranscriptHeader = "cayley-affine-lab/1";

// Structured run log: one line per pipeline stage. Stage lines are
// deterministic for a fixed seed and config; wall-clock timings are kept
// apart so the canonical transcript stays byte-identical across runs.
class Transcript {
public:
    void add(std::string line) { lines_.push_back(std::move(line)); }
    void add_timing(std::string stage, double seconds) {
        timings_.emplace_back(std::move(stage), seconds);
    }

    const std::vector<std::string>& lines() const { return lines_; }

    // Header plus one line per stage.
    std::string to_text() const;
    // "stage: seconds" lines; empty string when nothing was timed.
    std::string timings_text() const;

private:
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace caylab
