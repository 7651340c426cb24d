#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cech {

std::uint64_t fnv1a(std::string_view data);
std::string hex64(std::uint64_t value);

/// Machine-readable run report. Deterministic for fixed (inputs, seed):
/// timing is carried separately and never enters the serialized forms.
struct RunReport {
    std::string command;
    std::string inputs_digest;
    std::vector<std::pair<std::string, std::string>> outputs;
    std::vector<std::pair<std::string, bool>> assertions;
    double elapsed_seconds = 0;

    /// The convention switches in force, echoed in every report.
    static std::vector<std::pair<std::string, std::string>> conventions();

    std::string to_text() const;
    std::string to_json() const;
};

}  // namespace cech
