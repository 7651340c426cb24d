#include "cech/report.hpp"

#include <sstream>

#include <json.hpp>

namespace cech {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[value & 0xf];
        value >>= 4;
    }
    return s;
}

std::vector<std::pair<std::string, std::string>> RunReport::conventions() {
    return {
        {"ce_sign", "+1 (d y = 4 x^y for sl2)"},
        {"sigma1_embedding", "xi -> (xi, -xi)"},
        {"wedge_normalization", "u^v = (u(x)v - v(x)u)/2, 1/d! antisymmetrization"},
    };
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    out << "inputs_digest: " << inputs_digest << "\n";
    for (const auto& [key, value] : conventions()) out << "convention " << key << ": " << value << "\n";
    for (const auto& [key, value] : outputs) out << key << ": " << value << "\n";
    for (const auto& [key, ok] : assertions)
        out << "assert " << key << ": " << (ok ? "pass" : "FAIL") << "\n";
    return out.str();
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["inputs_digest"] = inputs_digest;
    nlohmann::ordered_json conv;
    for (const auto& [key, value] : conventions()) conv[key] = value;
    j["conventions"] = conv;
    nlohmann::ordered_json outs;
    for (const auto& [key, value] : outputs) outs[key] = value;
    j["outputs"] = outs;
    nlohmann::ordered_json asserts;
    for (const auto& [key, ok] : assertions) asserts[key] = ok;
    j["assertions"] = asserts;
    return j.dump(2);
}

}  // namespace cech
