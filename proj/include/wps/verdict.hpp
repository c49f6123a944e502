#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wps {

enum class VerdictKind { Holds, Fails, Inconclusive };

// Three-valued outcome with a stable machine-readable key/value block.
// Fails verdicts always carry a finite, independently re-checkable
// witness in the block.
struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::string reason;
    std::vector<std::pair<std::string, std::string>> data;

    static Verdict holds(std::string why) { return {VerdictKind::Holds, std::move(why), {}}; }
    static Verdict fails(std::string why) { return {VerdictKind::Fails, std::move(why), {}}; }
    static Verdict inconclusive(std::string why) {
        return {VerdictKind::Inconclusive, std::move(why), {}};
    }

    Verdict& with(std::string k, std::string v) {
        data.emplace_back(std::move(k), std::move(v));
        return *this;
    }
    const std::string* get(const std::string& k) const {
        for (auto& [key, val] : data)
            if (key == k) return &val;
        return nullptr;
    }
    bool holds_() const { return kind == VerdictKind::Holds; }
    bool fails_() const { return kind == VerdictKind::Fails; }
};

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::Holds: return "holds";
        case VerdictKind::Fails: return "fails";
        default: return "inconclusive";
    }
}

}  // namespace wps
