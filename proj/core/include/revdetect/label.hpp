#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace revdetect {

// Authorship of a review. Used both as a provenance label and as a detector
// decision; AI-written reviews are the positive class throughout.
enum class Label { Human, AI };

inline std::string_view to_string(Label label) {
  return label == Label::AI ? "AI" : "human";
}

// Accepts "human" / "ai" in any letter case.
std::optional<Label> parse_label(std::string_view text);

}  // namespace revdetect
