#include "revdetect/label.hpp"

#include "revdetect/util/strings.hpp"

namespace revdetect {

std::optional<Label> parse_label(std::string_view text) {
  const std::string lowered = util::ascii_lower(text);
  if (lowered == "human") return Label::Human;
  if (lowered == "ai") return Label::AI;
  return std::nullopt;
}

}  // namespace revdetect
