#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revdetect/corpus/model.hpp"

namespace revdetect::corpus {

// Removes every region that starts at a markdown heading (ATX or setext)
// whose normalized title matches one of `excluded`, up to the next heading of
// the same or a higher level. Headings inside fenced code blocks are ignored.
// All other bytes are preserved. Throws InvalidArgument when nothing but
// whitespace remains.
std::string strip_excluded_sections(std::string_view body,
                                    std::span<const std::string> excluded);

struct FormatConfig {
  bool include_headings = true;
  bool itemize_lists = true;
  std::optional<std::vector<std::string>> section_order;
  std::optional<std::vector<std::string>> section_filter;

  // Throws InvalidArgument if section_filter names a section outside `known`.
  void validate(std::span<const std::string> known_sections) const;
  // Short stable description, e.g. "headings=on,itemize=on".
  std::string describe() const;
};

// Deterministic assembly of a review's sections. Sections listed in
// section_order come first in that order, the rest follow in stored order.
// Throws InvalidArgument when section_filter leaves no section.
std::string format_review(const Review& review, const FormatConfig& cfg);

// Abbreviations that never end a sentence.
std::span<const std::string_view> sentence_abbreviations();

// Rule-based segmentation: a boundary follows '.', '!' or '?' (plus any
// closing quotes or brackets) when the next non-space character is an
// uppercase letter, a quote or a digit, unless the token is a listed
// abbreviation. Every returned sentence is whitespace-normalized.
std::vector<std::string> split_sentences(std::string_view text);

// Collapses whitespace runs to single spaces and trims both ends.
std::string normalize_whitespace(std::string_view text);

}  // namespace revdetect::corpus
