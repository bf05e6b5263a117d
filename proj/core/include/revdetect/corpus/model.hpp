#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "revdetect/label.hpp"

namespace revdetect::corpus {

// An extracted manuscript. `body` is markdown-like text with excluded
// sections (references, acknowledgements) already removed.
struct Paper {
  std::string id;
  std::string venue;
  int year = 0;
  std::string title;
  std::string body;

  friend bool operator==(const Paper&, const Paper&) = default;
};

enum class Archetype { Balanced, Nitpicky, Innovative, Conservative };

inline constexpr Archetype kAllArchetypes[] = {
    Archetype::Balanced, Archetype::Nitpicky, Archetype::Innovative,
    Archetype::Conservative};

std::string_view to_string(Archetype archetype);
std::optional<Archetype> parse_archetype(std::string_view name);

struct HumanSource {
  friend bool operator==(const HumanSource&, const HumanSource&) = default;
};

struct AiSource {
  std::string generator;
  std::optional<Archetype> archetype;

  friend bool operator==(const AiSource&, const AiSource&) = default;
};

using ReviewSource = std::variant<HumanSource, AiSource>;

inline Label label_of(const ReviewSource& source) {
  return std::holds_alternative<AiSource>(source) ? Label::AI : Label::Human;
}

// A section body is either free text or a list of items.
using SectionBody = std::variant<std::string, std::vector<std::string>>;

struct Section {
  std::string name;
  SectionBody body;

  friend bool operator==(const Section&, const Section&) = default;
};

struct Review {
  std::string id;
  std::string paper_id;
  ReviewSource source;
  std::vector<Section> sections;  // stored order is significant
  int venue_year = 0;

  Label label() const { return label_of(source); }
  // Generator tag for AI reviews, "human" otherwise.
  std::string source_tag() const;
  const Section* find_section(std::string_view name) const;

  friend bool operator==(const Review&, const Review&) = default;
};

struct Provenance {
  std::string source_path;
  std::size_t record_count = 0;
  std::chrono::system_clock::time_point ingested_at{};
};

// Immutable after ingestion. Equality compares contents as sets and ignores
// provenance.
class Corpus {
 public:
  Corpus() = default;
  // Validates uniqueness and referential integrity; throws CorpusError.
  Corpus(std::vector<Paper> papers, std::vector<Review> reviews,
         Provenance provenance = {});

  const std::map<std::string, Paper>& papers() const { return papers_; }
  const std::map<std::string, Review>& reviews() const { return reviews_; }
  const Provenance& provenance() const { return provenance_; }

  const Paper* find_paper(std::string_view id) const;
  const Review* find_review(std::string_view id) const;

  // Union of section names across all reviews, in first-seen order
  // (reviews iterated by id).
  std::vector<std::string> section_names() const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.papers_ == b.papers_ && a.reviews_ == b.reviews_;
  }

 private:
  std::map<std::string, Paper> papers_;
  std::map<std::string, Review> reviews_;
  Provenance provenance_;
};

// Section-name normalization used for all matching: trimmed, trailing colons
// removed, ASCII-lowercased.
std::string normalize_section_name(std::string_view name);

}  // namespace revdetect::corpus
