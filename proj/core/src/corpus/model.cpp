#include "revdetect/corpus/model.hpp"

#include <set>

#include "revdetect/error.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::corpus {

std::string_view to_string(Archetype archetype) {
  switch (archetype) {
    case Archetype::Balanced:
      return "balanced";
    case Archetype::Nitpicky:
      return "nitpicky";
    case Archetype::Innovative:
      return "innovative";
    case Archetype::Conservative:
      return "conservative";
  }
  return "balanced";
}

std::optional<Archetype> parse_archetype(std::string_view name) {
  const std::string lowered = util::ascii_lower(util::trim(name));
  for (Archetype a : kAllArchetypes) {
    if (lowered == to_string(a)) return a;
  }
  return std::nullopt;
}

std::string normalize_section_name(std::string_view name) {
  std::string_view t = util::trim(name);
  while (!t.empty() && t.back() == ':') t.remove_suffix(1);
  return util::ascii_lower(util::trim(t));
}

std::string Review::source_tag() const {
  if (const auto* ai = std::get_if<AiSource>(&source)) return ai->generator;
  return "human";
}

const Section* Review::find_section(std::string_view name) const {
  const std::string wanted = normalize_section_name(name);
  for (const auto& s : sections) {
    if (normalize_section_name(s.name) == wanted) return &s;
  }
  return nullptr;
}

Corpus::Corpus(std::vector<Paper> papers, std::vector<Review> reviews,
               Provenance provenance)
    : provenance_(std::move(provenance)) {
  for (auto& p : papers) {
    if (p.id.empty()) throw CorpusError("paper with empty id");
    if (util::trim(p.body).empty()) {
      throw CorpusError("paper '" + p.id + "' has an empty body");
    }
    std::string id = p.id;
    if (!papers_.emplace(id, std::move(p)).second) {
      throw CorpusError("duplicate paper id '" + id + "'");
    }
  }
  for (auto& r : reviews) {
    if (r.id.empty()) throw CorpusError("review with empty id");
    if (!papers_.contains(r.paper_id)) {
      throw CorpusError("review '" + r.id + "' references missing paper '" +
                        r.paper_id + "'");
    }
    if (r.sections.empty()) {
      throw CorpusError("review '" + r.id + "' has no sections");
    }
    for (const auto& s : r.sections) {
      if (util::trim(s.name).empty()) {
        throw CorpusError("review '" + r.id + "' has an unnamed section");
      }
    }
    std::string id = r.id;
    if (!reviews_.emplace(id, std::move(r)).second) {
      throw CorpusError("duplicate review id '" + id + "'");
    }
  }
}

const Paper* Corpus::find_paper(std::string_view id) const {
  auto it = papers_.find(std::string(id));
  return it == papers_.end() ? nullptr : &it->second;
}

const Review* Corpus::find_review(std::string_view id) const {
  auto it = reviews_.find(std::string(id));
  return it == reviews_.end() ? nullptr : &it->second;
}

std::vector<std::string> Corpus::section_names() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& [_, review] : reviews_) {
    for (const auto& s : review.sections) {
      if (seen.insert(normalize_section_name(s.name)).second) {
        out.push_back(s.name);
      }
    }
  }
  return out;
}

}  // namespace revdetect::corpus
