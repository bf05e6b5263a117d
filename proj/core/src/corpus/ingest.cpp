#include "revdetect/corpus/ingest.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "revdetect/corpus/text.hpp"
#include "revdetect/error.hpp"

namespace revdetect::corpus {
namespace {

using json = nlohmann::json;

std::string require_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw CorpusError(std::string("missing or non-string field '") + key + "'",
                      line);
  }
  return it->get<std::string>();
}

int require_int(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer()) {
    throw CorpusError(std::string("missing or non-integer field '") + key + "'",
                      line);
  }
  return it->get<int>();
}

ReviewSource parse_source(const json& obj, std::size_t line) {
  auto it = obj.find("source");
  if (it == obj.end() || !it->is_object()) {
    throw CorpusError("missing 'source' object", line);
  }
  const std::string type = require_string(*it, "type", line);
  if (type == "human") return HumanSource{};
  if (type == "ai") {
    AiSource ai;
    ai.generator = require_string(*it, "generator", line);
    if (ai.generator.empty()) throw CorpusError("empty AI generator", line);
    if (auto a = it->find("archetype"); a != it->end() && !a->is_null()) {
      if (!a->is_string()) throw CorpusError("non-string archetype", line);
      ai.archetype = parse_archetype(a->get<std::string>());
      if (!ai.archetype) {
        throw CorpusError("unknown archetype '" + a->get<std::string>() + "'",
                          line);
      }
    }
    return ai;
  }
  throw CorpusError("unknown source label '" + type + "'", line);
}

std::vector<Section> parse_sections(const json& obj, std::size_t line) {
  auto it = obj.find("sections");
  if (it == obj.end() || !it->is_array() || it->empty()) {
    throw CorpusError("missing or empty 'sections' array", line);
  }
  std::vector<Section> out;
  for (const auto& s : *it) {
    if (!s.is_object()) throw CorpusError("section is not an object", line);
    Section section;
    section.name = require_string(s, "name", line);
    if (section.name.empty()) throw CorpusError("empty section name", line);
    const bool has_text = s.contains("text") && !s["text"].is_null();
    const bool has_items = s.contains("items") && !s["items"].is_null();
    if (has_text == has_items) {
      throw CorpusError("section '" + section.name +
                            "' needs exactly one of 'text' or 'items'",
                        line);
    }
    if (has_text) {
      if (!s["text"].is_string()) {
        throw CorpusError("section text must be a string", line);
      }
      section.body = s["text"].get<std::string>();
    } else {
      if (!s["items"].is_array()) {
        throw CorpusError("section items must be an array", line);
      }
      std::vector<std::string> items;
      for (const auto& item : s["items"]) {
        if (!item.is_string()) {
          throw CorpusError("section item must be a string", line);
        }
        items.push_back(item.get<std::string>());
      }
      section.body = std::move(items);
    }
    out.push_back(std::move(section));
  }
  return out;
}

json source_to_json(const ReviewSource& source) {
  if (const auto* ai = std::get_if<AiSource>(&source)) {
    json j{{"type", "ai"}, {"generator", ai->generator}};
    if (ai->archetype) j["archetype"] = std::string(to_string(*ai->archetype));
    return j;
  }
  return json{{"type", "human"}};
}

}  // namespace

std::vector<std::string> default_excluded_sections() {
  return {"References",       "Bibliography",    "Acknowledgements",
          "Acknowledgments",  "Acknowledgement", "Acknowledgment"};
}

Corpus ingest_corpus_text(std::string_view jsonl, std::string source_name,
                          const IngestOptions& options) {
  if (options.schema_version != kCorpusSchemaVersion) {
    throw CorpusError("unsupported corpus schema version '" +
                      options.schema_version + "'");
  }
  std::vector<Paper> papers;
  std::vector<Review> reviews;
  std::map<std::string, std::size_t> paper_lines;
  std::map<std::string, std::size_t> review_lines;
  std::vector<std::size_t> review_line_numbers;

  std::size_t line_no = 0;
  std::size_t records = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == jsonl.size()) break;
      continue;
    }

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(std::string("malformed record: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw CorpusError("record is not an object", line_no);
    ++records;
    const std::string kind = require_string(obj, "kind", line_no);
    if (kind == "paper") {
      Paper p;
      p.id = require_string(obj, "id", line_no);
      if (p.id.empty()) throw CorpusError("empty paper id", line_no);
      p.venue = require_string(obj, "venue", line_no);
      p.year = require_int(obj, "year", line_no);
      p.title = require_string(obj, "title", line_no);
      const std::string body = require_string(obj, "body", line_no);
      try {
        p.body = strip_excluded_sections(body, options.excluded_sections);
      } catch (const InvalidArgument&) {
        throw CorpusError("paper '" + p.id + "' body is empty after stripping",
                          line_no);
      }
      if (auto [it, fresh] = paper_lines.emplace(p.id, line_no); !fresh) {
        throw CorpusError("duplicate paper id '" + p.id + "' (first at line " +
                              std::to_string(it->second) + ")",
                          line_no);
      }
      papers.push_back(std::move(p));
    } else if (kind == "review") {
      Review r;
      r.id = require_string(obj, "id", line_no);
      if (r.id.empty()) throw CorpusError("empty review id", line_no);
      r.paper_id = require_string(obj, "paper_id", line_no);
      r.source = parse_source(obj, line_no);
      r.sections = parse_sections(obj, line_no);
      r.venue_year = require_int(obj, "venue_year", line_no);
      if (auto [it, fresh] = review_lines.emplace(r.id, line_no); !fresh) {
        throw CorpusError("duplicate review id '" + r.id +
                              "' (first at line " + std::to_string(it->second) +
                              ")",
                          line_no);
      }
      review_line_numbers.push_back(line_no);
      reviews.push_back(std::move(r));
    } else {
      throw CorpusError("unknown record kind '" + kind + "'", line_no);
    }
    if (end == jsonl.size()) break;
  }

  for (std::size_t i = 0; i < reviews.size(); ++i) {
    if (!paper_lines.contains(reviews[i].paper_id)) {
      throw CorpusError("review '" + reviews[i].id +
                            "' references missing paper '" +
                            reviews[i].paper_id + "'",
                        review_line_numbers[i]);
    }
  }

  Provenance provenance{std::move(source_name), records,
                        std::chrono::system_clock::now()};
  return Corpus(std::move(papers), std::move(reviews), std::move(provenance));
}

Corpus ingest_corpus(const std::filesystem::path& path,
                     const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_corpus_text(buffer.str(), path.string(), options);
}

std::string serialize_paper_record(const Paper& paper) {
  json j{{"kind", "paper"},       {"id", paper.id},       {"venue", paper.venue},
         {"year", paper.year},    {"title", paper.title}, {"body", paper.body}};
  return j.dump();
}

std::string serialize_review_record(const Review& review) {
  json sections = json::array();
  for (const auto& s : review.sections) {
    json js{{"name", s.name}};
    if (const auto* text = std::get_if<std::string>(&s.body)) {
      js["text"] = *text;
    } else {
      js["items"] = std::get<std::vector<std::string>>(s.body);
    }
    sections.push_back(std::move(js));
  }
  json j{{"kind", "review"},
         {"id", review.id},
         {"paper_id", review.paper_id},
         {"source", source_to_json(review.source)},
         {"sections", std::move(sections)},
         {"venue_year", review.venue_year}};
  return j.dump();
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& [_, p] : corpus.papers()) {
    out += serialize_paper_record(p);
    out += '\n';
  }
  for (const auto& [_, r] : corpus.reviews()) {
    out += serialize_review_record(r);
    out += '\n';
  }
  return out;
}

}  // namespace revdetect::corpus
