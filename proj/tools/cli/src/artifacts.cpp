#include "revdetect/cli/artifacts.hpp"

#include <json.hpp>

#include "revdetect/error.hpp"

namespace revdetect::cli {
namespace {

using json = nlohmann::ordered_json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json metadata_json(const reporting::ReportMetadata& m) {
  return json{{"corpus_id", m.corpus_id},
              {"format_config", m.format_config},
              {"prompt_versions", m.prompt_versions},
              {"detector_ids", m.detector_ids}};
}

reporting::ReportMetadata metadata_from(const json& j) {
  reporting::ReportMetadata m;
  m.corpus_id = j.at("corpus_id").get<std::string>();
  m.format_config = j.at("format_config").get<std::string>();
  m.prompt_versions = j.at("prompt_versions").get<std::vector<std::string>>();
  m.detector_ids = j.at("detector_ids").get<std::vector<std::string>>();
  return m;
}

}  // namespace

std::string score_index_to_json(const std::vector<ScoreIndexEntry>& entries) {
  json list = json::array();
  for (const auto& e : entries) {
    list.push_back({{"name", e.name},
                    {"detector_id", e.detector_id},
                    {"binary_only", e.binary_only},
                    {"file", e.file}});
  }
  return json{{"detectors", list}}.dump(2) + "\n";
}

std::vector<ScoreIndexEntry> score_index_from_json(std::string_view text) {
  try {
    std::vector<ScoreIndexEntry> out;
    const json doc = json::parse(text);
    for (const auto& e : doc.at("detectors")) {
      out.push_back({e.at("name").get<std::string>(), e.at("detector_id").get<std::string>(),
                     e.at("binary_only").get<bool>(), e.at("file").get<std::string>()});
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("score index: ") + e.what());
  }
}

std::string evaluation_to_json(const EvaluationArtifacts& a) {
  json j;
  j["metadata"] = metadata_json(a.table.metadata);
  j["fpr_levels"] = a.table.fpr_levels;
  j["positive_sets"] = a.table.positive_sets;
  json rows = json::array();
  for (const auto& r : a.table.rows) {
    rows.push_back({{"detector_id", r.detector_id},
                    {"positive_set", r.positive_set},
                    {"target_fpr", r.target_fpr},
                    {"tpr", r.tpr},
                    {"achieved_fpr", r.achieved_fpr},
                    {"threshold", optional_number(r.threshold)},
                    {"fixed_operating_point", r.fixed_operating_point}});
  }
  j["rows"] = rows;

  json roc = json::array();
  for (const auto& e : a.roc) {
    json points = json::array();
    for (const auto& p : e.curve.points) points.push_back({p.threshold, p.fpr, p.tpr});
    roc.push_back({{"detector_id", e.detector_id},
                   {"positive_set", e.positive_set},
                   {"auc", e.curve.auc},
                   {"points", points}});
  }
  j["roc"] = roc;

  json sections = json::array();
  for (const auto& s : a.sections) {
    sections.push_back({{"section", s.section},
                        {"tpr", optional_number(s.tpr)},
                        {"tnr", optional_number(s.tnr)},
                        {"ai_reviews", s.ai_reviews},
                        {"human_reviews", s.human_reviews}});
  }
  j["section_detector_id"] = a.section_detector_id;
  j["sections"] = sections;

  j["ablation_detector_id"] = a.ablation_detector_id;
  if (a.ablation) {
    json rates = json::array();
    for (const auto& [key, rate] : a.ablation->rates) {
      rates.push_back({{"source", key.first}, {"column", key.second}, {"rate", rate}});
    }
    j["ablation"] = {{"columns", a.ablation->columns},
                     {"sources", a.ablation->sources},
                     {"rates", rates}};
  } else {
    j["ablation"] = nullptr;
  }

  json flagged = json::array();
  for (const auto& f : a.flagged) {
    json years = json::array();
    for (const auto& [year, share] : f.by_year) years.push_back({{"year", year}, {"share", share}});
    flagged.push_back({{"detector_id", f.detector_id}, {"threshold", f.threshold}, {"by_year", years}});
  }
  j["flagged"] = flagged;
  return j.dump(2) + "\n";
}

EvaluationArtifacts evaluation_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    EvaluationArtifacts a;
    a.table.metadata = metadata_from(j.at("metadata"));
    a.table.fpr_levels = j.at("fpr_levels").get<std::vector<double>>();
    a.table.positive_sets = j.at("positive_sets").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
      reporting::ReportRow row;
      row.detector_id = r.at("detector_id").get<std::string>();
      row.positive_set = r.at("positive_set").get<std::string>();
      row.target_fpr = r.at("target_fpr").get<double>();
      row.tpr = r.at("tpr").get<double>();
      row.achieved_fpr = r.at("achieved_fpr").get<double>();
      row.threshold = number_or_null(r.at("threshold"));
      row.fixed_operating_point = r.at("fixed_operating_point").get<bool>();
      a.table.rows.push_back(std::move(row));
    }
    for (const auto& e : j.at("roc")) {
      RocEntry entry;
      entry.detector_id = e.at("detector_id").get<std::string>();
      entry.positive_set = e.at("positive_set").get<std::string>();
      entry.curve.auc = e.at("auc").get<double>();
      for (const auto& p : e.at("points")) {
        entry.curve.points.push_back({p.at(0).get<double>(), p.at(1).get<double>(),
                                      p.at(2).get<double>()});
      }
      a.roc.push_back(std::move(entry));
    }
    a.section_detector_id = j.at("section_detector_id").get<std::string>();
    for (const auto& s : j.at("sections")) {
      reporting::SectionRow row;
      row.section = s.at("section").get<std::string>();
      row.tpr = number_or_null(s.at("tpr"));
      row.tnr = number_or_null(s.at("tnr"));
      row.ai_reviews = s.at("ai_reviews").get<std::size_t>();
      row.human_reviews = s.at("human_reviews").get<std::size_t>();
      a.sections.push_back(std::move(row));
    }
    a.ablation_detector_id = j.at("ablation_detector_id").get<std::string>();
    if (const auto& ab = j.at("ablation"); !ab.is_null()) {
      reporting::AblationTable table;
      table.columns = ab.at("columns").get<std::vector<std::string>>();
      table.sources = ab.at("sources").get<std::vector<std::string>>();
      for (const auto& r : ab.at("rates")) {
        table.rates[{r.at("source").get<std::string>(), r.at("column").get<std::string>()}] =
            r.at("rate").get<double>();
      }
      a.ablation = std::move(table);
    }
    for (const auto& f : j.at("flagged")) {
      FlaggedEntry entry;
      entry.detector_id = f.at("detector_id").get<std::string>();
      entry.threshold = f.at("threshold").get<double>();
      for (const auto& y : f.at("by_year")) {
        entry.by_year[y.at("year").get<int>()] = y.at("share").get<double>();
      }
      a.flagged.push_back(std::move(entry));
    }
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("evaluation file: ") + e.what());
  }
}

}  // namespace revdetect::cli
