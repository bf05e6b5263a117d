#include "revdetect/detectors/score.hpp"

#include <cmath>

#include <json.hpp>

#include "revdetect/error.hpp"

namespace revdetect::detectors {

using json = nlohmann::json;

void DetectionScore::validate() const {
  if (!std::isfinite(raw)) throw InvalidArgument("detection raw value is not finite");
  if (!(score >= 0.0 && score <= 1.0)) {
    throw InvalidArgument("detection score outside [0, 1] for review '" + review_id + "'");
  }
}

Label classify(double score, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold outside [0, 1]");
  }
  return score >= threshold ? Label::AI : Label::Human;
}

Label classify(const DetectionScore& score, double threshold) {
  score.validate();
  return classify(score.score, threshold);
}

std::string to_jsonl(const DetectionScore& s) {
  nlohmann::ordered_json j;
  j["review_id"] = s.review_id;
  j["detector_id"] = s.detector_id;
  j["raw"] = s.raw;
  j["score"] = s.score;
  if (s.decision) j["decision"] = std::string(to_string(*s.decision));
  if (s.rationale) j["rationale"] = *s.rationale;
  if (s.anchor_ids) j["anchor_ids"] = *s.anchor_ids;
  return j.dump();
}

DetectionScore from_jsonl(std::string_view line) {
  try {
    const json j = json::parse(line);
    DetectionScore s;
    s.review_id = j.at("review_id").get<std::string>();
    s.detector_id = j.at("detector_id").get<std::string>();
    s.raw = j.at("raw").get<double>();
    s.score = j.at("score").get<double>();
    if (auto it = j.find("decision"); it != j.end()) {
      s.decision = parse_label(it->get<std::string>());
      if (!s.decision) throw ParseError("invalid decision in score record");
    }
    if (auto it = j.find("rationale"); it != j.end()) s.rationale = it->get<std::string>();
    if (auto it = j.find("anchor_ids"); it != j.end()) {
      s.anchor_ids = it->get<std::vector<std::string>>();
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed score record: ") + e.what());
  }
}

}  // namespace revdetect::detectors
