#include "revdetect/reporting/report.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <sstream>

#include "revdetect/error.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/strings.hpp"

namespace revdetect::reporting {
namespace {

using util::fixed;

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string comment_block(const ReportMetadata& metadata, std::string_view open,
                          std::string_view close) {
  std::string out;
  for (const auto& line : metadata.lines()) {
    out += open;
    out += line;
    out += close;
    out += '\n';
  }
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// XML comments may not contain "--".
std::string comment_safe(std::string s) {
  for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- -");
  return s;
}

Label decide(const detectors::DetectionScore& score, double threshold) {
  if (score.decision) return *score.decision;
  return detectors::classify(score, threshold);
}

}  // namespace

std::vector<std::string> ReportMetadata::lines() const {
  return {"corpus: " + corpus_id, "format: " + format_config,
          "prompt_versions: " + join(prompt_versions, ","),
          "detectors: " + join(detector_ids, ",")};
}

void EvaluationReport::validate() const {
  std::set<std::tuple<std::string, std::string, double>> seen;
  for (const auto& row : rows) {
    if (!seen.emplace(row.detector_id, row.positive_set, row.target_fpr).second) {
      throw InvalidArgument("duplicate report row for " + row.detector_id + " / " +
                            row.positive_set + " / " + fixed(row.target_fpr, 4));
    }
  }
}

EvaluationReport tpr_table(std::span<const DetectorScoreSet> score_sets,
                           std::span<const double> fpr_levels, ReportMetadata metadata) {
  if (score_sets.empty()) throw InvalidArgument("no detector score sets");
  if (fpr_levels.empty()) throw InvalidArgument("no FPR levels");
  for (double level : fpr_levels) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("FPR levels must be in (0, 1)");
  }

  EvaluationReport report;
  report.fpr_levels.assign(fpr_levels.begin(), fpr_levels.end());
  std::set<std::string> sets;
  for (const auto& s : score_sets) {
    for (const auto& [name, _] : s.positives) sets.insert(name);
  }
  report.positive_sets.assign(sets.begin(), sets.end());

  for (const auto& s : score_sets) {
    if (s.positives.empty()) {
      throw InvalidArgument("detector " + s.detector_id + " has no positive score sets");
    }
    for (const auto& [name, positives] : s.positives) {
      const metrics::LabeledScores labeled{positives, s.negatives};
      labeled.validate();
      for (double level : fpr_levels) {
        ReportRow row;
        row.detector_id = s.detector_id;
        row.positive_set = name;
        row.target_fpr = level;
        if (s.binary_only) {
          row.tpr = metrics::fraction_at_or_above(positives, kBinaryDecisionThreshold);
          row.achieved_fpr = metrics::fraction_at_or_above(s.negatives, kBinaryDecisionThreshold);
          row.fixed_operating_point = true;
        } else {
          const auto op = metrics::tpr_at_fpr(labeled, level);
          row.tpr = op.tpr;
          row.achieved_fpr = op.achieved_fpr;
          row.threshold = op.threshold;
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  if (metadata.detector_ids.empty()) {
    for (const auto& s : score_sets) metadata.detector_ids.push_back(s.detector_id);
  }
  report.metadata = std::move(metadata);
  report.validate();
  return report;
}

std::string render_csv(const EvaluationReport& report) {
  std::string out = comment_block(report.metadata, "# ", "");
  out += "detector_id,positive_set,target_fpr,tpr,achieved_fpr,threshold,operating_point\n";
  for (const auto& row : report.rows) {
    out += row.detector_id + "," + row.positive_set + "," + fixed(row.target_fpr, 4) + "," +
           fixed(row.tpr, 4) + "," + fixed(row.achieved_fpr, 4) + "," +
           (row.threshold ? fixed(*row.threshold, 4) : std::string("fixed")) + "," +
           (row.fixed_operating_point ? "fixed" : "calibrated") + "\n";
  }
  return out;
}

std::string render_markdown(const EvaluationReport& report) {
  std::string out = comment_block(report.metadata, "<!-- ", " -->");
  out += "\n| Detector |";
  std::string rule = "|---|";
  for (double level : report.fpr_levels) {
    for (const auto& set : report.positive_sets) {
      out += " FPR = " + fixed(level, 2) + " " + set + " |";
      rule += "---:|";
    }
  }
  out += "\n" + rule + "\n";

  std::vector<std::string> detectors;
  for (const auto& row : report.rows) {
    if (std::find(detectors.begin(), detectors.end(), row.detector_id) == detectors.end()) {
      detectors.push_back(row.detector_id);
    }
  }
  bool any_fixed = false;
  for (const auto& det : detectors) {
    out += "| " + det + " |";
    for (double level : report.fpr_levels) {
      for (const auto& set : report.positive_sets) {
        const auto it = std::find_if(report.rows.begin(), report.rows.end(), [&](const ReportRow& r) {
          return r.detector_id == det && r.positive_set == set && r.target_fpr == level;
        });
        if (it == report.rows.end()) {
          out += " - |";
        } else if (it->fixed_operating_point) {
          out += " " + fixed(it->tpr, 4) + "† |";
          any_fixed = true;
        } else {
          out += " " + fixed(it->tpr, 4) + " |";
        }
      }
    }
    out += "\n";
  }
  if (any_fixed) {
    out += "\n† Binary-only detector: fixed operating point, not calibrated to the column FPR.";
    for (const auto& row : report.rows) {
      if (row.fixed_operating_point && row.target_fpr == report.fpr_levels.front() &&
          row.positive_set == report.positive_sets.front()) {
        out += " " + row.detector_id + " native FPR = " + fixed(row.achieved_fpr, 4) + ".";
      }
    }
    out += "\n";
  }
  return out;
}

std::string roc_csv(const metrics::RocCurve& curve, const ReportMetadata& metadata) {
  std::string out = comment_block(metadata, "# ", "");
  out += "# auc: " + fixed(curve.auc, 4) + "\n";
  out += "threshold,fpr,tpr\n";
  for (const auto& p : curve.points) {
    out += fixed(p.threshold, 4) + "," + fixed(p.fpr, 4) + "," + fixed(p.tpr, 4) + "\n";
  }
  return out;
}

std::string roc_svg(const std::map<std::string, metrics::RocCurve>& curves,
                    const ReportMetadata& metadata, std::string_view title) {
  static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  constexpr double kLeft = 60, kTop = 40, kSize = 400;
  const auto px = [&](double fpr) { return fixed(kLeft + fpr * kSize, 2); };
  const auto py = [&](double tpr) { return fixed(kTop + (1.0 - tpr) * kSize, 2); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  for (const auto& line : metadata.lines()) svg << "<!-- " << comment_safe(line) << " -->\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 760 << "\" height=\"" << 500
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<text x=\"" << px(0.5) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(title) << "</text>\n";
  svg << "<rect x=\"" << px(0) << "\" y=\"" << py(1) << "\" width=\"" << kSize << "\" height=\""
      << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
      << py(1) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    svg << "<text x=\"" << px(v) << "\" y=\"" << fixed(kTop + kSize + 16, 2)
        << "\" text-anchor=\"middle\">" << fixed(v, 1) << "</text>\n";
    svg << "<text x=\"" << fixed(kLeft - 8, 2) << "\" y=\"" << py(v)
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << fixed(v, 1) << "</text>\n";
  }
  svg << "<text x=\"" << px(0.5) << "\" y=\"" << fixed(kTop + kSize + 36, 2)
      << "\" text-anchor=\"middle\">False positive rate</text>\n";
  svg << "<text x=\"16\" y=\"" << py(0.5) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << py(0.5) << ")\">True positive rate</text>\n";

  std::size_t index = 0;
  for (const auto& [id, curve] : curves) {
    const char* color = kPalette[index % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      if (i) svg << ' ';
      svg << px(curve.points[i].fpr) << ',' << py(curve.points[i].tpr);
    }
    svg << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(index);
    svg << "<line x1=\"480\" y1=\"" << fixed(ly, 2) << "\" x2=\"500\" y2=\"" << fixed(ly, 2)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"506\" y=\"" << fixed(ly, 2) << "\" dominant-baseline=\"middle\">"
        << xml_escape(id) << " (AUC " << fixed(curve.auc, 4) << ")</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> roc_export(
    const std::map<std::string, metrics::RocCurve>& curves, const std::filesystem::path& out_dir,
    const ReportMetadata& metadata) {
  if (curves.empty()) throw InvalidArgument("no ROC curves to export");
  std::vector<std::filesystem::path> written;
  for (const auto& [id, curve] : curves) {
    auto path = out_dir / ("roc_" + util::slug(id) + ".csv");
    util::write_file_atomic(path, roc_csv(curve, metadata));
    written.push_back(std::move(path));
  }
  auto svg_path = out_dir / "roc.svg";
  util::write_file_atomic(svg_path, roc_svg(curves, metadata, "ROC curves"));
  written.push_back(std::move(svg_path));
  return written;
}

std::map<int, double> flagged_proportion(
    const std::map<int, std::vector<detectors::DetectionScore>>& by_year, double threshold) {
  if (by_year.empty()) throw InvalidArgument("no score groups");
  std::map<int, double> out;
  for (const auto& [year, scores] : by_year) {
    if (scores.empty()) throw InvalidArgument("empty score group for year " + std::to_string(year));
    std::size_t flagged = 0;
    for (const auto& s : scores) {
      if (detectors::classify(s, threshold) == Label::AI) ++flagged;
    }
    out[year] = static_cast<double>(flagged) / static_cast<double>(scores.size());
  }
  return out;
}

std::vector<SectionRow> section_breakdown(std::span<const corpus::Review> reviews,
                                          detectors::Detector& detector,
                                          std::span<const std::string> sections,
                                          const corpus::FormatConfig& base, double threshold) {
  std::vector<SectionRow> rows;
  for (const auto& section : sections) {
    SectionRow row;
    row.section = section;
    std::size_t ai_hits = 0;
    std::size_t human_hits = 0;
    for (const auto& review : reviews) {
      if (review.find_section(section) == nullptr) continue;
      corpus::FormatConfig cfg = base;
      cfg.section_filter = std::vector<std::string>{section};
      cfg.section_order.reset();
      const detectors::DetectionInput input{review.id, review.paper_id,
                                            corpus::format_review(review, cfg)};
      const Label decision = decide(detector.detect(input), threshold);
      if (review.label() == Label::AI) {
        ++row.ai_reviews;
        if (decision == Label::AI) ++ai_hits;
      } else {
        ++row.human_reviews;
        if (decision == Label::Human) ++human_hits;
      }
    }
    if (row.ai_reviews + row.human_reviews == 0) {
      throw InvalidArgument("no review contains section '" + section + "'");
    }
    if (row.ai_reviews) row.tpr = static_cast<double>(ai_hits) / static_cast<double>(row.ai_reviews);
    if (row.human_reviews) {
      row.tnr = static_cast<double>(human_hits) / static_cast<double>(row.human_reviews);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_section_markdown(std::span<const SectionRow> rows,
                                    const ReportMetadata& metadata) {
  std::string out = comment_block(metadata, "<!-- ", " -->");
  out += "\n| Section | TPR (AI) | TNR (human) | AI reviews | Human reviews |\n";
  out += "|---|---:|---:|---:|---:|\n";
  for (const auto& row : rows) {
    out += "| " + row.section + " | " + (row.tpr ? fixed(*row.tpr, 4) : std::string("absent")) +
           " | " + (row.tnr ? fixed(*row.tnr, 4) : std::string("absent")) + " | " +
           std::to_string(row.ai_reviews) + " | " + std::to_string(row.human_reviews) + " |\n";
  }
  return out;
}

AblationTable formatting_ablation(
    std::span<const corpus::Review> reviews, detectors::Detector& detector,
    std::span<const std::pair<std::string, corpus::FormatConfig>> configs, double threshold) {
  if (configs.empty()) throw InvalidArgument("no formatting configurations");
  if (reviews.empty()) throw InvalidArgument("no reviews");
  AblationTable table;
  std::set<std::string> generators;
  bool any_human = false;
  for (const auto& r : reviews) {
    if (r.label() == Label::AI) {
      generators.insert(r.source_tag());
    } else {
      any_human = true;
    }
  }
  if (any_human) table.sources.push_back("human");
  table.sources.insert(table.sources.end(), generators.begin(), generators.end());

  for (const auto& [label, cfg] : configs) {
    if (std::find(table.columns.begin(), table.columns.end(), label) != table.columns.end()) {
      throw InvalidArgument("duplicate formatting label '" + label + "'");
    }
    table.columns.push_back(label);
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // correct, total
    for (const auto& review : reviews) {
      const detectors::DetectionInput input{review.id, review.paper_id,
                                            corpus::format_review(review, cfg)};
      const Label decision = decide(detector.detect(input), threshold);
      auto& [correct, total] = tally[review.label() == Label::AI ? review.source_tag() : "human"];
      ++total;
      if (decision == review.label()) ++correct;
    }
    for (const auto& [source, counts] : tally) {
      table.rates[{source, label}] =
          static_cast<double>(counts.first) / static_cast<double>(counts.second);
    }
  }
  return table;
}

std::string render_ablation_markdown(const AblationTable& table, const ReportMetadata& metadata) {
  std::string out = comment_block(metadata, "<!-- ", " -->");
  out += "\n| Source | Metric |";
  std::string rule = "|---|---|";
  for (const auto& column : table.columns) {
    out += " " + column + " |";
    rule += "---:|";
  }
  out += "\n" + rule + "\n";
  for (const auto& source : table.sources) {
    out += "| " + source + " | " + (source == "human" ? "TNR" : "TPR") + " |";
    for (const auto& column : table.columns) {
      auto it = table.rates.find({source, column});
      out += " " + (it == table.rates.end() ? std::string("absent") : fixed(it->second, 4)) + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace revdetect::reporting
