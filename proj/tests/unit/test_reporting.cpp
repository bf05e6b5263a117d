#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <sys/stat.h>
#include <unistd.h>

#include "revdetect/error.hpp"
#include "revdetect/reporting/report.hpp"
#include "revdetect/util/fs.hpp"
#include "revdetect/util/strings.hpp"
#include "test_support.hpp"

using namespace revdetect;
using namespace revdetect::reporting;
using revdetect::testing::TempDir;

namespace {

ReportMetadata meta() {
  return {"sha256:feedface", "headings=on,itemize=on", {"anchor:anchor-v1"}, {}};
}

std::vector<double> grid(int n, double lo, double hi) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

std::vector<DetectorScoreSet> two_detectors() {
  DetectorScoreSet anchor{"anchor:gpt-4o:anchor-v1", false, grid(20, 0.0, 0.6),
                          {{"gpt-4o", grid(10, 0.5, 1.0)}, {"llama-3", grid(10, 0.3, 0.9)}}};
  DetectorScoreSet judge{"judge:gpt-4o", true, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
                         {{"gpt-4o", {1, 1, 1, 0}}, {"llama-3", {1, 0, 0, 0}}}};
  return {anchor, judge};
}

const std::vector<double> kLevels{0.05, 0.20};

// Scores 1.0 when the text mentions a marker word, else 0.0.
class MarkerDetector : public detectors::Detector {
 public:
  explicit MarkerDetector(std::string marker) : marker_(std::move(marker)) {}
  std::string id() const override { return "mock:marker"; }
  detectors::DetectionScore detect(const detectors::DetectionInput& input) override {
    ++calls;
    detectors::DetectionScore s;
    s.review_id = input.review_id;
    s.detector_id = id();
    s.score = s.raw = input.text.find(marker_) != std::string::npos ? 1.0 : 0.0;
    return s;
  }
  int calls = 0;

 private:
  std::string marker_;
};

corpus::Review review(const std::string& id, bool ai,
                      std::vector<std::pair<std::string, std::string>> sections,
                      const std::string& generator = "gpt-4o") {
  corpus::Review r;
  r.id = id;
  r.paper_id = "p";
  r.venue_year = 2024;
  if (ai) {
    r.source = corpus::AiSource{generator, std::nullopt};
  } else {
    r.source = corpus::HumanSource{};
  }
  for (auto& [name, body] : sections) r.sections.push_back({name, body});
  return r;
}

detectors::DetectionScore scored(double s) {
  detectors::DetectionScore d;
  d.review_id = "r";
  d.detector_id = "x";
  d.score = d.raw = s;
  return d;
}

}  // namespace

// --- tpr_table -----------------------------------------------------------------

TEST(TprTable, TwoDetectorsTwoSetsTwoLevels) {
  const auto sets = two_detectors();
  const auto report = tpr_table(sets, kLevels, meta());
  EXPECT_EQ(report.rows.size(), 8u);
  EXPECT_EQ(report.positive_sets, (std::vector<std::string>{"gpt-4o", "llama-3"}));
  EXPECT_EQ(report.metadata.detector_ids,
            (std::vector<std::string>{"anchor:gpt-4o:anchor-v1", "judge:gpt-4o"}));
  EXPECT_NO_THROW(report.validate());
}

TEST(TprTable, JudgeRowsCarryFixedNativeOperatingPoint) {
  const auto sets = two_detectors();
  const auto report = tpr_table(sets, kLevels, meta());
  int judge_rows = 0;
  for (const auto& row : report.rows) {
    if (row.detector_id != "judge:gpt-4o") {
      EXPECT_FALSE(row.fixed_operating_point);
      EXPECT_TRUE(row.threshold.has_value());
      continue;
    }
    ++judge_rows;
    EXPECT_TRUE(row.fixed_operating_point);
    EXPECT_FALSE(row.threshold.has_value());
    EXPECT_DOUBLE_EQ(row.achieved_fpr, 0.1);
    EXPECT_DOUBLE_EQ(row.tpr, row.positive_set == "gpt-4o" ? 0.75 : 0.25);
  }
  EXPECT_EQ(judge_rows, 4);
  const std::string csv = render_csv(report);
  EXPECT_NE(csv.find("judge:gpt-4o,gpt-4o,0.0500,0.7500,0.1000,fixed,fixed\n"), std::string::npos);
  const std::string md = render_markdown(report);
  EXPECT_NE(md.find("0.7500\xE2\x80\xA0"), std::string::npos);
  EXPECT_NE(md.find("judge:gpt-4o native FPR = 0.1000."), std::string::npos);
}

TEST(TprTable, RowsAgreeWithDirectTprAtFpr) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    DetectorScoreSet s{"d", false, {}, {}};
    for (int i = 0; i < 40; ++i) s.negatives.push_back(u(rng) * 0.8);
    for (const char* name : {"a", "b"}) {
      for (int i = 0; i < 30; ++i) s.positives[name].push_back(0.2 + u(rng) * 0.8);
    }
    const std::vector<DetectorScoreSet> sets{s};
    const auto report = tpr_table(sets, kLevels, meta());
    for (const auto& row : report.rows) {
      const auto op = metrics::tpr_at_fpr({s.positives.at(row.positive_set), s.negatives},
                                          row.target_fpr);
      EXPECT_EQ(row.tpr, op.tpr);
      EXPECT_EQ(row.achieved_fpr, op.achieved_fpr);
      EXPECT_EQ(row.threshold, op.threshold);
    }
  }
}

TEST(TprTable, Errors) {
  const auto sets = two_detectors();
  EXPECT_THROW(tpr_table(sets, std::vector<double>{}, meta()), InvalidArgument);
  EXPECT_THROW(tpr_table(sets, std::vector<double>{0.0}, meta()), InvalidArgument);
  EXPECT_THROW(tpr_table(sets, std::vector<double>{1.0}, meta()), InvalidArgument);
  EXPECT_THROW(tpr_table(std::vector<DetectorScoreSet>{}, kLevels, meta()), InvalidArgument);
  const std::vector<double> repeated{0.05, 0.05};
  EXPECT_THROW(tpr_table(sets, repeated, meta()), InvalidArgument);
}

TEST(TprTable, RenderingIsFourDecimalAndStable) {
  const auto sets = two_detectors();
  const auto a = tpr_table(sets, kLevels, meta());
  const auto b = tpr_table(sets, kLevels, meta());
  EXPECT_EQ(render_csv(a), render_csv(b));
  EXPECT_EQ(render_markdown(a), render_markdown(b));
  const std::string csv = render_csv(a);
  EXPECT_TRUE(csv.starts_with("# corpus: sha256:feedface\n# format: headings=on,itemize=on\n"));
  EXPECT_NE(csv.find("detector_id,positive_set,target_fpr,tpr,achieved_fpr,threshold,"
                     "operating_point\n"),
            std::string::npos);
  // Every numeric field in data rows has exactly four decimals.
  std::istringstream lines(csv);
  std::string line;
  int data_rows = 0;
  while (std::getline(lines, line)) {
    if (line.starts_with("#") || line.starts_with("detector_id")) continue;
    ++data_rows;
    const auto fields = util::split(line, ',');
    for (std::size_t i = 2; i <= 5; ++i) {
      if (fields[i] == "fixed") continue;
      const auto dot = fields[i].find('.');
      ASSERT_NE(dot, std::string::npos) << line;
      EXPECT_EQ(fields[i].size() - dot - 1, 4u) << line;
    }
  }
  EXPECT_EQ(data_rows, 8);
  const std::string md = render_markdown(a);
  EXPECT_NE(md.find("| Detector | FPR = 0.05 gpt-4o | FPR = 0.05 llama-3 | FPR = 0.20 gpt-4o |"),
            std::string::npos);
}

TEST(TprTable, MissingCellIsDash) {
  DetectorScoreSet one{"a", false, {0.1, 0.2}, {{"gpt-4o", {0.9}}}};
  DetectorScoreSet two{"b", false, {0.1, 0.2}, {{"llama-3", {0.9}}}};
  const std::vector<DetectorScoreSet> sets{one, two};
  const std::string md = render_markdown(tpr_table(sets, kLevels, meta()));
  EXPECT_NE(md.find("| a | 1.0000 | - | 1.0000 | - |"), std::string::npos);
}

// --- ROC export ------------------------------------------------------------------

TEST(RocExport, FiveCurvesFiveCsvOneSvg) {
  TempDir dir;
  std::map<std::string, metrics::RocCurve> curves;
  for (int i = 0; i < 5; ++i) {
    curves["det" + std::to_string(i)] = metrics::roc_curve({grid(5, 0.2 + i * 0.1, 0.9), grid(5, 0.0, 0.6)});
  }
  const auto paths = roc_export(curves, dir.path(), meta());
  ASSERT_EQ(paths.size(), 6u);
  int csv = 0, svg = 0;
  for (const auto& p : paths) {
    EXPECT_TRUE(std::filesystem::exists(p));
    csv += p.extension() == ".csv";
    svg += p.extension() == ".svg";
  }
  EXPECT_EQ(csv, 5);
  EXPECT_EQ(svg, 1);
  const std::string svg_text = util::read_file(dir.path() / "roc.svg");
  EXPECT_EQ(std::count(svg_text.begin(), svg_text.end(), '\n') > 0, true);
  for (const auto& [id, curve] : curves) {
    EXPECT_NE(svg_text.find(id + " (AUC " + util::fixed(curve.auc, 4) + ")"), std::string::npos);
  }
  EXPECT_NE(svg_text.find("False positive rate"), std::string::npos);
  EXPECT_NE(svg_text.find("True positive rate"), std::string::npos);
}

TEST(RocExport, DegenerateCurveHasEndpointsOnly) {
  const auto curve = metrics::roc_curve({{0.5}, {0.5}});
  const std::string csv = roc_csv(curve, meta());
  EXPECT_NE(csv.find("threshold,fpr,tpr\n0.5000,0.0000,0.0000\n0.5000,1.0000,1.0000\n"),
            std::string::npos);
  EXPECT_NE(csv.find("# auc: 0.5000\n"), std::string::npos);
}

TEST(RocExport, Errors) {
  TempDir dir;
  EXPECT_THROW(roc_export({}, dir.path(), meta()), InvalidArgument);
  const std::map<std::string, metrics::RocCurve> one{{"a", metrics::roc_curve({{0.9}, {0.1}})}};
  const auto blocker = dir.path() / "file";
  util::write_file_atomic(blocker, "x");
  EXPECT_THROW(roc_export(one, blocker / "sub", meta()), IoError);
  if (::geteuid() != 0) {
    const auto ro = dir.path() / "ro";
    std::filesystem::create_directories(ro);
    ::chmod(ro.c_str(), 0500);
    EXPECT_THROW(roc_export(one, ro, meta()), IoError);
    ::chmod(ro.c_str(), 0700);
  }
}

TEST(RocSvg, TitleAndIdsAreEscaped) {
  const std::map<std::string, metrics::RocCurve> one{{"a<b>&c", metrics::roc_curve({{0.9}, {0.1}})}};
  const std::string svg = roc_svg(one, meta(), "x & y");
  EXPECT_NE(svg.find("a&lt;b&gt;&amp;c"), std::string::npos);
  EXPECT_NE(svg.find(">x &amp; y<"), std::string::npos);
}

// --- flagged proportion ------------------------------------------------------------

TEST(Flagged, Examples) {
  std::map<int, std::vector<detectors::DetectionScore>> groups{
      {2022, {scored(0.9), scored(0.1)}},
      {2023, {scored(0.1), scored(0.2)}},
      {2024, {scored(0.5), scored(0.5)}}};
  const auto p = flagged_proportion(groups, 0.5);
  EXPECT_EQ(p.at(2022), 0.5);
  EXPECT_EQ(p.at(2023), 0.0);
  EXPECT_EQ(p.at(2024), 1.0);
}

TEST(Flagged, Errors) {
  EXPECT_THROW(flagged_proportion({}, 0.5), InvalidArgument);
  EXPECT_THROW(flagged_proportion({{2022, {}}}, 0.5), InvalidArgument);
}

TEST(Flagged, UnionIsWeightedMeanOfGroups) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, std::vector<detectors::DetectionScore>> groups;
    std::vector<detectors::DetectionScore> all;
    const int years = 1 + static_cast<int>(rng() % 5);
    for (int y = 0; y < years; ++y) {
      const int n = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < n; ++i) {
        groups[2018 + y].push_back(scored(std::round(u(rng) * 20) / 20));
        all.push_back(groups[2018 + y].back());
      }
    }
    const double t = std::round(u(rng) * 20) / 20;
    const auto per_year = flagged_proportion(groups, t);
    const double whole = flagged_proportion({{0, all}}, t).at(0);
    double weighted = 0.0;
    for (const auto& [year, p] : per_year) weighted += p * groups[year].size();
    EXPECT_NEAR(whole, weighted / all.size(), 1e-12);
  }
}

// --- sections and formatting ablation -------------------------------------------

TEST(Sections, PerfectMockGivesFullTprAndAbsentMarkers) {
  const std::vector<corpus::Review> reviews{
      review("a1", true, {{"Summary", "furthermore s"}, {"Strengths", "furthermore t"},
                          {"Questions", "furthermore q"}}),
      review("a2", true, {{"Summary", "furthermore s"}, {"Strengths", "furthermore t"}}),
      review("h1", false, {{"Summary", "plain"}, {"Strengths", "fine"}})};
  MarkerDetector detector("furthermore");
  const std::vector<std::string> sections{"summary", "strengths", "questions"};
  const auto rows = section_breakdown(reviews, detector, sections, {}, 0.5);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& row : rows) EXPECT_EQ(row.tpr, 1.0) << row.section;
  EXPECT_EQ(rows[0].tnr, 1.0);
  EXPECT_EQ(rows[2].ai_reviews, 1u);
  EXPECT_EQ(rows[2].human_reviews, 0u);
  EXPECT_FALSE(rows[2].tnr.has_value());
  const std::string md = render_section_markdown(rows, meta());
  EXPECT_NE(md.find("| questions | 1.0000 | absent | 1 | 0 |"), std::string::npos);
  EXPECT_EQ(md.find("| questions | 1.0000 | 0.0000"), std::string::npos);
}

TEST(Sections, DetectorSeesOnlyOneSection) {
  const std::vector<corpus::Review> reviews{
      review("a1", true, {{"Summary", "plain"}, {"Weaknesses", "furthermore w"}})};
  MarkerDetector detector("furthermore");
  const std::vector<std::string> sections{"Summary", "Weaknesses"};
  const auto rows = section_breakdown(reviews, detector, sections, {}, 0.5);
  EXPECT_EQ(rows[0].tpr, 0.0);
  EXPECT_EQ(rows[1].tpr, 1.0);
}

TEST(Sections, UnknownSectionIsError) {
  const std::vector<corpus::Review> reviews{review("h", false, {{"Summary", "x"}})};
  MarkerDetector detector("furthermore");
  const std::vector<std::string> sections{"Limitations"};
  EXPECT_THROW(section_breakdown(reviews, detector, sections, {}, 0.5), InvalidArgument);
}

TEST(Ablation, FormattedAndUnformattedColumnsDiffer) {
  // The marker only appears once headings are rendered.
  const std::vector<corpus::Review> reviews{
      review("a1", true, {{"Summary", "text"}}), review("a2", true, {{"Summary", "more"}}),
      review("h1", false, {{"Summary", "words"}})};
  MarkerDetector detector("Summary");
  corpus::FormatConfig formatted;
  corpus::FormatConfig plain;
  plain.include_headings = false;
  plain.itemize_lists = false;
  const std::vector<std::pair<std::string, corpus::FormatConfig>> configs{
      {"formatted", formatted}, {"unformatted", plain}};
  const auto table = formatting_ablation(reviews, detector, configs, 0.5);
  EXPECT_EQ(table.columns, (std::vector<std::string>{"formatted", "unformatted"}));
  EXPECT_EQ(table.sources, (std::vector<std::string>{"human", "gpt-4o"}));
  EXPECT_EQ(table.rates.at({"gpt-4o", "formatted"}), 1.0);
  EXPECT_EQ(table.rates.at({"gpt-4o", "unformatted"}), 0.0);
  EXPECT_EQ(table.rates.at({"human", "formatted"}), 0.0);
  EXPECT_EQ(table.rates.at({"human", "unformatted"}), 1.0);
  const std::string md = render_ablation_markdown(table, meta());
  EXPECT_NE(md.find("| Source | Metric | formatted | unformatted |"), std::string::npos);
  EXPECT_NE(md.find("| human | TNR | 0.0000 | 1.0000 |"), std::string::npos);
  EXPECT_NE(md.find("| gpt-4o | TPR | 1.0000 | 0.0000 |"), std::string::npos);
}

TEST(Ablation, Errors) {
  MarkerDetector detector("x");
  const std::vector<corpus::Review> reviews{review("h", false, {{"Summary", "x"}})};
  EXPECT_THROW(formatting_ablation(reviews, detector, {}, 0.5), InvalidArgument);
  const std::vector<std::pair<std::string, corpus::FormatConfig>> dup{{"a", {}}, {"a", {}}};
  EXPECT_THROW(formatting_ablation(reviews, detector, dup, 0.5), InvalidArgument);
}
