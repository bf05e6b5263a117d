#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revdetect::metrics {

// Scores for AI-written reviews (positives) and human-written reviews
// (negatives). Decision rule everywhere: score >= threshold means AI.
struct LabeledScores {
  std::vector<double> positives;
  std::vector<double> negatives;

  // Throws InvalidArgument when a side is empty or a value is outside [0, 1].
  void validate() const;
};

struct RocPoint {
  double threshold;
  double fpr;
  double tpr;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

// Starts at (0, 0) with a threshold just above every score and ends at
// (1, 1) at the smallest score. One point per distinct score value.
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

RocCurve roc_curve(const LabeledScores& scores);

// Trapezoidal area under (fpr, tpr) points.
double trapezoid_auc(std::span<const RocPoint> points);

// Smallest value strictly greater than every element of `scores`.
double threshold_above(std::span<const double> scores);

struct ThresholdChoice {
  double threshold = 0.0;
  double achieved_fpr = 0.0;
  bool above_all = false;  // no observed score reaches the threshold
};

// Smallest candidate t (distinct negative scores, plus a sentinel just above
// the maximum) with fraction(negatives >= t) <= target. The achieved FPR never
// exceeds the target. Throws InvalidArgument for an empty list, non-finite
// scores, or a target outside [0, 1).
ThresholdChoice threshold_for_fpr(std::span<const double> negatives, double target);

// Fraction of `scores` that are >= threshold.
double fraction_at_or_above(std::span<const double> scores, double threshold);

struct OperatingPoint {
  double tpr = 0.0;
  double threshold = 0.0;
  double achieved_fpr = 0.0;
};

OperatingPoint tpr_at_fpr(const LabeledScores& scores, double target);

// Shuffle algorithm identity recorded with every calibration result.
inline constexpr std::string_view kShuffleAlgorithm =
    "mt19937_64+fisher-yates(debiased-modulo)";

// Fisher-Yates permutation of [0, n) driven by std::mt19937_64(seed). The
// index draw is specified exactly, so the permutation is portable.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

struct CalibrationResult {
  double target_fpr = 0.0;
  double threshold_mean = 0.0;
  double threshold_std = 0.0;
  double actual_fpr_mean = 0.0;
  double actual_fpr_std = 0.0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<double> fold_thresholds;
  std::vector<double> fold_fprs;
};

// Shuffles, splits into k near-equal folds, fits the threshold on k-1 folds
// and measures the FPR on the held-out fold. Standard deviations use n - 1.
// Throws InvalidArgument for k < 2, fewer negatives than folds, or a target
// outside (0, 1).
CalibrationResult kfold_calibrate(std::span<const double> negatives, double target, int k,
                                  std::uint64_t seed);

std::string calibration_to_json(const CalibrationResult& result);

}  // namespace revdetect::metrics
