#include "revdetect/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <json.hpp>

#include "revdetect/error.hpp"

namespace revdetect::metrics {
namespace {

void require_scores(std::span<const double> values, const char* what) {
  if (values.empty()) throw InvalidArgument(std::string(what) + " is empty");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument(std::string(what) + " contains a score outside [0, 1]");
    }
  }
}

double mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs, double m) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void LabeledScores::validate() const {
  require_scores(positives, "positive score set");
  require_scores(negatives, "negative score set");
}

double threshold_above(std::span<const double> scores) {
  const double top = *std::max_element(scores.begin(), scores.end());
  return std::nextafter(top, std::numeric_limits<double>::infinity());
}

double trapezoid_auc(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
  }
  return area;
}

RocCurve roc_curve(const LabeledScores& scores) {
  scores.validate();
  std::vector<double> pos = scores.positives;
  std::vector<double> neg = scores.negatives;
  std::sort(pos.begin(), pos.end(), std::greater<>());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  std::vector<double> thresholds;
  thresholds.reserve(pos.size() + neg.size());
  std::merge(pos.begin(), pos.end(), neg.begin(), neg.end(), std::back_inserter(thresholds),
             std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  const double np = static_cast<double>(pos.size());
  const double nn = static_cast<double>(neg.size());
  RocCurve curve;
  curve.points.reserve(thresholds.size() + 1);
  curve.points.push_back({threshold_above(thresholds), 0.0, 0.0});
  std::size_t ip = 0;
  std::size_t in = 0;
  for (double t : thresholds) {
    while (ip < pos.size() && pos[ip] >= t) ++ip;
    while (in < neg.size() && neg[in] >= t) ++in;
    curve.points.push_back({t, static_cast<double>(in) / nn, static_cast<double>(ip) / np});
  }
  curve.auc = trapezoid_auc(curve.points);
  return curve;
}

double fraction_at_or_above(std::span<const double> scores, double threshold) {
  if (scores.empty()) throw InvalidArgument("score list is empty");
  const auto count = std::count_if(scores.begin(), scores.end(),
                                    [threshold](double s) { return s >= threshold; });
  return static_cast<double>(count) / static_cast<double>(scores.size());
}

ThresholdChoice threshold_for_fpr(std::span<const double> negatives, double target) {
  if (negatives.empty()) throw InvalidArgument("negative score set is empty");
  if (!(target >= 0.0 && target < 1.0)) throw InvalidArgument("target FPR must be in [0, 1)");
  for (double v : negatives) {
    if (!std::isfinite(v)) throw InvalidArgument("negative scores must be finite");
  }
  std::vector<double> sorted(negatives.begin(), negatives.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  // sorted[i] is a candidate when it starts a run of equal values; exactly
  // size - i negatives are >= it.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    const double fpr = static_cast<double>(sorted.size() - i) / n;
    if (fpr <= target) return {sorted[i], fpr, false};
  }
  return {threshold_above(sorted), 0.0, true};
}

OperatingPoint tpr_at_fpr(const LabeledScores& scores, double target) {
  scores.validate();
  const ThresholdChoice choice = threshold_for_fpr(scores.negatives, target);
  return {fraction_at_or_above(scores.positives, choice.threshold), choice.threshold,
          choice.achieved_fpr};
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 engine(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t reject_below = (0 - bound) % bound;
    std::uint64_t r = engine();
    while (r < reject_below) r = engine();
    std::swap(order[i - 1], order[r % bound]);
  }
  return order;
}

CalibrationResult kfold_calibrate(std::span<const double> negatives, double target, int k,
                                  std::uint64_t seed) {
  if (k < 2) throw InvalidArgument("k-fold calibration needs k >= 2");
  if (negatives.size() < static_cast<std::size_t>(k)) {
    throw InvalidArgument("fewer negatives than folds");
  }
  if (!(target > 0.0 && target < 1.0)) throw InvalidArgument("target FPR must be in (0, 1)");

  const auto order = seeded_permutation(negatives.size(), seed);
  const std::size_t n = negatives.size();
  const std::size_t folds = static_cast<std::size_t>(k);
  std::vector<std::size_t> fold_start(folds + 1, 0);
  for (std::size_t f = 0; f < folds; ++f) {
    fold_start[f + 1] = fold_start[f] + n / folds + (f < n % folds ? 1 : 0);
  }

  CalibrationResult result;
  result.target_fpr = target;
  result.k = k;
  result.seed = seed;
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<double> train;
    std::vector<double> held_out;
    train.reserve(n);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const double v = negatives[order[pos]];
      if (pos >= fold_start[f] && pos < fold_start[f + 1]) {
        held_out.push_back(v);
      } else {
        train.push_back(v);
      }
    }
    const ThresholdChoice choice = threshold_for_fpr(train, target);
    result.fold_thresholds.push_back(choice.threshold);
    result.fold_fprs.push_back(fraction_at_or_above(held_out, choice.threshold));
  }
  result.threshold_mean = mean(result.fold_thresholds);
  result.threshold_std = sample_std(result.fold_thresholds, result.threshold_mean);
  result.actual_fpr_mean = mean(result.fold_fprs);
  result.actual_fpr_std = sample_std(result.fold_fprs, result.actual_fpr_mean);
  return result;
}

std::string calibration_to_json(const CalibrationResult& r) {
  nlohmann::ordered_json j;
  j["target_fpr"] = r.target_fpr;
  j["threshold_mean"] = r.threshold_mean;
  j["threshold_std"] = r.threshold_std;
  j["actual_fpr_mean"] = r.actual_fpr_mean;
  j["actual_fpr_std"] = r.actual_fpr_std;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["prng"] = std::string(kShuffleAlgorithm);
  j["fold_thresholds"] = r.fold_thresholds;
  j["fold_fprs"] = r.fold_fprs;
  return j.dump(2);
}

}  // namespace revdetect::metrics
