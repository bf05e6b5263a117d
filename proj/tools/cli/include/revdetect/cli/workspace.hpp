#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace revdetect::cli {

// Layout of a run's output directory.
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path corpus_file() const { return root_ / "corpus.jsonl"; }
  std::filesystem::path generated_dir() const { return root_ / "generated"; }
  std::filesystem::path generated_file() const { return generated_dir() / "reviews.jsonl"; }
  std::filesystem::path anchors_dir() const { return root_ / "anchors"; }
  std::filesystem::path scores_dir() const { return root_ / "scores"; }
  std::filesystem::path score_index() const { return scores_dir() / "index.json"; }
  std::filesystem::path calibration_dir() const { return root_ / "calibration"; }
  std::filesystem::path evaluation_file() const { return root_ / "evaluation" / "evaluation.json"; }
  std::filesystem::path report_dir() const { return root_ / "report"; }
  std::filesystem::path embedding_cache_dir() const { return root_ / "cache" / "embeddings"; }
  std::filesystem::path meta_dir() const { return root_ / "meta"; }
  std::filesystem::path lock_file() const { return root_ / ".revdetect.lock"; }

 private:
  std::filesystem::path root_;
};

// Exclusive claim on an output directory, released on destruction. A lock
// left behind by a process that no longer exists is taken over.
class OutputLock {
 public:
  // Throws LockHeld when another live process holds the directory.
  explicit OutputLock(const Workspace& workspace);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  std::filesystem::path path_;
};

// Manifest written to meta/<command>.json after every command.
struct RunRecord {
  std::string command;
  std::vector<std::string> arguments;
  std::map<std::string, std::string> config;  // effective key-value settings
  std::chrono::system_clock::time_point started_at;
  std::chrono::system_clock::time_point finished_at;
  int exit_code = 0;
  std::string error;
  std::map<std::string, long long> counts;
};

void write_run_record(const Workspace& workspace, const RunRecord& record);

}  // namespace revdetect::cli
