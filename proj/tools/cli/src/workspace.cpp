#include "revdetect/cli/workspace.hpp"

#include <signal.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "revdetect/cli/errors.hpp"
#include "revdetect/util/fs.hpp"

namespace revdetect::cli {
namespace {

bool process_alive(long pid) {
  if (pid <= 0) return false;
  return ::kill(static_cast<pid_t>(pid), 0) == 0 || errno == EPERM;
}

bool try_create(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.c_str(), "wx");
  if (!f) return false;
  std::fprintf(f, "%ld\n", static_cast<long>(::getpid()));
  std::fclose(f);
  return true;
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t secs = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

OutputLock::OutputLock(const Workspace& workspace) : path_(workspace.lock_file()) {
  std::filesystem::create_directories(workspace.root());
  if (try_create(path_)) return;
  long holder = 0;
  {
    std::ifstream in(path_);
    in >> holder;
  }
  if (process_alive(holder)) {
    path_.clear();
    throw LockHeld("output directory " + workspace.root().string() +
                   " is in use by process " + std::to_string(holder));
  }
  std::filesystem::remove(path_);
  if (!try_create(path_)) {
    path_.clear();
    throw LockHeld("could not lock output directory " + workspace.root().string());
  }
}

OutputLock::~OutputLock() {
  if (path_.empty()) return;
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

void write_run_record(const Workspace& workspace, const RunRecord& record) {
  nlohmann::ordered_json j;
  j["tool"] = "revdetect";
  j["command"] = record.command;
  j["arguments"] = record.arguments;
  j["started_at"] = iso8601(record.started_at);
  j["finished_at"] = iso8601(record.finished_at);
  j["exit_code"] = record.exit_code;
  if (!record.error.empty()) j["error"] = record.error;
  j["counts"] = record.counts;
  j["config"] = record.config;
  util::write_file_atomic(workspace.meta_dir() / (record.command + ".json"), j.dump(2) + "\n");
}

}  // namespace revdetect::cli
