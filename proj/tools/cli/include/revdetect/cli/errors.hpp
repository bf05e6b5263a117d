#pragma once

#include "revdetect/error.hpp"

namespace revdetect::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,         // bad config, bad flags or missing upstream input
  kExitProviderBudget = 3, // failure budget exceeded or credentials rejected
  kExitPartial = 4,        // finished with some failed items
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// An upstream artifact is absent, e.g. `evaluate` before `detect`.
class MissingInput : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Another invocation holds the output directory.
class LockHeld : public Error {
 public:
  using Error::Error;
};

}  // namespace revdetect::cli
