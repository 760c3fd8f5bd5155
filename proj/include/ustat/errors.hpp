#pragma once

#include <stdexcept>
#include <string>

namespace ustat {

// Work estimate exceeds the configured ceiling. Carries both numbers so the
// CLI can suggest the sampling route with concrete figures.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required, double budget)
      : std::runtime_error(what), required_(required), budget_(budget) {}

  double required() const { return required_; }
  double budget() const { return budget_; }

 private:
  double required_;
  double budget_;
};

}  // namespace ustat
