#pragma once

#include <stdexcept>
#include <string>

namespace wree {

enum class status {
  ok = 0,
  invalid_argument,
  domain,
  regime,
  size,
  dimension,
  overflow,
  max_iterations,
  numerical,
  certification,
};

const char* status_name(status s);

// Base for all library errors; carries the machine-readable status code the
// C API reports.
class error : public std::runtime_error {
 public:
  error(status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  status code() const { return code_; }

 private:
  status code_;
};

struct domain_error : error {
  explicit domain_error(const std::string& what) : error(status::domain, what) {}
};
struct regime_error : error {
  explicit regime_error(const std::string& what) : error(status::regime, what) {}
};
struct size_error : error {
  explicit size_error(const std::string& what) : error(status::size, what) {}
};
struct dimension_error : error {
  explicit dimension_error(const std::string& what) : error(status::dimension, what) {}
};
struct overflow_error : error {
  explicit overflow_error(const std::string& what) : error(status::overflow, what) {}
};
struct max_iterations_error : error {
  explicit max_iterations_error(const std::string& what) : error(status::max_iterations, what) {}
};
struct numerical_error : error {
  explicit numerical_error(const std::string& what) : error(status::numerical, what) {}
};
// Raised when the recovered dual certificate leaves a gap above tol_gap;
// carries the offending gap so callers can still report it.
class certification_error : public error {
 public:
  certification_error(const std::string& what, double gap, double dual_g)
      : error(status::certification, what), gap_(gap), dual_g_(dual_g) {}
  double gap() const { return gap_; }
  double dual_g() const { return dual_g_; }

 private:
  double gap_;
  double dual_g_;
};

}  // namespace wree
