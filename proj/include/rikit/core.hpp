#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rikit {

/// Nonnegative extended real: a finite double or an explicit +infinity marker.
/// Arithmetic on the marker is never delegated to IEEE infinities.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw std::invalid_argument("ExtReal: NaN");
    if (std::isinf(v)) {
      if (v < 0) throw std::invalid_argument("ExtReal: -inf");
      inf_ = true;
    } else {
      v_ = v;
    }
  }
  static ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  /// Finite value; throws on the marker.
  double value() const {
    if (inf_) throw std::domain_error("ExtReal: value() on +inf marker");
    return v_;
  }
  /// Conversion for display and comparisons against plain doubles.
  double to_double() const { return inf_ ? std::numeric_limits<double>::infinity() : v_; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.v_ + b.v_);
  }
  /// Product with the convention 0 * inf = 0 (measure-theoretic).
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) {
      const bool zero = (!a.inf_ && a.v_ == 0.0) || (!b.inf_ && b.v_ == 0.0);
      return zero ? ExtReal(0.0) : infinity();
    }
    return ExtReal(a.v_ * b.v_);
  }

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal pow(const ExtReal& a, double e) {
  if (a.is_inf()) return e > 0 ? ExtReal::infinity() : (e == 0 ? ExtReal(1.0) : ExtReal(0.0));
  return ExtReal(std::pow(a.value(), e));
}

enum class ErrorCode {
  Validation,
  UnsupportedCombination,
  NotAttainable,
  NotQuasiconcave,
  DegenerateRatio,
  ZeroFunction,
  DegenerateInput,
  SolverStall,
  AllDegenerate,
  NotLipschitzOnSubset,
  BudgetExhausted,
  HajlaszViolated,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::NotAttainable: return "NotAttainable";
    case ErrorCode::NotQuasiconcave: return "NotQuasiconcave";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::SolverStall: return "SolverStall";
    case ErrorCode::AllDegenerate: return "AllDegenerate";
    case ErrorCode::NotLipschitzOnSubset: return "NotLipschitzOnSubset";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::HajlaszViolated: return "HajlaszViolated";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, const std::string& msg,
                    ErrorCode code = ErrorCode::Validation) {
  if (!cond) throw Error(code, msg);
}

/// Error carrying a violating index pair (Lipschitz and Hajlasz checks).
class PairError : public Error {
 public:
  PairError(ErrorCode code, const std::string& msg, std::size_t i, std::size_t j)
      : Error(code, msg), i_(i), j_(j) {}
  std::pair<std::size_t, std::size_t> pair() const { return {i_, j_}; }

 private:
  std::size_t i_, j_;
};

inline bool is_finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace rikit
