#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "conegen/error.hpp"

namespace conegen {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline Vector vec(const std::vector<double>& values) {
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

/// Row-stacks a list of equally sized vectors.
inline Matrix stack_rows(const std::vector<Vector>& rows, Eigen::Index cols) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_dim(cols, rows[i].size(), "stack_rows");
    m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return m;
}

/// Extended real value. Infinite values are carried as a tag, never as a
/// floating-point infinity, so vectors built from finite values stay finite.
class Extended {
 public:
  enum class Kind { kFinite, kPlusInfinity, kMinusInfinity };

  constexpr Extended() = default;
  constexpr Extended(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Extended plus_infinity() { return Extended(Kind::kPlusInfinity); }
  static constexpr Extended minus_infinity() { return Extended(Kind::kMinusInfinity); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_plus_infinity() const { return kind_ == Kind::kPlusInfinity; }
  constexpr bool is_minus_infinity() const { return kind_ == Kind::kMinusInfinity; }

  /// Finite value; throws DomainError on infinities.
  double value() const {
    if (!finite()) throw DomainError("extended real is infinite");
    return value_;
  }

  /// Value with infinities mapped to +-inf doubles (for comparisons only).
  double as_double() const {
    switch (kind_) {
      case Kind::kPlusInfinity:
        return std::numeric_limits<double>::infinity();
      case Kind::kMinusInfinity:
        return -std::numeric_limits<double>::infinity();
      default:
        return value_;
    }
  }

  std::string to_string() const {
    if (is_plus_infinity()) return "+inf";
    if (is_minus_infinity()) return "-inf";
    return std::to_string(value_);
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::kFinite || a.value_ == b.value_);
  }

 private:
  constexpr explicit Extended(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

inline Extended max(const Extended& a, const Extended& b) {
  return a.as_double() >= b.as_double() ? a : b;
}

/// Weighted p-norm with p in {1, 2, inf}.
struct Norm {
  enum class P { kOne, kTwo, kInf };

  P p = P::kTwo;
  Vector weights;  // empty means all ones

  static Norm one() { return {P::kOne, {}}; }
  static Norm two() { return {P::kTwo, {}}; }
  static Norm inf() { return {P::kInf, {}}; }

  double operator()(const Vector& x) const {
    if (weights.size() != 0) require_dim(weights.size(), x.size(), "norm weights");
    const Vector a = weights.size() == 0 ? Vector(x.cwiseAbs()) : Vector(weights.cwiseProduct(x.cwiseAbs()));
    switch (p) {
      case P::kOne:
        return a.sum();
      case P::kInf:
        return a.size() == 0 ? 0.0 : a.maxCoeff();
      default:
        return a.norm();
    }
  }

  std::string name() const {
    switch (p) {
      case P::kOne:
        return "1";
      case P::kInf:
        return "inf";
      default:
        return "2";
    }
  }
};

}  // namespace conegen
