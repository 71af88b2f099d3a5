#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace metent {

/// A point or direction in R^n.
using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
double norm_sq(std::span<const double> a);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(double s, const Vector& a);

/// a + s*b
Vector axpy(const Vector& a, double s, const Vector& b);

/// Throws InputError unless every coordinate is finite and the size is >= 1.
void require_valid(const Vector& v, const char* what);

std::string to_string(const Vector& v);

/// Closed interval [lo, hi] bracketing an oracle value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] bool is_point() const { return lo == hi; }
};

}  // namespace metent
