#include "metent/vector.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "metent/error.hpp"

namespace metent {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

Vector operator+(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vector operator*(double s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Vector axpy(const Vector& a, double s, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

void require_valid(const Vector& v, const char* what) {
  if (v.empty()) throw InputError(std::string(what) + ": empty vector");
  for (double x : v) {
    if (!std::isfinite(x)) throw InputError(std::string(what) + ": non-finite coordinate");
  }
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

}  // namespace metent
