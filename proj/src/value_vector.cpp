#include "tauber/value_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tauber/errors.hpp"

namespace tauber {

namespace {

void require_finite(const std::vector<double>& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      throw InputError("ValueVector entry " + std::to_string(k) + " is not finite");
    }
  }
}

void require_same_size(const ValueVector& a, const ValueVector& b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

}  // namespace

ValueVector::ValueVector(std::size_t dim, double fill) : entries_(dim, fill) {
  require_finite(entries_);
}

ValueVector::ValueVector(std::vector<double> entries) : entries_(std::move(entries)) {
  require_finite(entries_);
}

ValueVector::ValueVector(std::initializer_list<double> entries) : entries_(entries) {
  require_finite(entries_);
}

double ValueVector::sup_norm() const noexcept {
  double m = 0.0;
  for (double x : entries_) m = std::max(m, std::abs(x));
  return m;
}

ValueVector& ValueVector::operator+=(const ValueVector& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ValueVector& ValueVector::operator-=(const ValueVector& other) {
  require_same_size(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ValueVector& ValueVector::operator*=(double scale) {
  for (double& x : entries_) x *= scale;
  return *this;
}

ValueVector& ValueVector::add_constant(double c) {
  for (double& x : entries_) x += c;
  return *this;
}

ValueVector operator+(ValueVector lhs, const ValueVector& rhs) { return lhs += rhs; }
ValueVector operator-(ValueVector lhs, const ValueVector& rhs) { return lhs -= rhs; }
ValueVector operator*(double scale, ValueVector v) { return v *= scale; }

double sup_distance(const ValueVector& a, const ValueVector& b) {
  require_same_size(a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace tauber
