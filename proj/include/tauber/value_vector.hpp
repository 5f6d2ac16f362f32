#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tauber {

/// Bounded real function on a finite, ordered set of states.
/// Every entry is finite; construction rejects NaN and infinities.
class ValueVector {
 public:
  ValueVector() = default;
  explicit ValueVector(std::size_t dim, double fill = 0.0);
  explicit ValueVector(std::vector<double> entries);
  ValueVector(std::initializer_list<double> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t k) const { return entries_[k]; }
  double& operator[](std::size_t k) { return entries_[k]; }

  std::span<const double> entries() const noexcept { return entries_; }
  const std::vector<double>& data() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  double sup_norm() const noexcept;

  ValueVector& operator+=(const ValueVector& other);
  ValueVector& operator-=(const ValueVector& other);
  ValueVector& operator*=(double scale);
  ValueVector& add_constant(double c);

  friend bool operator==(const ValueVector&, const ValueVector&) = default;

 private:
  std::vector<double> entries_;
};

ValueVector operator+(ValueVector lhs, const ValueVector& rhs);
ValueVector operator-(ValueVector lhs, const ValueVector& rhs);
ValueVector operator*(double scale, ValueVector v);

/// ‖a − b‖∞. Throws InputError on size mismatch.
double sup_distance(const ValueVector& a, const ValueVector& b);

}  // namespace tauber
