#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "vilenkin/error.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

namespace detail {

/// M_N complex cells indexed by rank, tied to a radix and a resolution.
/// The tag keeps point-domain functions and coefficient sequences apart.
template <class Tag>
class CellArray {
 public:
  CellArray(Radix radix, std::size_t resolution)
      : radix_(std::move(radix)), resolution_(resolution) {
    check_shape();
    values_.assign(radix_->order(resolution_), Complex{});
  }

  CellArray(Radix radix, std::size_t resolution, std::vector<Complex> values)
      : radix_(std::move(radix)), resolution_(resolution), values_(std::move(values)) {
    check_shape();
    if (values_.size() != radix_->order(resolution_)) {
      throw_usage("expected " + std::to_string(radix_->order(resolution_)) + " values, got " +
                  std::to_string(values_.size()));
    }
  }

  const Radix& radix() const noexcept { return radix_; }
  std::size_t resolution() const noexcept { return resolution_; }
  Index size() const noexcept { return values_.size(); }

  Complex& operator[](Index i) { return values_[i]; }
  const Complex& operator[](Index i) const { return values_[i]; }
  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  bool same_shape(const CellArray& other) const {
    return resolution_ == other.resolution_ && *radix_ == *other.radix_;
  }

  CellArray& operator+=(const CellArray& other) {
    require_shape(other);
    for (Index i = 0; i < size(); ++i) values_[i] += other.values_[i];
    return *this;
  }
  CellArray& operator-=(const CellArray& other) {
    require_shape(other);
    for (Index i = 0; i < size(); ++i) values_[i] -= other.values_[i];
    return *this;
  }
  CellArray& operator*=(Complex scale) {
    for (auto& v : values_) v *= scale;
    return *this;
  }

  friend CellArray operator+(CellArray a, const CellArray& b) { return a += b; }
  friend CellArray operator-(CellArray a, const CellArray& b) { return a -= b; }
  friend CellArray operator*(Complex s, CellArray a) { return a *= s; }

 private:
  void check_shape() const {
    if (!radix_) throw_usage("cell array without radix");
    if (resolution_ > radix_->capacity()) {
      throw_capacity("resolution " + std::to_string(resolution_) + " exceeds radix capacity " +
                     std::to_string(radix_->capacity()));
    }
  }
  void require_shape(const CellArray& other) const {
    if (!same_shape(other)) throw_usage("operands have different radix or resolution");
  }

  Radix radix_;
  std::size_t resolution_;
  std::vector<Complex> values_;
};

struct FunctionTag {};
struct SpectrumTag {};

}  // namespace detail

/// A function on G_m constant on every I_N coset, stored by point rank.
using CylinderFunction = detail::CellArray<detail::FunctionTag>;
/// Fourier coefficients f^(0..M_N-1).
using Spectrum = detail::CellArray<detail::SpectrumTag>;

template <class Fn>
CylinderFunction tabulate(const Radix& radix, std::size_t resolution, Fn&& fn) {
  CylinderFunction f(radix, resolution);
  for (Index t = 0; t < f.size(); ++t) f[t] = fn(t);
  return f;
}

template <class Tag>
double max_abs_diff(const detail::CellArray<Tag>& a, const detail::CellArray<Tag>& b) {
  if (!a.same_shape(b)) throw_usage("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (Index i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// (1/M_N) sum_x f(x) conj(psi_k(x)), evaluated directly.
Complex fourier_coefficient(const CylinderFunction& f, Index k);

/// Fast transform: one length-m_j DFT per line along each axis j = 0..N-1.
/// Carries the 1/M_N factor.
Spectrum forward(const CylinderFunction& f);
/// sum_k F(k) psi_k, no normalization.
CylinderFunction inverse(const Spectrum& spectrum);

/// S_n f = sum_{k<n} f^(k) psi_k; S_0 f = 0.
CylinderFunction partial_sum(const CylinderFunction& f, Index n);
/// S_n from an already computed spectrum.
CylinderFunction partial_sum(const Spectrum& spectrum, Index n);

/// S_n f(x) = integral f(t) D_n(x - t) dmu(t), with D_n summed directly.
CylinderFunction partial_sum_via_kernel(const CylinderFunction& f, Index n);

}  // namespace vilenkin
