#pragma once

#include <vector>

#include "gpcp/tensor.hpp"

namespace gpcp {

/// Ordered tensor list (A^(1), ..., A^(m-1)) with A^(k) of order m-k+1, so the
/// leading tensor comes first and the last element is a matrix. A degree that
/// is absent from the map is stored as an explicit zero tensor.
class TensorTuple {
 public:
  explicit TensorTuple(std::vector<DenseTensor> tensors);

  /// Tuple whose leading tensor is `leading` and whose lower-order terms are zero.
  static TensorTuple leading_only(const DenseTensor& leading);

  /// m, one more than the polynomial degree.
  int degree_plus_one() const { return static_cast<int>(tensors_.size()) + 1; }
  int dim() const { return tensors_.front().dim(); }
  const std::vector<DenseTensor>& tensors() const { return tensors_; }

 private:
  std::vector<DenseTensor> tensors_;
};

/// F(x) = sum_k A^(k) x^{m-k} + a.
class PolyMap {
 public:
  PolyMap(TensorTuple tuple, Vector constant);

  /// G(x) = x.
  static PolyMap identity(int dim);
  /// F(x) = M x + q.
  static PolyMap affine(const Matrix& m, const Vector& q);

  int dim() const { return tuple_.dim(); }
  int degree_plus_one() const { return tuple_.degree_plus_one(); }
  const TensorTuple& tuple() const { return tuple_; }
  const Vector& constant() const { return constant_; }

  Vector evaluate(const Vector& x) const;
  Matrix jacobian(const Vector& x) const;
  const DenseTensor& leading_tensor() const { return tuple_.tensors().front(); }

 private:
  TensorTuple tuple_;
  Vector constant_;
};

}  // namespace gpcp
