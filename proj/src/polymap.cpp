#include "gpcp/polymap.hpp"

#include <cmath>
#include <string>

#include "gpcp/errors.hpp"

namespace gpcp {

TensorTuple::TensorTuple(std::vector<DenseTensor> tensors) : tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw InvalidArgument("tensor tuple needs at least one tensor");
  const int m = degree_plus_one();
  const int n = tensors_.front().dim();
  for (std::size_t k = 0; k < tensors_.size(); ++k) {
    const int expected = m - static_cast<int>(k);
    if (tensors_[k].order() != expected) {
      throw InvalidArgument("tuple slot " + std::to_string(k + 1) + " must have order " +
                            std::to_string(expected) + ", got " +
                            std::to_string(tensors_[k].order()));
    }
    if (tensors_[k].dim() != n) {
      throw DimensionError("tuple slot " + std::to_string(k + 1) + " has dim " +
                           std::to_string(tensors_[k].dim()) + ", expected " + std::to_string(n));
    }
  }
}

TensorTuple TensorTuple::leading_only(const DenseTensor& leading) {
  if (leading.order() < 2) throw InvalidArgument("leading tensor must have order >= 2");
  std::vector<DenseTensor> tensors{leading};
  for (int order = leading.order() - 1; order >= 2; --order) {
    tensors.push_back(DenseTensor::zeros(order, leading.dim()));
  }
  return TensorTuple(std::move(tensors));
}

PolyMap::PolyMap(TensorTuple tuple, Vector constant)
    : tuple_(std::move(tuple)), constant_(std::move(constant)) {
  if (constant_.size() != tuple_.dim()) {
    throw DimensionError("constant vector has length " + std::to_string(constant_.size()) +
                         ", tuple dim is " + std::to_string(tuple_.dim()));
  }
  if (!constant_.allFinite()) throw InvalidArgument("constant vector must be finite");
}

PolyMap PolyMap::identity(int dim) {
  return PolyMap(TensorTuple({unit_tensor(2, dim)}), Vector::Zero(dim));
}

PolyMap PolyMap::affine(const Matrix& m, const Vector& q) {
  return PolyMap(TensorTuple({matrix_tensor(m)}), q);
}

Vector PolyMap::evaluate(const Vector& x) const {
  if (x.size() != dim()) {
    throw DimensionError("point has length " + std::to_string(x.size()) + ", map dim is " +
                         std::to_string(dim()));
  }
  Vector value = constant_;
  for (const auto& t : tuple_.tensors()) value += contract_to_vector(t, x);
  return value;
}

Matrix PolyMap::jacobian(const Vector& x) const {
  if (x.size() != dim()) {
    throw DimensionError("point has length " + std::to_string(x.size()) + ", map dim is " +
                         std::to_string(dim()));
  }
  Matrix jac = Matrix::Zero(dim(), dim());
  for (const auto& t : tuple_.tensors()) jac += contract_jacobian(t, x);
  return jac;
}

}  // namespace gpcp
