#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gpcp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// One nonzero of a sparsely specified tensor, 0-based indices.
struct SparseEntry {
  std::vector<int> index;
  double value = 0.0;
};

/// Real square tensor of order m and dimension n, stored densely in row-major
/// order (first index slowest). Immutable once constructed; every entry is
/// finite.
class DenseTensor {
 public:
  DenseTensor(int order, int dim, std::vector<double> entries);

  static DenseTensor zeros(int order, int dim);
  /// Entries listed in `entries` are assigned; everything else is zero.
  /// Repeated indices overwrite earlier ones.
  static DenseTensor from_sparse(int order, int dim,
                                 std::span<const SparseEntry> entries);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::span<const double> entries() const { return entries_; }

  double operator()(std::span<const int> index) const;
  double at(std::initializer_list<int> index) const;

  /// Linear offset of a multi-index; throws DimensionError if out of range.
  std::size_t offset(std::span<const int> index) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  int order_;
  int dim_;
  std::vector<double> entries_;
};

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator*(double alpha, const DenseTensor& t);

/// (A x^{m-1})_j = sum over j2..jm of a_{j j2...jm} x_{j2} ... x_{jm}.
/// Order 1 returns the entries; order 2 is the matrix-vector product.
Vector contract_to_vector(const DenseTensor& t, const Vector& x);

/// A x^m = <x, A x^{m-1}>.
double contract_to_scalar(const DenseTensor& t, const Vector& x);

/// Matrix of partial derivatives of contract_to_vector(t, .) at x:
/// entry (j, i) sums, over every variable slot s >= 2, the contraction with
/// index j in slot 1, index i in slot s and x everywhere else.
Matrix contract_jacobian(const DenseTensor& t, const Vector& x);

/// Gradient of x -> A x^m; sums the contraction with slot s left free over
/// every slot s (no symmetry assumed).
Vector contract_gradient(const DenseTensor& t, const Vector& x);

double frobenius_norm(const DenseTensor& t);

/// Kronecker-delta tensor: one where all indices coincide, zero elsewhere.
DenseTensor unit_tensor(int order, int dim);

/// n x n matrix as an order-2 tensor.
DenseTensor matrix_tensor(const Matrix& m);

}  // namespace gpcp
