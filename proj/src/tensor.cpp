#include "gpcp/tensor.hpp"

#include <cmath>
#include <string>

#include "gpcp/errors.hpp"

namespace gpcp {

namespace {

std::size_t checked_size(int order, int dim) {
  if (order < 1 || dim < 1) {
    throw InvalidArgument("tensor order and dimension must be positive (got order " +
                          std::to_string(order) + ", dim " + std::to_string(dim) + ")");
  }
  std::size_t size = 1;
  for (int k = 0; k < order; ++k) size *= static_cast<std::size_t>(dim);
  return size;
}

void require_dim(const DenseTensor& t, const Vector& x) {
  if (x.size() != t.dim()) {
    throw DimensionError("tensor dimension " + std::to_string(t.dim()) +
                         " does not match vector length " + std::to_string(x.size()));
  }
}

// Advances a row-major multi-index; returns false after the last one.
bool next_index(std::vector<int>& index, int dim) {
  for (auto k = index.size(); k-- > 0;) {
    if (++index[k] < dim) return true;
    index[k] = 0;
  }
  return false;
}

}  // namespace

DenseTensor::DenseTensor(int order, int dim, std::vector<double> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
  const std::size_t expected = checked_size(order, dim);
  if (entries_.size() != expected) {
    throw InvalidArgument("tensor of order " + std::to_string(order) + " and dim " +
                          std::to_string(dim) + " needs " + std::to_string(expected) +
                          " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i])) {
      throw InvalidArgument("non-finite tensor entry at linear offset " + std::to_string(i));
    }
  }
}

DenseTensor DenseTensor::zeros(int order, int dim) {
  return DenseTensor(order, dim, std::vector<double>(checked_size(order, dim), 0.0));
}

DenseTensor DenseTensor::from_sparse(int order, int dim, std::span<const SparseEntry> entries) {
  std::vector<double> dense(checked_size(order, dim), 0.0);
  DenseTensor shape = zeros(order, dim);
  for (const auto& e : entries) dense[shape.offset(e.index)] = e.value;
  return DenseTensor(order, dim, std::move(dense));
}

std::size_t DenseTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) {
    throw DimensionError("index of length " + std::to_string(index.size()) +
                         " for a tensor of order " + std::to_string(order_));
  }
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) {
      throw DimensionError("tensor index " + std::to_string(i) + " outside [0, " +
                           std::to_string(dim_) + ")");
    }
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return off;
}

double DenseTensor::operator()(std::span<const int> index) const { return entries_[offset(index)]; }

double DenseTensor::at(std::initializer_list<int> index) const {
  return (*this)(std::span<const int>(index.begin(), index.size()));
}

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw DimensionError("cannot add tensors of different shape");
  }
  std::vector<double> sum(a.entries().begin(), a.entries().end());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.entries()[i];
  return DenseTensor(a.order(), a.dim(), std::move(sum));
}

DenseTensor operator*(double alpha, const DenseTensor& t) {
  std::vector<double> scaled(t.entries().begin(), t.entries().end());
  for (auto& v : scaled) v *= alpha;
  return DenseTensor(t.order(), t.dim(), std::move(scaled));
}

Vector contract_to_vector(const DenseTensor& t, const Vector& x) {
  require_dim(t, x);
  const auto n = static_cast<std::size_t>(t.dim());
  const auto src = t.entries();
  if (t.order() == 1) return Eigen::Map<const Vector>(src.data(), t.dim());

  // Fold the trailing slot against x until one slot remains.
  std::vector<double> work(src.size() / n);
  for (std::size_t row = 0; row < work.size(); ++row) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += src[row * n + i] * x[static_cast<Eigen::Index>(i)];
    work[row] = acc;
  }
  std::size_t len = work.size();
  for (int slot = 2; slot < t.order(); ++slot) {
    len /= n;
    for (std::size_t row = 0; row < len; ++row) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += work[row * n + i] * x[static_cast<Eigen::Index>(i)];
      work[row] = acc;
    }
  }
  return Eigen::Map<const Vector>(work.data(), t.dim());
}

double contract_to_scalar(const DenseTensor& t, const Vector& x) {
  return x.dot(contract_to_vector(t, x));
}

Matrix contract_jacobian(const DenseTensor& t, const Vector& x) {
  require_dim(t, x);
  const int n = t.dim();
  const int m = t.order();
  Matrix jac = Matrix::Zero(n, n);
  if (m == 1) return jac;

  std::vector<int> index(static_cast<std::size_t>(m), 0);
  const auto entries = t.entries();
  std::size_t linear = 0;
  do {
    const double a = entries[linear++];
    if (a != 0.0) {
      for (int s = 1; s < m; ++s) {
        double prod = a;
        for (int k = 1; k < m; ++k) {
          if (k != s) prod *= x[index[static_cast<std::size_t>(k)]];
        }
        jac(index[0], index[static_cast<std::size_t>(s)]) += prod;
      }
    }
  } while (next_index(index, n));
  return jac;
}

Vector contract_gradient(const DenseTensor& t, const Vector& x) {
  require_dim(t, x);
  const int n = t.dim();
  const int m = t.order();
  Vector grad = Vector::Zero(n);
  std::vector<int> index(static_cast<std::size_t>(m), 0);
  const auto entries = t.entries();
  std::size_t linear = 0;
  do {
    const double a = entries[linear++];
    if (a != 0.0) {
      for (int s = 0; s < m; ++s) {
        double prod = a;
        for (int k = 0; k < m; ++k) {
          if (k != s) prod *= x[index[static_cast<std::size_t>(k)]];
        }
        grad[index[static_cast<std::size_t>(s)]] += prod;
      }
    }
  } while (next_index(index, n));
  return grad;
}

double frobenius_norm(const DenseTensor& t) {
  double sum = 0.0;
  for (double v : t.entries()) sum += v * v;
  return std::sqrt(sum);
}

DenseTensor unit_tensor(int order, int dim) {
  std::vector<double> entries(checked_size(order, dim), 0.0);
  // Diagonal offsets are multiples of 1 + n + n^2 + ... + n^{m-1}.
  std::size_t stride = 0;
  for (int k = 0, p = 1; k < order; ++k, p *= dim) stride += static_cast<std::size_t>(p);
  for (int j = 0; j < dim; ++j) entries[static_cast<std::size_t>(j) * stride] = 1.0;
  return DenseTensor(order, dim, std::move(entries));
}

DenseTensor matrix_tensor(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix tensor must be square");
  const auto n = static_cast<int>(m.rows());
  std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) entries[static_cast<std::size_t>(i * n + j)] = m(i, j);
  }
  return DenseTensor(2, n, std::move(entries));
}

}  // namespace gpcp
