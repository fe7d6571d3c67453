#ifndef COMPSEM_TENSOR_HPP
#define COMPSEM_TENSOR_HPP

#include <Eigen/Core>

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "compsem/errors.hpp"

namespace compsem {

using Eigen::Index;

namespace detail {

inline std::string shape_string(const std::vector<Index>& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ',';
    os << shape[i];
  }
  os << ')';
  return os.str();
}

}  // namespace detail

// Dense tensor of rank >= 1 with components stored in row-major order (last
// index fastest).  Rank 1 holds word and sentence vectors, rank 2 verb and
// VP matrices, rank 3 transitive-verb tensors.  Immutable use after
// construction is thread-safe; all operations below are pure functions.
template <typename Scalar>
class Tensor {
 public:
  using VectorType = Eigen::Vector<Scalar, Eigen::Dynamic>;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RowMajorMatrix =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  // Default-constructed tensors are empty placeholders; every factory and
  // operation below produces a valid tensor (rank >= 1, all dims >= 1).
  Tensor() = default;

  explicit Tensor(std::vector<Index> shape)
      : shape_(std::move(shape)), data_(VectorType::Zero(checked_size(shape_))) {}

  Tensor(std::vector<Index> shape, VectorType components)
      : shape_(std::move(shape)), data_(std::move(components)) {
    if (checked_size(shape_) != data_.size()) {
      throw ShapeError("tensor component count " + std::to_string(data_.size()) +
                       " does not match shape " + detail::shape_string(shape_));
    }
  }

  static Tensor from_vector(VectorType v) {
    const Index n = v.size();
    return Tensor({n}, std::move(v));
  }

  // Flattens row-major, so from_matrix(M).as_matrix() == M.
  static Tensor from_matrix(const MatrixType& m) {
    RowMajorMatrix rm = m;
    return Tensor({m.rows(), m.cols()},
                  Eigen::Map<const VectorType>(rm.data(), rm.size()));
  }

  static Tensor identity(Index n) {
    return from_matrix(MatrixType::Identity(n, n));
  }

  Index rank() const { return static_cast<Index>(shape_.size()); }
  const std::vector<Index>& shape() const { return shape_; }
  Index dim(Index i) const { return shape_.at(static_cast<std::size_t>(i)); }
  Index size() const { return data_.size(); }
  bool empty() const { return shape_.empty(); }

  const VectorType& data() const { return data_; }
  VectorType& data() { return data_; }

  Scalar operator[](Index flat) const { return data_(flat); }
  Scalar& operator[](Index flat) { return data_(flat); }

  template <typename... Ix>
  Scalar operator()(Ix... indices) const {
    return data_(flat_index({static_cast<Index>(indices)...}));
  }
  template <typename... Ix>
  Scalar& operator()(Ix... indices) {
    return data_(flat_index({static_cast<Index>(indices)...}));
  }

  // Rank-2 view of the components; only valid for matrices.
  Eigen::Map<const RowMajorMatrix> as_matrix() const {
    require_rank(2, "as_matrix");
    return Eigen::Map<const RowMajorMatrix>(data_.data(), shape_[0], shape_[1]);
  }

  const VectorType& as_vector() const {
    require_rank(1, "as_vector");
    return data_;
  }

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

  std::string shape_str() const { return detail::shape_string(shape_); }

 private:
  static Index checked_size(const std::vector<Index>& shape) {
    if (shape.empty()) throw ShapeError("tensor rank must be >= 1");
    Index n = 1;
    for (Index d : shape) {
      if (d < 1) {
        throw ShapeError("tensor dimensions must be >= 1, got " +
                         detail::shape_string(shape));
      }
      n *= d;
    }
    return n;
  }

  Index flat_index(std::initializer_list<Index> indices) const {
    Index flat = 0;
    std::size_t i = 0;
    for (Index ix : indices) {
      flat = flat * shape_[i] + ix;
      ++i;
    }
    return flat;
  }

  void require_rank(Index r, const char* op) const {
    if (rank() != r) {
      throw ShapeError(std::string(op) + " requires rank " + std::to_string(r) +
                       ", tensor has shape " + shape_str());
    }
  }

  std::vector<Index> shape_;
  VectorType data_;
};

using Tensord = Tensor<double>;

// Unfolds any tensor into the rank-1 tensor of its row-major components.
template <typename Scalar>
Tensor<Scalar> unfold(const Tensor<Scalar>& t) {
  return Tensor<Scalar>::from_vector(t.data());
}

// Contraction of the last index of `t` against `v`:
//   out[i...j] = sum_k t[i...j][k] * v[k]
// This is function application for curried multilinear maps; a sentence is
// obtained by contracting a verb tensor with its arguments one at a time,
// object first, then subject.
template <typename Scalar>
Tensor<Scalar> contract(const Tensor<Scalar>& t, const Tensor<Scalar>& v) {
  if (t.rank() < 2) {
    throw ShapeError("contract requires a tensor of rank >= 2, got shape " +
                     t.shape_str());
  }
  if (v.rank() != 1) {
    throw ShapeError("contract requires a rank-1 argument, got shape " +
                     v.shape_str());
  }
  const Index last = t.dim(t.rank() - 1);
  if (last != v.size()) {
    throw ShapeError("contract dimension mismatch: tensor shape " +
                     t.shape_str() + " vs vector shape " + v.shape_str());
  }
  const Index lead = t.size() / last;
  using RowMajorMatrix = typename Tensor<Scalar>::RowMajorMatrix;
  Eigen::Map<const RowMajorMatrix> m(t.data().data(), lead, last);
  typename Tensor<Scalar>::VectorType out = m * v.as_vector();
  std::vector<Index> shape(t.shape().begin(), t.shape().end() - 1);
  return Tensor<Scalar>(std::move(shape), std::move(out));
}

// Outer product of two vectors: out[i][j] = u[i] * v[j].
template <typename Scalar>
Tensor<Scalar> kronecker(const Tensor<Scalar>& u, const Tensor<Scalar>& v) {
  if (u.rank() != 1 || v.rank() != 1) {
    throw ShapeError("kronecker requires rank-1 operands, got " +
                     u.shape_str() + " and " + v.shape_str());
  }
  typename Tensor<Scalar>::RowMajorMatrix m =
      u.as_vector() * v.as_vector().transpose();
  return Tensor<Scalar>(
      {u.size(), v.size()},
      Eigen::Map<const typename Tensor<Scalar>::VectorType>(m.data(), m.size()));
}

// Component-wise product of two tensors of identical shape.
template <typename Scalar>
Tensor<Scalar> hadamard(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("hadamard shape mismatch: " + a.shape_str() + " vs " +
                     b.shape_str());
  }
  return Tensor<Scalar>(a.shape(), a.data().cwiseProduct(b.data()));
}

// Cosine similarity of two vectors.  The denominator is computed as
// sqrt(|u|^2 |v|^2) so hand-checkable rational cases come out exact.
template <typename Scalar>
Scalar cosine(const Tensor<Scalar>& u, const Tensor<Scalar>& v) {
  if (u.rank() != 1 || v.rank() != 1 || u.size() != v.size()) {
    throw ShapeError("cosine requires equal-length vectors, got " +
                     u.shape_str() + " and " + v.shape_str());
  }
  const Scalar nu = u.data().squaredNorm();
  const Scalar nv = v.data().squaredNorm();
  if (nu == Scalar(0) || nv == Scalar(0)) {
    throw ValueError("cosine is undefined for zero-norm input");
  }
  return u.data().dot(v.data()) / std::sqrt(nu * nv);
}

// Matrix-level cosine: the Frobenius inner product of the normalised
// matrices, identical to the cosine of the row-major unfoldings.
template <typename Scalar>
Scalar frobenius_cosine(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (a.rank() != 2 || b.rank() != 2 || !a.same_shape(b)) {
    throw ShapeError("frobenius_cosine requires matrices of equal shape, got " +
                     a.shape_str() + " and " + b.shape_str());
  }
  return cosine(unfold(a), unfold(b));
}

template <typename Scalar>
Tensor<Scalar> l2_normalize(const Tensor<Scalar>& v) {
  if (v.rank() != 1) {
    throw ShapeError("l2_normalize requires a rank-1 tensor, got " +
                     v.shape_str());
  }
  const Scalar n = v.data().norm();
  if (n == Scalar(0)) throw ValueError("cannot normalize a zero vector");
  return Tensor<Scalar>(v.shape(), v.data() / n);
}

}  // namespace compsem

#endif
