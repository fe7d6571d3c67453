#ifndef COMPSEM_SPARSE_HPP
#define COMPSEM_SPARSE_HPP

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "compsem/errors.hpp"
#include "compsem/vocabulary.hpp"

namespace compsem {

// Sparse target x context matrix holding raw co-occurrence counts or the
// weighted scores derived from them.  At most one entry per (row, col).
class SparseMatrix {
 public:
  struct Triplet {
    long row;
    long col;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols) {}

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }

  // Grows the matrix; existing entries keep their positions.
  void resize(long rows, long cols);

  void add(long row, long col, double value);
  void set(long row, long col, double value);
  double at(long row, long col) const;

  double total() const;

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  std::vector<long> row_nonzeros() const;

  // Entries in row-major order; the canonical serialization order.
  std::vector<Triplet> sorted_triplets() const;

  // Associative-commutative merge for sharded counting.
  void merge(const SparseMatrix& other);

  Eigen::MatrixXd dense() const;
  Eigen::VectorXd dense_row(long row) const;

  bool operator==(const SparseMatrix& other) const;

  void save_tsv(const std::filesystem::path& path, const Vocabulary& vocab) const;
  static SparseMatrix load_tsv(const std::filesystem::path& path,
                               const Vocabulary& vocab);

 private:
  static std::uint64_t key(long row, long col) {
    return (static_cast<std::uint64_t>(row) << 32) |
           static_cast<std::uint32_t>(col);
  }

  void check(long row, long col) const;

  long rows_ = 0;
  long cols_ = 0;
  std::unordered_map<std::uint64_t, double> entries_;
};

}  // namespace compsem

#endif
