#include "compsem/sparse.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "compsem/tensor_io.hpp"

namespace compsem {

void SparseMatrix::resize(long rows, long cols) {
  if (rows < rows_ || cols < cols_)
    throw ShapeError("SparseMatrix::resize cannot shrink");
  rows_ = rows;
  cols_ = cols;
}

void SparseMatrix::check(long row, long col) const {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) {
    throw ShapeError("sparse index (" + std::to_string(row) + "," +
                     std::to_string(col) + ") out of range for " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

void SparseMatrix::add(long row, long col, double value) {
  check(row, col);
  entries_[key(row, col)] += value;
}

void SparseMatrix::set(long row, long col, double value) {
  check(row, col);
  if (value == 0.0) {
    entries_.erase(key(row, col));
  } else {
    entries_[key(row, col)] = value;
  }
}

double SparseMatrix::at(long row, long col) const {
  check(row, col);
  auto it = entries_.find(key(row, col));
  return it == entries_.end() ? 0.0 : it->second;
}

double SparseMatrix::total() const {
  double sum = 0.0;
  for (const auto& [_, v] : entries_) sum += v;
  return sum;
}

std::vector<double> SparseMatrix::row_sums() const {
  std::vector<double> sums(rows_, 0.0);
  for (const auto& [k, v] : entries_) sums[k >> 32] += v;
  return sums;
}

std::vector<double> SparseMatrix::col_sums() const {
  std::vector<double> sums(cols_, 0.0);
  for (const auto& [k, v] : entries_) sums[k & 0xffffffff] += v;
  return sums;
}

std::vector<long> SparseMatrix::row_nonzeros() const {
  std::vector<long> counts(rows_, 0);
  for (const auto& [k, v] : entries_) {
    if (v != 0.0) ++counts[k >> 32];
  }
  return counts;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::sorted_triplets() const {
  std::vector<Triplet> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) {
    out.push_back({static_cast<long>(k >> 32),
                   static_cast<long>(k & 0xffffffff), v});
  }
  std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

void SparseMatrix::merge(const SparseMatrix& other) {
  if (other.rows_ > rows_ || other.cols_ > cols_)
    resize(std::max(rows_, other.rows_), std::max(cols_, other.cols_));
  for (const auto& [k, v] : other.entries_) entries_[k] += v;
}

Eigen::MatrixXd SparseMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& [k, v] : entries_)
    m(static_cast<long>(k >> 32), static_cast<long>(k & 0xffffffff)) = v;
  return m;
}

Eigen::VectorXd SparseMatrix::dense_row(long row) const {
  check(row, 0);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(cols_);
  for (long c = 0; c < cols_; ++c) {
    auto it = entries_.find(key(row, c));
    if (it != entries_.end()) v(c) = it->second;
  }
  return v;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  if (entries_.size() != other.entries_.size()) return false;
  for (const auto& [k, v] : entries_) {
    auto it = other.entries_.find(k);
    if (it == other.entries_.end() || it->second != v) return false;
  }
  return true;
}

void SparseMatrix::save_tsv(const std::filesystem::path& path,
                            const Vocabulary& vocab) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const Triplet& t : sorted_triplets()) {
    out << vocab.targets.at(t.row) << '\t' << vocab.contexts.at(t.col) << '\t'
        << format_double(t.value) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

SparseMatrix SparseMatrix::load_tsv(const std::filesystem::path& path,
                                    const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  SparseMatrix m(static_cast<long>(vocab.targets.size()),
                 static_cast<long>(vocab.contexts.size()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string target, context, value;
    if (!std::getline(row, target, '\t') || !std::getline(row, context, '\t') ||
        !std::getline(row, value)) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected target<TAB>context<TAB>value");
    }
    const long r = vocab.target_id(target);
    const long c = vocab.context_id(context);
    if (r < 0 || c < 0) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": token not in vocabulary: " + (r < 0 ? target : context));
    }
    m.set(r, c, std::stod(value));
  }
  return m;
}

}  // namespace compsem
