#include "compsem/tensor_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace compsem {

namespace {

void write_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw IoError("tensor container truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_f64(std::ostream& out, double v) {
  write_u64(out, std::bit_cast<std::uint64_t>(v));
}

double read_f64(std::istream& in) {
  return std::bit_cast<double>(read_u64(in));
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_tensor(std::ostream& out, const Tensord& t) {
  out.write(kTensorMagic, sizeof kTensorMagic);
  write_u64(out, static_cast<std::uint64_t>(t.rank()));
  for (Index d : t.shape()) write_u64(out, static_cast<std::uint64_t>(d));
  for (Index i = 0; i < t.size(); ++i) write_f64(out, t[i]);
  if (!out) throw IoError("failed to write tensor container");
}

void save_tensor(const std::filesystem::path& path, const Tensord& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  save_tensor(out, t);
}

Tensord load_tensor(std::istream& in) {
  char magic[sizeof kTensorMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kTensorMagic, sizeof magic) != 0) {
    throw IoError("not a tensor container (bad magic header)");
  }
  const std::uint64_t rank = read_u64(in);
  if (rank < 1 || rank > 16) {
    throw IoError("tensor container has implausible rank " +
                  std::to_string(rank));
  }
  std::vector<Index> shape(rank);
  Index total = 1;
  for (auto& d : shape) {
    d = static_cast<Index>(read_u64(in));
    if (d < 1) throw IoError("tensor container has non-positive dimension");
    total *= d;
  }
  typename Tensord::VectorType data(total);
  for (Index i = 0; i < total; ++i) data(i) = read_f64(in);
  return Tensord(std::move(shape), std::move(data));
}

Tensord load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_tensor(in);
}

void save_tensor_text(std::ostream& out, const Tensord& t) {
  for (Index i = 0; i < t.rank(); ++i) {
    if (i) out << ' ';
    out << t.dim(i);
  }
  out << '\n';
  for (Index i = 0; i < t.size(); ++i) out << format_double(t[i]) << '\n';
}

Tensord load_tensor_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty tensor text");
  std::istringstream shape_in(line);
  std::vector<Index> shape;
  Index d = 0;
  while (shape_in >> d) shape.push_back(d);
  if (shape.empty()) throw IoError("tensor text has no shape line");
  Index total = 1;
  for (Index dim : shape) total *= dim;
  typename Tensord::VectorType data(total);
  for (Index i = 0; i < total; ++i) {
    if (!(in >> data(i))) throw IoError("tensor text truncated");
  }
  return Tensord(std::move(shape), std::move(data));
}

}  // namespace compsem
