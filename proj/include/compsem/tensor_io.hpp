#ifndef COMPSEM_TENSOR_IO_HPP
#define COMPSEM_TENSOR_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "compsem/tensor.hpp"

namespace compsem {

// Binary tensor container: a 16-byte magic header, little-endian u64 rank,
// u64 shape entries, then little-endian f64 components in row-major order.
inline constexpr char kTensorMagic[16] = {'c', 'o', 'm', 'p', 's', 'e', 'm',
                                          '.', 't', 'e', 'n', 's', 'o', 'r',
                                          '1', '\0'};

void save_tensor(std::ostream& out, const Tensord& t);
void save_tensor(const std::filesystem::path& path, const Tensord& t);

Tensord load_tensor(std::istream& in);
Tensord load_tensor(const std::filesystem::path& path);

// Debug text form: one shape line (dims space-separated), then one component
// per line with round-trip precision.
void save_tensor_text(std::ostream& out, const Tensord& t);
Tensord load_tensor_text(std::istream& in);

// Round-trip decimal formatting used by every text format in the toolkit.
std::string format_double(double v);

}  // namespace compsem

#endif
