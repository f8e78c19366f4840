#include "lgr2/checkpoint.hpp"

#include <fstream>

namespace lgr2 {

namespace {
constexpr char kMagic[8] = {'L', 'G', 'R', '2', 'C', 'K', 'P', 'T'};

void write_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw LoadError("truncated checkpoint");
  return v;
}

void write_string(std::ostream& os, const std::string& s) {
  write_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& is) {
  const std::uint32_t n = read_u32(is);
  if (n > (1u << 20)) throw LoadError("checkpoint string too long");
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw LoadError("truncated checkpoint");
  return s;
}

}  // namespace

void Checkpoint::put(const std::string& name, Mat value) {
  tensors.emplace_back(name, std::move(value));
}

const Mat& Checkpoint::get(const std::string& name) const {
  for (const auto& [n, m] : tensors)
    if (n == name) return m;
  throw LoadError("checkpoint is missing tensor '" + name + "'");
}

bool Checkpoint::has(const std::string& name) const {
  for (const auto& [n, m] : tensors)
    if (n == name) return true;
  return false;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw LoadError("cannot write checkpoint: " + path);
  os.write(kMagic, sizeof(kMagic));
  write_u32(os, Checkpoint::kVersion);
  write_string(os, ck.env);
  write_u32(os, static_cast<std::uint32_t>(ck.tensors.size()));
  for (const auto& [name, m] : ck.tensors) {
    write_string(os, name);
    write_u32(os, static_cast<std::uint32_t>(m.rows()));
    write_u32(os, static_cast<std::uint32_t>(m.cols()));
    // Row-major payload.
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      os.write(reinterpret_cast<const char*>(m.row(r).eval().data()),
               static_cast<std::streamsize>(sizeof(double) * m.cols()));
  }
  if (!os) throw LoadError("failed while writing checkpoint: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw LoadError("cannot read checkpoint: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::string(magic, 8) != std::string(kMagic, 8))
    throw LoadError("not an lgr2 checkpoint: " + path);
  const std::uint32_t version = read_u32(is);
  if (version != Checkpoint::kVersion)
    throw LoadError("unsupported checkpoint version " + std::to_string(version));
  Checkpoint ck;
  ck.env = read_string(is);
  const std::uint32_t n = read_u32(is);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::string name = read_string(is);
    const std::uint32_t rows = read_u32(is);
    const std::uint32_t cols = read_u32(is);
    Mat m(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r) {
      Eigen::RowVectorXd row(cols);
      is.read(reinterpret_cast<char*>(row.data()),
              static_cast<std::streamsize>(sizeof(double) * cols));
      if (!is) throw LoadError("truncated checkpoint tensor '" + name + "'");
      m.row(r) = row;
    }
    ck.put(name, std::move(m));
  }
  return ck;
}

}  // namespace lgr2
