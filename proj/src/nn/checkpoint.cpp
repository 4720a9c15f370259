#include "dcmwalk/nn/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

namespace dcmwalk::nn {

namespace {

constexpr std::uint32_t kMagic = 0x444E5743;  // "CWND"
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  return v;
}

void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m.rows()));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) write_pod<double>(os, m(i, j));
}

void read_matrix(std::istream& is, Eigen::MatrixXd& m) {
  const auto rows = read_pod<std::uint32_t>(is);
  const auto cols = read_pod<std::uint32_t>(is);
  if (rows != m.rows() || cols != m.cols())
    throw std::runtime_error("checkpoint: matrix shape mismatch");
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = read_pod<double>(is);
}

}  // namespace

std::uint64_t descriptor_hash(const std::string& descriptor) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : descriptor) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void save_checkpoint(const std::string& path, std::uint64_t config_hash,
                     const std::vector<Param*>& params,
                     const std::vector<const Eigen::MatrixXd*>& extra) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
  write_pod(os, kMagic);
  write_pod(os, kVersion);
  write_pod(os, config_hash);
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(params.size()));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(extra.size()));
  for (const Param* p : params) write_matrix(os, p->value);
  for (const Eigen::MatrixXd* m : extra) write_matrix(os, *m);
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

void load_checkpoint(const std::string& path, std::uint64_t expected_hash,
                     const std::vector<Param*>& params,
                     const std::vector<Eigen::MatrixXd*>& extra) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  if (read_pod<std::uint32_t>(is) != kMagic)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  if (read_pod<std::uint32_t>(is) != kVersion)
    throw std::runtime_error("checkpoint: unsupported version in " + path);
  const auto hash = read_pod<std::uint64_t>(is);
  if (hash != expected_hash)
    throw std::runtime_error(
        "checkpoint: configuration hash mismatch; the file was produced with "
        "a different architecture or settings");
  const auto np = read_pod<std::uint32_t>(is);
  const auto ne = read_pod<std::uint32_t>(is);
  if (np != params.size() || ne != extra.size())
    throw std::runtime_error("checkpoint: parameter list size mismatch");
  for (Param* p : params) read_matrix(is, p->value);
  for (Eigen::MatrixXd* m : extra) read_matrix(is, *m);
}

std::uint64_t peek_checkpoint_hash(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  if (read_pod<std::uint32_t>(is) != kMagic)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  (void)read_pod<std::uint32_t>(is);
  return read_pod<std::uint64_t>(is);
}

}  // namespace dcmwalk::nn
