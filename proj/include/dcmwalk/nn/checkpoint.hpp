#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dcmwalk/nn/graph.hpp"

namespace dcmwalk::nn {

// FNV-1a over a descriptor string; used to bind checkpoints to the network
// architecture and training configuration they were produced with.
std::uint64_t descriptor_hash(const std::string& descriptor);

// Binary format: magic, version, descriptor hash, then each matrix as
// (rows, cols, row-major doubles). Parameter matrices first, then any extra
// matrices (e.g. optimizer moments) in the order given.
void save_checkpoint(const std::string& path, std::uint64_t config_hash,
                     const std::vector<Param*>& params,
                     const std::vector<const Eigen::MatrixXd*>& extra = {});

// Loads into pre-shaped destinations. Throws on magic/version/hash mismatch
// or on any shape difference.
void load_checkpoint(const std::string& path, std::uint64_t expected_hash,
                     const std::vector<Param*>& params,
                     const std::vector<Eigen::MatrixXd*>& extra = {});

// Reads just the stored hash (for diagnostics).
std::uint64_t peek_checkpoint_hash(const std::string& path);

}  // namespace dcmwalk::nn
