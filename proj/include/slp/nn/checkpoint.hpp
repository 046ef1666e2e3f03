#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "slp/nn/params.hpp"

namespace slp::nn {

// Binary layout, all integers 64-bit little-endian:
//   "SGNCKPT1"
//   repeated until EOF: name_len, name bytes, rank, dims[rank], values (IEEE-754 f64 LE)

inline constexpr char kCheckpointMagic[] = "SGNCKPT1";

void write_checkpoint(std::ostream& out, const ParamStore& params);
ParamStore read_checkpoint(std::istream& in);

void save_checkpoint(const ParamStore& params, const std::filesystem::path& path);
ParamStore load_checkpoint(const std::filesystem::path& path);

/// Serialized bytes, e.g. for hashing.
std::string checkpoint_bytes(const ParamStore& params);

/// Copies values of `loaded` into the matching parameters of `model`. Every
/// model parameter must be present with an identical shape.
void load_into(ParamStore& model, const ParamStore& loaded);

}  // namespace slp::nn
