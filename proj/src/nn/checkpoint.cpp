#include "slp/nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace slp::nn {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return true;
}

std::string shape_text(const std::vector<std::int64_t>& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

}  // namespace

void write_checkpoint(std::ostream& out, const ParamStore& params) {
  out.write(kCheckpointMagic, 8);
  for (const auto& [name, t] : params) {
    put_u64(out, name.size());
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u64(out, t.shape().size());
    for (auto d : t.shape()) put_u64(out, static_cast<std::uint64_t>(d));
    const double* v = t.value().data();
    for (Index i = 0; i < t.numel(); ++i) put_u64(out, std::bit_cast<std::uint64_t>(v[i]));
  }
}

ParamStore read_checkpoint(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kCheckpointMagic, 8) != 0)
    throw FormatError("not a SGNCKPT1 checkpoint (bad magic)");
  ParamStore store;
  while (true) {
    std::uint64_t name_len = 0;
    if (!get_u64(in, name_len)) {
      if (in.gcount() == 0) break;  // clean EOF between records
      throw FormatError("truncated checkpoint");
    }
    if (name_len > (1u << 20)) throw FormatError("implausible parameter name length");
    std::string name(name_len, '\0');
    std::uint64_t rank = 0;
    if (!in.read(name.data(), static_cast<std::streamsize>(name_len)) || !get_u64(in, rank) || rank > 8)
      throw FormatError("truncated checkpoint");
    std::vector<std::int64_t> shape;
    std::uint64_t count = 1;
    for (std::uint64_t r = 0; r < rank; ++r) {
      std::uint64_t d = 0;
      if (!get_u64(in, d)) throw FormatError("truncated checkpoint");
      shape.push_back(static_cast<std::int64_t>(d));
      count *= d;
    }
    if (count > (1ull << 32)) throw FormatError("implausible parameter size");
    const Index cols = shape.empty() ? 1 : shape.back();
    const Index rows = cols == 0 ? 0 : static_cast<Index>(count) / cols;
    Matrix value(rows, cols);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint64_t bits = 0;
      if (!get_u64(in, bits)) throw FormatError("truncated checkpoint in '" + name + "'");
      value.data()[i] = std::bit_cast<double>(bits);
    }
    store.add(name, std::move(value), shape);
  }
  return store;
}

void save_checkpoint(const ParamStore& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_checkpoint(out, params);
  if (!out) throw IoError("write failed: " + path.string());
}

ParamStore load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_checkpoint(in);
}

std::string checkpoint_bytes(const ParamStore& params) {
  std::ostringstream out(std::ios::binary);
  write_checkpoint(out, params);
  return out.str();
}

void load_into(ParamStore& model, const ParamStore& loaded) {
  for (auto& [name, t] : model) {
    if (!loaded.contains(name)) throw ShapeError("checkpoint lacks parameter '" + name + "'");
    const Tensor& src = loaded.at(name);
    if (src.shape() != t.shape())
      throw ShapeError("shape mismatch for parameter '" + name + "': model " + shape_text(t.shape()) +
                       ", checkpoint " + shape_text(src.shape()));
    t.mutable_value() = src.value();
  }
}

}  // namespace slp::nn
