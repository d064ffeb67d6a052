#include "manet/topology_codec.hpp"

#include <zlib.h>

#include <stdexcept>

namespace manet {

void BitString::append(bool v) {
  if (n_bits_ % 8 == 0) bytes_.push_back(0);
  ++n_bits_;
  set(n_bits_ - 1, v);
}

void BitString::append(const BitString& other) {
  if (n_bits_ % 8 == 0) {
    // byte-aligned fast path
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    n_bits_ += other.n_bits_;
    return;
  }
  for (std::size_t i = 0; i < other.n_bits_; ++i) append(other.get(i));
}

std::size_t TopologyBitString::pair_index(int i, int j, int n) {
  // row offset: sum over rows < i of (n-1-row)
  return std::size_t(i) * std::size_t(2 * n - i - 1) / 2 + std::size_t(j - i - 1);
}

BitString concat_snapshots(const std::vector<TopologyBitString>& snapshots) {
  BitString out;
  if (snapshots.empty()) return out;
  const int n = snapshots.front().n;
  for (const auto& s : snapshots) {
    if (s.n != n) throw std::invalid_argument("concat_snapshots: mismatched node counts");
    out.append(s.bits);
  }
  return out;
}

namespace {

std::vector<std::uint8_t> deflate_compress(const std::vector<std::uint8_t>& data) {
  uLongf bound = compressBound(uLong(data.size()));
  std::vector<std::uint8_t> out(bound);
  const int rc = compress2(out.data(), &bound, data.data(), uLong(data.size()),
                           Z_BEST_COMPRESSION);
  if (rc != Z_OK) throw std::runtime_error("deflate: compress2 failed");
  out.resize(bound);
  return out;
}

std::vector<std::uint8_t> deflate_decompress(const std::vector<std::uint8_t>& data,
                                             std::size_t original_size) {
  std::vector<std::uint8_t> out(original_size);
  uLongf len = uLongf(original_size);
  const int rc = uncompress(out.data(), &len, data.data(), uLong(data.size()));
  if (rc != Z_OK || len != original_size)
    throw std::runtime_error("deflate: uncompress failed");
  return out;
}

// (count, value) pairs, count in 1..255
std::vector<std::uint8_t> rle_compress(const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < data.size()) {
    const std::uint8_t v = data[i];
    std::size_t run = 1;
    while (i + run < data.size() && data[i + run] == v && run < 255) ++run;
    out.push_back(std::uint8_t(run));
    out.push_back(v);
    i += run;
  }
  return out;
}

std::vector<std::uint8_t> rle_decompress(const std::vector<std::uint8_t>& data,
                                         std::size_t original_size) {
  if (data.size() % 2 != 0) throw std::runtime_error("rle: truncated stream");
  std::vector<std::uint8_t> out;
  out.reserve(original_size);
  for (std::size_t i = 0; i < data.size(); i += 2) {
    const std::size_t run = data[i];
    if (run == 0) throw std::runtime_error("rle: zero-length run");
    out.insert(out.end(), run, data[i + 1]);
  }
  if (out.size() != original_size) throw std::runtime_error("rle: size mismatch");
  return out;
}

}  // namespace

std::vector<std::string> codec_names() { return {"deflate", "rle"}; }

std::vector<std::uint8_t> compress_bytes(const std::string& codec,
                                         const std::vector<std::uint8_t>& data) {
  if (codec == "deflate") return deflate_compress(data);
  if (codec == "rle") return rle_compress(data);
  throw std::invalid_argument("unknown codec: " + codec);
}

std::vector<std::uint8_t> decompress_bytes(const std::string& codec,
                                           const std::vector<std::uint8_t>& data,
                                           std::size_t original_size) {
  if (codec == "deflate") return deflate_decompress(data, original_size);
  if (codec == "rle") return rle_decompress(data, original_size);
  throw std::invalid_argument("unknown codec: " + codec);
}

CompressionScore inverse_compression_ratio(const BitString& bits, const std::string& codec) {
  if (bits.empty()) throw std::invalid_argument("inverse_compression_ratio: empty input");
  const auto compressed = compress_bytes(codec, bits.bytes());

  CompressionScore score;
  score.original_bits = bits.size();
  score.compressed_bits = compressed.size() * 8;
  score.inverse_ratio = double(score.compressed_bits) / double(score.original_bits);
  return score;
}

}  // namespace manet
