#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace manet {

// Packed bit sequence, MSB-first within each byte.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n_bits) : n_bits_(n_bits), bytes_((n_bits + 7) / 8, 0) {}

  std::size_t size() const { return n_bits_; }
  bool empty() const { return n_bits_ == 0; }

  bool get(std::size_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1; }
  void set(std::size_t i, bool v) {
    const std::uint8_t mask = std::uint8_t(1) << (7 - (i & 7));
    if (v)
      bytes_[i >> 3] |= mask;
    else
      bytes_[i >> 3] &= std::uint8_t(~mask);
  }

  void append(bool v);
  void append(const BitString& other);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  bool operator==(const BitString&) const = default;

 private:
  std::size_t n_bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// Adjacency snapshot over the C(n,2) unordered pairs in lexicographic order
// (0,1),(0,2),...,(n-2,n-1).
struct TopologyBitString {
  int n = 0;
  BitString bits;

  static std::size_t bit_count(int n) {
    return std::size_t(n) * std::size_t(n - 1) / 2;
  }
  // index of pair (i,j), i < j
  static std::size_t pair_index(int i, int j, int n);
};

// Snapshots joined in tick order, no padding between them. Throws on mismatched n.
BitString concat_snapshots(const std::vector<TopologyBitString>& snapshots);

struct CompressionScore {
  std::size_t original_bits = 0;
  std::size_t compressed_bits = 0;
  double inverse_ratio = 0.0;  // compressed / original
};

// Named deterministic lossless codecs.
//   "deflate"  zlib at maximum effort
//   "rle"      byte-level run-length coding
std::vector<std::string> codec_names();
std::vector<std::uint8_t> compress_bytes(const std::string& codec,
                                         const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> decompress_bytes(const std::string& codec,
                                           const std::vector<std::uint8_t>& data,
                                           std::size_t original_size);

CompressionScore inverse_compression_ratio(const BitString& bits,
                                           const std::string& codec = "deflate");

}  // namespace manet
