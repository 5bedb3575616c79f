#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rsig {

/// Number of 64-bit words needed to hold `nbits` bits.
constexpr std::size_t words_for(int nbits) {
  return (static_cast<std::size_t>(nbits) + 63) / 64;
}

/// Fixed-length bit vector backed by 64-bit words, coordinate 0 = bit 0 of
/// word 0. Bits above `size()` are kept zero so equality is plain word
/// equality.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int nbits) : nbits_(nbits), w_(words_for(nbits), 0) {
    if (nbits < 0) throw std::invalid_argument("BitVec: negative size");
  }

  int size() const { return nbits_; }

  bool get(int i) const { return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }

  void set(int i, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (v)
      w_[static_cast<std::size_t>(i) >> 6] |= bit;
    else
      w_[static_cast<std::size_t>(i) >> 6] &= ~bit;
  }

  int popcount() const;

  /// Removes bit `i`, shifting all higher bits down by one. Shrinks size by 1.
  void erase_bit(int i);

  const std::uint64_t* words() const { return w_.data(); }
  std::uint64_t* words() { return w_.data(); }
  std::size_t word_count() const { return w_.size(); }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  int nbits_ = 0;
  std::vector<std::uint64_t> w_;
};

/// A point of the hypercube Q_d.
struct PointQd {
  BitVec bits;

  PointQd() = default;
  explicit PointQd(int d) : bits(d) {}

  int d() const { return bits.size(); }

  std::string to_string() const;
  static PointQd parse(std::string_view text);

  friend bool operator==(const PointQd&, const PointQd&) = default;
};

/// A subcube of Q_d, i.e. an element of {0,1,*}^d. Coordinate i is fixed iff
/// bit i of `fixed` is set; `value` holds the fixed bit and is zero on free
/// coordinates (canonical form, so equality is bitwise).
class Subcube {
 public:
  Subcube() = default;

  /// The full cube *^d.
  explicit Subcube(int d) : fixed_(d), value_(d) {}

  /// Builds from masks; `value` bits on free coordinates are cleared.
  Subcube(BitVec fixed, BitVec value);

  int d() const { return fixed_.size(); }

  /// Number of free coordinates; the subcube has 2^dimension points.
  int dimension() const { return d() - fixed_.popcount(); }
  int volume_log2() const { return dimension(); }

  bool is_fixed(int coord) const { return fixed_.get(coord); }
  bool fixed_value(int coord) const { return value_.get(coord); }

  /// Fixes `coord` to `bit`.
  void fix(int coord, bool bit) {
    fixed_.set(coord, true);
    value_.set(coord, bit);
  }

  /// Frees `coord` (makes it a * coordinate).
  void free(int coord) {
    fixed_.set(coord, false);
    value_.set(coord, false);
  }

  const BitVec& fixed_mask() const { return fixed_; }
  const BitVec& values() const { return value_; }

  std::string to_string() const;

  /// Parses a {0,1,*} string; both '*' and the UTF-8 star U+22C6 are accepted.
  static Subcube parse(std::string_view text);

  friend bool operator==(const Subcube&, const Subcube&) = default;

 private:
  BitVec fixed_;
  BitVec value_;
};

/// True iff the two subcubes share a point: no coordinate fixed in both with
/// differing values. Throws on dimension mismatch.
bool intersects(const Subcube& a, const Subcube& b);

/// The intersection subcube, or nullopt when disjoint.
std::optional<Subcube> intersection(const Subcube& a, const Subcube& b);

/// True iff y lies in a.
bool contains_point(const Subcube& a, const PointQd& y);

/// The trace of `a` on the half-cube {y : y_coord = bit}, with coordinate
/// `coord` removed (ambient dimension d-1). Empty when `a` fixes the
/// coordinate to the other bit.
std::optional<Subcube> restrict(const Subcube& a, int coord, bool bit);

/// Number of coordinates in which y and z differ.
int hamming_distance(const PointQd& y, const PointQd& z);

}  // namespace rsig
