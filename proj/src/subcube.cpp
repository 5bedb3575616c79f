#include "rsig/subcube.hpp"

#include <bit>

namespace rsig {

namespace {

void require_same_d(int a, int b, const char* op) {
  if (a != b) throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

}  // namespace

int BitVec::popcount() const {
  int c = 0;
  for (std::uint64_t w : w_) c += std::popcount(w);
  return c;
}

void BitVec::erase_bit(int i) {
  if (i < 0 || i >= nbits_) throw std::out_of_range("BitVec::erase_bit");
  const std::size_t wi = static_cast<std::size_t>(i) >> 6;
  const int bi = i & 63;
  const std::uint64_t low = w_[wi] & ((std::uint64_t{1} << bi) - 1);
  std::uint64_t high = (bi == 63) ? 0 : (w_[wi] >> (bi + 1)) << bi;
  w_[wi] = low | high;
  for (std::size_t k = wi; k + 1 < w_.size(); ++k) {
    w_[k] |= w_[k + 1] << 63;
    w_[k + 1] >>= 1;
  }
  --nbits_;
  w_.resize(words_for(nbits_));
  if (!w_.empty() && (nbits_ & 63) != 0)
    w_.back() &= (std::uint64_t{1} << (nbits_ & 63)) - 1;
}

std::string PointQd::to_string() const {
  std::string s(static_cast<std::size_t>(d()), '0');
  for (int i = 0; i < d(); ++i)
    if (bits.get(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

PointQd PointQd::parse(std::string_view text) {
  PointQd y(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      y.bits.set(static_cast<int>(i), true);
    else if (text[i] != '0')
      throw std::invalid_argument("PointQd::parse: expected 0 or 1");
  }
  return y;
}

Subcube::Subcube(BitVec fixed, BitVec value) : fixed_(std::move(fixed)), value_(std::move(value)) {
  require_same_d(fixed_.size(), value_.size(), "Subcube");
  for (std::size_t k = 0; k < value_.word_count(); ++k)
    value_.words()[k] &= fixed_.words()[k];
}

std::string Subcube::to_string() const {
  std::string s(static_cast<std::size_t>(d()), '*');
  for (int i = 0; i < d(); ++i)
    if (fixed_.get(i)) s[static_cast<std::size_t>(i)] = value_.get(i) ? '1' : '0';
  return s;
}

Subcube Subcube::parse(std::string_view text) {
  // Count coordinates first: the UTF-8 star is three bytes.
  static constexpr std::string_view kUtf8Star = "\xe2\x8b\x86";
  std::vector<char> symbols;
  symbols.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '0' || text[i] == '1' || text[i] == '*') {
      symbols.push_back(text[i]);
      ++i;
    } else if (text.substr(i, 3) == kUtf8Star) {
      symbols.push_back('*');
      i += 3;
    } else {
      throw std::invalid_argument("Subcube::parse: expected 0, 1 or *");
    }
  }
  Subcube s(static_cast<int>(symbols.size()));
  for (std::size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] != '*') s.fix(static_cast<int>(i), symbols[i] == '1');
  return s;
}

bool intersects(const Subcube& a, const Subcube& b) {
  require_same_d(a.d(), b.d(), "intersects");
  const std::uint64_t* af = a.fixed_mask().words();
  const std::uint64_t* av = a.values().words();
  const std::uint64_t* bf = b.fixed_mask().words();
  const std::uint64_t* bv = b.values().words();
  for (std::size_t k = 0; k < a.fixed_mask().word_count(); ++k)
    if ((av[k] ^ bv[k]) & af[k] & bf[k]) return false;
  return true;
}

std::optional<Subcube> intersection(const Subcube& a, const Subcube& b) {
  if (!intersects(a, b)) return std::nullopt;
  BitVec fixed(a.d()), value(a.d());
  for (std::size_t k = 0; k < fixed.word_count(); ++k) {
    fixed.words()[k] = a.fixed_mask().words()[k] | b.fixed_mask().words()[k];
    value.words()[k] = a.values().words()[k] | b.values().words()[k];
  }
  return Subcube(std::move(fixed), std::move(value));
}

bool contains_point(const Subcube& a, const PointQd& y) {
  require_same_d(a.d(), y.d(), "contains_point");
  for (std::size_t k = 0; k < a.fixed_mask().word_count(); ++k)
    if ((a.values().words()[k] ^ y.bits.words()[k]) & a.fixed_mask().words()[k]) return false;
  return true;
}

std::optional<Subcube> restrict(const Subcube& a, int coord, bool bit) {
  if (coord < 0 || coord >= a.d()) throw std::out_of_range("restrict: coord out of range");
  if (a.is_fixed(coord) && a.fixed_value(coord) != bit) return std::nullopt;
  BitVec fixed = a.fixed_mask();
  BitVec value = a.values();
  fixed.erase_bit(coord);
  value.erase_bit(coord);
  return Subcube(std::move(fixed), std::move(value));
}

int hamming_distance(const PointQd& y, const PointQd& z) {
  require_same_d(y.d(), z.d(), "hamming_distance");
  int c = 0;
  for (std::size_t k = 0; k < y.bits.word_count(); ++k)
    c += std::popcount(y.bits.words()[k] ^ z.bits.words()[k]);
  return c;
}

}  // namespace rsig
