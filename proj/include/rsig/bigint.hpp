#pragma once

#include <gmp.h>

#include <cstdint>
#include <string>
#include <utility>

namespace rsig {

/// Minimal arbitrary-precision unsigned counter over GMP. Covers what the
/// exact counting code needs: accumulate powers of two and compare.
class UBig {
 public:
  UBig() { mpz_init(z_); }
  explicit UBig(std::uint64_t v) {
    mpz_init(z_);
    mpz_set_ui(z_, v);
  }
  UBig(const UBig& o) { mpz_init_set(z_, o.z_); }
  UBig(UBig&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  UBig& operator=(UBig o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~UBig() { mpz_clear(z_); }

  static UBig pow2(unsigned k) {
    UBig r;
    mpz_setbit(r.z_, k);
    return r;
  }

  void add_pow2(unsigned k) {
    UBig t = pow2(k);
    mpz_add(z_, z_, t.z_);
  }

  UBig& operator+=(const UBig& o) {
    mpz_add(z_, z_, o.z_);
    return *this;
  }

  friend UBig operator+(UBig a, const UBig& b) {
    a += b;
    return a;
  }

  bool is_zero() const { return mpz_sgn(z_) == 0; }

  friend bool operator==(const UBig& a, const UBig& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend bool operator!=(const UBig& a, const UBig& b) { return !(a == b); }
  friend bool operator<(const UBig& a, const UBig& b) { return mpz_cmp(a.z_, b.z_) < 0; }
  friend bool operator<=(const UBig& a, const UBig& b) { return mpz_cmp(a.z_, b.z_) <= 0; }

  friend bool operator==(const UBig& a, std::uint64_t b) { return mpz_cmp_ui(a.z_, b) == 0; }

  std::string to_string() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string out(s);
    void (*freefn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }

 private:
  mpz_t z_;
};

}  // namespace rsig
