#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <vector>

#include "qgrass/error.hpp"

namespace qgrass {

// GF(q) for prime powers q <= 16, all arithmetic through precomputed tables.
//
// Element i encodes the polynomial c0 + c1*x + ... over GF(p) with
// i = sum c_j * p^j, so 0 is the additive and 1 the multiplicative identity.
// The reduction modulus per q is fixed (see moduli in field.cpp) so element
// indices are stable across runs and machines.
class Field {
 public:
  static constexpr int kMaxQ = 16;

  // Cached immutable instance; safe for unrestricted concurrent use.
  static const Field& of(int q);

  // True iff q = p^e with p prime, e >= 1 (no upper cap). Outputs optional.
  static bool is_prime_power(long q, long* p_out = nullptr, long* e_out = nullptr);

  int q() const { return q_; }
  int p() const { return p_; }
  int e() const { return e_; }
  // Coefficients of the reduction polynomial, constant term first, length e+1.
  // For prime fields this is {0, 1} (the polynomial x).
  const std::vector<uint8_t>& modulus() const { return modulus_; }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * kMaxQ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * kMaxQ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * kMaxQ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const {
    assert(a != 0 && a < q_);
    return inv_[a];
  }
  uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

  // Raw tables (q x q row-major; inv[0] is a 0 sentinel).
  const uint8_t* add_table() const { return add_.data(); }
  const uint8_t* mul_table() const { return mul_.data(); }
  const uint8_t* inv_table() const { return inv_.data(); }

  // Single lowercase base-16 digit of the element index.
  static char digit(uint8_t a) { return "0123456789abcdef"[a]; }
  // -1 if ch is not a base-16 digit.
  static int digit_value(char ch);

  bool operator==(const Field& o) const { return q_ == o.q_; }

 private:
  explicit Field(int q);

  int q_, p_, e_;
  std::vector<uint8_t> modulus_;
  std::array<uint8_t, kMaxQ * kMaxQ> add_{};
  std::array<uint8_t, kMaxQ * kMaxQ> mul_{};
  std::array<uint8_t, kMaxQ> inv_{};
  std::array<uint8_t, kMaxQ> neg_{};
};

// Constructor-style entry point: validates q and returns the cached instance.
inline const Field& field_make(int q) { return Field::of(q); }

}  // namespace qgrass
