#include "qgrass/field.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qgrass {

namespace {

// Fixed reduction polynomials, constant term first.
//   GF(4):  x^2 + x + 1
//   GF(8):  x^3 + x + 1
//   GF(9):  x^2 + 1
//   GF(16): x^4 + x + 1
const std::map<int, std::vector<uint8_t>> kModuli = {
    {4, {1, 1, 1}},
    {8, {1, 1, 0, 1}},
    {9, {1, 0, 1}},
    {16, {1, 1, 0, 0, 1}},
};

std::vector<uint8_t> to_poly(int idx, int p, int e) {
  std::vector<uint8_t> c(e, 0);
  for (int j = 0; j < e; ++j) {
    c[j] = static_cast<uint8_t>(idx % p);
    idx /= p;
  }
  return c;
}

int from_poly(const std::vector<uint8_t>& c, int p) {
  int idx = 0;
  for (size_t j = c.size(); j-- > 0;) idx = idx * p + c[j];
  return idx;
}

// Product of two polynomials over GF(p) reduced by the monic modulus.
std::vector<uint8_t> poly_mul_mod(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b,
                                  const std::vector<uint8_t>& mod, int p) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const int deg = static_cast<int>(mod.size()) - 1;
  for (int d = static_cast<int>(prod.size()) - 1; d >= deg; --d) {
    int c = prod[d];
    if (c == 0) continue;
    // modulus is monic: subtract c * x^(d-deg) * mod
    for (int j = 0; j <= deg; ++j) {
      int idx = d - deg + j;
      prod[idx] = ((prod[idx] - c * mod[j]) % p + p) % p;
    }
  }
  std::vector<uint8_t> out(deg, 0);
  for (int j = 0; j < deg; ++j) out[j] = static_cast<uint8_t>(prod[j]);
  return out;
}

bool poly_is_zero(const std::vector<uint8_t>& a) {
  for (uint8_t c : a)
    if (c) return false;
  return true;
}

// Remainder of a (degree deg_a) by monic divisor m over GF(p); zero iff m | a.
bool divides(const std::vector<uint8_t>& m, std::vector<uint8_t> a, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int d = static_cast<int>(a.size()) - 1; d >= dm; --d) {
    int c = a[d];
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      int idx = d - dm + j;
      a[idx] = static_cast<uint8_t>(((a[idx] - c * m[j]) % p + p) % p);
    }
  }
  a.resize(dm);
  return poly_is_zero(a);
}

// Trial division against every monic polynomial of degree 1..deg-1.
bool is_irreducible(const std::vector<uint8_t>& mod, int p) {
  const int deg = static_cast<int>(mod.size()) - 1;
  if (mod[deg] != 1) return false;
  for (int d = 1; d < deg; ++d) {
    int count = 1;
    for (int j = 0; j < d; ++j) count *= p;  // p^d monic polys of degree d
    for (int idx = 0; idx < count; ++idx) {
      std::vector<uint8_t> div = to_poly(idx, p, d);
      div.push_back(1);
      if (divides(div, mod, p)) return false;
    }
  }
  return true;
}

}  // namespace

bool Field::is_prime_power(long q, long* p_out, long* e_out) {
  if (q < 2) return false;
  long p = 0;
  for (long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  long e = 0;
  long m = q;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return false;
  if (p_out) *p_out = p;
  if (e_out) *e_out = e;
  return true;
}

Field::Field(int q) : q_(q) {
  long p = 0, e = 0;
  if (q < 2 || q > kMaxQ || !is_prime_power(q, &p, &e))
    throw Error(ErrorCode::NotPrimePower, "q must be a prime power in [2, 16], got " + std::to_string(q));
  p_ = static_cast<int>(p);
  e_ = static_cast<int>(e);

  if (e_ == 1) {
    modulus_ = {0, 1};
  } else {
    auto it = kModuli.find(q_);
    QGRASS_CHECK(it != kModuli.end(), "missing modulus table entry");
    modulus_ = it->second;
    QGRASS_CHECK(is_irreducible(modulus_, p_), "reduction polynomial not irreducible");
  }

  for (int a = 0; a < q_; ++a) {
    auto pa = to_poly(a, p_, e_);
    for (int b = 0; b < q_; ++b) {
      auto pb = to_poly(b, p_, e_);
      std::vector<uint8_t> sum(e_);
      for (int j = 0; j < e_; ++j) sum[j] = static_cast<uint8_t>((pa[j] + pb[j]) % p_);
      add_[a * kMaxQ + b] = static_cast<uint8_t>(from_poly(sum, p_));
      mul_[a * kMaxQ + b] = static_cast<uint8_t>(from_poly(poly_mul_mod(pa, pb, modulus_, p_), p_));
    }
  }
  for (int a = 0; a < q_; ++a) {
    for (int b = 0; b < q_; ++b) {
      if (add_[a * kMaxQ + b] == 0) neg_[a] = static_cast<uint8_t>(b);
      if (a != 0 && mul_[a * kMaxQ + b] == 1) inv_[a] = static_cast<uint8_t>(b);
    }
  }
  inv_[0] = 0;  // sentinel
}

const Field& Field::of(int q) {
  static std::mutex mtx;
  static std::map<int, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<Field>(new Field(q))).first;
  return *it->second;
}

int Field::digit_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

}  // namespace qgrass
