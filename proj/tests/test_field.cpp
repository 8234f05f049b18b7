#include <doctest.h>

#include "qgrass/field.hpp"

using namespace qgrass;

namespace {

// independent oracle: multiply coefficient polynomials over GF(p) and reduce
// by the field's modulus, working digit by digit
int poly_mul_oracle(const Field& f, int a, int b) {
  int p = f.p(), e = f.e();
  std::vector<int> pa(e), pb(e);
  for (int j = 0; j < e; ++j, a /= p) pa[j] = a % p;
  for (int j = 0; j < e; ++j, b /= p) pb[j] = b % p;
  std::vector<int> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p;
  const auto& mod = f.modulus();
  for (int d = 2 * e - 2; d >= e; --d) {
    int c = prod[d];
    if (!c) continue;
    for (int j = 0; j <= e; ++j)
      prod[d - e + j] = ((prod[d - e + j] - c * mod[j]) % p + p) % p;
  }
  int idx = 0;
  for (int j = e - 1; j >= 0; --j) idx = idx * p + prod[j];
  return idx;
}

}  // namespace

TEST_CASE("prime powers up to 16") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) CHECK(Field::is_prime_power(q));
  for (int q : {0, 1, 6, 10, 12, 14, 15}) CHECK_FALSE(Field::is_prime_power(q));
  CHECK(Field::is_prime_power(32));
  CHECK(Field::is_prime_power(27));
  CHECK_FALSE(Field::is_prime_power(36));
}

TEST_CASE("field_make rejects non prime powers and oversize q") {
  CHECK_THROWS_AS(field_make(6), Error);
  CHECK_THROWS_AS(field_make(1), Error);
  CHECK_THROWS_AS(field_make(32), Error);
  try {
    field_make(6);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrimePower);
  }
}

TEST_CASE("GF(2) and prime field tables") {
  const Field& f2 = field_make(2);
  CHECK(f2.add(0, 1) == 1);
  CHECK(f2.mul(1, 1) == 1);
  const Field& f3 = field_make(3);
  CHECK(f3.add(1, 2) == 0);
  const Field& f5 = field_make(5);
  CHECK(f5.inv(2) == 3);
}

TEST_CASE("GF(4) extension arithmetic") {
  const Field& f = field_make(4);
  CHECK(f.modulus() == std::vector<uint8_t>{1, 1, 1});  // x^2+x+1
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.add(2, 3) == 1);
}

TEST_CASE("extension fields match the polynomial oracle") {
  for (int q : {4, 8, 9, 16}) {
    const Field& f = field_make(q);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) CHECK(f.mul(a, b) == poly_mul_oracle(f, a, b));
  }
}

TEST_CASE("field axioms hold exhaustively") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    const Field& f = field_make(q);
    CHECK(f.q() == q);
    for (int a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("digit serialization") {
  CHECK(Field::digit(0) == '0');
  CHECK(Field::digit(10) == 'a');
  CHECK(Field::digit(15) == 'f');
  CHECK(Field::digit_value('b') == 11);
  CHECK(Field::digit_value('z') == -1);
  for (int v = 0; v < 16; ++v) CHECK(Field::digit_value(Field::digit(v)) == v);
}
