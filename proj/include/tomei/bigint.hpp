#ifndef TOMEI_BIGINT_HPP
#define TOMEI_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tomei {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
// Only the operations needed by exact Smith-normal-form elimination are provided.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT: implicit by design

  bool is_zero() const { return limbs_.empty(); }
  int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;

  // Truncated division (C semantics): q = trunc(a/b), r = a - q*b.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;

  // Comparison of absolute values: -1, 0, +1.
  static int cmp_abs(const BigInt& a, const BigInt& b);

  static BigInt gcd(BigInt a, BigInt b);

  bool fits_int64() const;
  long long to_int64() const;  // valid only when fits_int64()
  std::string to_string() const;

 private:
  bool negative_ = false;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zero limb

  void trim();
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
};

}  // namespace tomei

#endif
