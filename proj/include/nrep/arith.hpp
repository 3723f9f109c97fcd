#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace nrep {

/// Raised when a group enumeration exceeds its element cap.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("group enumeration exceeded cap of " + std::to_string(cap) +
                           " elements (group may be infinite)") {}
};

inline constexpr std::size_t kDefaultCap = 20000;

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline std::vector<long long> divisors(long long n) {
  std::vector<long long> lo, hi;
  if (n < 0) n = -n;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

inline std::map<long long, int> factorize(long long n) {
  std::map<long long, int> f;
  if (n < 0) n = -n;
  for (long long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

inline long long euler_phi(long long n) {
  long long r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline bool is_power_of(long long n, long long p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<long long, long long, long long> ext_gcd(long long a, long long b) {
  long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  if (mpz_size(z.get_mpz_t()) > 0) hash_combine(h, mpz_getlimbn(z.get_mpz_t(), 0));
  return h;
}

inline mpz_class to_z(long long x) { return mpz_class(static_cast<long>(x)); }

inline long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

}  // namespace nrep
