#pragma once

#include "nrep/arith.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nrep {

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t pos, const std::string& what)
      : std::invalid_argument("syntax error at position " + std::to_string(pos) + ": " + what),
        position(pos) {}
  std::size_t position;
};

namespace detail {

using IntPoly = std::vector<long long>;  // low degree first

inline IntPoly compute_cyclotomic(int n) {
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long long d : divisors(n)) {
    if (d == n) continue;
    IntPoly q = compute_cyclotomic(static_cast<int>(d));
    // exact division of p by the monic q
    int dq = static_cast<int>(q.size()) - 1;
    int dp = static_cast<int>(p.size()) - 1;
    IntPoly quot(dp - dq + 1, 0);
    for (int k = dp; k >= dq; --k) {
      long long t = p[k];
      quot[k - dq] = t;
      if (t == 0) continue;
      for (int j = 0; j <= dq; ++j) p[k - dq + j] -= t * q[j];
    }
    p = std::move(quot);
  }
  return p;
}

inline const IntPoly& cyclotomic(int n) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  return cache.emplace(n, compute_cyclotomic(n)).first->second;
}

using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// r := a mod b, q := a div b over Q[x]; b nonzero and trimmed
inline void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  while (r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    mpq_class t = r.back() / b.back();
    q[shift] = t;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= t * b[j];
    trim(r);
  }
}

}  // namespace detail

struct RootOfUnity {
  long long order;
  long long exponent;  // value is zeta_order^exponent, gcd(exponent, order) = 1
  bool operator==(const RootOfUnity&) const = default;
};

/// Element of Q(zeta_N) stored as numerator coefficients over a common denominator,
/// reduced modulo the N-th cyclotomic polynomial.
class CycNum {
 public:
  CycNum() : CycNum(1) {}
  explicit CycNum(int level) : level_(check_level(level)), num_(phi(level)), den_(1) {}
  CycNum(int level, const mpq_class& r) : CycNum(level) {
    num_[0] = r.get_num();
    den_ = r.get_den();
  }
  CycNum(int level, long long r) : CycNum(level, mpq_class(static_cast<long>(r))) {}

  /// zeta_n^k, represented at level lcm(n, level).
  static CycNum zeta(long long n, long long k = 1, int level = 1) {
    if (n <= 0) throw std::invalid_argument("root of unity order must be positive");
    int L = static_cast<int>(lcm_ll(n, level));
    long long e = mod_floor(k, n) * (L / n);
    return monomial(L, e);
  }

  /// c * z^e at the given level, e taken modulo the level.
  static CycNum monomial(int level, long long e, const mpq_class& c = 1) {
    check_level(level);
    e = mod_floor(e, level);
    std::vector<mpz_class> raw(static_cast<std::size_t>(e) + 1);
    raw[e] = c.get_num();
    return from_raw(level, std::move(raw), c.get_den());
  }

  /// Reduces an arbitrary rational polynomial in z (low degree first) modulo Phi_level.
  static CycNum from_poly(int level, std::span<const mpq_class> coeffs) {
    mpz_class den = 1;
    for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> raw(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      raw[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    return from_raw(level, std::move(raw), den);
  }

  int level() const { return level_; }
  std::size_t degree() const { return num_.size(); }
  mpq_class coeff(std::size_t i) const {
    mpq_class r(num_.at(i), den_);
    r.canonicalize();
    return r;
  }
  std::vector<mpq_class> coeffs() const {
    std::vector<mpq_class> out;
    for (std::size_t i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
    return out;
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
  }
  bool is_rational() const {
    return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
  }
  bool is_one() const { return is_rational() && num_[0] == 1 && den_ == 1; }

  /// Same value at a multiple of the current level.
  CycNum at_level(int L) const {
    if (L == level_) return *this;
    if (L <= 0 || L % level_ != 0)
      throw std::invalid_argument("target level " + std::to_string(L) + " is not a multiple of " +
                                  std::to_string(level_));
    int step = L / level_;
    std::vector<mpz_class> raw(num_.size() == 0 ? 1 : (num_.size() - 1) * step + 1);
    for (std::size_t i = 0; i < num_.size(); ++i) raw[i * step] = num_[i];
    return from_raw(L, std::move(raw), den_);
  }

  friend CycNum operator+(const CycNum& a, const CycNum& b) { return combine(a, b, 1); }
  friend CycNum operator-(const CycNum& a, const CycNum& b) { return combine(a, b, -1); }
  CycNum operator-() const {
    CycNum r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }
  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (a.level_ != b.level_) {
      int L = static_cast<int>(lcm_ll(a.level_, b.level_));
      return a.at_level(L) * b.at_level(L);
    }
    if (a.is_zero() || b.is_zero()) return CycNum(a.level_);
    if (a.is_rational() && b.is_rational()) {
      CycNum r(a.level_);
      r.num_[0] = a.num_[0] * b.num_[0];
      r.den_ = a.den_ * b.den_;
      r.normalize();
      return r;
    }
    std::size_t n = a.num_.size();
    std::vector<mpz_class> raw(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.num_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b.num_[j] != 0) raw[i + j] += a.num_[i] * b.num_[j];
    }
    return from_raw(a.level_, std::move(raw), a.den_ * b.den_);
  }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.level_ == b.level_) return a.den_ == b.den_ && a.num_ == b.num_;
    int L = static_cast<int>(lcm_ll(a.level_, b.level_));
    return a.at_level(L) == b.at_level(L);
  }

  CycNum inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    if (is_rational()) return CycNum(level_, 1 / coeff(0));
    const auto& phi_poly = detail::cyclotomic(level_);
    detail::QPoly r0, r1 = coeffs();
    for (long long c : phi_poly) r0.emplace_back(static_cast<long>(c));
    detail::trim(r1);
    detail::QPoly s0{0}, s1{1}, q, r;
    while (!r1.empty()) {
      detail::divmod(r0, r1, q, r);
      detail::QPoly s = s0;
      s.resize(std::max(s0.size(), q.size() + s1.size() - 1), 0);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
      detail::trim(s);
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    // r0 is a nonzero constant because Phi is irreducible
    for (auto& c : s0) c /= r0[0];
    return from_poly(level_, s0);
  }

  CycNum pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum result(level_, 1), base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Field automorphism z -> z^d, gcd(d, level) = 1.
  CycNum galois(long long d) const {
    if (std::gcd(mod_floor(d, level_), static_cast<long long>(level_)) != 1)
      throw std::invalid_argument("galois_map: exponent " + std::to_string(d) +
                                  " is not a unit modulo " + std::to_string(level_));
    d = mod_floor(d, level_);
    std::vector<mpz_class> raw(level_);
    for (std::size_t i = 0; i < num_.size(); ++i)
      if (num_[i] != 0) raw[(i * d) % level_] += num_[i];
    return from_raw(level_, std::move(raw), den_);
  }

  /// Detects whether the value is a root of unity; exponents are searched up to 6*level.
  std::optional<RootOfUnity> as_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    if (!is_rational()) {
      // quick rejection: roots of unity are algebraic integers
      if (den_ != 1) return std::nullopt;
    }
    for (long long n : divisors(6LL * level_)) {
      if (!pow(n).is_one()) continue;
      int L = static_cast<int>(lcm_ll(level_, n));
      CycNum self = at_level(L);
      for (long long k = 0; k < n; ++k) {
        if (std::gcd(k, n) != 1 && !(n == 1 && k == 0)) continue;
        if (monomial(L, k * (L / n)) == self) return RootOfUnity{n, k};
      }
    }
    return std::nullopt;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t ii = num_.size(); ii-- > 0;) {
      if (num_[ii] == 0) continue;
      mpq_class c = coeff(ii);
      bool neg = c < 0;
      if (neg) c = -c;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string mono = ii == 0 ? "" : ii == 1 ? "z" : "z^" + std::to_string(ii);
      if (mono.empty())
        out += c.get_str();
      else if (c == 1)
        out += mono;
      else
        out += c.get_str() + "*" + mono;
    }
    return out;
  }

  /// Parses a signed sum of terms `c`, `c*z^k`, `z^k`, `c*z`, `z` where c is an integer or p/q.
  static CycNum parse(std::string_view s, int level) {
    check_level(level);
    std::size_t i = 0;
    auto skip = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_uint = [&](const char* what) {
      skip();
      std::size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (start == i) throw ParseError(start, std::string("expected ") + what);
      return mpz_class(std::string(s.substr(start, i - start)));
    };
    std::map<long long, mpq_class> terms;
    skip();
    if (i == s.size()) throw ParseError(i, "empty expression");
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (!first) {
        throw ParseError(i, "expected '+' or '-'");
      }
      first = false;
      skip();
      mpq_class coef = 1;
      bool have_num = false;
      if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        mpz_class p = read_uint("integer");
        mpz_class q = 1;
        skip();
        if (i < s.size() && s[i] == '/') {
          ++i;
          std::size_t at = i;
          q = read_uint("denominator");
          if (q == 0) throw ParseError(at, "zero denominator");
        }
        coef = mpq_class(p, q);
        coef.canonicalize();
        have_num = true;
        skip();
        if (i < s.size() && s[i] == '*') {
          ++i;
          skip();
          if (i >= s.size() || s[i] != 'z') throw ParseError(i, "expected 'z' after '*'");
        }
      }
      long long k = 0;
      skip();
      if (i < s.size() && s[i] == 'z') {
        ++i;
        k = 1;
        skip();
        if (i < s.size() && s[i] == '^') {
          ++i;
          skip();
          if (i < s.size() && s[i] == '-') throw ParseError(i, "negative exponent");
          std::size_t at = i;
          mpz_class e = read_uint("exponent");
          if (!e.fits_slong_p()) throw ParseError(at, "exponent too large");
          k = e.get_si();
        }
      } else if (!have_num) {
        throw ParseError(i, i < s.size() ? std::string("unexpected character '") + s[i] + "'"
                                         : std::string("unexpected end of input"));
      }
      terms[mod_floor(k, level)] += sign * coef;
      skip();
      if (i == s.size()) break;
    }
    std::vector<mpq_class> raw(terms.empty() ? 1 : terms.rbegin()->first + 1);
    for (auto& [e, c] : terms) raw[e] = c;
    return from_poly(level, raw);
  }

  std::size_t hash() const {
    std::size_t h = hash_mpz(den_);
    for (const auto& c : num_) hash_combine(h, hash_mpz(c));
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& a) { return os << a.str(); }

 private:
  static int check_level(int level) {
    if (level < 1) throw std::invalid_argument("cyclotomic level must be positive");
    return level;
  }
  static std::size_t phi(int level) { return static_cast<std::size_t>(euler_phi(level)); }

  static CycNum from_raw(int level, std::vector<mpz_class> raw, mpz_class den) {
    const auto& f = detail::cyclotomic(level);
    std::size_t d = f.size() - 1;
    for (std::size_t k = raw.size(); k-- > d;) {
      if (raw[k] == 0) continue;
      mpz_class t = raw[k];
      for (std::size_t j = 0; j <= d; ++j)
        if (f[j] != 0) raw[k - d + j] -= t * static_cast<long>(f[j]);
    }
    raw.resize(d);
    CycNum r(level);
    r.num_ = std::move(raw);
    r.den_ = std::move(den);
    r.normalize();
    return r;
  }

  static CycNum combine(const CycNum& a, const CycNum& b, int sign) {
    if (a.level_ != b.level_) {
      int L = static_cast<int>(lcm_ll(a.level_, b.level_));
      return combine(a.at_level(L), b.at_level(L), sign);
    }
    CycNum r(a.level_);
    if (a.den_ == b.den_) {
      for (std::size_t i = 0; i < r.num_.size(); ++i) {
        if (sign > 0)
          r.num_[i] = a.num_[i] + b.num_[i];
        else
          r.num_[i] = a.num_[i] - b.num_[i];
      }
      r.den_ = a.den_;
    } else {
      for (std::size_t i = 0; i < r.num_.size(); ++i) {
        if (sign > 0)
          r.num_[i] = a.num_[i] * b.den_ + b.num_[i] * a.den_;
        else
          r.num_[i] = a.num_[i] * b.den_ - b.num_[i] * a.den_;
      }
      r.den_ = a.den_ * b.den_;
    }
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& c : num_) {
      if (c == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) return;
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }

  int level_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

inline std::string format(const CycNum& a) { return a.str(); }
inline CycNum parse_cyc(std::string_view s, int level) { return CycNum::parse(s, level); }

}  // namespace nrep

template <>
struct std::hash<nrep::CycNum> {
  std::size_t operator()(const nrep::CycNum& a) const { return a.hash(); }
};
