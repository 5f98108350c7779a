#pragma once
// Shared scalar types and error taxonomy.
//
// All exact arithmetic is GMP-backed: Int (arbitrary-precision integer) and
// Rat (canonical rational).  Error classes mirror the CLI exit codes:
// data-shaped problems (StructuralError, DomainError, DataError, NotVirtualError)
// map to exit 2, CapacityError to exit 3, InternalInconsistencyError to exit 4.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knutson {

using Int = mpz_class;
using Rat = mpq_class;

// Malformed object shapes: mismatched orders/dimensions, non-homomorphic maps.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& msg) : std::runtime_error("structural error: " + msg) {}
};

// Mathematically inadmissible arguments (gcd conditions, bad parameters).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error("domain error: " + msg) {}
};

// Resource limits: group order caps, ring basis caps.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error("capacity error: " + msg) {}
};

// Unreadable or inconsistent external data (JSON files, transcribed tables).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error("data error: " + msg) {}
};

// A class function failed to decompose integrally over the irreducibles.
class NotVirtualError : public std::runtime_error {
 public:
  explicit NotVirtualError(const std::string& msg) : std::runtime_error("not a virtual character: " + msg) {}
};

// A proven theorem failed to verify: always a bug, never user error.
class InternalInconsistencyError : public std::logic_error {
 public:
  explicit InternalInconsistencyError(const std::string& msg)
      : std::logic_error("internal inconsistency: " + msg) {}
};

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = s*a + t*b with g = gcd(a,b) >= 0.
inline Int xgcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool is_prime(const Int& n) {
  // 40 Miller-Rabin rounds: deterministic in practice for the sizes used here.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline Int next_prime(const Int& n) {
  Int p;
  mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
  return p;
}

inline long to_long(const Int& n) {
  if (!n.fits_slong_p()) throw CapacityError("integer too large for machine word: " + n.get_str());
  return n.get_si();
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Machine modular arithmetic for primes < 2^31 (Dixon lifts, CRT probes).
inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  std::int64_t r = 1 % m;
  base %= m;
  if (base < 0) base += m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = a % m;
  if (nr < 0) nr += m;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DomainError("not invertible modulo " + std::to_string(m));
  return t < 0 ? t + m : t;
}

// Euler phi by trial-division factorization (arguments stay desk-scale).
inline long euler_phi(long n) {
  if (n <= 0) throw DomainError("euler_phi of nonpositive argument");
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

inline std::vector<long> divisors_of(long n) {
  std::vector<long> small, big;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) big.push_back(n / d);
    }
  }
  for (auto it = big.rbegin(); it != big.rend(); ++it) small.push_back(*it);
  return small;
}

// Prime factorization of a machine integer, (prime, multiplicity) pairs.
inline std::vector<std::pair<long, int>> factorize(long n) {
  if (n <= 0) throw DomainError("factorize of nonpositive argument");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int k = 0;
      while (n % p == 0) {
        n /= p;
        ++k;
      }
      out.emplace_back(p, k);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(long n) {
  for (const auto& [p, k] : factorize(n))
    if (k > 1) return false;
  return true;
}

}  // namespace knutson
