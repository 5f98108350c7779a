#pragma once
// Exact arithmetic in Q(zeta_n).
//
// Values are stored in the power basis {zeta^0, ..., zeta^(phi(n)-1)} reduced
// modulo the n-th cyclotomic polynomial Phi_n, so equality is coefficient
// equality.  Phi_n is computed by exact division of x^n - 1 by the Phi_d for
// proper divisors d; a per-order reduction table of x^e mod Phi_n (integer
// rows, e up to max(n-1, 2*phi-2)) drives multiplication and Galois maps.
// Serialized form: polynomial strings in roots of unity, `E(n)^t` terms with
// rational coefficients, e.g. `E(5)^1+E(5)^4` or `-1+2*E(3)^1`.

#include <knutson/common.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

namespace knutson {

namespace detail {

// Quotient of two integer polynomials known to divide exactly (monic divisor).
inline std::vector<Int> exact_poly_div(std::vector<Int> num, const std::vector<Int>& den) {
  const std::size_t dn = num.size() - 1, dd = den.size() - 1;
  std::vector<Int> quot(dn - dd + 1);
  for (std::size_t i = dn + 1; i-- > dd;) {
    Int c = num[i];  // den is monic
    quot[i - dd] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw InternalInconsistencyError("cyclotomic polynomial division left a remainder");
  return quot;
}

struct CycloBasis {
  long n = 1;
  long phi = 1;
  std::vector<Int> min_poly;                // Phi_n, monic, length phi+1
  std::vector<std::vector<Int>> power;      // power[e] = coords of x^e, e <= max(n-1, 2*phi-2)
};

inline const CycloBasis& cyclo_basis(long n) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<CycloBasis>> memo;
  if (n <= 0) throw DomainError("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = memo.find(n);
  if (it != memo.end()) return *it->second;

  // Phi_d for all divisors d of n, ascending; each from x^d - 1 by division.
  static std::map<long, std::vector<Int>> phi_polys;  // guarded by the same mutex
  for (long d : divisors_of(n)) {
    if (phi_polys.count(d)) continue;
    std::vector<Int> p(d + 1);
    p[0] = -1;
    p[d] = 1;
    for (long e : divisors_of(d))
      if (e != d) p = exact_poly_div(std::move(p), phi_polys.at(e));
    phi_polys.emplace(d, std::move(p));
  }

  auto basis = std::make_unique<CycloBasis>();
  basis->n = n;
  basis->min_poly = phi_polys.at(n);
  basis->phi = static_cast<long>(basis->min_poly.size()) - 1;
  const long phi = basis->phi;
  const long maxpow = std::max(n - 1, 2 * phi - 2);
  basis->power.resize(maxpow + 1);
  for (long e = 0; e <= maxpow; ++e) {
    std::vector<Int> row(phi);
    if (e < phi) {
      row[e] = 1;
    } else {
      // x^e = x * x^(e-1); fold the overflow via x^phi = -(Phi_n - x^phi).
      const std::vector<Int>& prev = basis->power[e - 1];
      for (long t = 1; t < phi; ++t) row[t] = prev[t - 1];
      const Int& carry = prev[phi - 1];
      if (carry != 0)
        for (long t = 0; t < phi; ++t) row[t] -= carry * basis->min_poly[t];
    }
    basis->power[e] = std::move(row);
  }
  auto [pos, inserted] = memo.emplace(n, std::move(basis));
  (void)inserted;
  return *pos->second;
}

}  // namespace detail

class Cyclotomic {
 public:
  explicit Cyclotomic(long n = 1) : basis_(&detail::cyclo_basis(n)), c_(basis_->phi) {}

  static Cyclotomic from_rational(long n, const Rat& value) {
    Cyclotomic x(n);
    x.c_[0] = value;
    return x;
  }

  static Cyclotomic from_int(long n, const Int& value) { return from_rational(n, Rat(value)); }

  // zeta_n^e (any integer exponent, reduced mod n).
  static Cyclotomic root_power(long n, long e) {
    Cyclotomic x(n);
    e %= n;
    if (e < 0) e += n;
    const std::vector<Int>& row = x.basis_->power[e];
    for (long t = 0; t < x.basis_->phi; ++t) x.c_[t] = Rat(row[t]);
    return x;
  }

  // Sum of coeff * zeta_n^exp terms.
  static Cyclotomic from_terms(long n, const std::vector<std::pair<long, Rat>>& terms) {
    Cyclotomic x(n);
    for (const auto& [e, coeff] : terms) {
      long r = e % n;
      if (r < 0) r += n;
      const std::vector<Int>& row = x.basis_->power[r];
      for (long t = 0; t < x.basis_->phi; ++t)
        if (row[t] != 0) x.c_[t] += coeff * row[t];
    }
    return x;
  }

  long order() const { return basis_->n; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const Rat& c : c_)
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t t = 1; t < c_.size(); ++t)
      if (c_[t] != 0) return false;
    return true;
  }

  std::optional<Rat> as_rational() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
  }

  std::optional<Int> as_integer() const {
    if (!is_rational() || c_[0].get_den() != 1) return std::nullopt;
    return Int(c_[0].get_num());
  }

  // True when every power-basis coordinate is a rational integer (the case for
  // all character values: they are algebraic integers and Z[zeta_n] is the
  // full ring of integers of Q(zeta_n)).
  bool has_integer_coords() const {
    for (const Rat& c : c_)
      if (c.get_den() != 1) return false;
    return true;
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same_order(b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic operator-() const {
    Cyclotomic r(*this);
    for (Rat& c : r.c_) c = -c;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same_order(b);
    Cyclotomic r(a);
    for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] += b.c_[t];
    return r;
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same_order(b);
    Cyclotomic r(a);
    for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] -= b.c_[t];
    return r;
  }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.require_same_order(b);
    const long phi = a.basis_->phi;
    Cyclotomic r(a.basis_->n);
    if (a.has_integer_coords() && b.has_integer_coords()) {
      // Integer convolution avoids per-step rational canonicalization.
      std::vector<Int> av(phi), bv(phi);
      for (long t = 0; t < phi; ++t) {
        av[t] = a.c_[t].get_num();
        bv[t] = b.c_[t].get_num();
      }
      std::vector<Int> conv(2 * phi - 1);
      for (long i = 0; i < phi; ++i) {
        if (av[i] == 0) continue;
        for (long j = 0; j < phi; ++j)
          if (bv[j] != 0) conv[i + j] += av[i] * bv[j];
      }
      std::vector<Int> out(phi);
      for (long t = 0; t < phi; ++t) out[t] = std::move(conv[t]);
      for (long e = phi; e <= 2 * phi - 2; ++e) {
        if (conv[e] == 0) continue;
        const std::vector<Int>& row = a.basis_->power[e];
        for (long t = 0; t < phi; ++t)
          if (row[t] != 0) out[t] += conv[e] * row[t];
      }
      for (long t = 0; t < phi; ++t) r.c_[t] = Rat(out[t]);
    } else {
      std::vector<Rat> conv(2 * phi - 1);
      for (long i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (long j = 0; j < phi; ++j)
          if (b.c_[j] != 0) conv[i + j] += a.c_[i] * b.c_[j];
      }
      for (long t = 0; t < phi; ++t) r.c_[t] = conv[t];
      for (long e = phi; e <= 2 * phi - 2; ++e) {
        if (conv[e] == 0) continue;
        const std::vector<Int>& row = a.basis_->power[e];
        for (long t = 0; t < phi; ++t)
          if (row[t] != 0) r.c_[t] += conv[e] * row[t];
      }
    }
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend Cyclotomic operator*(const Rat& s, const Cyclotomic& a) {
    Cyclotomic r(a);
    for (Rat& c : r.c_) c *= s;
    return r;
  }
  friend Cyclotomic operator*(const Int& s, const Cyclotomic& a) { return Rat(s) * a; }

  // Galois automorphism zeta -> zeta^j, gcd(j, n) = 1.
  Cyclotomic galois(long j) const {
    const long n = basis_->n;
    long r = j % n;
    if (r < 0) r += n;
    if (std::gcd(r == 0 ? n : r, n) != 1)
      throw DomainError("galois exponent " + std::to_string(j) + " not coprime to order " + std::to_string(n));
    Cyclotomic out(n);
    for (long t = 0; t < basis_->phi; ++t) {
      if (c_[t] == 0) continue;
      const std::vector<Int>& row = basis_->power[(t * r) % n];
      for (long u = 0; u < basis_->phi; ++u)
        if (row[u] != 0) out.c_[u] += c_[t] * row[u];
    }
    return out;
  }

  Cyclotomic conj() const { return basis_->n == 1 ? *this : galois(basis_->n - 1); }

  // Rewrite in Q(zeta_m) for n | m (zeta_n = zeta_m^(m/n)).
  Cyclotomic to_order(long m) const {
    if (m == basis_->n) return *this;
    if (m % basis_->n != 0)
      throw StructuralError("cannot rewrite order-" + std::to_string(basis_->n) +
                            " cyclotomic at non-multiple order " + std::to_string(m));
    const long stride = m / basis_->n;
    std::vector<std::pair<long, Rat>> terms;
    for (long t = 0; t < basis_->phi; ++t)
      if (c_[t] != 0) terms.emplace_back(t * stride, c_[t]);
    return from_terms(m, terms);
  }

  // Crude but exact upper bound on |value|: sum of coefficient magnitudes
  // (|zeta^t| = 1 termwise).  Used to size CRT moduli rigorously.
  Rat magnitude_bound() const {
    Rat b;
    for (const Rat& c : c_) b += abs(c);
    return b;
  }

  // Canonical polynomial string; parse() is its inverse.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long t = 0; t < basis_->phi; ++t) {
      const Rat& c = c_[t];
      if (c == 0) continue;
      const bool neg = c < 0;
      Rat a = abs(c);
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? '-' : '+');
      }
      first = false;
      if (t == 0) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << '*';
        os << "E(" << basis_->n << ")^" << t;
      }
    }
    return os.str();
  }

  // Parses sums of rational multiples of E(k)^e; mixed k's are lifted to their
  // lcm.  force_order, when given, fixes the final order (lcm must divide it).
  static Cyclotomic parse(const std::string& text, std::optional<long> force_order = std::nullopt) {
    struct Term {
      Rat coeff;
      long order;
      long exp;
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    const std::size_t len = text.size();
    auto skip_ws = [&] {
      while (i < len && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto parse_uint = [&]() -> Int {
      std::size_t start = i;
      while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw DataError("expected digits at position " + std::to_string(start) + " in '" + text + "'");
      return Int(text.substr(start, i - start));
    };
    skip_ws();
    if (i == len) throw DataError("empty cyclotomic literal");
    while (i < len) {
      skip_ws();
      int sign = 1;
      while (i < len && (text[i] == '+' || text[i] == '-')) {
        if (text[i] == '-') sign = -sign;
        ++i;
        skip_ws();
      }
      if (i >= len) throw DataError("dangling sign in '" + text + "'");
      Rat coeff(sign);
      bool saw_number = false;
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        Int num = parse_uint();
        Int den = 1;
        if (i < len && text[i] == '/') {
          ++i;
          den = parse_uint();
        }
        coeff = sign * make_rat(num, den);
        saw_number = true;
        skip_ws();
        if (i < len && text[i] == '*') {
          ++i;
          skip_ws();
        }
      }
      if (i < len && text[i] == 'E') {
        ++i;
        if (i >= len || text[i] != '(') throw DataError("expected '(' after E in '" + text + "'");
        ++i;
        long k = to_long(parse_uint());
        if (k <= 0) throw DataError("root order must be positive in '" + text + "'");
        if (i >= len || text[i] != ')') throw DataError("expected ')' in '" + text + "'");
        ++i;
        long e = 1;
        if (i < len && text[i] == '^') {
          ++i;
          int esign = 1;
          if (i < len && text[i] == '-') {
            esign = -1;
            ++i;
          }
          e = esign * to_long(parse_uint());
        }
        terms.push_back({coeff, k, e});
      } else if (saw_number) {
        terms.push_back({coeff, 1, 0});
      } else {
        throw DataError("unexpected character '" + std::string(1, text[i]) + "' in '" + text + "'");
      }
      skip_ws();
    }
    long n = 1;
    for (const Term& t : terms) n = std::lcm(n, t.order);
    if (force_order) {
      if (*force_order % n != 0)
        throw DataError("cyclotomic '" + text + "' needs order " + std::to_string(n) +
                        " which does not divide requested order " + std::to_string(*force_order));
      n = *force_order;
    }
    std::vector<std::pair<long, Rat>> lifted;
    for (const Term& t : terms) {
      long stride = n / t.order;
      lifted.emplace_back(t.exp * stride, t.coeff);
    }
    return from_terms(n, lifted);
  }

  // Debug-only decimal approximation; never used by the exact core.
  double approx_real() const {
    double v = 0;
    const double pi = 3.14159265358979323846;
    for (long t = 0; t < basis_->phi; ++t)
      v += c_[t].get_d() * std::cos(2 * pi * t / basis_->n);
    return v;
  }

 private:
  void require_same_order(const Cyclotomic& other) const {
    if (basis_->n != other.basis_->n)
      throw StructuralError("cyclotomic order mismatch: " + std::to_string(basis_->n) + " vs " +
                            std::to_string(other.basis_->n));
  }

  const detail::CycloBasis* basis_;
  std::vector<Rat> c_;
};

}  // namespace knutson
