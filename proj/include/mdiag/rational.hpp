#pragma once

// Exact scalars: arbitrary-precision rationals backed by GMP, and prime
// fields F_p with a runtime modulus. Everything downstream is templated
// on one of these two types.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mdiag {

using Rational = mpq_class;
using Integer = mpz_class;

class value_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mpq_class(num, den) does not canonicalize; every fraction assembled from
// parts must go through here (gmp comparisons are undefined otherwise).
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw value_error("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw value_error("bad rational literal: " + s);
  }
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw value_error("bad rational literal: " + s);
  if (q.get_den() == 0) throw value_error("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Element of F_p. A modulus of 0 marks a literal produced by generic code
// (e.g. K(0), K(1)); it binds to the modulus of the first bound operand it
// is combined with. Literals only ever hold small integers.
struct Fp {
  std::int64_t v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(int x) : v(x) {}
  Fp(long x) : v(x) {}
  Fp(std::int64_t x, std::uint64_t mod) : v(x), p(mod) { reduce(); }

  void reduce() {
    if (p == 0) return;
    v %= static_cast<std::int64_t>(p);
    if (v < 0) v += static_cast<std::int64_t>(p);
  }

  static std::uint64_t join(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b != 0 && a != b) throw value_error("mixed F_p moduli");
    return a ? a : b;
  }

  Fp bound_to(std::uint64_t mod) const { return mod ? Fp(v, mod) : *this; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a.p, b.p);
    return Fp(a.bound_to(m).v + b.bound_to(m).v, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a.p, b.p);
    return Fp(a.bound_to(m).v - b.bound_to(m).v, m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a.p, b.p);
    return Fp(a.bound_to(m).v * b.bound_to(m).v, m);
  }
  Fp operator-() const { return p ? Fp(-v, p) : Fp(-v, 0); }

  Fp inverse() const {
    if (p == 0) {
      if (v == 1 || v == -1) return *this;
      throw value_error("cannot invert unbound F_p literal");
    }
    if (v == 0) throw value_error("division by zero in F_p");
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = v;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return Fp(t, p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint64_t m = join(a.p, b.p);
    if (m == 0) return a.v == b.v;
    return a.bound_to(m).v == b.bound_to(m).v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline Fp fp_from_rational(const Rational& q, std::uint64_t p) {
  Integer num = q.get_num() % p;
  Integer den = q.get_den() % p;
  Fp n(num.get_si(), p), d(den.get_si(), p);
  if (d == Fp(0, p)) throw value_error("denominator vanishes in F_" + std::to_string(p));
  return n / d;
}

struct FieldSpec {
  enum class Kind { rationals, prime };
  Kind kind = Kind::rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime_u64(p) || p >= (1ull << 31)) throw value_error("modulus must be prime and < 2^31");
    return FieldSpec{Kind::prime, p};
  }
  // "Q" or "Fp:<p>"
  static FieldSpec parse(const std::string& s) {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) {
      std::uint64_t p = 0;
      try {
        p = std::stoull(s.substr(3));
      } catch (const std::exception&) {
        throw value_error("bad field spec: " + s);
      }
      return prime(p);
    }
    throw value_error("bad field spec: " + s);
  }
  std::string str() const {
    return kind == Kind::rationals ? "Q" : "Fp:" + std::to_string(p);
  }
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }
};

// Scalar <-> string, used by every serializer.
inline std::string scalar_to_string(const Rational& x) { return x.get_str(); }
inline std::string scalar_to_string(const Fp& x) { return std::to_string(x.v); }

inline void scalar_from_string(const std::string& s, const FieldSpec&, Rational& out) {
  out = parse_rational(s);
}
inline void scalar_from_string(const std::string& s, const FieldSpec& f, Fp& out) {
  out = fp_from_rational(parse_rational(s), f.p);
}

}  // namespace mdiag
