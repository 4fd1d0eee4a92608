#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bispan {

using BigInt = boost::multiprecision::cpp_int;

/// Exact multivariate polynomial with BigInt coefficients in a fixed number
/// of variables; the term map is keyed by exponent vectors, so the
/// representation is canonical by construction.
class Poly {
public:
  Poly() = default;
  explicit Poly(int arity) : arity_(arity) {}
  static Poly constant(int arity, BigInt c);
  static Poly variable(int arity, int index);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<unsigned>, BigInt>& terms() const { return terms_; }
  int total_degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  bool operator==(const Poly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  bool operator<(const Poly& o) const;

  BigInt eval_at(const std::vector<BigInt>& point) const;
  /// Substitution: one polynomial (over inner arity) per variable.
  Poly substitute(const std::vector<Poly>& args) const;

  /// Terms ordered by total degree descending, then exponent vector
  /// lexicographically descending; "x" when there is one variable, else
  /// "x0", "x1", ...
  std::string to_string() const;

private:
  void add_term(const std::vector<unsigned>& expo, const BigInt& c);
  int arity_ = 0;
  std::map<std::vector<unsigned>, BigInt> terms_;
};

using PolyTuple = std::vector<Poly>;
std::string poly_tuple_to_string(const PolyTuple& t);

/// Tropical (min, +) value: +infinity is the additive unit.
struct Trop {
  bool inf = true;
  long long v = 0;
  static Trop infinity() { return Trop{true, 0}; }
  static Trop of(long long x) { return Trop{false, x}; }
  bool operator==(const Trop& o) const { return inf == o.inf && (inf || v == o.v); }
};
std::string trop_to_string(const Trop& t);

// Commutative semirings as small value-ops records; evaluation code is
// templated over these.
struct NatSemiring {
  using value_type = BigInt;
  std::string name() const { return "nat"; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(long long v) const {
    if (v < 0) throw std::invalid_argument("nat semiring has no negatives");
    return v;
  }
  std::string show(const value_type& a) const { return a.str(); }
};

struct IntSemiring {
  using value_type = BigInt;
  std::string name() const { return "int"; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(long long v) const { return v; }
  std::string show(const value_type& a) const { return a.str(); }
};

struct BoolSemiring {
  using value_type = bool;
  std::string name() const { return "bool"; }
  value_type zero() const { return false; }
  value_type one() const { return true; }
  value_type add(value_type a, value_type b) const { return a || b; }
  value_type mul(value_type a, value_type b) const { return a && b; }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type from_int(long long v) const { return v != 0; }
  std::string show(value_type a) const { return a ? "1" : "0"; }
};

struct TropicalSemiring {
  using value_type = Trop;
  std::string name() const { return "tropical"; }
  value_type zero() const { return Trop::infinity(); }
  value_type one() const { return Trop::of(0); }
  value_type add(const value_type& a, const value_type& b) const {
    if (a.inf) return b;
    if (b.inf) return a;
    return Trop::of(std::min(a.v, b.v));
  }
  value_type mul(const value_type& a, const value_type& b) const {
    if (a.inf || b.inf) return Trop::infinity();
    return Trop::of(a.v + b.v);
  }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(long long v) const { return Trop::of(v); }
  std::string show(const value_type& a) const { return trop_to_string(a); }
};

struct PolySemiring {
  int arity = 0;
  using value_type = Poly;
  std::string name() const { return "poly"; }
  value_type zero() const { return Poly(arity); }
  value_type one() const { return Poly::constant(arity, 1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(long long v) const { return Poly::constant(arity, v); }
  std::string show(const value_type& a) const { return a.to_string(); }
};

/// Spot-checks the commutative-semiring laws on sampled triples.
template <class S>
bool check_semiring_axioms(const S& sr, const std::vector<typename S::value_type>& samples) {
  for (const auto& a : samples)
    for (const auto& b : samples) {
      if (!sr.eq(sr.add(a, b), sr.add(b, a))) return false;
      if (!sr.eq(sr.mul(a, b), sr.mul(b, a))) return false;
      if (!sr.eq(sr.add(a, sr.zero()), a)) return false;
      if (!sr.eq(sr.mul(a, sr.one()), a)) return false;
      if (!sr.eq(sr.mul(a, sr.zero()), sr.zero())) return false;
      for (const auto& c : samples) {
        if (!sr.eq(sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c)))) return false;
        if (!sr.eq(sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c)))) return false;
        if (!sr.eq(sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c)))) return false;
      }
    }
  return true;
}

}  // namespace bispan
