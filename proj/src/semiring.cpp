#include "bispan/semiring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bispan {

Poly Poly::constant(int arity, BigInt c) {
  Poly p(arity);
  if (c != 0) p.terms_[std::vector<unsigned>(arity, 0)] = std::move(c);
  return p;
}

Poly Poly::variable(int arity, int index) {
  if (index < 0 || index >= arity) throw std::invalid_argument("variable index out of range");
  Poly p(arity);
  std::vector<unsigned> e(arity, 0);
  e[index] = 1;
  p.terms_[std::move(e)] = 1;
  return p;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

void Poly::add_term(const std::vector<unsigned>& expo, const BigInt& c) {
  if (c == 0) return;
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    terms_.emplace(expo, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
  Poly out(arity_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<unsigned> e(arity_);
      for (int i = 0; i < arity_; ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  *this = std::move(out);
  return *this;
}

bool Poly::operator<(const Poly& o) const {
  if (arity_ != o.arity_) return arity_ < o.arity_;
  return std::lexicographical_compare(
      terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

BigInt Poly::eval_at(const std::vector<BigInt>& point) const {
  if (static_cast<int>(point.size()) != arity_)
    throw std::invalid_argument("evaluation point arity mismatch");
  BigInt acc = 0;
  for (const auto& [e, c] : terms_) {
    BigInt term = c;
    for (int i = 0; i < arity_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
    acc += term;
  }
  return acc;
}

Poly Poly::substitute(const std::vector<Poly>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("substitution arity mismatch");
  int inner = args.empty() ? 0 : args[0].arity();
  Poly acc(inner);
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(inner, c);
    for (int i = 0; i < arity_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) term *= args[i];
    acc += term;
  }
  return acc;
}

namespace {

std::string var_name(int arity, int i) {
  return arity == 1 ? "x" : "x" + std::to_string(i);
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<std::vector<unsigned>, BigInt>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    unsigned da = std::accumulate(a.first.begin(), a.first.end(), 0u);
    unsigned db = std::accumulate(b.first.begin(), b.first.end(), 0u);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ts) {
    if (!first) os << " + ";
    first = false;
    bool has_vars = std::any_of(e.begin(), e.end(), [](unsigned k) { return k > 0; });
    bool coeff_shown = !has_vars || c != 1;
    if (coeff_shown) os << c.str();
    bool lead = !coeff_shown;
    for (int i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (!lead) os << "*";
      lead = false;
      os << var_name(arity_, i);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

std::string poly_tuple_to_string(const PolyTuple& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << "; ";
    os << t[i].to_string();
  }
  os << ")";
  return os.str();
}

std::string trop_to_string(const Trop& t) { return t.inf ? "inf" : std::to_string(t.v); }

}  // namespace bispan
