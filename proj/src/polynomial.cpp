#include "spherik/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spherik {

Polynomial Polynomial::constant(std::size_t variables, const Rational& c) {
  Polynomial p(variables);
  p.add_term(Exponent(variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t i) {
  Polynomial p(variables);
  Exponent e(variables, 0);
  e.at(i) = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::affine(const Rational& c, const Vector& coeffs) {
  Polynomial p = constant(coeffs.size(), c);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponent e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (auto k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("Polynomial: exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(const Vector& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: arity mismatch");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: arity mismatch");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i) t *= std::pow(x[i], static_cast<double>(e[i]));
    s += t;
  }
  return s;
}

Polynomial Polynomial::compose(const std::vector<Polynomial>& forms) const {
  if (forms.size() != nvars_) throw std::invalid_argument("Polynomial::compose: arity mismatch");
  const std::size_t m = forms.empty() ? 0 : forms[0].variables();
  // Cache powers of each substituted form.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(constant(m, 1));
  Polynomial out(m);
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * forms[i]);
      if (e[i] > 0) t = t * powers[i][e[i]];
    }
    out += t;
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial +: arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial -: arity mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial *: arity mismatch");
  Polynomial out(a.nvars_);
  Polynomial::Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(nvars_, 1);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

std::string Polynomial::to_string(const std::string& prefix) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest degree first, reading order within a degree.
  std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
  auto deg = [](const Exponent& e) {
    unsigned s = 0;
    for (auto k : e) s += k;
    return s;
  };
  std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
    if (deg(x.first) != deg(y.first)) return deg(x.first) > deg(y.first);
    return x.first > y.first;
  });
  bool first = true;
  for (const auto& [e, c] : ordered) {
    Rational mag = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += prefix + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty()) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = mono;
    } else {
      term = mag.get_str() + "*" + mono;
    }
    if (first) {
      out = (c < 0 ? "-" : "") + term;
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

}  // namespace spherik
