#include "pnpn/bipoly.hpp"

#include <algorithm>
#include <mutex>

namespace pnpn::poly {

namespace {

void gen_monomials(int nvars, int d, Expo& cur, int pos, int left,
                   std::vector<Expo>& out) {
  if (pos == nvars - 1) {
    cur[pos] = (uint8_t)left;
    out.push_back(cur);
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[pos] = (uint8_t)v;
    gen_monomials(nvars, d, cur, pos + 1, left - v, out);
  }
}

} // namespace

const std::vector<Expo>& monomials(int nvars, int d) {
  static std::map<std::pair<int, int>, std::vector<Expo>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> g(mu);
  auto key = std::make_pair(nvars, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Expo> out;
  if (d >= 0 && nvars >= 1) {
    Expo cur(nvars, 0);
    gen_monomials(nvars, d, cur, 0, d, out);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

long monomial_index(const Expo& e) {
  int d = 0;
  for (uint8_t v : e) d += v;
  const auto& list = monomials((int)e.size(), d);
  auto it = std::lower_bound(list.begin(), list.end(), e,
                             [](const Expo& a, const Expo& b) { return a > b; });
  if (it == list.end() || *it != e)
    throw arithmetic_fault("monomial_index: monomial not found");
  return it - list.begin();
}

Bipoly Bipoly::constant(FieldPtr F, int nx, int ny, Elt c) {
  Bipoly p(F, nx, ny);
  p.add_term(Expo(nx, 0), Expo(ny, 0), c);
  return p;
}

Bipoly Bipoly::variable(FieldPtr F, int nx, int ny, bool y_block, int i) {
  Bipoly p(F, nx, ny);
  Expo xe(nx, 0), ye(ny, 0);
  if (y_block)
    ye.at(i) = 1;
  else
    xe.at(i) = 1;
  p.add_term(xe, ye, F->one());
  return p;
}

void Bipoly::add_term(const Expo& xe, const Expo& ye, Elt c) {
  if (c == 0) return;
  if ((int)xe.size() != nx_ || (int)ye.size() != ny_)
    throw dimension_mismatch("Bipoly::add_term: variable count mismatch");
  int dx = 0, dy = 0;
  for (uint8_t v : xe) dx += v;
  for (uint8_t v : ye) dy += v;
  if (degx_ < 0) {
    degx_ = dx;
    degy_ = dy;
  } else if (dx != degx_ || dy != degy_) {
    throw dimension_mismatch("Bipoly::add_term: bihomogeneity violated");
  }
  Key k{xe, ye};
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(std::move(k), c);
  } else {
    it->second = F_->add(it->second, c);
    if (it->second == 0) t_.erase(it);
  }
  if (t_.empty()) {
    degx_ = -1;
    degy_ = -1;
  }
}

Bipoly Bipoly::operator+(const Bipoly& o) const {
  Bipoly r = *this;
  for (const auto& [k, c] : o.t_) r.add_term(k.first, k.second, c);
  return r;
}

Bipoly Bipoly::operator-() const {
  Bipoly r(F_, nx_, ny_);
  for (const auto& [k, c] : t_) r.add_term(k.first, k.second, F_->neg(c));
  return r;
}

Bipoly Bipoly::operator*(const Bipoly& o) const {
  Bipoly r(F_, nx_, ny_);
  for (const auto& [ka, ca] : t_)
    for (const auto& [kb, cb] : o.t_) {
      Expo xe(nx_), ye(ny_);
      for (int i = 0; i < nx_; ++i) xe[i] = (uint8_t)(ka.first[i] + kb.first[i]);
      for (int i = 0; i < ny_; ++i) ye[i] = (uint8_t)(ka.second[i] + kb.second[i]);
      r.add_term(xe, ye, F_->mul(ca, cb));
    }
  return r;
}

Bipoly Bipoly::scale(Elt c) const {
  Bipoly r(F_, nx_, ny_);
  if (c == 0) return r;
  for (const auto& [k, v] : t_) r.add_term(k.first, k.second, F_->mul(v, c));
  return r;
}

Bipoly Bipoly::power(long k) const {
  if (k < 0) throw std::invalid_argument("Bipoly::power: negative exponent");
  Bipoly acc = Bipoly::constant(F_, nx_, ny_, F_->one());
  Bipoly base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

Bipoly Bipoly::frobenius_power(long q) const {
  int a = power_exponent(F_->p(), q);
  if (a < 0)
    throw std::invalid_argument(
        "frobenius_power: q is not a power of the field characteristic");
  Bipoly r(F_, nx_, ny_);
  for (const auto& [k, c] : t_) {
    Expo xe(nx_), ye(ny_);
    for (int i = 0; i < nx_; ++i) xe[i] = (uint8_t)(k.first[i] * q);
    for (int i = 0; i < ny_; ++i) ye[i] = (uint8_t)(k.second[i] * q);
    r.add_term(xe, ye, F_->pow(c, q));
  }
  return r;
}

Bipoly Bipoly::eval_y(const std::vector<Elt>& point) const {
  if ((int)point.size() != ny_)
    throw dimension_mismatch("eval_y: point size mismatch");
  Bipoly r(F_, nx_, 0);
  for (const auto& [k, c] : t_) {
    Elt v = c;
    for (int i = 0; i < ny_ && v; ++i)
      if (k.second[i]) v = F_->mul(v, F_->pow(point[i], k.second[i]));
    if (v) r.add_term(k.first, Expo{}, v);
  }
  return r;
}

Bipoly Bipoly::eval_x(const std::vector<Elt>& point) const {
  if ((int)point.size() != nx_)
    throw dimension_mismatch("eval_x: point size mismatch");
  Bipoly r(F_, 0, ny_);
  for (const auto& [k, c] : t_) {
    Elt v = c;
    for (int i = 0; i < nx_ && v; ++i)
      if (k.first[i]) v = F_->mul(v, F_->pow(point[i], k.first[i]));
    if (v) r.add_term(Expo{}, k.second, v);
  }
  return r;
}

Elt Bipoly::eval(const std::vector<Elt>& x, const std::vector<Elt>& y) const {
  Elt out = 0;
  for (const auto& [k, c] : t_) {
    Elt v = c;
    for (int i = 0; i < nx_ && v; ++i)
      if (k.first[i]) v = F_->mul(v, F_->pow(x[i], k.first[i]));
    for (int i = 0; i < ny_ && v; ++i)
      if (k.second[i]) v = F_->mul(v, F_->pow(y[i], k.second[i]));
    out = F_->add(out, v);
  }
  return out;
}

Bipoly Bipoly::drop_last_variables() const {
  Bipoly r(F_, nx_ - 1, ny_ - 1);
  for (const auto& [k, c] : t_) {
    if (k.first.back() != 0 || k.second.back() != 0) continue;
    Expo xe(k.first.begin(), k.first.end() - 1);
    Expo ye(k.second.begin(), k.second.end() - 1);
    r.add_term(xe, ye, c);
  }
  return r;
}

namespace {

// (c*u + d*v)^k as binary-form coefficients of u^{k-i} v^i.
std::vector<Elt> linear_power(const gf::GaloisField& F, Elt c, Elt d, int k) {
  std::vector<Elt> out(k + 1, 0);
  // Binomial expansion, Pascal row mod p.
  std::vector<Int> pascal(k + 1);
  for (int i = 0; i <= k; ++i) pascal[i] = binomial(Int(k), i);
  for (int i = 0; i <= k; ++i) {
    Elt t = F.from_int(to_ll(pascal[i] % F.p()));
    if (!t) continue;
    t = F.mul(t, F.pow(c, k - i));
    t = F.mul(t, F.pow(d, i));
    out[i] = t;
  }
  return out;
}

std::vector<Elt> binform_mul(const gf::GaloisField& F, const std::vector<Elt>& a,
                             const std::vector<Elt>& b) {
  std::vector<Elt> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

} // namespace

std::vector<Elt> Bipoly::restrict_line_x(const std::vector<Elt>& c,
                                         const std::vector<Elt>& d,
                                         const std::vector<Elt>& y_point) const {
  if (degx_ < 0) return {};
  const auto& F = *F_;
  std::vector<Elt> out(degx_ + 1, 0);
  for (const auto& [k, coef] : t_) {
    Elt scalar = coef;
    for (int i = 0; i < ny_ && scalar; ++i)
      if (k.second[i]) scalar = F.mul(scalar, F.pow(y_point[i], k.second[i]));
    if (!scalar) continue;
    std::vector<Elt> form{F.one()};
    for (int i = 0; i < nx_; ++i)
      if (k.first[i]) form = binform_mul(F, form, linear_power(F, c[i], d[i], k.first[i]));
    for (size_t i = 0; i < form.size(); ++i)
      if (form[i]) out[i] = F.add(out[i], F.mul(scalar, form[i]));
  }
  return out;
}

std::vector<Elt> Bipoly::restrict_line_y(const std::vector<Elt>& x_point,
                                         const std::vector<Elt>& c,
                                         const std::vector<Elt>& d) const {
  return swap_blocks().restrict_line_x(c, d, x_point);
}

Bipoly Bipoly::swap_blocks() const {
  Bipoly r(F_, ny_, nx_);
  for (const auto& [k, c] : t_) r.add_term(k.second, k.first, c);
  return r;
}

Bipoly pairing_form(FieldPtr F, const std::vector<std::vector<Elt>>& a) {
  int n1 = (int)a.size();
  Bipoly f(F, n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      if (a[i][j]) {
        Expo xe(n1, 0), ye(n1, 0);
        xe[i] = 1;
        ye[j] = 1;
        f.add_term(xe, ye, a[i][j]);
      }
  return f;
}

} // namespace pnpn::poly
