#include "resect/poly/ring.hpp"

#include <algorithm>

#include "resect/error.hpp"

namespace resect::poly {

Var Ring::var(ImageVar v) const {
  if (v.camera < 1 || v.camera > m_ || v.point < 1 || v.point > n_ || v.coord < 1 || v.coord > 3) {
    fail(ErrorCode::InvalidArgument, "image variable out of range");
  }
  return ((v.camera - 1) * n_ + (v.point - 1)) * 3 + (v.coord - 1);
}

Var Ring::aux_var(std::uint32_t k) const {
  if (k >= aux_) fail(ErrorCode::InvalidArgument, "auxiliary variable out of range");
  return image_vars() + k;
}

ImageVar Ring::image_var(Var v) const {
  if (v >= image_vars()) fail(ErrorCode::InvalidArgument, "not an image variable");
  const std::uint32_t b = v / 3;
  return ImageVar{b / n_ + 1, b % n_ + 1, v % 3 + 1};
}

std::string Ring::name(Var v) const {
  if (is_aux(v)) return "t" + std::to_string(v - image_vars());
  const ImageVar iv = image_var(v);
  return "p" + std::to_string(iv.camera) + "," + std::to_string(iv.point) + "[" +
         std::to_string(iv.coord) + "]";
}

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [v, e] : entries) {
    if (e == 0) continue;
    if (!e_.empty() && e_.back().first == v) {
      e_.back().second += e;
    } else {
      e_.emplace_back(v, e);
    }
  }
}

Monomial Monomial::of(Var v, std::uint32_t e) {
  Monomial m;
  if (e > 0) m.e_.emplace_back(v, e);
  return m;
}

std::uint32_t Monomial::exponent(Var v) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), Entry{v, 0});
  return (it != e_.end() && it->first == v) ? it->second : 0;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [v, e] : e_) d += e;
  return d;
}

bool Monomial::is_squarefree() const {
  return std::all_of(e_.begin(), e_.end(), [](const Entry& x) { return x.second == 1; });
}

bool Monomial::divides(const Monomial& o) const {
  auto it = o.e_.begin();
  for (const auto& [v, e] : e_) {
    while (it != o.e_.end() && it->first < v) ++it;
    if (it == o.e_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  auto it = e_.begin();
  for (const auto& [v, e] : o.e_) {
    while (it != e_.end() && it->first < v) ++it;
    std::uint32_t mine = (it != e_.end() && it->first == v) ? it->second : 0;
    if (mine > e) fail(ErrorCode::InvalidArgument, "monomial does not divide");
    if (e > mine) r.e_.emplace_back(v, e - mine);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
      r.e_.push_back(e_[i++]);
    } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
      r.e_.push_back(o.e_[j++]);
    } else {
      r.e_.emplace_back(e_[i].first, std::max(e_[i].second, o.e_[j].second));
      ++i;
      ++j;
    }
  }
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  std::size_t i = 0, j = 0;
  while (i < e_.size() && j < o.e_.size()) {
    if (e_[i].first == o.e_[j].first) return false;
    if (e_[i].first < o.e_[j].first) ++i; else ++j;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first)) {
      r.e_.push_back(a.e_[i++]);
    } else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first) {
      r.e_.push_back(b.e_[j++]);
    } else {
      r.e_.emplace_back(a.e_[i].first, a.e_[i].second + b.e_[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string Monomial::to_string(const Ring& ring) const {
  if (e_.empty()) return "1";
  std::string s;
  for (const auto& [v, e] : e_) {
    if (!s.empty()) s += "*";
    s += ring.name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace resect::poly
