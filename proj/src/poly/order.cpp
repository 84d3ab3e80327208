#include "resect/poly/order.hpp"

#include <algorithm>
#include <numeric>

#include "resect/error.hpp"

namespace resect::poly {

namespace {

std::vector<Var> natural(std::uint32_t begin, std::uint32_t end) {
  std::vector<Var> v(end - begin);
  std::iota(v.begin(), v.end(), begin);
  return v;
}

void check_distinct(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
    fail(ErrorCode::InvalidArgument, "monomial order ranks a variable twice");
  }
}

}  // namespace

MonomialOrder MonomialOrder::lex(std::vector<Var> ranking) {
  check_distinct(ranking);
  MonomialOrder o;
  o.blocks_.push_back({Kind::Lex, std::move(ranking)});
  o.name_ = "lex";
  return o;
}

MonomialOrder MonomialOrder::grevlex(std::vector<Var> ranking) {
  check_distinct(ranking);
  MonomialOrder o;
  o.blocks_.push_back({Kind::GrevLex, std::move(ranking)});
  o.name_ = "grevlex";
  return o;
}

MonomialOrder MonomialOrder::product(const MonomialOrder& outer, const MonomialOrder& inner) {
  MonomialOrder o;
  o.blocks_ = outer.blocks_;
  o.blocks_.insert(o.blocks_.end(), inner.blocks_.begin(), inner.blocks_.end());
  std::vector<Var> all;
  for (const auto& b : o.blocks_) all.insert(all.end(), b.vars.begin(), b.vars.end());
  check_distinct(all);
  o.name_ = "product(" + outer.name_ + "," + inner.name_ + ")";
  return o;
}

MonomialOrder MonomialOrder::pinned_lex(const Ring& ring) {
  return lex(natural(0, ring.size()));
}

MonomialOrder MonomialOrder::standard_grevlex(const Ring& ring) {
  MonomialOrder o = grevlex(natural(0, ring.image_vars()));
  if (ring.aux() > 0) {
    // Auxiliary variables ride along in the same degree block, ranked last.
    o.blocks_[0].vars = natural(0, ring.size());
  }
  return o;
}

MonomialOrder MonomialOrder::by_name(std::string_view name, const Ring& ring) {
  if (name == "lex") return pinned_lex(ring);
  if (name == "grevlex") return standard_grevlex(ring);
  if (name.substr(0, 5) == "elim:") {
    MonomialOrder base = by_name(name.substr(5), ring.with_aux(0));
    MonomialOrder o = product(lex(natural(ring.image_vars(), ring.size())), base);
    o.name_ = std::string(name);
    return o;
  }
  fail(ErrorCode::InvalidArgument, "unknown monomial order: " + std::string(name));
}

MonomialOrder::Kind MonomialOrder::kind() const {
  if (blocks_.size() == 1) return blocks_[0].kind;
  return Kind::Product;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  for (const auto& blk : blocks_) {
    if (blk.kind == Kind::Lex) {
      for (Var v : blk.vars) {
        const auto ea = a.exponent(v), eb = b.exponent(v);
        if (ea != eb) return ea > eb ? 1 : -1;
      }
    } else {
      std::uint64_t da = 0, db = 0;
      for (Var v : blk.vars) {
        da += a.exponent(v);
        db += b.exponent(v);
      }
      if (da != db) return da > db ? 1 : -1;
      for (auto it = blk.vars.rbegin(); it != blk.vars.rend(); ++it) {
        const auto ea = a.exponent(*it), eb = b.exponent(*it);
        if (ea != eb) return ea < eb ? 1 : -1;
      }
    }
  }
  // Tie-break on variables no block mentions.
  auto covered = [&](Var v) {
    for (const auto& blk : blocks_)
      if (std::find(blk.vars.begin(), blk.vars.end(), v) != blk.vars.end()) return true;
    return false;
  };
  std::vector<Var> rest;
  for (const auto& [v, e] : a.entries())
    if (!covered(v)) rest.push_back(v);
  for (const auto& [v, e] : b.entries())
    if (!covered(v)) rest.push_back(v);
  std::sort(rest.begin(), rest.end());
  for (Var v : rest) {
    const auto ea = a.exponent(v), eb = b.exponent(v);
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  return 0;
}

}  // namespace resect::poly
