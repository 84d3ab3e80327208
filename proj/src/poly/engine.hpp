#pragma once

// Dense-exponent polynomial kernel behind the public Groebner routines.
// Exponent vectors are stored in the order's variable layout so that
// comparisons scan contiguous memory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <unistd.h>

#include "resect/algebra/scalar.hpp"
#include "resect/error.hpp"
#include "resect/poly/groebner.hpp"
#include "resect/poly/multipoly.hpp"

namespace resect::poly::detail {

// Resident set size from /proc; 0 where that is unavailable.
inline std::size_t resident_bytes() {
  std::FILE* f = std::fopen("/proc/self/statm", "r");
  if (!f) return 0;
  long total = 0, resident = 0;
  const int got = std::fscanf(f, "%ld %ld", &total, &resident);
  std::fclose(f);
  return got == 2 ? static_cast<std::size_t>(resident) * static_cast<std::size_t>(sysconf(_SC_PAGESIZE)) : 0;
}

using Exp = std::uint16_t;

struct FpK {
  using Elem = std::uint32_t;
  std::uint32_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(std::uint64_t{a} * b % p); }
  Elem neg(Elem a) const { return a ? p - a : 0; }
  Elem inv(Elem a) const { return algebra::inverse_mod(a, p); }
  Elem from(const algebra::Scalar& s) const { return s.residue(); }
  algebra::Scalar to(Elem a, algebra::Field f) const {
    return algebra::Scalar(f, static_cast<long long>(a));
  }
};

struct QK {
  using Elem = mpq_class;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) fail(ErrorCode::DivisionByZero, "division by zero");
    return 1 / a;
  }
  Elem from(const algebra::Scalar& s) const { return s.rational(); }
  algebra::Scalar to(const Elem& a, algebra::Field f) const { return algebra::Scalar(f, a); }
};

class Layout {
 public:
  struct Block {
    std::size_t begin, end;
    bool grevlex;
  };

  Layout(const MonomialOrder& ord, const Ring& ring) {
    std::vector<bool> seen(ring.size(), false);
    for (const auto& b : ord.blocks()) {
      Block blk{pos_to_var.size(), 0, b.kind == MonomialOrder::Kind::GrevLex};
      for (Var v : b.vars) {
        if (v >= ring.size()) continue;
        pos_to_var.push_back(v);
        seen[v] = true;
      }
      blk.end = pos_to_var.size();
      if (blk.end > blk.begin) blocks.push_back(blk);
    }
    Block rest{pos_to_var.size(), 0, false};
    for (Var v = 0; v < ring.size(); ++v)
      if (!seen[v]) pos_to_var.push_back(v);
    rest.end = pos_to_var.size();
    if (rest.end > rest.begin) blocks.push_back(rest);
    nv = pos_to_var.size();
    var_to_pos.assign(ring.size(), 0);
    for (std::size_t i = 0; i < nv; ++i) var_to_pos[pos_to_var[i]] = i;
  }

  int cmp(const Exp* a, const Exp* b) const {
    for (const auto& blk : blocks) {
      if (!blk.grevlex) {
        for (std::size_t i = blk.begin; i < blk.end; ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      } else {
        std::uint32_t da = 0, db = 0;
        for (std::size_t i = blk.begin; i < blk.end; ++i) {
          da += a[i];
          db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = blk.end; i-- > blk.begin;)
          if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
    }
    return 0;
  }

  std::size_t nv = 0;
  std::vector<Var> pos_to_var;
  std::vector<std::size_t> var_to_pos;
  std::vector<Block> blocks;
};

inline std::uint64_t mask_of(const Exp* e, std::size_t nv) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < nv; ++i)
    if (e[i]) m |= std::uint64_t{1} << (i & 63);
  return m;
}

inline bool divides(const Exp* a, const Exp* b, std::size_t nv) {
  for (std::size_t i = 0; i < nv; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::uint32_t degree_of(const Exp* e, std::size_t nv) {
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < nv; ++i) d += e[i];
  return d;
}

template <class K>
struct Poly {
  std::vector<Exp> exps;
  std::vector<typename K::Elem> cf;
  std::uint32_t sugar = 0;

  std::size_t size() const { return cf.size(); }
  bool empty() const { return cf.empty(); }
};

class BudgetExceeded {
 public:
  explicit BudgetExceeded(std::string what) : what_(std::move(what)) {}
  const std::string& what() const { return what_; }

 private:
  std::string what_;
};

template <class K>
class Engine {
 public:
  using Elem = typename K::Elem;
  using P = Poly<K>;

  Engine(K k, const MonomialOrder& ord, const Ring& ring, algebra::Field field)
      : k_(std::move(k)), L_(ord, ring), ring_(ring), field_(field), nv_(L_.nv) {}

  const Layout& layout() const { return L_; }
  std::size_t nv() const { return nv_; }
  const K& domain() const { return k_; }

  P from_multipoly(const MultiPoly& f) const {
    P p;
    const std::size_t n = f.size();
    std::vector<Exp> raw(n * nv_, 0);
    std::vector<Elem> cf;
    cf.reserve(n);
    std::size_t t = 0;
    for (const auto& [m, c] : f.terms()) {
      for (const auto& [v, e] : m.entries()) raw[t * nv_ + L_.var_to_pos[v]] = static_cast<Exp>(e);
      cf.push_back(k_.from(c));
      ++t;
    }
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return L_.cmp(&raw[a * nv_], &raw[b * nv_]) > 0;
    });
    p.exps.resize(n * nv_);
    p.cf.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(&raw[idx[i] * nv_], nv_, &p.exps[i * nv_]);
      p.cf.push_back(cf[idx[i]]);
    }
    p.sugar = total_degree(p);
    return p;
  }

  MultiPoly to_multipoly(const P& p) const {
    MultiPoly f(ring_, field_);
    for (std::size_t t = 0; t < p.size(); ++t) {
      std::vector<Monomial::Entry> e;
      const Exp* x = &p.exps[t * nv_];
      for (std::size_t i = 0; i < nv_; ++i)
        if (x[i]) e.emplace_back(L_.pos_to_var[i], x[i]);
      f.add_term(Monomial(std::move(e)), k_.to(p.cf[t], field_));
    }
    return f;
  }

  std::uint32_t total_degree(const P& p) const {
    std::uint32_t d = 0;
    for (std::size_t t = 0; t < p.size(); ++t) d = std::max(d, degree_of(&p.exps[t * nv_], nv_));
    return d;
  }

  void make_monic(P& p) const {
    if (p.empty()) return;
    const Elem inv = k_.inv(p.cf[0]);
    for (auto& c : p.cf) c = k_.mul(c, inv);
  }

  bool contains_position(const P& p, std::size_t pos) const {
    for (std::size_t t = 0; t < p.size(); ++t)
      if (p.exps[t * nv_ + pos]) return true;
    return false;
  }

  // out = a[a0:] + c * x^shift * b[b0:]; `shift` may be null for 1.
  void axpy(const P& a, std::size_t a0, const Elem& c, const Exp* shift, const P& b,
            std::size_t b0, P& out) const {
    out.exps.clear();
    out.cf.clear();
    out.exps.reserve((a.size() - a0 + b.size() - b0) * nv_);
    out.cf.reserve(a.size() - a0 + b.size() - b0);
    std::vector<Exp> tmp(nv_);
    std::size_t i = a0, j = b0;
    auto shifted = [&](std::size_t jj) {
      const Exp* e = &b.exps[jj * nv_];
      if (shift)
        for (std::size_t v = 0; v < nv_; ++v) tmp[v] = static_cast<Exp>(e[v] + shift[v]);
      else
        std::copy_n(e, nv_, tmp.data());
      return tmp.data();
    };
    const Exp* bj = j < b.size() ? shifted(j) : nullptr;
    while (i < a.size() || j < b.size()) {
      int c0;
      if (j >= b.size()) c0 = 1;
      else if (i >= a.size()) c0 = -1;
      else c0 = L_.cmp(&a.exps[i * nv_], bj);
      if (c0 > 0) {
        out.exps.insert(out.exps.end(), &a.exps[i * nv_], &a.exps[i * nv_] + nv_);
        out.cf.push_back(a.cf[i]);
        ++i;
      } else if (c0 < 0) {
        out.exps.insert(out.exps.end(), bj, bj + nv_);
        out.cf.push_back(k_.mul(c, b.cf[j]));
        ++j;
        if (j < b.size()) bj = shifted(j);
      } else {
        Elem s = k_.add(a.cf[i], k_.mul(c, b.cf[j]));
        if (!k_.is_zero(s)) {
          out.exps.insert(out.exps.end(), bj, bj + nv_);
          out.cf.push_back(std::move(s));
        }
        ++i;
        ++j;
        if (j < b.size()) bj = shifted(j);
      }
    }
  }

  P spoly(const P& f, const P& g) const {
    std::vector<Exp> lcm(nv_), sf(nv_), sg(nv_);
    const Exp* lf = f.exps.data();
    const Exp* lg = g.exps.data();
    for (std::size_t v = 0; v < nv_; ++v) {
      lcm[v] = std::max(lf[v], lg[v]);
      sf[v] = lcm[v] - lf[v];
      sg[v] = lcm[v] - lg[v];
    }
    P a;
    // a = (1/lc f) x^sf f[1:]
    const Elem cf = k_.inv(f.cf[0]);
    P empty;
    axpy(empty, 0, cf, sf.data(), f, 1, a);
    P out;
    axpy(a, 0, k_.neg(k_.inv(g.cf[0])), sg.data(), g, 1, out);
    out.sugar = std::max(f.sugar - degree_of(lf, nv_), g.sugar - degree_of(lg, nv_)) +
                degree_of(lcm.data(), nv_);
    return out;
  }

  struct ReducerSet {
    std::vector<const P*> polys;
    std::vector<std::uint64_t> masks;
  };

  ReducerSet make_reducers(const std::vector<const P*>& polys) const {
    ReducerSet r;
    for (const P* p : polys) {
      if (p->empty()) continue;
      r.polys.push_back(p);
      r.masks.push_back(mask_of(p->exps.data(), nv_));
    }
    return r;
  }

  const P* find_reducer(const ReducerSet& G, const Exp* t) const {
    const std::uint64_t mt = mask_of(t, nv_);
    for (std::size_t k = 0; k < G.polys.size(); ++k) {
      if (G.masks[k] & ~mt) continue;
      if (divides(G.polys[k]->exps.data(), t, nv_)) return G.polys[k];
    }
    return nullptr;
  }

  // Normal form; with `full` the tail is reduced as well.
  P normal_form(P f, const ReducerSet& G, bool full, std::size_t max_terms = SIZE_MAX,
                std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max(),
                std::size_t max_memory = SIZE_MAX) const {
    const bool timed = deadline != std::chrono::steady_clock::time_point::max();
    std::size_t steps = 0;
    P res;
    res.sugar = f.sugar;
    P cur = std::move(f), next;
    std::size_t head = 0;
    std::vector<Exp> shift(nv_);
    while (head < cur.size()) {
      const Exp* t = &cur.exps[head * nv_];
      const P* g = find_reducer(G, t);
      if (!g) {
        if (!full) {
          res.exps.insert(res.exps.end(), cur.exps.begin() + head * nv_, cur.exps.end());
          res.cf.insert(res.cf.end(), cur.cf.begin() + head, cur.cf.end());
          return res;
        }
        res.exps.insert(res.exps.end(), t, t + nv_);
        res.cf.push_back(cur.cf[head]);
        ++head;
        continue;
      }
      const Exp* lg = g->exps.data();
      for (std::size_t v = 0; v < nv_; ++v) shift[v] = t[v] - lg[v];
      const Elem c = k_.neg(k_.mul(cur.cf[head], k_.inv(g->cf[0])));
      axpy(cur, head + 1, c, shift.data(), *g, 1, next);
      res.sugar = std::max(res.sugar, g->sugar + degree_of(shift.data(), nv_));
      std::swap(cur, next);
      head = 0;
      if (cur.size() > max_terms) throw BudgetExceeded("max_terms");
      if (++steps % 256 == 0) {
        if (timed && std::chrono::steady_clock::now() > deadline) throw BudgetExceeded("max_seconds");
        if (max_memory != SIZE_MAX && resident_bytes() > max_memory) throw BudgetExceeded("max_memory");
      }
    }
    return res;
  }

  // Exact division; throws if g does not divide f.
  P divide_exact(P f, const P& g) const {
    P q;
    std::vector<Exp> shift(nv_);
    P next;
    const Elem inv = k_.inv(g.cf[0]);
    std::size_t head = 0;
    while (head < f.size()) {
      const Exp* t = &f.exps[head * nv_];
      if (!divides(g.exps.data(), t, nv_)) fail(ErrorCode::Internal, "inexact polynomial division");
      for (std::size_t v = 0; v < nv_; ++v) shift[v] = t[v] - g.exps[v];
      const Elem c = k_.mul(f.cf[head], inv);
      q.exps.insert(q.exps.end(), shift.begin(), shift.end());
      q.cf.push_back(c);
      axpy(f, head + 1, k_.neg(c), shift.data(), g, 1, next);
      std::swap(f, next);
      head = 0;
    }
    return q;
  }

  struct GbOutput {
    std::vector<P> basis;
    GbStats stats;
    std::string exceeded;
  };

  GbOutput groebner(std::vector<P> input, const Budget& budget) const;

 private:
  K k_;
  Layout L_;
  Ring ring_;
  algebra::Field field_;
  std::size_t nv_;
};

template <class K>
typename Engine<K>::GbOutput Engine<K>::groebner(std::vector<P> input, const Budget& budget) const {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto deadline = std::isfinite(budget.max_seconds)
                            ? start + std::chrono::duration_cast<clock::duration>(
                                          std::chrono::duration<double>(budget.max_seconds))
                            : clock::time_point::max();
  GbOutput out;
  std::size_t held = 0;  // estimated bytes in G and pool

  std::vector<P> G;
  std::vector<std::vector<Exp>> lm;
  std::vector<std::uint64_t> lmask;
  std::vector<bool> active;

  struct Pair {
    std::uint32_t i, j, sugar;
    std::vector<Exp> lcm;
  };
  std::vector<Pair> pool;
  auto pair_less = [&](std::uint32_t a, std::uint32_t b) {
    const Pair& x = pool[a];
    const Pair& y = pool[b];
    if (x.sugar != y.sugar) return x.sugar < y.sugar;
    int c = L_.cmp(x.lcm.data(), y.lcm.data());
    if (c != 0) return c < 0;
    return a < b;
  };
  std::set<std::uint32_t, decltype(pair_less)> queue(pair_less);

  auto lcm_of = [&](const std::vector<Exp>& a, const std::vector<Exp>& b) {
    std::vector<Exp> r(nv_);
    for (std::size_t v = 0; v < nv_; ++v) r[v] = std::max(a[v], b[v]);
    return r;
  };
  auto coprime = [&](const std::vector<Exp>& a, const std::vector<Exp>& b) {
    for (std::size_t v = 0; v < nv_; ++v)
      if (a[v] && b[v]) return false;
    return true;
  };
  auto divides_v = [&](const std::vector<Exp>& a, const std::vector<Exp>& b) {
    return divides(a.data(), b.data(), nv_);
  };

  auto insert = [&](P h) {
    const std::uint32_t hi = static_cast<std::uint32_t>(G.size());
    std::vector<Exp> lh(h.exps.begin(), h.exps.begin() + nv_);
    out.stats.max_degree = std::max<std::size_t>(out.stats.max_degree, degree_of(lh.data(), nv_));

    // New pairs, pruned by the chain criterion among themselves.
    struct Cand {
      std::uint32_t g;
      std::vector<Exp> lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::uint32_t g = 0; g < G.size(); ++g) {
      if (!active[g]) continue;
      C.push_back({g, lcm_of(lh, lm[g]), coprime(lh, lm[g])});
    }
    std::vector<Cand> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides_v(C[b].lcm, C[a].lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (divides_v(D[b].lcm, C[a].lcm)) keep = false;
      }
      if (keep) {
        D.push_back(std::move(C[a]));
      } else {
        ++out.stats.pairs_pruned;
      }
    }
    // Old pairs made redundant by h.
    for (auto it = queue.begin(); it != queue.end();) {
      const Pair& pr = pool[*it];
      if (divides_v(lh, pr.lcm) && lcm_of(lm[pr.i], lh) != pr.lcm && lcm_of(lm[pr.j], lh) != pr.lcm) {
        it = queue.erase(it);
        ++out.stats.pairs_pruned;
      } else {
        ++it;
      }
    }
    const std::uint32_t sh = h.sugar - degree_of(lh.data(), nv_);
    for (auto& c : D) {
      if (c.coprime) {
        ++out.stats.pairs_pruned;
        continue;
      }
      const std::uint32_t sg = G[c.g].sugar - degree_of(lm[c.g].data(), nv_);
      const std::uint32_t s = std::max(sh, sg) + degree_of(c.lcm.data(), nv_);
      held += sizeof(Pair) + nv_ * sizeof(Exp) + 64;  // with queue node and allocator overhead
      pool.push_back({c.g, hi, s, std::move(c.lcm)});
      queue.insert(static_cast<std::uint32_t>(pool.size() - 1));
    }
    for (std::uint32_t g = 0; g < G.size(); ++g)
      if (active[g] && divides_v(lh, lm[g])) active[g] = false;
    lmask.push_back(mask_of(lh.data(), nv_));
    lm.push_back(std::move(lh));
    held += h.size() * (nv_ * sizeof(Exp) + sizeof(Elem)) + nv_ * sizeof(Exp) + 128;
    G.push_back(std::move(h));
    active.push_back(true);
  };

  auto reducers = [&]() {
    std::vector<const P*> ptrs;
    for (std::size_t g = 0; g < G.size(); ++g)
      if (active[g]) ptrs.push_back(&G[g]);
    return make_reducers(ptrs);
  };

  try {
    // Seed with the interreduced input, smallest leading monomial first.
    std::sort(input.begin(), input.end(), [&](const P& a, const P& b) {
      if (a.empty() || b.empty()) return !a.empty() && b.empty();
      return L_.cmp(a.exps.data(), b.exps.data()) < 0;
    });
    for (auto& f : input) {
      if (f.empty()) continue;
      P h = normal_form(std::move(f), reducers(), true, budget.max_terms, deadline, budget.max_memory);
      if (h.empty()) continue;
      make_monic(h);
      h.sugar = std::max(h.sugar, total_degree(h));
      insert(std::move(h));
    }

    auto ReducerCache = reducers();
    std::size_t cache_version = G.size();
    while (!queue.empty()) {
      if (out.stats.pairs_processed >= budget.max_pairs) throw BudgetExceeded("max_pairs");
      if (G.size() >= budget.max_basis) throw BudgetExceeded("max_basis");
      if (std::max(held, resident_bytes()) > budget.max_memory) throw BudgetExceeded("max_memory");
      const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
      if (elapsed > budget.max_seconds) throw BudgetExceeded("max_seconds");

      const std::uint32_t pid = *queue.begin();
      queue.erase(queue.begin());
      const Pair& pr = pool[pid];
      ++out.stats.pairs_processed;
      P s = spoly(G[pr.i], G[pr.j]);
      s.sugar = pr.sugar;
      if (cache_version != G.size()) {
        ReducerCache = reducers();
        cache_version = G.size();
      }
      P h = normal_form(std::move(s), ReducerCache, false, budget.max_terms, deadline, budget.max_memory);
      if (h.empty()) {
        ++out.stats.zero_reductions;
        continue;
      }
      make_monic(h);
      h.sugar = std::max(h.sugar, total_degree(h));
      insert(std::move(h));
    }
  } catch (const BudgetExceeded& e) {
    out.exceeded = e.what();
  }

  // Reduced basis from the active elements.
  std::vector<P> basis;
  for (std::size_t g = 0; g < G.size(); ++g)
    if (active[g]) basis.push_back(std::move(G[g]));
  std::sort(basis.begin(), basis.end(),
            [&](const P& a, const P& b) { return L_.cmp(a.exps.data(), b.exps.data()) < 0; });
  if (out.exceeded.empty()) {
    try {
      std::size_t bytes = 0;
      for (const auto& b : basis) bytes += b.size() * (nv_ * sizeof(Exp) + sizeof(Elem)) + 128;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::vector<const P*> others;
        for (std::size_t j = 0; j < basis.size(); ++j)
          if (j != i) others.push_back(&basis[j]);
        auto R = make_reducers(others);
        P head;
        head.exps.assign(basis[i].exps.begin(), basis[i].exps.begin() + nv_);
        head.cf.push_back(basis[i].cf[0]);
        P tail;
        tail.exps.assign(basis[i].exps.begin() + nv_, basis[i].exps.end());
        tail.cf.assign(basis[i].cf.begin() + 1, basis[i].cf.end());
        tail = normal_form(std::move(tail), R, true, budget.max_terms, deadline, budget.max_memory);
        head.exps.insert(head.exps.end(), tail.exps.begin(), tail.exps.end());
        head.cf.insert(head.cf.end(), tail.cf.begin(), tail.cf.end());
        head.sugar = basis[i].sugar;
        bytes = bytes + head.size() * (nv_ * sizeof(Exp) + sizeof(Elem)) -
                std::min(bytes, basis[i].size() * (nv_ * sizeof(Exp) + sizeof(Elem)));
        basis[i] = std::move(head);
        if (std::max(bytes, resident_bytes()) > budget.max_memory) throw BudgetExceeded("max_memory");
      }
    } catch (const BudgetExceeded& e) {
      out.exceeded = e.what();
    }
  }
  out.basis = std::move(basis);
  out.stats.seconds = std::chrono::duration<double>(clock::now() - start).count();
  return out;
}

}  // namespace resect::poly::detail
