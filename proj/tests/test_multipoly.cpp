#include "doctest.h"

#include "resect/error.hpp"
#include "resect/poly/groebner.hpp"
#include "resect/poly/serialize.hpp"
#include "resect/random.hpp"

using namespace resect;
using namespace resect::poly;

namespace {

const Field QQ = Field::rationals();
const Field FP = Field::prime();

struct Toy {
  Ring ring{1, 2};  // six variables, used as x0..x5
  Field field;
  explicit Toy(Field f) : field(f) {}
  MultiPoly x(Var v) const { return MultiPoly::variable(ring, field, v); }
  MultiPoly c(long long v) const { return MultiPoly::constant(ring, Scalar(field, v)); }
};

MultiPoly random_poly(const Ring& ring, Field f, Rng& rng, int terms, int maxdeg) {
  MultiPoly p(ring, f);
  for (int t = 0; t < terms; ++t) {
    std::vector<Monomial::Entry> e;
    for (int k = 0; k < maxdeg; ++k)
      if (rng.uniform_int(0, 1)) e.emplace_back(static_cast<Var>(rng.uniform_int(0, ring.size() - 1)), 1);
    p.add_term(Monomial(e), Scalar(f, rng.uniform_int(-9, 9)));
  }
  return p;
}

// Multihomogeneous random polynomial with the given degree per block.
MultiPoly random_multihomogeneous(const Ring& ring, Field f, Rng& rng,
                                  const std::vector<std::uint32_t>& deg, int terms) {
  MultiPoly p(ring, f);
  for (int t = 0; t < terms; ++t) {
    std::vector<Monomial::Entry> e;
    for (std::uint32_t b = 0; b < deg.size(); ++b)
      for (std::uint32_t k = 0; k < deg[b]; ++k) e.emplace_back(3 * b + rng.uniform_int(0, 2), 1);
    p.add_term(Monomial(e), Scalar(f, rng.uniform_int(1, 20)));
  }
  return p;
}

bool all_spairs_reduce(const std::vector<MultiPoly>& G, const MonomialOrder& ord) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (!reduce(s_polynomial(G[i], G[j], ord), G, ord).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("ring indexing and names") {
  Ring r(2, 7);
  CHECK(r.size() == 42);
  CHECK(r.var(1, 1, 1) == 0);
  CHECK(r.var(1, 2, 1) == 3);
  CHECK(r.var(2, 1, 3) == 23);
  CHECK(r.image_var(23) == ImageVar{2, 1, 3});
  CHECK(r.name(r.var(1, 3, 2)) == "p1,3[2]");
  CHECK_THROWS_AS(r.var(3, 1, 1), Error);
}

TEST_CASE("monomial orders") {
  Ring r(1, 6);
  auto lex = MonomialOrder::pinned_lex(r);
  // p1[1] is the largest variable and p6[3] the smallest.
  CHECK(lex.compare(Monomial::of(r.var(1, 1, 1)), Monomial::of(r.var(1, 1, 2), 5)) > 0);
  CHECK(lex.compare(Monomial::of(r.var(1, 6, 3)), Monomial::of(r.var(1, 6, 2))) < 0);
  CHECK(lex.compare(Monomial::of(r.var(1, 5, 3)), Monomial::of(r.var(1, 6, 1))) > 0);

  auto grl = MonomialOrder::standard_grevlex(r);
  Var x = 0, y = 1, z = 2;
  // x y^2 vs x^2 z: same degree, last variable z decides: x y^2 > x^2 z.
  CHECK(grl.compare(Monomial({{x, 1}, {y, 2}}), Monomial({{x, 2}, {z, 1}})) > 0);
  CHECK(grl.compare(Monomial::of(z, 2), Monomial::of(x)) > 0);

  auto prod = MonomialOrder::product(MonomialOrder::lex({z}), MonomialOrder::grevlex({x, y}));
  CHECK(prod.kind() == MonomialOrder::Kind::Product);
  CHECK(prod.compare(Monomial::of(z), Monomial::of(x, 9)) > 0);
  CHECK(prod.compare(Monomial::of(x, 2), Monomial::of(y)) > 0);
  CHECK_THROWS_AS(MonomialOrder::product(MonomialOrder::lex({x}), MonomialOrder::lex({x})), Error);
}

TEST_CASE("leading monomial and multidegree") {
  Toy t(QQ);
  auto lex = MonomialOrder::pinned_lex(t.ring);
  auto f = t.x(0) * t.x(4) + t.x(1) * t.x(3);
  CHECK(leading_monomial(f, lex) == Monomial({{0, 1}, {4, 1}}));
  auto single = t.x(2) * t.x(2);
  CHECK(leading_monomial(single, lex) == Monomial::of(2, 2));
  CHECK_THROWS_AS(leading_monomial(MultiPoly(t.ring, QQ), lex), Error);

  Ring r(1, 2);
  CHECK(multidegree(f) == std::vector<std::uint32_t>{1, 1});
  CHECK(multidegree(t.c(1)) == std::vector<std::uint32_t>{0, 0});
  CHECK_THROWS_AS(multidegree(t.x(r.var(1, 1, 1)) + t.x(r.var(1, 2, 1))), Error);

  Ring big(2, 3);
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> da(6), db(6), sum(6);
    for (int b = 0; b < 6; ++b) {
      da[b] = rng.uniform_int(0, 2);
      db[b] = rng.uniform_int(0, 2);
      sum[b] = da[b] + db[b];
    }
    auto a = random_multihomogeneous(big, FP, rng, da, 4);
    auto b = random_multihomogeneous(big, FP, rng, db, 4);
    auto ab = a * b;
    if (ab.is_zero()) continue;
    CHECK(multidegree(ab) == sum);
  }
}

TEST_CASE("reduction and S-polynomials") {
  Toy t(QQ);
  auto ord = MonomialOrder::standard_grevlex(t.ring);
  auto g = t.x(0) * t.x(1) - t.x(2) * t.x(2);
  CHECK(reduce(g, {g}, ord).is_zero());
  CHECK(s_polynomial(g, g, ord).is_zero());
  auto h = t.x(3) * t.x(3) - t.x(4);
  CHECK(reduce(t.x(0), {h}, ord) == t.x(0));

  // Disjoint supports: S-polynomial reduces to zero modulo the pair.
  CHECK(reduce(s_polynomial(g, h, ord), {g, h}, ord).is_zero());

  // Idempotence on random data.
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MultiPoly> G{random_poly(t.ring, QQ, rng, 3, 3), random_poly(t.ring, QQ, rng, 3, 3)};
    if (G[0].is_zero() || G[1].is_zero()) continue;
    auto f = random_poly(t.ring, QQ, rng, 6, 4);
    auto r1 = reduce(f, G, ord);
    CHECK(reduce(r1, G, ord) == r1);
    for (const auto& gg : G) {
      auto lm = leading_monomial(gg, ord);
      for (const auto& [m, c] : r1.terms()) CHECK(!lm.divides(m));
    }
  }

  auto d = divide(g * h + t.x(5), g, ord);
  CHECK(d.quotient * g + d.remainder == g * h + t.x(5));
}

TEST_CASE("buchberger on hand-checkable inputs") {
  Toy t(QQ);
  auto lex = MonomialOrder::pinned_lex(t.ring);
  auto x = t.x(0), y = t.x(1);
  auto gb = buchberger({x * x - y, y}, lex);
  REQUIRE(gb.status == GbStatus::Complete);
  REQUIRE(gb.basis.size() == 2);
  bool has_x2 = false;
  for (const auto& g : gb.basis) has_x2 |= (g == x * x);
  CHECK(has_x2);

  auto single = buchberger({x * y - t.c(2)}, lex);
  REQUIRE(single.basis.size() == 1);
  CHECK(single.basis[0] == monic(x * y - t.c(2), lex));

  auto smc = standard_monomial_count({x * x, y * y * y}, lex, {0, 1});
  REQUIRE(smc.has_value());
  CHECK(*smc == 6);
  auto one = standard_monomial_count({x - t.c(1)}, lex, {0});
  REQUIRE(one.has_value());
  CHECK(*one == 1);
  CHECK(!standard_monomial_count({x * x}, lex, {0, 1}).has_value());
}

TEST_CASE("buchberger output satisfies the S-pair criterion") {
  Rng rng(12);
  for (Field f : {QQ, FP}) {
    Toy t(f);
    for (const auto& ord : {MonomialOrder::pinned_lex(t.ring), MonomialOrder::standard_grevlex(t.ring)}) {
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<MultiPoly> in;
        for (int k = 0; k < 3; ++k) {
          MultiPoly p(t.ring, f);
          while (p.is_zero()) p = random_poly(t.ring, f, rng, 3, 2);
          // Restrict to the first three variables to keep things small.
          std::vector<Var> map{0, 1, 2, 0, 1, 2};
          in.push_back(p.remap(t.ring, map));
        }
        auto gb = buchberger(in, ord);
        REQUIRE(gb.status == GbStatus::Complete);
        CHECK(all_spairs_reduce(gb.basis, ord));
        for (const auto& g : in) CHECK(reduce(g, gb.basis, ord).is_zero());
      }
    }
  }
}

TEST_CASE("cyclic-5 has 70 standard monomials") {
  Ring r(1, 2);
  Toy t(FP);
  std::vector<MultiPoly> x;
  for (Var v = 0; v < 5; ++v) x.push_back(t.x(v));
  std::vector<MultiPoly> gens;
  for (int len = 1; len < 5; ++len) {
    MultiPoly s(r, FP);
    for (int i = 0; i < 5; ++i) {
      MultiPoly term = t.c(1);
      for (int k = 0; k < len; ++k) term = term * x[(i + k) % 5];
      s += term;
    }
    gens.push_back(s);
  }
  gens.push_back(x[0] * x[1] * x[2] * x[3] * x[4] - t.c(1));
  auto ord = MonomialOrder::grevlex(std::vector<Var>{0, 1, 2, 3, 4});
  auto gb = buchberger(gens, ord);
  REQUIRE(gb.status == GbStatus::Complete);
  auto n = standard_monomial_count(gb.basis, ord, {0, 1, 2, 3, 4});
  REQUIRE(n.has_value());
  CHECK(*n == 70);
}

TEST_CASE("budget exhaustion is reported") {
  Toy t(FP);
  std::vector<MultiPoly> gens;
  Rng rng(2);
  for (int k = 0; k < 4; ++k) gens.push_back(random_poly(t.ring, FP, rng, 5, 3) + t.c(1));
  Budget b;
  b.max_pairs = 1;
  auto gb = buchberger(gens, MonomialOrder::standard_grevlex(t.ring), b);
  CHECK(gb.status == GbStatus::BudgetExceeded);
  CHECK(gb.exceeded == "max_pairs");

  Budget m;
  m.max_memory = 64;
  auto small = buchberger(gens, MonomialOrder::standard_grevlex(t.ring), m);
  CHECK(small.status == GbStatus::BudgetExceeded);
  CHECK(small.exceeded == "max_memory");
}

TEST_CASE("ideal quotient and intersection") {
  Toy t(QQ);
  auto ord = MonomialOrder::standard_grevlex(t.ring);
  auto x = t.x(0), y = t.x(1);
  auto q = ideal_quotient({x * y}, x, ord);
  REQUIRE(q.status == GbStatus::Complete);
  REQUIRE(q.gens.size() == 1);
  CHECK(monic(q.gens[0], ord) == y);

  auto q2 = ideal_quotient({x}, y, ord);
  REQUIRE(q2.gens.size() == 1);
  CHECK(monic(q2.gens[0], ord) == x);

  auto inter = ideal_intersection({x}, {y}, ord);
  REQUIRE(inter.gens.size() == 1);
  CHECK(monic(inter.gens[0], ord) == x * y);

  // <x^2 y, x y^2> : <x, y> = <x y>.
  auto q3 = ideal_quotient({x * x * y, x * y * y}, std::vector<MultiPoly>{x, y}, ord);
  REQUIRE(q3.status == GbStatus::Complete);
  auto gb = buchberger(q3.gens, ord);
  REQUIRE(gb.basis.size() == 1);
  CHECK(gb.basis[0] == x * y);
}

TEST_CASE("polynomial JSON round trip") {
  Ring r(2, 3);
  Rng rng(1);
  for (Field f : {QQ, FP}) {
    MultiPoly p = random_poly(r, f, rng, 8, 3);
    p.add_term(Monomial::of(0), Scalar::parse(f, f.is_prime() ? "17" : "-3/7"));
    auto back = poly_from_json(to_json(p));
    CHECK(back == p);
  }
  auto ord = MonomialOrder::product(MonomialOrder::lex({0, 1}), MonomialOrder::grevlex({2, 3, 4}));
  auto o2 = order_from_json(to_json(ord, r), r);
  CHECK(o2.blocks().size() == 2);
  CHECK(o2.compare(Monomial::of(1), Monomial::of(2, 4)) > 0);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json{{"field", "QQ"}}), Error);
}
