#include "resect/poly/serialize.hpp"

#include "resect/error.hpp"

namespace resect::poly {

using nlohmann::json;

namespace {

json var_json(const Ring& ring, Var v) {
  if (ring.is_aux(v)) return json::array({0, v - ring.image_vars(), 0});
  const ImageVar iv = ring.image_var(v);
  return json::array({iv.camera, iv.point, iv.coord});
}

Var var_from(const Ring& ring, const json& t) {
  if (!t.is_array() || t.size() < 3) fail(ErrorCode::Schema, "variable must be [i, j, c]");
  const auto i = t[0].get<std::uint32_t>();
  const auto j = t[1].get<std::uint32_t>();
  const auto c = t[2].get<std::uint32_t>();
  if (i == 0) return ring.aux_var(j);
  return ring.var(i, j, c);
}

}  // namespace

json to_json(const MultiPoly& f) {
  const Ring& ring = f.ring();
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    json ex = json::array();
    for (const auto& [v, e] : m.entries()) {
      json t = var_json(ring, v);
      t.push_back(e);
      ex.push_back(std::move(t));
    }
    terms.push_back({{"exponents", std::move(ex)}, {"coeff", c.to_string()}});
  }
  return {{"field", f.field().to_string()},
          {"cameras", ring.cameras()},
          {"points", ring.points()},
          {"aux", ring.aux()},
          {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const json& j) {
  try {
    const Field field = Field::parse(j.at("field").get<std::string>());
    const Ring ring(j.at("cameras").get<std::uint32_t>(), j.at("points").get<std::uint32_t>(),
                    j.value("aux", 0u));
    MultiPoly f(ring, field);
    for (const auto& t : j.at("terms")) {
      std::vector<Monomial::Entry> e;
      for (const auto& x : t.at("exponents")) {
        if (!x.is_array() || x.size() != 4) fail(ErrorCode::Schema, "exponent entry must be [i, j, c, e]");
        e.emplace_back(var_from(ring, x), x[3].get<std::uint32_t>());
      }
      f.add_term(Monomial(std::move(e)), Scalar::parse(field, t.at("coeff").get<std::string>()));
    }
    return f;
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("malformed polynomial JSON: ") + e.what());
  }
}

json to_json(const MonomialOrder& ord, const Ring& ring) {
  json blocks = json::array();
  for (const auto& b : ord.blocks()) {
    json vars = json::array();
    for (Var v : b.vars) vars.push_back(var_json(ring, v));
    blocks.push_back({{"kind", b.kind == MonomialOrder::Kind::Lex ? "lex" : "grevlex"},
                      {"vars", std::move(vars)}});
  }
  return {{"name", ord.name()}, {"blocks", std::move(blocks)}};
}

MonomialOrder order_from_json(const json& j, const Ring& ring) {
  try {
    if (j.is_string()) return MonomialOrder::by_name(j.get<std::string>(), ring);
    if (!j.contains("blocks")) return MonomialOrder::by_name(j.at("name").get<std::string>(), ring);
    MonomialOrder acc;
    bool first = true;
    for (const auto& b : j.at("blocks")) {
      std::vector<Var> vars;
      for (const auto& v : b.at("vars")) vars.push_back(var_from(ring, v));
      const std::string kind = b.at("kind").get<std::string>();
      MonomialOrder o;
      if (kind == "lex") {
        o = MonomialOrder::lex(std::move(vars));
      } else if (kind == "grevlex") {
        o = MonomialOrder::grevlex(std::move(vars));
      } else {
        fail(ErrorCode::Schema, "unknown block kind: " + kind);
      }
      acc = first ? o : MonomialOrder::product(acc, o);
      first = false;
    }
    if (j.contains("name")) acc.set_name(j["name"].get<std::string>());
    return acc;
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("malformed order JSON: ") + e.what());
  }
}

}  // namespace resect::poly
