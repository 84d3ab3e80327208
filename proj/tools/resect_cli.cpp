#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resect/algebra/linalg.hpp"
#include "resect/duality/duality.hpp"
#include "resect/eddegree/degree68.hpp"
#include "resect/eddegree/eddegree.hpp"
#include "resect/error.hpp"
#include "resect/focal/focal.hpp"
#include "resect/focal/focal_io.hpp"
#include "resect/poly/groebner.hpp"
#include "resect/poly/serialize.hpp"
#include "resect/scenes/scene.hpp"
#include "resect/scenes/scene_io.hpp"

using json = nlohmann::json;
using namespace resect;

namespace {

constexpr int kSchemaVersion = 1;

struct Globals {
  std::uint64_t seed = 1;
  std::string field = "qq";
  unsigned jobs = 1;
  std::string out;

  algebra::Field resolved_field() const { return algebra::Field::parse(field); }
};

Globals g;

json base_config(const std::string& command) {
  return {{"command", command},
          {"seed", g.seed},
          {"field", g.resolved_field().to_string()},
          {"jobs", g.jobs}};
}

void emit(json body, const json& config) {
  body["schema_version"] = kSchemaVersion;
  body["config"] = config;
  const std::string text = body.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) fail(ErrorCode::Io, "cannot write " + g.out);
  f << text;
  if (!f) fail(ErrorCode::Io, "write failed for " + g.out);
}

scenes::Scene load_scene(const std::string& path) {
  return scenes::scene_from_json(scenes::read_json_file(path));
}

// Vector literal "1,2,3,4" in field f.
algebra::Vector parse_vector(algebra::Field f, const std::string& text, std::size_t size) {
  std::vector<algebra::Scalar> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(algebra::Scalar::parse(f, item));
  if (out.size() != size)
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(size) + " comma-separated values");
  return algebra::Vector(out.begin(), out.end());
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Internal: return 1;
    default: return 2;
  }
}

// ---- scene -------------------------------------------------------------

struct SceneArgs {
  std::size_t n = 6, m = 1;
  double sigma = 0.0;
  bool perturb = false;
  std::string in;
};

void scene_gen(const SceneArgs& a) {
  auto s = scenes::random_scene(a.m, a.n, g.seed, g.resolved_field());
  if (a.sigma > 0) s = scenes::add_noise(s, a.sigma, g.seed + 1);
  if (a.perturb) s = scenes::perturb(s, g.seed + 2);
  json cfg = base_config("scene gen");
  cfg["n"] = a.n;
  cfg["m"] = a.m;
  cfg["sigma"] = a.sigma;
  cfg["perturb"] = a.perturb;
  emit(scenes::to_json(s), cfg);
}

void scene_validate(const SceneArgs& a) {
  const auto s = load_scene(a.in);
  json cfg = base_config("scene validate");
  cfg["in"] = a.in;
  emit({{"m", s.m()},
        {"n", s.n()},
        {"no_four_coplanar", scenes::no_four_coplanar(s.points)},
        {"common_nodal_cubic", s.n() >= 7 ? json(scenes::common_nodal_cubic(s.points)) : json(nullptr)},
        {"consistent", scenes::is_consistent(s)}},
       cfg);
}

// ---- focal -------------------------------------------------------------

struct FocalArgs {
  std::size_t n = 6, m = 1;
  std::string in;
  std::size_t camera = 1;
  std::uint64_t max_specs = 20000;
  bool identity = false;
};

std::vector<scenes::WorldPoint> points_for(const FocalArgs& a, json& cfg) {
  if (!a.in.empty()) {
    cfg["in"] = a.in;
    return load_scene(a.in).points;
  }
  cfg["n"] = a.n;
  return scenes::random_arrangement(a.n, g.seed, g.resolved_field());
}

void focal_generate(const FocalArgs& a) {
  json cfg = base_config("focal generate");
  const auto qbar = points_for(a, cfg);
  cfg["m"] = a.m;
  cfg["max_specs"] = a.max_specs;
  focal::GeneratorOptions opts;
  opts.jobs = g.jobs;
  opts.max_specs = a.max_specs;
  const auto sys = focal::generators(qbar, a.m, opts);
  json supports = json::array();
  for (const auto& e : sys.entries) supports.push_back(e.poly.size());
  emit({{"generators", sys.entries.size()},
        {"specs", sys.specs},
        {"duplicates", sys.duplicates},
        {"zeros", sys.zeros},
        {"supports", supports},
        {"system", focal::to_json(sys)}},
       cfg);
}

void focal_eval(const FocalArgs& a) {
  const auto s = load_scene(a.in);
  json cfg = base_config("focal eval");
  cfg["in"] = a.in;
  cfg["max_specs"] = a.max_specs;
  const std::uint64_t count = focal::primitive_spec_count(s.n(), s.m());
  json body{{"specs", count}};
  if (count <= a.max_specs) {
    json values = json::array();
    bool all_zero = true;
    for (const auto& spec : focal::primitive_specs(s.n(), s.m())) {
      const auto v = focal::evaluate_spec(s.points, s.observations[spec.camera - 1], spec);
      all_zero = all_zero && v.is_zero();
      values.push_back({{"spec", focal::to_json(spec)}, {"value", v.to_string()}});
    }
    body["values"] = values;
    body["all_zero"] = all_zero;
  } else {
    body["values"] = nullptr;
    body["all_zero"] = focal::evaluation_membership(s.points, s.observations, g.jobs);
  }
  emit(body, cfg);
}

void focal_membership(const FocalArgs& a) {
  const auto s = load_scene(a.in);
  json cfg = base_config("focal membership");
  cfg["in"] = a.in;
  const bool rank = focal::membership(s.points, s.observations);
  json body{{"n", s.n()}, {"m", s.m()}, {"rank_membership", rank}};
  if (s.n() >= 6) {
    const bool eval = focal::evaluation_membership(s.points, s.observations, g.jobs);
    body["evaluation_membership"] = eval;
    body["agree"] = eval == rank;
  }
  body["member"] = rank;
  emit(body, cfg);
}

void focal_resect(const FocalArgs& a) {
  const auto s = load_scene(a.in);
  json cfg = base_config("focal resect");
  cfg["in"] = a.in;
  cfg["camera"] = a.camera;
  if (a.camera < 1 || a.camera > s.m()) fail(ErrorCode::InvalidArgument, "camera index out of range");
  const auto r = focal::resect_dlt(s.points, s.observations[a.camera - 1]);
  emit({{"camera", scenes::matrix_json(r.camera)},
        {"lambda", scenes::vector_json(r.lambda)},
        {"exact_match", algebra::proportional(r.camera, s.cameras[a.camera - 1])}},
       cfg);
}

void focal_gin(const FocalArgs& a) {
  json cfg = base_config("focal gin");
  cfg["identity_change"] = a.identity;
  const auto qbar = scenes::random_arrangement(6, g.seed, g.resolved_field());
  const auto r = focal::gin_leading(qbar, g.seed, a.identity);
  emit({{"leading", r.leading.to_string(r.poly.ring())}, {"support", r.support}}, cfg);
}

// ---- duality -----------------------------------------------------------

struct DualityArgs {
  std::size_t n = 4, m = 2;
  std::string in, q1, q2;
};

void duality_swap(const DualityArgs& a) {
  json cfg = base_config("duality swap");
  duality::ReducedConfig c;
  if (!a.in.empty()) {
    cfg["in"] = a.in;
    c = duality::reduced_config_from_json(scenes::read_json_file(a.in));
  } else {
    cfg["m"] = a.m;
    cfg["n"] = a.n;
    c = duality::random_reduced_config(a.m, a.n, g.seed, g.resolved_field());
  }
  const auto swapped = duality::cw_swap(c);
  json body = duality::to_json(swapped);
  body["consistent"] = duality::is_consistent(swapped);
  emit(body, cfg);
}

void duality_normalize(const DualityArgs& a) {
  const auto s = load_scene(a.in);
  json cfg = base_config("duality normalize");
  cfg["in"] = a.in;
  if (s.n() < 4) fail(ErrorCode::InvalidArgument, "need at least four points");
  std::vector<scenes::WorldPoint> world(s.points.begin(), s.points.begin() + 4);
  std::vector<std::vector<scenes::ImagePoint>> images;
  for (const auto& row : s.observations) images.emplace_back(row.begin(), row.begin() + 4);
  const auto fn = duality::normalize_frame(world, images);
  json T = json::array();
  for (const auto& t : fn.T) T.push_back(scenes::matrix_json(t));
  emit({{"S", scenes::matrix_json(fn.S)}, {"T", T}}, cfg);
}

void duality_dual_f(const DualityArgs& a) {
  json cfg = base_config("duality dualF");
  const auto f = g.resolved_field();
  algebra::Vector q1, q2;
  if (!a.q1.empty() || !a.q2.empty()) {
    q1 = parse_vector(f, a.q1, 4);
    q2 = parse_vector(f, a.q2, 4);
  } else {
    Rng rng(g.seed);
    q1 = scenes::random_vector(f, 4, rng);
    q2 = scenes::random_vector(f, 4, rng);
  }
  cfg["q1"] = scenes::vector_json(q1);
  cfg["q2"] = scenes::vector_json(q2);
  const auto F = duality::dual_fundamental(q1, q2);
  emit({{"F", scenes::matrix_json(F)}, {"det", algebra::determinant(F).to_string()}}, cfg);
}

void duality_two_focals(const DualityArgs& a) {
  json cfg = base_config("duality two-focals");
  cfg["m"] = a.m;
  cfg["n"] = a.n;
  const auto q = duality::random_reduced_config(1, a.n, g.seed, g.resolved_field()).q;
  const auto polys = duality::reduced_two_focal_system(q, a.m);
  json list = json::array();
  for (const auto& p : polys) list.push_back(poly::to_json(p));
  emit({{"count", polys.size()}, {"forms", list}}, cfg);
}

// ---- ed ----------------------------------------------------------------

struct EdArgs {
  std::string kind = "resect";
  int n = 6, m = 2;
  std::optional<std::uint64_t> data_seed;
  int from = 0, to = 0;
  bool run = false;
  std::string config;
  ed::MonodromySettings st;
};

bool is_resect(const std::string& kind) {
  if (kind == "resect" || kind == "resectioning") return true;
  if (kind == "multiview" || kind == "triangulation") return false;
  fail(ErrorCode::InvalidArgument, "unknown kind: " + kind);
}

void apply_config_file(EdArgs& a) {
  if (a.config.empty()) return;
  const json j = scenes::read_json_file(a.config);
  try {
    a.st.stabilize = j.value("stabilize", a.st.stabilize);
    a.st.max_loops = j.value("max_loops", a.st.max_loops);
    a.st.loop_scale = j.value("loop_scale", a.st.loop_scale);
    a.st.max_seconds = j.value("max_seconds", a.st.max_seconds);
    a.st.dedup_tolerance = j.value("dedup_tolerance", a.st.dedup_tolerance);
    a.st.residual_tolerance = j.value("residual_tolerance", a.st.residual_tolerance);
    a.st.track.corrector_tolerance = j.value("corrector_tolerance", a.st.track.corrector_tolerance);
    a.st.track.initial_step = j.value("initial_step", a.st.track.initial_step);
    a.st.track.min_step = j.value("min_step", a.st.track.min_step);
    a.st.track.max_steps = j.value("max_steps", a.st.track.max_steps);
  } catch (const json::exception& e) {
    fail(ErrorCode::Schema, std::string("bad config file: ") + e.what());
  }
}

json tolerances(const ed::MonodromySettings& st) {
  return {{"stabilize", st.stabilize},
          {"max_loops", st.max_loops},
          {"loop_scale", st.loop_scale},
          {"max_seconds", std::isfinite(st.max_seconds) ? json(st.max_seconds) : json(nullptr)},
          {"dedup_tolerance", st.dedup_tolerance},
          {"residual_tolerance", st.residual_tolerance},
          {"corrector_tolerance", st.track.corrector_tolerance},
          {"chart_tolerance", st.track.chart_tolerance},
          {"initial_step", st.track.initial_step},
          {"min_step", st.track.min_step},
          {"max_steps", st.track.max_steps}};
}

json run_report(const EdArgs& a, bool resect, int size, std::uint64_t data_seed) {
  const auto map = resect ? ed::random_resectioning_map(size, data_seed)
                          : ed::random_multiview_map(size, data_seed);
  const auto r = ed::monodromy_count(map, g.seed, a.st);
  json failures = json::object();
  for (const auto& [k, v] : r.failures) failures[k] = v;
  json report{{"kind", ed::to_string(map.kind)},
              {resect ? "n" : "m", size},
              {"seed", g.seed},
              {"data_seed", data_seed},
              {"count", r.count},
              {"transitive", r.transitive},
              {"partial", r.partial},
              {"dominant", r.dominant},
              {"loops", r.loops},
              {"complete_loops", r.complete_loops},
              {"paths", r.paths},
              {"path_failures", failures},
              {"max_residual", r.max_residual},
              {"min_distance", r.min_distance},
              {"tolerances", tolerances(a.st)},
              {"wall_time_s", r.wall_time_s}};
  return report;
}

void ed_run(EdArgs& a) {
  apply_config_file(a);
  a.st.jobs = g.jobs;
  const bool resect = is_resect(a.kind);
  const int size = resect ? a.n : a.m;
  if (resect ? size < 5 : size < 2) fail(ErrorCode::InvalidArgument, "need n >= 5 or m >= 2");
  const std::uint64_t data_seed = a.data_seed.value_or(g.seed);
  json cfg = base_config("ed run");
  cfg["kind"] = a.kind;
  cfg[resect ? "n" : "m"] = size;
  cfg["data_seed"] = data_seed;
  cfg["settings"] = tolerances(a.st);
  if (!a.config.empty()) cfg["config_file"] = a.config;
  emit(run_report(a, resect, size, data_seed), cfg);
}

void ed_formula(const EdArgs& a) {
  const bool resect = is_resect(a.kind);
  const int size = resect ? a.n : a.m;
  json cfg = base_config("ed formula");
  cfg["kind"] = a.kind;
  cfg[resect ? "n" : "m"] = size;
  const auto value = resect ? ed::formula_resectioning(size) : ed::formula_multiview(size);
  emit({{"kind", resect ? "resectioning" : "multiview"}, {resect ? "n" : "m", size}, {"value", value}},
       cfg);
}

void ed_table(EdArgs& a) {
  apply_config_file(a);
  a.st.jobs = g.jobs;
  const bool resect = is_resect(a.kind);
  const int lo = a.from ? a.from : (resect ? 6 : 2);
  const int hi = a.to ? a.to : 15;
  if (lo > hi) fail(ErrorCode::InvalidArgument, "empty range");
  json cfg = base_config("ed table");
  cfg["kind"] = a.kind;
  cfg["from"] = lo;
  cfg["to"] = hi;
  cfg["run"] = a.run;
  json rows = json::array();
  bool mismatch = false;
  for (int k = lo; k <= hi; ++k) {
    const auto value = resect ? ed::formula_resectioning(k) : ed::formula_multiview(k);
    json row{{resect ? "n" : "m", k}, {"formula", value}};
    if (a.run) {
      const json rep = run_report(a, resect, k, a.data_seed.value_or(g.seed));
      row["monodromy"] = rep["count"];
      row["partial"] = rep["partial"];
      row["match"] = rep["count"] == value;
      mismatch = mismatch || !row["match"].get<bool>();
    }
    rows.push_back(row);
  }
  emit({{"kind", resect ? "resectioning" : "multiview"}, {"rows", rows}, {"mismatch", mismatch}}, cfg);
}

// ---- gb ----------------------------------------------------------------

struct GbArgs {
  std::size_t n = 7, m = 1;
  std::size_t scenes = 20;
  std::size_t samples = 200;
  std::string order = "lex";
  std::string formulation = "quotient";
  double max_seconds = 1800;
};

void gb_spair_check(const GbArgs& a) {
  json cfg = base_config("gb spair-check");
  cfg["n"] = a.n;
  cfg["samples"] = a.samples;
  cfg["order"] = a.order;
  const auto qbar = scenes::random_arrangement(a.n, g.seed, g.resolved_field());
  focal::GeneratorOptions opts;
  opts.jobs = g.jobs;
  const auto sys = focal::generators(qbar, 1, opts);
  const auto polys = focal::polynomials(sys);
  const auto ord = poly::MonomialOrder::by_name(a.order, sys.ring);
  const auto s = poly::sample_spairs(polys, ord, a.samples, g.seed);
  emit({{"generators", polys.size()},
        {"candidates", s.candidates},
        {"coprime_skipped", s.coprime},
        {"checked", s.checked},
        {"reduced_to_zero", s.reduced_to_zero},
        {"all_zero", s.checked == s.reduced_to_zero}},
       cfg);
}

// Whether the 6-focals alone pass the same checks as the full generator set:
// sampled S-pairs reduced modulo the 6-focals, and agreement of "all
// 6-focal minors vanish" with rank membership on consistent and perturbed
// scenes. A report, not a proof either way.
void gb_six_focals(const GbArgs& a) {
  const auto f = g.resolved_field();
  json cfg = base_config("gb six-focals");
  cfg["n"] = a.n;
  cfg["m"] = a.m;
  cfg["samples"] = a.samples;
  cfg["order"] = a.order;
  cfg["scenes"] = a.scenes;
  const auto qbar = scenes::random_arrangement(a.n, g.seed, f);
  focal::GeneratorOptions opts;
  opts.jobs = g.jobs;
  const auto sys = focal::generators(qbar, a.m, opts);
  std::vector<poly::MultiPoly> six;
  for (const auto& e : sys.entries)
    if (e.spec.k() == 6) six.push_back(e.poly);
  const auto ord = poly::MonomialOrder::by_name(a.order, sys.ring);
  const auto sp = poly::sample_spairs(six, ord, a.samples, g.seed);

  std::vector<focal::FocalSpec> six_specs;
  for (const auto& spec : focal::primitive_specs(a.n, a.m))
    if (spec.k() == 6) six_specs.push_back(spec);
  auto six_vanish = [&](const scenes::Scene& s) {
    for (const auto& spec : six_specs)
      if (!focal::evaluate_spec(s.points, s.observations[spec.camera - 1], spec).is_zero()) return false;
    return true;
  };
  std::size_t agree = 0, total = 0;
  for (std::size_t t = 0; t < a.scenes; ++t) {
    const auto cams = scenes::random_scene(a.m, a.n, g.seed + 1 + t, f).cameras;
    const auto s = scenes::synthesize(qbar, cams, g.seed + 1 + t);
    for (const auto& sc : {s, scenes::perturb(s, g.seed + 1000 + t)}) {
      agree += six_vanish(sc) == focal::membership(sc.points, sc.observations);
      ++total;
    }
  }
  emit({{"generators", sys.entries.size()},
        {"six_focals", six.size()},
        {"spair_candidates", sp.candidates},
        {"spair_checked", sp.checked},
        {"spair_reduced_to_zero", sp.reduced_to_zero},
        {"membership_agree", agree},
        {"membership_total", total},
        {"six_focals_suffice_on_samples", sp.checked == sp.reduced_to_zero && agree == total}},
       cfg);
}

void gb_degree68(const GbArgs& a) {
  const auto f = g.resolved_field();
  if (!f.is_prime()) fail(ErrorCode::InvalidArgument, "degree68 needs a prime field (--field fp:P)");
  ed::Degree68Options opts;
  opts.seed = g.seed;
  opts.prime = f.characteristic();
  if (a.formulation == "quotient") {
    opts.formulation = ed::CriticalFormulation::MinorsQuotient;
  } else if (a.formulation == "lagrange") {
    opts.formulation = ed::CriticalFormulation::Lagrange;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown formulation: " + a.formulation);
  }
  opts.budget.max_seconds = a.max_seconds;
  json cfg = base_config("gb degree68");
  cfg["formulation"] = ed::to_string(opts.formulation);
  cfg["max_seconds"] = a.max_seconds;
  cfg["max_pairs"] = opts.budget.max_pairs;
  cfg["max_terms"] = opts.budget.max_terms;
  cfg["max_memory"] = opts.budget.max_memory;
  const auto r = ed::degree68(opts);
  json body{{"status", r.complete ? "complete" : "budget_exceeded"},
            {"count", r.count ? json(*r.count) : json(nullptr)},
            {"hypersurface_terms", r.hypersurface_terms},
            {"critical_generators", r.critical_generators},
            {"basis_size", r.basis_size},
            {"pairs_processed", r.pairs_processed},
            {"wall_time_s", r.wall_time_s}};
  if (!r.complete) {
    body["exceeded"] = r.exceeded;
    body["stage"] = r.stage;
  }
  emit(body, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Camera resectioning varieties: focal systems, duality and ED degrees"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--field", g.field, "qq or fp:P")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str();
  app.add_option("--out", g.out, "Output file (stdout when omitted)");

  SceneArgs sa;
  auto* scene = app.add_subcommand("scene", "Generate or validate scenes");
  scene->require_subcommand(1);
  auto* scene_gen_cmd = scene->add_subcommand("gen", "Random scene");
  scene_gen_cmd->add_option("-n", sa.n, "Points")->capture_default_str();
  scene_gen_cmd->add_option("-m", sa.m, "Cameras")->capture_default_str();
  scene_gen_cmd->add_option("--noise", sa.sigma, "Gaussian noise sigma (qq only)");
  scene_gen_cmd->add_flag("--perturb", sa.perturb, "Perturb one observation");
  auto* scene_val_cmd = scene->add_subcommand("validate", "Check scene predicates");
  scene_val_cmd->add_option("--in", sa.in, "Scene JSON")->required();

  FocalArgs fa;
  auto* focal_cmd = app.add_subcommand("focal", "Focal polynomials");
  focal_cmd->require_subcommand(1);
  auto* fgen = focal_cmd->add_subcommand("generate", "Primitive k-focal generators");
  fgen->add_option("-n", fa.n, "Points (random arrangement)")->capture_default_str();
  fgen->add_option("-m", fa.m, "Cameras")->capture_default_str();
  fgen->add_option("--in", fa.in, "Scene JSON whose points are used");
  fgen->add_option("--max-specs", fa.max_specs, "Expansion limit")->capture_default_str();
  auto* feval = focal_cmd->add_subcommand("eval", "Evaluate every generator on a scene");
  feval->add_option("--in", fa.in, "Scene JSON")->required();
  feval->add_option("--max-specs", fa.max_specs, "List values up to this many specs")->capture_default_str();
  auto* fmem = focal_cmd->add_subcommand("membership", "Rank and evaluation membership");
  fmem->add_option("--in", fa.in, "Scene JSON")->required();
  auto* fres = focal_cmd->add_subcommand("resect", "Recover a camera from its kernel");
  fres->add_option("--in", fa.in, "Scene JSON")->required();
  fres->add_option("--camera", fa.camera, "Camera index (1-based)")->capture_default_str();
  auto* fgin = focal_cmd->add_subcommand("gin", "Leading monomial after a generic change");
  fgin->add_flag("--identity", fa.identity, "Skip the coordinate change");

  DualityArgs da;
  auto* dual = app.add_subcommand("duality", "Reduced cameras and duality");
  dual->require_subcommand(1);
  auto* dswap = dual->add_subcommand("swap", "Exchange camera and point parameters");
  dswap->add_option("--in", da.in, "Reduced configuration JSON");
  dswap->add_option("-m", da.m, "Cameras (random config)")->capture_default_str();
  dswap->add_option("-n", da.n, "Points (random config)")->capture_default_str();
  auto* dnorm = dual->add_subcommand("normalize", "Frame normalization maps");
  dnorm->add_option("--in", da.in, "Scene JSON (first four points are used)")->required();
  auto* dF = dual->add_subcommand("dualF", "Dual fundamental matrix");
  dF->add_option("--q1", da.q1, "First world point, comma separated");
  dF->add_option("--q2", da.q2, "Second world point, comma separated");
  auto* dtwo = dual->add_subcommand("two-focals", "Reduced 2-focal forms");
  dtwo->add_option("-m", da.m, "Cameras")->capture_default_str();
  dtwo->add_option("-n", da.n, "Points")->capture_default_str();

  EdArgs ea;
  auto* ed_cmd = app.add_subcommand("ed", "Euclidean distance degrees");
  ed_cmd->require_subcommand(1);
  auto add_kind = [&](CLI::App* c) {
    c->add_option("--kind", ea.kind, "resect or multiview")->capture_default_str();
    c->add_option("-n", ea.n, "Points (resectioning)")->capture_default_str();
    c->add_option("-m", ea.m, "Cameras (multiview)")->capture_default_str();
  };
  auto add_run = [&](CLI::App* c) {
    c->add_option("--data-seed", ea.data_seed, "Seed for the fixed points or cameras (default --seed)");
    c->add_option("--stabilize", ea.st.stabilize, "Loops without news before stopping")->capture_default_str();
    c->add_option("--max-loops", ea.st.max_loops, "Loop cap")->capture_default_str();
    c->add_option("--loop-scale", ea.st.loop_scale, "Loop size relative to the base data")->capture_default_str();
    c->add_option("--max-seconds", ea.st.max_seconds, "Time budget");
    c->add_option("--tolerance", ea.st.track.corrector_tolerance, "Corrector tolerance")->capture_default_str();
    c->add_option("--config", ea.config, "JSON file with settings");
  };
  auto* erun = ed_cmd->add_subcommand("run", "Monodromy solve");
  add_kind(erun);
  add_run(erun);
  auto* eform = ed_cmd->add_subcommand("formula", "Closed form");
  add_kind(eform);
  auto* etab = ed_cmd->add_subcommand("table", "Formula column, optionally with monodromy");
  etab->add_option("--kind", ea.kind, "resect or multiview")->capture_default_str();
  etab->add_option("--from", ea.from, "First n or m");
  etab->add_option("--to", ea.to, "Last n or m");
  etab->add_flag("--run", ea.run, "Also run monodromy for each row");
  add_run(etab);

  GbArgs ga;
  auto* gb = app.add_subcommand("gb", "Groebner basis checks");
  gb->require_subcommand(1);
  auto* gsp = gb->add_subcommand("spair-check", "Sampled S-pair reductions");
  gsp->add_option("-n", ga.n, "Points")->capture_default_str();
  gsp->add_option("--samples", ga.samples, "S-pairs to sample")->capture_default_str();
  gsp->add_option("--order", ga.order, "lex or grevlex")->capture_default_str();
  auto* gsix = gb->add_subcommand("six-focals", "Do the 6-focals alone pass the checks?");
  gsix->add_option("-n", ga.n, "Points")->capture_default_str();
  gsix->add_option("-m", ga.m, "Cameras")->capture_default_str();
  gsix->add_option("--samples", ga.samples, "S-pairs to sample")->capture_default_str();
  gsix->add_option("--order", ga.order, "lex or grevlex")->capture_default_str();
  gsix->add_option("--scenes", ga.scenes, "Consistent scenes (each also perturbed)")->capture_default_str();
  auto* g68 = gb->add_subcommand("degree68", "ED degree of the 6-focal over F_p");
  g68->add_option("--formulation", ga.formulation, "quotient or lagrange")->capture_default_str();
  g68->add_option("--max-seconds", ga.max_seconds, "Time budget")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (scene_gen_cmd->parsed()) scene_gen(sa);
    else if (scene_val_cmd->parsed()) scene_validate(sa);
    else if (fgen->parsed()) focal_generate(fa);
    else if (feval->parsed()) focal_eval(fa);
    else if (fmem->parsed()) focal_membership(fa);
    else if (fres->parsed()) focal_resect(fa);
    else if (fgin->parsed()) focal_gin(fa);
    else if (dswap->parsed()) duality_swap(da);
    else if (dnorm->parsed()) duality_normalize(da);
    else if (dF->parsed()) duality_dual_f(da);
    else if (dtwo->parsed()) duality_two_focals(da);
    else if (erun->parsed()) ed_run(ea);
    else if (eform->parsed()) ed_formula(ea);
    else if (etab->parsed()) ed_table(ea);
    else if (gsp->parsed()) gb_spair_check(ga);
    else if (gsix->parsed()) gb_six_focals(ga);
    else if (g68->parsed()) gb_degree68(ga);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << "error [Schema]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error [Internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
