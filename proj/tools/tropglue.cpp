#include "tropglue/json_io.hpp"
#include "tropglue/relative.hpp"
#include "tropglue/toric_count.hpp"
#include "tropglue/version.hpp"

#include "CLI11.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tropglue;
using io::json;
using io::Fields;
using io::SchemaError;
using io::to_json;

namespace {

enum Exit { Ok = 0, Internal = 1, Schema = 2, Domain = 3, NoVerdict = 4 };

struct Options {
  std::string input, output, oracle;
  std::uint64_t seed = 0;
  bool require_verdict = false, intermediates = false, quiet = false;
};

struct Outcome {
  json result, intermediates = json::object();
  std::string summary;
  bool verdict_unknown = false;
};

struct ReadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ReadError("cannot read " + path);
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

json parse_json(const std::string &text, const std::string &what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw SchemaError(what + ": " + e.what());
  }
}

json criterion_json(const NonemptinessReport &r) {
  return {{"verdict", to_string(r.verdict)},
          {"condition1", r.condition1},
          {"condition2", r.condition2},
          {"condition3", r.condition3}};
}

// ---- fibre ----

FsSharpMonoid read_monoid(const json &j, const std::string &where) {
  Fields f(j, where);
  if (auto n = f.opt("free")) {
    f.done();
    return FsSharpMonoid::free(static_cast<std::size_t>(io::read_small(*n, f.at("free"), 0, 16)));
  }
  auto r = static_cast<std::size_t>(io::read_small(f.req("rank"), f.at("rank"), 0, 16));
  const json &gs = io::read_array(f.req("dual_generators"), f.at("dual_generators"));
  f.done();
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < gs.size(); ++i)
    gens.push_back(io::read_vector(gs[i], f.at("dual_generators") + "[" + std::to_string(i) + "]", r));
  FsSharpMonoid m{Cone(r, gens)};
  if (!m.is_sharp())
    throw DomainError(where + ": dual cone must be full-dimensional and strictly convex");
  return m;
}

Outcome run_fibre(Fields &f) {
  FsSharpMonoid P = read_monoid(f.req("P"), "P"), Q1 = read_monoid(f.req("Q1"), "Q1"),
                Q2 = read_monoid(f.req("Q2"), "Q2");
  IntMatrix t1 = io::read_matrix(f.req("theta1"), "theta1", Q1.rank(), P.rank());
  IntMatrix t2 = io::read_matrix(f.req("theta2"), "theta2", Q2.rank(), P.rank());
  PointDiagram d{P, Q1, Q2, t1, t2, PrimedDiagram::trivial(P.rank(), Q1.rank(), Q2.rank())};
  if (auto pj = f.opt("primed")) {
    Fields p(*pj, "primed");
    FsSharpMonoid Pp = read_monoid(p.req("P"), "primed.P"), Q1p = read_monoid(p.req("Q1"), "primed.Q1"),
                  Q2p = read_monoid(p.req("Q2"), "primed.Q2");
    d.primed = PrimedDiagram{Pp,
                             Q1p,
                             Q2p,
                             io::read_matrix(p.req("theta1"), "primed.theta1", Q1p.rank(), Pp.rank()),
                             io::read_matrix(p.req("theta2"), "primed.theta2", Q2p.rank(), Pp.rank()),
                             io::read_matrix(p.req("g_P"), "primed.g_P", P.rank(), Pp.rank()),
                             io::read_matrix(p.req("g_Q1"), "primed.g_Q1", Q1.rank(), Q1p.rank()),
                             io::read_matrix(p.req("g_Q2"), "primed.g_Q2", Q2.rank(), Q2p.rank()),
                             io::read_bool(p.req("nonempty"), "primed.nonempty")};
    p.done();
  }
  f.done();
  Outcome o;
  Integer c = fs_point_fibre_components(d);
  Integer c_dual = fs_point_fibre_components_dual(d);
  auto crit = nonempty_sufficient(d);
  o.result = {{"components", to_json(c)},
              {"components_dual", to_json(c_dual)},
              {"theta_cokernel", to_json(cokernel(d.theta()))},
              {"nonempty", criterion_json(crit)}};
  o.intermediates = {{"theta", to_json(d.theta())}, {"theta_transpose", to_json(d.theta().transpose())}};
  o.verdict_unknown = crit.verdict == Nonemptiness::Unknown;
  o.summary = "components " + c.str() + ", nonempty " + to_string(crit.verdict);
  return o;
}

// ---- glue / rigid ----

json rigid_json(const RigidReport &r) {
  return {{"mu_rigid", to_json(r.mu_rigid)},
          {"mu", to_json(r.mu)},
          {"m_tau", to_json(r.m_tau)},
          {"degree", to_json(r.degree)},
          {"transverse", r.transverse},
          {"snake_ok", r.snake_ok},
          {"kernel_rank", r.kernel_rank},
          {"kernel_bar_rank", r.kernel_bar_rank},
          {"psi_cokernel", to_json(r.psi_cokernel)},
          {"psi_bar_cokernel", to_json(r.psi_bar_cokernel)}};
}

Outcome run_glue(Fields &f) {
  ConeComplex cx = io::read_complex(f.req("complex"));
  DecoratedType dt = io::read_type(f.req("type"), &cx);
  std::vector<std::string> split = io::read_strings(f.req("split"), "split");
  f.done();
  GluingProblem p{cx, dt, split};
  auto r = glue_verdict(p);
  Outcome o;
  o.result = {{"mu", to_json(r.mu)},
              {"transverse", r.transverse},
              {"kernel_rank", r.kernel_rank},
              {"psi_cokernel", to_json(r.psi_cokernel)},
              {"nonempty", to_string(r.nonempty)},
              {"nonempty_reason", r.nonempty_reason},
              {"components", r.data.parts.parts.size()},
              {"m_tau", nullptr},
              {"mu_rigid", nullptr},
              {"degree", nullptr}};
  if (r.criterion)
    o.result["criterion"] = criterion_json(*r.criterion);
  // rigid quantities when the type is rigid over a base with delta
  if (cx.has_delta() && dt.type.is_connected()) {
    BasicCone bc = basic_cone(dt.type, cx);
    if (bc.realizable && bc.dim() == 1) {
      auto rr = rigid_report(dt.type, cx);
      o.result["m_tau"] = to_json(rr.m_tau);
      o.result["mu_rigid"] = to_json(rr.mu_rigid);
      o.result["degree"] = to_json(rr.degree);
    }
  }
  json cones = json::array();
  for (auto &c : r.data.cones)
    cones.push_back(to_json(c));
  auto consistency = theta_psi_consistency(p);
  o.intermediates = {{"psi", to_json(r.data.psi)},
                     {"split_edges", split},
                     {"component_cones", cones},
                     {"theta_t_cokernel", to_json(consistency.theta_t)},
                     {"diagram_cokernel", to_json(consistency.diagram)},
                     {"theta_psi_consistent", consistency.ok}};
  o.verdict_unknown = r.nonempty == Nonemptiness::Unknown;
  o.summary = std::string("mu ") + r.mu.str() + ", " + (r.transverse ? "transverse" : "not transverse") +
              ", nonempty " + to_string(r.nonempty);
  return o;
}

Outcome run_rigid(Fields &f) {
  ConeComplex cx = io::read_complex(f.req("complex"));
  DecoratedType dt = io::read_type(f.req("type"), &cx);
  f.done();
  auto r = rigid_report(dt.type, cx);
  Outcome o;
  o.result = rigid_json(r);
  o.result["classical_coefficient"] = nullptr;
  try {
    auto c = classical_coefficient(dt.type, cx);
    o.result["classical_coefficient"] = {{"weight_product", to_json(c.weight_product)},
                                         {"coefficient", to_json(c.coefficient)}};
  } catch (const DomainError &e) {
    o.result["classical_shape"] = e.what();
  }
  o.intermediates = {{"psi", to_json(r.psi)}, {"psi_bar", to_json(r.psi_bar)},
                     {"basic_cone", to_json(basic_cone(dt.type, cx))}};
  o.summary = "mu_rigid " + r.mu_rigid.str() + ", m_tau " + r.m_tau.str() + ", degree " + to_string(r.degree);
  return o;
}

// ---- walls ----

json tau_out_json(const TauOutClass &c) {
  json legs = json::array(), rays = json::array(), inter = json::array();
  for (auto &l : c.legs)
    legs.push_back({{"id", l.id}, {"u", to_json(l.u)}, {"ray", to_json(l.ray)}, {"weight", to_json(l.weight)}});
  for (auto &r : c.rays)
    rays.push_back(to_json(r));
  for (auto &x : c.intersections)
    inter.push_back(to_json(x));
  return {{"vertex", c.vertex}, {"cone", c.sigma_x},      {"position", to_json(c.position)},
          {"v_x", to_json(c.v_x)}, {"legs", legs},         {"rays", rays},
          {"intersections", inter}, {"balanced", c.balanced}};
}

Outcome run_wall_validate(Fields &f) {
  ConeComplex cx = io::read_complex(f.req("complex"));
  DecoratedType dt = io::read_type(f.req("type"), &cx);
  WallCheckOptions opt;
  if (auto d = f.opt("dimension"))
    opt.dimension = static_cast<std::size_t>(io::read_small(*d, "dimension", 1, 16));
  f.done();
  auto v = validate_wall_type(dt, cx, opt);
  Outcome o;
  o.result = {{"valid", v.valid},
              {"genus_zero", v.genus_zero},
              {"single_leg", v.single_leg},
              {"leg_nonzero", v.leg_nonzero},
              {"realizable", v.realizable},
              {"balanced", v.balanced},
              {"dim_tau", v.dim_tau},
              {"dim_out", v.dim_out},
              {"clauses", {v.clause1, v.clause2, v.clause3}},
              {"problems", v.problems},
              {"k_tau", nullptr},
              {"tau_out", nullptr}};
  o.summary = v.valid ? "wall type" : "not a wall type";
  if (v.valid) {
    auto k = k_tau_report(dt, cx, opt);
    o.result["k_tau"] = to_json(k.k);
    o.result["h_cokernel"] = to_json(k.cokernel);
    auto t = build_tau_out(dt, cx, opt);
    o.result["tau_out"] = tau_out_json(t);
    o.intermediates = {{"h", to_json(k.h)}, {"quotient", to_json(t.quotient)}};
    o.summary += ", k_tau " + k.k.str();
  }
  return o;
}

Outcome run_wall_recurse(Fields &f) {
  WallRecursionInput in;
  const json &cs = io::read_array(f.req("children"), "children");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string w = "children[" + std::to_string(i) + "]";
    Fields c(cs[i], w);
    WallChild ch;
    ch.k = io::read_integer(c.req("k"), c.at("k"));
    if (ch.k < 1)
      throw SchemaError(c.at("k") + ": must be positive");
    ch.W = io::read_rational(c.req("W"), c.at("W"));
    if (auto k = c.opt("key"))
      ch.key = io::read_string(*k, c.at("key"));
    if (auto t = c.opt("type"))
      ch.type = io::read_type(*t, nullptr, c.at("type"));
    c.done();
    in.children.push_back(std::move(ch));
  }
  in.N_out = io::read_rational(f.req("N_out"), "N_out");
  in.w_out = io::read_integer(f.req("w_out"), "w_out");
  if (in.w_out < 1)
    throw SchemaError("w_out: must be positive");
  if (auto a = f.opt("aut"))
    in.aut = io::read_integer(*a, "aut");
  f.done();
  auto r = wall_recursion_step(in);
  Outcome o;
  json kw = json::array();
  for (auto &c : in.children)
    kw.push_back(to_json(c.kW()));
  o.result = {{"kW", to_json(r.kW)}, {"aut", to_json(r.aut)}, {"q", in.children.size()}};
  o.intermediates = {{"children_kW", kw}};
  o.summary = "k_tau W_tau = " + to_string(r.kW);
  return o;
}

// ---- toric ----

ToricEnd read_end(const json &j, const std::string &where) {
  Fields f(j, where);
  ToricEnd e{io::read_vector(f.req("direction"), f.at("direction"), 2), 1};
  if (auto w = f.opt("weight"))
    e.w = io::read_integer(*w, f.at("weight"));
  f.done();
  return e;
}

ToricCountProblem read_toric(Fields &f, const std::string &where) {
  ToricCountProblem p;
  if (auto fan = f.opt("fan")) {
    io::read_array(*fan, where + "fan");
    for (std::size_t i = 0; i < fan->size(); ++i)
      p.fan_rays.push_back(io::read_vector((*fan)[i], where + "fan[" + std::to_string(i) + "]", 2));
  }
  const json &cs = io::read_array(f.req("constrained"), where + "constrained");
  for (std::size_t i = 0; i < cs.size(); ++i)
    p.constrained.push_back(read_end(cs[i], where + "constrained[" + std::to_string(i) + "]"));
  p.out = read_end(f.req("out"), where + "out");
  return p;
}

json solutions_json(const ToricCountResult &r) {
  json out = json::array();
  for (auto &s : r.solutions) {
    json pos = json::array(), len = json::array();
    for (auto &[x, y] : s.position)
      pos.push_back({to_json(x), to_json(y)});
    for (auto &l : s.length)
      len.push_back(to_json(l));
    out.push_back({{"tree", s.tree}, {"positions", pos}, {"lengths", len}, {"multiplicity", to_json(s.multiplicity)}});
  }
  return out;
}

Outcome run_count_toric(Fields &f, const Options &opt) {
  ToricCountProblem p = read_toric(f, "");
  std::optional<RatVector> offsets;
  if (auto o = f.opt("offsets")) {
    io::read_array(*o, "offsets");
    offsets.emplace();
    for (std::size_t i = 0; i < o->size(); ++i)
      offsets->push_back(io::read_rational((*o)[i], "offsets[" + std::to_string(i) + "]"));
  }
  f.done();
  auto r = count(p, opt.seed, offsets);
  Outcome o;
  o.result = {{"count", to_json(r.count)},
              {"solutions", r.solutions.size()},
              {"multiplicity_sum", to_json(r.multiplicity_sum)},
              {"configuration", to_json(r.configuration)},
              {"attempts", r.attempts},
              {"trees", r.trees}};
  o.intermediates = {{"solutions", solutions_json(r)}};
  o.summary = "count " + to_string(r.count) + " from " + std::to_string(r.solutions.size()) + " tropical curves";
  return o;
}

// ---- blow-up ----

PartitionOracle table_oracle(const json &table, const std::string &where) {
  if (!table.is_object())
    throw SchemaError(where + ": expected an object keyed by partition collections");
  std::map<std::string, Rational> values;
  for (auto it = table.begin(); it != table.end(); ++it)
    values[it.key()] = io::read_rational(*it, where + "." + it.key());
  return [values](const PartitionCollection &c) {
    auto it = values.find(to_string(c));
    if (it == values.end())
      throw DomainError("oracle table has no value for " + to_string(c));
    return it->second;
  };
}

Outcome run_blowup(Fields &f, const Options &opt) {
  std::map<WeightKey, unsigned> weights;
  const json &wj = f.req("weights");
  if (!wj.is_object())
    throw SchemaError("weights: expected an object");
  for (auto it = wj.begin(); it != wj.end(); ++it)
    weights[io::read_weight_key(it.key(), "weights")] =
        static_cast<unsigned>(io::read_small(*it, "weights." + it.key(), 0, 12));
  std::string mode = io::read_string(f.req("oracle"), "oracle");
  const json *table = f.opt("table");
  const json *file = f.opt("file");
  const json *toric = f.opt("toric");
  f.done();
  std::string file_path;
  if (file)
    file_path = io::read_string(*file, "file");
  if (!opt.oracle.empty()) {
    if (opt.oracle == "tropical")
      mode = "tropical";
    else {
      mode = "file";
      file_path = opt.oracle;
    }
  }

  Outcome o;
  PartitionOracle oracle;
  if (mode == "table") {
    if (!table)
      throw SchemaError("table: required when the oracle is a table");
    oracle = table_oracle(*table, "table");
  } else if (mode == "file") {
    if (file_path.empty())
      throw SchemaError("file: an oracle file is required");
    std::string text = read_file(file_path);
    o.result["oracle_sha256"] = sha256_hex(text);
    oracle = table_oracle(parse_json(text, file_path), file_path);
  } else if (mode == "tropical") {
    if (!toric)
      throw SchemaError("toric: required when the oracle is tropical");
    Fields t(*toric, "toric");
    ToricCountProblem base = read_toric(t, "toric.");
    const json &dj = t.req("directions");
    t.done();
    if (!dj.is_object())
      throw SchemaError("toric.directions: expected an object");
    std::map<WeightKey, IntVector> dirs;
    for (auto it = dj.begin(); it != dj.end(); ++it)
      dirs[io::read_weight_key(it.key(), "toric.directions")] =
          io::read_vector(*it, "toric.directions." + it.key(), 2);
    oracle = toric_oracle(base, dirs, opt.seed);
  } else {
    throw SchemaError("oracle: expected \"table\", \"file\" or \"tropical\"");
  }

  auto r = blowup_formula(weights, oracle);
  json terms = json::array();
  for (auto &t : r.terms)
    terms.push_back({{"collection", to_string(t.collection)},
                     {"oracle_value", to_json(t.oracle_value)},
                     {"aut", to_json(t.aut)},
                     {"factor", to_json(t.factor)},
                     {"contribution", to_json(t.contribution)}});
  o.result["value"] = to_json(r.value);
  o.result["oracle"] = mode;
  o.result["terms"] = terms.size();
  o.intermediates = {{"terms", terms}};
  o.summary = "blow-up sum " + to_string(r.value) + " over " + std::to_string(r.terms.size()) + " collections";
  return o;
}

// ---- flatness ----

Contraction read_contraction(const json &j, const TropicalType &cand, const TropicalType &t, const std::string &where) {
  Fields f(j, where);
  Contraction phi;
  auto lookup = [&](const json &m, const std::string &key, const std::string &w) -> const json & {
    if (!m.is_object())
      throw SchemaError(w + ": expected an object");
    auto it = m.find(key);
    if (it == m.end())
      throw SchemaError(w + ": no image for " + key);
    return *it;
  };
  const json &vm = f.req("vertex_map");
  const json *em = f.opt("edge_map");
  const json *lm = f.opt("leg_map");
  f.done();
  for (auto &v : cand.vertices) {
    std::string id = io::read_string(lookup(vm, v.id, where + ".vertex_map"), where + ".vertex_map." + v.id);
    auto x = t.find_vertex(id);
    if (!x)
      throw SchemaError(where + ".vertex_map: unknown vertex " + id);
    phi.vertex_map.push_back(*x);
  }
  for (auto &e : cand.edges) {
    if (!em)
      throw SchemaError(where + ": edge_map required");
    const json &x = lookup(*em, e.id, where + ".edge_map");
    if (x.is_null()) {
      phi.edge_map.push_back(std::nullopt);
      continue;
    }
    std::string id = io::read_string(x, where + ".edge_map." + e.id);
    auto y = t.find_edge(id);
    if (!y)
      throw SchemaError(where + ".edge_map: unknown edge " + id);
    phi.edge_map.push_back(*y);
  }
  for (auto &l : cand.legs) {
    if (!lm)
      throw SchemaError(where + ": leg_map required");
    std::string id = io::read_string(lookup(*lm, l.id, where + ".leg_map"), where + ".leg_map." + l.id);
    auto y = t.find_leg(id);
    if (!y)
      throw SchemaError(where + ".leg_map: unknown leg " + id);
    phi.leg_map.push_back(*y);
  }
  return phi;
}

Outcome run_flatness(Fields &f) {
  ConeComplex cx = io::read_complex(f.req("complex"));
  DecoratedType dt = io::read_type(f.req("type"), &cx);
  const auto &t = dt.type;
  std::vector<std::size_t> legs;
  for (auto &id : io::read_strings(f.req("legs"), "legs")) {
    auto l = t.find_leg(id);
    if (!l)
      throw SchemaError("legs: unknown leg " + id);
    legs.push_back(*l);
  }
  std::size_t limit = 20000;
  if (auto l = f.opt("limit"))
    limit = static_cast<std::size_t>(io::read_small(*l, "limit", 1, 1000000));
  std::vector<FlatnessCandidate> cands;
  std::string source = "generizations";
  if (auto cj = f.opt("candidates")) {
    source = "supplied";
    io::read_array(*cj, "candidates");
    for (std::size_t i = 0; i < cj->size(); ++i) {
      std::string w = "candidates[" + std::to_string(i) + "]";
      Fields c((*cj)[i], w);
      TropicalType ct = io::read_type(c.req("type"), &cx, c.at("type")).type;
      Contraction phi = read_contraction(c.req("map"), ct, t, c.at("map"));
      c.done();
      cands.push_back({ct, phi});
    }
  }
  f.done();
  if (source == "generizations")
    cands = cone_generizations(t, cx, limit);
  auto r = flatness_check(t, cx, legs, cands);
  Outcome o;
  json entries = json::array();
  for (auto &e : r.entries)
    entries.push_back({{"realizable", e.realizable}, {"dim", e.dim}, {"required", e.required}, {"holds", e.holds}});
  o.result = {{"flat", r.flat},
              {"dim", r.dim},
              {"candidates", cands.size()},
              {"source", source},
              {"violation", r.violation ? json(*r.violation) : json(nullptr)}};
  json types = json::array();
  for (auto &c : cands)
    types.push_back(to_json(c.type));
  o.intermediates = {{"entries", entries}, {"candidate_types", types}};
  o.summary = std::string(r.flat ? "flat" : "not flat") + " over " + std::to_string(cands.size()) + " candidates";
  return o;
}

// ---- projection along a ray ----

Outcome run_project_ray(Fields &f) {
  ConeComplex cx = io::read_complex(f.req("complex"));
  DecoratedType dt = io::read_type(f.req("type"), &cx);
  std::string ray = io::read_string(f.req("ray"), "ray");
  f.done();
  if (!cx.has(ray))
    throw SchemaError("ray: unknown cone " + ray);
  auto p = project_type_along_ray(dt.type, cx, ray);
  Outcome o;
  json cones = json::object(), vectors = json::object();
  for (auto &c : p.quotient.cones())
    cones[c.id] = to_json(c.cone);
  for (auto &[id, v] : p.ray_vector)
    vectors[id] = to_json(v);
  o.result = {{"ray", ray},
              {"type", to_json(p.type)},
              {"cones", cones},
              {"leg_positive", p.leg_positive},
              {"positive", p.positive},
              {"lift", nullptr}};
  if (cx.has_delta()) {
    auto lc = relative_lift_cone(dt.type, cx, ray);
    json fs = json::array();
    for (auto &fn : lc.functionals)
      fs.push_back(to_json(fn));
    o.result["lift"] = {{"base_dim", lc.base.dim()}, {"functionals", fs}, {"cone", to_json(lc.cone)}};
  }
  json charts = json::object();
  for (auto &[id, q] : p.charts)
    charts[id] = {{"quotient", to_json(q.quotient)}, {"lift", to_json(q.lift)}};
  o.intermediates = {{"ray_vectors", vectors}, {"charts", charts}};
  o.summary = std::string("projected along ") + ray + (p.positive ? ", legs positive" : ", some leg leaves its cone");
  return o;
}

Outcome dispatch(const std::string &kind, Fields &f, const Options &opt) {
  if (kind == "fibre")
    return run_fibre(f);
  if (kind == "glue")
    return run_glue(f);
  if (kind == "rigid")
    return run_rigid(f);
  if (kind == "wall-validate")
    return run_wall_validate(f);
  if (kind == "wall-recurse")
    return run_wall_recurse(f);
  if (kind == "blowup")
    return run_blowup(f, opt);
  if (kind == "count-toric")
    return run_count_toric(f, opt);
  if (kind == "flatness")
    return run_flatness(f);
  if (kind == "project-ray")
    return run_project_ray(f);
  throw std::logic_error("unhandled kind " + kind);
}

int run(const std::string &kind, const Options &opt) {
  std::string text = read_file(opt.input);
  json doc = parse_json(text, opt.input);
  Fields f(doc, "input");
  std::string version = io::read_string(f.req("version"), "version");
  if (version != "1")
    throw SchemaError("version: unsupported problem file version " + version);
  std::string declared = io::read_string(f.req("kind"), "kind");
  if (declared != kind)
    throw SchemaError("kind: file declares \"" + declared + "\" but the subcommand is \"" + kind + "\"");
  Outcome o = dispatch(kind, f, opt);

  json report = {{"tool", "tropglue"},
                 {"version", tropglue::version},
                 {"kind", kind},
                 {"input_sha256", sha256_hex(text)},
                 {"seed", opt.seed},
                 {"result", o.result}};
  if (opt.intermediates)
    report["intermediates"] = o.intermediates;
  std::string out = report.dump(2) + "\n";
  if (opt.output.empty())
    std::cout << out;
  else {
    std::ofstream of(opt.output, std::ios::binary);
    if (!of)
      throw ReadError("cannot write " + opt.output);
    of << out;
  }
  if (!opt.quiet)
    std::cerr << kind << ": " << o.summary << "\n";
  if (opt.require_verdict && o.verdict_unknown) {
    std::cerr << "tropglue: verdict is Unknown\n";
    return NoVerdict;
  }
  return Ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Gluing multiplicities and degeneration formulas for tropical types"};
  app.require_subcommand(1, 1);
  Options opt;
  const std::vector<std::pair<std::string, std::string>> kinds{
      {"fibre", "components of a fibre product of log points"},
      {"glue", "gluing multiplicity and transversality of a split type"},
      {"rigid", "rigid curve degree over a base ray"},
      {"wall-validate", "wall type conditions, k_tau and the type out of the wall"},
      {"wall-recurse", "one step of the wall recursion"},
      {"blowup", "partition sum for a blow-up"},
      {"count-toric", "tropical count of rational curves in a toric surface"},
      {"flatness", "flatness inequality over candidate generizations"},
      {"project-ray", "push a type forward along a ray"},
  };
  for (auto &[name, desc] : kinds) {
    auto *sc = app.add_subcommand(name, desc);
    sc->fallthrough();
    sc->add_option("input", opt.input, "problem file, or - for stdin")->required();
  }
  app.add_option("--oracle", opt.oracle, "blow-up oracle: a table file or \"tropical\"");
  app.add_option("--seed", opt.seed, "seed for generic configurations");
  app.add_flag("--require-verdict", opt.require_verdict, "exit 4 when non-emptiness is Unknown");
  app.add_flag("--emit-intermediates", opt.intermediates, "include matrices and cones in the report");
  app.add_option("-o,--output", opt.output, "write the report here instead of stdout");
  app.add_flag("-q,--quiet", opt.quiet, "no summary on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? Ok : Schema;
  }
  std::string kind = app.get_subcommands().front()->get_name();
  try {
    return run(kind, opt);
  } catch (const ReadError &e) {
    std::cerr << "tropglue: " << e.what() << "\n";
    return Schema;
  } catch (const SchemaError &e) {
    std::cerr << "tropglue: schema error: " << e.what() << "\n";
    return Schema;
  } catch (const DomainError &e) {
    std::cerr << "tropglue: " << e.what() << "\n";
    return Domain;
  } catch (const std::exception &e) {
    std::cerr << "tropglue: internal error: " << e.what() << "\n";
    return Internal;
  }
}
