#include "skymason/blueprint.hpp"

#include <nlohmann/json.hpp>

#include "skymason/graphs.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace skymason {

using nlohmann::json;

namespace {

constexpr double kLayerZTol = 1e-3;

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
  throw ParseError("blueprint: " + where + ": " + what);
}

const json& require_key(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(where, "missing field '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_fail(where, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_fail(where, "expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) schema_fail(where, "expected a boolean");
  return v.get<bool>();
}

Vec3 as_vec3(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) schema_fail(where, "expected [x, y, z]");
  return {as_number(v[0], where), as_number(v[1], where), as_number(v[2], where)};
}

MissionParams parse_params(const json& root) {
  MissionParams p;
  if (!root.contains("params")) return p;
  const json& jp = root.at("params");
  if (!jp.is_object()) schema_fail("params", "expected an object");

  auto num = [&](const char* key, double& field) {
    if (jp.contains(key)) field = as_number(jp.at(key), std::string("params.") + key);
  };
  num("r_c", p.r_c);
  num("h_cr", p.h_cr);
  num("t_f", p.t_f);
  num("d", p.d);
  num("w_prox", p.w_prox);
  num("w_dist", p.w_dist);
  num("w_plane", p.w_plane);
  num("sigma_tol", p.sigma_tol);
  num("c_th", p.c_th);
  num("r_pl", p.r_pl);
  num("dt", p.dt);
  if (jp.contains("n_window")) p.n_window = as_int(jp.at("n_window"), "params.n_window");
  if (jp.contains("seed")) {
    const json& s = jp.at("seed");
    if (!s.is_number_integer()) schema_fail("params.seed", "expected an integer");
    p.seed = s.get<std::uint64_t>();
  }
  return p;
}

BrickSpec parse_brick(const json& jb, std::size_t index) {
  std::ostringstream where;
  where << "bricks[" << index << "]";
  const std::string w = where.str();
  if (!jb.is_object()) schema_fail(w, "expected an object");

  BrickSpec b;
  b.id = as_int(require_key(jb, "id", w), w + ".id");
  b.layer = as_int(require_key(jb, "layer", w), w + ".layer");
  b.target_center = as_vec3(require_key(jb, "target_center", w), w + ".target_center");
  b.target_yaw = as_number(require_key(jb, "target_yaw", w), w + ".target_yaw");
  b.dims = as_vec3(require_key(jb, "dims", w), w + ".dims");

  const json& jm = require_key(jb, "marker_ids", w);
  if (!jm.is_array() || jm.size() != 2) schema_fail(w + ".marker_ids", "expected [id1, id2]");
  b.marker_ids = {as_int(jm[0], w + ".marker_ids"), as_int(jm[1], w + ".marker_ids")};

  if (jb.contains("pre_placed")) b.pre_placed = as_bool(jb.at("pre_placed"), w + ".pre_placed");

  if (jb.contains("pickup_approx")) {
    b.pickup_approx = as_vec3(jb.at("pickup_approx"), w + ".pickup_approx");
    b.has_pickup = true;
  }
  return b;
}

std::optional<int> parse_pickup_site_ref(const json& jb, std::size_t index) {
  if (!jb.is_object() || !jb.contains("pickup_site")) return std::nullopt;
  std::ostringstream where;
  where << "bricks[" << index << "].pickup_site";
  return as_int(jb.at("pickup_site"), where.str());
}

Blueprint parse_document(const json& root) {
  if (!root.is_object()) schema_fail("root", "expected a JSON object");

  Blueprint bp;
  bp.params = parse_params(root);

  std::vector<std::optional<int>> site_refs;
  if (root.contains("bricks")) {
    const json& jb = root.at("bricks");
    if (!jb.is_array()) schema_fail("bricks", "expected an array");
    for (std::size_t i = 0; i < jb.size(); ++i) {
      bp.plan.bricks.push_back(parse_brick(jb[i], i));
      site_refs.push_back(parse_pickup_site_ref(jb[i], i));
    }
  }

  if (root.contains("pickup_sites")) {
    const json& js = root.at("pickup_sites");
    if (!js.is_array()) schema_fail("pickup_sites", "expected an array");
    for (std::size_t i = 0; i < js.size(); ++i) {
      std::ostringstream where;
      where << "pickup_sites[" << i << "]";
      const std::string w = where.str();
      if (!js[i].is_object()) schema_fail(w, "expected an object");
      PickupSite site;
      site.id = as_int(require_key(js[i], "id", w), w + ".id");
      site.position = as_vec3(require_key(js[i], "position", w), w + ".position");
      bp.setup.pickup_sites.push_back(site);
    }
  }

  if (root.contains("agents")) {
    const json& ja = root.at("agents");
    if (!ja.is_array()) schema_fail("agents", "expected an array");
    for (std::size_t i = 0; i < ja.size(); ++i) {
      std::ostringstream where;
      where << "agents[" << i << "]";
      const std::string w = where.str();
      if (!ja[i].is_object()) schema_fail(w, "expected an object");
      AgentSpec a;
      a.id = as_int(require_key(ja[i], "id", w), w + ".id");
      const json& jk = require_key(ja[i], "kind", w);
      if (!jk.is_string()) schema_fail(w + ".kind", "expected \"brick\" or \"adhesion\"");
      const std::string kind = jk.get<std::string>();
      if (kind == "brick") {
        a.kind = AgentKind::brick;
      } else if (kind == "adhesion") {
        a.kind = AgentKind::adhesion;
      } else {
        schema_fail(w + ".kind", "expected \"brick\" or \"adhesion\", got \"" + kind + "\"");
      }
      a.home = as_vec3(require_key(ja[i], "home", w), w + ".home");
      bp.setup.agents.push_back(a);
    }
  }

  // Resolve pickup-site references into per-brick approximate locations.
  for (std::size_t i = 0; i < site_refs.size(); ++i) {
    if (!site_refs[i]) continue;
    BrickSpec& b = bp.plan.bricks[i];
    const auto it = std::find_if(bp.setup.pickup_sites.begin(), bp.setup.pickup_sites.end(),
                                 [&](const PickupSite& s) { return s.id == *site_refs[i]; });
    if (it == bp.setup.pickup_sites.end()) {
      std::ostringstream msg;
      msg << "bricks[" << i << "].pickup_site: no pickup site with id " << *site_refs[i];
      throw ParseError("blueprint: " + msg.str());
    }
    b.pickup_approx = it->position;
    b.has_pickup = true;
  }
  return bp;
}

std::vector<Finding> validation_findings(const Blueprint& bp) {
  std::vector<Finding> out;
  auto add = [&](const std::string& kind, const std::string& subject, const std::string& msg) {
    out.push_back({kind, subject, msg});
  };

  try {
    bp.params.validate();
  } catch (const ValidationError& e) {
    add("validation", "params", e.what());
  }

  std::set<int> brick_ids;
  std::set<int> marker_ids;
  for (const BrickSpec& b : bp.plan.bricks) {
    std::ostringstream subj;
    subj << "brick " << b.id;
    const std::string s = subj.str();

    if (!brick_ids.insert(b.id).second) add("validation", s, "duplicate brick id");
    if (b.layer < 0) add("validation", s, "layer must be >= 0");
    if (!(b.dims.x() > 0 && b.dims.y() > 0 && b.dims.z() > 0)) {
      add("validation", s, "dims must all be > 0");
    }
    if (b.marker_ids[0] == b.marker_ids[1]) {
      add("validation", s, "marker ids must be distinct");
    }
    for (int m : b.marker_ids) {
      if (!marker_ids.insert(m).second) add("validation", s, "marker id reused across bricks");
    }
    if (b.dims.z() > 0) {
      const double expected_bottom = b.layer * b.dims.z();
      if (std::abs(b.bottom_z() - expected_bottom) > kLayerZTol) {
        add("validation", s, "target_center z inconsistent with layer");
      }
    }
    if (!b.pre_placed && !b.has_pickup) {
      add("validation", s, "pending brick needs pickup_approx or pickup_site");
    }
  }

  std::set<int> agent_ids;
  bool have_brick_agent = false, have_adhesion_agent = false;
  for (const AgentSpec& a : bp.setup.agents) {
    std::ostringstream subj;
    subj << "agent " << a.id;
    if (!agent_ids.insert(a.id).second) add("validation", subj.str(), "duplicate agent id");
    (a.kind == AgentKind::brick ? have_brick_agent : have_adhesion_agent) = true;
  }
  if (bp.plan.pending_count() > 0 && !bp.setup.agents.empty()) {
    if (!have_brick_agent) add("validation", "agents", "pending bricks but no brick agent");
    if (!have_adhesion_agent && bp.plan.pending_count() > 0) {
      // adhesion necessity depends on the layout; checked again after derive
    }
  }
  return out;
}

}  // namespace

const BrickSpec* WallPlan::find(int brick_id) const {
  for (const BrickSpec& b : bricks) {
    if (b.id == brick_id) return &b;
  }
  return nullptr;
}

std::size_t WallPlan::pending_count() const {
  std::size_t n = 0;
  for (const BrickSpec& b : bricks) n += b.pre_placed ? 0 : 1;
  return n;
}

std::size_t WallPlan::pre_placed_count() const {
  return bricks.size() - pending_count();
}

void MissionParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ValidationError(std::string("params: ") + name + " must be > 0");
  };
  positive(r_c, "r_c");
  positive(h_cr, "h_cr");
  positive(t_f, "t_f");
  positive(d, "d");
  positive(w_prox, "w_prox");
  positive(w_dist, "w_dist");
  positive(w_plane, "w_plane");
  positive(sigma_tol, "sigma_tol");
  positive(r_pl, "r_pl");
  positive(dt, "dt");
  if (n_window < 2) throw ValidationError("params: n_window must be >= 2");
  if (!(c_th > 0.0 && c_th < 1.0)) throw ValidationError("params: c_th must be in (0, 1)");
  if (!(dt < t_f)) throw ValidationError("params: dt must be < t_f");
}

Blueprint parse_blueprint_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("blueprint: invalid JSON: ") + e.what());
  }
  Blueprint bp = parse_document(root);
  const std::vector<Finding> findings = validation_findings(bp);
  if (!findings.empty()) {
    throw ValidationError("blueprint: " + findings.front().subject + ": " +
                          findings.front().message);
  }
  return bp;
}

Blueprint parse_blueprint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("blueprint: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_blueprint_text(ss.str());
}

std::vector<Finding> validate_blueprint(const std::string& path) {
  std::vector<Finding> out;

  std::ifstream in(path);
  if (!in) {
    out.push_back({"parse", "file", "cannot open '" + path + "'"});
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();

  json root;
  try {
    root = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    out.push_back({"parse", "file", e.what()});
    return out;
  }

  Blueprint bp;
  try {
    bp = parse_document(root);
  } catch (const ParseError& e) {
    out.push_back({"parse", "file", e.what()});
    return out;
  }

  out = validation_findings(bp);
  if (!out.empty()) return out;  // layout checks need a sane data model

  for (const Finding& f : layout_findings(bp.plan)) out.push_back(f);
  return out;
}

}  // namespace skymason
