#include "hyperrst/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hyperrst {
namespace {

using Json = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

Json grid(const std::vector<double>& g) { return Json(g); }

template <class T>
T get(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

double get_number(const Json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return j.get<int>();
}

std::vector<double> get_grid(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("config key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(get_number(v, key));
  return out;
}

std::string coords_header(const Coords& c) {
  std::string s;
  for (const auto& [k, v] : c) s += k + ",";
  return s;
}

}  // namespace

std::string cloud_to_json(const PointCloud& cloud) {
  Json j;
  j["d"] = cloud.config.d;
  j["lambda"] = cloud.config.lambda;
  j["R"] = cloud.config.R;
  j["seed"] = cloud.config.seed;
  Json pts = Json::array();
  for (const auto& p : cloud.points) {
    Json u(std::vector<double>(p.u.components().begin(), p.u.components().end()));
    pts.push_back(Json{{"r", p.r}, {"u", std::move(u)}});
  }
  j["points"] = std::move(pts);
  return j.dump(1) + "\n";
}

PointCloud cloud_from_json(const std::string& text) {
  const Json j = parse(text);
  if (!j.is_object()) throw ConfigError("cloud document must be an object");
  for (const char* key : {"d", "lambda", "R", "seed", "points"}) {
    if (!j.contains(key)) throw ConfigError(std::string("cloud document lacks '") + key + "'");
  }
  PointCloud cloud;
  cloud.config.d = get_int(j["d"], "d");
  cloud.config.lambda = get_number(j["lambda"], "lambda");
  cloud.config.R = get_number(j["R"], "R");
  cloud.config.seed = get<std::uint64_t>(j["seed"], "seed");
  cloud.config.validate();
  for (const auto& p : j["points"]) {
    if (!p.is_object() || !p.contains("r") || !p.contains("u")) throw ConfigError("cloud points need 'r' and 'u'");
    PolarPoint q;
    q.r = get_number(p["r"], "r");
    if (!(q.r >= 0.0 && q.r <= cloud.config.R)) throw ConfigError("point radius outside [0, R]");
    auto u = get_grid(p["u"], "u");
    if (u.size() != static_cast<std::size_t>(cloud.config.d) + 1) throw ConfigError("point direction has the wrong dimension");
    double n2 = 0.0;
    for (double c : u) n2 += c * c;
    // Stored directions are already unit vectors; renormalizing would perturb the last bit.
    if (!(std::abs(std::sqrt(n2) - 1.0) <= 1e-12)) throw ConfigError("point direction is not a unit vector");
    q.u = Direction::from_unit(std::move(u));
    cloud.points.push_back(std::move(q));
  }
  return cloud;
}

std::string cloud_to_csv(const PointCloud& cloud) {
  std::string s = "r";
  for (int i = 0; i <= cloud.config.d; ++i) s += ",u" + std::to_string(i);
  s += "\n";
  for (const auto& p : cloud.points) {
    s += num(p.r);
    for (double c : p.u.components()) s += "," + num(c);
    s += "\n";
  }
  return s;
}

std::string tree_to_json(const RadialTree& tree, const std::string& cloud_ref) {
  Json j;
  j["cloud_ref"] = cloud_ref;
  j["parent"] = tree.parents();
  return j.dump() + "\n";
}

std::vector<NodeId> tree_parents_from_json(const std::string& text) {
  const Json j = parse(text);
  if (!j.is_object() || !j.contains("parent")) throw ConfigError("tree document lacks 'parent'");
  return get<std::vector<NodeId>>(j["parent"], "parent");
}

std::string tree_edges_csv(const RadialTree& tree) {
  std::string s = "child,parent,r_child,r_parent\n";
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    const NodeId p = tree.parent(id);
    s += std::to_string(i) + "," + std::to_string(p) + "," + num(tree.radius(id)) + "," + num(tree.radius(p)) + "\n";
  }
  return s;
}

std::string deviations_to_csv(const std::vector<DeviationRecord>& records) {
  std::string s = "r0,r_prime,crossing_id,cfd,mbd\n";
  for (const auto& r : records) {
    s += num(r.level_r) + "," + num(r.level_r_prime) + "," + std::to_string(r.crossing.child) + "," + num(r.cfd) + "," +
         num(r.mbd) + "\n";
  }
  return s;
}

std::string forest_to_json(const HalfForest& forest) {
  Json j;
  Json pts = Json::array();
  for (const auto& p : forest.points) pts.push_back(Json{{"x", p.x}, {"y", p.y}});
  j["points"] = std::move(pts);
  j["parent"] = forest.parent;
  return j.dump(1) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  const Json j = parse(text);
  if (!j.is_object()) throw ConfigError("config must be a flat JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "d") c.base.d = get_int(v, key);
    else if (key == "lambda") c.base.lambda = get_number(v, key);
    else if (key == "R") c.base.R = get_number(v, key);
    else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
      c.base.seed = v.get<std::uint64_t>();
    }
    else if (key == "replicas") c.replicas = get_int(v, key);
    else if (key == "r0_grid") c.r0_grid = get_grid(v, key);
    else if (key == "p") c.p = get_number(v, key);
    else if (key == "A") c.A = get_number(v, key);
    else if (key == "delta") c.delta = get_number(v, key);
    else if (key == "h_grid") c.h_grid = get_grid(v, key);
    else if (key == "output_path") {
      if (!v.is_string()) throw ConfigError("config key 'output_path' must be a string");
      c.output_path = v.get<std::string>();
    }
    else if (key == "r_prime_gap") c.r_prime_gap = get_number(v, key);
    else if (key == "theta") c.theta = get_number(v, key);
    else if (key == "probes") c.probes = get_int(v, key);
    else if (key == "bootstrap") c.bootstrap = get_int(v, key);
    else if (key == "confidence") c.confidence = get_number(v, key);
    else if (key == "good_r0") c.good_r0 = get_number(v, key);
    else if (key == "A_grid") c.A_grid = get_grid(v, key);
    else if (key == "delta_grid") c.delta_grid = get_grid(v, key);
    else if (key == "coupling_A") c.coupling_A = get_number(v, key);
    else if (key == "coupling_a") c.coupling_a = get_number(v, key);
    else if (key == "window_half_width") c.window_half_width = get_number(v, key);
    else if (key == "window_y_min") c.window_y_min = get_number(v, key);
    else if (key == "window_y_max") c.window_y_max = get_number(v, key);
    else if (key == "bplus_r_grid") c.bplus_r_grid = get_grid(v, key);
    else if (key == "bplus_rho_grid") c.bplus_rho_grid = get_grid(v, key);
    else if (key == "bplus_samples") c.bplus_samples = get_int(v, key);
    else if (key == "confinement_h") c.confinement_h = get_number(v, key);
    else if (key == "confinement_A_grid") c.confinement_A_grid = get_grid(v, key);
    else if (key == "tail_leaves") c.tail_leaves = get_int(v, key);
    else throw ConfigError("unknown config key '" + key + "'");
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

namespace {

Json config_json(const ExperimentConfig& c) {
  Json j;
  j["d"] = c.base.d;
  j["lambda"] = c.base.lambda;
  j["R"] = c.base.R;
  j["seed"] = c.base.seed;
  j["replicas"] = c.replicas;
  j["r0_grid"] = grid(c.r0_grid);
  j["p"] = c.p;
  j["A"] = c.A;
  j["delta"] = c.delta;
  j["h_grid"] = grid(c.h_grid);
  j["output_path"] = c.output_path;
  j["r_prime_gap"] = c.r_prime_gap;
  j["theta"] = c.theta;
  j["probes"] = c.probes;
  j["bootstrap"] = c.bootstrap;
  j["confidence"] = c.confidence;
  j["good_r0"] = c.good_r0;
  j["A_grid"] = grid(c.A_grid);
  j["delta_grid"] = grid(c.delta_grid);
  j["coupling_A"] = c.coupling_A;
  j["coupling_a"] = c.coupling_a;
  j["window_half_width"] = c.window_half_width;
  j["window_y_min"] = c.window_y_min;
  j["window_y_max"] = c.window_y_max;
  j["bplus_r_grid"] = grid(c.bplus_r_grid);
  j["bplus_rho_grid"] = grid(c.bplus_rho_grid);
  j["bplus_samples"] = c.bplus_samples;
  j["confinement_h"] = c.confinement_h;
  j["confinement_A_grid"] = grid(c.confinement_A_grid);
  j["tail_leaves"] = c.tail_leaves;
  return j;
}

Json coords_json(const Coords& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c) j[k] = v;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

std::string report_to_json(const StatReport& r) {
  Json j;
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  j["replicas"] = r.replicas;
  j["config"] = config_json(r.config);
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json cj;
    cj["coords"] = coords_json(c.coords);
    cj["mean"] = c.mean;
    cj["se"] = c.se;
    cj["extra"] = coords_json(c.extra);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  Json fits = Json::array();
  for (const auto& f : r.fits) {
    fits.push_back(Json{{"name", f.name},
                        {"estimate", f.estimate},
                        {"r2", f.r2},
                        {"se", f.se},
                        {"ci_lo", f.ci.lo},
                        {"ci_hi", f.ci.hi},
                        {"level", f.level}});
  }
  j["fits"] = std::move(fits);
  j["scalars"] = coords_json(r.scalars);
  j["replica_values"] = r.replica_values;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const StatReport& r) {
  if (r.cells.empty()) return "mean,se\n";
  std::string s = coords_header(r.cells.front().coords) + "mean,se";
  for (const auto& [k, v] : r.cells.front().extra) s += "," + k;
  s += "\n";
  for (const auto& c : r.cells) {
    for (const auto& [k, v] : c.coords) s += num(v) + ",";
    s += num(c.mean) + "," + num(c.se);
    for (const auto& [k, v] : c.extra) s += "," + num(v);
    s += "\n";
  }
  return s;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace hyperrst
