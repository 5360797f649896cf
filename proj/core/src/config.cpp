#include "levscat/config.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <set>
#include <sstream>

#include <json.hpp>

#include "levscat/errors.hpp"

namespace levscat {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) fail(path + "." + key, "unknown key");
}

const json& require(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required key");
  return *it;
}

double get_number(const json& obj, const std::string& path, const char* key,
                  double fallback, bool* present = nullptr) {
  auto it = obj.find(key);
  if (present) *present = it != obj.end();
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(path + "." + key, "expected a number");
  return it->get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key,
            int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) fail(path + "." + key, "expected an integer");
  return it->get<int>();
}

Potential parse_potential(const json& j, int n) {
  const std::string path = "potential";
  if (!j.is_object()) fail(path, "expected an object");
  const json& tj = require(j, path, "type");
  if (!tj.is_string()) fail(path + ".type", "expected a string");
  const std::string type = tj.get<std::string>();

  if (type == "zero") {
    reject_unknown(j, path, {"type"});
    return Potential::square_well(n, 0.0, 1.0);
  }
  if (type == "square_well") {
    reject_unknown(j, path, {"type", "V0", "a"});
    const double depth = require(j, path, "V0").get<double>();
    const double radius = require(j, path, "a").get<double>();
    if (!(radius > 0.0)) fail(path + ".a", "must be positive");
    return Potential::square_well(n, depth, radius);
  }
  if (type == "gaussian") {
    reject_unknown(j, path, {"type", "amplitude", "width"});
    const double amp = require(j, path, "amplitude").get<double>();
    const double width = require(j, path, "width").get<double>();
    if (!(width > 0.0)) fail(path + ".width", "must be positive");
    return Potential::gaussian(n, amp, width);
  }
  if (type == "poschl_teller") {
    reject_unknown(j, path, {"type", "strength"});
    if (n != 1) fail(path + ".type", "poschl_teller requires n = 1");
    const double s = get_number(j, path, "strength", 1.0);
    if (!(s > 0.0)) fail(path + ".strength", "must be positive");
    return Potential::poschl_teller(s);
  }
  if (type == "tabulated") {
    reject_unknown(j, path, {"type", "r", "v"});
    const json& rj = require(j, path, "r");
    const json& vj = require(j, path, "v");
    if (!rj.is_array() || !vj.is_array())
      fail(path + ".r", "r and v must be arrays");
    std::vector<double> r, v;
    for (const auto& x : rj) r.push_back(x.get<double>());
    for (const auto& x : vj) v.push_back(x.get<double>());
    if (r.size() != v.size() || r.size() < 4)
      fail(path + ".r", "r and v must have equal length >= 4");
    if (r.front() != 0.0) fail(path + ".r", "grid must start at r = 0");
    for (std::size_t i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1])) fail(path + ".r", "grid must be strictly increasing");
    return Potential::tabulated(n, std::move(r), std::move(v));
  }
  fail(path + ".type", "unknown profile '" + type + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("top level: expected an object");
  reject_unknown(root, "config",
                 {"n", "potential", "grid", "solver", "quadrature", "output"});

  RunConfig cfg;
  const json& nj = require(root, "config", "n");
  if (!nj.is_number_integer()) fail("n", "expected an integer");
  cfg.n = nj.get<int>();
  if (cfg.n < 1 || cfg.n > 5) fail("n", "dimension must be in 1..5");

  cfg.potential = parse_potential(require(root, "config", "potential"), cfg.n);

  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) fail("grid", "expected an object");
    reject_unknown(g, "grid", {"k_min", "k_max", "points_per_decade"});
    cfg.grid.k_min = get_number(g, "grid", "k_min", cfg.grid.k_min);
    cfg.grid.k_max = get_number(g, "grid", "k_max", cfg.grid.k_max);
    cfg.grid.points_per_decade =
        get_int(g, "grid", "points_per_decade", cfg.grid.points_per_decade);
    if (!(cfg.grid.k_min > 0.0)) fail("grid.k_min", "must be positive");
    if (!(cfg.grid.k_max >= 10.0 * cfg.grid.k_min))
      fail("grid.k_max", "must span at least one decade above k_min");
    if (cfg.grid.points_per_decade < 2)
      fail("grid.points_per_decade", "must be >= 2");
  }

  if (root.contains("solver")) {
    const json& s = root["solver"];
    if (!s.is_object()) fail("solver", "expected an object");
    reject_unknown(s, "solver",
                   {"step", "step_k_factor", "r_max_factor", "r_max_pad",
                    "l_max", "l_tail_tol", "anchor_tol", "branch_tail_tol",
                    "resonance_tol", "eig_tol", "threads"});
    auto& sv = cfg.solver;
    sv.step = get_number(s, "solver", "step", sv.step);
    sv.step_k_factor = get_number(s, "solver", "step_k_factor", sv.step_k_factor);
    sv.r_match_factor = get_number(s, "solver", "r_max_factor", sv.r_match_factor);
    sv.r_match_pad = get_number(s, "solver", "r_max_pad", sv.r_match_pad);
    sv.l_tail_tol = get_number(s, "solver", "l_tail_tol", sv.l_tail_tol);
    sv.anchor_tol = get_number(s, "solver", "anchor_tol", sv.anchor_tol);
    sv.branch_tail_tol = get_number(s, "solver", "branch_tail_tol", sv.branch_tail_tol);
    sv.resonance_tol = get_number(s, "solver", "resonance_tol", sv.resonance_tol);
    sv.eig_tol = get_number(s, "solver", "eig_tol", sv.eig_tol);
    sv.threads = get_int(s, "solver", "threads", sv.threads);
    if (s.contains("l_max")) {
      const json& lm = s["l_max"];
      if (lm.is_string()) {
        if (lm.get<std::string>() != "auto")
          fail("solver.l_max", "expected \"auto\" or a non-negative integer");
        sv.l_max = -1;
      } else if (lm.is_number_integer()) {
        sv.l_max = lm.get<int>();
        if (sv.l_max < 0) fail("solver.l_max", "must be >= 0");
      } else {
        fail("solver.l_max", "expected \"auto\" or a non-negative integer");
      }
    }
    for (const auto& [name, v] :
         {std::pair<const char*, double>{"step", sv.step},
          {"step_k_factor", sv.step_k_factor},
          {"l_tail_tol", sv.l_tail_tol},
          {"anchor_tol", sv.anchor_tol},
          {"branch_tail_tol", sv.branch_tail_tol},
          {"resonance_tol", sv.resonance_tol},
          {"eig_tol", sv.eig_tol}})
      if (!(v > 0.0)) fail(std::string("solver.") + name, "must be positive");
    if (!(sv.r_match_factor >= 1.0)) fail("solver.r_max_factor", "must be >= 1");
    if (!(sv.r_match_pad >= 0.0)) fail("solver.r_max_pad", "must be >= 0");
    if (sv.threads < 0) fail("solver.threads", "must be >= 0");
  }

  if (root.contains("quadrature")) {
    const json& q = root["quadrature"];
    if (!q.is_object()) fail("quadrature", "expected an object");
    reject_unknown(q, "quadrature", {"tail_fit"});
    if (q.contains("tail_fit")) {
      if (!q["tail_fit"].is_boolean()) fail("quadrature.tail_fit", "expected a boolean");
      cfg.tail_fit = q["tail_fit"].get<bool>();
    }
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    if (!o.is_object()) fail("output", "expected an object");
    reject_unknown(o, "output", {"format", "path"});
    if (o.contains("format")) {
      if (!o["format"].is_string()) fail("output.format", "expected a string");
      cfg.output.format = o["format"].get<std::string>();
      if (cfg.output.format != "csv" && cfg.output.format != "json")
        fail("output.format", "must be \"csv\" or \"json\"");
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) fail("output.path", "expected a string");
      cfg.output.path = o["path"].get<std::string>();
    }
  }

  return cfg;
}

std::string format_double(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto num = [](double x) { return format_double(x); };
  out << "{\"n\":" << cfg.n << ",\"potential\":{";
  const Potential& p = cfg.potential;
  if (p.is_zero() && p.kind() == ProfileKind::square_well) {
    out << "\"type\":\"zero\"";
  } else
    switch (p.kind()) {
      case ProfileKind::square_well:
        out << "\"type\":\"square_well\",\"V0\":" << num(p.param1())
            << ",\"a\":" << num(p.param2());
        break;
      case ProfileKind::gaussian:
        out << "\"type\":\"gaussian\",\"amplitude\":" << num(p.param1())
            << ",\"width\":" << num(p.param2());
        break;
      case ProfileKind::poschl_teller:
        out << "\"type\":\"poschl_teller\",\"strength\":" << num(p.param1());
        break;
      case ProfileKind::tabulated: {
        out << "\"type\":\"tabulated\",\"r\":[";
        const auto& r = p.samples_r();
        const auto& v = p.samples_v();
        for (std::size_t i = 0; i < r.size(); ++i)
          out << (i ? "," : "") << num(r[i]);
        out << "],\"v\":[";
        for (std::size_t i = 0; i < v.size(); ++i)
          out << (i ? "," : "") << num(v[i]);
        out << "]";
        break;
      }
    }
  out << "},\"grid\":{\"k_min\":" << num(cfg.grid.k_min)
      << ",\"k_max\":" << num(cfg.grid.k_max)
      << ",\"points_per_decade\":" << cfg.grid.points_per_decade << "}";
  const auto& s = cfg.solver;
  out << ",\"solver\":{\"step\":" << num(s.step)
      << ",\"step_k_factor\":" << num(s.step_k_factor)
      << ",\"r_max_factor\":" << num(s.r_match_factor)
      << ",\"r_max_pad\":" << num(s.r_match_pad) << ",\"l_max\":";
  if (s.l_max < 0)
    out << "\"auto\"";
  else
    out << s.l_max;
  out << ",\"l_tail_tol\":" << num(s.l_tail_tol)
      << ",\"anchor_tol\":" << num(s.anchor_tol)
      << ",\"branch_tail_tol\":" << num(s.branch_tail_tol)
      << ",\"resonance_tol\":" << num(s.resonance_tol)
      << ",\"eig_tol\":" << num(s.eig_tol) << ",\"threads\":" << s.threads
      << "},\"quadrature\":{\"tail_fit\":" << (cfg.tail_fit ? "true" : "false")
      << "},\"output\":{\"format\":\"" << cfg.output.format << "\",\"path\":\""
      << cfg.output.path << "\"}}";
  return out.str();
}

}  // namespace levscat
