#include "app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "xsbfem/error.hpp"

namespace xsbfem::app {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"analysis", {"name", "problem"}},
      {"mesh", {"nx", "ny"}},
      {"geometry",
       {"width", "height", "crack_length", "psi", "interface_x", "kink_length", "length", "h1", "h2"}},
      {"materials",
       {"e_ratio", "poisson", "plane", "top_e", "top_poisson", "bottom_e", "bottom_poisson"}},
      {"loading", {"load"}},
      {"sbfem", {"layers", "shrink_to_fit", "characteristic_length"}},
      {"singularity", {"domain", "elements", "order", "cracked", "e_ratio", "e2_ratios", "e3_ratio"}},
      {"growth", {"mode", "increment", "steps", "margin"}},
      {"output", {"vtk", "profile_samples"}},
  };
  return s;
}

[[noreturn]] void field_error(const std::string& section, const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::Config, "[" + section + "] " + key + ": " + msg);
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!sec) return std::nullopt;
    auto v = sec->get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return v->data();
  }

  bool has_section(const std::string& section) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(section, '\0')));
  }

  void real(const std::string& section, const std::string& key, double& out) const {
    if (auto s = raw(section, key)) out = parse_real(section, key, *s);
  }

  void integer(const std::string& section, const std::string& key, int& out) const {
    auto s = raw(section, key);
    if (!s) return;
    int v = 0;
    auto [p, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
    if (ec != std::errc() || p != s->data() + s->size()) field_error(section, key, "expected an integer, got '" + *s + "'");
    out = v;
  }

  void boolean(const std::string& section, const std::string& key, bool& out) const {
    auto s = raw(section, key);
    if (!s) return;
    if (*s == "true" || *s == "yes" || *s == "1") {
      out = true;
    } else if (*s == "false" || *s == "no" || *s == "0") {
      out = false;
    } else {
      field_error(section, key, "expected true or false, got '" + *s + "'");
    }
  }

  void reals(const std::string& section, const std::string& key, std::vector<double>& out) const {
    auto s = raw(section, key);
    if (!s) return;
    out.clear();
    std::stringstream ss(*s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto b = item.find_first_not_of(" \t");
      auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) field_error(section, key, "empty list entry");
      out.push_back(parse_real(section, key, item.substr(b, e - b + 1)));
    }
    if (out.empty()) field_error(section, key, "empty list");
  }

  static double parse_real(const std::string& section, const std::string& key, const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
      field_error(section, key, "expected a number, got '" + s + "'");
    }
    return v;
  }

 private:
  const pt::ptree& tree_;
};

void require(bool ok, const std::string& section, const std::string& key, const std::string& msg) {
  if (!ok) field_error(section, key, msg);
}

std::string canonical(const pt::ptree& tree) {
  std::map<std::string, std::string> flat;
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) flat[section + "." + key] = value.data();
  }
  std::string out;
  for (const auto& [k, v] : flat) out += k + "=" + v + "\n";
  return out;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

AnalysisConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, "line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    auto it = schema().find(section);
    if (!body.data().empty() || it == schema().end()) {
      throw Error(ErrorKind::Config, "unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) field_error(section, key, "unknown key");
    }
  }

  Reader r(tree);
  AnalysisConfig c;
  c.hash = fnv1a(canonical(tree));

  if (auto n = r.raw("analysis", "name")) {
    require(!n->empty() && n->find_first_of("/\\ ,") == std::string::npos, "analysis", "name",
            "must be non-empty without spaces, commas or slashes");
    c.name = *n;
  }
  if (auto p = r.raw("analysis", "problem")) {
    static const std::map<std::string, ProblemKind> kinds{
        {"edge_crack", ProblemKind::EdgeCrack}, {"center_crack", ProblemKind::CenterCrack},
        {"strip", ProblemKind::Strip},          {"terminating", ProblemKind::Terminating},
        {"deflected", ProblemKind::Deflected},  {"patch", ProblemKind::Patch}};
    auto it = kinds.find(*p);
    require(it != kinds.end(), "analysis", "problem",
            "expected edge_crack, center_crack, strip, terminating, deflected or patch");
    c.problem = it->second;
  }

  if (c.problem == ProblemKind::Strip) {
    c.nx = 201;
    c.ny = 51;
  }
  r.integer("mesh", "nx", c.nx);
  r.integer("mesh", "ny", c.ny);
  require(c.nx >= 2, "mesh", "nx", "must be at least 2");
  require(c.ny >= 2, "mesh", "ny", "must be at least 2");

  r.real("geometry", "width", c.width);
  r.real("geometry", "height", c.height);
  r.real("geometry", "crack_length", c.crack_length);
  r.real("geometry", "psi", c.psi_deg);
  r.real("geometry", "interface_x", c.interface_x);
  r.real("geometry", "kink_length", c.kink_length);
  r.real("geometry", "length", c.strip_length);
  r.real("geometry", "h1", c.h1);
  r.real("geometry", "h2", c.h2);
  require(c.width > 0, "geometry", "width", "must be positive");
  require(c.height > 0, "geometry", "height", "must be positive");
  require(c.crack_length > 0, "geometry", "crack_length", "must be positive");
  require(c.strip_length > 0, "geometry", "length", "must be positive");
  require(c.h1 > 0, "geometry", "h1", "must be positive");
  require(c.h2 > 0, "geometry", "h2", "must be positive");
  require(c.kink_length > 0, "geometry", "kink_length", "must be positive");

  r.real("materials", "e_ratio", c.e_ratio);
  r.real("materials", "poisson", c.poisson);
  r.real("materials", "top_e", c.top_e);
  r.real("materials", "top_poisson", c.top_poisson);
  r.real("materials", "bottom_e", c.bottom_e);
  r.real("materials", "bottom_poisson", c.bottom_poisson);
  if (auto p = r.raw("materials", "plane")) {
    if (*p == "strain") {
      c.plane = PlaneState::PlaneStrain;
    } else if (*p == "stress") {
      c.plane = PlaneState::PlaneStress;
    } else {
      field_error("materials", "plane", "expected strain or stress");
    }
  }
  require(c.e_ratio > 0, "materials", "e_ratio", "must be positive");
  require(c.top_e > 0, "materials", "top_e", "must be positive");
  require(c.bottom_e > 0, "materials", "bottom_e", "must be positive");
  for (auto [key, nu] : {std::pair{"poisson", c.poisson}, {"top_poisson", c.top_poisson},
                         {"bottom_poisson", c.bottom_poisson}}) {
    require(nu > -1.0 && nu < 0.5, "materials", key, "must lie in (-1, 0.5)");
  }

  r.real("loading", "load", c.load);

  r.integer("sbfem", "layers", c.layers);
  r.boolean("sbfem", "shrink_to_fit", c.shrink_to_fit);
  r.real("sbfem", "characteristic_length", c.l_char);
  require(c.layers >= 1, "sbfem", "layers", "must be at least 1");
  require(c.l_char > 0, "sbfem", "characteristic_length", "must be positive");

  auto& s = c.singularity;
  if (auto d = r.raw("singularity", "domain")) {
    static const std::map<std::string, DomainKind> kinds{{"circle", DomainKind::Circle},
                                                         {"square", DomainKind::Square},
                                                         {"bimaterial", DomainKind::Bimaterial},
                                                         {"triple_junction", DomainKind::TripleJunction}};
    auto it = kinds.find(*d);
    require(it != kinds.end(), "singularity", "domain", "expected circle, square, bimaterial or triple_junction");
    s.domain = it->second;
  }
  r.integer("singularity", "elements", s.elements);
  r.integer("singularity", "order", s.order);
  r.boolean("singularity", "cracked", s.cracked);
  r.real("singularity", "e_ratio", s.e_ratio);
  r.reals("singularity", "e2_ratios", s.e2_ratios);
  r.real("singularity", "e3_ratio", s.e3_ratio);
  require(s.elements >= 1, "singularity", "elements", "must be at least 1");
  require(s.order >= 1 && s.order <= 10, "singularity", "order", "must lie in [1, 10]");
  require(s.e_ratio > 0, "singularity", "e_ratio", "must be positive");
  require(s.e3_ratio > 0, "singularity", "e3_ratio", "must be positive");
  for (double v : s.e2_ratios) require(v > 0, "singularity", "e2_ratios", "entries must be positive");

  if (r.has_section("growth")) {
    GrowthConfig g;
    g.mode = c.problem == ProblemKind::Deflected ? GrowthMode::MaxHoopStress : GrowthMode::AlongInterface;
    if (auto m = r.raw("growth", "mode")) {
      if (*m == "interface") {
        g.mode = GrowthMode::AlongInterface;
      } else if (*m == "hoop") {
        g.mode = GrowthMode::MaxHoopStress;
      } else {
        field_error("growth", "mode", "expected interface or hoop");
      }
    }
    r.real("growth", "increment", g.increment);
    r.integer("growth", "steps", g.max_steps);
    r.real("growth", "margin", g.margin);
    require(g.increment > 0, "growth", "increment", "must be positive");
    require(g.max_steps >= 1 && g.max_steps <= 1000, "growth", "steps", "must lie in [1, 1000]");
    require(g.margin >= 0, "growth", "margin", "must be non-negative");
    g.initial_angle = c.psi_deg * std::numbers::pi / 180.0;
    g.l_char = c.l_char;
    c.growth = g;
  }

  r.boolean("output", "vtk", c.vtk);
  r.integer("output", "profile_samples", c.profile_samples);
  require(c.profile_samples >= 1, "output", "profile_samples", "must be at least 1");
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace xsbfem::app
