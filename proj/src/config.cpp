#include "graphmass/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "graphmass/errors.hpp"

namespace graphmass {

using nlohmann::json;

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw ConfigError(at(path, k), "unknown field");
}

const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

double number_or(const json& j, const char* key, const std::string& path, double fallback) {
  const json* v = find(j, key);
  return v ? number(*v, at(path, key)) : fallback;
}

double positive_or(const json& j, const char* key, const std::string& path, double fallback) {
  const double v = number_or(j, key, path, fallback);
  if (!(v > 0.0)) throw ConfigError(at(path, key), "must be positive");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

int integer_in(const json& j, const char* key, const std::string& path, int fallback, int lo, int hi) {
  const json* v = find(j, key);
  const int x = v ? integer(*v, at(path, key)) : fallback;
  if (x < lo || x > hi)
    throw ConfigError(at(path, key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

std::vector<double> vector_n(const json& j, int n, const std::string& path) {
  std::vector<double> v = numbers(j, path);
  if (static_cast<int>(v.size()) != n)
    throw ConfigError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  return v;
}

std::vector<double> ascending_radii(const json& j, const std::string& path) {
  std::vector<double> r = numbers(j, path);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw ConfigError(at(path, i), "radii must be positive");
    if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError(at(path, i), "radii must be sorted ascending");
  }
  return r;
}

Expression parse_text(const std::string& text, int n, const std::string& path) {
  try {
    return Expression::parse(text, n);
  } catch (const ParseError& e) {
    throw ConfigError(path, e.what());
  }
}

// Canonical JSON of a scalar spec, for report provenance.
json canonical(const ScalarSpec& s) {
  struct Visitor {
    json operator()(const kinds::Zero&) const { return {{"kind", "zero"}}; }
    json operator()(const kinds::Linear& l) const {
      return {{"kind", "linear"}, {"coefficients", l.coefficients}, {"offset", l.offset}};
    }
    json operator()(const kinds::SchwarzschildRadial& k) const {
      return {{"kind", "schwarzschild_radial"}, {"mass", k.mass}};
    }
    json operator()(const kinds::GaussianBump& g) const {
      return {{"kind", "gaussian_bump"}, {"amplitude", g.amplitude}, {"width", g.width}, {"center", g.center}};
    }
    json operator()(const kinds::RadialProfile& r) const {
      return {{"kind", "radial_profile"}, {"amplitude", r.amplitude}, {"scale", r.scale}, {"exponent", r.exponent}};
    }
    json operator()(const kinds::Formula& f) const {
      return {{"kind", "expression"}, {"text", f.expression.text()}};
    }
    json operator()(const std::shared_ptr<const kinds::Sum>& s) const {
      json terms = json::array();
      for (const ScalarSpec& t : s->terms) terms.push_back(canonical(t));
      return {{"kind", "sum"}, {"terms", terms}};
    }
  };
  return std::visit(Visitor{}, s.kind);
}

json canonical(const DomainSpec& d) {
  if (!d.has_boundary()) return {{"kind", "all_of_rn"}};
  struct Visitor {
    json operator()(const shapes::Ball& b) const { return {{"shape", "ball"}, {"radius", b.radius}}; }
    json operator()(const shapes::Ellipsoid& e) const {
      return {{"shape", "ellipsoid"}, {"semi_axes", e.semi_axes}};
    }
    json operator()(const shapes::RadialFormula& f) const {
      return {{"shape", "formula"}, {"rho", f.expression.text()}};
    }
  };
  json j = std::visit(Visitor{}, d.shape);
  j["kind"] = "exterior_of_star_shaped";
  return j;
}

std::uint64_t to_seed(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

}  // namespace

ScalarSpec parse_scalar_spec(const json& j, int n, const std::string& path) {
  if (j.is_string()) return {kinds::Formula{parse_text(j.get<std::string>(), n, path)}};
  if (!j.is_object()) throw ConfigError(path, "expected an expression string or an object with \"kind\"");
  const json* kind = find(j, "kind");
  if (!kind) throw ConfigError(at(path, "kind"), "missing field");
  const std::string k = string(*kind, at(path, "kind"));

  if (k == "zero") {
    only_keys(j, path, {"kind"});
    return {kinds::Zero{}};
  }
  if (k == "linear") {
    only_keys(j, path, {"kind", "coefficients", "offset"});
    const json* c = find(j, "coefficients");
    if (!c) throw ConfigError(at(path, "coefficients"), "missing field");
    return {kinds::Linear{vector_n(*c, n, at(path, "coefficients")), number_or(j, "offset", path, 0.0)}};
  }
  if (k == "schwarzschild_radial") {
    only_keys(j, path, {"kind", "mass"});
    if (n < 3) throw ConfigError(path, "schwarzschild_radial needs n >= 3");
    return {kinds::SchwarzschildRadial{positive_or(j, "mass", path, 1.0)}};
  }
  if (k == "gaussian_bump") {
    only_keys(j, path, {"kind", "amplitude", "width", "center"});
    kinds::GaussianBump g;
    g.amplitude = number_or(j, "amplitude", path, 1.0);
    g.width = positive_or(j, "width", path, 1.0);
    const json* c = find(j, "center");
    g.center = c ? vector_n(*c, n, at(path, "center")) : std::vector<double>(n, 0.0);
    return {g};
  }
  if (k == "radial_profile") {
    only_keys(j, path, {"kind", "amplitude", "scale", "exponent"});
    kinds::RadialProfile r;
    r.amplitude = number_or(j, "amplitude", path, 1.0);
    r.scale = positive_or(j, "scale", path, 1.0);
    r.exponent = number_or(j, "exponent", path, 0.5);
    return {r};
  }
  if (k == "expression") {
    only_keys(j, path, {"kind", "text"});
    const json* t = find(j, "text");
    if (!t) throw ConfigError(at(path, "text"), "missing field");
    return {kinds::Formula{parse_text(string(*t, at(path, "text")), n, at(path, "text"))}};
  }
  if (k == "sum") {
    only_keys(j, path, {"kind", "terms"});
    const json* t = find(j, "terms");
    if (!t || !t->is_array() || t->empty()) throw ConfigError(at(path, "terms"), "expected a nonempty array");
    std::vector<ScalarSpec> terms;
    for (std::size_t i = 0; i < t->size(); ++i)
      terms.push_back(parse_scalar_spec((*t)[i], n, at(at(path, "terms"), i)));
    return sum_of(std::move(terms));
  }
  throw ConfigError(at(path, "kind"), "unknown kind \"" + k + "\"");
}

FunctionSpec parse_function_spec(const json& j, int n, const std::string& path) {
  FunctionSpec spec;
  spec.n = n;
  const json* list = nullptr;
  std::string list_path = path;
  if (j.is_array()) {
    list = &j;
  } else if (j.is_object() && j.contains("components")) {
    only_keys(j, path, {"components"});
    list = &j["components"];
    list_path = at(path, "components");
    if (!list->is_array()) throw ConfigError(list_path, "expected an array");
  }
  if (list) {
    if (list->empty() || list->size() > static_cast<std::size_t>(kMaxDim))
      throw ConfigError(list_path, "expected 1 to " + std::to_string(kMaxDim) + " components");
    for (std::size_t i = 0; i < list->size(); ++i)
      spec.components.push_back(parse_scalar_spec((*list)[i], n, at(list_path, i)));
  } else {
    spec.components.push_back(parse_scalar_spec(j, n, path));
  }
  return spec;
}

DomainSpec parse_domain_spec(const json& j, int n, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const json* kind = find(j, "kind");
  const std::string k = kind ? string(*kind, at(path, "kind")) : "exterior_of_star_shaped";
  if (k == "all_of_rn") {
    only_keys(j, path, {"kind"});
    return DomainSpec::whole_space();
  }
  if (k != "exterior_of_star_shaped") throw ConfigError(at(path, "kind"), "unknown kind \"" + k + "\"");

  const json* shape = find(j, "shape");
  if (!shape) throw ConfigError(at(path, "shape"), "missing field");
  const std::string s = string(*shape, at(path, "shape"));
  if (s == "ball") {
    only_keys(j, path, {"kind", "shape", "radius"});
    return DomainSpec::exterior_of_ball(positive_or(j, "radius", path, 1.0));
  }
  if (s == "ellipsoid") {
    only_keys(j, path, {"kind", "shape", "semi_axes"});
    const json* a = find(j, "semi_axes");
    if (!a) throw ConfigError(at(path, "semi_axes"), "missing field");
    std::vector<double> axes = vector_n(*a, n, at(path, "semi_axes"));
    for (std::size_t i = 0; i < axes.size(); ++i)
      if (!(axes[i] > 0.0)) throw ConfigError(at(at(path, "semi_axes"), i), "must be positive");
    return DomainSpec::exterior_of_ellipsoid(std::move(axes));
  }
  if (s == "formula") {
    only_keys(j, path, {"kind", "shape", "rho"});
    const json* r = find(j, "rho");
    if (!r) throw ConfigError(at(path, "rho"), "missing field");
    return {DomainSpec::Kind::exterior_of_star_shaped,
            shapes::RadialFormula{parse_text(string(*r, at(path, "rho")), n, at(path, "rho"))}};
  }
  throw ConfigError(at(path, "shape"), "unknown shape \"" + s + "\"");
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  only_keys(j, "", {"n", "m", "function", "domain", "radii", "decay_radii", "quadrature", "fd_step",
                    "constancy_tolerance", "approach_offsets", "sample", "points"});
  RunConfig c;
  if (!j.contains("n")) throw ConfigError("n", "missing field");
  c.n = integer_in(j, "n", "", 0, 2, kMaxDim);

  const json* f = find(j, "function");
  if (!f) throw ConfigError("function", "missing field");
  c.function = parse_function_spec(*f, c.n, "function");
  c.m = c.function.m();
  if (j.contains("m") && integer(j["m"], "m") != c.m)
    throw ConfigError("m", "does not match the " + std::to_string(c.m) + " components of function");
  json comps = json::array();
  for (const ScalarSpec& s : c.function.components) comps.push_back(canonical(s));
  c.function_json = {{"components", comps}};

  c.domain = j.contains("domain") ? parse_domain_spec(j["domain"], c.n, "domain") : DomainSpec::whole_space();
  c.domain_json = canonical(c.domain);

  if (const json* r = find(j, "radii")) c.radii = ascending_radii(*r, "radii");
  if (const json* r = find(j, "decay_radii")) c.decay_radii = ascending_radii(*r, "decay_radii");

  if (const json* q = find(j, "quadrature")) {
    if (!q->is_object()) throw ConfigError("quadrature", "expected an object");
    only_keys(*q, "quadrature", {"degree", "radial_nodes", "split_factor", "tolerance"});
    c.degree = integer_in(*q, "degree", "quadrature", c.degree, 2, 64);
    c.exterior.radial_nodes = integer_in(*q, "radial_nodes", "quadrature", c.exterior.radial_nodes, 2, 256);
    c.exterior.split_factor = positive_or(*q, "split_factor", "quadrature", c.exterior.split_factor);
    if (!(c.exterior.split_factor > 1.0)) throw ConfigError("quadrature.split_factor", "must exceed 1");
    c.exterior.tolerance = positive_or(*q, "tolerance", "quadrature", c.exterior.tolerance);
  }
  c.fd_step = positive_or(j, "fd_step", "", c.fd_step);
  c.constancy_tolerance = positive_or(j, "constancy_tolerance", "", c.constancy_tolerance);
  if (const json* o = find(j, "approach_offsets")) {
    c.approach_offsets = numbers(*o, "approach_offsets");
    for (std::size_t i = 0; i < c.approach_offsets.size(); ++i)
      if (!(c.approach_offsets[i] > 0.0)) throw ConfigError(at("approach_offsets", i), "must be positive");
  }

  if (const json* s = find(j, "sample")) {
    if (!s->is_object()) throw ConfigError("sample", "expected an object");
    only_keys(*s, "sample", {"count", "seed", "radius_min", "radius_max"});
    c.sample.count = integer_in(*s, "count", "sample", c.sample.count, 0, 1000000);
    if (const json* seed = find(*s, "seed")) c.sample.seed = to_seed(*seed, "sample.seed");
    c.sample.radius_min = number_or(*s, "radius_min", "sample", c.sample.radius_min);
    c.sample.radius_max = number_or(*s, "radius_max", "sample", c.sample.radius_max);
    if (!(c.sample.radius_min >= 0.0)) throw ConfigError("sample.radius_min", "must be nonnegative");
    if (!(c.sample.radius_max > c.sample.radius_min))
      throw ConfigError("sample.radius_max", "must exceed sample.radius_min");
  }
  if (const json* p = find(j, "points")) {
    if (!p->is_array()) throw ConfigError("points", "expected an array of points");
    for (std::size_t i = 0; i < p->size(); ++i) c.points.push_back(vector_n((*p)[i], c.n, at("points", i)));
  }
  return c;
}

json RunConfig::resolved() const {
  json j;
  j["n"] = n;
  j["m"] = m;
  j["function"] = function_json;
  j["domain"] = domain_json;
  j["radii"] = radii;
  j["decay_radii"] = decay_radii;
  j["quadrature"] = {{"degree", degree},
                     {"radial_nodes", exterior.radial_nodes},
                     {"split_factor", exterior.split_factor},
                     {"tolerance", exterior.tolerance}};
  j["fd_step"] = fd_step;
  j["constancy_tolerance"] = constancy_tolerance;
  j["approach_offsets"] = approach_offsets;
  j["sample"] = {{"count", sample.count},
                 {"seed", sample.seed},
                 {"radius_min", sample.radius_min},
                 {"radius_max", sample.radius_max}};
  j["points"] = points;
  return j;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_config(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace graphmass
