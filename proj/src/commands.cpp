#include "graphmass/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "graphmass/errors.hpp"
#include "graphmass/identities.hpp"
#include "graphmass/mass.hpp"

namespace graphmass {

using nlohmann::json;

namespace {

json envelope(const std::string& command, const RunConfig& config) {
  const json resolved = config.resolved();
  json r;
  r["tool"] = {{"name", "graphmass"}, {"version", kToolVersion}};
  r["command"] = command;
  r["config"] = resolved;
  r["config_hash"] = fnv1a_hex(resolved.dump());
  return r;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

json approach_json(const std::vector<BoundaryApproach>& a) {
  json out = json::array();
  for (const BoundaryApproach& s : a)
    out.push_back({{"offset", s.offset},
                   {"max_abs_s_perp", s.max_abs_s_perp},
                   {"max_verticality", s.max_verticality},
                   {"max_tangential_gradient", s.max_tangential},
                   {"failed_points", s.failed_points}});
  return out;
}

struct MassPipeline {
  json result;
  double mass = 0.0;
  bool converged = true;
  CsvTable surface_csv;
};

MassPipeline mass_pipeline(const RunConfig& c, bool require_radii) {
  if (require_radii && c.radii.size() < 1) throw ConfigError("radii", "the mass command needs at least one radius");
  const SphereRule rule = sphere_rule(c.n, c.degree);
  MassPipeline p;
  json& r = p.result;
  r["quadrature"] = {{"degree", c.degree},
                     {"sphere_nodes", rule.size()},
                     {"radial_nodes", c.exterior.radial_nodes},
                     {"split_factor", c.exterior.split_factor}};

  std::optional<SurfaceMass> surface;
  if (!c.radii.empty()) {
    surface = adm_mass_surface(c.function, c.radii, rule, c.domain);
    r["radii"] = surface->radii;
    r["surface_estimates"] = surface->estimates;
    r["extrapolated_surface_mass"] = surface->fit.limit;
    r["extrapolation"] = {{"exponent", surface->fit.exponent},
                          {"coefficient", surface->fit.coefficient},
                          {"residual", surface->fit.residual},
                          {"fitted", surface->fit.fitted}};
    p.surface_csv.file_name = "surface_mass.csv";
    p.surface_csv.header = {"radius", "surface_estimate"};
    for (std::size_t i = 0; i < surface->radii.size(); ++i)
      p.surface_csv.rows.push_back({format_double(surface->radii[i]), format_double(surface->estimates[i])});
  }

  const BulkMass bulk = adm_mass_bulk(c.function, c.domain, rule, c.exterior);
  r["bulk_mass"] = bulk.mass;
  r["tail_bound"] = bulk.tail_bound;
  r["bulk_refinement_delta"] = bulk.refinement_delta;
  r["bulk_converged"] = bulk.converged;
  p.converged = bulk.converged;

  double boundary = 0.0;
  if (c.domain.has_boundary()) {
    const BoundaryTerm w = boundary_term_weighted(c.function, c.domain, rule, c.constancy_tolerance);
    boundary = w.value;
    r["boundary_constancy_deviation"] = w.max_deviation;
    r["boundary_weight_range"] = {w.min_weight, w.max_weight};
    r["boundary_term_full"] = boundary_term_full(c.domain, c.n, rule);
    r["boundary_approach"] = approach_json(boundary_approach(c.function, c.domain, rule, c.approach_offsets));
  }
  r["boundary_term"] = boundary;
  p.mass = bulk.mass + boundary;
  r["total_bulk_boundary"] = p.mass;
  if (surface && !c.domain.has_boundary()) r["surface_minus_bulk"] = surface->fit.limit - bulk.mass;

  if (c.domain.has_boundary()) {
    const PenroseCheck pc = penrose_check(p.mass, c.domain, c.n, rule);
    const AlexandrovFenchelCheck af = alexandrov_fenchel_check(c.domain, c.n, rule);
    r["penrose_lhs"] = pc.lhs;
    r["penrose_rhs"] = pc.rhs;
    r["penrose_ratio"] = pc.ratio;
    r["boundary_area"] = pc.area;
    r["inequality_verdicts"] = {{"penrose", pc.verdict}, {"alexandrov_fenchel", af.verdict}};
  }
  return p;
}

void finish(CommandOutput& out, bool converged) {
  json flags = json::array();
  if (!converged) {
    flags.push_back("exterior_integral_not_converged");
    out.exit_code = kExitNonConvergence;
  }
  out.report["flags"] = flags;
}

struct NamedResidual {
  const char* name;
  bool differential;
  double (*get)(const IdentityResiduals&);
};

const NamedResidual kResiduals[] = {
    {"gram_contraction", false, [](const IdentityResiduals& r) { return r.gram[0]; }},
    {"gram_m_tensor", false, [](const IdentityResiduals& r) { return r.gram[1]; }},
    {"gram_gradient_inner", false, [](const IdentityResiduals& r) { return r.gram[2]; }},
    {"flat_contraction_divergence", true, [](const IdentityResiduals& r) { return r.contraction[0]; }},
    {"mixed_contraction_symmetry", false, [](const IdentityResiduals& r) { return r.contraction[1]; }},
    {"mixed_contraction_divergence", true, [](const IdentityResiduals& r) { return r.contraction[2]; }},
    {"mm_contraction", false, [](const IdentityResiduals& r) { return r.contraction[3]; }},
    {"symmetric_antisymmetric_cf", false, [](const IdentityResiduals& r) { return r.antisym_cf; }},
    {"normal_commutator", true, [](const IdentityResiduals& r) { return r.normal_commutator; }},
    {"gauss_vs_intrinsic", true, [](const IdentityResiduals& r) { return r.gauss_vs_intrinsic; }},
    {"s_perp_vs_ricci", false, [](const IdentityResiduals& r) { return r.ricci_vs_formula; }},
    {"divergence", true, [](const IdentityResiduals& r) { return r.divergence; }},
};

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_csv(const CsvTable& table) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + field(cells[i]);
    return out + "\r\n";
  };
  std::string out = line(table.header);
  for (const auto& row : table.rows) out += line(row);
  return out;
}

std::vector<std::vector<double>> sample_points(int n, const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  auto uniform = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < spec.count; ++k) {
    std::vector<double> p(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      p[i] = std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * std::numbers::pi * uniform());
      norm2 += p[i] * p[i];
    }
    const double r = spec.radius_min + (spec.radius_max - spec.radius_min) * uniform();
    for (double& v : p) v *= r / std::sqrt(norm2);
    pts.push_back(std::move(p));
  }
  return pts;
}

CommandOutput run_mass(const RunConfig& config) {
  CommandOutput out;
  out.report_name = "mass";
  out.report = envelope("mass", config);
  MassPipeline p = mass_pipeline(config, true);
  out.report["result"] = p.result;
  out.tables.push_back(std::move(p.surface_csv));
  finish(out, p.converged);
  return out;
}

CommandOutput run_penrose(const RunConfig& config) {
  if (!config.domain.has_boundary())
    throw ConfigError("domain", "the penrose command needs a domain with a boundary");
  CommandOutput out;
  out.report_name = "penrose";
  out.report = envelope("penrose", config);
  MassPipeline p = mass_pipeline(config, false);
  const SphereRule rule = sphere_rule(config.n, config.degree);
  const PenroseCheck pc = penrose_check(p.mass, config.domain, config.n, rule);
  const AlexandrovFenchelCheck af = alexandrov_fenchel_check(config.domain, config.n, rule);

  json r;
  r["mass"] = p.result;
  r["penrose"] = {{"lhs", pc.lhs},
                  {"rhs", pc.rhs},
                  {"ratio", pc.ratio},
                  {"area", pc.area},
                  {"verdict", pc.verdict},
                  {"note", "conditional: the boundary is assumed to be an outermost minimal surface; not verified"}};
  r["alexandrov_fenchel"] = {{"lhs", af.lhs}, {"rhs", af.rhs}, {"gap", af.gap}, {"verdict", af.verdict}};
  out.report["result"] = r;
  if (!p.surface_csv.rows.empty()) out.tables.push_back(std::move(p.surface_csv));
  finish(out, p.converged);
  return out;
}

CommandOutput run_decay(const RunConfig& config) {
  const std::vector<double>& radii = config.decay_radii.empty() ? config.radii : config.decay_radii;
  const char* field = config.decay_radii.empty() ? "radii" : "decay_radii";
  if (radii.size() < 3) throw ConfigError(field, "the decay command needs at least 3 radii");
  if (radii.back() < 100.0 * radii.front()) throw ConfigError(field, "radii must span at least two decades");

  CommandOutput out;
  out.report_name = "decay";
  out.report = envelope("decay", config);
  const DecayEstimate d = decay_estimate(config.function, radii, sphere_rule(config.n, config.degree));
  out.report["result"] = {{"p_est", d.p_est},
                          {"q_est", d.q_est},
                          {"cap", kDecayCap},
                          {"flat_verdict", d.flat_verdict},
                          {"p_threshold", 0.5 * (config.n - 2)},
                          {"q_threshold", config.n},
                          {"radii", d.radii},
                          {"max_gradient", d.max_gradient},
                          {"max_curvature", d.max_curvature}};
  CsvTable csv{"decay.csv", {"radius", "max_gradient", "max_curvature"}, {}};
  for (std::size_t i = 0; i < d.radii.size(); ++i)
    csv.rows.push_back(
        {format_double(d.radii[i]), format_double(d.max_gradient[i]), format_double(d.max_curvature[i])});
  out.tables.push_back(std::move(csv));
  finish(out, true);
  return out;
}

CommandOutput run_verify(const RunConfig& config) {
  std::vector<std::vector<double>> points = config.points;
  for (auto& p : sample_points(config.n, config.sample)) points.push_back(std::move(p));

  const double h = config.fd_step;
  constexpr std::size_t kCount = std::size(kResiduals);
  std::array<std::vector<double>, kCount> values, halved;
  json entries = json::array();
  CsvTable csv{"verify_points.csv", {}, {}};
  for (int i = 0; i < config.n; ++i) csv.header.push_back("x" + std::to_string(i + 1));
  for (const NamedResidual& nr : kResiduals) csv.header.push_back(nr.name);
  csv.header.push_back("error");

  int failed = 0;
  for (const auto& p : points) {
    json e;
    e["point"] = p;
    std::vector<std::string> row;
    for (double v : p) row.push_back(format_double(v));
    try {
      if (!config.domain.contains(p)) throw DomainError("point lies inside the excluded region");
      const IdentityResiduals r = check_identities(config.function, p, h);
      const IdentityResiduals r2 = check_identities(config.function, p, 0.5 * h);
      json res;
      for (std::size_t k = 0; k < kCount; ++k) {
        const double v = kResiduals[k].get(r);
        values[k].push_back(v);
        halved[k].push_back(kResiduals[k].get(r2));
        res[kResiduals[k].name] = v;
        row.push_back(format_double(v));
      }
      e["residuals"] = res;
      row.push_back("");
    } catch (const Error& err) {
      ++failed;
      e["error"] = err.what();
      row.resize(config.n);
      for (std::size_t k = 0; k < kCount; ++k) row.push_back("");
      row.push_back(err.what());
    }
    entries.push_back(e);
    csv.rows.push_back(std::move(row));
  }

  json table;
  double algebraic = 0.0, differential = 0.0;
  for (std::size_t k = 0; k < kCount; ++k) {
    json t;
    t["differential"] = kResiduals[k].differential;
    if (values[k].empty()) {
      t["max"] = nullptr;
      t["median"] = nullptr;
    } else {
      const double mx = *std::max_element(values[k].begin(), values[k].end());
      t["max"] = mx;
      t["median"] = median(values[k]);
      double& worst = kResiduals[k].differential ? differential : algebraic;
      worst = std::max(worst, mx);
      if (kResiduals[k].differential) {
        const double mh = *std::max_element(halved[k].begin(), halved[k].end());
        t["max_half_step"] = mh;
        // Residuals already at rounding level carry no order information.
        t["order"] = (mx > 1e-13 && mh > 0.0) ? json(std::log2(mx / mh)) : json(nullptr);
      }
    }
    table[kResiduals[k].name] = t;
  }

  CommandOutput out;
  out.report_name = "verify";
  out.report = envelope("verify", config);
  out.report["result"] = {{"fd_step", h},
                          {"points_evaluated", static_cast<int>(points.size()) - failed},
                          {"points_failed", failed},
                          {"algebraic_max", algebraic},
                          {"differential_max", differential},
                          {"residuals", table},
                          {"points", entries}};
  out.tables.push_back(std::move(csv));
  finish(out, true);
  return out;
}

CommandOutput run_command(const std::string& command, const RunConfig& config) {
  if (command == "mass") return run_mass(config);
  if (command == "verify") return run_verify(config);
  if (command == "penrose") return run_penrose(config);
  if (command == "decay") return run_decay(config);
  throw ConfigError("command", "unknown command \"" + command + "\"");
}

void write_outputs(const CommandOutput& output, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / (output.report_name + ".json"), std::ios::binary);
    f << output.report.dump(2) << "\n";
    if (!f) throw Error("cannot write report to " + dir.string());
  }
  for (const CsvTable& t : output.tables) {
    std::ofstream f(dir / t.file_name, std::ios::binary);
    f << format_csv(t);
    if (!f) throw Error("cannot write " + t.file_name);
  }
}

}  // namespace graphmass
