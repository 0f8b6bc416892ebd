#include "manapprox/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "manapprox/disk_mesh.hpp"
#include "manapprox/errors.hpp"
#include "manapprox/expression.hpp"
#include "manapprox/joint_slice.hpp"
#include "manapprox/oracle.hpp"
#include "manapprox/smoothing.hpp"

namespace manapprox {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
constexpr double kMaxVertices = 4e6;

Box cube(std::size_t n, double lo, double hi) {
  return Box(std::vector<Interval>(n, Interval(lo, hi)));
}

Interval read_interval(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(what + " must be an array [lo, hi] of two numbers");
  }
  double lo = v[0].get<double>();
  double hi = v[1].get<double>();
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw ConfigError(what + " must satisfy lo <= hi with finite ends");
  }
  return Interval(lo, hi);
}

double read_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + " must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
  return x;
}

long long read_integer(const json& v, const std::string& what) {
  if (!v.is_number_integer()) throw ConfigError(what + " must be an integer");
  return v.get<long long>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

json interval_json(const Interval& iv) { return json::array({iv.lo(), iv.hi()}); }

/// Rough vertex count of the disk mesh at resolution r.
double mesh_vertex_estimate(std::size_t n, double r) {
  double half = std::ceil(r / 2.0);
  if (n == 1) return r + 1.0;
  if (n == 2) return 1.0 + 3.0 * half * (half + 1.0);
  return std::pow(2.0 * half + 1.0, 3.0);
}

std::vector<Expression> parse_functions(const ExperimentConfig& cfg) {
  std::vector<Expression> out;
  for (std::size_t c = 0; c < cfg.functions.size(); ++c) {
    try {
      out.push_back(Expression::parse(cfg.functions[c], cfg.n));
    } catch (const ParseError& e) {
      throw ConfigError("functions[" + std::to_string(c) + "]: " + e.what());
    }
  }
  return out;
}

ContinuousFunction build_function(const ExperimentConfig& cfg) {
  try {
    return function_from_expressions(parse_functions(cfg), cfg.box);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

struct Pipeline {
  std::optional<ApproximationSequence> sequence;
  std::shared_ptr<const SetValuedOracle> oracle;
};

Pipeline build_pipeline(const ExperimentConfig& cfg) {
  Pipeline p;
  if (cfg.registry && *cfg.registry == "step") {
    StepDemo demo = make_step_sequence(4.0, cfg.schedule.r0);
    p.sequence.emplace(std::move(demo.sequence));
    p.oracle = std::make_shared<const StepOracle>(demo.oracle);
    return p;
  }
  ContinuousFunction f = build_function(cfg);
  p.sequence.emplace(make_sequence(f, cfg.box, cfg.disk,
                                   SmoothingSchedule(cfg.schedule.delta0, cfg.schedule.r0),
                                   cfg.taps));
  p.oracle = std::make_shared<const FunctionGraphOracle>(std::move(f));
  return p;
}

VerifyOptions verify_options(const ExperimentConfig& cfg) {
  VerifyOptions o;
  o.max_k = cfg.schedule.k_max;
  o.containment_tol = cfg.tolerances.containment;
  o.slack = cfg.tolerances.slack;
  o.boundary_tol = cfg.tolerances.boundary;
  return o;
}

SliceConfig slice_config(const ExperimentConfig& cfg) {
  const SliceSettings& s = *cfg.slice;
  return SliceConfig::make(s.i - 1, s.j - 1, cfg.box[s.j - 1], s.tix, s.delta_margin);
}

/// The fixed-point curve y = (y² + x²) / 4 solved by bisection over tix.
std::shared_ptr<const SetValuedOracle> quadratic_curve_oracle(const ExperimentConfig& cfg) {
  return std::make_shared<const BisectionCurveOracle>(
      cfg.box[1], cfg.slice->tix,
      [](double x, double y) { return y - (y * y + x * x) / 4.0; }, 1e-10);
}

bool uses_quadratic_curve(const ExperimentConfig& cfg) {
  return cfg.registry && *cfg.registry == "quadratic-joint" && cfg.n == 2 && cfg.m == 1 &&
         cfg.slice && cfg.slice->i == 1 && cfg.slice->j == 1;
}

std::string csv_header_values(const std::vector<std::string>& xs, std::size_t m) {
  std::string h;
  for (const auto& x : xs) h += "," + x;
  for (std::size_t c = 1; c <= m; ++c) h += ",y_" + std::to_string(c);
  return h;
}

void append_cloud_row(std::string& out, int k, std::size_t v, std::span<const double> value,
                      bool boundary, std::optional<double> dist) {
  out += std::to_string(k);
  out += ',';
  out += std::to_string(v);
  for (double c : value) {
    out += ',';
    out += format_double(c);
  }
  out += boundary ? ",1" : ",0";
  if (dist) {
    out += ',';
    out += format_double(*dist);
  }
  out += '\n';
}

std::string report_csv(const std::vector<ReportRow>& rows, bool has_distance) {
  std::string out =
      "k,vertex_count,simplex_count,max_norm,semidistance,in_box,boundary_ok,boundary_error,"
      "epsilon,crossings\n";
  for (const auto& r : rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.vertex_count) + ',' +
           std::to_string(r.simplex_count) + ',' + format_double(r.max_norm) + ',';
    if (has_distance) out += format_double(r.semidistance) + ',' + std::to_string(r.in_box);
    else out += ',';
    out += std::string(",") + (r.boundary_ok ? "1" : "0") + ',' + format_double(r.boundary_error) +
           ',';
    if (r.epsilon) out += format_double(*r.epsilon);
    out += ',';
    if (r.crossings) out += std::to_string(*r.crossings);
    out += '\n';
  }
  return out;
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* flag(bool ok) { return ok ? "pass" : "FAIL"; }

std::string summary_text(const ExperimentConfig& cfg, const std::string& mode,
                         const VerificationReport& rep, bool mesh_only) {
  std::ostringstream s;
  s << "mode: " << mode << "\n";
  s << "source: " << (cfg.registry ? "registry " + *cfg.registry : "expressions") << "\n";
  s << "n = " << cfg.n << ", m = " << cfg.m << ", k_max = " << cfg.schedule.k_max << "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%3s %10s %10s %12s %14s %8s %14s\n", "k", "vertices",
                "simplices", "max_norm", "semidistance", "boundary", "epsilon");
  s << line;
  for (const auto& r : rep.rows) {
    std::snprintf(line, sizeof line, "%3d %10zu %10zu %12s %14s %8s %14s\n", r.k,
                  r.vertex_count, r.simplex_count, short_double(r.max_norm).c_str(),
                  mesh_only ? "-" : short_double(r.semidistance).c_str(), flag(r.boundary_ok),
                  r.epsilon ? short_double(*r.epsilon).c_str() : "-");
    s << line;
  }
  s << "\n";
  if (!mesh_only) {
    s << "bounded: " << flag(rep.bounded) << " (declared " << short_double(rep.declared_bound)
      << ")\n";
    double last = rep.rows.empty() ? 0.0 : rep.rows.back().semidistance;
    s << "containment: " << flag(rep.containment_within_tol) << " (d_K = " << short_double(last)
      << ", tol " << short_double(rep.options.containment_tol) << ")\n";
    s << "containment trend: " << flag(rep.containment_monotone) << " (slack "
      << short_double(rep.options.slack) << ")\n";
  }
  s << "boundary spheres: " << flag(rep.boundary_spheres) << "\n";
  if (cfg.slice && !mesh_only && mode != "approx") {
    s << "slice invariants: " << flag(rep.slice_invariants) << " (" << rep.slice_violations
      << " violations)\n";
    s << "epsilon trend: " << flag(rep.epsilon_trend) << "\n";
  }
  s << "result: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

json manifest_json(const ExperimentConfig& cfg, const std::string& mode,
                   const VerificationReport& rep, const std::vector<std::string>& files) {
  json eps = json::array();
  for (const auto& r : rep.rows) {
    if (r.epsilon) eps.push_back(*r.epsilon);
  }
  json dist = json::array();
  for (const auto& r : rep.rows) dist.push_back(r.semidistance);
  return json{
      {"tool", "manapprox"},
      {"version", kVersion},
      {"mode", mode},
      {"config", config_to_json(cfg)},
      {"files", files},
      {"tolerances",
       {{"containment", rep.options.containment_tol},
        {"slack", rep.options.slack},
        {"boundary", rep.options.boundary_tol},
        {"monotone_floor", 1e-12}}},
      {"declared_bound", rep.declared_bound},
      {"epsilon", eps},
      {"semidistance", dist},
      {"checks",
       {{"bounded", rep.bounded},
        {"containment_within_tol", rep.containment_within_tol},
        {"containment_monotone", rep.containment_monotone},
        {"boundary_spheres", rep.boundary_spheres},
        {"slice_invariants", rep.slice_invariants},
        {"slice_violations", rep.slice_violations},
        {"epsilon_trend", rep.epsilon_trend}}},
      {"pass", rep.pass()},
  };
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

struct RunArtifacts {
  VerificationReport report;
  std::optional<std::string> clouds;
  bool mesh_only = false;
};

RunArtifacts run_mesh(const ExperimentConfig& cfg) {
  RunArtifacts a;
  a.mesh_only = true;
  VerificationReport& rep = a.report;
  rep.options = verify_options(cfg);
  std::vector<std::string> xs;
  for (std::size_t c = 1; c <= cfg.n; ++c) xs.push_back("x_" + std::to_string(c));
  std::string clouds = "k,vertex_id" + csv_header_values(xs, 0) + ",on_boundary\n";
  bool spheres = true;
  double worst = 0.0;
  for (int k = 0; k <= cfg.schedule.k_max; ++k) {
    int r = cfg.schedule.r0 << k;
    DiskMesh mesh = build_disk_mesh(static_cast<int>(cfg.n), cfg.disk, r);
    auto b = check_boundary_sphere(*mesh.manifold, mesh.embedding, cfg.disk,
                                   cfg.tolerances.boundary);
    ReportRow row;
    row.k = k;
    row.vertex_count = mesh.manifold->vertex_count();
    row.simplex_count = mesh.manifold->simplex_count();
    row.boundary_ok = b.pass();
    row.boundary_error = b.max_location_error;
    std::vector<bool> mask = mesh.manifold->boundary_vertex_mask();
    for (std::size_t v = 0; v < row.vertex_count; ++v) {
      auto val = mesh.embedding.value(static_cast<VertexId>(v));
      row.max_norm = std::max(row.max_norm, norm(val));
      append_cloud_row(clouds, k, v, val, mask[v], std::nullopt);
    }
    worst = std::max(worst, row.max_norm);
    spheres = spheres && row.boundary_ok;
    rep.rows.push_back(row);
  }
  rep.declared_bound = norm(cfg.disk.center()) + cfg.disk.radius();
  rep.bounded = worst <= rep.declared_bound * (1.0 + 1e-12);
  rep.containment_within_tol = true;
  rep.containment_monotone = true;
  rep.boundary_spheres = spheres;
  a.clouds = std::move(clouds);
  return a;
}

RunArtifacts run_approx(const ExperimentConfig& cfg, bool with_clouds) {
  RunArtifacts a;
  Pipeline p = build_pipeline(cfg);
  const ApproximationSequence& seq = *p.sequence;
  a.report = verify_sequence(seq, *p.oracle, cfg.box, verify_options(cfg));
  if (!with_clouds) return a;
  std::vector<std::string> xs;
  for (std::size_t c = 1; c <= cfg.n; ++c) xs.push_back("x_" + std::to_string(c));
  std::string clouds =
      "k,vertex_id" + csv_header_values(xs, cfg.m) + ",on_boundary,graph_distance\n";
  for (int k = 0; k <= cfg.schedule.k_max; ++k) {
    SequenceItem item = seq.item(k);
    std::vector<bool> mask = item.manifold().boundary_vertex_mask();
    for (std::size_t v = 0; v < item.map.carrier().vertex_count(); ++v) {
      auto val = item.map.value(static_cast<VertexId>(v));
      double d = p.oracle->graph_distance(val.first(cfg.n), val.subspan(cfg.n));
      append_cloud_row(clouds, k, v, val, mask[v], d);
    }
  }
  a.clouds = std::move(clouds);
  return a;
}

RunArtifacts run_joint(const ExperimentConfig& cfg, bool with_clouds) {
  if (!cfg.slice) throw ConfigError("joint mode needs a \"slice\" section");
  RunArtifacts a;
  Pipeline p = build_pipeline(cfg);
  SliceConfig sc = slice_config(cfg);
  JointResult jr = joint(*p.sequence, sc, p.oracle, cfg.box);
  std::shared_ptr<const SetValuedOracle> g_oracle =
      uses_quadratic_curve(cfg) ? quadratic_curve_oracle(cfg) : jr.oracle;
  a.report = verify_joint(*jr.slicer, *g_oracle, cfg.box, verify_options(cfg));
  if (!with_clouds) return a;

  const std::size_t nx = cfg.n - 1;
  std::vector<std::string> xs;
  for (std::size_t c = 1; c <= cfg.n; ++c) {
    if (c != cfg.slice->j) xs.push_back("x_" + std::to_string(c));
  }
  std::string clouds =
      "k,vertex_id" + csv_header_values(xs, cfg.m) + ",on_boundary,graph_distance\n";
  for (int k = 0; k <= cfg.schedule.k_max; ++k) {
    SliceResult s = jr.slicer->slice(k);
    for (std::size_t v = 0; v < s.level.parents.size(); ++v) {
      auto val = s.gprime.value(static_cast<VertexId>(v));
      double d = g_oracle->graph_distance(val.first(nx), val.subspan(nx));
      append_cloud_row(clouds, k, v, val, s.level.on_boundary_edge[v], d);
    }
  }
  a.clouds = std::move(clouds);
  return a;
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Mesh:
      return "mesh";
    case Mode::Approx:
      return "approx";
    case Mode::Joint:
      return "joint";
    case Mode::Verify:
      return "verify";
  }
  return "unknown";
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> registry_names() {
  return {"constant", "joint-1d", "quadratic-1d", "quadratic-joint", "step"};
}

ExperimentConfig registry_config(const std::string& name) {
  if (name == "quadratic-joint") {
    return ExperimentConfig{
        .n = 2,
        .m = 1,
        .box = cube(2, -1.0, 1.0),
        .disk = Disk({0.0, 0.0}, 2.0),
        .functions = {"(x1^2 + x2^2) / 4"},
        .registry = name,
        .slice = SliceSettings{1, 1, Interval(0.0, 0.5), std::nullopt},
        .schedule = {4, 0.4, 8},
        .tolerances = {2e-2, 1.05, 1e-9},
    };
  }
  if (name == "joint-1d") {
    return ExperimentConfig{
        .n = 1,
        .m = 1,
        .box = cube(1, -1.0, 1.0),
        .disk = Disk({0.0}, 1.5),
        .functions = {"(x1 + 1) / 4"},
        .registry = name,
        .slice = SliceSettings{1, 1, Interval(0.0, 0.5), std::nullopt},
        .schedule = {6, 0.4, 8},
        .tolerances = {1e-2, 1.05, 1e-9},
    };
  }
  if (name == "quadratic-1d") {
    return ExperimentConfig{
        .n = 1,
        .m = 1,
        .box = cube(1, -1.0, 1.0),
        .disk = Disk({0.0}, 1.5),
        .functions = {"x1^2"},
        .registry = name,
        .slice = std::nullopt,
        .schedule = {6, 0.4, 8},
        .tolerances = {1e-2, 1.05, 1e-9},
    };
  }
  if (name == "constant") {
    return ExperimentConfig{
        .n = 2,
        .m = 1,
        .box = cube(2, -1.0, 1.0),
        .disk = Disk({0.0, 0.0}, 2.0),
        .functions = {"0.5"},
        .registry = name,
        .slice = std::nullopt,
        .schedule = {3, 0.4, 8},
        .tolerances = {1e-2, 1.05, 1e-9},
    };
  }
  if (name == "step") {
    return ExperimentConfig{
        .n = 1,
        .m = 1,
        .box = cube(1, -1.0, 1.0),
        .disk = Disk({0.0}, 1.5),
        .functions = {},
        .registry = name,
        .slice = std::nullopt,
        .schedule = {8, 0.4, 8},
        .tolerances = {5e-2, 1.05, 1e-9},
    };
  }
  throw ConfigError("unknown registry name '" + name + "'");
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"n", "m", "box", "disk", "functions", "registry", "slice", "schedule",
                  "tolerances", "mollifier_taps", "output"},
                 "config");
  try {
    std::optional<ExperimentConfig> base;
    if (doc.contains("registry")) {
      if (!doc["registry"].is_string()) throw ConfigError("registry must be a string");
      base = registry_config(doc["registry"].get<std::string>());
    }
    auto required = [&](const char* key) {
      if (!doc.contains(key) && !base) {
        throw ConfigError(std::string("missing key '") + key + "'");
      }
      return doc.contains(key);
    };

    std::size_t n = 0;
    if (required("n")) {
      long long v = read_integer(doc["n"], "n");
      if (v < 1 || v > 3) throw ConfigError("n must be 1, 2 or 3");
      n = static_cast<std::size_t>(v);
    } else {
      n = base->n;
    }
    std::size_t m = 0;
    if (required("m")) {
      long long v = read_integer(doc["m"], "m");
      if (v < 1) throw ConfigError("m must be >= 1");
      m = static_cast<std::size_t>(v);
    } else {
      m = base->m;
    }

    std::optional<Box> box;
    if (required("box")) {
      const json& b = doc["box"];
      if (!b.is_array() || b.empty()) throw ConfigError("box must be a nonempty array");
      std::vector<Interval> coords;
      for (std::size_t c = 0; c < b.size(); ++c) {
        coords.push_back(read_interval(b[c], "box[" + std::to_string(c) + "]"));
      }
      box.emplace(std::move(coords));
    } else {
      box = base->box;
    }

    std::optional<Disk> disk;
    if (required("disk")) {
      const json& d = doc["disk"];
      if (!d.is_object()) throw ConfigError("disk must be an object");
      reject_unknown(d, {"center", "radius"}, "disk");
      if (!d.contains("center") || !d["center"].is_array()) {
        throw ConfigError("disk.center must be an array");
      }
      Point center;
      for (const auto& c : d["center"]) center.push_back(read_number(c, "disk.center"));
      if (!d.contains("radius")) throw ConfigError("disk.radius is missing");
      double radius = read_number(d["radius"], "disk.radius");
      if (!(radius > 0.0)) throw ConfigError("disk.radius must be positive");
      if (center.empty()) throw ConfigError("disk.center must be nonempty");
      disk.emplace(std::move(center), radius);
    } else {
      disk = base->disk;
    }

    ExperimentConfig cfg{.n = n,
                         .m = m,
                         .box = *box,
                         .disk = *disk,
                         .functions = {},
                         .registry = std::nullopt,
                         .slice = std::nullopt,
                         .schedule = {},
                         .tolerances = {}};
    if (base) {
      cfg.functions = base->functions;
      cfg.registry = base->registry;
      cfg.slice = base->slice;
      cfg.schedule = base->schedule;
      cfg.tolerances = base->tolerances;
      cfg.taps = base->taps;
      cfg.output = base->output;
    }

    if (doc.contains("functions")) {
      const json& f = doc["functions"];
      if (!f.is_array()) throw ConfigError("functions must be an array of strings");
      cfg.functions.clear();
      for (const auto& e : f) {
        if (!e.is_string()) throw ConfigError("functions must be an array of strings");
        cfg.functions.push_back(e.get<std::string>());
      }
      // Explicit functions replace the registry pipeline.
      cfg.registry.reset();
    }

    if (doc.contains("slice")) {
      const json& s = doc["slice"];
      if (s.is_null()) {
        cfg.slice.reset();
      } else {
        if (!s.is_object()) throw ConfigError("slice must be an object");
        reject_unknown(s, {"i", "j", "tix", "delta_margin"}, "slice");
        if (!s.contains("i") || !s.contains("j") || !s.contains("tix")) {
          throw ConfigError("slice needs i, j and tix");
        }
        SliceSettings settings;
        long long i = read_integer(s["i"], "slice.i");
        long long j = read_integer(s["j"], "slice.j");
        if (i < 1 || j < 1) throw ConfigError("slice indices are 1-based");
        settings.i = static_cast<std::size_t>(i);
        settings.j = static_cast<std::size_t>(j);
        settings.tix = read_interval(s["tix"], "slice.tix");
        if (s.contains("delta_margin") && !s["delta_margin"].is_null()) {
          settings.delta_margin = read_number(s["delta_margin"], "slice.delta_margin");
        }
        cfg.slice = settings;
      }
    }

    if (doc.contains("schedule")) {
      const json& s = doc["schedule"];
      if (!s.is_object()) throw ConfigError("schedule must be an object");
      reject_unknown(s, {"k_max", "delta0", "r0"}, "schedule");
      if (s.contains("k_max")) {
        cfg.schedule.k_max = static_cast<int>(read_integer(s["k_max"], "schedule.k_max"));
      }
      if (s.contains("delta0")) cfg.schedule.delta0 = read_number(s["delta0"], "schedule.delta0");
      if (s.contains("r0")) cfg.schedule.r0 = static_cast<int>(read_integer(s["r0"], "schedule.r0"));
    }

    if (doc.contains("tolerances")) {
      const json& t = doc["tolerances"];
      if (!t.is_object()) throw ConfigError("tolerances must be an object");
      reject_unknown(t, {"containment", "slack", "boundary"}, "tolerances");
      if (t.contains("containment")) {
        cfg.tolerances.containment = read_number(t["containment"], "tolerances.containment");
      }
      if (t.contains("slack")) cfg.tolerances.slack = read_number(t["slack"], "tolerances.slack");
      if (t.contains("boundary")) {
        cfg.tolerances.boundary = read_number(t["boundary"], "tolerances.boundary");
      }
    }

    if (doc.contains("mollifier_taps")) {
      cfg.taps = static_cast<int>(read_integer(doc["mollifier_taps"], "mollifier_taps"));
    }
    if (doc.contains("output")) {
      if (!doc["output"].is_string()) throw ConfigError("output must be a string");
      cfg.output = doc["output"].get<std::string>();
    }
    validate(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return config_from_json(doc);
}

json config_to_json(const ExperimentConfig& cfg) {
  json box = json::array();
  for (const auto& iv : cfg.box.coords()) box.push_back(interval_json(iv));
  json doc{
      {"n", cfg.n},
      {"m", cfg.m},
      {"box", box},
      {"disk", {{"center", cfg.disk.center()}, {"radius", cfg.disk.radius()}}},
      {"schedule",
       {{"k_max", cfg.schedule.k_max}, {"delta0", cfg.schedule.delta0}, {"r0", cfg.schedule.r0}}},
      {"tolerances",
       {{"containment", cfg.tolerances.containment},
        {"slack", cfg.tolerances.slack},
        {"boundary", cfg.tolerances.boundary}}},
      {"mollifier_taps", cfg.taps},
      {"output", cfg.output},
  };
  // A registry name implies its functions.
  if (cfg.registry) {
    doc["registry"] = *cfg.registry;
  } else {
    doc["functions"] = cfg.functions;
  }
  if (cfg.slice) {
    json s{{"i", cfg.slice->i}, {"j", cfg.slice->j}, {"tix", interval_json(cfg.slice->tix)}};
    s["delta_margin"] =
        cfg.slice->delta_margin ? json(*cfg.slice->delta_margin) : json(nullptr);
    doc["slice"] = s;
  }
  return doc;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1 || cfg.n > 3) throw ConfigError("n must be 1, 2 or 3");
  if (cfg.m < 1) throw ConfigError("m must be >= 1");
  if (cfg.box.dim() != cfg.n) throw ConfigError("box must have n intervals");
  if (cfg.disk.dim() != cfg.n) throw ConfigError("disk center must have n coordinates");
  if (!cfg.disk.contains_in_interior(cfg.box)) {
    throw ConfigError("box must lie in the interior of the disk");
  }
  if (cfg.registry) {
    const auto names = registry_names();
    if (std::find(names.begin(), names.end(), *cfg.registry) == names.end()) {
      throw ConfigError("unknown registry name '" + *cfg.registry + "'");
    }
    if (*cfg.registry == "step" && (cfg.n != 1 || cfg.m != 1)) {
      throw ConfigError("the step registry entry needs n = 1 and m = 1");
    }
  }
  const bool step = cfg.registry && *cfg.registry == "step";
  if (!step) {
    if (cfg.functions.size() != cfg.m) {
      throw ConfigError("functions must list exactly m = " + std::to_string(cfg.m) +
                        " expressions");
    }
    build_function(cfg);
  }
  if (cfg.slice) {
    const SliceSettings& s = *cfg.slice;
    if (step) throw ConfigError("the step registry entry has no slice");
    if (s.i < 1 || s.i > cfg.m) throw ConfigError("slice.i must be in [1, m]");
    if (s.j < 1 || s.j > cfg.n) throw ConfigError("slice.j must be in [1, n]");
    if (!s.tix.inside_interior_of(cfg.box[s.j - 1])) {
      throw HypothesisViolation("slice.tix must lie strictly inside box[j]");
    }
    if (s.delta_margin && !(*s.delta_margin > 0.0)) {
      throw ConfigError("slice.delta_margin must be positive");
    }
  }
  const ScheduleSettings& sc = cfg.schedule;
  if (sc.k_max < 0 || sc.k_max > 20) throw ConfigError("schedule.k_max must be in [0, 20]");
  if (!(sc.delta0 > 0.0)) throw ConfigError("schedule.delta0 must be positive");
  if (sc.r0 < 1) throw ConfigError("schedule.r0 must be >= 1");
  double r_max = std::ldexp(static_cast<double>(sc.r0), sc.k_max);
  if (mesh_vertex_estimate(cfg.n, r_max) > kMaxVertices) {
    throw ConfigError("schedule produces meshes larger than " + short_double(kMaxVertices) +
                      " vertices; lower k_max or r0");
  }
  if (cfg.taps < 1 || cfg.taps > 16) throw ConfigError("mollifier_taps must be in [1, 16]");
  if (!(cfg.tolerances.containment >= 0.0)) {
    throw ConfigError("tolerances.containment must be >= 0");
  }
  if (!(cfg.tolerances.slack >= 1.0)) throw ConfigError("tolerances.slack must be >= 1");
  if (!(cfg.tolerances.boundary >= 0.0)) throw ConfigError("tolerances.boundary must be >= 0");
  if (cfg.output.empty()) throw ConfigError("output must be nonempty");
}

ExperimentOutcome run_experiment(ExperimentConfig cfg, Mode mode, const RunOptions& options,
                                 std::ostream& log) {
  ExperimentOutcome outcome;
  try {
    if (options.k_max) cfg.schedule.k_max = *options.k_max;
    validate(cfg);
    outcome.out_dir = options.out ? *options.out : std::filesystem::path(cfg.output);

    std::string name = mode_name(mode);
    RunArtifacts art;
    switch (mode) {
      case Mode::Mesh:
        art = run_mesh(cfg);
        break;
      case Mode::Approx:
        art = run_approx(cfg, true);
        break;
      case Mode::Joint:
        art = run_joint(cfg, true);
        break;
      case Mode::Verify:
        art = cfg.slice ? run_joint(cfg, false) : run_approx(cfg, false);
        break;
    }

    std::vector<std::string> files;
    if (art.clouds) files.push_back("clouds.csv");
    files.insert(files.end(), {"report.csv", "summary.txt", "manifest.json"});
    std::string summary = summary_text(cfg, name, art.report, art.mesh_only);
    std::string report = report_csv(art.report.rows, !art.mesh_only);
    std::string manifest = manifest_json(cfg, name, art.report, files).dump(2) + "\n";

    std::filesystem::create_directories(outcome.out_dir);
    if (art.clouds) write_file(outcome.out_dir / "clouds.csv", *art.clouds);
    write_file(outcome.out_dir / "report.csv", report);
    write_file(outcome.out_dir / "summary.txt", summary);
    write_file(outcome.out_dir / "manifest.json", manifest);
    if (!options.quiet) log << summary;

    outcome.exit_code = art.report.pass() ? 0 : 1;
    outcome.message = art.report.pass() ? "all checks passed" : "some checks failed";
    outcome.report = std::move(art.report);
  } catch (const HypothesisViolation& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("hypothesis violation: ") + e.what();
  } catch (const ConfigError& e) {
    outcome.exit_code = 2;
    outcome.message = std::string("invalid config: ") + e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.message = std::string("internal error: ") + e.what();
  }
  return outcome;
}

}  // namespace manapprox
