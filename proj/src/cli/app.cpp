#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "besilab/cli.hpp"
#include "besilab/errors.hpp"
#include "besilab/parallel.hpp"
#include "besilab/svg.hpp"

namespace besilab::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size()) throw Error(ErrorKind::config, "cannot parse " + what + " entry '" + item + "'");
    out.push_back(x);
  }
  return out;
}

Vec2 parse_vec2(const std::string& text, const std::string& what) {
  auto xs = parse_numbers(text, what);
  if (xs.size() != 2) throw Error(ErrorKind::config, what + " needs two numbers");
  return {xs[0], xs[1]};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::config, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorKind::config, "failed writing " + path.string());
}

std::string or_default(const std::string& s, const char* fallback) { return s.empty() ? fallback : s; }

CertificateReport dispatch(const RunConfig& c) {
  const std::string& e = c.experiment;
  if (e == "perron") {
    PerronCertificateOptions o;
    o.depths = parse_int_sweep(or_default(c.depths, "4..10"));
    o.p = parse_exponent(or_default(c.p, "8/5")).value;
    return perron_certificate(o);
  }
  if (e == "certify-main") {
    MainCertificateOptions o;
    o.depths = parse_int_sweep(or_default(c.depths, "4..10"));
    SliceSpec s{c.slice, parse_vec2(c.fixed, "fixed")};
    return main_certificate(parse_domain(c.domain), s, ExponentTriple::parse(or_default(c.p, "4,8/5,8")), o);
  }
  if (e == "certify-degenerate") {
    DegenerateCertificateOptions o;
    o.depths = parse_int_sweep(or_default(c.depths, "4..8"));
    o.lambda = c.lambda;
    return degenerate_certificate(ExponentTriple::parse(or_default(c.p, "4,8,8/5")), o);
  }
  if (e == "halfspace") {
    HalfspaceCertificateOptions o;
    o.eps = parse_real_sweep(c.eps);
    return halfspace_certificate(parse_gamma_vec(or_default(c.v, "1,0;0,1;-1,-1")),
                                 ExponentTriple::parse(or_default(c.p, "4/3,4/3,-2")), o);
  }
  if (e == "s-l1") {
    SL1CertificateOptions o;
    o.eps = parse_real_sweep(c.eps);
    return s_l1_certificate(parse_gamma_vec(or_default(c.v, "1,0;0,1;-1,-1")), parse_exponent(or_default(c.p, "2")).value, o);
  }
  if (e == "identity") {
    IdentityCertificateOptions o;
    o.spacing = c.spacing;
    o.tol = c.tol;
    GammaVec v = c.v.empty() ? default_identity_vector() : parse_gamma_vec(c.v);
    return identity_certificate(v, default_identity_triples(), o);
  }
  if (e == "tangency") {
    TangencyOptions o;
    o.radii = parse_real_sweep(c.radii);
    o.samples = c.samples;
    o.seed = c.seed;
    auto domain = parse_domain(c.domain);
    Vec4 point = c.point.empty() ? default_boundary_point(domain) : parse_vec4(c.point);
    return tangency_certificate(domain, point, o);
  }
  throw Error(ErrorKind::config, "unknown experiment '" + e + "'");
}

// Config values may be strings, numbers, or (nested) arrays of numbers.
std::string json_to_arg(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream s;
    s.precision(17);
    s << j.get<double>();
    return s.str();
  }
  if (j.is_array()) {
    bool nested = !j.empty() && j[0].is_array();
    std::string out;
    for (std::size_t n = 0; n < j.size(); ++n) out += (n ? (nested ? ";" : ",") : "") + json_to_arg(j[n]);
    return out;
  }
  throw Error(ErrorKind::config, "unsupported config value " + j.dump());
}

struct Binder {
  CLI::App* app;
  RunConfig* cfg;
  std::map<std::string, std::function<void(const std::string&)>> setters;

  template <class T>
  void add(const std::string& name, T RunConfig::*field, const std::string& help) {
    app->add_option("--" + name, cfg->*field, help)->capture_default_str();
    setters[name] = [this, field, name](const std::string& s) {
      std::istringstream in(s);
      if constexpr (std::is_same_v<T, std::string>) {
        cfg->*field = s;
      } else {
        T v{};
        in >> v;
        if (in.fail() || !in.eof()) throw Error(ErrorKind::config, "field '" + name + "': cannot parse '" + s + "'");
        cfg->*field = v;
      }
    };
  }

  void apply_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::config, "cannot open config file " + path);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::config, "config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::config, "config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        if (!value.is_string() || value.get<std::string>() != cfg->experiment)
          throw Error(ErrorKind::config, "field 'experiment': config is for " + value.dump() + ", not " + cfg->experiment);
        continue;
      }
      auto it = setters.find(key);
      if (it == setters.end()) throw Error(ErrorKind::config, "unknown field '" + key + "' for " + cfg->experiment);
      if (app->get_option("--" + key)->count() > 0) continue;  // flags win
      it->second(json_to_arg(value));
    }
  }
};

struct Sub {
  const char* name;
  const char* help;
};

const Sub kSubs[] = {
    {"perron", "Perron-tree Besicovitch families: measure of the union and the square-function Holder bound"},
    {"certify-main", "Curved-boundary counterexample: sliding forms over a Perron family aligned with the "
                     "slice normals, rectangles against their disjoint reaches and a fixed large square"},
    {"certify-degenerate", "Degenerate (collinear) normals v = (u, lambda u, -(1 + lambda) u): both other inputs "
                           "are reach-type strips"},
    {"halfspace", "Half-space form with a negative exponent: thin rectangle, its reach and a fixed square in "
                  "the strip intersection"},
    {"s-l1", "Bilinear operator S_w into L^1: thin rectangle in both slots, logarithmic growth"},
    {"identity", "Sliding form as a combination of the half-space and pointwise-product forms, on Gaussians"},
    {"tangency", "Dilations of a domain at a boundary point converge to the tangent half-space"},
    {"plot", "Standalone figures: perron, triangle, degenerate"},
};

}  // namespace

GammaVec parse_gamma_vec(const std::string& text) {
  std::vector<Vec2> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ';')) parts.push_back(parse_vec2(item, "v"));
  if (parts.size() == 2) parts.push_back(-(parts[0] + parts[1]));
  if (parts.size() != 3) throw Error(ErrorKind::config, "v needs two or three planar vectors separated by ';'");
  GammaVec v{parts[0], parts[1], parts[2]};
  if (!v.in_gamma(1e-9 * std::max(1.0, v.norm()))) throw Error(ErrorKind::config, "v components must sum to zero");
  return v;
}

Vec4 parse_vec4(const std::string& text) {
  auto xs = parse_numbers(text, "point");
  if (xs.size() != 4) throw Error(ErrorKind::config, "point needs four numbers");
  return {xs[0], xs[1], xs[2], xs[3]};
}

Vec4 default_boundary_point(const LevelSetDomain& domain) {
  const Vec4 origin{0.0, 0.0, 0.0, 0.0};
  if (std::abs(domain.value(origin)) < 1e-12) return origin;
  for (int axis = 0; axis < 4; ++axis)
    for (double sgn : {1.0, -1.0}) {
      auto at = [&](double t) {
        Vec4 x = origin;
        x[axis] = sgn * t;
        return x;
      };
      double lo = 0.0, hi = 0.0;
      double f0 = domain.value(origin);
      for (double t = 0.5; t <= 64.0; t *= 2.0)
        if ((domain.value(at(t)) < 0.0) != (f0 < 0.0)) {
          hi = t;
          break;
        }
      if (hi == 0.0) continue;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        ((domain.value(at(mid)) < 0.0) == (f0 < 0.0) ? lo : hi) = mid;
      }
      return at(0.5 * (lo + hi));
    }
  throw Error(ErrorKind::config, "no boundary point found on the coordinate axes; pass --point");
}

std::string emit_figure(const RunConfig& c) {
  if (c.kind == "perron") {
    PerronParams pp;
    pp.depth = c.depth;
    return family_svg(build_perron_family(pp));
  }
  if (c.kind == "triangle") {
    GammaVec v = parse_gamma_vec(or_default(c.v, "1,0;0,1;-1,-1"));
    return triangle_svg(configuration_triangle(v), "configuration");
  }
  if (c.kind == "degenerate") {
    Vec2 u{1.0, 0.0};
    GammaVec v{u, c.lambda * u, -(1.0 + c.lambda) * u};
    return triangle_svg(configuration_triangle(v), "degenerate configuration");
  }
  throw Error(ErrorKind::unsupported_kind, "figure kind '" + c.kind + "' (use perron, triangle or degenerate)");
}

int run(const RunConfig& c, std::ostream& log) {
  if (c.threads < 0) throw Error(ErrorKind::config, "field 'threads': must be >= 0");
  set_worker_count(c.threads);
  fs::path out(c.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::config, "field 'out': cannot create " + out.string() + ": " + ec.message());

  if (c.experiment == "plot") {
    write_file(out / (c.kind + ".svg"), emit_figure(c));
    log << "wrote " << (out / (c.kind + ".svg")).string() << "\n";
    return 0;
  }
  CertificateReport rep = dispatch(c);
  write_file(out / "report.json", rep.json_text());
  write_file(out / "report.csv", rep.csv_text());
  for (const auto& f : rep.figures) write_file(out / f.name, f.svg);
  for (const auto& [name, v] : rep.verdicts.items())
    log << (v.get<bool>() ? "PASS " : "FAIL ") << rep.experiment << " " << name << "\n";
  log << "report written to " << (out / "report.json").string() << "\n";
  return rep.passed() ? 0 : 2;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on Besicovitch-set counterexamples for trilinear forms with curved "
               "singularities."};
  app.require_subcommand(1);
  RunConfig cfg;
  std::map<std::string, std::unique_ptr<Binder>> binders;
  std::map<std::string, std::string> config_paths;
  for (const Sub& s : kSubs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    auto b = std::make_unique<Binder>(Binder{sub, &cfg, {}});
    const std::string name = s.name;
    sub->add_option("--config", config_paths[name], "JSON file with option values; flags override it");
    b->add("out", &RunConfig::out, "output directory");
    b->add("threads", &RunConfig::threads, "worker threads (0: BESICOVITCH_LAB_THREADS or all cores)");
    if (name == "perron") {
      b->add("depths", &RunConfig::depths, "depth sweep, e.g. 4..10 (default 4..10)");
      b->add("p", &RunConfig::p, "square-function exponent in [1, 2) (default 8/5)");
    } else if (name == "certify-main") {
      b->add("domain", &RunConfig::domain, "ball4 | ellipsoid4:a,b,c,d | paraboloid-d1 | cylinder-disc | halfspace:n1,..,n4[,c]");
      b->add("slice", &RunConfig::slice, "sliced index j0 in {1, 2, 3}");
      b->add("fixed", &RunConfig::fixed, "fixed component of the slice, x,y");
      b->add("p", &RunConfig::p, "exponent triple (default 4,8/5,8)");
      b->add("depths", &RunConfig::depths, "depth sweep (default 4..10)");
    } else if (name == "certify-degenerate") {
      b->add("p", &RunConfig::p, "exponent triple (default 4,8,8/5)");
      b->add("depths", &RunConfig::depths, "depth sweep (default 4..8)");
      b->add("lambda", &RunConfig::lambda, "collinearity ratio lambda");
    } else if (name == "halfspace") {
      b->add("v", &RunConfig::v, "Gamma vector x1,y1;x2,y2[;x3,y3] (default 1,0;0,1;-1,-1)");
      b->add("p", &RunConfig::p, "exponent triple with one entry <= -1 (default 4/3,4/3,-2)");
      b->add("eps", &RunConfig::eps, "eps sweep, e.g. 2^-3..2^-8");
    } else if (name == "s-l1") {
      b->add("v", &RunConfig::v, "Gamma vector (default 1,0;0,1;-1,-1)");
      b->add("p", &RunConfig::p, "exponent p in (1, inf) (default 2)");
      b->add("eps", &RunConfig::eps, "eps sweep, e.g. 2^-3..2^-8");
    } else if (name == "identity") {
      b->add("v", &RunConfig::v, "Gamma vector (default: a fixed generic unit vector)");
      b->add("spacing", &RunConfig::spacing, "frequency grid spacing; the run also uses half of it");
      b->add("tol", &RunConfig::tol, "residual tolerance");
    } else if (name == "tangency") {
      b->add("domain", &RunConfig::domain, "domain spec as for certify-main");
      b->add("point", &RunConfig::point, "boundary point x1,x2,x3,x4 (default: on a coordinate axis)");
      b->add("radii", &RunConfig::radii, "dilation radii, e.g. 4,8,16,32 or 2^2..2^5");
      b->add("samples", &RunConfig::samples, "Monte Carlo samples per radius");
      b->add("seed", &RunConfig::seed, "random seed");
    } else if (name == "plot") {
      b->add("kind", &RunConfig::kind, "perron | triangle | degenerate");
      b->add("depth", &RunConfig::depth, "Perron depth for kind perron");
      b->add("v", &RunConfig::v, "Gamma vector for kind triangle");
      b->add("lambda", &RunConfig::lambda, "lambda for kind degenerate");
    }
    binders[name] = std::move(b);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.experiment = sub->get_name();
    const std::string& path = config_paths[cfg.experiment];
    if (!path.empty()) binders[cfg.experiment]->apply_config(path);
    return run(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace besilab::cli
