#include "etreg/scenario.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "etreg/toml.hpp"

namespace etreg {

namespace {

using toml::Table;
using toml::Value;

const Value& require_key(const Table& t, const std::string& key) {
  const auto it = t.find(key);
  if (it == t.end()) throw ValidationError("scenario: missing required key '" + key + "'");
  return it->second;
}

const Value* find_key(const Table& t, const std::string& key) {
  const auto it = t.find(key);
  return it == t.end() ? nullptr : &it->second;
}

double require_number(const Table& t, const std::string& key) {
  const Value& v = require_key(t, key);
  if (!v.is_number()) throw ValidationError("scenario: '" + key + "' must be a number");
  return v.as_number();
}

std::string require_string(const Table& t, const std::string& key) {
  const Value& v = require_key(t, key);
  if (!v.is_string()) throw ValidationError("scenario: '" + key + "' must be a string");
  return v.as_string();
}

Vector to_vector(const Value& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("scenario: '" + key + "' must be an array of numbers");
  Vector out(v.as_array().size());
  std::size_t i = 0;
  for (const Value& item : v.as_array()) {
    if (!item.is_number())
      throw ValidationError("scenario: '" + key + "' must contain only numbers");
    out[i++] = item.as_number();
  }
  return out;
}

Vector require_vector(const Table& t, const std::string& key) {
  return to_vector(require_key(t, key), key);
}

Matrix to_matrix(const Value& v, const std::string& key) {
  if (!v.is_array() || v.as_array().empty())
    throw ValidationError("scenario: '" + key + "' must be a non-empty array of rows");
  const std::size_t rows = v.as_array().size();
  std::size_t cols = 0;
  Matrix m;
  std::size_t i = 0;
  for (const Value& rv : v.as_array()) {
    const Vector row = to_vector(rv, key);
    if (i == 0) {
      cols = row.size();
      m = Matrix(rows, cols);
    } else if (row.size() != cols) {
      throw ValidationError("scenario: '" + key + "' rows have inconsistent lengths");
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
    ++i;
  }
  return m;
}

std::size_t require_count(const Table& t, const std::string& key) {
  const double v = require_number(t, key);
  if (!(v >= 0.0) || v != std::floor(v))
    throw ValidationError("scenario: '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

void reject_unknown_keys(const Table& t, const std::set<std::string>& known) {
  for (const auto& [key, value] : t) {
    if (!known.count(key)) throw ValidationError("scenario: unknown key '" + key + "'");
  }
}

}  // namespace

Scenario load_scenario(const std::string& path) {
  const Table t = toml::parse_file(path);
  reject_unknown_keys(
      t, {"plant.kind", "plant.w", "exosystem.kind", "observer.lambda", "backstepping.catalog",
          "backstepping.rho", "backstepping.paper_literal_vartheta1", "internal_model.varrho",
          "internal_model.M", "internal_model.N", "trigger.sigma", "trigger.delta", "trigger.pi",
          "sim.t_end", "sim.h", "sim.event_tol", "sim.max_triggers", "sim.min_dwell_guard",
          "sim.report_stride", "init.v0", "init.z0", "init.x0", "init.xi_hat0", "init.eta0",
          "output.dir"});

  Scenario sc;
  sc.source_path = path;
  sc.plant_kind = require_string(t, "plant.kind");
  sc.w = require_vector(t, "plant.w");
  sc.exo_kind = require_string(t, "exosystem.kind");
  sc.lambda = require_vector(t, "observer.lambda");

  sc.rho_catalog = require_string(t, "backstepping.catalog");
  if (const Value* v = find_key(t, "backstepping.rho")) {
    if (!v->is_array()) throw ValidationError("scenario: 'backstepping.rho' must be an array");
    for (const Value& poly : v->as_array())
      sc.rho_poly.push_back(to_vector(poly, "backstepping.rho"));
  }
  if (const Value* v = find_key(t, "backstepping.paper_literal_vartheta1"))
    sc.paper_literal_vartheta1 = v->as_bool();

  sc.varrho = require_vector(t, "internal_model.varrho");
  if (const Value* v = find_key(t, "internal_model.M")) sc.M = to_matrix(*v, "internal_model.M");
  if (const Value* v = find_key(t, "internal_model.N"))
    sc.N = to_vector(*v, "internal_model.N");

  sc.sigma = require_number(t, "trigger.sigma");
  sc.delta = require_number(t, "trigger.delta");
  sc.pi_kind = require_string(t, "trigger.pi");

  sc.t_end = require_number(t, "sim.t_end");
  sc.h = require_number(t, "sim.h");
  sc.event_tol = require_number(t, "sim.event_tol");
  if (find_key(t, "sim.max_triggers")) sc.max_triggers = require_count(t, "sim.max_triggers");
  if (const Value* v = find_key(t, "sim.min_dwell_guard")) sc.min_dwell_guard = v->as_number();
  if (find_key(t, "sim.report_stride")) sc.report_stride = require_count(t, "sim.report_stride");

  sc.init.v0 = require_vector(t, "init.v0");
  sc.init.z0 = require_vector(t, "init.z0");
  sc.init.x0 = require_vector(t, "init.x0");
  sc.init.xi_hat0 = require_vector(t, "init.xi_hat0");
  sc.init.eta0 = require_vector(t, "init.eta0");

  if (const Value* v = find_key(t, "output.dir")) sc.out_dir = v->as_string();

  validate_scenario(sc);
  return sc;
}

void validate_scenario(const Scenario& sc) {
  const auto reject = [](const std::string& what) { throw ValidationError("scenario: " + what); };

  if (sc.plant_kind != "lorenz") reject("plant.kind '" + sc.plant_kind + "' is not a known plant");
  if (sc.w.size() != 7) reject("plant.w must have 7 entries for the lorenz plant");
  const std::size_t r = 2;    // lorenz relative degree
  const std::size_t n_z = 2;  // lorenz inverse-dynamics dimension

  if (sc.exo_kind != "lorenz")
    reject("exosystem.kind '" + sc.exo_kind + "' is not a known exosystem");
  const std::size_t n_v = 2;

  if (sc.lambda.size() != r) reject("observer.lambda must have length r = " + std::to_string(r));

  if (sc.rho_catalog == "lorenz") {
    if (!sc.rho_poly.empty()) reject("backstepping.rho is only used with catalog 'polynomial'");
  } else if (sc.rho_catalog == "polynomial") {
    if (sc.rho_poly.size() != r)
      reject("backstepping.rho must list r = " + std::to_string(r) + " coefficient arrays");
    for (const Vector& poly : sc.rho_poly)
      if (poly.size() == 0) reject("backstepping.rho entries must be non-empty");
  } else {
    reject("backstepping.catalog '" + sc.rho_catalog + "' is not a known catalog entry");
  }

  if (sc.varrho.size() < 1) reject("internal_model.varrho must be non-empty");
  const std::size_t s = sc.varrho.size();
  if (sc.M.has_value() != sc.N.has_value())
    reject("internal_model.M and internal_model.N must be given together");
  if (sc.M) {
    if (!sc.M->is_square() || sc.M->rows() != s)
      reject("internal_model.M must be s×s with s = " + std::to_string(s));
    if (sc.N->size() != s) reject("internal_model.N must have length s = " + std::to_string(s));
  }

  if (!(sc.sigma > 0.0 && sc.sigma < 1.0)) reject("trigger.sigma must lie in (0, 1)");
  if (!(sc.delta >= 0.0)) reject("trigger.delta must be >= 0");
  if (sc.pi_kind != "lorenz" && sc.pi_kind != "zero")
    reject("trigger.pi '" + sc.pi_kind + "' is not a known catalog entry");

  if (!(sc.t_end > 0.0)) reject("sim.t_end must be positive");
  if (!(sc.h > 0.0)) reject("sim.h must be positive");
  if (!(sc.event_tol > 0.0)) reject("sim.event_tol must be positive");
  if (!(sc.event_tol < sc.h)) reject("sim.event_tol must be smaller than sim.h");
  if (!(sc.h < sc.t_end)) reject("sim.h must be smaller than sim.t_end");
  if (sc.max_triggers < 1) reject("sim.max_triggers must be >= 1");
  if (!(sc.min_dwell_guard > 0.0)) reject("sim.min_dwell_guard must be positive");
  if (sc.report_stride < 1) reject("sim.report_stride must be >= 1");

  if (sc.init.v0.size() != n_v) reject("init.v0 must have length " + std::to_string(n_v));
  if (sc.init.z0.size() != n_z) reject("init.z0 must have length " + std::to_string(n_z));
  if (sc.init.x0.size() != r) reject("init.x0 must have length " + std::to_string(r));
  if (sc.init.xi_hat0.size() != r) reject("init.xi_hat0 must have length " + std::to_string(r));
  if (sc.init.eta0.size() != s) reject("init.eta0 must have length s = " + std::to_string(s));
}

namespace {

ScalarFn polynomial_fn(const Vector& coeff) {
  return [coeff](double x) {
    double acc = 0.0;
    for (std::size_t i = coeff.size(); i-- > 0;) acc = acc * x + coeff[i];
    return acc;
  };
}

}  // namespace

BuiltSystem build_system(const Scenario& sc) {
  validate_scenario(sc);

  BuiltSystem sys;
  LorenzParams params;
  params.w = sc.w;
  sys.plant = lorenz_plant(params);
  sys.exo = lorenz_exosystem();
  sys.gains = build_observer(sc.lambda);

  if (sc.rho_catalog == "lorenz") {
    sys.law = lorenz_backstep_law(sc.sigma, sc.paper_literal_vartheta1);
  } else {
    std::vector<ScalarFn> rho;
    rho.reserve(sc.rho_poly.size());
    for (const Vector& coeff : sc.rho_poly) rho.push_back(polynomial_fn(coeff));
    sys.law = make_backstep_law(std::move(rho), sc.sigma);
  }

  SteadyStateGenerator gen{sc.varrho.size(), sc.varrho};
  sys.im = sc.M ? synthesize(gen, *sc.M, *sc.N) : synthesize(gen);

  PiFn pi;
  if (sc.pi_kind == "lorenz") {
    pi = make_lorenz_pi(sys.im.Psi, sys.gains.lambda);
  } else {
    pi = [](const Vector&, double) { return 0.0; };
  }
  sys.policy = make_trigger_policy(sc.sigma, sc.delta, std::move(pi), sys.law.rho.back(),
                                   sys.im.order());

  sys.cfg.t_end = sc.t_end;
  sys.cfg.h = sc.h;
  sys.cfg.event_tol = sc.event_tol;
  sys.cfg.max_triggers = sc.max_triggers;
  sys.cfg.min_dwell_guard = sc.min_dwell_guard;
  sys.cfg.report_stride = sc.report_stride;
  sys.cfg.w = sc.w;
  sys.cfg.init = sc.init;
  return sys;
}

}  // namespace etreg
