#include "etreg/runner.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "etreg/matfun.hpp"

namespace etreg {

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

const char* status_name(SimStatus status) {
  switch (status) {
    case SimStatus::kCompleted: return "Completed";
    case SimStatus::kZenoGuard: return "ZenoGuard";
    case SimStatus::kMaxTriggers: return "MaxTriggers";
  }
  return "Unknown";
}

namespace {

void write_vector_cells(std::ostream& os, const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << ',' << format_double(v[i]);
}

void write_vector_headers(std::ostream& os, const char* stem, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) os << ',' << stem << i;
}

}  // namespace

void write_trace_csv(std::ostream& os, const SimResult& res) {
  if (res.trace.empty()) return;
  const TraceRow& first = res.trace.front();
  os << "t,e,y,y0,u";
  write_vector_headers(os, "v", first.v.size());
  write_vector_headers(os, "z", first.z.size());
  write_vector_headers(os, "x", first.x.size());
  write_vector_headers(os, "eta", first.eta.size());
  write_vector_headers(os, "xihat", first.xi_hat.size());
  os << '\n';
  for (const TraceRow& row : res.trace) {
    os << format_double(row.t) << ',' << format_double(row.e) << ',' << format_double(row.y)
       << ',' << format_double(row.y0) << ',' << format_double(row.u);
    write_vector_cells(os, row.v);
    write_vector_cells(os, row.z);
    write_vector_cells(os, row.x);
    write_vector_cells(os, row.eta);
    write_vector_cells(os, row.xi_hat);
    os << '\n';
  }
}

void write_trigger_csv(std::ostream& os, const SimResult& res) {
  os << "k,t_k,dwell\n";
  for (const TriggerRecord& ev : res.trigger_log)
    os << ev.k << ',' << format_double(ev.t_k) << ',' << format_double(ev.dwell) << '\n';
}

void write_metrics_csv(std::ostream& os, const Scenario& sc, const SimResult& res,
                       const Metrics& m) {
  os << "delta,sigma,trigger_count,tail_sup_error,min_dwell,mean_dwell,status\n";
  os << format_double(sc.delta) << ',' << format_double(sc.sigma) << ','
     << m.trigger_count_total << ',' << format_double(m.tail_sup_error) << ','
     << format_double(m.min_dwell) << ',' << format_double(m.mean_dwell) << ','
     << status_name(res.status) << '\n';
}

Metrics tail_metrics(const SimResult& res) {
  const double t_last = res.trace.empty() ? 0.0 : res.trace.back().t;
  if (!(t_last > 0.0)) return Metrics{};
  return compute_metrics(res, std::max(0.0, t_last - 5.0), t_last);
}

std::filesystem::path resolve_out_dir(const Scenario& sc, const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  if (!sc.out_dir.empty()) return sc.out_dir;
  if (const char* env = std::getenv("ETREG_OUT"); env != nullptr && *env != '\0') return env;
  return ".";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path.string());
  out << content;
}

struct RunOutcome {
  SimResult result;
  Metrics metrics;
};

RunOutcome run_built(const BuiltSystem& sys) {
  RunOutcome r;
  r.result = simulate(sys.plant, sys.exo, sys.gains, sys.law, sys.im, sys.policy, sys.cfg);
  r.metrics = tail_metrics(r.result);
  return r;
}

}  // namespace

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir, std::ostream& out,
                 std::ostream& err) {
  Scenario sc;
  RunOutcome run;
  try {
    sc = load_scenario(scenario_path);
    run = run_built(build_system(sc));
  } catch (const NonFiniteState& e) {
    err << "status: NonFiniteState (" << e.what() << ")\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const std::filesystem::path dir = resolve_out_dir(sc, out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ostringstream trace, triggers, metrics;
    write_trace_csv(trace, run.result);
    write_trigger_csv(triggers, run.result);
    write_metrics_csv(metrics, sc, run.result, run.metrics);
    write_file(dir / "trace.csv", trace.str());
    write_file(dir / "triggers.csv", triggers.str());
    write_file(dir / "metrics.csv", metrics.str());
  }

  out << "scenario: " << scenario_path << '\n'
      << "status: " << status_name(run.result.status) << '\n'
      << "triggers: " << run.result.trigger_log.size() << '\n'
      << "tail_sup_error: " << format_double(run.metrics.tail_sup_error) << '\n'
      << "min_dwell: " << format_double(run.metrics.min_dwell) << '\n'
      << "artifacts: " << (dir / "trace.csv").string() << ", "
      << (dir / "triggers.csv").string() << ", " << (dir / "metrics.csv").string() << '\n';

  if (run.result.status != SimStatus::kCompleted) {
    err << "status: " << status_name(run.result.status) << '\n';
    return 2;
  }
  return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::vector<double>& deltas, unsigned jobs,
              const std::string& out_dir, std::ostream& out, std::ostream& err) {
  if (deltas.empty()) {
    err << "error: sweep needs at least one delta\n";
    return 1;
  }

  Scenario base;
  try {
    base = load_scenario(scenario_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  struct Row {
    double delta = 0.0;
    bool ok = false;
    std::string failure;
    SimStatus status = SimStatus::kCompleted;
    std::size_t count = 0;
    double tail = std::nan("");
    double min_dwell = std::nan("");
  };
  std::vector<Row> rows(deltas.size());

  std::atomic<std::size_t> cursor{0};
  std::mutex err_mutex;
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= deltas.size()) return;
      Row& row = rows[i];
      row.delta = deltas[i];
      try {
        Scenario sc = base;
        sc.delta = deltas[i];
        const RunOutcome run = run_built(build_system(sc));
        row.status = run.result.status;
        row.count = run.result.trigger_log.size();
        row.tail = run.metrics.tail_sup_error;
        row.min_dwell = run.metrics.min_dwell;
        row.ok = run.result.status == SimStatus::kCompleted;
        if (!row.ok) row.failure = status_name(run.result.status);
      } catch (const Error& e) {
        row.failure = e.what();
        std::lock_guard<std::mutex> lock(err_mutex);
        err << "delta " << format_double(deltas[i]) << ": " << e.what() << '\n';
      }
    }
  };

  unsigned n_workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
  if (n_workers == 0) n_workers = 1;
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(deltas.size()));
  {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::ostringstream csv;
  csv << "delta,sigma,trigger_count,tail_sup_error,min_dwell\n";
  for (const Row& row : rows) {
    csv << format_double(row.delta) << ',' << format_double(base.sigma) << ',' << row.count
        << ',' << format_double(row.tail) << ',' << format_double(row.min_dwell) << '\n';
  }

  const std::filesystem::path dir = resolve_out_dir(base, out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "sweep.csv", csv.str());

  out << csv.str();
  bool all_ok = true;
  for (const Row& row : rows) {
    if (!row.ok) {
      all_ok = false;
      err << "delta " << format_double(row.delta) << " failed: " << row.failure << '\n';
    }
  }
  return all_ok ? 0 : 2;
}

int cmd_verify(const std::string& scenario_path, std::ostream& out, std::ostream& err) {
  Scenario sc;
  try {
    sc = load_scenario(scenario_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  std::vector<std::string> failures;
  const auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    out << name << ": " << detail << (ok ? "  PASS" : "  FAIL") << '\n';
    if (!ok) failures.push_back(name + (detail.empty() ? "" : " (" + detail + ")"));
  };

  const SteadyStateGenerator gen{sc.varrho.size(), sc.varrho};
  const std::size_t s = gen.s;
  auto [m, n] = sc.M ? std::pair<Matrix, Vector>{*sc.M, *sc.N} : default_stabilizer_pair(s);

  check("M_hurwitz", is_hurwitz(m), is_hurwitz(m) ? "true" : "not Hurwitz");

  const std::size_t rank = controllability_rank(m, n);
  check("controllability_rank", rank == s,
        std::to_string(rank) + " of " + std::to_string(s));

  bool have_im = false;
  InternalModel im;
  if (is_hurwitz(m) && rank == s) {
    try {
      im = synthesize(gen, m, n);
      have_im = true;
    } catch (const Error& e) {
      check("sylvester_residual", false, e.what());
    }
  }
  if (have_im) {
    const double resid =
        (im.T * im.Phi - im.M * im.T - outer(im.N, im.Gamma)).frobenius_norm();
    check("sylvester_residual", resid <= 1e-10, format_double(resid));
    // Report formatting: 12 significant digits reads better than the exact
    // round-trip form used in the CSVs.
    char cell[64];
    std::string psi = "[";
    for (std::size_t i = 0; i < im.Psi.size(); ++i) {
      std::snprintf(cell, sizeof(cell), "%.12g", im.Psi[i]);
      psi += (i ? ", " : "") + std::string(cell);
    }
    psi += "]";
    out << "psi = " << psi << '\n';
  }

  bool a_o_ok = false;
  std::string a_o_detail = "true";
  try {
    build_observer(sc.lambda);
    a_o_ok = true;
  } catch (const Error&) {
    a_o_detail = "A_o not Hurwitz";
  }
  check("A_o_hurwitz", a_o_ok, a_o_detail);

  bool rho_ok = false;
  std::string rho_detail = "positive on probe grid";
  try {
    build_system(sc);
    rho_ok = true;
  } catch (const Error& e) {
    rho_detail = e.what();
  }
  check("rho_positivity", rho_ok, rho_detail);

  if (have_im) {
    bool chain_ok = false;
    std::string chain_detail;
    try {
      LorenzParams params;
      params.w = sc.w;
      const double b = params.a()[6];
      const CoordChain chain = coord_chain(b, im, 2);
      chain_ok = true;
      for (std::size_t i = 0; i + 1 < chain.c.size(); ++i) {
        Vector diff = chain.c[i] - im.M * chain.c[i + 1];
        if (diff.inf_norm() > 1e-13) chain_ok = false;
      }
      const Matrix round_trip = chain.U_d * inverse(chain.U_d);
      if ((round_trip - Matrix::identity(2)).frobenius_norm() > 1e-12) chain_ok = false;
      chain_detail = chain_ok ? "c-recursion and U_d inverse hold" : "identity violated";
    } catch (const Error& e) {
      chain_detail = e.what();
    }
    check("chain_identities", chain_ok, chain_detail);
  }

  if (!failures.empty()) {
    err << "FAIL: " << failures.front() << '\n';
    return 1;
  }
  out << "RESULT: PASS\n";
  return 0;
}

}  // namespace etreg
