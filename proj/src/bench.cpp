#include "qschur/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "qschur/eigvec.hpp"
#include "qschur/errors.hpp"
#include "qschur/oracle.hpp"
#include "qschur/qmatrix.hpp"
#include "qschur/reorder.hpp"
#include "qschur/schur.hpp"

namespace qschur {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_time(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

int class_id_of(const std::string& cls) {
  if (cls == "fullrand") return 0;
  if (cls == "hessrand") return 1;
  throw std::invalid_argument("unknown matrix class: " + cls);
}

QMatrix draw_matrix(const std::string& cls, int n, std::uint64_t seed) {
  return class_id_of(cls) == 0 ? fullrand(n, seed) : hessrand(n, seed);
}

struct CellKey {
  std::string strategy;
  std::string cls;
  int n;
  bool operator<(const CellKey& o) const {
    if (strategy != o.strategy) return strategy < o.strategy;
    if (cls != o.cls) return cls < o.cls;
    return n < o.n;
  }
};

struct CellAgg {
  std::vector<double> sweeps, t_total, t_q, t_aed, e1, e2, e3;
  int failed = 0;
};

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, int class_id, int n, int trial) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  };
  std::uint64_t s = mix(base + std::uint64_t(class_id));
  s = mix(s + std::uint64_t(n));
  return mix(s + std::uint64_t(trial));
}

BenchResult run_bench(const BenchOptions& opts) {
  if (opts.trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (const auto& s : opts.strategies)
    if (s != "qr" && s != "qr+aed") throw std::invalid_argument("unknown strategy: " + s);
  for (const auto& c : opts.classes) class_id_of(c);
  for (int n : opts.sizes)
    if (n < 1) throw std::invalid_argument("sizes must be positive");

  BenchResult out;
  std::string csv = "strategy,class,n,seed,status,sweeps,t_total_s,t_q_s,t_aed_s,e1,e2,e3\n";
  std::map<CellKey, CellAgg> cells;

  for (const auto& cls : opts.classes) {
    for (int n : opts.sizes) {
      for (int trial = 0; trial < opts.trials; ++trial) {
        const std::uint64_t seed = cell_seed(opts.seed, class_id_of(cls), n, trial);
        const QMatrix a = draw_matrix(cls, n, seed);
        for (const auto& strategy : opts.strategies) {
          SchurOptions sopts;
          sopts.use_aed = (strategy == "qr+aed");
          sopts.max_sweeps = opts.max_sweeps;
          sopts.aed.nibble_percent = opts.nibble;
          sopts.aed.window_override = opts.aed_window;
          PhaseTimers timers;
          sopts.timers = &timers;

          bool ok = true;
          SchurDecomposition dec;
          const auto t0 = Clock::now();
          try {
            dec = schur_decompose(a, sopts);
          } catch (const schur_convergence_error& e) {
            ok = false;
            dec = e.partial();
          }
          const double t_total = std::chrono::duration<double>(Clock::now() - t0).count();

          CellAgg& agg = cells[CellKey{strategy, cls, n}];
          std::string e1s = "N/A", e2s = "N/A", e3s = "N/A";
          if (ok) {
            const double e1 = unitarity_error(dec.u);
            const double e2 = similarity_error(a, dec.u, dec.t);
            e1s = fmt(e1);
            e2s = fmt(e2);
            agg.e1.push_back(e1);
            agg.e2.push_back(e2);
            if (opts.eigvec) {
              try {
                const EigenSystem tri = triangular_eigenvectors(dec.t);
                const EigenSystem full = full_eigenvectors(dec.u, tri);
                const double e3 = eigenpair_error(a, full.x, full.lambdas);
                e3s = fmt(e3);
                agg.e3.push_back(e3);
              } catch (const nondistinct_spectrum_error&) {
                // Colliding classes: no eigenvector basis; leave e3 as N/A.
              }
            }
            agg.sweeps.push_back(double(dec.sweeps));
            agg.t_total.push_back(t_total);
            agg.t_q.push_back(timers.q_seconds);
            if (sopts.use_aed) agg.t_aed.push_back(timers.aed_seconds);
          } else {
            agg.failed += 1;
            out.n_failed += 1;
          }

          csv += strategy;
          csv += ',';
          csv += cls;
          csv += ',';
          csv += std::to_string(n);
          csv += ',';
          csv += std::to_string(seed);
          csv += ',';
          csv += ok ? "ok" : "fail";
          csv += ',';
          csv += std::to_string(dec.sweeps);
          csv += ',';
          csv += fmt_time(t_total);
          csv += ',';
          csv += fmt_time(timers.q_seconds);
          csv += ',';
          csv += sopts.use_aed ? fmt_time(timers.aed_seconds) : "N/A";
          csv += ',';
          csv += e1s;
          csv += ',';
          csv += e2s;
          csv += ',';
          csv += e3s;
          csv += '\n';
        }
      }
    }
  }

  json summary;
  summary["seed"] = opts.seed;
  summary["trials"] = opts.trials;
  summary["cells"] = json::array();
  for (const auto& [key, agg] : cells) {
    json cell;
    cell["strategy"] = key.strategy;
    cell["class"] = key.cls;
    cell["n"] = key.n;
    cell["completed"] = int(agg.sweeps.size());
    cell["failed"] = agg.failed;
    json med;
    med["sweeps"] = median(agg.sweeps);
    med["t_total_s"] = median(agg.t_total);
    med["t_q_s"] = median(agg.t_q);
    if (!agg.t_aed.empty()) med["t_aed_s"] = median(agg.t_aed);
    if (!agg.e1.empty()) med["e1"] = median(agg.e1);
    if (!agg.e2.empty()) med["e2"] = median(agg.e2);
    if (!agg.e3.empty()) med["e3"] = median(agg.e3);
    cell["median"] = std::move(med);
    summary["cells"].push_back(std::move(cell));
  }

  out.csv = std::move(csv);
  out.summary_json = summary.dump(2) + "\n";
  return out;
}

int run_solve(const SolveOptions& opts, std::string* summary_json) {
  const QMatrix a = read_qmatrix(opts.input_path);
  const int n = a.rows();

  SchurOptions sopts;
  sopts.use_aed = opts.use_aed;
  sopts.max_sweeps = opts.max_sweeps;

  bool ok = true;
  SchurDecomposition dec;
  try {
    dec = schur_decompose(a, sopts);
  } catch (const schur_convergence_error& e) {
    ok = false;
    dec = e.partial();
  }

  json summary;
  summary["input"] = opts.input_path;
  summary["n"] = n;
  summary["status"] = ok ? "ok" : "fail";
  summary["sweeps"] = dec.sweeps;
  summary["aed"] = opts.use_aed;

  if (ok && !opts.reorder.empty()) {
    if (int(opts.reorder.size()) != n) throw io_error("reorder mask size must match the matrix");
    reorder_selected(dec.t, dec.u, opts.reorder);
  }

  const std::string prefix = opts.out_prefix.empty() ? opts.input_path : opts.out_prefix;
  write_qmatrix(dec.t, prefix + "_T.qmat");
  write_qmatrix(dec.u, prefix + "_U.qmat");
  json files;
  files["T"] = prefix + "_T.qmat";
  files["U"] = prefix + "_U.qmat";

  if (ok) {
    summary["e1"] = unitarity_error(dec.u);
    summary["e2"] = similarity_error(a, dec.u, dec.t);
    json eigs = json::array();
    for (int k = 0; k < n; ++k) {
      const Complex lk = to_complex(dec.t(k, k));
      eigs.push_back({lk.real(), lk.imag()});
    }
    summary["eigenvalues"] = std::move(eigs);
    if (opts.eigvec) {
      const EigenSystem tri = triangular_eigenvectors(dec.t);
      const EigenSystem full = full_eigenvectors(dec.u, tri);
      summary["e3"] = eigenpair_error(a, full.x, full.lambdas);
      write_qmatrix(full.x, prefix + "_X.qmat");
      QMatrix lam(n, 1);
      for (int k = 0; k < n; ++k) lam(k, 0) = from_complex(full.lambdas[k]);
      write_qmatrix(lam, prefix + "_lambda.qmat");
      files["X"] = prefix + "_X.qmat";
      files["lambda"] = prefix + "_lambda.qmat";
    }
  }
  summary["files"] = std::move(files);

  const std::string text = summary.dump(2) + "\n";
  {
    std::ofstream f(prefix + "_summary.json", std::ios::binary);
    if (!f) throw io_error("cannot write " + prefix + "_summary.json");
    f << text;
  }
  if (summary_json) *summary_json = text;
  return ok ? 0 : 2;
}

}  // namespace qschur
