#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qschur {

struct BenchOptions {
  std::vector<std::string> classes = {"fullrand"};         // fullrand | hessrand
  std::vector<int> sizes = {32, 64, 128, 256};
  std::vector<std::string> strategies = {"qr", "qr+aed"};  // qr | qr+aed
  int trials = 3;
  std::uint64_t seed = 1;
  int max_sweeps = 0;      // 0 = solver default
  double nibble = 14.0;    // percent
  int aed_window = 0;      // 0 = auto schedule
  bool eigvec = false;
};

struct BenchResult {
  /** Raw rows, header `strategy,class,n,seed,status,sweeps,t_total_s,t_q_s,t_aed_s,e1,e2,e3`. */
  std::string csv;
  /** Per-cell medians over trials, one cell per (strategy, class, n). */
  std::string summary_json;
  int n_failed = 0;
};

/**
 * @brief Runs the benchmark grid. A cell draws its matrix from a seed chain
 * over (seed, class, n, trial) only, so every strategy factors the same
 * matrix; timing columns are wall-clock and everything else is
 * deterministic for a fixed seed. Nonconvergence becomes a row with status
 * "fail" rather than an exception.
 */
BenchResult run_bench(const BenchOptions& opts);

/** @brief The per-cell matrix seed; exposed so tests can pin the chain. */
std::uint64_t cell_seed(std::uint64_t base, int class_id, int n, int trial);

struct SolveOptions {
  std::string input_path;
  std::string out_prefix;  // files <prefix>_T.qmat, _U.qmat, _X.qmat, _lambda.qmat, _summary.json
  bool use_aed = true;
  bool eigvec = false;
  /** Empty = no reordering; otherwise one flag per diagonal position and the
      selected classes are moved to the leading positions. */
  std::vector<bool> reorder;
  int max_sweeps = 0;
};

/**
 * @brief Reads a qmat matrix, runs the decomposition (plus optional
 * reordering and eigenvectors), writes the factor files and returns the JSON
 * summary text. Returns 0 on success and 2 on nonconvergence, in which case
 * the partial factors are still written and the summary says status "fail".
 * I/O and format problems throw io_error.
 */
int run_solve(const SolveOptions& opts, std::string* summary_json);

}  // namespace qschur
