#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qschur/bench.hpp"
#include "qschur/errors.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split_list(s)) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion Schur decomposition benchmark and solver"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark grid, emit CSV and a JSON summary");
  std::string cls = "fullrand";
  std::string sizes = "32,64,128,256";
  std::string strategies = "qr,qr+aed";
  int trials = 3;
  std::uint64_t seed = 1;
  std::string out_path;
  int max_sweeps = 0;
  double nibble = 14.0;
  std::string aed_window = "auto";
  std::string eigvec = "off";
  bench->add_option("--class", cls, "matrix class list: fullrand|hessrand (comma separated)");
  bench->add_option("--sizes", sizes, "matrix sizes, comma separated");
  bench->add_option("--strategies", strategies, "strategy list: qr|qr+aed (comma separated)");
  bench->add_option("--trials", trials, "trials per cell");
  bench->add_option("--seed", seed, "base seed of the matrix chain");
  bench->add_option("--out", out_path, "CSV output path (default: stdout)");
  bench->add_option("--max-sweeps", max_sweeps, "sweep budget override (0 = solver default)");
  bench->add_option("--nibble", nibble, "deflation share (percent) that skips the next sweep");
  bench->add_option("--aed-window", aed_window, "deflation window: auto or a fixed size");
  bench->add_option("--eigvec", eigvec, "on|off: compute eigenvectors and the e3 column");

  // solve
  auto* solve = app.add_subcommand("solve", "decompose one qmat matrix file");
  std::string in_path;
  std::string out_prefix;
  std::string solve_aed = "on";
  std::string solve_eigvec = "off";
  std::string reorder_mask;
  int solve_max_sweeps = 0;
  solve->add_option("--in", in_path, "input matrix, qmat format")->required();
  solve->add_option("--out-prefix", out_prefix,
                    "prefix of the _T/_U/_X/_lambda .qmat and _summary.json outputs "
                    "(default: the input path)");
  solve->add_option("--aed", solve_aed, "on|off: aggressive early deflation");
  solve->add_option("--eigvec", solve_eigvec, "on|off: eigenvector outputs");
  solve->add_option("--reorder", reorder_mask,
                    "0/1 mask per diagonal position; selected classes move to the front");
  solve->add_option("--max-sweeps", solve_max_sweeps, "sweep budget override");

  CLI11_PARSE(app, argc, argv);

  auto parse_on_off = [](const std::string& v, const char* flag) {
    if (v == "on") return true;
    if (v == "off") return false;
    throw std::invalid_argument(std::string(flag) + " expects on or off");
  };

  try {
    if (bench->parsed()) {
      qschur::BenchOptions opts;
      opts.classes = split_list(cls);
      opts.sizes = split_ints(sizes);
      opts.strategies = split_list(strategies);
      opts.trials = trials;
      opts.seed = seed;
      opts.max_sweeps = max_sweeps;
      opts.nibble = nibble;
      opts.aed_window = (aed_window == "auto") ? 0 : std::stoi(aed_window);
      opts.eigvec = parse_on_off(eigvec, "--eigvec");

      const qschur::BenchResult res = qschur::run_bench(opts);
      if (out_path.empty()) {
        std::cout << res.csv;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw qschur::io_error("cannot write " + out_path);
        f << res.csv;
        std::cout << res.summary_json;
      }
      return 0;
    }

    qschur::SolveOptions opts;
    opts.input_path = in_path;
    opts.out_prefix = out_prefix;
    opts.use_aed = parse_on_off(solve_aed, "--aed");
    opts.eigvec = parse_on_off(solve_eigvec, "--eigvec");
    opts.max_sweeps = solve_max_sweeps;
    if (!reorder_mask.empty()) {
      for (const auto& tok : split_list(reorder_mask)) {
        if (tok != "0" && tok != "1") throw std::invalid_argument("--reorder expects 0/1 flags");
        opts.reorder.push_back(tok == "1");
      }
    }
    std::string summary;
    const int rc = qschur::run_solve(opts, &summary);
    std::cout << summary;
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
