// hhfactor: factor orthogonal matrices into Householder reflectors and
// recover Householder dictionaries from binary-coefficient data.
//
// Exit codes: 0 success, 1 invalid input, 2 factor cap reached,
// 3 ambiguous recovery, 4 no recovery solution.

#include <householder/core.hpp>
#include <householder/decompose.hpp>
#include <householder/dictlearn.hpp>
#include <householder/generators.hpp>
#include <householder/io.hpp>
#include <householder/kernels.hpp>
#include <householder/timing.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace householder;
using nlohmann::json;

namespace {

enum Exit : int {
  kSuccess = 0,
  kInvalid = 1,
  kCapReached = 2,
  kAmbiguous = 3,
  kNoSolution = 4,
};

enum class Format { text, json };

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"json", Format::json}};

json vector_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

std::string join(const Vector& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += io::format_double(v[i]);
  }
  return out;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string distribution = "gaussian";
  GeneratorSpec spec;
  std::string matrix_out;
  std::string factored_out;
};

int run_synth(const SynthArgs& args) {
  const auto dist = parse_distribution(args.distribution);
  if (!dist) throw InvalidInput("unknown distribution '" + args.distribution + "'");
  if (args.matrix_out.empty() && args.factored_out.empty()) {
    throw InvalidInput("synth needs --out and/or --factored");
  }
  GeneratorSpec spec = args.spec;
  spec.distribution = *dist;
  const HouseholderProduct product = generate_product(spec);
  if (!args.factored_out.empty()) io::save_product(args.factored_out, product);
  if (!args.matrix_out.empty()) io::save_matrix(args.matrix_out, materialize(product).matrix());
  return kSuccess;
}

// ------------------------------------------------------------ decompose

struct DecomposeArgs {
  std::string input;
  Index max_factors = -1;
  double eps = 0.05;
  std::string trace_out;
  std::string factored_out;
  bool skip_dim_e1 = false;
  Format format = Format::text;

  // Sweep mode.
  std::string sweep_dir;
  std::vector<std::string> distributions;
  std::vector<Index> ms{1, 5, 10, 25, 50, 100, 200, 400};
  Index n = 500;
  std::uint64_t seed = 1;
};

void report_decomposition(const DecompositionTrace& t, Index n, Format format) {
  if (format == Format::json) {
    json j{{"n", n},
           {"factors", t.factor_count},
           {"initial_residual", t.initial_residual},
           {"final_residual", t.final_residual},
           {"termination", std::string(to_string(t.reason))}};
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "n " << n << '\n'
            << "factors " << t.factor_count << '\n'
            << "initial_residual " << io::format_double(t.initial_residual) << '\n'
            << "final_residual " << io::format_double(t.final_residual) << '\n'
            << "termination " << to_string(t.reason) << '\n';
}

int run_decompose(const DecomposeArgs& args) {
  const DenseOrthogonal v(io::load_matrix(args.input));
  GreedyOptions options;
  options.max_factors = args.max_factors;
  options.tolerance = args.eps;
  options.record_eigenspace = !args.skip_dim_e1;
  const GreedyDecomposition out = greedy_decompose(v, options);

  if (!args.factored_out.empty()) io::save_product(args.factored_out, out.product);
  if (!args.trace_out.empty()) io::save_trace_csv(args.trace_out, out.trace.rows);
  report_decomposition(out.trace, v.dim(), args.format);
  return out.trace.reason == Termination::converged ? kSuccess : kCapReached;
}

struct SweepCell {
  Distribution distribution;
  Index m;
  fs::path trace_path;
  DecompositionTrace trace;
  std::string error;
};

int run_sweep(const DecomposeArgs& args) {
  std::vector<Distribution> dists;
  if (args.distributions.empty()) {
    dists.assign(std::begin(kAllDistributions), std::end(kAllDistributions));
  } else {
    for (const std::string& name : args.distributions) {
      const auto d = parse_distribution(name);
      if (!d) throw InvalidInput("unknown distribution '" + name + "'");
      dists.push_back(*d);
    }
  }
  for (Index m : args.ms) {
    if (m < 1 || m > args.n) throw InvalidInput("sweep m values must lie in [1, n]");
  }
  fs::create_directories(args.sweep_dir);

  std::vector<SweepCell> cells;
  for (Distribution d : dists) {
    for (Index m : args.ms) {
      const std::string stem = std::string(to_string(d)) + "_m" + std::to_string(m);
      cells.push_back({d, m, fs::path(args.sweep_dir) / (stem + ".csv"), {}, {}});
    }
  }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t c = 0; c < cells.size(); ++c) {
    SweepCell& cell = cells[c];
    try {
      GeneratorSpec spec;
      spec.distribution = cell.distribution;
      spec.n = args.n;
      spec.m = cell.m;
      spec.seed = args.seed;
      GreedyOptions options;
      options.max_factors = args.max_factors;
      options.tolerance = args.eps;
      options.record_eigenspace = !args.skip_dim_e1;
      const auto out = greedy_decompose(materialize(generate_product(spec)), options);
      io::save_trace_csv(cell.trace_path, out.trace.rows);
      cell.trace = out.trace;
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  }

  int status = kSuccess;
  json rows = json::array();
  if (args.format == Format::text) {
    std::cout << "distribution,m,factors,final_residual,termination,trace\n";
  }
  for (const SweepCell& cell : cells) {
    if (!cell.error.empty()) {
      std::cerr << "hhfactor: " << to_string(cell.distribution) << " m=" << cell.m << ": "
                << cell.error << '\n';
      status = kInvalid;
      continue;
    }
    if (cell.trace.reason != Termination::converged && status == kSuccess) status = kCapReached;
    if (args.format == Format::json) {
      rows.push_back({{"distribution", std::string(to_string(cell.distribution))},
                      {"m", cell.m},
                      {"factors", cell.trace.factor_count},
                      {"final_residual", cell.trace.final_residual},
                      {"termination", std::string(to_string(cell.trace.reason))},
                      {"trace", cell.trace_path.string()}});
    } else {
      std::cout << to_string(cell.distribution) << ',' << cell.m << ',' << cell.trace.factor_count
                << ',' << io::format_double(cell.trace.final_residual) << ','
                << to_string(cell.trace.reason) << ',' << cell.trace_path.string() << '\n';
    }
  }
  if (args.format == Format::json) std::cout << rows.dump(2) << '\n';
  return status;
}

// ---------------------------------------------------------------- bound

struct BoundArgs {
  std::string input;
  std::optional<Index> m;
  std::optional<Index> m_min;
  std::optional<Index> m_max;
  Format format = Format::text;
};

int run_bound(const BoundArgs& args) {
  const DenseOrthogonal v(io::load_matrix(args.input));
  Index lo = 0;
  Index hi = v.dim();
  if (args.m) lo = hi = *args.m;
  if (args.m_min) lo = *args.m_min;
  if (args.m_max) hi = *args.m_max;
  if (lo < 0 || hi > v.dim() || lo > hi) throw InvalidInput("m range must satisfy 0 <= lo <= hi <= n");

  json rows = json::array();
  for (Index m = lo; m <= hi; ++m) {
    const double b = greedy_error_bound(v, m);
    if (args.format == Format::json) {
      rows.push_back({{"m", m}, {"bound", b}});
    } else {
      std::cout << m << ' ' << io::format_double(b) << '\n';
    }
  }
  if (args.format == Format::json) std::cout << rows.dump(2) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- apply

struct ApplyArgs {
  std::string factored;
  std::string input;
  std::string output;
};

int run_apply(const ApplyArgs& args) {
  const HouseholderProduct product = io::load_product(args.factored);
  Matrix block = io::load_matrix(args.input);
  if (block.rows() != product.dim()) {
    throw InvalidInput("factored dimension " + std::to_string(product.dim()) +
                       " does not match input rows " + std::to_string(block.rows()));
  }
  kernels::apply_factors_columns(product.factors(), block);
  if (args.output.empty()) {
    io::write_matrix(std::cout, block);
  } else {
    io::save_matrix(args.output, block);
  }
  return kSuccess;
}

// -------------------------------------------------------------- recover

struct RecoverArgs {
  std::string input;
  Index max_n = kDefaultEnumerationCap;
  Format format = Format::text;
};

int run_recover(const RecoverArgs& args) {
  const Matrix y = io::load_matrix(args.input);
  RecoveryResult result = [&] {
    try {
      return recover(y, args.max_n);
    } catch (const RecoveryError& e) {
      std::cerr << "hhfactor: " << e.what() << '\n';
      switch (e.kind()) {
        case RecoveryError::Kind::ambiguous: throw Exit{kAmbiguous};
        case RecoveryError::Kind::no_common_candidate: throw Exit{kNoSolution};
        default: throw Exit{kInvalid};
      }
    }
  }();

  const Vector& u = result.reflector.direction();
  if (args.format == Format::json) {
    json j{{"u", vector_json(u)},
           {"x", matrix_json(result.coefficients)},
           {"residual", result.residual}};
    std::cout << j.dump(2) << '\n';
    return kSuccess;
  }
  std::cout << "u " << join(u) << '\n';
  std::cout << "X " << result.coefficients.rows() << ' ' << result.coefficients.cols() << '\n';
  for (Index i = 0; i < result.coefficients.rows(); ++i) {
    for (Index j = 0; j < result.coefficients.cols(); ++j) {
      std::cout << (j ? " " : "") << static_cast<int>(result.coefficients(i, j));
    }
    std::cout << '\n';
  }
  std::cout << "residual " << io::format_double(result.residual) << '\n';
  return kSuccess;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Index n = 1024;
  std::vector<Index> ms{8, 16, 32};
  int trials = 7;
  std::uint64_t seed = 1;
  double ratio_lo = 2.5;
  double ratio_hi = 5.5;
  Format format = Format::text;
};

int run_bench(const BenchArgs& args) {
  if (args.n < 1 || args.trials < 1) throw InvalidInput("bench needs n >= 1 and trials >= 1");
  for (Index m : args.ms) {
    if (m < 1 || m > args.n) throw InvalidInput("bench m values must lie in [1, n]");
  }
  const auto timings = time_apply_sweep(args.n, args.ms, args.trials, args.seed);

  auto find = [&](Index m) -> const ApplyTiming* {
    for (const auto& t : timings) {
      if (t.m == m) return &t;
    }
    return nullptr;
  };
  std::optional<double> ratio;
  if (const auto *a = find(8), *b = find(32); a && b) {
    ratio = b->factored_seconds / a->factored_seconds;
  }
  const bool ok = !ratio || (*ratio >= args.ratio_lo && *ratio <= args.ratio_hi);

  if (args.format == Format::json) {
    json rows = json::array();
    for (const auto& t : timings) {
      rows.push_back({{"n", t.n},
                      {"m", t.m},
                      {"factored_seconds", t.factored_seconds},
                      {"dense_seconds", t.dense_seconds}});
    }
    json j{{"timings", rows}};
    if (ratio) j["ratio_32_8"] = *ratio;
    j["ok"] = ok;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "n,m,factored_seconds,dense_seconds\n";
    for (const auto& t : timings) {
      std::cout << t.n << ',' << t.m << ',' << io::format_double(t.factored_seconds) << ','
                << io::format_double(t.dense_seconds) << '\n';
    }
    if (ratio) {
      std::cout << "ratio m=32/m=8 " << *ratio << (ok ? " ok" : " out of range") << '\n';
    }
  }
  return ok ? kSuccess : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Householder factorization and dictionary recovery"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  Format format = Format::text;
  int threads = 0;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--format", format, "Printed output format (text or json)")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  app.add_option("--threads", threads, "OpenMP thread count (0 keeps the default)");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a product of random reflectors");
  synth_cmd->add_option("--distribution", synth.distribution,
                        "gaussian, sparse, correlated, bernoulli, exponential or symmetric")
      ->capture_default_str();
  synth_cmd->add_option("--n", synth.spec.n, "Dimension")->capture_default_str();
  synth_cmd->add_option("--m", synth.spec.m, "Number of reflectors")->capture_default_str();
  synth_cmd->add_option("--sparse-fraction", synth.spec.sparse_fraction,
                        "Fraction of nonzeros per sparse direction")
      ->capture_default_str();
  synth_cmd->add_option("--out", synth.matrix_out, "Dense matrix file");
  synth_cmd->add_option("--factored", synth.factored_out, "Factored file");

  DecomposeArgs dec;
  auto* dec_cmd = app.add_subcommand("decompose", "Greedy Householder factorization");
  dec_cmd->add_option("input", dec.input, "Orthogonal matrix file");
  dec_cmd->add_option("--m", dec.max_factors, "Factor cap (default n)");
  dec_cmd->add_option("--eps", dec.eps, "Residual tolerance")->capture_default_str();
  dec_cmd->add_option("--trace", dec.trace_out, "Trace CSV output");
  dec_cmd->add_option("--out", dec.factored_out, "Factored file output");
  dec_cmd->add_flag("--no-dim-e1", dec.skip_dim_e1, "Skip the per-step eigenspace dimension");
  dec_cmd->add_option("--sweep", dec.sweep_dir,
                      "Run every (distribution, m) cell on synthesized inputs, writing traces here");
  dec_cmd->add_option("--distribution", dec.distributions, "Sweep distributions (default all)");
  dec_cmd->add_option("--ms", dec.ms, "Sweep factor counts")->delimiter(',')->capture_default_str();
  dec_cmd->add_option("--n", dec.n, "Sweep dimension")->capture_default_str();

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Greedy error bound for a range of m");
  bound_cmd->add_option("input", bound.input, "Orthogonal matrix file")->required();
  bound_cmd->add_option("--m", bound.m, "Single m");
  bound_cmd->add_option("--m-min", bound.m_min, "First m (default 0)");
  bound_cmd->add_option("--m-max", bound.m_max, "Last m (default n)");

  ApplyArgs apply_args;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a factored product to vectors");
  apply_cmd->add_option("factored", apply_args.factored, "Factored file")->required();
  apply_cmd->add_option("input", apply_args.input, "Matrix file whose columns are the vectors")
      ->required();
  apply_cmd->add_option("--out", apply_args.output, "Output matrix file (default stdout)");

  RecoverArgs rec;
  auto* rec_cmd = app.add_subcommand("recover", "Recover a Householder dictionary from Y = HX");
  rec_cmd->add_option("input", rec.input, "Data matrix file")->required();
  rec_cmd->add_option("--max-n", rec.max_n, "Largest n to enumerate")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time factored apply against dense multiply");
  bench_cmd->add_option("--n", bench.n, "Dimension")->capture_default_str();
  bench_cmd->add_option("--ms", bench.ms, "Factor counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "Timed trials per cell")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInvalid;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*synth_cmd) {
      synth.spec.seed = seed;
      return run_synth(synth);
    }
    if (*dec_cmd) {
      dec.format = format;
      dec.seed = seed;
      if (!dec.sweep_dir.empty()) return run_sweep(dec);
      if (dec.input.empty()) throw InvalidInput("decompose needs an input file or --sweep");
      return run_decompose(dec);
    }
    if (*bound_cmd) {
      bound.format = format;
      return run_bound(bound);
    }
    if (*apply_cmd) return run_apply(apply_args);
    if (*rec_cmd) {
      rec.format = format;
      return run_recover(rec);
    }
    if (*bench_cmd) {
      bench.format = format;
      bench.seed = seed;
      return run_bench(bench);
    }
  } catch (Exit code) {
    return code;
  } catch (const std::exception& e) {
    std::cerr << "hhfactor: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
