#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>

#include "opchain/ambrozie/report.hpp"
#include "opchain/chains/shift_chain.hpp"
#include "opchain/core/error.hpp"
#include "opchain/findim/trials.hpp"

namespace opchain::cli {

namespace {

struct RunConfig {
  std::size_t depth = 500;
  std::size_t orbit_budget = 10000;
  std::size_t K = 8;
  std::string eps_rule = "4^-k";
  unsigned sqrt_precision_bits = 64;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NoWitnessIndex:
    case ErrorCode::ZeroCoefficients:
    case ErrorCode::OddDimension:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

Json error_json(const Error& e) {
  Json j;
  j["code"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  j["index"] = e.index() ? Json(*e.index()) : Json();
  return j;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}
  void text(const std::string& s) {
    if (cfg_.out.empty()) {
      out_ << s;
      return;
    }
    std::ofstream f(cfg_.out);
    if (!f) throw Error(ErrorCode::ParseError, "cannot open output file " + cfg_.out);
    f << s;
  }
  void json(const Json& j) { text(j.dump(2) + "\n"); }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--depth", cfg.depth, "basis prefix for verification")->check(CLI::PositiveNumber);
  sub->add_option("--orbit-budget", cfg.orbit_budget, "orbit exploration budget")->check(CLI::PositiveNumber);
  sub->add_option("--K", cfg.K, "schedule length")->check(CLI::PositiveNumber);
  sub->add_option("--eps", cfg.eps_rule, "eps rule")->check(CLI::IsMember({"4^-k", "16^-k"}));
  sub->add_option("--sqrt-precision-bits", cfg.sqrt_precision_bits, "sqrt enclosure precision")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "seed for randomized batches");
  sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

int cmd_shift_chain(const RunConfig& cfg, const std::string& sigma_text, const std::string& table,
                    const std::string& weights, bool with_adjoint, std::ostream& out) {
  using namespace chains;
  SigmaSpec sigma = table.empty() ? parse_sigma(sigma_text) : load_sigma_table(table);
  validate(sigma, std::max<Index>(cfg.depth, 1000));
  const WeightedShift t = weighted_shift(parse_weights(weights), sigma);
  const ShiftChainReport rep = chain_for_weighted_shift(t, cfg.depth, cfg.orbit_budget);
  Json j = to_json(rep);
  bool ok = rep.chain.sound() && rep.orbit_property.ok();
  if (with_adjoint) {
    const auto adj = adjoint_chain(rep.chain, cfg.depth + 2 * cfg.orbit_budget);
    j["adjoint_chain"] = to_json(adj);
    ok = ok && adj.sound();
  }
  j["ok"] = ok;
  Emitter(cfg, out).json(j);
  return ok ? kExitOk : kExitFailure;
}

int cmd_ambrozie(const RunConfig& cfg, const std::string& coeffs, std::ostream& out) {
  ambrozie::AmbrozieConfig ac;
  ac.K = cfg.K;
  ac.eps_rule = cfg.eps_rule;
  ac.sqrt_precision_bits = cfg.sqrt_precision_bits;
  ac.coefficients = ambrozie::parse_coefficients(coeffs);
  ac.depth = cfg.depth;
  const auto run = ambrozie::run_ambrozie(ac);
  if (cfg.format == "csv") {
    Emitter(cfg, out).text(run.witness ? ambrozie::witness_csv(*run.witness) : "n,k,lower_bound,block_sum,target,lower_bound_approx\n");
  } else {
    Emitter(cfg, out).json(to_json(run));
  }
  return run.ok() ? kExitOk : kExitFailure;
}

Json batch_report(const findim::TrialBatch& b) {
  Json j = to_json(b);
  j["schema"] = kReportSchema;
  return j;
}

int cmd_findim(const RunConfig& cfg, const std::string& demo, std::size_t n, std::size_t trials,
               const std::string& variant, const std::string& input, std::ostream& out) {
  using namespace findim;
  Emitter emit(cfg, out);
  Json j;
  bool ok = true;
  if (demo == "volterra") {
    const auto v = volterra_chain(n);
    j = to_json(v);
    ok = v.km_commute && v.m_squared_zero && v.m_nonzero && v.chain.sound();
  } else if (demo == "eigen-rank-one" || demo == "real-rank-two" || demo == "quasi" || demo == "conjugate") {
    if (variant == "nilpotent-negative" && demo == "eigen-rank-one") {
      eigen_rank_one(subdiagonal_shift(3), ExactScalar(1));
    }
    if (variant == "singular-b" && demo == "quasi") {
      const Matrix I = Matrix::identity(2);
      const Matrix B{{ExactScalar(1), ExactScalar(0)}, {ExactScalar(0), ExactScalar(0)}};
      quasi_transport(I, I, I, I, B);
    }
    if (!variant.empty() && variant != "batch") throw Error(ErrorCode::ParseError, "unknown demo '" + variant + "' for " + demo);
    TrialBatch b;
    if (demo == "eigen-rank-one") b = eigen_rank_one_trials(cfg.seed, trials);
    if (demo == "real-rank-two") b = real_rank_two_trials(cfg.seed, trials);
    if (demo == "quasi") b = quasi_transport_trials(cfg.seed, trials);
    if (demo == "conjugate") b = conjugate_chain_trials(cfg.seed, trials);
    j = batch_report(b);
    ok = b.ok();
  } else if (demo == "reducing") {
    Matrix T;
    Matrix P;
    if (!input.empty()) {
      std::ifstream f(input);
      if (!f) throw Error(ErrorCode::ParseError, "cannot read " + input);
      Json in;
      try {
        in = Json::parse(f);
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad JSON: ") + e.what());
      }
      if (!in.contains("T") || !in.contains("P")) throw Error(ErrorCode::ParseError, "input needs keys T and P");
      T = matrix_from_json(in["T"]);
      P = matrix_from_json(in["P"]);
    } else {
      const ExactScalar o(1), z(0), two(2);
      if (variant.empty() || variant == "diag") {
        T = Matrix{{o, z}, {z, two}};
        P = Matrix{{o, z}, {z, z}};
      } else if (variant == "jordan-negative") {
        T = Matrix{{o, o}, {z, o}};
        P = Matrix{{o, z}, {z, z}};
      } else if (variant == "identity") {
        T = Matrix{{o, z}, {z, two}};
        P = Matrix::identity(2);
      } else {
        throw Error(ErrorCode::ParseError, "unknown reducing demo '" + variant + "'");
      }
    }
    j["schema"] = kReportSchema;
    j["T"] = to_json(T);
    j["P"] = to_json(P);
    j["reducing_pair"] = to_json(reducing_check(T, P));
  } else {
    throw Error(ErrorCode::ParseError, "unknown findim demo '" + demo + "'");
  }
  j["ok"] = ok;
  emit.json(j);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify commuting operator chains on prefixes of the standard basis", "opchain"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string sigma = "n+1";
  std::string sigma_table;
  std::string weights = "1/(n+1)";
  bool with_adjoint = false;
  auto* shift = app.add_subcommand("shift-chain", "weighted shift chain T <-> T^2 <-> P_B <-> F");
  add_common(shift, cfg);
  shift->add_option("--sigma", sigma, "n+c, an+b or swap(p,q)");
  shift->add_option("--sigma-table", sigma_table, "JSON table for sigma");
  shift->add_option("--weights", weights, "one, zero, 1/(n+c) or a rational");
  shift->add_flag("--adjoint", with_adjoint, "also verify the adjoint chain");

  std::string coeffs = "0,1";
  auto* amb = app.add_subcommand("ambrozie", "block-shift construction, expansion checks and witness table");
  add_common(amb, cfg);
  amb->add_option("--c", coeffs, "commutant coefficients c_0,c_1,...");

  std::string demo;
  std::size_t n = 16;
  std::size_t trials = 100;
  std::string variant;
  std::string input;
  auto* fd = app.add_subcommand("findim", "finite-dimensional demos and seeded batches");
  add_common(fd, cfg);
  fd->add_option("subdemo", demo, "volterra, eigen-rank-one, real-rank-two, quasi, conjugate, reducing")->required();
  fd->add_option("--n", n, "dimension for volterra")->check(CLI::PositiveNumber);
  fd->add_option("--trials", trials, "trials per batch")->check(CLI::PositiveNumber);
  fd->add_option("--demo", variant, "named variant, e.g. jordan-negative");
  fd->add_option("--input", input, "JSON file with matrices T and P");

  std::vector<std::string> argv_store = {"opchain"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (shift->parsed()) return cmd_shift_chain(cfg, sigma, sigma_table, weights, with_adjoint, out);
    if (amb->parsed()) return cmd_ambrozie(cfg, coeffs, out);
    return cmd_findim(cfg, demo, n, trials, variant, input, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    Json j;
    j["schema"] = kReportSchema;
    j["ok"] = false;
    j["error"] = error_json(e);
    try {
      Emitter(cfg, out).json(j);
    } catch (const Error&) {
    }
    return exit_code_for(e.code());
  }
}

}  // namespace opchain::cli
