#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "paraslide/experiment.hpp"
#include "paraslide/parser.hpp"
#include "paraslide/prover.hpp"
#include "paraslide/puzzle.hpp"

namespace {

using namespace paraslide;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;   // saturation without --allow-saturation
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitBadInput = 4;

FlowConfig flow_or_throw(const std::string& name) {
  auto f = parse_flow(name);
  if (!f) throw CLI::ValidationError("--flow", "unknown flow '" + name + "'");
  return *f;
}

int default_workers() {
  if (const char* env = std::getenv("PARASLIDE_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

void print_stats(const ProverStats& stats) {
  std::cout << "generated=" << stats.generated << " retained=" << stats.retained
            << " given=" << stats.given;
  if (stats.proof_moves) std::cout << " moves=" << *stats.proof_moves;
  std::cout << " wall_ms=" << stats.wall_ms << "\n";
}

int cmd_check(const std::string& board_text) {
  Board b = parse_flat_board(board_text);
  std::cout << "inversions=" << inversions(b)
            << (is_solvable(b) ? " SOLVABLE" : " UNSOLVABLE") << "\n";
  return kExitOk;
}

int cmd_gen(int n, std::uint64_t seed, int width, const std::string& out_path) {
  std::ostringstream text;
  for (const Board& b : generate_suite(n, seed, width))
    text << to_flat_text(b) << "\n";
  if (out_path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open '" << out_path << "' for writing\n";
      return kExitBadInput;
    }
    out << text.str();
  }
  return kExitOk;
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'", SourcePos{});
  std::stringstream buf;
  buf << in.rdbuf();
  ProblemSpec spec = parse_problem(buf.str());
  if (spec.passive.empty() && !spec.sos.empty()) {
    // No goal clause in the file: synthesize the negated goal state for
    // the board width found in the SoS clause.
    Board b = decode_board(spec.sos.front().literals.front());
    spec.passive.push_back(encode_state_clause(goal_board(b.width), Sign::Negative));
  }
  return spec;
}

int cmd_solve(const std::string& input_path, const std::string& board_text,
              const std::string& flow_text, std::uint64_t budget, bool show_moves,
              bool allow_saturation) {
  ProblemSpec spec;
  if (!input_path.empty()) {
    spec = load_problem_file(input_path);
  } else {
    Board b = parse_flat_board(board_text);
    spec = make_puzzle_problem(b, flow_or_throw(flow_text));
  }
  ProverConfig config;
  config.max_generated = budget;
  Prover prover(config);
  ProverResult result = prover.run(spec);
  switch (result.outcome) {
    case Outcome::Proof: {
      std::cout << "PROOF (clause " << *result.proof_clause << ")\n";
      print_stats(result.stats);
      if (show_moves) {
        for (const auto& [before, after] : prover.extract_moves(result))
          std::cout << to_flat_text(before) << " -> " << to_flat_text(after) << "\n";
      }
      return kExitOk;
    }
    case Outcome::Saturated:
      std::cout << "SATURATED (no proof)\n";
      print_stats(result.stats);
      return allow_saturation ? kExitOk : kExitVerdict;
    case Outcome::BudgetExceeded:
      std::cout << "BUDGET EXCEEDED\n";
      print_stats(result.stats);
      return kExitBudget;
  }
  return kExitVerdict;
}

int cmd_experiment(int n, std::uint64_t seed, int width,
                   const std::vector<std::string>& flow_names,
                   std::uint64_t budget, const std::string& csv_out, int workers) {
  std::vector<FlowConfig> flows;
  for (const std::string& name : flow_names) flows.push_back(flow_or_throw(name));
  ProverConfig config;
  config.max_generated = budget;
  std::vector<Board> suite = generate_suite(n, seed, width);
  std::vector<RunRecord> records = run_experiment(suite, flows, config, workers);
  if (csv_out.empty()) {
    write_csv(std::cout, records);
  } else {
    write_csv_file(csv_out, records);
    std::cerr << records.size() << " records written to " << csv_out << "\n";
  }
  return kExitOk;
}

int cmd_plot(const std::string& csv_in, const std::string& x_flow,
             const std::string& y_flow, const std::string& svg_out, bool log_axes,
             double theta, bool color_areas) {
  std::vector<RunRecord> records = read_csv_file(csv_in);
  ScatterOptions options;
  options.log_axes = log_axes;
  if (color_areas) options.theta = theta;
  ScatterStats stats =
      emit_scatter_svg_file(svg_out, records, flow_or_throw(x_flow),
                            flow_or_throw(y_flow), options);
  std::cerr << stats.points_drawn << " points plotted";
  if (stats.points_skipped)
    std::cerr << ", " << stats.points_skipped << " boards skipped (missing flow data)";
  std::cerr << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation prover for sliding-block puzzles"};
  app.require_subcommand(1);

  std::string board_text, input_path, out_path, csv_path, svg_path;
  std::string flow_text = "none", x_flow = "vertical", y_flow = "horizontal";
  std::vector<std::string> flow_names = {"none", "vertical", "horizontal"};
  int n = 500, width = 3, workers = default_workers();
  std::uint64_t seed = 1, budget = 5'000'000;
  double theta = 0.9;
  bool show_moves = false, allow_saturation = false, log_axes = false,
       color_areas = false;

  auto* check = app.add_subcommand("check", "Inversion-parity solvability check");
  check->add_option("board", board_text, "board in flat text form, e.g. 3:1,2,3,4,5,6,7,8,0")
      ->required();

  auto* gen = app.add_subcommand("gen", "Generate a suite of solvable boards");
  gen->add_option("-n,--count", n, "number of boards");
  gen->add_option("--seed", seed, "base seed");
  gen->add_option("--width", width, "board width");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Prove goal reachability for one board");
  auto* opt_input = solve->add_option("--input", input_path, "problem file (list blocks)");
  auto* opt_board = solve->add_option("--board", board_text, "board in flat text form");
  opt_input->excludes(opt_board);
  solve->add_option("--flow", flow_text, "hot list: none|vertical|horizontal|both");
  solve->add_option("--budget", budget, "generated-clause budget");
  solve->add_flag("--show-moves", show_moves, "print the extracted move replay");
  solve->add_flag("--allow-saturation", allow_saturation,
                  "exit 0 when the input saturates without a proof");

  auto* experiment = app.add_subcommand("experiment", "Run the multi-flow suite");
  experiment->add_option("-n,--count", n, "number of boards");
  experiment->add_option("--seed", seed, "base seed");
  experiment->add_option("--width", width, "board width");
  experiment->add_option("--flows", flow_names, "flows to run")->delimiter(',');
  experiment->add_option("--budget", budget, "generated-clause budget");
  experiment->add_option("--csv-out", csv_path, "CSV output path (default stdout)");
  experiment->add_option("--workers", workers, "concurrent board runs");

  auto* plot = app.add_subcommand("plot", "Render a scatter SVG from a CSV");
  plot->add_option("--csv-in", csv_path, "CSV input path")->required();
  plot->add_option("--x-flow", x_flow, "flow on the X axis");
  plot->add_option("--y-flow", y_flow, "flow on the Y axis");
  plot->add_option("--svg-out", svg_path, "SVG output path")->required();
  plot->add_flag("--log-axes", log_axes, "log-log axes");
  plot->add_flag("--color-areas", color_areas, "color points by heat-flow area");
  plot->add_option("--theta", theta, "area-effectiveness threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(board_text);
    if (gen->parsed()) return cmd_gen(n, seed, width, out_path);
    if (solve->parsed()) {
      if (input_path.empty() && board_text.empty()) {
        std::cerr << "error: solve needs --input or --board\n";
        return kExitUsage;
      }
      return cmd_solve(input_path, board_text, flow_text, budget, show_moves,
                       allow_saturation);
    }
    if (experiment->parsed())
      return cmd_experiment(n, seed, width, flow_names, budget, csv_path, workers);
    if (plot->parsed())
      return cmd_plot(csv_path, x_flow, y_flow, svg_path, log_axes, theta,
                      color_areas);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const DecodeError& e) {
    std::cerr << "decode error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const BoardError& e) {
    std::cerr << "board error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CsvError& e) {
    std::cerr << "csv error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerdict;
  }
  return kExitUsage;
}
