#ifndef PARASLIDE_EXPERIMENT_HPP
#define PARASLIDE_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paraslide/prover.hpp"

namespace paraslide {

// Which move equalities populate the hot list; both equalities always
// stay in usable.
enum class FlowConfig { None, Vertical, Horizontal, Both };

const char* flow_name(FlowConfig f);
std::optional<FlowConfig> parse_flow(std::string_view name);
const char* outcome_name(Outcome o);
std::optional<Outcome> parse_outcome(std::string_view name);

struct RunRecord {
  int board_id = 0;
  Board board;
  FlowConfig flow = FlowConfig::None;
  bool solvable = false;
  Outcome outcome = Outcome::Saturated;
  std::uint64_t generated = 0;
  std::uint64_t retained = 0;
  std::uint64_t given = 0;
  std::optional<std::uint64_t> moves;
  std::uint64_t wall_ms = 0;
};

enum class AreaLabel { A, B, C, D };

class CsvError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::vector<Board> generate_suite(int n, std::uint64_t base_seed, int width);

// usable = both move equalities, sos = the encoded board, hot per flow,
// passive = the negated goal state.
ProblemSpec make_puzzle_problem(const Board& b, FlowConfig flow);

RunRecord run_board(int board_id, const Board& b, FlowConfig flow,
                    const ProverConfig& config);

// One record per (board, flow), ordered by (board_id, flow). Boards run
// independently; `workers` > 1 fans out over threads.
std::vector<RunRecord> run_experiment(const std::vector<Board>& suite,
                                      std::vector<FlowConfig> flows,
                                      const ProverConfig& config,
                                      int workers = 1);

// A = only vertical heat flow effective, B = only horizontal, C = both,
// D = neither; effective means generated <= theta * baseline generated.
AreaLabel classify(const RunRecord& none, const RunRecord& vertical,
                   const RunRecord& horizontal, double theta = 0.9);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_csv_file(const std::string& path, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);
std::vector<RunRecord> read_csv_file(const std::string& path);

struct ScatterOptions {
  bool log_axes = false;
  std::optional<double> theta; // color area labels when set
  int width = 800;
  int height = 600;
};

struct ScatterStats {
  int points_drawn = 0;
  int points_skipped = 0;
};

ScatterStats emit_scatter_svg(std::ostream& out,
                              const std::vector<RunRecord>& records,
                              FlowConfig x_flow, FlowConfig y_flow,
                              const ScatterOptions& options = {});
ScatterStats emit_scatter_svg_file(const std::string& path,
                                   const std::vector<RunRecord>& records,
                                   FlowConfig x_flow, FlowConfig y_flow,
                                   const ScatterOptions& options = {});

} // namespace paraslide

#endif
