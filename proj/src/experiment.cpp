#include "paraslide/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace paraslide {

const char* flow_name(FlowConfig f) {
  switch (f) {
    case FlowConfig::None: return "none";
    case FlowConfig::Vertical: return "vertical";
    case FlowConfig::Horizontal: return "horizontal";
    case FlowConfig::Both: return "both";
  }
  return "?";
}

std::optional<FlowConfig> parse_flow(std::string_view name) {
  if (name == "none") return FlowConfig::None;
  if (name == "vertical") return FlowConfig::Vertical;
  if (name == "horizontal") return FlowConfig::Horizontal;
  if (name == "both") return FlowConfig::Both;
  return std::nullopt;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Proof: return "proof";
    case Outcome::Saturated: return "saturated";
    case Outcome::BudgetExceeded: return "budget";
  }
  return "?";
}

std::optional<Outcome> parse_outcome(std::string_view name) {
  if (name == "proof") return Outcome::Proof;
  if (name == "saturated") return Outcome::Saturated;
  if (name == "budget") return Outcome::BudgetExceeded;
  return std::nullopt;
}

std::vector<Board> generate_suite(int n, std::uint64_t base_seed, int width) {
  std::vector<Board> suite;
  suite.reserve(n);
  for (int i = 0; i < n; ++i)
    suite.push_back(random_board(base_seed + static_cast<std::uint64_t>(i), width));
  return suite;
}

ProblemSpec make_puzzle_problem(const Board& b, FlowConfig flow) {
  ProblemSpec spec;
  Clause horizontal = horizontal_move_eq(b.width);
  Clause vertical = vertical_move_eq(b.width);
  spec.usable = {horizontal, vertical};
  spec.sos = {encode_state_clause(b)};
  if (flow == FlowConfig::Horizontal || flow == FlowConfig::Both)
    spec.hot.push_back(horizontal);
  if (flow == FlowConfig::Vertical || flow == FlowConfig::Both)
    spec.hot.push_back(vertical);
  spec.passive = {encode_state_clause(goal_board(b.width), Sign::Negative)};
  return spec;
}

RunRecord run_board(int board_id, const Board& b, FlowConfig flow,
                    const ProverConfig& config) {
  Prover prover(config);
  ProverResult result = prover.run(make_puzzle_problem(b, flow));
  RunRecord rec;
  rec.board_id = board_id;
  rec.board = b;
  rec.flow = flow;
  rec.solvable = is_solvable(b);
  rec.outcome = result.outcome;
  rec.generated = result.stats.generated;
  rec.retained = result.stats.retained;
  rec.given = result.stats.given;
  rec.moves = result.stats.proof_moves;
  rec.wall_ms = result.stats.wall_ms;
  return rec;
}

std::vector<RunRecord> run_experiment(const std::vector<Board>& suite,
                                      std::vector<FlowConfig> flows,
                                      const ProverConfig& config, int workers) {
  std::sort(flows.begin(), flows.end());
  flows.erase(std::unique(flows.begin(), flows.end()), flows.end());

  struct Task {
    int board_id;
    const Board* board;
    FlowConfig flow;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < suite.size(); ++i)
    for (FlowConfig f : flows)
      tasks.push_back(Task{static_cast<int>(i), &suite[i], f});

  std::vector<RunRecord> records(tasks.size());
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t)
      records[t] = run_board(tasks[t].board_id, *tasks[t].board, tasks[t].flow, config);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t t = next.fetch_add(1);
        if (t >= tasks.size()) break;
        records[t] =
            run_board(tasks[t].board_id, *tasks[t].board, tasks[t].flow, config);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return records;
}

AreaLabel classify(const RunRecord& none, const RunRecord& vertical,
                   const RunRecord& horizontal, double theta) {
  if (none.board_id != vertical.board_id || none.board_id != horizontal.board_id)
    throw std::invalid_argument("classify: records are for different boards");
  if (none.flow != FlowConfig::None || vertical.flow != FlowConfig::Vertical ||
      horizontal.flow != FlowConfig::Horizontal)
    throw std::invalid_argument("classify: records have unexpected flows");
  double baseline = static_cast<double>(none.generated);
  bool v = static_cast<double>(vertical.generated) <= theta * baseline;
  bool h = static_cast<double>(horizontal.generated) <= theta * baseline;
  if (v && h) return AreaLabel::C;
  if (v) return AreaLabel::A;
  if (h) return AreaLabel::B;
  return AreaLabel::D;
}

namespace {

std::string cells_field(const Board& b) {
  std::string s;
  for (std::size_t i = 0; i < b.cells.size(); ++i) {
    if (i) s.push_back('-');
    s += std::to_string(b.cells[i]);
  }
  return s;
}

const char kCsvHeader[] =
    "board_id,width,cells,flow,solvable,result,generated,retained,given,moves,wall_ms";

std::uint64_t parse_u64(std::string_view tok, int row, const char* field) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw CsvError("row " + std::to_string(row) + ": bad " + field + " value '" +
                   std::string(tok) + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = line.find(sep, start);
    out.push_back(line.substr(start, p == std::string::npos ? p : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.board_id << ',' << r.board.width << ',' << cells_field(r.board) << ','
        << flow_name(r.flow) << ',' << (r.solvable ? "true" : "false") << ','
        << outcome_name(r.outcome) << ',' << r.generated << ',' << r.retained << ','
        << r.given << ',';
    if (r.moves) out << *r.moves;
    out << ',' << r.wall_ms << '\n';
  }
}

void write_csv_file(const std::string& path, const std::vector<RunRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot open '" + path + "' for writing");
  write_csv(out, records);
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError("row 1: unexpected header '" + line + "'");
  std::vector<RunRecord> records;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split(line, ',');
    if (f.size() != 11)
      throw CsvError("row " + std::to_string(row) + ": expected 11 fields, found " +
                     std::to_string(f.size()));
    RunRecord r;
    r.board_id = static_cast<int>(parse_u64(f[0], row, "board_id"));
    r.board.width = static_cast<int>(parse_u64(f[1], row, "width"));
    for (const std::string& tok : split(f[2], '-'))
      r.board.cells.push_back(
          static_cast<std::uint8_t>(parse_u64(tok, row, "cells")));
    try {
      validate_board(r.board);
    } catch (const BoardError& e) {
      throw CsvError("row " + std::to_string(row) + ": " + e.what());
    }
    auto flow = parse_flow(f[3]);
    if (!flow) throw CsvError("row " + std::to_string(row) + ": bad flow '" + f[3] + "'");
    r.flow = *flow;
    if (f[4] == "true") r.solvable = true;
    else if (f[4] == "false") r.solvable = false;
    else throw CsvError("row " + std::to_string(row) + ": bad solvable '" + f[4] + "'");
    auto outcome = parse_outcome(f[5]);
    if (!outcome)
      throw CsvError("row " + std::to_string(row) + ": bad result '" + f[5] + "'");
    r.outcome = *outcome;
    r.generated = parse_u64(f[6], row, "generated");
    r.retained = parse_u64(f[7], row, "retained");
    r.given = parse_u64(f[8], row, "given");
    if (!f[9].empty()) r.moves = parse_u64(f[9], row, "moves");
    r.wall_ms = parse_u64(f[10], row, "wall_ms");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "' for reading");
  return read_csv(in);
}

namespace {

const char* area_color(AreaLabel a) {
  switch (a) {
    case AreaLabel::A: return "#d62728";
    case AreaLabel::B: return "#1f77b4";
    case AreaLabel::C: return "#2ca02c";
    case AreaLabel::D: return "#7f7f7f";
  }
  return "#000000";
}

std::string trim_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

ScatterStats emit_scatter_svg(std::ostream& out,
                              const std::vector<RunRecord>& records,
                              FlowConfig x_flow, FlowConfig y_flow,
                              const ScatterOptions& options) {
  struct PerBoard {
    std::optional<std::uint64_t> x, y, baseline;
  };
  std::map<int, PerBoard> boards;
  for (const RunRecord& r : records) {
    PerBoard& pb = boards[r.board_id];
    if (r.flow == x_flow) pb.x = r.generated;
    if (r.flow == y_flow) pb.y = r.generated;
    if (r.flow == FlowConfig::None) pb.baseline = r.generated;
  }

  struct Point {
    double x, y;
    const char* color;
  };
  std::vector<Point> points;
  ScatterStats stats;
  auto classify_color = [&](const PerBoard& pb) -> const char* {
    if (!options.theta || !pb.baseline) return "#1f77b4";
    double base = static_cast<double>(*pb.baseline);
    bool v = false, h = false;
    // x/y carry whichever flows were requested; color only reflects the
    // vertical/horizontal pair when both are present.
    for (const auto& [flow, value] :
         {std::pair{x_flow, pb.x}, std::pair{y_flow, pb.y}}) {
      if (!value) continue;
      bool effective = static_cast<double>(*value) <= *options.theta * base;
      if (flow == FlowConfig::Vertical) v = effective;
      if (flow == FlowConfig::Horizontal) h = effective;
    }
    AreaLabel a = v && h ? AreaLabel::C : v ? AreaLabel::A : h ? AreaLabel::B
                                                               : AreaLabel::D;
    return area_color(a);
  };
  for (const auto& [id, pb] : boards) {
    if (!pb.x || !pb.y) {
      ++stats.points_skipped;
      continue;
    }
    points.push_back(Point{static_cast<double>(*pb.x), static_cast<double>(*pb.y),
                           classify_color(pb)});
  }
  stats.points_drawn = static_cast<int>(points.size());

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  if (!points.empty()) {
    xmin = xmax = points[0].x;
    ymin = ymax = points[0].y;
    for (const Point& p : points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }

  const double ml = 70, mr = 20, mt = 20, mb = 50;
  double pw = options.width - ml - mr;
  double ph = options.height - mt - mb;
  auto scale = [&](double v, double lo, double hi) {
    if (options.log_axes) {
      v = std::log10(std::max(v, 1.0));
      lo = std::log10(std::max(lo, 1.0));
      hi = std::log10(std::max(hi, 1.0));
    }
    double span = hi - lo;
    if (span <= 0) return 0.5;
    return (v - lo) / span;
  };
  auto px = [&](double v) { return ml + scale(v, xmin, xmax) * pw; };
  auto py = [&](double v) { return mt + (1.0 - scale(v, ymin, ymax)) * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << options.width << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
      << options.width << ' ' << options.height << "\">\n";
  out << "<g id=\"plot\" data-points=\"" << stats.points_drawn << "\" data-xmin=\""
      << trim_number(xmin) << "\" data-xmax=\"" << trim_number(xmax)
      << "\" data-ymin=\"" << trim_number(ymin) << "\" data-ymax=\""
      << trim_number(ymax) << "\">\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << options.height - 10
      << "\" text-anchor=\"middle\" font-size=\"14\">generated clauses ("
      << flow_name(x_flow) << " flow)</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">generated clauses (" << flow_name(y_flow)
      << " flow)</text>\n";
  // extent tick labels
  out << "<text class=\"tick\" x=\"" << ml << "\" y=\"" << mt + ph + 18
      << "\" font-size=\"12\">" << trim_number(xmin) << "</text>\n";
  out << "<text class=\"tick\" x=\"" << ml + pw << "\" y=\"" << mt + ph + 18
      << "\" text-anchor=\"end\" font-size=\"12\">" << trim_number(xmax)
      << "</text>\n";
  out << "<text class=\"tick\" x=\"" << ml - 6 << "\" y=\"" << mt + ph
      << "\" text-anchor=\"end\" font-size=\"12\">" << trim_number(ymin)
      << "</text>\n";
  out << "<text class=\"tick\" x=\"" << ml - 6 << "\" y=\"" << mt + 12
      << "\" text-anchor=\"end\" font-size=\"12\">" << trim_number(ymax)
      << "</text>\n";
  for (const Point& p : points) {
    out << "<circle cx=\"" << trim_number(px(p.x)) << "\" cy=\""
        << trim_number(py(p.y)) << "\" r=\"3\" fill=\"" << p.color
        << "\" fill-opacity=\"0.6\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return stats;
}

ScatterStats emit_scatter_svg_file(const std::string& path,
                                   const std::vector<RunRecord>& records,
                                   FlowConfig x_flow, FlowConfig y_flow,
                                   const ScatterOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CsvError("cannot open '" + path + "' for writing");
  ScatterStats stats = emit_scatter_svg(out, records, x_flow, y_flow, options);
  return stats;
}

} // namespace paraslide
