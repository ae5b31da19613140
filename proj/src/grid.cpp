#include "sweetspot/grid.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sweetspot/io.hpp"
#include "sweetspot/text.hpp"

namespace sweetspot::grid {

Grid Grid::filled(int height, int width, int value) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("Grid: dimensions must be positive");
  }
  Grid g;
  g.height = height;
  g.width = width;
  g.cells.assign(static_cast<std::size_t>(height) * width, value);
  return g;
}

void MazeSpec::validate() const {
  if (walls.height < 1 || walls.width < 1) {
    throw std::invalid_argument("MazeSpec: empty walls grid");
  }
  if (start == goal) {
    throw std::invalid_argument("MazeSpec: start and goal must differ");
  }
  for (const Cell& cell : {start, goal}) {
    if (!walls.in_bounds(cell.row, cell.col)) {
      throw std::invalid_argument("MazeSpec: start/goal out of bounds");
    }
    if (walls.at(cell.row, cell.col) != 0) {
      throw std::invalid_argument("MazeSpec: start/goal must be open cells");
    }
  }
}

std::array<Block, 9> partition3x3(int height, int width) {
  if (height < 3 || width < 3) {
    throw std::invalid_argument("partition3x3: grid must be at least 3x3");
  }
  auto bound = [](int k, int dim) { return (k * dim + 2) / 3; };  // ceil(k*dim/3)
  std::array<Block, 9> blocks;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      blocks[i * 3 + j] = Block{bound(i, height), bound(i + 1, height),
                                bound(j, width), bound(j + 1, width)};
    }
  }
  return blocks;
}

int block_match_count(const Grid& pred, const Grid& ref, const Block& block) {
  if (!pred.same_shape(ref)) {
    throw std::invalid_argument("block_match_count: dimension mismatch");
  }
  int matches = 0;
  for (int r = block.row_lo; r < block.row_hi; ++r) {
    for (int c = block.col_lo; c < block.col_hi; ++c) {
      if (pred.at(r, c) == ref.at(r, c)) ++matches;
    }
  }
  return matches;
}

double block_tier(int matches, int size, TierScheme scheme) {
  if (size < 1 || matches < 0 || matches > size) {
    throw std::invalid_argument("block_tier: match count outside [0, size]");
  }
  if (scheme == TierScheme::legacy_counts) {
    if (matches >= 7) return 1.0;
    if (matches >= 4) return 2.0 / 3.0;
    return 1.0 / 3.0;
  }
  if (4 * matches >= 3 * size) return 1.0;
  if (2 * matches >= size) return 2.0 / 3.0;
  if (4 * matches >= size) return 1.0 / 3.0;
  return 0.0;
}

double blockwise_score(const Grid& pred, const Grid& ref, TierScheme scheme) {
  if (!pred.same_shape(ref)) {
    throw std::invalid_argument("blockwise_score: dimension mismatch");
  }
  const auto blocks = partition3x3(pred.height, pred.width);
  double sum = 0.0;
  for (const Block& block : blocks) {
    sum += block_tier(block_match_count(pred, ref, block), block.size(), scheme);
  }
  return sum / 9.0;
}

Grid normalize_arc(const Grid& pred, const Grid& ref) {
  if (pred.height < 1 || pred.width < 1 || ref.height < 1 || ref.width < 1) {
    throw std::invalid_argument("normalize_arc: grids must be non-empty");
  }
  if (pred.same_shape(ref)) return pred;
  Grid out = Grid::filled(ref.height, ref.width, 0);
  for (int r = 0; r < ref.height; ++r) {
    const int src_r = static_cast<int>(
        static_cast<long long>(r) * pred.height / ref.height);
    for (int c = 0; c < ref.width; ++c) {
      const int src_c = static_cast<int>(
          static_cast<long long>(c) * pred.width / ref.width);
      out.at(r, c) = pred.at(src_r, src_c);
    }
  }
  return out;
}

int maze_verify(const Path& path, const MazeSpec& maze) {
  if (path.empty()) return 0;
  if (!(path.front() == maze.start) || !(path.back() == maze.goal)) return 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Cell& cell = path[i];
    if (!maze.walls.in_bounds(cell.row, cell.col)) return 0;
    if (maze.walls.at(cell.row, cell.col) != 0) return 0;
    if (i > 0) {
      const int dist = std::abs(cell.row - path[i - 1].row) +
                       std::abs(cell.col - path[i - 1].col);
      if (dist != 1) return 0;
    }
  }
  return 1;
}

int sudoku_verify(const Grid& grid) {
  if (grid.height != 9 || grid.width != 9) {
    throw std::invalid_argument("sudoku_verify: grid must be 9x9");
  }
  auto group_ok = [&](auto cell_at) {
    unsigned seen = 0;
    for (int i = 0; i < 9; ++i) {
      const int v = cell_at(i);
      if (v < 1 || v > 9) return false;
      const unsigned bit = 1u << v;
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  };
  for (int r = 0; r < 9; ++r) {
    if (!group_ok([&](int i) { return grid.at(r, i); })) return 0;
  }
  for (int c = 0; c < 9; ++c) {
    if (!group_ok([&](int i) { return grid.at(i, c); })) return 0;
  }
  for (int br = 0; br < 3; ++br) {
    for (int bc = 0; bc < 3; ++bc) {
      if (!group_ok([&](int i) {
            return grid.at(br * 3 + i / 3, bc * 3 + i % 3);
          })) {
        return 0;
      }
    }
  }
  return 1;
}

int arc_verify(const Grid& pred, const Grid& ref) {
  return pred.same_shape(ref) && pred.cells == ref.cells ? 1 : 0;
}

Grid path_to_occupancy(const Path& path, int height, int width) {
  Grid occupancy = Grid::filled(height, width, 0);
  for (const Cell& cell : path) {
    if (!occupancy.in_bounds(cell.row, cell.col)) {
      throw std::invalid_argument("path_to_occupancy: cell out of bounds");
    }
    occupancy.at(cell.row, cell.col) = 1;
  }
  return occupancy;
}

TaskScore grid_task_score(const Grid& pred, const Grid& ref, Task task,
                          const Path* pred_path, const MazeSpec* maze) {
  TaskScore result;
  switch (task) {
    case Task::maze:
      result.s_raw = blockwise_score(pred, ref);
      result.correct = (pred_path && maze) ? maze_verify(*pred_path, *maze) : 0;
      break;
    case Task::sudoku:
      result.s_raw = blockwise_score(pred, ref);
      result.correct = sudoku_verify(pred);
      break;
    case Task::arc:
      result.s_raw = blockwise_score(normalize_arc(pred, ref), ref);
      result.correct = arc_verify(pred, ref);
      break;
  }
  return result;
}

namespace {

int parse_int(const std::string& token, std::size_t line) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer, got '" + token + "'");
  }
}

}  // namespace

Grid read_grid(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing 'H W' header");
  ++line_no;
  std::istringstream header(line);
  std::string h_tok, w_tok, extra;
  if (!(header >> h_tok >> w_tok) || (header >> extra)) {
    throw ParseError(line_no, "header must be 'H W'");
  }
  const int height = parse_int(h_tok, line_no);
  const int width = parse_int(w_tok, line_no);
  if (height < 1 || width < 1) throw ParseError(line_no, "dimensions must be positive");

  Grid grid = Grid::filled(height, width, 0);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line)) {
      throw ParseError(line_no + 1, "unexpected end of grid");
    }
    ++line_no;
    std::istringstream row(line);
    std::string token;
    for (int c = 0; c < width; ++c) {
      if (!(row >> token)) throw ParseError(line_no, "row too short");
      grid.at(r, c) = parse_int(token, line_no);
    }
    if (row >> token) throw ParseError(line_no, "row too long");
  }
  return grid;
}

void write_grid(std::ostream& out, const Grid& grid) {
  out << fmt(grid.height) << ' ' << fmt(grid.width) << '\n';
  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) {
      if (c > 0) out << ' ';
      out << fmt(grid.at(r, c));
    }
    out << '\n';
  }
}

MazeSpec read_maze(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && rows.empty()) continue;
    if (line.empty()) break;
    rows.push_back(line);
  }
  if (rows.empty()) throw ParseError(1, "empty maze");

  MazeSpec maze;
  maze.walls = Grid::filled(static_cast<int>(rows.size()),
                            static_cast<int>(rows.front().size()), 1);
  int starts = 0, goals = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) {
      throw ParseError(r + 1, "ragged maze row");
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const int ri = static_cast<int>(r);
      const int ci = static_cast<int>(c);
      switch (rows[r][c]) {
        case '#': maze.walls.at(ri, ci) = 1; break;
        case '.': maze.walls.at(ri, ci) = 0; break;
        case 'S':
          maze.walls.at(ri, ci) = 0;
          maze.start = {ri, ci};
          ++starts;
          break;
        case 'G':
          maze.walls.at(ri, ci) = 0;
          maze.goal = {ri, ci};
          ++goals;
          break;
        default:
          throw ParseError(r + 1, std::string("invalid maze character '") +
                                      rows[r][c] + "'");
      }
    }
  }
  if (starts != 1 || goals != 1) {
    throw ParseError(rows.size(), "maze needs exactly one S and one G");
  }
  maze.validate();
  return maze;
}

void write_maze(std::ostream& out, const MazeSpec& maze) {
  for (int r = 0; r < maze.walls.height; ++r) {
    for (int c = 0; c < maze.walls.width; ++c) {
      const Cell cell{r, c};
      char ch = maze.walls.at(r, c) ? '#' : '.';
      if (cell == maze.start) ch = 'S';
      if (cell == maze.goal) ch = 'G';
      out << ch;
    }
    out << '\n';
  }
}

Path read_path(std::istream& in) {
  Path path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(line_no, "expected 'r,c'");
    }
    path.push_back({parse_int(line.substr(0, comma), line_no),
                    parse_int(line.substr(comma + 1), line_no)});
  }
  if (path.empty()) throw ParseError(line_no ? line_no : 1, "empty path");
  return path;
}

void write_path(std::ostream& out, const Path& path) {
  for (const Cell& cell : path) {
    out << fmt(cell.row) << ',' << fmt(cell.col) << '\n';
  }
}

}  // namespace sweetspot::grid
