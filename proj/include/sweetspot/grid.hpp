#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace sweetspot::grid {

// Rectangular matrix of small integers: 0/1 occupancy for mazes and paths,
// digits 0-9 for Sudoku (0 = empty), colors 0-9 for ARC-style patterns.
struct Grid {
  int height = 0;
  int width = 0;
  std::vector<int> cells;  // row-major

  int& at(int r, int c) { return cells[static_cast<std::size_t>(r) * width + c]; }
  int at(int r, int c) const { return cells[static_cast<std::size_t>(r) * width + c]; }
  bool same_shape(const Grid& other) const {
    return height == other.height && width == other.width;
  }
  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height && c >= 0 && c < width;
  }

  static Grid filled(int height, int width, int value = 0);
};

struct Block {
  int row_lo = 0, row_hi = 0;  // [row_lo, row_hi)
  int col_lo = 0, col_hi = 0;  // [col_lo, col_hi)

  int size() const { return (row_hi - row_lo) * (col_hi - col_lo); }
};

// Main tier rule uses fractions of the block size (including a zero tier);
// legacy_counts reproduces the absolute-count variant (7-9 / 4-6 / 0-3)
// defined for 9-cell blocks.
enum class TierScheme { fractional, legacy_counts };

struct Cell {
  int row = 0;
  int col = 0;

  bool operator==(const Cell&) const = default;
};

using Path = std::vector<Cell>;

struct MazeSpec {
  Grid walls;  // 1 = wall, 0 = open
  Cell start;
  Cell goal;

  void validate() const;
};

// Nine blocks tiling an H x W grid, row-major by block index, with
// ceiling-based boundaries. Requires H, W >= 3.
std::array<Block, 9> partition3x3(int height, int width);

// Number of cells in the block where pred and ref agree (any value, including
// both-background cells).
int block_match_count(const Grid& pred, const Grid& ref, const Block& block);

// Tier of a block given its match count: 1, 2/3, 1/3, or 0.
double block_tier(int matches, int size, TierScheme scheme = TierScheme::fractional);

// Mean of the nine block tiers. Requires equal dimensions, both >= 3x3.
double blockwise_score(const Grid& pred, const Grid& ref,
                       TierScheme scheme = TierScheme::fractional);

// Nearest-neighbor resample of pred onto ref's dimensions.
Grid normalize_arc(const Grid& pred, const Grid& ref);

// 1 iff the path runs start to goal over open in-bounds cells with unit
// Manhattan steps. Malformed paths return 0.
int maze_verify(const Path& path, const MazeSpec& maze);

// 1 iff the 9x9 grid is fully filled and every row, column, and subgrid is a
// permutation of 1..9. Throws std::invalid_argument for non-9x9 grids.
int sudoku_verify(const Grid& grid);

// 1 iff dimensions and all cells match exactly (no normalization).
int arc_verify(const Grid& pred, const Grid& ref);

// Binary occupancy grid of the path cells. Throws std::invalid_argument on an
// out-of-bounds cell.
Grid path_to_occupancy(const Path& path, int height, int width);

enum class Task { maze, sudoku, arc };

struct TaskScore {
  double s_raw = 0.0;
  int correct = 0;
};

// Raw blockwise score plus the task verifier bit. ARC predictions are
// normalized onto the reference before scoring but verified unnormalized.
// Maze correctness needs the emitted path and maze; without them it is 0.
TaskScore grid_task_score(const Grid& pred, const Grid& ref, Task task,
                          const Path* pred_path = nullptr,
                          const MazeSpec* maze = nullptr);

// Text formats. Grid: "H W" header then H rows of W integers. Maze: character
// rows of '#' (wall), '.' (open), 'S', 'G'. Path: one "r,c" pair per line.
// Parse failures raise ParseError with the offending line number.
Grid read_grid(std::istream& in);
void write_grid(std::ostream& out, const Grid& grid);
MazeSpec read_maze(std::istream& in);
void write_maze(std::ostream& out, const MazeSpec& maze);
Path read_path(std::istream& in);
void write_path(std::ostream& out, const Path& path);

}  // namespace sweetspot::grid
