#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

namespace sweetspot::gui {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  void validate() const;  // throws on zero or negative extents
  bool contains(const Point& p) const;
  Point center() const { return {(x1 + x2) / 2.0, (y1 + y2) / 2.0}; }
  double half_width() const { return (x2 - x1) / 2.0; }
  double half_height() const { return (y2 - y1) / 2.0; }
};

struct FieldParams {
  double sigma = 1.0 / 3.0;  // in box-normalized coordinates
};

enum class ActionType { click, drag, type_text, scroll, other };

bool is_grounding(ActionType type);

struct ActionRecord {
  ActionType type = ActionType::other;
  std::optional<Point> point;              // grounding actions
  std::optional<std::string> text;         // type_text actions
  std::optional<int> terminal_goal_met;    // final step of a plan
};

// Gaussian field centered on the box: exp(-d^2 / (2 sigma^2)) with d^2 the
// box-normalized squared distance to the center; 0 outside the box
// (edges inclusive).
double field_value(const Point& p, const BoundingBox& box,
                   const FieldParams& params = {});

// Field values at the k-sigma levels, k = 0..3: exp(-k^2 / 2).
std::array<double, 4> sigma_levels();

// Tier score of a predicted point: 1.0 / 0.75 / 0.50 / 0.25 by sigma band,
// 0 outside the box. A field value exactly on a level joins the band whose
// lower edge it is.
double gui_zone_score(const Point& p, const BoundingBox& box,
                      const FieldParams& params = {});

// 1 iff the point lies in the box, edges inclusive.
int grounding_verify(const Point& p, const BoundingBox& box);

// Per-step proximity of a predicted action against the reference: field value
// for grounding references, binary correctness otherwise. Malformed
// predictions score 0 rather than raising.
double planning_step_proximity(const ActionRecord& pred, const ActionRecord& ref,
                               const std::optional<BoundingBox>& ref_box,
                               const FieldParams& params = {});

// 1 iff every step's action type matches, grounding actions land in their
// boxes, text inputs match exactly, and the final step's terminal flag is set.
// Throws std::invalid_argument on length mismatch.
int planning_verify(std::span<const ActionRecord> pred,
                    std::span<const ActionRecord> ref,
                    std::span<const std::optional<BoundingBox>> ref_boxes);

}  // namespace sweetspot::gui
