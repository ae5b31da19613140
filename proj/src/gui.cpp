#include "sweetspot/gui.hpp"

#include <cmath>
#include <stdexcept>

namespace sweetspot::gui {

void BoundingBox::validate() const {
  if (!(x1 < x2) || !(y1 < y2)) {
    throw std::invalid_argument("BoundingBox: requires x1 < x2 and y1 < y2");
  }
}

bool BoundingBox::contains(const Point& p) const {
  return p.x >= x1 && p.x <= x2 && p.y >= y1 && p.y <= y2;
}

bool is_grounding(ActionType type) {
  return type == ActionType::click || type == ActionType::drag;
}

double field_value(const Point& p, const BoundingBox& box, const FieldParams& params) {
  box.validate();
  if (!(params.sigma > 0.0)) {
    throw std::invalid_argument("FieldParams: sigma must be > 0");
  }
  if (!box.contains(p)) return 0.0;
  const Point c = box.center();
  const double a = box.half_width();
  const double b = box.half_height();
  const double d2 = (p.x - c.x) * (p.x - c.x) / (a * a) +
                    (p.y - c.y) * (p.y - c.y) / (b * b);
  return std::exp(-d2 / (2.0 * params.sigma * params.sigma));
}

std::array<double, 4> sigma_levels() {
  return {1.0, std::exp(-0.5), std::exp(-2.0), std::exp(-4.5)};
}

double gui_zone_score(const Point& p, const BoundingBox& box, const FieldParams& params) {
  const double phi = field_value(p, box, params);
  if (phi == 0.0) return 0.0;  // only possible outside the box
  const auto tau = sigma_levels();
  if (phi >= tau[1]) return 1.0;
  if (phi >= tau[2]) return 0.75;
  if (phi >= tau[3]) return 0.5;
  return 0.25;
}

int grounding_verify(const Point& p, const BoundingBox& box) {
  box.validate();
  return box.contains(p) ? 1 : 0;
}


double planning_step_proximity(const ActionRecord& pred, const ActionRecord& ref,
                               const std::optional<BoundingBox>& ref_box,
                               const FieldParams& params) {
  if (pred.type != ref.type) return 0.0;
  if (is_grounding(ref.type)) {
    if (!pred.point || !ref_box) return 0.0;
    return field_value(*pred.point, *ref_box, params);
  }
  if (ref.type == ActionType::type_text) {
    return (pred.text && ref.text && *pred.text == *ref.text) ? 1.0 : 0.0;
  }
  return 1.0;  // symbolic action with matching type
}

int planning_verify(std::span<const ActionRecord> pred,
                    std::span<const ActionRecord> ref,
                    std::span<const std::optional<BoundingBox>> ref_boxes) {
  if (pred.size() != ref.size() || ref.size() != ref_boxes.size()) {
    throw std::invalid_argument("planning_verify: step lists must have equal length");
  }
  if (pred.empty()) return 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i].type != ref[i].type) return 0;
    if (is_grounding(ref[i].type)) {
      if (!pred[i].point || !ref_boxes[i]) return 0;
      if (!grounding_verify(*pred[i].point, *ref_boxes[i])) return 0;
    }
    if (ref[i].type == ActionType::type_text) {
      if (!pred[i].text || !ref[i].text || *pred[i].text != *ref[i].text) return 0;
    }
  }
  return pred.back().terminal_goal_met.value_or(0) == 1 ? 1 : 0;
}

}  // namespace sweetspot::gui
