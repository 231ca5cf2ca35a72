#include "swimtrack/core.hpp"

#include <algorithm>
#include <cmath>

namespace swimtrack {

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::max(a.x, b.x);
  const double iy = std::max(a.y, b.y);
  const double ix2 = std::min(a.x + a.w, b.x + b.w);
  const double iy2 = std::min(a.y + a.h, b.y + b.h);
  const double iw = std::max(0.0, ix2 - ix);
  const double ih = std::max(0.0, iy2 - iy);
  const double inter = iw * ih;
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

StateForm to_state_form(const BoundingBox& box) {
  return StateForm{box.x + box.w / 2.0, box.y + box.h / 2.0, box.w * box.h,
                   box.w / box.h};
}

BoundingBox from_state_form(const StateForm& state) {
  // s = w*h, r = w/h  =>  w = sqrt(s*r), h = sqrt(s/r)
  const double w = std::sqrt(state.s * state.r);
  const double h = std::sqrt(state.s / state.r);
  return BoundingBox{state.u - w / 2.0, state.v - h / 2.0, w, h};
}

}  // namespace swimtrack
