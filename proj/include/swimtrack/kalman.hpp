// kalman.hpp: linear constant-velocity Kalman filter over box state
// [u, v, s, r, u_dot, v_dot, s_dot]. The aspect ratio carries no derivative;
// prediction leaves it unchanged.

#pragma once

#include <Eigen/Dense>

#include "swimtrack/core.hpp"

namespace swimtrack::kalman {

class SingularMatrix : public Error {
public:
  using Error::Error;
};

using StateVector = Eigen::Matrix<double, 7, 1>;
using StateMatrix = Eigen::Matrix<double, 7, 7>;

struct KalmanConfig {
  double p0_scale = 1e-2;
  double q_scale = 1e-2;
  double r_scale = 1e-1;
};

// Floor applied to the s and r components after an update so the state always
// converts back to a valid box.
inline constexpr double kStateFloor = 1e-6;

struct KalmanTrackState {
  StateVector x_hat = StateVector::Zero();
  StateMatrix P = StateMatrix::Zero();
  long frame = 0;  // last-updated frame index
};

// State transition: identity plus ones coupling (u, v, s) to their
// derivatives.
StateMatrix transition_matrix();

// New state from a detection: positions from the box, derivatives zero,
// P = p0_scale * I.
KalmanTrackState init(const BoundingBox& box, const KalmanConfig& config,
                      long frame = 0);

// One-step prior: x = A x, P = A P A' + Q. Advances the frame index.
KalmanTrackState predict(const KalmanTrackState& state,
                         const KalmanConfig& config);

// Measurement update. The box measurement is lifted to the full state by
// copying the predicted derivatives, so the innovation is zero on the
// derivative components and the 7x7 gain K = P (P + R)^-1 applies verbatim.
KalmanTrackState update(const KalmanTrackState& state,
                        const BoundingBox& measurement,
                        const KalmanConfig& config);

// Current estimate converted back to box form.
BoundingBox state_box(const KalmanTrackState& state);

}  // namespace swimtrack::kalman
