#include "swimtrack/kalman.hpp"

#include <algorithm>

namespace swimtrack::kalman {
namespace {

void symmetrize(StateMatrix& P) { P = ((P + P.transpose()) / 2.0).eval(); }

}  // namespace

StateMatrix transition_matrix() {
  StateMatrix A = StateMatrix::Identity();
  A(0, 4) = 1.0;
  A(1, 5) = 1.0;
  A(2, 6) = 1.0;
  return A;
}

KalmanTrackState init(const BoundingBox& box, const KalmanConfig& config,
                      long frame) {
  const StateForm z = to_state_form(box);
  KalmanTrackState state;
  state.x_hat << z.u, z.v, z.s, z.r, 0.0, 0.0, 0.0;
  state.P = config.p0_scale * StateMatrix::Identity();
  state.frame = frame;
  return state;
}

KalmanTrackState predict(const KalmanTrackState& state,
                         const KalmanConfig& config) {
  static const StateMatrix A = transition_matrix();
  KalmanTrackState out;
  out.x_hat = A * state.x_hat;
  out.P = A * state.P * A.transpose() +
          config.q_scale * StateMatrix::Identity();
  symmetrize(out.P);
  out.frame = state.frame + 1;
  return out;
}

KalmanTrackState update(const KalmanTrackState& state,
                        const BoundingBox& measurement,
                        const KalmanConfig& config) {
  const StateForm m = to_state_form(measurement);
  StateVector z;
  z << m.u, m.v, m.s, m.r, state.x_hat(4), state.x_hat(5), state.x_hat(6);

  const StateMatrix S =
      state.P + config.r_scale * StateMatrix::Identity();
  const Eigen::LDLT<StateMatrix> solver(S);
  if (solver.info() != Eigen::Success || !solver.isPositive()) {
    throw SingularMatrix("kalman update: innovation covariance not invertible");
  }
  // K = P S^-1, computed as the solve S K' = P' (S is symmetric).
  const StateMatrix K = solver.solve(state.P.transpose()).transpose();

  KalmanTrackState out;
  out.x_hat = state.x_hat + K * (z - state.x_hat);
  out.P = (StateMatrix::Identity() - K) * state.P;
  symmetrize(out.P);
  out.x_hat(2) = std::max(out.x_hat(2), kStateFloor);
  out.x_hat(3) = std::max(out.x_hat(3), kStateFloor);
  out.frame = state.frame;
  return out;
}

BoundingBox state_box(const KalmanTrackState& state) {
  return from_state_form(StateForm{state.x_hat(0), state.x_hat(1),
                                   state.x_hat(2), state.x_hat(3)});
}

}  // namespace swimtrack::kalman
