#pragma once

#include <vector>

#include "core/linalg.hpp"

namespace omni {

// Entropy accounting for the trajectory-feedback loop. Detections of one
// frame are modeled as a discrete distribution; feedback from the previous
// frame's trajectories conditions that distribution. All entropies are in
// nats. Joint tables are indexed joint(i, j) = P(x = i, y = j) with x the
// current-frame detection variable and y the fed-back trajectory variable.

// H(p) = -sum p_i ln p_i with 0 ln 0 = 0. Throws InputError unless the
// entries are non-negative and sum to 1 within 1e-9.
double entropy(const Vec& p);

// Marginal over the row variable x.
Vec x_marginal(const Mat& joint);

// H(x | y) for a joint table. Throws InputError on invalid mass.
double conditional_entropy(const Mat& joint);

// Sum over frames of H(x_t) - H(x_t | y_{t-1}); the total uncertainty
// removed by conditioning on trajectory feedback. Non-negative, and zero
// exactly when every per-frame table factorizes. The independent pipeline's
// global association entropy is a summand of its total only — callers that
// want full totals report it as a separate constant offset; it never enters
// this difference. Throws InputError on an empty sequence.
double feedback_gain(const std::vector<Mat>& joints);

}  // namespace omni
