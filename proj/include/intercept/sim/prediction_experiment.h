/******************************************************************************
 * Copyright 2026 The Intercept Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

/**
 * @file prediction_experiment.h
 * @brief Repeated fit-and-extrapolate trials against a known target.
 *
 * Relative error at horizon h is |predicted - true| divided by the distance
 * the target actually travels from the first observation to time h.
 **/

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "intercept/sim/target.h"

namespace intercept::sim {

enum class TargetMotion { kUniform, kCurve };

std::string_view ToString(TargetMotion motion);
/// Throws Error(kValidation) on unknown names.
TargetMotion ParseTargetMotion(std::string_view name);

/// Uniform: x0 = (0, 0, 1, 0), no control. Curve: same start with a
/// constant (0, 0.4 dt) velocity-channel control.
TargetModel MotionModel(TargetMotion motion, double dt);

struct PredictionExperiment {
  TargetMotion motion = TargetMotion::kUniform;
  int trials = 200;
  int observations = 15;
  double dt = 1.0;
  double sigma = 0.1;
  int degree = 2;
  std::vector<double> horizons{0.0, 5.0, 10.0, 15.0};
  uint64_t seed = 0;
  int threads = 0;  // 0 picks the hardware concurrency
};

struct PredictionStats {
  std::vector<double> horizons;
  std::vector<double> mean_relative_error;
  std::vector<double> mean_abs_error;  // [m]
  int trials = 0;
};

PredictionStats RunPredictionExperiment(const PredictionExperiment& exp);

}  // namespace intercept::sim
