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

#include "intercept/sim/prediction_experiment.h"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "intercept/common/error.h"
#include "intercept/prediction/target_predictor.h"

namespace intercept::sim {
namespace {

// Distance travelled along the piecewise-linear truth between t0 and t1.
double TravelledLength(const TargetTrajectory& truth, double t0, double t1) {
  double len = 0.0;
  double t = t0;
  geometry::Vec2 prev = truth.PositionAt(t0);
  while (t < t1 - 1e-12) {
    const double next = std::min(t1, t + truth.dt());
    const geometry::Vec2 p = truth.PositionAt(next);
    len += Distance(prev, p);
    prev = p;
    t = next;
  }
  return len;
}

}  // namespace

std::string_view ToString(TargetMotion motion) {
  return motion == TargetMotion::kCurve ? "curve" : "uniform";
}

TargetMotion ParseTargetMotion(std::string_view name) {
  if (name == "uniform") return TargetMotion::kUniform;
  if (name == "curve") return TargetMotion::kCurve;
  throw Error(ErrorCode::kValidation, "unknown target motion '" + std::string(name) + "'");
}

TargetModel MotionModel(TargetMotion motion, double dt) {
  TargetModel m;
  m.x0 = {0.0, 0.0, 1.0, 0.0};
  m.dt = dt;
  if (motion == TargetMotion::kCurve) m.controls = {{0.0, 0.4 * dt}};
  return m;
}

PredictionStats RunPredictionExperiment(const PredictionExperiment& exp) {
  if (exp.trials < 1 || exp.observations < exp.degree + 1 || !(exp.dt > 0.0) ||
      !(exp.sigma >= 0.0)) {
    throw Error(ErrorCode::kValidation, "invalid prediction experiment");
  }
  const size_t nh = exp.horizons.size();
  const TargetModel model = MotionModel(exp.motion, exp.dt);
  const TargetTrajectory truth(model, -(exp.observations - 1) * exp.dt);
  std::vector<double> travelled(nh);
  std::vector<geometry::Vec2> truth_at(nh);
  for (size_t h = 0; h < nh; ++h) {
    travelled[h] = TravelledLength(truth, truth.t_first(), exp.horizons[h]);
    truth_at[h] = truth.PositionAt(exp.horizons[h]);
  }

  // Per-trial errors land in fixed slots so the reduction order is fixed.
  std::vector<double> rel(static_cast<size_t>(exp.trials) * nh);
  std::vector<double> abs_err(rel.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int trial = next++; trial < exp.trials; trial = next++) {
      NoiseModel noise{exp.sigma, exp.sigma,
                       exp.seed * 0x100000001b3ULL + static_cast<uint64_t>(trial)};
      std::vector<Observation> obs;
      for (int k = 0; k < exp.observations; ++k) {
        obs.push_back({truth.t_first() + k * exp.dt,
                       Observe(truth.StateAtStep(k), noise, k)});
      }
      const auto fit = prediction::FitPolynomial(obs, exp.degree);
      for (size_t h = 0; h < nh; ++h) {
        const double err =
            Distance(prediction::PredictPosition(fit, exp.horizons[h]), truth_at[h]);
        abs_err[trial * nh + h] = err;
        rel[trial * nh + h] = travelled[h] > 0.0 ? err / travelled[h] : 0.0;
      }
    }
  };
  // The shared trajectory caches states lazily; warm it before threading.
  truth.StateAtStep(exp.observations);
  const int threads = std::max(
      1, std::min(exp.threads > 0 ? exp.threads
                                  : static_cast<int>(std::thread::hardware_concurrency()),
                  exp.trials));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  PredictionStats stats;
  stats.horizons = exp.horizons;
  stats.trials = exp.trials;
  stats.mean_relative_error.assign(nh, 0.0);
  stats.mean_abs_error.assign(nh, 0.0);
  for (int trial = 0; trial < exp.trials; ++trial) {
    for (size_t h = 0; h < nh; ++h) {
      stats.mean_relative_error[h] += rel[trial * nh + h];
      stats.mean_abs_error[h] += abs_err[trial * nh + h];
    }
  }
  for (size_t h = 0; h < nh; ++h) {
    stats.mean_relative_error[h] /= exp.trials;
    stats.mean_abs_error[h] /= exp.trials;
  }
  return stats;
}

}  // namespace intercept::sim
