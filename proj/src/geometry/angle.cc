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

#include "intercept/geometry/angle.h"

#include <cmath>

#include "intercept/common/error.h"

namespace intercept::geometry {

double NormalizeAngle(double theta) {
  if (!std::isfinite(theta)) {
    throw Error(ErrorCode::kDomain, "NormalizeAngle: non-finite angle");
  }
  double r = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (r <= -kPi) {
    r += kTwoPi;
  }
  return r;
}

double WrapTwoPi(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  if (r >= kTwoPi) {
    r = 0.0;
  }
  return r;
}

}  // namespace intercept::geometry
