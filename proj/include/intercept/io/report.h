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
 * @file report.h
 * @brief CSV outputs of a run directory and SVG plots rendered from them.
 *
 * The plots read nothing but the CSV files, so re-rendering a directory
 * reproduces them byte for byte.
 **/

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "intercept/sim/pipeline.h"
#include "intercept/sim/prediction_experiment.h"
#include "intercept/sim/scenario.h"

namespace intercept::io {

/// Shortest round-trip-safe text for a double; "inf" / "-inf" / "nan".
std::string FormatNumber(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index; throws Error(kParse) when absent.
  size_t Column(const std::string& name) const;
  double Number(size_t row, size_t col) const;
};

/// Plain comma separated text without quoting. Throws Error(kParse).
CsvTable ParseCsv(const std::string& text);
CsvTable ReadCsv(const std::string& path);

/// The plan's own schedule first, then the uniform baseline and the DP
/// polyline when they differ from it. Keys are planner names.
std::vector<std::pair<std::string, sim::StationSchedule>> ComparisonSchedules(
    const sim::InterceptionPlan& plan, const sim::Scenario& scn);

/// kind,index,vertex,x,y,vx,vy,inflation; one "bounds" row holds the map size.
void WriteMapCsv(const sim::Scenario& scn, std::ostream& out);
/// kind,index,x,y for the coarse and smoothed paths.
void WritePathCsv(const sim::InterceptionPlan& plan, std::ostream& out);
/// kind,index,t,s: ST obstacles, DP line, corridor bounds and the station
/// curves of the chosen, uniform and DP schedules.
void WriteStGraphCsv(const sim::InterceptionPlan& plan, const sim::Scenario& scn,
                     std::ostream& out);
/// planner,t,s,v,a sampled every 0.05 s for the same three schedules.
void WriteSpeedCsv(const sim::InterceptionPlan& plan, const sim::Scenario& scn,
                   std::ostream& out);
/// stage,plan,ms per planning cycle.
void WriteTimingCsv(const std::vector<sim::InterceptionPlan>& plans, std::ostream& out);
/// motion,horizon,mean_relative_error,mean_abs_error,trials
void WritePredictionCsv(const std::vector<std::pair<sim::TargetMotion,
                                                    sim::PredictionStats>>& rows,
                        std::ostream& out);

/// Renders plots/*.svg for every known CSV present in run_dir. Returns the
/// written file names.
std::vector<std::string> RenderPlots(const std::string& run_dir);

}  // namespace intercept::io
