/*
 *  Copyright 2026 The genlaw Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <filesystem>
#include <vector>

#include "genlaw/pipeline.hpp"

namespace genlaw::artifacts {

namespace fs = std::filesystem;

void write_json(const fs::path& path, const nlohmann::json& j);
nlohmann::json read_json(const fs::path& path);

/// Accuracy of a trained model on train/test x clear/camo.
nlohmann::json accuracy_report(const Classifier& model, const Dataset& dataset);

/// One CSV row per accuracy cell: network,trained_on,split,tested_on,accuracy_percent
void write_accuracy_csv(const fs::path& path, const std::vector<nlohmann::json>& reports);

std::vector<fs::path> write_training_log(const fs::path& dir, const Classifier& model);

/// Every analysis artifact; returns the files written.
std::vector<fs::path> write_analysis(const fs::path& dir, const AnalysisResult& res, const PipelineConfig& cfg);

/// SVG figures from a verified analysis directory; returns the files written.
std::vector<fs::path> write_figures(const fs::path& analysis_dir, const fs::path& out_dir);

}  // namespace genlaw::artifacts
