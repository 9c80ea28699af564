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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "genlaw/curves.hpp"
#include "genlaw/geometry.hpp"
#include "genlaw/reduction.hpp"
#include "genlaw/synthdata.hpp"
#include "genlaw/trainer.hpp"

namespace genlaw {

inline constexpr const char* kToolName = "genlaw";
inline constexpr const char* kToolVersion = "1.0.0";

enum class AnalysisMethod { Pca, MdsEuclidean, MdsManhattan };
std::string_view to_string(AnalysisMethod m);
AnalysisMethod parse_method(std::string_view s);

enum class CenterSelection { Centroid, True, Both };
CenterSelection parse_center_selection(std::string_view s);
std::string_view to_string(CenterSelection c);

enum class SearchSpace { Reduced, Full };

/// Analysis settings. Embeddings are always 3-dimensional.
struct AnalysisConfig {
    AnalysisMethod method = AnalysisMethod::Pca;
    CenterSelection centers = CenterSelection::Both;
    /// Laplace smoothing of the confusion probabilities behind g.
    double smoothing = 0.5;
    int smacof_max_iter = 300;
    double smacof_tol = 1e-9;
    /// Restrict the analysis to these class ids (empty: all).
    std::vector<int> classes;
    SearchSpace search_space = SearchSpace::Reduced;
    bool export_surfaces = false;

    void validate() const;
};

/// Everything a run is parameterized by; each section is optional in the
/// JSON file and defaults apply per key.
struct PipelineConfig {
    TaskConfig task;
    TrainConfig train;
    CenterSearchConfig center_search;
    AnalysisConfig analysis;

    /// Sets both the task and the training seed.
    void set_seed(std::uint64_t seed);
};

PipelineConfig parse_config(const nlohmann::json& j);
/// Throws Error(Config) with the parse location on malformed JSON.
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const PipelineConfig& c);

// ---------------------------------------------------------------------------
// Analysis

struct SubsetAnalysis {
    ImageType image_type = ImageType::Clear;
    std::vector<ClassRegion> regions;
    std::vector<GeneralizationCurve> curves;
    std::vector<BifurcationReport> bifurcations;  // one per curve, same order

    const ClassRegion* region(int class_id) const;
};

struct AnalysisResult {
    /// The analyzed rows (test split, class filter applied).
    ActivationSet rows;
    Embedding embedding;
    std::vector<SubsetAnalysis> subsets;
    std::vector<Overlay> overlays;
    Evaluation evaluation;
    /// g restricted to `g_classes`, computed from the full confusion.
    GeneralizationMatrix g;
    std::vector<int> g_classes;
    /// Distances between class true centers (clear subset when present).
    Matrix class_distances;
    GradientTable gradient;
    std::vector<std::string> warnings;

    const SubsetAnalysis* subset(ImageType t) const;
};

/// Reduction, regions, curves, overlays and the g gradient for one
/// activation set. Uses the test rows when any exist, else every row.
AnalysisResult analyze(const ActivationSet& activations, const AnalysisConfig& analysis,
                       const CenterSearchConfig& center_search);

// ---------------------------------------------------------------------------
// Manifests

std::string sha256_hex(const std::filesystem::path& file);

/// Writes `<dir>/manifest.json`. Artifact and input paths are stored relative
/// to `dir`; every listed file must exist.
void write_manifest(const std::filesystem::path& dir, const std::string& command, const nlohmann::json& config,
                    const std::vector<std::filesystem::path>& inputs,
                    const std::vector<std::filesystem::path>& artifacts);

/// Reads `<dir>/manifest.json` and checks every artifact hash. Throws
/// Error(Data) on a missing manifest or any mismatch.
nlohmann::json verify_manifest(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Stages (one per CLI subcommand)

struct RunOptions {
    std::optional<std::filesystem::path> config_path;
    std::filesystem::path out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool quiet = true;

    // train
    std::filesystem::path dataset_dir;
    std::string regime = "clearnet";

    // analyze
    std::optional<std::filesystem::path> model_dir;
    std::optional<std::filesystem::path> activations_path;
    std::optional<std::string> method;
    std::optional<std::string> center;
    std::optional<std::string> metric;
    std::optional<std::vector<int>> classes;
    std::optional<bool> export_surfaces;

    // plot
    std::filesystem::path analysis_dir;
};

/// Config from the optional file with command-line overrides applied.
PipelineConfig resolve_config(const RunOptions& opts);

void run_synth(const RunOptions& opts);
void run_train(const RunOptions& opts);
void run_analyze(const RunOptions& opts);
void run_plot(const RunOptions& opts);
/// synth, then train/analyze/plot for all four regimes under out_dir.
void run_all(const RunOptions& opts);

/// Comma-separated class ids, e.g. "0,1,7,8".
std::vector<int> parse_class_list(std::string_view s);

}  // namespace genlaw
