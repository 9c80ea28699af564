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
#include <algorithm>
#include <set>

#include "genlaw/pipeline.hpp"

namespace genlaw {

const ClassRegion* SubsetAnalysis::region(int class_id) const
{
    for (const auto& r : regions)
        if (r.class_id == class_id)
            return &r;
    return nullptr;
}

const SubsetAnalysis* AnalysisResult::subset(ImageType t) const
{
    for (const auto& s : subsets)
        if (s.image_type == t)
            return &s;
    return nullptr;
}

namespace {

constexpr int kEmbeddingDims = 3;

Embedding reduce(const Matrix& acts, const AnalysisConfig& cfg, int threads)
{
    switch (cfg.method) {
    case AnalysisMethod::Pca:
        return pca(acts, kEmbeddingDims);
    case AnalysisMethod::MdsEuclidean:
        return classical_mds(pairwise_distances(acts, Metric::Euclidean, threads), kEmbeddingDims);
    case AnalysisMethod::MdsManhattan:
        return smacof(pairwise_distances(acts, Metric::Manhattan, threads), kEmbeddingDims, cfg.smacof_max_iter,
                      cfg.smacof_tol);
    }
    return {};
}

std::vector<CenterKind> center_kinds(CenterSelection s)
{
    switch (s) {
    case CenterSelection::Centroid:
        return {CenterKind::Centroid};
    case CenterSelection::True:
        return {CenterKind::TrueCenter};
    case CenterSelection::Both:
        break;
    }
    return {CenterKind::Centroid, CenterKind::TrueCenter};
}

}  // namespace

AnalysisResult analyze(const ActivationSet& activations, const AnalysisConfig& cfg, const CenterSearchConfig& cs)
{
    cfg.validate();
    cs.validate();
    const int k = activations.num_classes();
    for (int c : cfg.classes)
        if (c >= k)
            config_error("class " + std::to_string(c) + " is out of range for " + std::to_string(k) + " classes");

    auto rows = activations.rows_where(std::nullopt, Split::Test);
    if (rows.empty())
        rows = activations.rows_where(std::nullopt, std::nullopt);
    if (!cfg.classes.empty()) {
        const std::set<int> keep(cfg.classes.begin(), cfg.classes.end());
        std::erase_if(rows, [&](std::size_t r) { return !keep.count(activations.labels[r]); });
    }

    AnalysisResult res;
    res.rows = activations.subset(rows);
    const auto n = res.rows.size();
    if (n <= static_cast<std::size_t>(kEmbeddingDims))
        data_error("analysis needs more than " + std::to_string(kEmbeddingDims) + " rows, found " + std::to_string(n));

    res.embedding = reduce(res.rows.activations, cfg, cs.threads);
    res.warnings = res.embedding.warnings;
    const Metric metric = cs.distance_metric;
    const bool full = cfg.search_space == SearchSpace::Full;

    auto members_of = [&](ImageType t, int c) {
        std::vector<std::size_t> m;
        for (std::size_t i = 0; i < n; ++i)
            if (res.rows.image_types[i] == t && res.rows.labels[i] == c)
                m.push_back(i);
        return m;
    };
    auto samples_for = [&](const std::vector<std::size_t>& members, int c) {
        CurveSamples s;
        s.coords = select_rows(full ? res.rows.activations : res.embedding.coords, members);
        for (auto i : members) {
            s.activations.push_back(res.rows.activations(static_cast<Eigen::Index>(i), c));
            s.image_types.push_back(res.rows.image_types[i]);
            s.sample_ids.push_back(res.rows.sample_ids[i]);
        }
        return s;
    };

    for (ImageType t : {ImageType::Clear, ImageType::Camo}) {
        std::set<int> classes;
        for (std::size_t i = 0; i < n; ++i)
            if (res.rows.image_types[i] == t)
                classes.insert(res.rows.labels[i]);
        if (classes.empty())
            continue;
        SubsetAnalysis sub;
        sub.image_type = t;
        for (int c : classes) {
            const auto members = members_of(t, c);
            if (members.size() < 3) {
                res.warnings.push_back("class " + std::to_string(c) + " (" + std::string(to_string(t)) + ") has " +
                                       std::to_string(members.size()) + " points; region skipped");
                continue;
            }
            CurveSamples s = samples_for(members, c);
            sub.regions.push_back(build_region(c, select_rows(res.embedding.coords, members), s.coords,
                                               std::move(s.activations), std::move(s.sample_ids),
                                               std::move(s.image_types), cs));
            const ClassRegion& region = sub.regions.back();
            if (region.true_center.degenerate)
                res.warnings.push_back("class " + std::to_string(c) + " (" + std::string(to_string(t)) +
                                       "): all activations equal; true center is the centroid");
            for (CenterKind kind : center_kinds(cfg.centers)) {
                sub.curves.push_back(build_curve(region, kind, metric));
                sub.bifurcations.push_back(detect_bifurcation(sub.curves.back()));
            }
        }
        res.subsets.push_back(std::move(sub));
    }

    if (const auto* clear = res.subset(ImageType::Clear)) {
        for (const auto& region : clear->regions) {
            const auto camo_members = members_of(ImageType::Camo, region.class_id);
            if (camo_members.empty())
                continue;
            res.overlays.push_back(overlay_curve(region.class_id, region.true_center.center, samples_of(region),
                                                 samples_for(camo_members, region.class_id), metric));
        }
    }

    res.evaluation = evaluate(res.rows);
    const GeneralizationMatrix g_full = shepard_g(res.evaluation.confusion, cfg.smoothing);

    const SubsetAnalysis* centers_from = res.subset(ImageType::Clear);
    if (!centers_from || centers_from->regions.empty())
        centers_from = res.subset(ImageType::Camo);
    Matrix centers;
    if (centers_from) {
        centers.resize(static_cast<Eigen::Index>(centers_from->regions.size()), centers_from->regions.front().true_center.center.size());
        for (std::size_t i = 0; i < centers_from->regions.size(); ++i) {
            res.g_classes.push_back(centers_from->regions[i].class_id);
            centers.row(static_cast<Eigen::Index>(i)) = centers_from->regions[i].true_center.center.transpose();
        }
    }
    const auto m = static_cast<Eigen::Index>(res.g_classes.size());
    res.g.source_confusion = g_full.source_confusion;
    res.g.smoothing = g_full.smoothing;
    res.g.g.resize(m, m);
    res.g.p.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            res.g.g(a, b) = g_full.g(res.g_classes[static_cast<std::size_t>(a)], res.g_classes[static_cast<std::size_t>(b)]);
            res.g.p(a, b) = g_full.p(res.g_classes[static_cast<std::size_t>(a)], res.g_classes[static_cast<std::size_t>(b)]);
        }
    res.class_distances = m >= 2 ? pairwise_distances(centers, metric).values : Matrix::Zero(m, m);
    res.gradient = plot_gradient(res.g, res.class_distances);
    // plot_gradient indexes pairs by position; map back to class ids.
    for (auto& p : res.gradient.pairs) {
        p.i = res.g_classes[static_cast<std::size_t>(p.i)];
        p.j = res.g_classes[static_cast<std::size_t>(p.j)];
    }
    return res;
}

}  // namespace genlaw
