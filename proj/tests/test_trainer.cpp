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
#include "doctest.h"
#include "genlaw/trainer.hpp"

using namespace genlaw;

namespace {

TaskConfig quick_task()
{
    TaskConfig c;
    c.num_classes = 5;
    c.feature_dim = 12;
    c.samples_per_class_clear = 40;
    c.samples_per_class_camo = 40;
    c.seed = 3;
    return c;
}

TrainConfig quick_train()
{
    TrainConfig t;
    t.hidden_dims = {24, 16};
    t.epochs = 20;
    t.initial_lr = 0.01;
    t.seed = 3;
    return t;
}

/// k-class dataset whose features are the one-hot encoding of the label.
Dataset one_hot_dataset(int k, int per_class)
{
    Dataset ds;
    ds.config.num_classes = k;
    ds.config.feature_dim = k;
    for (int c = 0; c < k; ++c)
        ds.class_names.push_back(default_class_name(c));
    std::int64_t id = 0;
    for (int c = 0; c < k; ++c)
        for (int i = 0; i < per_class + c; ++i) {
            LabeledSample s;
            s.features = Vector::Unit(k, c);
            s.class_id = c;
            s.split = Split::Test;
            s.sample_id = id++;
            ds.samples.push_back(s);
        }
    return ds;
}

Classifier linear_classifier(const Matrix& w)
{
    Classifier clf;
    clf.layers.push_back({w, Vector::Zero(w.rows())});
    return clf;
}

}  // namespace

TEST_CASE("learning rate drops by the factor every period")
{
    TrainConfig c;
    CHECK(learning_rate(c, 0) == doctest::Approx(0.001));
    CHECK(learning_rate(c, 9) == doctest::Approx(0.001));
    CHECK(learning_rate(c, 10) == doctest::Approx(0.001 * 0.05));
    CHECK(learning_rate(c, 25) == doctest::Approx(0.001 * 0.05 * 0.05));
}

TEST_CASE("zero epochs is rejected; a single epoch keeps the initial rate")
{
    TrainConfig c;
    c.epochs = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c.epochs = 1;
    c.validate();
    auto task = quick_task();
    task.samples_per_class_clear = 5;
    task.samples_per_class_camo = 5;
    const Classifier clf = train(generate_task(task), Regime::ClearNet, c);
    REQUIRE(clf.training_log.size() == 1);
    CHECK(clf.training_log[0].learning_rate == c.initial_lr);
}

TEST_CASE("regimes map to their phase sequences")
{
    CHECK(regime_phases(Regime::ClearNet) == std::vector<ImageType>{ImageType::Clear});
    CHECK(regime_phases(Regime::CamoNet) == std::vector<ImageType>{ImageType::Camo});
    CHECK(regime_phases(Regime::ExpClearNet) == std::vector<ImageType>{ImageType::Camo, ImageType::Clear});
    CHECK(regime_phases(Regime::ExpCamoNet) == std::vector<ImageType>{ImageType::Clear, ImageType::Camo});
    for (Regime r : kAllRegimes)
        CHECK(parse_regime(to_string(r)) == r);
    CHECK_THROWS_AS(parse_regime("fastnet"), Error);
}

TEST_CASE("init uses fan-in bounded uniform weights and zero biases")
{
    TrainConfig c;
    const Classifier clf = init_classifier(32, 15, c);
    REQUIRE(clf.layers.size() == 3);
    CHECK(clf.layers[0].weights.rows() == 64);
    CHECK(clf.layers[0].weights.cols() == 32);
    CHECK(clf.layers[2].weights.rows() == 15);
    for (const auto& l : clf.layers) {
        const double bound = std::sqrt(6.0 / static_cast<double>(l.weights.cols()));
        CHECK(l.weights.cwiseAbs().maxCoeff() <= bound);
        CHECK(l.bias.isZero());
    }
}

TEST_CASE("a classifier that outputs the true one-hot scores 1 with a diagonal confusion")
{
    const Dataset ds = one_hot_dataset(4, 3);
    const Evaluation e = evaluate(linear_classifier(Matrix::Identity(4, 4)), ds);
    CHECK(e.accuracy == 1.0);
    CHECK(e.num_samples == ds.samples.size());
    const auto& c = e.confusion.counts;
    CHECK(c.diagonal().sum() == static_cast<std::int64_t>(ds.samples.size()));
    CHECK(c.sum() == c.diagonal().sum());
}

TEST_CASE("uniform outputs predict class 0 through the lowest-index tie break")
{
    const Dataset ds = one_hot_dataset(15, 4);
    const Evaluation e = evaluate(linear_classifier(Matrix::Zero(15, 15)), ds);
    CHECK(e.accuracy == doctest::Approx(4.0 / static_cast<double>(ds.samples.size())));
    CHECK(e.confusion.counts.col(0).sum() == static_cast<std::int64_t>(ds.samples.size()));
    Vector v(3);
    v << 1.0, 2.0, 2.0;
    CHECK(argmax_lowest(v) == 1);
}

TEST_CASE("empty confusion rows are reported and left at zero")
{
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts(3, 3);
    counts << 2, 2, 0, 0, 0, 0, 1, 0, 3;
    const auto cm = ConfusionMatrix::from_counts(counts);
    CHECK(cm.empty_rows == std::vector<int>{1});
    CHECK(cm.row_normalized(0, 1) == 0.5);
    CHECK(cm.row_normalized.row(1).isZero());
    CHECK(cm.row_normalized(2, 2) == 0.75);
}

TEST_CASE("training is deterministic and separates clear from camo")
{
    const Dataset ds = generate_task(quick_task());
    const Classifier a = train(ds, Regime::ClearNet, quick_train());
    const Classifier b = train(ds, Regime::ClearNet, quick_train());
    REQUIRE(a.layers.size() == b.layers.size());
    for (std::size_t i = 0; i < a.layers.size(); ++i) {
        CHECK(a.layers[i].weights == b.layers[i].weights);
        CHECK(a.layers[i].bias == b.layers[i].bias);
    }
    const double clear = evaluate(a, ds, {ImageType::Clear, Split::Test}).accuracy;
    const double camo = evaluate(a, ds, {ImageType::Camo, Split::Test}).accuracy;
    CHECK(clear > camo);
    CHECK(clear > 0.8);
    CHECK(a.training_log.size() == 20);
    CHECK_FALSE(a.validation_log.empty());
}

TEST_CASE("transfer regimes run two phases and keep the weights between them")
{
    const Dataset ds = generate_task(quick_task());
    auto cfg = quick_train();
    cfg.epochs = 6;
    const Classifier exp = train(ds, Regime::ExpCamoNet, cfg);
    REQUIRE(exp.training_log.size() == 12);
    CHECK(exp.training_log[0].phase == 0);
    CHECK(exp.training_log[6].phase == 1);
    // Phase two restarts the schedule.
    CHECK(exp.training_log[6].learning_rate == cfg.initial_lr);
    // The first phase of ExpCamoNet is exactly ClearNet's training.
    const Classifier clear = train(ds, Regime::ClearNet, cfg);
    CHECK(clear.training_log[5].mean_loss == exp.training_log[5].mean_loss);
    CHECK(exp.training_log[6].train_accuracy > 0.2);  // starts from trained weights, not from scratch
}

TEST_CASE("extracted activations agree with evaluate")
{
    const Dataset ds = generate_task(quick_task());
    auto cfg = quick_train();
    cfg.epochs = 5;
    const Classifier clf = train(ds, Regime::CamoNet, cfg);
    const SampleFilter test{std::nullopt, Split::Test};
    const ActivationSet acts = extract_activations(clf, ds, test);
    CHECK(acts.size() == 5u * 2u * 12u);
    CHECK(acts.num_classes() == 5);
    CHECK(extract_activations(clf, ds, test) == acts);
    const Evaluation direct = evaluate(clf, ds, test);
    const Evaluation from_acts = evaluate(acts);
    CHECK(direct.confusion.counts == from_acts.confusion.counts);
    CHECK(direct.accuracy == from_acts.accuracy);
}

TEST_CASE("model json round-trips bit for bit")
{
    const Dataset ds = generate_task(quick_task());
    auto cfg = quick_train();
    cfg.epochs = 3;
    const Classifier clf = train(ds, Regime::ExpClearNet, cfg);
    const auto j = classifier_to_json(clf);
    const Classifier back = classifier_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.regime == Regime::ExpClearNet);
    for (std::size_t i = 0; i < clf.layers.size(); ++i)
        CHECK(back.layers[i].weights == clf.layers[i].weights);
    CHECK(classifier_to_json(back).dump() == j.dump());
}

TEST_CASE("malformed model json is a data error")
{
    auto j = nlohmann::json::parse(R"({"format_version": 1, "regime": "clearnet"})");
    try {
        classifier_from_json(j);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
    }
}
