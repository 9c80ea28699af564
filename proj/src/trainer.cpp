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
#include "genlaw/trainer.hpp"

#include <cmath>
#include <numeric>

#include "genlaw/rng.hpp"
#include "json_util.hpp"

namespace genlaw {

void TrainConfig::validate() const
{
    if (!(initial_lr > 0.0) || !std::isfinite(initial_lr))
        config_error("initial_lr must be positive");
    if (!(lr_drop_factor > 0.0 && lr_drop_factor <= 1.0))
        config_error("lr_drop_factor must lie in (0, 1]");
    if (lr_drop_period_epochs < 1)
        config_error("lr_drop_period_epochs must be >= 1");
    if (!(momentum >= 0.0 && momentum < 1.0))
        config_error("momentum must lie in [0, 1)");
    if (epochs < 1)
        config_error("epochs must be >= 1");
    if (batch_size < 1)
        config_error("batch_size must be >= 1");
    if (validation_frequency < 1)
        config_error("validation_frequency must be >= 1");
    for (int h : hidden_dims)
        if (h < 1)
            config_error("hidden layer widths must be >= 1");
}

double learning_rate(const TrainConfig& config, int epoch)
{
    return config.initial_lr * std::pow(config.lr_drop_factor, epoch / config.lr_drop_period_epochs);
}

std::vector<ImageType> regime_phases(Regime r)
{
    switch (r) {
    case Regime::ClearNet:
        return {ImageType::Clear};
    case Regime::CamoNet:
        return {ImageType::Camo};
    case Regime::ExpClearNet:
        return {ImageType::Camo, ImageType::Clear};
    case Regime::ExpCamoNet:
        return {ImageType::Clear, ImageType::Camo};
    }
    return {};
}

std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::ClearNet:
        return "clearnet";
    case Regime::CamoNet:
        return "camonet";
    case Regime::ExpClearNet:
        return "expclearnet";
    case Regime::ExpCamoNet:
        return "expcamonet";
    }
    return "";
}

Regime parse_regime(std::string_view s)
{
    for (Regime r : kAllRegimes)
        if (to_string(r) == s)
            return r;
    config_error("unknown regime '" + std::string(s) + "' (expected clearnet, camonet, expclearnet or expcamonet)");
}

Matrix Classifier::forward(const Matrix& inputs) const
{
    Matrix a = inputs;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        Matrix z = layers[l].weights * a;
        z.colwise() += layers[l].bias;
        if (l + 1 < layers.size())
            a = z.cwiseMax(0.0);
        else
            a = std::move(z);
    }
    return a;
}

Vector Classifier::forward(const Vector& input) const
{
    return forward(Matrix(input)).col(0);
}

Classifier init_classifier(int input_dim, int num_classes, const TrainConfig& config)
{
    Classifier c;
    c.config = config;
    std::vector<int> dims{input_dim};
    dims.insert(dims.end(), config.hidden_dims.begin(), config.hidden_dims.end());
    dims.push_back(num_classes);

    Rng rng(config.seed, Stream::WeightInit);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        const double bound = std::sqrt(6.0 / dims[l]);
        layer.weights.resize(dims[l + 1], dims[l]);
        for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
            for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
                layer.weights(i, j) = rng.uniform(-bound, bound);
        layer.bias = Vector::Zero(dims[l + 1]);
        c.layers.push_back(std::move(layer));
    }
    return c;
}

namespace {

struct Batch {
    Matrix inputs;  // d x m
    std::vector<int> labels;
};

Batch gather(const Dataset& ds, ImageType type, Split split)
{
    std::vector<const LabeledSample*> picked;
    for (const auto& s : ds.samples)
        if (s.image_type == type && s.split == split)
            picked.push_back(&s);
    Batch b;
    b.inputs.resize(ds.feature_dim(), static_cast<Eigen::Index>(picked.size()));
    for (std::size_t i = 0; i < picked.size(); ++i) {
        b.inputs.col(static_cast<Eigen::Index>(i)) = picked[i]->features;
        b.labels.push_back(picked[i]->class_id);
    }
    return b;
}

double accuracy_of(const Classifier& c, const Batch& b)
{
    if (b.labels.empty())
        return 0.0;
    const Matrix out = c.forward(b.inputs);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < b.labels.size(); ++i)
        hits += argmax_lowest(out.col(static_cast<Eigen::Index>(i))) == b.labels[i];
    return static_cast<double>(hits) / static_cast<double>(b.labels.size());
}

/// One SGDM step on a minibatch; returns (summed loss, correct count).
std::pair<double, std::size_t> sgdm_step(Classifier& net, std::vector<Layer>& velocity, const Matrix& x,
                                         const std::vector<int>& labels, double lr, double momentum)
{
    const std::size_t L = net.layers.size();
    const auto m = x.cols();

    std::vector<Matrix> acts{x};
    std::vector<Matrix> pre;
    for (std::size_t l = 0; l < L; ++l) {
        Matrix z = net.layers[l].weights * acts.back();
        z.colwise() += net.layers[l].bias;
        pre.push_back(z);
        if (l + 1 < L)
            acts.push_back(z.cwiseMax(0.0));
    }

    // Softmax cross-entropy, averaged over the batch.
    Matrix delta = pre.back();
    double loss = 0.0;
    std::size_t correct = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
        auto col = delta.col(j);
        const int label = labels[static_cast<std::size_t>(j)];
        correct += argmax_lowest(col) == label;
        const double zmax = col.maxCoeff();
        col = (col.array() - zmax).exp();
        const double sum = col.sum();
        loss += std::log(sum) - std::log(col[label]);
        col /= sum;
        col[label] -= 1.0;
    }
    delta /= static_cast<double>(m);

    for (std::size_t l = L; l-- > 0;) {
        const Matrix grad_w = delta * acts[l].transpose();
        const Vector grad_b = delta.rowwise().sum();
        if (l > 0) {
            Matrix back = net.layers[l].weights.transpose() * delta;
            delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
        }
        velocity[l].weights = momentum * velocity[l].weights - lr * grad_w;
        velocity[l].bias = momentum * velocity[l].bias - lr * grad_b;
        net.layers[l].weights += velocity[l].weights;
        net.layers[l].bias += velocity[l].bias;
    }
    return {loss, correct};
}

}  // namespace

Classifier train(const Dataset& dataset, Regime regime, const TrainConfig& config)
{
    config.validate();
    if (dataset.samples.empty())
        data_error("dataset is empty");
    Classifier net = init_classifier(dataset.feature_dim(), dataset.num_classes(), config);
    net.regime = regime;

    const auto phases = regime_phases(regime);
    for (std::size_t p = 0; p < phases.size(); ++p) {
        const Batch train_set = gather(dataset, phases[p], Split::Train);
        const Batch val_set = gather(dataset, phases[p], Split::Test);
        if (train_set.labels.empty())
            data_error("phase " + std::to_string(p) + ": no " + std::string(to_string(phases[p])) +
                       " training samples");

        std::vector<Layer> velocity;
        for (const auto& layer : net.layers)
            velocity.push_back({Matrix::Zero(layer.weights.rows(), layer.weights.cols()),
                                Vector::Zero(layer.bias.size())});

        const auto n = train_set.labels.size();
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng shuffle_rng(config.seed, Stream::Shuffle, p);
        const auto batch = static_cast<std::size_t>(config.batch_size);
        int iteration = 0;

        for (int epoch = 0; epoch < config.epochs; ++epoch) {
            if (config.shuffle_each_epoch)
                shuffle_rng.shuffle(std::span<std::size_t>(order));
            const double lr = learning_rate(config, epoch);
            double loss_sum = 0.0;
            std::size_t correct = 0;
            for (std::size_t start = 0; start < n; start += batch) {
                const std::size_t end = std::min(n, start + batch);
                Matrix x(train_set.inputs.rows(), static_cast<Eigen::Index>(end - start));
                std::vector<int> labels;
                for (std::size_t i = start; i < end; ++i) {
                    x.col(static_cast<Eigen::Index>(i - start)) = train_set.inputs.col(static_cast<Eigen::Index>(order[i]));
                    labels.push_back(train_set.labels[order[i]]);
                }
                auto [loss, hits] = sgdm_step(net, velocity, x, labels, lr, config.momentum);
                ++iteration;
                if (!std::isfinite(loss))
                    numerical_error("training diverged: non-finite loss in phase " + std::to_string(p) + ", epoch " +
                                    std::to_string(epoch) + ", iteration " + std::to_string(iteration));
                loss_sum += loss;
                correct += hits;
                if (iteration % config.validation_frequency == 0 && !val_set.labels.empty())
                    net.validation_log.push_back({static_cast<int>(p), iteration, accuracy_of(net, val_set)});
            }
            net.training_log.push_back({static_cast<int>(p), epoch, lr, loss_sum / static_cast<double>(n),
                                        static_cast<double>(correct) / static_cast<double>(n)});
        }
    }
    return net;
}

int argmax_lowest(const Eigen::Ref<const Vector>& v)
{
    int best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (v[i] > v[best])
            best = static_cast<int>(i);
    return best;
}

ConfusionMatrix ConfusionMatrix::from_counts(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>& counts)
{
    ConfusionMatrix cm;
    cm.counts = counts;
    cm.row_normalized = Matrix::Zero(counts.rows(), counts.cols());
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        const std::int64_t total = counts.row(i).sum();
        if (total == 0) {
            cm.empty_rows.push_back(static_cast<int>(i));
            continue;
        }
        for (Eigen::Index j = 0; j < counts.cols(); ++j)
            cm.row_normalized(i, j) = static_cast<double>(counts(i, j)) / static_cast<double>(total);
    }
    return cm;
}

Evaluation evaluate(const ActivationSet& set)
{
    if (set.size() == 0)
        data_error("evaluation: no samples pass the filters");
    const int k = set.num_classes();
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts =
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(k, k);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const int predicted = argmax_lowest(set.activations.row(static_cast<Eigen::Index>(i)).transpose());
        counts(set.labels[i], predicted) += 1;
        hits += predicted == set.labels[i];
    }
    Evaluation e;
    e.num_samples = set.size();
    e.accuracy = static_cast<double>(hits) / static_cast<double>(set.size());
    e.confusion = ConfusionMatrix::from_counts(counts);
    return e;
}

Evaluation evaluate(const Classifier& classifier, const Dataset& dataset, SampleFilter filter)
{
    return evaluate(extract_activations(classifier, dataset, filter));
}

ActivationSet extract_activations(const Classifier& classifier, const Dataset& dataset, SampleFilter filter)
{
    std::vector<const LabeledSample*> picked;
    for (const auto& s : dataset.samples)
        if (filter.accepts(s.image_type, s.split))
            picked.push_back(&s);
    if (picked.empty())
        data_error("no samples pass the filters");
    if (dataset.feature_dim() != classifier.input_dim())
        data_error("dataset feature_dim " + std::to_string(dataset.feature_dim()) + " does not match model input " +
                   std::to_string(classifier.input_dim()));
    if (dataset.num_classes() > classifier.num_classes())
        data_error("dataset has more classes than the model outputs");

    Matrix inputs(dataset.feature_dim(), static_cast<Eigen::Index>(picked.size()));
    ActivationSet set;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        const auto& s = *picked[i];
        inputs.col(static_cast<Eigen::Index>(i)) = s.features;
        set.labels.push_back(s.class_id);
        set.image_types.push_back(s.image_type);
        set.splits.push_back(s.split);
        set.sample_ids.push_back(s.sample_id);
        set.class_names.push_back(dataset.class_names[static_cast<std::size_t>(s.class_id)]);
    }
    set.activations = classifier.forward(inputs).transpose();
    return set;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json train_config_to_json(const TrainConfig& c)
{
    return {{"hidden_dims", c.hidden_dims},
            {"initial_lr", c.initial_lr},
            {"lr_drop_factor", c.lr_drop_factor},
            {"lr_drop_period_epochs", c.lr_drop_period_epochs},
            {"momentum", c.momentum},
            {"epochs", c.epochs},
            {"batch_size", c.batch_size},
            {"validation_frequency", c.validation_frequency},
            {"shuffle_each_epoch", c.shuffle_each_epoch},
            {"seed", c.seed}};
}

TrainConfig train_config_from_json(const nlohmann::json& j)
{
    TrainConfig c;
    json_util::Reader r(j, "train");
    r.get("hidden_dims", c.hidden_dims);
    r.get("initial_lr", c.initial_lr);
    r.get("lr_drop_factor", c.lr_drop_factor);
    r.get("lr_drop_period_epochs", c.lr_drop_period_epochs);
    r.get("momentum", c.momentum);
    r.get("epochs", c.epochs);
    r.get("batch_size", c.batch_size);
    r.get("validation_frequency", c.validation_frequency);
    r.get("shuffle_each_epoch", c.shuffle_each_epoch);
    r.get("seed", c.seed);
    r.finish();
    c.validate();
    return c;
}

namespace {
constexpr int kModelFormatVersion = 1;
}

nlohmann::json classifier_to_json(const Classifier& c)
{
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : c.layers) {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(l.weights.size()));
        for (Eigen::Index i = 0; i < l.weights.rows(); ++i)
            for (Eigen::Index k = 0; k < l.weights.cols(); ++k)
                w.push_back(l.weights(i, k));
        layers.push_back({{"in", l.weights.cols()},
                          {"out", l.weights.rows()},
                          {"weights", w},
                          {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
    }
    nlohmann::json log = nlohmann::json::array();
    for (const auto& e : c.training_log)
        log.push_back({{"phase", e.phase},
                       {"epoch", e.epoch},
                       {"learning_rate", e.learning_rate},
                       {"mean_loss", e.mean_loss},
                       {"train_accuracy", e.train_accuracy}});
    return {{"format_version", kModelFormatVersion},
            {"regime", to_string(c.regime)},
            {"config", train_config_to_json(c.config)},
            {"layers", layers},
            {"training_log", log}};
}

Classifier classifier_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("format_version").get<int>() != kModelFormatVersion)
            data_error("unsupported model format_version");
        Classifier c;
        c.regime = parse_regime(j.at("regime").get<std::string>());
        c.config = train_config_from_json(j.at("config"));
        for (const auto& lj : j.at("layers")) {
            const auto in = lj.at("in").get<Eigen::Index>();
            const auto out = lj.at("out").get<Eigen::Index>();
            const auto w = lj.at("weights").get<std::vector<double>>();
            const auto b = lj.at("bias").get<std::vector<double>>();
            if (in < 1 || out < 1 || static_cast<Eigen::Index>(w.size()) != in * out ||
                static_cast<Eigen::Index>(b.size()) != out)
                data_error("layer dimensions do not match weight arrays");
            if (!c.layers.empty() && c.layers.back().weights.rows() != in)
                data_error("consecutive layer dimensions do not chain");
            Layer layer;
            layer.weights.resize(out, in);
            for (Eigen::Index r = 0; r < out; ++r)
                for (Eigen::Index k = 0; k < in; ++k)
                    layer.weights(r, k) = w[static_cast<std::size_t>(r * in + k)];
            layer.bias = Eigen::Map<const Vector>(b.data(), out);
            c.layers.push_back(std::move(layer));
        }
        if (c.layers.empty())
            data_error("model has no layers");
        if (j.contains("training_log"))
            for (const auto& e : j.at("training_log"))
                c.training_log.push_back({e.at("phase").get<int>(), e.at("epoch").get<int>(),
                                          e.at("learning_rate").get<double>(), e.at("mean_loss").get<double>(),
                                          e.at("train_accuracy").get<double>()});
        return c;
    } catch (const nlohmann::json::exception& e) {
        data_error(std::string("malformed model JSON: ") + e.what());
    }
}

}  // namespace genlaw
