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
#include "genlaw/synthdata.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "csv.hpp"
#include "genlaw/rng.hpp"

namespace genlaw {

void TaskConfig::validate() const
{
    if (num_classes < 2)
        config_error("num_classes must be >= 2");
    if (feature_dim < 2)
        config_error("feature_dim must be >= 2");
    if (samples_per_class_clear < 1 || samples_per_class_camo < 1)
        config_error("samples_per_class_clear and samples_per_class_camo must be >= 1");
    const CamoMix& m = camo_mix;
    if (m.background_matching < 0 || m.mimicry < 0 || m.other < 0)
        config_error("camo_mix fractions must be nonnegative");
    if (std::abs(m.background_matching + m.mimicry + m.other - 1.0) > 1e-12)
        config_error("camo_mix fractions must sum to 1");
    if (!(camo_shift >= 0.0 && camo_shift <= 1.0))
        config_error("camo_shift must lie in [0, 1]");
    if (!(clear_spread > 0.0) || !std::isfinite(clear_spread))
        config_error("clear_spread must be positive");
    if (!(camo_spread_factor >= 1.0) || !std::isfinite(camo_spread_factor))
        config_error("camo_spread_factor must be >= 1");
}

int Dataset::feature_dim() const
{
    return samples.empty() ? config.feature_dim : static_cast<int>(samples.front().features.size());
}

std::string default_class_name(int class_id)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "class%02d", class_id);
    return buf;
}

namespace {

void assign_splits(std::vector<LabeledSample>& samples, std::size_t first, int n, Rng& rng)
{
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<int>(order));
    const int n_train = train_count(n);
    for (int rank = 0; rank < n; ++rank) {
        auto& s = samples[first + static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])];
        s.split = rank < n_train ? Split::Train : Split::Test;
    }
}

}  // namespace

Dataset generate_task(const TaskConfig& config)
{
    config.validate();
    const int k = config.num_classes;
    const int d = config.feature_dim;

    Dataset ds;
    ds.config = config;
    for (int c = 0; c < k; ++c)
        ds.class_names.push_back(default_class_name(c));

    Rng proto_rng(config.seed, Stream::Prototypes);
    ds.prototypes.resize(k, d);
    for (int c = 0; c < k; ++c)
        for (int j = 0; j < d; ++j)
            ds.prototypes(c, j) = proto_rng.uniform();
    ds.background.resize(d);
    for (int j = 0; j < d; ++j)
        ds.background[j] = proto_rng.uniform();

    Rng clear_rng(config.seed, Stream::ClearNoise);
    Rng camo_rng(config.seed, Stream::CamoNoise);
    Rng split_rng(config.seed, Stream::Splits);

    const double camo_sigma = config.clear_spread * config.camo_spread_factor;
    std::int64_t next_id = 0;
    for (int c = 0; c < k; ++c) {
        const std::size_t clear_first = ds.samples.size();
        for (int i = 0; i < config.samples_per_class_clear; ++i) {
            LabeledSample s;
            s.class_id = c;
            s.image_type = ImageType::Clear;
            s.sample_id = next_id++;
            s.features.resize(d);
            for (int j = 0; j < d; ++j)
                s.features[j] = ds.prototypes(c, j) + config.clear_spread * clear_rng.normal();
            ds.samples.push_back(std::move(s));
        }
        assign_splits(ds.samples, clear_first, config.samples_per_class_clear, split_rng);

        const std::size_t camo_first = ds.samples.size();
        for (int i = 0; i < config.samples_per_class_camo; ++i) {
            LabeledSample s;
            s.class_id = c;
            s.image_type = ImageType::Camo;
            s.sample_id = next_id++;
            const double u = camo_rng.uniform();
            if (u < config.camo_mix.background_matching) {
                s.strategy = CamoStrategy::BackgroundMatching;
            } else if (u < config.camo_mix.background_matching + config.camo_mix.mimicry) {
                s.strategy = CamoStrategy::Mimicry;
                const int other = static_cast<int>(camo_rng.below(static_cast<std::uint64_t>(k - 1)));
                s.mimic_class = other >= c ? other + 1 : other;
            } else {
                s.strategy = CamoStrategy::Other;
            }
            const Vector center = generative_center(ds, s);
            s.features.resize(d);
            for (int j = 0; j < d; ++j)
                s.features[j] = center[j] + camo_sigma * camo_rng.normal();
            ds.samples.push_back(std::move(s));
        }
        assign_splits(ds.samples, camo_first, config.samples_per_class_camo, split_rng);
    }
    return ds;
}

Vector generative_center(const Dataset& ds, const LabeledSample& s)
{
    if (ds.prototypes.rows() == 0)
        data_error("dataset carries no generative prototypes");
    const Vector mu = ds.prototypes.row(s.class_id).transpose();
    const double lambda = ds.config.camo_shift;
    switch (s.strategy) {
    case CamoStrategy::BackgroundMatching:
        return (1.0 - lambda) * mu + lambda * ds.background;
    case CamoStrategy::Mimicry:
        return (1.0 - lambda) * mu + lambda * ds.prototypes.row(s.mimic_class).transpose();
    case CamoStrategy::None:
    case CamoStrategy::Other:
        break;
    }
    return mu;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr int kMetaColumns = 5;

std::string column_name(char prefix, int i)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%c%02d", prefix, i);
    return buf;
}

void write_header(std::ostream& out, char prefix, int width)
{
    out << "sample_id,class_id,class_name,image_type,split";
    for (int i = 0; i < width; ++i)
        out << ',' << column_name(prefix, i);
    out << '\n';
}

struct RowMeta {
    std::int64_t sample_id;
    int class_id;
    std::string class_name;
    ImageType image_type;
    Split split;
};

/// Validates the header against the expected layout; returns the value-column count.
int read_header(const std::vector<std::string>& fields, char prefix)
{
    static const char* meta[kMetaColumns] = {"sample_id", "class_id", "class_name", "image_type", "split"};
    if (static_cast<int>(fields.size()) <= kMetaColumns)
        data_error("row 1: malformed header: expected metadata columns followed by value columns");
    for (int i = 0; i < kMetaColumns; ++i)
        if (fields[static_cast<std::size_t>(i)] != meta[i])
            data_error("row 1: malformed header: column " + std::to_string(i + 1) + " should be '" + meta[i] + "'");
    const int width = static_cast<int>(fields.size()) - kMetaColumns;
    for (int i = 0; i < width; ++i)
        if (fields[static_cast<std::size_t>(kMetaColumns + i)] != column_name(prefix, i))
            data_error("row 1: malformed header: expected column '" + column_name(prefix, i) + "'");
    return width;
}

template <typename OnRow>
void read_rows(std::istream& in, char prefix, OnRow&& on_row)
{
    std::string line;
    if (!std::getline(in, line))
        data_error("row 1: missing header");
    const int width = read_header(csv::split(line), prefix);
    std::size_t row = 1;
    Vector values(width);
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        const auto fields = csv::split(line);
        const std::string where = "row " + std::to_string(row) + ": ";
        if (static_cast<int>(fields.size()) != kMetaColumns + width)
            data_error(where + "expected " + std::to_string(kMetaColumns + width) + " fields, found " +
                       std::to_string(fields.size()));
        try {
            RowMeta meta{parse_int(fields[0]), static_cast<int>(parse_int(fields[1])), fields[2],
                         parse_image_type(fields[3]), parse_split(fields[4])};
            if (meta.class_id < 0)
                data_error("negative class_id");
            for (int i = 0; i < width; ++i) {
                values[i] = parse_double(fields[static_cast<std::size_t>(kMetaColumns + i)]);
                if (!std::isfinite(values[i]))
                    data_error("non-finite value in column " + column_name(prefix, i));
            }
            on_row(meta, values);
        } catch (const Error& e) {
            data_error(where + e.what());
        }
    }
    if (row == 1)
        data_error("no data rows");
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        data_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        data_error("cannot write " + path.string());
    return out;
}

void write_values(std::ostream& out, const Eigen::Ref<const Vector>& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out << ',' << format_double(v[i]);
    out << '\n';
}

}  // namespace

void write_dataset_csv(const Dataset& ds, std::ostream& out)
{
    write_header(out, 'f', ds.feature_dim());
    for (const auto& s : ds.samples) {
        out << s.sample_id << ',' << s.class_id << ',' << ds.class_names[static_cast<std::size_t>(s.class_id)] << ','
            << to_string(s.image_type) << ',' << to_string(s.split);
        write_values(out, s.features);
    }
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path)
{
    auto out = open_out(path);
    write_dataset_csv(ds, out);
}

Dataset read_dataset_csv(std::istream& in)
{
    Dataset ds;
    read_rows(in, 'f', [&](const RowMeta& meta, const Vector& values) {
        LabeledSample s;
        s.sample_id = meta.sample_id;
        s.class_id = meta.class_id;
        s.image_type = meta.image_type;
        s.split = meta.split;
        s.features = values;
        if (static_cast<int>(ds.class_names.size()) <= meta.class_id)
            ds.class_names.resize(static_cast<std::size_t>(meta.class_id) + 1);
        auto& name = ds.class_names[static_cast<std::size_t>(meta.class_id)];
        if (name.empty())
            name = meta.class_name;
        else if (name != meta.class_name)
            data_error("class_id " + std::to_string(meta.class_id) + " has conflicting names");
        ds.samples.push_back(std::move(s));
    });
    for (std::size_t c = 0; c < ds.class_names.size(); ++c)
        if (ds.class_names[c].empty())
            ds.class_names[c] = default_class_name(static_cast<int>(c));
    ds.config.num_classes = ds.num_classes();
    ds.config.feature_dim = ds.feature_dim();
    return ds;
}

Dataset read_dataset_csv(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_dataset_csv(in);
}

std::vector<std::size_t> ActivationSet::rows_where(std::optional<ImageType> type, std::optional<Split> split) const
{
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < size(); ++i)
        if ((!type || image_types[i] == *type) && (!split || splits[i] == *split))
            rows.push_back(i);
    return rows;
}

ActivationSet ActivationSet::subset(const std::vector<std::size_t>& rows) const
{
    ActivationSet out;
    out.activations = select_rows(activations, rows);
    for (auto r : rows) {
        out.labels.push_back(labels[r]);
        out.image_types.push_back(image_types[r]);
        out.splits.push_back(splits[r]);
        out.sample_ids.push_back(sample_ids[r]);
        out.class_names.push_back(class_names[r]);
    }
    return out;
}

bool operator==(const ActivationSet& a, const ActivationSet& b)
{
    return a.activations.rows() == b.activations.rows() && a.activations.cols() == b.activations.cols() &&
           a.activations == b.activations && a.labels == b.labels && a.image_types == b.image_types &&
           a.splits == b.splits && a.sample_ids == b.sample_ids && a.class_names == b.class_names;
}

void export_activations(const ActivationSet& set, std::ostream& out)
{
    write_header(out, 'a', set.num_classes());
    for (std::size_t i = 0; i < set.size(); ++i) {
        out << set.sample_ids[i] << ',' << set.labels[i] << ',' << set.class_names[i] << ','
            << to_string(set.image_types[i]) << ',' << to_string(set.splits[i]);
        write_values(out, set.activations.row(static_cast<Eigen::Index>(i)).transpose());
    }
}

void export_activations(const ActivationSet& set, const std::filesystem::path& path)
{
    auto out = open_out(path);
    export_activations(set, out);
}

ActivationSet ingest_activations(std::istream& in)
{
    ActivationSet set;
    std::vector<Vector> rows;
    read_rows(in, 'a', [&](const RowMeta& meta, const Vector& values) {
        set.sample_ids.push_back(meta.sample_id);
        set.labels.push_back(meta.class_id);
        set.class_names.push_back(meta.class_name);
        set.image_types.push_back(meta.image_type);
        set.splits.push_back(meta.split);
        rows.push_back(values);
    });
    const auto k = rows.front().size();
    set.activations.resize(static_cast<Eigen::Index>(rows.size()), k);
    for (std::size_t i = 0; i < rows.size(); ++i)
        set.activations.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set.labels[i] >= k)
            data_error("row " + std::to_string(i + 2) + ": class_id out of range for " + std::to_string(k) +
                       " activation columns");
    return set;
}

ActivationSet ingest_activations(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return ingest_activations(in);
}

}  // namespace genlaw
