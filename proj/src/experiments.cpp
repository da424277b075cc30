// Copyright 2026 The qgeo Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qgeo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "qgeo/csv.hpp"
#include "qgeo/fit.hpp"
#include "qgeo/parallel.hpp"
#include "qgeo/pruning.hpp"
#include "qgeo/qfi.hpp"
#include "qgeo/rng.hpp"
#include "qgeo/serialization.hpp"

namespace qgeo {

using nlohmann::json;

namespace {

constexpr std::string_view kKindNames[] = {
    "dc_vs_p", "spectrum_vs_p",   "variance_vs_p", "variance_vs_n",
    "a_sweep", "gc_zero_scaling", "prune_demo",    "cost_table",
};

const std::set<std::string, std::less<>> &known_keys() {
    static const std::set<std::string, std::less<>> keys = {
        "experiment_kind", "experiment_id",     "scheme",
        "entangler",       "topology",          "initial_layer",
        "n_values",        "p_values",          "a_values",
        "m_values",        "p_per_qubit",       "num_instances",
        "master_seed",     "rank_tolerance",    "output_dir",
        "quantities",      "hamiltonian",       "ising_field",
        "component",       "qng_max_params",    "dimension_samples",
        "histogram_bins",  "p_cap",             "patience",
        "threads",
    };
    return keys;
}

struct LineCol {
    std::size_t line = 1;
    std::size_t column = 1;
};

LineCol position_of(std::string_view text, std::size_t offset) {
    LineCol lc;
    offset = std::min(offset, text.size());
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++lc.line;
            lc.column = 1;
        } else {
            ++lc.column;
        }
    }
    return lc;
}

// Line of the first `"key" :` in the document, or 0 when absent.
std::size_t line_of_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    std::size_t pos = 0;
    while ((pos = text.find(quoted, pos)) != std::string_view::npos) {
        std::size_t after = pos + quoted.size();
        while (after < text.size() &&
               std::isspace(static_cast<unsigned char>(text[after]))) {
            ++after;
        }
        if (after < text.size() && text[after] == ':') {
            return position_of(text, pos).line;
        }
        pos = after;
    }
    return 0;
}

class FieldReader {
  public:
    FieldReader(const json &root, std::string_view text)
        : root_(root), text_(text) {}

    [[noreturn]] void fail(std::string_view key, std::string_view what) const {
        std::string msg = "config: field '" + std::string(key) + "'";
        if (const std::size_t line = line_of_key(text_, key); line > 0) {
            msg += " (line " + std::to_string(line) + ")";
        }
        msg += ": ";
        msg += what;
        throw ConfigError(msg);
    }

    [[nodiscard]] bool has(std::string_view key) const {
        return root_.contains(key);
    }

    [[nodiscard]] const json &get(std::string_view key) const {
        return root_.at(key);
    }

    std::string string(std::string_view key) const {
        const json &v = get(key);
        if (!v.is_string()) {
            fail(key, "expected a string");
        }
        return v.get<std::string>();
    }

    std::int64_t integer(std::string_view key, const json &v) const {
        if (!v.is_number_integer()) {
            fail(key, "expected an integer, got " + v.dump());
        }
        if (v.is_number_unsigned() &&
            v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
            fail(key, "integer out of range");
        }
        return v.get<std::int64_t>();
    }

    int small_int(std::string_view key, const json &v) const {
        const std::int64_t x = integer(key, v);
        if (x < INT32_MIN || x > INT32_MAX) {
            fail(key, "integer out of range");
        }
        return static_cast<int>(x);
    }

    int small_int(std::string_view key) const {
        return small_int(key, get(key));
    }

    double number(std::string_view key, const json &v) const {
        if (!v.is_number()) {
            fail(key, "expected a number, got " + v.dump());
        }
        return v.get<double>();
    }

    double number(std::string_view key) const { return number(key, get(key)); }

    std::uint64_t seed(std::string_view key) const {
        const json &v = get(key);
        if (v.is_number_unsigned()) {
            return v.get<std::uint64_t>();
        }
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(v.get<std::int64_t>());
        }
        fail(key, "expected a non-negative integer");
    }

    template <class T, class Parse>
    std::vector<T> names(std::string_view key, Parse parse) const {
        const json &v = get(key);
        std::vector<T> out;
        auto one = [&](const json &item) {
            if (!item.is_string()) {
                fail(key, "expected a name or a list of names");
            }
            try {
                out.push_back(parse(item.get<std::string>()));
            } catch (const std::invalid_argument &e) {
                fail(key, e.what());
            }
        };
        if (v.is_array()) {
            for (const auto &item : v) {
                one(item);
            }
        } else {
            one(v);
        }
        if (out.empty()) {
            fail(key, "list must not be empty");
        }
        return out;
    }

    template <class T> std::vector<T> int_range(std::string_view key) const {
        const json &v = get(key);
        std::vector<T> out;
        auto narrow = [&](std::int64_t x) {
            if (x < std::numeric_limits<T>::min() ||
                x > std::numeric_limits<T>::max()) {
                fail(key, "integer out of range");
            }
            return static_cast<T>(x);
        };
        if (v.is_array()) {
            for (const auto &item : v) {
                out.push_back(narrow(integer(key, item)));
            }
            return out;
        }
        if (!v.is_object()) {
            fail(key, "expected a list or {\"from\", \"to\", \"step\"}");
        }
        for (const auto &[k, _] : v.items()) {
            if (k != "from" && k != "to" && k != "step") {
                fail(key, "unknown range key '" + k + "'");
            }
        }
        if (!v.contains("from") || !v.contains("to")) {
            fail(key, "range needs \"from\" and \"to\"");
        }
        const std::int64_t from = integer(key, v.at("from"));
        const std::int64_t to = integer(key, v.at("to"));
        const std::int64_t step =
            v.contains("step") ? integer(key, v.at("step")) : 1;
        if (step < 1) {
            fail(key, "range step must be >= 1");
        }
        if (to < from) {
            fail(key, "range \"to\" is below \"from\"");
        }
        if ((to - from) / step > 100000) {
            fail(key, "range is too long");
        }
        for (std::int64_t x = from; x <= to; x += step) {
            out.push_back(narrow(x));
        }
        return out;
    }

    std::vector<double> reals(std::string_view key) const {
        const json &v = get(key);
        if (!v.is_array()) {
            fail(key, "expected a list of numbers");
        }
        std::vector<double> out;
        for (const auto &item : v) {
            out.push_back(number(key, item));
        }
        return out;
    }

  private:
    const json &root_;
    std::string_view text_;
};

template <class T>
bool strictly_increasing(const std::vector<T> &v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<T>()) ==
           v.end();
}

int slots_per_layer(RotationScheme s, int n) {
    return s == RotationScheme::ZXZ ? 3 * n : n;
}

double max_dimension(int n) { return std::ldexp(1.0, n + 1) - 2.0; }

Spectrum checked_spectrum(const QfiMatrix &f) {
    Spectrum s = eigendecompose(f);
    require_psd(s);
    return s;
}

int checked_dimension(const CircuitTemplate &tmpl, int samples,
                      std::uint64_t seed, double tol) {
    int best = 0;
    for (int i = 0; i < samples; ++i) {
        const ParameterVector theta = sample_parameters(
            tmpl, derive_seed(seed, stream::kDimensionSamples, i));
        best = std::max(best, effective_dimension(
                                  checked_spectrum(compute_qfi(tmpl, theta)),
                                  tol));
    }
    return best;
}

std::vector<CsvCell> family_cells(const ExperimentConfig &cfg,
                                  const FamilySpec &f) {
    return {cfg.experiment_id, to_string(f.scheme), to_string(f.entangler),
            to_string(f.topology)};
}

std::vector<std::string> with_family(std::vector<std::string> rest) {
    std::vector<std::string> h = {"experiment_id", "scheme", "entangler",
                                  "topology"};
    h.insert(h.end(), rest.begin(), rest.end());
    return h;
}

void append(std::vector<CsvCell> &row, std::vector<CsvCell> more) {
    for (auto &c : more) {
        row.push_back(std::move(c));
    }
}

CsvCell optional_cell(const std::optional<double> &v) {
    return v ? CsvCell(*v) : CsvCell("");
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::string_view to_string(ExperimentKind k) {
    return kKindNames[static_cast<std::size_t>(k)];
}

ExperimentKind experiment_kind_from_string(std::string_view s) {
    for (std::size_t i = 0; i < std::size(kKindNames); ++i) {
        if (kKindNames[i] == s) {
            return static_cast<ExperimentKind>(i);
        }
    }
    throw std::invalid_argument("unknown experiment kind '" + std::string(s) +
                                "'");
}

std::string FamilySpec::tag() const {
    return std::string(to_string(scheme)) + "_" +
           std::string(to_string(entangler)) + "_" +
           std::string(to_string(topology));
}

std::vector<FamilySpec> ExperimentConfig::families() const {
    std::vector<FamilySpec> out;
    for (auto s : schemes) {
        for (auto e : entanglers) {
            for (auto t : topologies) {
                out.push_back({s, e, t});
            }
        }
    }
    return out;
}

CircuitTemplate ExperimentConfig::make_template(const FamilySpec &f, int n,
                                                int p,
                                                std::uint64_t seed) const {
    return CircuitTemplate::build(n, p, f.scheme, f.entangler, f.topology,
                                  seed)
        .with_initial_layer(initial_layer);
}

Hamiltonian ExperimentConfig::make_hamiltonian(int n) const {
    return hamiltonian == "ising" ? build_ising(n, ising_field) : build_zz(n);
}

int ExperimentConfig::worker_count() const {
    if (threads > 0) {
        return threads;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const LineCol lc = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ConfigError("config: parse error at line " +
                          std::to_string(lc.line) + ", column " +
                          std::to_string(lc.column) + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    const FieldReader r(root, text);
    for (const auto &[key, _] : root.items()) {
        if (!known_keys().contains(key)) {
            r.fail(key, "unknown field");
        }
    }
    if (!r.has("experiment_kind")) {
        throw ConfigError("config: missing required field 'experiment_kind'");
    }

    ExperimentConfig cfg;
    try {
        cfg.kind = experiment_kind_from_string(r.string("experiment_kind"));
    } catch (const std::invalid_argument &e) {
        r.fail("experiment_kind", e.what());
    }
    if (r.has("experiment_id")) {
        cfg.experiment_id = r.string("experiment_id");
    }
    if (r.has("scheme")) {
        cfg.schemes = r.names<RotationScheme>(
            "scheme", [](const std::string &s) { return scheme_from_string(s); });
    }
    if (r.has("entangler")) {
        cfg.entanglers = r.names<GateKind>(
            "entangler",
            [](const std::string &s) { return entangler_from_string(s); });
    }
    if (r.has("topology")) {
        cfg.topologies = r.names<Topology>(
            "topology",
            [](const std::string &s) { return topology_from_string(s); });
    }
    if (r.has("initial_layer")) {
        try {
            cfg.initial_layer =
                initial_layer_from_string(r.string("initial_layer"));
        } catch (const std::invalid_argument &e) {
            r.fail("initial_layer", e.what());
        }
    }
    if (r.has("n_values")) {
        cfg.n_values = r.int_range<int>("n_values");
    }
    if (r.has("p_values")) {
        cfg.p_values = r.int_range<int>("p_values");
    }
    if (r.has("a_values")) {
        cfg.a_values = r.reals("a_values");
    }
    if (r.has("m_values")) {
        cfg.m_values = r.int_range<std::int64_t>("m_values");
    }
    if (r.has("quantities")) {
        cfg.quantities = r.names<Quantity>(
            "quantities",
            [](const std::string &s) { return quantity_from_string(s); });
    }
    if (r.has("p_per_qubit")) {
        cfg.p_per_qubit = r.small_int("p_per_qubit");
    }
    if (r.has("num_instances")) {
        cfg.num_instances = r.small_int("num_instances");
    }
    if (r.has("master_seed")) {
        cfg.master_seed = r.seed("master_seed");
    }
    if (r.has("rank_tolerance")) {
        cfg.rank_tolerance = r.number("rank_tolerance");
    }
    if (r.has("output_dir")) {
        cfg.output_dir = r.string("output_dir");
    }
    if (r.has("hamiltonian")) {
        cfg.hamiltonian = r.string("hamiltonian");
    }
    if (r.has("ising_field")) {
        cfg.ising_field = r.number("ising_field");
    }
    for (auto [key, field] :
         {std::pair{"component", &cfg.component},
          std::pair{"qng_max_params", &cfg.qng_max_params},
          std::pair{"dimension_samples", &cfg.dimension_samples},
          std::pair{"histogram_bins", &cfg.histogram_bins},
          std::pair{"p_cap", &cfg.p_cap}, std::pair{"patience", &cfg.patience},
          std::pair{"threads", &cfg.threads}}) {
        if (r.has(key)) {
            *field = r.small_int(key);
        }
    }

    try {
        validate(cfg);
    } catch (const ConfigError &e) {
        // Re-anchor the message to the line of the offending field.
        const std::string msg = e.what();
        const auto open = msg.find('\'');
        const auto close = msg.find('\'', open + 1);
        if (open != std::string::npos && close != std::string::npos) {
            const std::string key = msg.substr(open + 1, close - open - 1);
            if (root.contains(key) && msg.find("(line") == std::string::npos) {
                r.fail(key, msg.substr(msg.find(": ", close) + 2));
            }
        }
        throw;
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig &cfg) {
    auto bad = [](std::string_view key, std::string_view what) {
        throw ConfigError("config: field '" + std::string(key) +
                          "': " + std::string(what));
    };
    const ExperimentKind k = cfg.kind;
    const bool needs_n = k != ExperimentKind::CostTable;
    const bool needs_p = k == ExperimentKind::DcVsP ||
                         k == ExperimentKind::SpectrumVsP ||
                         k == ExperimentKind::VarianceVsP ||
                         k == ExperimentKind::ASweep ||
                         k == ExperimentKind::PruneDemo;
    const bool needs_h = k == ExperimentKind::VarianceVsP ||
                         k == ExperimentKind::VarianceVsN ||
                         k == ExperimentKind::ASweep;

    if (cfg.experiment_id.empty() ||
        cfg.experiment_id.find_first_of(",\n\r\"") != std::string::npos) {
        bad("experiment_id", "must be non-empty without commas, quotes or "
                             "newlines");
    }
    for (auto s : cfg.schemes) {
        if (s == RotationScheme::Custom) {
            bad("scheme", "custom templates cannot be swept");
        }
    }
    if (cfg.schemes.empty() || cfg.entanglers.empty() ||
        cfg.topologies.empty()) {
        bad("scheme", "family lists must not be empty");
    }
    if (needs_n && cfg.n_values.empty()) {
        bad("n_values", "required for " + std::string(to_string(k)));
    }
    if (!strictly_increasing(cfg.n_values)) {
        bad("n_values", "must be strictly increasing");
    }
    const int n_min = needs_h ? 2 : 1;
    for (int n : cfg.n_values) {
        if (n < n_min || n > kMaxQubits) {
            bad("n_values", "each N must lie in [" + std::to_string(n_min) +
                                ", " + std::to_string(kMaxQubits) + "]");
        }
    }
    if (needs_p && cfg.p_values.empty()) {
        bad("p_values", "required for " + std::string(to_string(k)));
    }
    if (!strictly_increasing(cfg.p_values)) {
        bad("p_values", "must be strictly increasing");
    }
    for (int p : cfg.p_values) {
        if (p < 1) {
            bad("p_values", "each p must be >= 1");
        }
    }
    if (k == ExperimentKind::ASweep && cfg.a_values.empty()) {
        bad("a_values", "required for a_sweep");
    }
    for (double a : cfg.a_values) {
        if (!(a > 0.0 && a <= 1.0)) {
            bad("a_values", "each a must lie in (0, 1]");
        }
    }
    if (k == ExperimentKind::CostTable && cfg.m_values.empty()) {
        bad("m_values", "required for cost_table");
    }
    for (auto m : cfg.m_values) {
        if (m < 1 || m > 1'000'000'000) {
            bad("m_values", "each M must lie in [1, 1e9]");
        }
    }
    if (cfg.p_per_qubit < 1) {
        bad("p_per_qubit", "must be >= 1");
    }
    const int min_instances = needs_h ? 2 : 1;
    if (cfg.num_instances < min_instances) {
        bad("num_instances",
            "must be >= " + std::to_string(min_instances));
    }
    if (!(cfg.rank_tolerance > 0.0 && cfg.rank_tolerance < 1.0)) {
        bad("rank_tolerance", "must lie in (0, 1)");
    }
    if (cfg.output_dir.empty()) {
        bad("output_dir", "must not be empty");
    }
    if (cfg.quantities.empty()) {
        bad("quantities", "must not be empty");
    }
    if (std::set(cfg.quantities.begin(), cfg.quantities.end()).size() !=
        cfg.quantities.size()) {
        bad("quantities", "duplicate entries");
    }
    if (cfg.hamiltonian != "zz" && cfg.hamiltonian != "ising") {
        bad("hamiltonian", "must be \"zz\" or \"ising\"");
    }
    if (!std::isfinite(cfg.ising_field)) {
        bad("ising_field", "must be finite");
    }
    if (cfg.component < 0) {
        bad("component", "must be >= 0");
    }
    if (needs_h) {
        for (auto s : cfg.schemes) {
            for (int n : cfg.n_values) {
                const std::vector<int> ps =
                    k == ExperimentKind::VarianceVsN && cfg.p_values.empty()
                        ? std::vector<int>{cfg.p_per_qubit * n}
                        : cfg.p_values;
                for (int p : ps) {
                    if (cfg.component >= slots_per_layer(s, n) * p) {
                        bad("component", "exceeds the parameter count of "
                                         "the smallest circuit");
                    }
                }
            }
        }
    }
    for (auto [key, v] : {std::pair{"qng_max_params", cfg.qng_max_params},
                          std::pair{"dimension_samples", cfg.dimension_samples},
                          std::pair{"histogram_bins", cfg.histogram_bins},
                          std::pair{"p_cap", cfg.p_cap},
                          std::pair{"patience", cfg.patience}}) {
        if (v < 1) {
            bad(key, "must be >= 1");
        }
    }
    if (cfg.threads < 0) {
        bad("threads", "must be >= 0");
    }
}

json to_json(const ExperimentConfig &cfg) {
    json j;
    j["experiment_kind"] = to_string(cfg.kind);
    j["experiment_id"] = cfg.experiment_id;
    json schemes = json::array();
    for (auto s : cfg.schemes) {
        schemes.push_back(to_string(s));
    }
    json ents = json::array();
    for (auto e : cfg.entanglers) {
        ents.push_back(to_string(e));
    }
    json tops = json::array();
    for (auto t : cfg.topologies) {
        tops.push_back(to_string(t));
    }
    json qs = json::array();
    for (auto q : cfg.quantities) {
        qs.push_back(to_string(q));
    }
    j["scheme"] = schemes;
    j["entangler"] = ents;
    j["topology"] = tops;
    j["initial_layer"] = to_string(cfg.initial_layer);
    j["n_values"] = cfg.n_values;
    j["p_values"] = cfg.p_values;
    j["a_values"] = cfg.a_values;
    j["m_values"] = cfg.m_values;
    j["p_per_qubit"] = cfg.p_per_qubit;
    j["num_instances"] = cfg.num_instances;
    j["master_seed"] = cfg.master_seed;
    j["rank_tolerance"] = cfg.rank_tolerance;
    j["output_dir"] = cfg.output_dir;
    j["quantities"] = qs;
    j["hamiltonian"] = cfg.hamiltonian;
    j["ising_field"] = cfg.ising_field;
    j["component"] = cfg.component;
    j["qng_max_params"] = cfg.qng_max_params;
    j["dimension_samples"] = cfg.dimension_samples;
    j["histogram_bins"] = cfg.histogram_bins;
    j["p_cap"] = cfg.p_cap;
    j["patience"] = cfg.patience;
    j["threads"] = cfg.threads;
    return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_hash(const ExperimentConfig &cfg) {
    json j = to_json(cfg);
    j.erase("output_dir");
    j.erase("threads");
    return fnv1a64(j.dump());
}

void RunOutput::add(std::string name, std::string contents) {
    files.push_back({std::move(name), std::move(contents)});
}

const OutputFile &RunOutput::file(std::string_view name) const {
    for (const auto &f : files) {
        if (f.name == name) {
            return f;
        }
    }
    throw std::out_of_range("no output file named '" + std::string(name) +
                            "'");
}

RunOutput run_dc_vs_p(const ExperimentConfig &cfg) {
    validate(cfg);
    CsvTable rows(with_family({"N", "p", "M", "D_C", "R", "samples_agree"}));
    CsvTable summary(with_family({"N", "b", "D_C_bound", "max_D_C",
                                  "saturation_p", "R_C", "predicted_pc",
                                  "fit_slope", "expected_slope"}));
    const std::uint64_t structure = instance_structure_seed(cfg.master_seed, 0);
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            const int np = static_cast<int>(cfg.p_values.size());
            std::vector<int> dc(np), m(np);
            std::vector<char> agree(np);
            parallel_for(np, cfg.worker_count(), [&](int i) {
                const CircuitTemplate t =
                    cfg.make_template(fam, n, cfg.p_values[i], structure);
                int best = 0;
                bool same = true;
                for (int s = 0; s < cfg.dimension_samples; ++s) {
                    const ParameterVector theta = sample_parameters(
                        t, derive_seed(cfg.master_seed,
                                       stream::kDimensionSamples, s));
                    const int g = effective_dimension(
                        checked_spectrum(compute_qfi(t, theta)),
                        cfg.rank_tolerance);
                    same = same && (s == 0 || g == best);
                    best = std::max(best, g);
                }
                dc[i] = best;
                m[i] = t.parameter_count();
                agree[i] = same;
            });

            const int b = slots_per_layer(fam.scheme, n);
            const double bound = max_dimension(n);
            std::optional<int> sat;
            for (int i = 0; i < np; ++i) {
                auto row = family_cells(cfg, fam);
                append(row, {n, cfg.p_values[i], m[i], dc[i],
                             redundancy(m[i], dc[i]), agree[i] != 0});
                rows.add_row(std::move(row));
                if (!sat && dc[i] == static_cast<int>(bound)) {
                    sat = i;
                }
            }

            // Linear regime: scanned depths strictly before saturation.
            const int pre = sat ? *sat : np;
            std::optional<double> r_c, predicted, slope, expected;
            if (sat && pre > 0) {
                r_c = redundancy(m[pre - 1], dc[pre - 1]);
                predicted = predict_transition_depth(*r_c, n, b);
            }
            if (pre >= 2) {
                std::vector<double> x, y;
                for (int i = 0; i < pre; ++i) {
                    x.push_back(cfg.p_values[i]);
                    y.push_back(dc[i]);
                }
                slope = fit_polynomial(x, y, 1).coefficients[1];
                const double r_lin =
                    r_c ? *r_c : redundancy(m[pre - 1], dc[pre - 1]);
                expected = b * (1.0 - r_lin);
            }
            auto row = family_cells(cfg, fam);
            append(row, {n, b, bound, *std::max_element(dc.begin(), dc.end()),
                         sat ? CsvCell(cfg.p_values[*sat]) : CsvCell(""),
                         optional_cell(r_c), optional_cell(predicted),
                         optional_cell(slope), optional_cell(expected)});
            summary.add_row(std::move(row));
        }
    }
    RunOutput out;
    out.add("dc_vs_p.csv", rows.str());
    out.add("dc_summary.csv", summary.str());
    return out;
}

RunOutput run_spectrum_vs_p(const ExperimentConfig &cfg) {
    validate(cfg);
    CsvTable rows(with_family(
        {"N", "p", "instance", "G_C", "var_log_nonzero", "min_nonzero"}));
    CsvTable summary(with_family(
        {"N", "p", "instances", "mean_G_C", "mean_var_log_nonzero",
         "mean_min_nonzero", "mean_log10_min_nonzero", "histogram_file"}));
    RunOutput out;
    const int count = cfg.num_instances;
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            for (int p : cfg.p_values) {
                std::vector<int> gc(count);
                std::vector<double> var_log(count), min_nz(count);
                std::vector<std::vector<double>> logs(count);
                parallel_for(count, cfg.worker_count(), [&](int i) {
                    const CircuitTemplate t = cfg.make_template(
                        fam, n, p, instance_structure_seed(cfg.master_seed, i));
                    const ParameterVector theta = sample_parameters(
                        t, instance_parameter_seed(cfg.master_seed, i));
                    const Spectrum spec =
                        checked_spectrum(compute_qfi(t, theta));
                    gc[i] = effective_dimension(spec, cfg.rank_tolerance);
                    if (gc[i] == 0) {
                        var_log[i] = std::nan("");
                        min_nz[i] = std::nan("");
                        return;
                    }
                    const SpectrumStats st = spectrum_stats(
                        spec, cfg.rank_tolerance, cfg.histogram_bins);
                    var_log[i] = st.var_log_nonzero;
                    min_nz[i] = st.min_nonzero;
                    for (double v :
                         nonzero_eigenvalues(spec, cfg.rank_tolerance)) {
                        logs[i].push_back(std::log10(v));
                    }
                });

                double sum_gc = 0.0, sum_var = 0.0, sum_min = 0.0,
                       sum_lmin = 0.0;
                int valid = 0;
                std::vector<double> pooled;
                for (int i = 0; i < count; ++i) {
                    auto row = family_cells(cfg, fam);
                    const bool ok = gc[i] > 0;
                    append(row, {n, p, i, gc[i],
                                 ok ? CsvCell(var_log[i]) : CsvCell(""),
                                 ok ? CsvCell(min_nz[i]) : CsvCell("")});
                    rows.add_row(std::move(row));
                    sum_gc += gc[i];
                    if (ok) {
                        ++valid;
                        sum_var += var_log[i];
                        sum_min += min_nz[i];
                        sum_lmin += std::log10(min_nz[i]);
                    }
                    pooled.insert(pooled.end(), logs[i].begin(),
                                  logs[i].end());
                }

                const std::string hist_name = "hist_" + fam.tag() + "_N" +
                                              std::to_string(n) + "_p" +
                                              std::to_string(p) + ".csv";
                const Histogram h = make_histogram(pooled, cfg.histogram_bins);
                CsvTable hist({"log10_lo", "log10_hi", "count"});
                for (std::size_t b = 0; b < h.counts.size(); ++b) {
                    hist.add_row({h.bin_edges[b], h.bin_edges[b + 1],
                                  h.counts[b]});
                }
                out.add(hist_name, hist.str());

                auto row = family_cells(cfg, fam);
                auto mean_or_empty = [&](double s) {
                    return valid > 0 ? CsvCell(s / valid) : CsvCell("");
                };
                append(row, {n, p, count, sum_gc / count,
                             mean_or_empty(sum_var), mean_or_empty(sum_min),
                             mean_or_empty(sum_lmin), hist_name});
                summary.add_row(std::move(row));
            }
        }
    }
    out.files.insert(out.files.begin(),
                     {{"spectrum_vs_p.csv", rows.str()},
                      {"spectrum_summary.csv", summary.str()}});
    return out;
}

RunOutput run_variance(const ExperimentConfig &cfg) {
    validate(cfg);
    if (cfg.kind != ExperimentKind::VarianceVsP &&
        cfg.kind != ExperimentKind::VarianceVsN) {
        throw ConfigError("config: run_variance needs a variance_vs_p or "
                          "variance_vs_n config");
    }
    CsvTable rows(with_family({"N", "p", "M", "hamiltonian", "quantity",
                               "count", "mean", "variance",
                               "jackknife_stderr"}));
    const bool want_qng =
        std::find(cfg.quantities.begin(), cfg.quantities.end(),
                  Quantity::NaturalGradient) != cfg.quantities.end();
    const int count = cfg.num_instances;
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            const std::vector<int> ps =
                cfg.kind == ExperimentKind::VarianceVsN && cfg.p_values.empty()
                    ? std::vector<int>{cfg.p_per_qubit * n}
                    : cfg.p_values;
            const Hamiltonian h = cfg.make_hamiltonian(n);
            for (int p : ps) {
                const int m = slots_per_layer(fam.scheme, n) * p;
                const bool qng = want_qng && m <= cfg.qng_max_params;
                std::vector<InstanceSample> samples(count);
                parallel_for(count, cfg.worker_count(), [&](int i) {
                    const CircuitTemplate t = cfg.make_template(
                        fam, n, p, instance_structure_seed(cfg.master_seed, i));
                    const ParameterVector theta = sample_parameters(
                        t, instance_parameter_seed(cfg.master_seed, i));
                    samples[i] = evaluate_instance(t, theta, h, cfg.component,
                                                   {qng, false},
                                                   cfg.rank_tolerance);
                });
                for (Quantity q : cfg.quantities) {
                    if (q == Quantity::NaturalGradient && !qng) {
                        continue;
                    }
                    std::vector<double> values(count);
                    for (int i = 0; i < count; ++i) {
                        values[i] = q == Quantity::Gradient ? samples[i].gradient
                                    : q == Quantity::NaturalGradient
                                        ? samples[i].natural_gradient
                                        : samples[i].energy;
                    }
                    const EnsembleResult r = summarize(std::move(values));
                    auto row = family_cells(cfg, fam);
                    append(row, {n, p, m, cfg.hamiltonian, to_string(q),
                                 r.stats.count(), r.stats.mean(),
                                 r.stats.variance(), r.jackknife_stderr});
                    rows.add_row(std::move(row));
                }
            }
        }
    }
    RunOutput out;
    out.add("variance.csv", rows.str());
    return out;
}

RunOutput run_a_sweep(const ExperimentConfig &cfg) {
    validate(cfg);
    CsvTable rows(with_family({"N", "p", "M", "a", "mean_G_C", "D_C",
                               "mean_grad", "var_grad",
                               "jackknife_stderr"}));
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            const Hamiltonian h = cfg.make_hamiltonian(n);
            for (int p : cfg.p_values) {
                const CircuitFamily family{fam.scheme, fam.entangler,
                                           fam.topology, n, p};
                if (cfg.initial_layer != InitialLayer::SqrtHadamard) {
                    throw ConfigError("config: field 'initial_layer': a_sweep "
                                      "supports only sqrt_hadamard");
                }
                const std::vector<ASweepRow> sweep = a_sweep(
                    family, cfg.a_values, h, cfg.num_instances,
                    cfg.master_seed, cfg.component, cfg.rank_tolerance,
                    cfg.worker_count());
                const CircuitTemplate t0 = cfg.make_template(
                    fam, n, p, instance_structure_seed(cfg.master_seed, 0));
                const int dc = checked_dimension(t0, cfg.dimension_samples,
                                                 cfg.master_seed,
                                                 cfg.rank_tolerance);
                for (const ASweepRow &s : sweep) {
                    auto row = family_cells(cfg, fam);
                    append(row, {n, p, t0.parameter_count(), s.a,
                                 s.mean_effective_dimension, dc,
                                 s.gradient.stats.mean(),
                                 s.gradient.stats.variance(),
                                 s.gradient.jackknife_stderr});
                    rows.add_row(std::move(row));
                }
            }
        }
    }
    RunOutput out;
    out.add("a_sweep.csv", rows.str());
    return out;
}

RunOutput run_gc_zero_scaling(const ExperimentConfig &cfg) {
    validate(cfg);
    struct Item {
        FamilySpec fam;
        int n;
        int best = 0;
        int p_at_best = 0;
        int scanned = 0;
    };
    std::vector<Item> items;
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            items.push_back({fam, n});
        }
    }
    const std::uint64_t structure = instance_structure_seed(cfg.master_seed, 0);
    parallel_for(static_cast<int>(items.size()), cfg.worker_count(),
                 [&](int k) {
                     Item &it = items[k];
                     int stall = 0;
                     for (int p = 1; p <= cfg.p_cap && stall < cfg.patience;
                          ++p) {
                         const CircuitTemplate t =
                             cfg.make_template(it.fam, it.n, p, structure);
                         const int g = effective_dimension(
                             checked_spectrum(
                                 compute_qfi(t, zero_parameters(t))),
                             cfg.rank_tolerance);
                         it.scanned = p;
                         if (g > it.best) {
                             it.best = g;
                             it.p_at_best = p;
                             stall = 0;
                         } else {
                             ++stall;
                         }
                     }
                 });
    CsvTable rows(with_family(
        {"N", "G_C_zero_max", "p_at_max", "p_scanned", "D_C_bound"}));
    for (const Item &it : items) {
        auto row = family_cells(cfg, it.fam);
        append(row, {it.n, it.best, it.p_at_best, it.scanned,
                     max_dimension(it.n)});
        rows.add_row(std::move(row));
    }
    RunOutput out;
    out.add("gc_zero.csv", rows.str());
    return out;
}

RunOutput run_prune_demo(const ExperimentConfig &cfg) {
    validate(cfg);
    struct Item {
        FamilySpec fam;
        int n = 0;
        int p = 0;
        int instance = 0;
        PruneResult result{CircuitTemplate::build(1, 1, RotationScheme::FixedZ,
                                                  GateKind::CNOT,
                                                  Topology::Chain, 0),
                           {},
                           {}};
        CircuitTemplate original = result.pruned;
        PruneVerification verify;
        int fresh_gc = 0;
        int removable_layers = 0;
    };
    std::vector<Item> items;
    for (const FamilySpec &fam : cfg.families()) {
        for (int n : cfg.n_values) {
            for (int p : cfg.p_values) {
                for (int i = 0; i < cfg.num_instances; ++i) {
                    Item it;
                    it.fam = fam;
                    it.n = n;
                    it.p = p;
                    it.instance = i;
                    items.push_back(std::move(it));
                }
            }
        }
    }
    parallel_for(static_cast<int>(items.size()), cfg.worker_count(),
                 [&](int k) {
                     Item &it = items[k];
                     it.original = cfg.make_template(
                         it.fam, it.n, it.p,
                         instance_structure_seed(cfg.master_seed,
                                                 it.instance));
                     const ParameterVector theta = sample_parameters(
                         it.original,
                         instance_parameter_seed(cfg.master_seed, it.instance));
                     it.result = prune(it.original, theta, cfg.rank_tolerance);
                     const std::uint64_t check = derive_seed(
                         cfg.master_seed, stream::kPruneCheck, it.instance);
                     it.verify =
                         verify_prune(it.original, it.result.pruned,
                                      cfg.dimension_samples, check,
                                      cfg.rank_tolerance);
                     if (it.result.pruned.parameter_count() > 0) {
                         const ParameterVector fresh =
                             sample_parameters(it.result.pruned, check);
                         it.fresh_gc = effective_dimension(
                             checked_spectrum(
                                 compute_qfi(it.result.pruned, fresh)),
                             cfg.rank_tolerance);
                     }
                     it.removable_layers =
                         layer_compaction_report(it.result.pruned)
                             .removable_layers;
                 });

    CsvTable rows(with_family(
        {"N", "p", "instance", "initial_M", "final_M", "removed",
         "D_C_before", "D_C_after", "dc_original", "dc_pruned", "verify_ok",
         "fresh_G_C", "fresh_full_rank", "removable_layers", "iterations",
         "rejected_candidates", "detail_file"}));
    RunOutput out;
    for (const Item &it : items) {
        const PruneLog &log = it.result.log;
        const std::string stem = "prune_" + it.fam.tag() + "_N" +
                                 std::to_string(it.n) + "_p" +
                                 std::to_string(it.p) + "_i" +
                                 std::to_string(it.instance);
        auto row = family_cells(cfg, it.fam);
        append(row, {it.n, it.p, it.instance, log.initial_M, log.final_M,
                     log.initial_M - log.final_M, log.D_C_before,
                     log.D_C_after, it.verify.dc_original, it.verify.dc_pruned,
                     it.verify.ok, it.fresh_gc,
                     it.fresh_gc == it.result.pruned.parameter_count(),
                     it.removable_layers, log.iterations,
                     log.rejected_candidates, stem + ".json"});
        rows.add_row(std::move(row));

        const std::string before = render_grid(it.original);
        const std::string after = render_grid(it.result.pruned);
        json detail;
        detail["log"] = to_json(log);
        detail["original"] = to_json(it.original);
        detail["pruned"] = to_json(it.result.pruned);
        detail["removable_layers"] = it.removable_layers;
        detail["grid_before"] = before;
        detail["grid_after"] = after;
        out.add(stem + ".json", detail.dump(2) + "\n");
        out.add(stem + "_grid.txt",
                "before\n" + before + "after\n" + after);
    }
    out.files.insert(out.files.begin(), {"prune.csv", rows.str()});
    return out;
}

RunOutput run_cost_table(const ExperimentConfig &cfg) {
    validate(cfg);
    CsvTable rows({"M", "shift_rule_fidelities", "hadamard_tests",
                   "pauli_measurements"});
    for (std::int64_t m : cfg.m_values) {
        const MeasurementCosts c = measurement_costs(m);
        rows.add_row({m, c.shift_rule_fidelities, c.hadamard_tests,
                      c.pauli_measurements});
    }
    RunOutput out;
    out.add("costs.csv", rows.str());
    return out;
}

RunOutput run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.kind) {
    case ExperimentKind::DcVsP:
        return run_dc_vs_p(cfg);
    case ExperimentKind::SpectrumVsP:
        return run_spectrum_vs_p(cfg);
    case ExperimentKind::VarianceVsP:
    case ExperimentKind::VarianceVsN:
        return run_variance(cfg);
    case ExperimentKind::ASweep:
        return run_a_sweep(cfg);
    case ExperimentKind::GcZeroScaling:
        return run_gc_zero_scaling(cfg);
    case ExperimentKind::PruneDemo:
        return run_prune_demo(cfg);
    case ExperimentKind::CostTable:
        return run_cost_table(cfg);
    }
    throw ConfigError("config: unhandled experiment kind");
}

json make_manifest(const ExperimentConfig &cfg, const RunOutput &out) {
    json files = json::array();
    for (const auto &f : out.files) {
        files.push_back({{"name", f.name},
                         {"bytes", f.contents.size()},
                         {"fnv1a64", hex64(fnv1a64(f.contents))}});
    }
    json canonical = to_json(cfg);
    canonical.erase("output_dir");
    canonical.erase("threads");
    return {{"tool", "qgeo"},
            {"version", kToolVersion},
            {"experiment_kind", to_string(cfg.kind)},
            {"experiment_id", cfg.experiment_id},
            {"config_hash", hex64(config_hash(cfg))},
            {"config", canonical},
            {"files", files}};
}

void write_run(const ExperimentConfig &cfg, const RunOutput &out,
               const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string &name, const std::string &contents) {
        std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write '" + (dir / name).string() +
                                     "'");
        }
        f << contents;
    };
    for (const auto &file : out.files) {
        write(file.name, file.contents);
    }
    write("manifest.json", make_manifest(cfg, out).dump(2) + "\n");
}

} // namespace qgeo
