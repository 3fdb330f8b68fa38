#include "cresa/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "cresa/models.hpp"

namespace cresa {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct Section {
    std::string name;
    std::map<std::string, std::string> values;
};

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
    std::vector<Section> sections;
    std::stringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section");
            sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        if (sections.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": key outside a section");
        sections.back().values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing text");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const auto u = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing text");
        return u;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

DistributionSpec parse_distribution(const Section& sec, const std::string& label) {
    const auto get = [&](const char* key) -> std::optional<std::string> {
        const auto it = sec.values.find(key);
        if (it == sec.values.end()) return std::nullopt;
        return it->second;
    };
    const auto need = [&](const char* key) {
        const auto v = get(key);
        if (!v) throw ConfigError("config: [" + sec.name + "] missing '" + key + "'");
        return *v;
    };
    const auto family = need("family");
    try {
        if (family == "uniform")
            return DistributionSpec::uniform(to_double(need("a"), "a"), to_double(need("b"), "b"),
                                             label);
        if (family == "normal")
            return DistributionSpec::normal(to_double(need("mean"), "mean"),
                                            to_double(need("sd"), "sd"), label);
        if (family == "exponential")
            return DistributionSpec::exponential(to_double(need("rate"), "rate"), label);
        if (family == "lognormal") {
            if (get("error_factor"))
                return lognormal_from_mean_ef(to_double(need("mean"), "mean"),
                                              to_double(need("error_factor"), "error_factor"),
                                              label);
            return DistributionSpec::lognormal(to_double(need("log_mean"), "log_mean"),
                                               to_double(need("log_sd"), "log_sd"), label);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config: [" + sec.name + "]: " + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError("config: [" + sec.name + "]: " + e.what());
    }
    throw ConfigError("config: unknown family '" + family + "' in [" + sec.name + "]");
}

}  // namespace

bool ExperimentConfig::has_method(std::string_view name) const {
    return std::find(methods.begin(), methods.end(), name) != methods.end();
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
    ExperimentConfig config;
    for (const auto& sec : parse_sections(text, origin)) {
        if (sec.name == "experiment") {
            for (const auto& [key, value] : sec.values) {
                if (key == "model") config.model = value;
                else if (key == "samples") config.sample_size = to_u64(value, key);
                else if (key == "seed") config.seed = to_u64(value, key);
                else if (key == "methods") config.methods = split_list(value);
                else throw ConfigError("config: unknown key '" + key + "' in [experiment]");
            }
        } else if (sec.name == "grid") {
            for (const auto& [key, value] : sec.values) {
                if (key == "m") config.grid.m = to_u64(value, key);
                else if (key == "i") config.grid.grid_i = to_u64(value, key);
                else if (key == "j") config.grid.grid_j = to_u64(value, key);
                else throw ConfigError("config: unknown key '" + key + "' in [grid]");
            }
        } else if (sec.name == "sobol") {
            for (const auto& [key, value] : sec.values) {
                if (key == "samples") config.sobol_sample_size = to_u64(value, key);
                else throw ConfigError("config: unknown key '" + key + "' in [sobol]");
            }
        } else if (sec.name == "delta") {
            for (const auto& [key, value] : sec.values) {
                if (key == "partitions") config.delta_partitions = to_u64(value, key);
                else if (key == "y_bins") config.delta_y_bins = to_u64(value, key);
                else throw ConfigError("config: unknown key '" + key + "' in [delta]");
            }
        } else if (sec.name == "shannon_mi") {
            for (const auto& [key, value] : sec.values) {
                if (key == "bins") config.mi_bins = to_u64(value, key);
                else throw ConfigError("config: unknown key '" + key + "' in [shannon_mi]");
            }
        } else if (sec.name == "cost") {
            CostSpec cost;
            for (const auto& [key, value] : sec.values) {
                if (key == "u_reference") cost.u_reference = to_double(value, key);
                else if (key == "base_cost") cost.base_cost = to_double(value, key);
                else if (key == "alpha") cost.alpha = to_double(value, key);
                else if (key == "budget") cost.budget = to_double(value, key);
                else if (key == "framework") {
                    if (value == "cre") cost.framework = UncertaintyFramework::kCre;
                    else if (value == "variance") cost.framework = UncertaintyFramework::kVariance;
                    else throw ConfigError("config: framework must be 'cre' or 'variance'");
                } else {
                    throw ConfigError("config: unknown key '" + key + "' in [cost]");
                }
            }
            if (!(cost.u_reference > 0.0 && cost.base_cost > 0.0 && cost.alpha > 0.0))
                throw ConfigError("config: [cost] values must be positive");
            config.cost = cost;
        } else if (sec.name == "converge") {
            for (const auto& [key, value] : sec.values) {
                if (key == "quantity") config.converge.quantity = value;
                else if (key == "condition_on") config.converge.condition_on = split_list(value);
                else if (key == "repeats") config.converge.repeats = to_u64(value, key);
                else if (key == "sizes") {
                    config.converge.sizes.clear();
                    for (const auto& item : split_list(value))
                        config.converge.sizes.push_back(to_u64(item, key));
                } else {
                    throw ConfigError("config: unknown key '" + key + "' in [converge]");
                }
            }
        } else if (sec.name == "output") {
            for (const auto& [key, value] : sec.values) {
                if (key == "dir") config.output_dir = value;
                else if (key == "basename") config.output_basename = value;
                else throw ConfigError("config: unknown key '" + key + "' in [output]");
            }
        } else if (sec.name.rfind("input.", 0) == 0) {
            const std::string label = sec.name.substr(6);
            if (label.empty()) throw ConfigError("config: input section needs a label");
            config.inputs.push_back({label, parse_distribution(sec, label)});
        } else {
            throw ConfigError("config: unknown section [" + sec.name + "]");
        }
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path);
}

void validate_config(const ExperimentConfig& config) {
    const ModelFn* model = find_model(config.model);
    if (!model) throw ConfigError("config: unknown model '" + config.model + "'");
    if (config.inputs.size() != model->arity)
        throw ConfigError("config: model '" + config.model + "' expects " +
                          std::to_string(model->arity) + " inputs, got " +
                          std::to_string(config.inputs.size()));
    if (config.methods.empty()) throw ConfigError("config: no methods requested");
    static const std::vector<std::string> known = {"kappa", "kappa_pairs", "sobol", "delta",
                                                   "shannon_mi"};
    for (const auto& m : config.methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw ConfigError("config: unknown method '" + m + "'");
    if (config.sample_size < 2) throw ConfigError("config: samples must be >= 2");
    if (config.grid.m < 2 || config.grid.m > config.sample_size)
        throw ConfigError("config: grid m must satisfy 2 <= m <= samples");
    if (config.grid.grid_i < 2 || config.grid.grid_j < 2 ||
        config.grid.grid_i * config.grid.grid_j > config.sample_size)
        throw ConfigError("config: grid I, J must satisfy 2 <= I,J and I*J <= samples");
    if (config.cost && !config.has_method("kappa") && !config.has_method("kappa_pairs"))
        throw ConfigError("config: the cost section needs the kappa method");
}

}  // namespace cresa
