#include "relimp/config.hpp"

#include <charconv>
#include <fstream>

#include "relimp/error.hpp"

namespace relimp {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

TomlValue parse_scalar(const std::string& raw, const std::string& path) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        return raw.substr(1, raw.size() - 2);
    }
    if (raw == "true") return true;
    if (raw == "false") return false;

    std::int64_t as_int = 0;
    auto [iptr, iec] = std::from_chars(raw.data(), raw.data() + raw.size(), as_int);
    if (iec == std::errc() && iptr == raw.data() + raw.size()) return as_int;

    double as_double = 0.0;
    auto [dptr, dec] = std::from_chars(raw.data(), raw.data() + raw.size(), as_double);
    if (dec == std::errc() && dptr == raw.data() + raw.size()) return as_double;

    throw Error(errc::invalid_config, "cannot parse value '" + raw + "' in '" + path + "'");
}

} // namespace

std::map<std::string, TomlValue> parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_failure, "cannot open config '" + path + "'");

    std::map<std::string, TomlValue> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[' && body.back() == ']') continue;  // section headers ignored

        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw Error(errc::invalid_config,
                        "line " + std::to_string(line_no) + " of '" + path + "' is not 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw Error(errc::invalid_config,
                        "empty key or value at line " + std::to_string(line_no) + " of '" + path + "'");
        }

        if (value.front() == '[') {
            if (value.back() != ']') {
                throw Error(errc::invalid_config, "unterminated array at line " + std::to_string(line_no));
            }
            std::vector<std::string> items;
            std::string inner = value.substr(1, value.size() - 2);
            std::size_t start = 0;
            while (start < inner.size()) {
                auto comma = inner.find(',', start);
                if (comma == std::string::npos) comma = inner.size();
                std::string item = trim(inner.substr(start, comma - start));
                if (!item.empty()) {
                    if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
                        item = item.substr(1, item.size() - 2);
                    }
                    items.push_back(item);
                }
                start = comma + 1;
            }
            out[key] = std::move(items);
        } else {
            out[key] = parse_scalar(value, path);
        }
    }
    return out;
}

namespace {

std::int64_t as_int(const TomlValue& v, const std::string& key) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw Error(errc::invalid_config, "config key '" + key + "' must be an integer");
}

double as_number(const TomlValue& v, const std::string& key) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw Error(errc::invalid_config, "config key '" + key + "' must be a number");
}

std::vector<std::string> as_string_list(const TomlValue& v, const std::string& key) {
    if (const auto* list = std::get_if<std::vector<std::string>>(&v)) return *list;
    if (const auto* s = std::get_if<std::string>(&v)) return {*s};
    throw Error(errc::invalid_config, "config key '" + key + "' must be a string or array of strings");
}

} // namespace

std::vector<OrthMethod> parse_orth_set(const std::vector<std::string>& tags) {
    std::vector<OrthMethod> out;
    for (const auto& tag : tags) {
        const OrthMethod m = orth_from_string(tag);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

std::vector<ReallocMethod> parse_realloc_set(const std::vector<std::string>& tags) {
    std::vector<ReallocMethod> out;
    for (const auto& tag : tags) {
        const ReallocMethod m = realloc_from_string(tag);
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

void apply_toml(const std::map<std::string, TomlValue>& values, SimulationConfig& config) {
    for (const auto& [key, value] : values) {
        if (key == "p_min") {
            config.p_min = static_cast<int>(as_int(value, key));
        } else if (key == "p_max") {
            config.p_max = static_cast<int>(as_int(value, key));
        } else if (key == "n_ev") {
            config.n_ev = static_cast<int>(as_int(value, key));
        } else if (key == "n_seeds") {
            config.n_seeds = static_cast<int>(as_int(value, key));
        } else if (key == "n_responses") {
            config.n_responses = static_cast<int>(as_int(value, key));
        } else if (key == "r2") {
            config.r_squared = as_number(value, key);
        } else if (key == "seed") {
            config.master_seed = static_cast<std::uint64_t>(as_int(value, key));
        } else if (key == "out") {
            if (const auto* s = std::get_if<std::string>(&value)) {
                config.out_path = *s;
            } else {
                throw Error(errc::invalid_config, "config key 'out' must be a string");
            }
        } else if (key == "orth") {
            config.orth_set = parse_orth_set(as_string_list(value, key));
        } else if (key == "realloc") {
            config.realloc_set = parse_realloc_set(as_string_list(value, key));
        } else if (key == "per_response") {
            if (const auto* b = std::get_if<bool>(&value)) {
                config.per_response = *b;
            } else {
                throw Error(errc::invalid_config, "config key 'per_response' must be a boolean");
            }
        } else if (key == "threads") {
            config.threads = static_cast<int>(as_int(value, key));
        } else if (key == "map_tol") {
            config.map_tol = as_number(value, key);
        } else if (key == "map_max_iter") {
            config.map_max_iter = static_cast<int>(as_int(value, key));
        } else {
            throw Error(errc::invalid_config, "unknown config key '" + key + "'");
        }
    }
}

} // namespace relimp
