#include "nomaee/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "nomaee/csv.hpp"
#include "nomaee/errors.hpp"
#include "nomaee/units.hpp"

namespace nomaee {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

struct Block {
    std::string name;
    int line = 0;
    std::map<std::string, KeyValue> entries;
};

// One diagnostic shape everywhere: "<file>:<line>: <message>".
[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    std::ostringstream os;
    os << file << ":" << line << ": " << msg;
    throw config_error(os.str());
}

std::vector<Block> tokenize(const std::string& text, const std::string& file) {
    std::vector<Block> blocks;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool inside = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (!inside) {
            if (line.size() >= 2 && line.back() == '{') {
                const std::string name = trim(line.substr(0, line.size() - 1));
                if (name.empty()) fail(file, line_no, "block name missing before '{'");
                blocks.push_back(Block{name, line_no, {}});
                inside = true;
            } else {
                fail(file, line_no, "expected a block header 'name {'");
            }
            continue;
        }
        if (line == "}") {
            inside = false;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(file, line_no, "expected 'key = value' inside block '" + blocks.back().name + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(file, line_no, "malformed 'key = value' line");
        auto [it, fresh] = blocks.back().entries.emplace(key, KeyValue{value, line_no});
        if (!fresh)
            fail(file, line_no,
                 "duplicate key '" + key + "' in block '" + blocks.back().name + "'");
    }
    if (inside) fail(file, line_no, "unterminated block '" + blocks.back().name + "'");
    return blocks;
}

class BlockReader {
public:
    BlockReader(Block& block, const std::string& file) : block_(block), file_(file) {}

    bool has(const std::string& key) const { return block_.entries.count(key) != 0; }

    double number(const std::string& key) {
        const KeyValue& kv = take(key);
        return parse_double(kv.value, kv.line, key);
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::uint64_t integer(const std::string& key) {
        const KeyValue& kv = take(key);
        const double v = parse_double(kv.value, kv.line, key);
        if (v < 0 || v != std::floor(v) || v > 1.8e19)
            fail(file_, kv.line, "key '" + key + "' must be a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }

    std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) {
        return has(key) ? integer(key) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const KeyValue& kv = take(key);
        if (kv.value == "true") return true;
        if (kv.value == "false") return false;
        fail(file_, kv.line, "key '" + key + "' must be 'true' or 'false'");
    }

    std::string text(const std::string& key) { return take(key).value; }

    std::vector<double> number_list(const std::string& key) {
        const KeyValue& kv = take(key);
        std::vector<double> out;
        std::stringstream ss(kv.value);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse_double(trim(item), kv.line, key));
        if (out.empty()) fail(file_, kv.line, "key '" + key + "' has an empty list");
        return out;
    }

    int line_of(const std::string& key) const {
        auto it = block_.entries.find(key);
        return it == block_.entries.end() ? block_.line : it->second.line;
    }

    void require(const std::string& key) const {
        if (!has(key))
            fail(file_, block_.line,
                 "block '" + block_.name + "' is missing required key '" + key + "'");
    }

    void require_one_of(const std::string& a, const std::string& b) const {
        if (has(a) == has(b))
            fail(file_, block_.line,
                 "block '" + block_.name + "' needs exactly one of '" + a + "' / '" + b + "'");
    }

    void finish() const {
        for (const auto& [key, kv] : block_.entries)
            if (!kv.used)
                fail(file_, kv.line,
                     "unknown key '" + key + "' in block '" + block_.name + "'");
    }

    int block_line() const { return block_.line; }

private:
    const KeyValue& take(const std::string& key) {
        auto it = block_.entries.find(key);
        if (it == block_.entries.end())
            fail(file_, block_.line,
                 "block '" + block_.name + "' is missing required key '" + key + "'");
        it->second.used = true;
        return it->second;
    }

    double parse_double(const std::string& s, int line, const std::string& key) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            fail(file_, line, "key '" + key + "' has a malformed number '" + s + "'");
        }
    }

    Block& block_;
    const std::string& file_;
};

} // namespace

ScenarioConfig parse_config_text(const std::string& text, const std::string& name) {
    std::vector<Block> blocks = tokenize(text, name);

    ScenarioConfig cfg;
    cfg.source_path = name;
    bool saw_system = false;

    for (Block& block : blocks) {
        BlockReader r(block, name);
        if (block.name == "system") {
            if (saw_system) fail(name, block.line, "duplicate 'system' block");
            saw_system = true;
            r.require("slot_duration_s");
            r.require("bandwidth_hz");
            r.require_one_of("noise_density_dbm_per_hz", "noise_power_w");
            r.require_one_of("peak_power_dbm", "peak_power_w");
            cfg.system.slot_duration_s = r.number("slot_duration_s");
            cfg.system.bandwidth_hz = r.number("bandwidth_hz");
            cfg.system.noise_power_w =
                r.has("noise_power_w")
                    ? r.number("noise_power_w")
                    : noise_power_from_density(r.number("noise_density_dbm_per_hz"),
                                               cfg.system.bandwidth_hz);
            cfg.system.peak_power_w = r.has("peak_power_w")
                                          ? r.number("peak_power_w")
                                          : dbm_to_watts(r.number("peak_power_dbm"));
        } else if (block.name == "user") {
            UserProfile u;
            r.require("distance_m");
            r.require("arrival_prob");
            r.require("mean_burst_bits");
            r.require("delay_tolerance");
            r.require_one_of("circuit_power_dbm", "circuit_power_w");
            r.require_one_of("delay_bound_ms", "delay_bound_s");
            u.distance_m = r.number("distance_m");
            u.path_loss_exp = r.number_or("path_loss_exp", 4.0);
            u.arrival_prob = r.number("arrival_prob");
            u.mean_burst_bits = r.number("mean_burst_bits");
            u.circuit_power_w = r.has("circuit_power_w")
                                    ? r.number("circuit_power_w")
                                    : dbm_to_watts(r.number("circuit_power_dbm"));
            u.delay_bound_s = r.has("delay_bound_s") ? r.number("delay_bound_s")
                                                     : r.number("delay_bound_ms") * 1e-3;
            u.delay_tolerance = r.number("delay_tolerance");
            cfg.users.push_back(u);
        } else if (block.name == "optimizer") {
            OptimizerOptions& o = cfg.optimizer;
            o.dinkelbach_rel_tol = r.number_or("dinkelbach_rel_tol", o.dinkelbach_rel_tol);
            o.dinkelbach_max_iter =
                static_cast<int>(r.integer_or("dinkelbach_max_iter", o.dinkelbach_max_iter));
            o.dual_max_iter = static_cast<int>(r.integer_or("dual_max_iter", o.dual_max_iter));
            o.power_rel_tol = r.number_or("power_rel_tol", o.power_rel_tol);
            o.golden_rel_tol = r.number_or("golden_rel_tol", o.golden_rel_tol);
            o.subgradient_step0 = r.number_or("subgradient_step0", o.subgradient_step0);
            o.flip_subgradient_sign =
                r.boolean_or("subgradient_flip_sign", o.flip_subgradient_sign);
            o.effcap.quad.rel_tol = r.number_or("effcap_rel_tol", o.effcap.quad.rel_tol);
            o.effcap.quad.max_subintervals = static_cast<int>(
                r.integer_or("effcap_max_subintervals", o.effcap.quad.max_subintervals));
            if (r.has("circuitry")) {
                const std::string mode = r.text("circuitry");
                if (mode == "two_mode")
                    cfg.circuitry = CircuitryMode::two_mode;
                else if (mode == "single_mode")
                    cfg.circuitry = CircuitryMode::single_mode;
                else
                    fail(name, r.line_of("circuitry"),
                         "key 'circuitry' must be 'two_mode' or 'single_mode'");
            }
        } else if (block.name == "simulation") {
            cfg.sim_n_slots = r.integer_or("n_slots", cfg.sim_n_slots);
            cfg.sim_warmup_slots = r.integer_or("warmup_slots", cfg.sim_warmup_slots);
            if (r.has("seeds")) {
                cfg.seeds.clear();
                for (double s : r.number_list("seeds")) {
                    if (s < 0 || s != std::floor(s))
                        fail(name, r.line_of("seeds"), "key 'seeds' must list integers");
                    cfg.seeds.push_back(static_cast<std::uint64_t>(s));
                }
            }
            cfg.record_delay_quantiles =
                r.boolean_or("record_delay_quantiles", cfg.record_delay_quantiles);
            if (cfg.sim_n_slots <= cfg.sim_warmup_slots)
                fail(name, r.block_line(), "key 'n_slots' must exceed 'warmup_slots'");
        } else if (block.name == "fig4") {
            if (r.has("delay_grid_ms")) cfg.fig4_delay_grid_ms = r.number_list("delay_grid_ms");
        } else if (block.name == "fig5") {
            if (r.has("delay_bound_grid_ms"))
                cfg.fig5_delay_bound_grid_ms = r.number_list("delay_bound_grid_ms");
        } else if (block.name == "output") {
            if (r.has("directory")) cfg.output_dir = r.text("directory");
        } else {
            fail(name, block.line, "unknown block '" + block.name + "'");
        }
        r.finish();
    }

    if (!saw_system) fail(name, 1, "missing 'system' block");
    if (cfg.users.empty()) fail(name, 1, "missing 'user' blocks: at least one of the users is required");

    // Surface invariant violations with config context.
    try {
        cfg.system.validate();
        for (const auto& u : cfg.users) u.validate(cfg.system);
    } catch (const std::exception& e) {
        throw config_error(name + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

Scenario ScenarioConfig::scenario() const {
    return Scenario::build(system, users, EnergyModel{circuitry});
}

std::vector<double> ScenarioConfig::fig4_grid_or_default() const {
    if (!fig4_delay_grid_ms.empty()) return fig4_delay_grid_ms;
    double max_ms = 0.0;
    for (const auto& u : users) max_ms = std::max(max_ms, u.delay_bound_s * 1e3);
    std::vector<double> grid;
    for (double d = 1.0; d <= 2.0 * max_ms + 1e-9; d += 1.0) grid.push_back(d);
    return grid;
}

std::vector<double> ScenarioConfig::fig5_grid_or_default() const {
    if (!fig5_delay_bound_grid_ms.empty()) return fig5_delay_bound_grid_ms;
    return {10.0, 15.0, 20.0, 25.0, 30.0};
}

void ScenarioConfig::echo_resolved(std::ostream& os) const {
    os << "system {\n";
    os << "  slot_duration_s = " << format_double(system.slot_duration_s) << "\n";
    os << "  bandwidth_hz = " << format_double(system.bandwidth_hz) << "\n";
    os << "  noise_power_w = " << format_double(system.noise_power_w) << "\n";
    os << "  peak_power_w = " << format_double(system.peak_power_w) << "\n";
    os << "}\n";
    for (const auto& u : users) {
        os << "user {\n";
        os << "  distance_m = " << format_double(u.distance_m) << "\n";
        os << "  path_loss_exp = " << format_double(u.path_loss_exp) << "\n";
        os << "  arrival_prob = " << format_double(u.arrival_prob) << "\n";
        os << "  mean_burst_bits = " << format_double(u.mean_burst_bits) << "\n";
        os << "  circuit_power_w = " << format_double(u.circuit_power_w) << "\n";
        os << "  delay_bound_s = " << format_double(u.delay_bound_s) << "\n";
        os << "  delay_tolerance = " << format_double(u.delay_tolerance) << "\n";
        os << "}\n";
    }
    os << "optimizer {\n";
    os << "  dinkelbach_rel_tol = " << format_double(optimizer.dinkelbach_rel_tol) << "\n";
    os << "  dinkelbach_max_iter = " << optimizer.dinkelbach_max_iter << "\n";
    os << "  dual_max_iter = " << optimizer.dual_max_iter << "\n";
    os << "  power_rel_tol = " << format_double(optimizer.power_rel_tol) << "\n";
    os << "  golden_rel_tol = " << format_double(optimizer.golden_rel_tol) << "\n";
    os << "  subgradient_step0 = " << format_double(optimizer.subgradient_step0) << "\n";
    os << "  subgradient_flip_sign = " << (optimizer.flip_subgradient_sign ? "true" : "false")
       << "\n";
    os << "  effcap_rel_tol = " << format_double(optimizer.effcap.quad.rel_tol) << "\n";
    os << "  effcap_max_subintervals = " << optimizer.effcap.quad.max_subintervals << "\n";
    os << "  circuitry = " << circuitry_mode_name(circuitry) << "\n";
    os << "}\n";
    os << "simulation {\n";
    os << "  n_slots = " << sim_n_slots << "\n";
    os << "  warmup_slots = " << sim_warmup_slots << "\n";
    os << "  seeds = ";
    for (std::size_t i = 0; i < seeds.size(); ++i) os << (i ? "," : "") << seeds[i];
    os << "\n";
    os << "  record_delay_quantiles = " << (record_delay_quantiles ? "true" : "false") << "\n";
    os << "}\n";
    os << "fig4 {\n  delay_grid_ms = ";
    const auto g4 = fig4_grid_or_default();
    for (std::size_t i = 0; i < g4.size(); ++i) os << (i ? "," : "") << format_double(g4[i]);
    os << "\n}\n";
    os << "fig5 {\n  delay_bound_grid_ms = ";
    const auto g5 = fig5_grid_or_default();
    for (std::size_t i = 0; i < g5.size(); ++i) os << (i ? "," : "") << format_double(g5[i]);
    os << "\n}\n";
    if (!output_dir.empty()) os << "output {\n  directory = " << output_dir << "\n}\n";
}

} // namespace nomaee
