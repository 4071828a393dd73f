#include "config.hpp"

#include <sstream>

#include <json.hpp>

#include "plgen/error.hpp"
#include "plgen/io.hpp"

namespace plgen::cli {

using Json = nlohmann::json;

namespace {

class Section {
  public:
    Section(const Json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) throw ConfigError(name_, "expected an object");
    }

    template <typename T>
    void get(const char* key, T& out) const {
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw ConfigError(field(key), "has the wrong type");
        }
    }

    std::optional<Section> child(const char* key) const {
        if (!j_.contains(key)) return std::nullopt;
        return Section(j_.at(key), field(key));
    }

    std::string field(const char* key) const { return name_.empty() ? key : name_ + "." + key; }

  private:
    const Json& j_;
    std::string name_;
};

void read_grammar(const Section& s, GrammarConfig& g) {
    s.get("p_loop", g.p_loop);
    s.get("weights", g.weights);
    s.get("max_and_branches", g.max_and_branches);
    s.get("max_xor_branches", g.max_xor_branches);
    s.get("p_dataobject", g.p_dataobject);
    s.get("p_required", g.p_required);
    s.get("max_depth", g.max_depth);
}

void read_noise(const Section& s, NoiseConfig& n) {
    std::string profile;
    s.get("profile", profile);
    if (!profile.empty()) {
        try {
            n = noise_profile(profile);
        } catch (const ConfigError& e) {
            throw ConfigError(s.field("profile"), e.what());
        }
    }
    s.get("p_missing_head", n.p_missing_head);
    s.get("max_head_size", n.max_head_size);
    s.get("p_missing_tail", n.p_missing_tail);
    s.get("max_tail_size", n.max_tail_size);
    s.get("p_missing_episode", n.p_missing_episode);
    s.get("max_episode_size", n.max_episode_size);
    s.get("p_alien_event", n.p_alien_event);
    s.get("p_doubled_event", n.p_doubled_event);
    s.get("p_rename_activity", n.p_rename_activity);
    s.get("p_swap_order", n.p_swap_order);
    s.get("p_perturb_integer", n.p_perturb_integer);
    s.get("delta_max", n.delta_max);
    s.get("p_perturb_string", n.p_perturb_string);
    s.get("seed", n.seed);
}

}  // namespace

Settings load_settings(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string(), e.what());
    }
    Settings out;
    const Section root(j, "");
    if (j.contains("seed")) {
        std::uint64_t seed = 0;
        root.get("seed", seed);
        out.seed = seed;
    }
    if (auto g = root.child("grammar")) read_grammar(*g, out.grammar);
    if (auto s = root.child("simulation")) {
        auto& c = out.simulation;
        s->get("traces", c.trace_count);
        s->get("loop_probability", c.loop_probability);
        s->get("default_gap_seconds", c.default_gap_seconds);
        s->get("case_id_prefix", c.case_id_prefix);
        s->get("base_time_ms", c.base_time_ms);
        s->get("inter_arrival_seconds", c.inter_arrival_seconds);
        s->get("max_steps", c.max_steps);
        s->get("allow_script_io", c.scripts.allow_io);
        std::string lifecycle;
        s->get("instantaneous_lifecycle", lifecycle);
        if (!lifecycle.empty()) {
            try {
                c.instantaneous_lifecycle = lifecycle_from_string(lifecycle);
            } catch (const Error& e) {
                throw ConfigError(s->field("instantaneous_lifecycle"), e.what());
            }
        }
    }
    if (auto n = root.child("noise")) read_noise(*n, out.simulation.noise);
    if (auto e = root.child("evolution")) {
        out.has_evolution = true;
        e->get("p_replace", out.evolution.p_replace);
        e->get("max_attempts", out.evolution.max_attempts);
        if (auto g = e->child("grammar")) read_grammar(*g, out.evolution.subprocess);
    }
    if (auto s = root.child("stream")) {
        auto& c = out.stream;
        s->get("parallel_instances", c.parallel_instances);
        s->get("time_multiplier", c.time_multiplier);
        s->get("max_rate", c.max_rate);
        s->get("trace_gap_seconds", c.trace_gap_seconds);
        s->get("host", c.host);
        s->get("port", c.port);
        s->get("max_events", c.max_events);
        s->get("control_port", out.control_port);
        s->get("control_host", out.control_host);
        std::string format;
        s->get("format", format);
        if (!format.empty()) c.format = wire_format_from_string(format);
    }
    return out;
}

std::array<double, 5> parse_weights(const std::string& text) {
    std::array<double, 5> w{};
    std::stringstream ss(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
        if (i >= w.size()) throw ConfigError("weights", "expected 5 comma-separated numbers");
        try {
            std::size_t used = 0;
            w[i] = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError("weights", "'" + item + "' is not a number");
        }
        ++i;
    }
    if (i != w.size()) throw ConfigError("weights", "expected 5 comma-separated numbers");
    return w;
}

}  // namespace plgen::cli
