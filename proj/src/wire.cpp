#include "plgen/wire.hpp"

#include <sstream>

#include "plgen/error.hpp"
#include "plgen/io.hpp"
#include "text_util.hpp"
#include "wire_json.hpp"

namespace plgen {

std::string_view to_string(WireFormat f) { return f == WireFormat::Ndjson ? "ndjson" : "xes_fragment"; }

WireFormat wire_format_from_string(std::string_view text) {
    if (text == "ndjson") return WireFormat::Ndjson;
    if (text == "xes_fragment" || text == "xes") return WireFormat::XesFragment;
    throw ConfigError("format", "unknown wire format '" + std::string(text) + "'");
}

nlohmann::ordered_json detail::event_json(const Event& e) {
    nlohmann::ordered_json j;
    j["case"] = e.case_id;
    j["activity"] = e.activity;
    j["timestamp"] = e.timestamp;
    j["lifecycle"] = std::string(to_string(e.lifecycle));
    j["attrs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.attributes) {
        if (const auto* i = std::get_if<std::int64_t>(&v.value)) j["attrs"][k] = *i;
        else j["attrs"][k] = std::get<std::string>(v.value);
    }
    return j;
}

std::string encode_event(const Event& e, WireFormat format) {
    if (format == WireFormat::Ndjson) return detail::event_json(e).dump() + "\n";
    // A complete one-trace, one-event XES document on a single line.
    EventLog log;
    log.traces.push_back({e.case_id, {e}});
    auto xml = export_xes(log);
    std::string flat;
    flat.reserve(xml.size());
    bool leading = true;
    for (char c : xml) {
        if (c == '\n') {
            leading = true;
            continue;
        }
        if (leading && c == ' ') continue;
        leading = false;
        flat += c;
    }
    return flat + "\n";
}

Event decode_ndjson(std::string_view line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line.begin(), line.end());
        Event e;
        e.case_id = j.at("case").get<std::string>();
        e.activity = j.at("activity").get<std::string>();
        e.timestamp = j.at("timestamp").get<std::int64_t>();
        e.lifecycle = lifecycle_from_string(j.at("lifecycle").get<std::string>());
        for (const auto& [k, v] : j.at("attrs").items()) {
            AttributeValue a;
            if (v.is_number_integer()) a.value = v.get<std::int64_t>();
            else a.value = v.get<std::string>();
            e.attributes[k] = std::move(a);
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("bad event message: ") + ex.what());
    } catch (const Error& ex) {
        throw ParseError(std::string("bad event message: ") + ex.what());
    }
}

}  // namespace plgen
