#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "plgen/error.hpp"
#include "plgen/io.hpp"
#include "plgen/scripting.hpp"

namespace plgen {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "plgen-model";
constexpr int kVersion = 1;

Json hook_to_json(const ScriptHook& h) {
    Json j;
    j["entry_point"] = h.entry_point;
    j["return_kind"] = std::string(to_string(h.return_kind));
    if (h.path) j["path"] = *h.path;
    else j["source"] = h.source;
    return j;
}

std::string_view kind_name(DataObjectKind k) {
    switch (k) {
        case DataObjectKind::Plain: return "plain";
        case DataObjectKind::DynamicInteger: return "dynamic_integer";
        case DataObjectKind::DynamicString: return "dynamic_string";
    }
    return "plain";
}

// Walks the document keeping a JSON-pointer so schema errors say where they are.
class Reader {
  public:
    Reader(const Json& j, std::string where, const std::filesystem::path& base) : j_(j), where_(std::move(where)), base_(base) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError((where_.empty() ? "/" : where_) + ": " + what); }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key) && !j_.at(key).is_null(); }

    Reader at(const char* key) const {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
        return Reader(j_.at(key), where_ + "/" + key, base_);
    }

    std::string str() const {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    bool boolean() const {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }
    std::int64_t integer() const {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<std::int64_t>();
    }

    template <typename F>
    void each(F&& f) const {
        if (!j_.is_array()) fail("expected an array");
        for (std::size_t i = 0; i < j_.size(); ++i) f(Reader(j_.at(i), where_ + "/" + std::to_string(i), base_));
    }

    std::string str_or(const char* key, std::string fallback) const { return has(key) ? at(key).str() : fallback; }

    ScriptHook hook(const std::string& default_entry, ReturnKind default_kind) const {
        ScriptHook h;
        h.entry_point = str_or("entry_point", default_entry);
        h.return_kind = default_kind;
        if (has("return_kind")) {
            try {
                h.return_kind = return_kind_from_string(at("return_kind").str());
            } catch (const Error& e) {
                at("return_kind").fail(e.what());
            }
        }
        if (has("source")) {
            h.source = at("source").str();
        } else if (has("path")) {
            const auto rel = at("path").str();
            std::filesystem::path p(rel);
            if (p.is_relative()) p = base_ / p;
            h.source = load_hook(p, h.entry_point, h.return_kind).source;
            h.path = rel;
        } else {
            fail("hook needs 'source' or 'path'");
        }
        return h;
    }

    ComponentId id() const { return ComponentId{at("id").str()}; }

  private:
    const Json& j_;
    std::string where_;
    const std::filesystem::path& base_;
};

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string export_native(const ProcessModel& model) {
    const auto& p = model.parts();
    Json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["id"] = p.id.value;
    j["name"] = p.name;
    j["provenance"] = Json::object();
    for (const auto& [k, v] : p.provenance) j["provenance"][k] = v;
    j["start_events"] = Json::array();
    for (const auto& e : p.start_events) j["start_events"].push_back({{"id", e.id.value}});
    j["end_events"] = Json::array();
    for (const auto& e : p.end_events) j["end_events"].push_back({{"id", e.id.value}});
    j["activities"] = Json::array();
    for (const auto& a : p.activities) {
        Json ja{{"id", a.id.value}, {"name", a.name}};
        if (a.time_profile.time_after) ja["time_after"] = hook_to_json(*a.time_profile.time_after);
        if (a.time_profile.time_lasted) ja["time_lasted"] = hook_to_json(*a.time_profile.time_lasted);
        j["activities"].push_back(std::move(ja));
    }
    j["gateways"] = Json::array();
    for (const auto& g : p.gateways) j["gateways"].push_back({{"id", g.id.value}, {"kind", g.kind == GatewayKind::Parallel ? "parallel" : "exclusive"}});
    j["data_objects"] = Json::array();
    for (const auto& d : p.data_objects) {
        Json jd{{"id", d.id.value}, {"name", d.name}, {"kind", std::string(kind_name(d.kind))}};
        if (d.plain_value) jd["value"] = *d.plain_value;
        if (d.generator) jd["generator"] = hook_to_json(*d.generator);
        j["data_objects"].push_back(std::move(jd));
    }
    j["sequences"] = Json::array();
    for (const auto& s : p.sequences) {
        Json js{{"source", s.source.value}, {"target", s.target.value}};
        if (s.rollback) js["rollback"] = true;
        j["sequences"].push_back(std::move(js));
    }
    j["associations"] = Json::array();
    for (const auto& a : p.associations)
        j["associations"].push_back({{"activity", a.activity.value},
                                     {"data_object", a.data_object.value},
                                     {"direction", a.direction == Direction::Required ? "required" : "generated"}});
    return j.dump(2) + "\n";
}

ProcessModel import_native(std::string_view document, const std::filesystem::path& base_dir) {
    Json j;
    try {
        j = Json::parse(document.begin(), document.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), line_of(document, e.byte ? e.byte - 1 : 0));
    }
    Reader root(j, "", base_dir);
    if (!j.is_object()) root.fail("expected an object");
    if (root.at("format").str() != kFormat) root.at("format").fail(std::string("expected \"") + kFormat + "\"");
    if (root.at("version").integer() != kVersion) root.at("version").fail("unsupported version");

    ModelParts p;
    p.id = ComponentId{root.str_or("id", "process")};
    p.name = root.str_or("name", "");
    if (root.has("provenance")) {
        const auto& prov = j.at("provenance");
        if (!prov.is_object()) root.at("provenance").fail("expected an object");
        for (const auto& [k, v] : prov.items()) p.provenance[k] = root.at("provenance").at(k.c_str()).str();
    }
    root.at("start_events").each([&](const Reader& r) { p.start_events.push_back({r.id()}); });
    root.at("end_events").each([&](const Reader& r) { p.end_events.push_back({r.id()}); });
    root.at("activities").each([&](const Reader& r) {
        Activity a{r.id(), r.at("name").str(), {}};
        if (r.has("time_after")) a.time_profile.time_after = r.at("time_after").hook("time_after", ReturnKind::Seconds);
        if (r.has("time_lasted")) a.time_profile.time_lasted = r.at("time_lasted").hook("time_lasted", ReturnKind::Seconds);
        p.activities.push_back(std::move(a));
    });
    if (root.has("gateways"))
        root.at("gateways").each([&](const Reader& r) {
            const auto kind = r.at("kind").str();
            if (kind != "exclusive" && kind != "parallel") r.at("kind").fail("expected \"exclusive\" or \"parallel\"");
            p.gateways.push_back({r.id(), kind == "parallel" ? GatewayKind::Parallel : GatewayKind::Exclusive});
        });
    if (root.has("data_objects"))
        root.at("data_objects").each([&](const Reader& r) {
            DataObject d;
            d.id = r.id();
            d.name = r.at("name").str();
            const auto kind = r.str_or("kind", "plain");
            if (kind == "plain") d.kind = DataObjectKind::Plain;
            else if (kind == "dynamic_integer") d.kind = DataObjectKind::DynamicInteger;
            else if (kind == "dynamic_string") d.kind = DataObjectKind::DynamicString;
            else r.at("kind").fail("expected plain, dynamic_integer or dynamic_string");
            if (r.has("value")) d.plain_value = r.at("value").str();
            if (r.has("generator"))
                d.generator = r.at("generator").hook("generate", d.kind == DataObjectKind::DynamicString ? ReturnKind::Text : ReturnKind::Integer);
            p.data_objects.push_back(std::move(d));
        });
    root.at("sequences").each([&](const Reader& r) {
        p.sequences.push_back({ComponentId{r.at("source").str()}, ComponentId{r.at("target").str()}, r.has("rollback") && r.at("rollback").boolean()});
    });
    if (root.has("associations"))
        root.at("associations").each([&](const Reader& r) {
            const auto dir = r.at("direction").str();
            if (dir != "required" && dir != "generated") r.at("direction").fail("expected \"required\" or \"generated\"");
            p.associations.push_back({ComponentId{r.at("activity").str()}, ComponentId{r.at("data_object").str()},
                                      dir == "required" ? Direction::Required : Direction::Generated});
        });
    return ProcessModel(std::move(p));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("cannot write " + path.string());
}

ProcessModel read_model_file(const std::filesystem::path& path) {
    const auto text = read_text_file(path);
    if (path.extension() == ".pnml") return import_pnml(text);
    try {
        return import_native(text, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_model_file(const ProcessModel& model, const std::filesystem::path& path) {
    const auto ext = path.extension();
    if (ext == ".pnml") write_text_file(path, export_pnml(model));
    else if (ext == ".dot") write_text_file(path, export_dot(model));
    else write_text_file(path, export_native(model));
}

}  // namespace plgen
