#include <chrono>
#include <cstdio>
#include <sstream>

#include <zlib.h>

#include "plgen/error.hpp"
#include "plgen/io.hpp"
#include "text_util.hpp"

namespace plgen {

using detail::xml_escape;

std::string format_timestamp(std::int64_t ms) {
    using namespace std::chrono;
    const sys_time<milliseconds> t{milliseconds(ms)};
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss hms{t - day};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%03ld+00:00", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                  static_cast<long>(hms.seconds().count()), static_cast<long>(hms.subseconds().count()));
    return buf;
}

namespace {

void write_attribute(std::ostringstream& o, const std::string& indent, const std::string& key, const AttributeValue& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v.value)) o << indent << "<int key=\"" << xml_escape(key) << "\" value=\"" << *i << "\"/>\n";
    else o << indent << "<string key=\"" << xml_escape(key) << "\" value=\"" << xml_escape(std::get<std::string>(v.value)) << "\"/>\n";
}

}  // namespace

std::string export_xes(const EventLog& log) {
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<log xes.version=\"1.0\" xes.features=\"nested-attributes\" xmlns=\"http://www.xes-standard.org/\">\n";
    o << "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
    o << "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    o << "  <extension name=\"Lifecycle\" prefix=\"lifecycle\" uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n";
    o << "  <global scope=\"trace\">\n    <string key=\"concept:name\" value=\"__INVALID__\"/>\n  </global>\n";
    o << "  <global scope=\"event\">\n";
    o << "    <string key=\"concept:name\" value=\"__INVALID__\"/>\n";
    o << "    <date key=\"time:timestamp\" value=\"1970-01-01T00:00:00.000+00:00\"/>\n";
    o << "    <string key=\"lifecycle:transition\" value=\"complete\"/>\n";
    o << "  </global>\n";
    o << "  <classifier name=\"Activity\" keys=\"concept:name\"/>\n";
    o << "  <classifier name=\"Activity and lifecycle\" keys=\"concept:name lifecycle:transition\"/>\n";
    for (const auto& t : log.traces) {
        o << "  <trace>\n";
        o << "    <string key=\"concept:name\" value=\"" << xml_escape(t.case_id) << "\"/>\n";
        for (const auto& e : t.events) {
            o << "    <event>\n";
            o << "      <string key=\"concept:name\" value=\"" << xml_escape(e.activity) << "\"/>\n";
            o << "      <date key=\"time:timestamp\" value=\"" << format_timestamp(e.timestamp) << "\"/>\n";
            o << "      <string key=\"lifecycle:transition\" value=\"" << to_string(e.lifecycle) << "\"/>\n";
            for (const auto& [k, v] : e.attributes) write_attribute(o, "      ", k, v);
            o << "    </event>\n";
        }
        o << "  </trace>\n";
    }
    o << "</log>\n";
    return o.str();
}

void write_xes_file(const EventLog& log, const std::filesystem::path& path) {
    const auto xml = export_xes(log);
    if (path.extension() != ".gz") {
        write_text_file(path, xml);
        return;
    }
    // Fixed header fields (no name, mtime 0) keep compressed output reproducible.
    gzFile f = gzopen(path.c_str(), "wb9");
    if (!f) throw Error("cannot write " + path.string());
    std::size_t off = 0;
    while (off < xml.size()) {
        const auto chunk = static_cast<unsigned>(std::min<std::size_t>(xml.size() - off, 1u << 20));
        if (gzwrite(f, xml.data() + off, chunk) != static_cast<int>(chunk)) {
            gzclose(f);
            throw Error("gzip write failed for " + path.string());
        }
        off += chunk;
    }
    if (gzclose(f) != Z_OK) throw Error("gzip write failed for " + path.string());
}

}  // namespace plgen
