#include "xes_reader.hpp"

#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace oracle {

namespace pt = boost::property_tree;

namespace {

// Howard Hinnant's days_from_civil, written out so the oracle does not share
// the calendar code path of the writer.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::map<std::string, XesAttribute> attributes_of(const pt::ptree& node) {
    std::map<std::string, XesAttribute> out;
    for (const auto& [tag, child] : node) {
        if (tag == "<xmlattr>" || tag == "event") continue;
        out[child.get<std::string>("<xmlattr>.key")] = {tag, child.get<std::string>("<xmlattr>.value")};
    }
    return out;
}

}  // namespace

std::string XesEvent::name() const { return attributes.at("concept:name").value; }
std::string XesEvent::lifecycle() const { return attributes.at("lifecycle:transition").value; }
std::int64_t XesEvent::timestamp_ms() const { return parse_iso_ms(attributes.at("time:timestamp").value); }

std::int64_t parse_iso_ms(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0, ms = 0;
    char tail[16] = {};
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d.%3d%15s", &y, &mo, &d, &h, &mi, &s, &ms, tail) < 7)
        throw std::runtime_error("bad timestamp " + text);
    const std::string zone = tail;
    if (zone != "+00:00" && zone != "Z") throw std::runtime_error("unexpected zone in " + text);
    const auto days = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d));
    return ((days * 24 + h) * 60 + mi) * 60000LL + s * 1000LL + ms;
}

std::vector<XesTrace> read_xes(const std::string& xml) {
    pt::ptree doc;
    std::istringstream in(xml);
    pt::read_xml(in, doc);
    std::vector<XesTrace> out;
    for (const auto& [tag, node] : doc.get_child("log")) {
        if (tag != "trace") continue;
        XesTrace t;
        auto attrs = attributes_of(node);
        if (attrs.contains("concept:name")) t.name = attrs["concept:name"].value;
        for (const auto& [etag, enode] : node)
            if (etag == "event") t.events.push_back({attributes_of(enode)});
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace oracle
