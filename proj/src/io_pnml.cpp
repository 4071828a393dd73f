#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "plgen/error.hpp"
#include "plgen/io.hpp"
#include "text_util.hpp"

namespace plgen {

namespace {

using detail::xml_escape;

constexpr const char* kTool = "plgen";
constexpr const char* kToolVersion = "1.0";

struct Net {
    struct Place {
        std::string id, name, component;
        int marking = 0;
    };
    struct Transition {
        std::string id, name, component;
        bool invisible = false;
    };
    struct Arc {
        std::string source, target;
        bool rollback = false;
    };
    std::vector<Place> places;
    std::vector<Transition> transitions;
    std::vector<Arc> arcs;
    std::vector<std::string> final_places;
};

struct Port {
    std::string node;
    bool place;
};

Net translate(const ProcessModel& m) {
    Net net;
    std::map<std::string, Port> entry, exit;

    if (m.start_events().size() > 1) {
        // Several start events: one marked source place choosing among them.
        net.places.push_back({"p_source", "source", "", 1});
    }
    for (const auto& e : m.start_events()) {
        const auto id = "p_" + e.id.value;
        net.places.push_back({id, e.id.value, e.id.value, m.start_events().size() == 1 ? 1 : 0});
        if (m.start_events().size() > 1) {
            net.transitions.push_back({"t_enter_" + e.id.value, "", "", true});
            net.arcs.push_back({"p_source", "t_enter_" + e.id.value});
            net.arcs.push_back({"t_enter_" + e.id.value, id});
        }
        entry[e.id.value] = exit[e.id.value] = {id, true};
    }
    for (const auto& e : m.end_events()) {
        const auto id = "p_" + e.id.value;
        net.places.push_back({id, e.id.value, e.id.value, 0});
        net.final_places.push_back(id);
        entry[e.id.value] = exit[e.id.value] = {id, true};
    }
    for (const auto& g : m.gateways()) {
        if (g.kind == GatewayKind::Exclusive) {
            const auto id = "p_" + g.id.value;
            net.places.push_back({id, g.id.value, g.id.value, 0});
            entry[g.id.value] = exit[g.id.value] = {id, true};
        } else {
            const auto id = "t_" + g.id.value;
            net.transitions.push_back({id, g.id.value, g.id.value, true});
            entry[g.id.value] = exit[g.id.value] = {id, false};
        }
    }
    for (const auto& a : m.activities()) {
        const auto id = "t_" + a.id.value;
        net.transitions.push_back({id, a.name, a.id.value, false});
        entry[a.id.value] = exit[a.id.value] = {id, false};
        // Several inputs (outputs) on an activity mean a merge (choice), so they share one place.
        if (m.incoming_edges(a.id).size() > 1) {
            net.places.push_back({"p_in_" + a.id.value, "", "", 0});
            net.arcs.push_back({"p_in_" + a.id.value, id});
            entry[a.id.value] = {"p_in_" + a.id.value, true};
        }
        if (m.outgoing_edges(a.id).size() > 1) {
            net.places.push_back({"p_out_" + a.id.value, "", "", 0});
            net.arcs.push_back({id, "p_out_" + a.id.value});
            exit[a.id.value] = {"p_out_" + a.id.value, true};
        }
    }
    for (const auto& s : m.sequences()) {
        const auto& from = exit.at(s.source.value);
        const auto& to = entry.at(s.target.value);
        if (from.place != to.place) {
            net.arcs.push_back({from.node, to.node, s.rollback});
            continue;
        }
        const auto glue = s.source.value + "__" + s.target.value;
        if (from.place) {
            net.transitions.push_back({"t_" + glue, "", "", true});
            net.arcs.push_back({from.node, "t_" + glue, s.rollback});
            net.arcs.push_back({"t_" + glue, to.node});
        } else {
            net.places.push_back({"p_" + glue, "", "", 0});
            net.arcs.push_back({from.node, "p_" + glue, s.rollback});
            net.arcs.push_back({"p_" + glue, to.node});
        }
    }
    return net;
}

std::string tool_tag(const std::string& attrs) {
    return std::string("<toolspecific tool=\"") + kTool + "\" version=\"" + kToolVersion + "\"" + attrs + "/>";
}

}  // namespace

std::string export_pnml(const ProcessModel& model) {
    if (auto r = validate(model); !r.empty()) throw InvalidModelError(std::move(r));
    const Net net = translate(model);
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
    o << "  <net id=\"" << xml_escape(model.id().value) << "\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    o << "    <name><text>" << xml_escape(model.name()) << "</text></name>\n";
    o << "    <page id=\"page\">\n";
    for (const auto& p : net.places) {
        o << "      <place id=\"" << xml_escape(p.id) << "\">";
        if (!p.name.empty()) o << "<name><text>" << xml_escape(p.name) << "</text></name>";
        if (p.marking) o << "<initialMarking><text>" << p.marking << "</text></initialMarking>";
        if (!p.component.empty()) o << tool_tag(" component=\"" + xml_escape(p.component) + "\"");
        o << "</place>\n";
    }
    for (const auto& t : net.transitions) {
        o << "      <transition id=\"" << xml_escape(t.id) << "\">";
        if (!t.invisible) o << "<name><text>" << xml_escape(t.name) << "</text></name>";
        std::string attrs;
        if (!t.component.empty()) attrs += " component=\"" + xml_escape(t.component) + "\"";
        if (t.invisible) attrs += " invisible=\"true\"";
        else attrs += " activity=\"" + xml_escape(t.component) + "\"";
        o << tool_tag(attrs) << "</transition>\n";
    }
    std::size_t n = 0;
    for (const auto& a : net.arcs) {
        o << "      <arc id=\"arc" << ++n << "\" source=\"" << xml_escape(a.source) << "\" target=\"" << xml_escape(a.target) << "\">";
        if (a.rollback) o << tool_tag(" rollback=\"true\"");
        o << "</arc>\n";
    }
    o << "    </page>\n";
    o << "    <finalmarkings>\n      <marking>\n";
    for (const auto& p : net.final_places) o << "        <place idref=\"" << xml_escape(p) << "\"><text>1</text></place>\n";
    o << "      </marking>\n    </finalmarkings>\n";
    o << "  </net>\n</pnml>\n";
    return o.str();
}

namespace {

namespace pt = boost::property_tree;

struct ImportNode {
    bool place = false;
    bool invisible = false;
    std::string name, component;
    int marking = 0;
};

std::string text_child(const pt::ptree& node, const char* path) {
    auto t = node.get_optional<std::string>(path);
    return t ? *t : std::string();
}

const pt::ptree* tool_info(const pt::ptree& node) {
    for (const auto& [key, child] : node)
        if (key == "toolspecific") return &child;
    return nullptr;
}

void collect(const pt::ptree& tree, std::map<std::string, ImportNode>& nodes, std::vector<std::string>& order, std::vector<Net::Arc>& arcs) {
    for (const auto& [key, child] : tree) {
        if (key == "page") {
            collect(child, nodes, order, arcs);
        } else if (key == "place" || key == "transition") {
            const auto id = child.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw ParseError("PNML " + key + " without an id");
            ImportNode n;
            n.place = key == "place";
            n.name = text_child(child, "name.text");
            const auto marking = text_child(child, "initialMarking.text");
            if (!marking.empty()) {
                try {
                    n.marking = std::stoi(marking);
                } catch (const std::exception&) {
                    throw ParseError("place '" + id + "' has a malformed initial marking");
                }
            }
            if (const auto* tool = tool_info(child)) {
                n.component = tool->get<std::string>("<xmlattr>.component", "");
                const auto activity = tool->get<std::string>("<xmlattr>.activity", "");
                n.invisible = tool->get<std::string>("<xmlattr>.invisible", "") == "true" || activity == "$invisible$";
                if (n.component.empty() && !n.invisible && !activity.empty()) n.component = activity;
            }
            if (!n.place && n.name.empty()) n.invisible = true;
            if (!nodes.emplace(id, n).second) throw ParseError("duplicate PNML id '" + id + "'");
            order.push_back(id);
        } else if (key == "arc") {
            Net::Arc a;
            a.source = child.get<std::string>("<xmlattr>.source", "");
            a.target = child.get<std::string>("<xmlattr>.target", "");
            if (const auto* tool = tool_info(child)) a.rollback = tool->get<std::string>("<xmlattr>.rollback", "") == "true";
            arcs.push_back(a);
        }
    }
}

}  // namespace

ProcessModel import_pnml(std::string_view document) {
    pt::ptree doc;
    try {
        std::istringstream in{std::string(document)};
        pt::read_xml(in, doc, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("PNML: " + e.message(), e.line());
    }
    const auto net = doc.get_child_optional("pnml.net");
    if (!net) throw ParseError("PNML document has no <pnml><net> element");

    std::map<std::string, ImportNode> nodes;
    std::vector<std::string> order;
    std::vector<Net::Arc> arcs;
    collect(*net, nodes, order, arcs);
    for (const auto& a : arcs)
        if (!nodes.contains(a.source) || !nodes.contains(a.target)) throw ParseError("arc " + a.source + " -> " + a.target + " references an unknown node");

    // Glue nodes (an unmarked place between two transitions, or an invisible
    // transition between two places) carry no behavior; fold them into one edge.
    std::set<std::string> removed;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& id : order) {
            if (removed.contains(id)) continue;
            const auto& n = nodes.at(id);
            if (n.place ? n.marking != 0 : !n.invisible) continue;
            if (!n.component.empty()) continue;
            std::vector<std::size_t> in, out;
            for (std::size_t i = 0; i < arcs.size(); ++i) {
                if (arcs[i].target == id) in.push_back(i);
                if (arcs[i].source == id) out.push_back(i);
            }
            if (in.size() != 1 || out.size() != 1) continue;
            Net::Arc merged{arcs[in[0]].source, arcs[out[0]].target, arcs[in[0]].rollback || arcs[out[0]].rollback};
            if (merged.source == merged.target) continue;
            arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(std::max(in[0], out[0])));
            arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(std::min(in[0], out[0])));
            arcs.push_back(merged);
            removed.insert(id);
            changed = true;
        }
    }

    ModelParts parts;
    parts.id = ComponentId{net->get<std::string>("<xmlattr>.id", "process")};
    parts.name = text_child(*net, "name.text");
    std::map<std::string, ComponentId> ids;
    for (const auto& id : order) {
        if (removed.contains(id)) continue;
        const auto& n = nodes.at(id);
        const ComponentId cid{n.component.empty() ? id : n.component};
        ids[id] = cid;
        const bool has_out = std::any_of(arcs.begin(), arcs.end(), [&](const Net::Arc& a) { return a.source == id; });
        if (n.place) {
            if (n.marking > 0) parts.start_events.push_back({cid});
            else if (!has_out) parts.end_events.push_back({cid});
            else parts.gateways.push_back({cid, GatewayKind::Exclusive});
        } else if (n.invisible) {
            parts.gateways.push_back({cid, GatewayKind::Parallel});
        } else {
            parts.activities.push_back({cid, n.name, {}});
        }
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& a : arcs) {
        if (!seen.emplace(a.source, a.target).second) continue;
        parts.sequences.push_back({ids.at(a.source), ids.at(a.target), a.rollback});
    }
    parts.provenance["imported_from"] = "pnml";
    return ProcessModel(std::move(parts));
}

}  // namespace plgen
