#include <sstream>

#include "plgen/io.hpp"

namespace plgen {

namespace {

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const ProcessModel& model) {
    std::ostringstream o;
    o << "digraph " << dot_quote(model.id().value) << " {\n";
    o << "  rankdir=LR;\n";
    o << "  label=" << dot_quote(model.name()) << ";\n";
    for (const auto& e : model.start_events()) o << "  " << dot_quote(e.id.value) << " [shape=circle, label=\"\"];\n";
    for (const auto& e : model.end_events()) o << "  " << dot_quote(e.id.value) << " [shape=doublecircle, label=\"\"];\n";
    for (const auto& a : model.activities()) o << "  " << dot_quote(a.id.value) << " [shape=box, style=rounded, label=" << dot_quote(a.name) << "];\n";
    for (const auto& g : model.gateways())
        o << "  " << dot_quote(g.id.value) << " [shape=diamond, label=\"" << (g.kind == GatewayKind::Parallel ? "+" : "×") << "\"];\n";
    for (const auto& d : model.data_objects()) o << "  " << dot_quote(d.id.value) << " [shape=note, label=" << dot_quote(d.name) << "];\n";
    for (const auto& s : model.sequences()) {
        o << "  " << dot_quote(s.source.value) << " -> " << dot_quote(s.target.value);
        if (s.rollback) o << " [constraint=false]";
        o << ";\n";
    }
    for (const auto& a : model.associations()) {
        if (a.direction == Direction::Required) o << "  " << dot_quote(a.data_object.value) << " -> " << dot_quote(a.activity.value);
        else o << "  " << dot_quote(a.activity.value) << " -> " << dot_quote(a.data_object.value);
        o << " [style=dashed, arrowhead=open];\n";
    }
    o << "}\n";
    return o.str();
}

}  // namespace plgen
