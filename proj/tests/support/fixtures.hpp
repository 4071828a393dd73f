#pragma once

// Hand-built models shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "plgen/model.hpp"

namespace fixtures {

// Builds ModelParts with terse helpers; ids double as activity names.
struct Builder {
    plgen::ModelParts parts;

    explicit Builder(std::string name = "fixture") { parts.name = std::move(name); }
    Builder& start(const std::string& id = "start") { parts.start_events.push_back({{id}}); return *this; }
    Builder& end(const std::string& id = "end") { parts.end_events.push_back({{id}}); return *this; }
    Builder& act(const std::string& id) { parts.activities.push_back({{id}, id, {}}); return *this; }
    Builder& xor_gw(const std::string& id) { parts.gateways.push_back({{id}, plgen::GatewayKind::Exclusive}); return *this; }
    Builder& and_gw(const std::string& id) { parts.gateways.push_back({{id}, plgen::GatewayKind::Parallel}); return *this; }
    Builder& seq(const std::string& a, const std::string& b, bool rollback = false) {
        parts.sequences.push_back({{a}, {b}, rollback});
        return *this;
    }
    Builder& chain(const std::vector<std::string>& ids) {
        for (std::size_t i = 1; i < ids.size(); ++i) seq(ids[i - 1], ids[i]);
        return *this;
    }
    Builder& data(const std::string& id, const std::string& name, const std::string& value, const std::string& activity,
                  plgen::Direction dir) {
        plgen::DataObject d;
        d.id = {id};
        d.name = name;
        d.plain_value = value;
        parts.data_objects.push_back(d);
        parts.associations.push_back({{activity}, {id}, dir});
        return *this;
    }
    plgen::ProcessModel build() const { return plgen::ProcessModel(parts); }
};

// start -> A -> end
inline plgen::ProcessModel single_activity(const std::string& name = "A") {
    return Builder("single").start().act(name).end().chain({"start", name, "end"}).build();
}

// start -> A -> xor(C, D, E) -> F -> and(H, I) -> J -> end
inline plgen::ProcessModel xor_and_model() {
    Builder b("xor_and");
    b.start().end();
    for (auto a : {"A", "C", "D", "E", "F", "H", "I", "J"}) b.act(a);
    b.xor_gw("x1").xor_gw("x2").and_gw("p1").and_gw("p2");
    b.chain({"start", "A", "x1"});
    for (auto a : {"C", "D", "E"}) b.seq("x1", a).seq(a, "x2");
    b.chain({"x2", "F", "p1"});
    for (auto a : {"H", "I"}) b.seq("p1", a).seq(a, "p2");
    b.chain({"p2", "J", "end"});
    return b.build();
}

// Loop around an AND block:
// start ; (a ; ((b ; (c and d) ; e  loop f) ; g)) ; end, with d1 generated by c.
// The loop is an exclusive join before b and an exclusive split after e whose
// rollback path runs through f.
inline plgen::ProcessModel running_example() {
    Builder b("running_example");
    b.start().end();
    for (auto a : {"a", "b", "c", "d", "e", "f", "g"}) b.act(a);
    b.xor_gw("lj").xor_gw("ls").and_gw("ps").and_gw("pj");
    b.chain({"start", "a", "lj", "b", "ps"});
    b.seq("ps", "c").seq("ps", "d").seq("c", "pj").seq("d", "pj");
    b.chain({"pj", "e", "ls"});
    b.seq("ls", "f", true).seq("f", "lj");
    b.chain({"ls", "g", "end"});
    b.data("do1", "d1", "v1", "c", plgen::Direction::Generated);
    return b.build();
}

}  // namespace fixtures
