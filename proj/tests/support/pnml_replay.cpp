#include "pnml_replay.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace oracle {

namespace pt = boost::property_tree;

namespace {

using Marking = std::vector<int>;

void walk(const pt::ptree& node, const std::function<void(const std::string&, const pt::ptree&)>& visit) {
    for (const auto& [key, child] : node) {
        visit(key, child);
        if (key == "page") walk(child, visit);
    }
}

}  // namespace

PetriNet::PetriNet(const std::string& pnml) {
    pt::ptree doc;
    std::istringstream in(pnml);
    pt::read_xml(in, doc);
    const auto& net = doc.get_child("pnml.net");
    std::map<std::string, int> place_index;
    std::map<std::string, int> transition_index;
    std::vector<std::pair<std::string, std::string>> arcs;
    std::vector<int> marking;

    walk(net, [&](const std::string& key, const pt::ptree& n) {
        if (key == "place") {
            place_index[n.get<std::string>("<xmlattr>.id")] = static_cast<int>(places_.size());
            places_.push_back(n.get<std::string>("<xmlattr>.id"));
            marking.push_back(n.get<int>("initialMarking.text", 0));
        } else if (key == "transition") {
            Transition t;
            t.id = n.get<std::string>("<xmlattr>.id");
            t.label = n.get<std::string>("name.text", "");
            for (const auto& [k, c] : n)
                if (k == "toolspecific" && c.get<std::string>("<xmlattr>.invisible", "") == "true") t.invisible = true;
            transition_index[t.id] = static_cast<int>(transitions_.size());
            transitions_.push_back(t);
        } else if (key == "arc") {
            arcs.emplace_back(n.get<std::string>("<xmlattr>.source"), n.get<std::string>("<xmlattr>.target"));
        }
    });
    for (const auto& [s, t] : arcs) {
        if (place_index.contains(s) && transition_index.contains(t)) transitions_[transition_index[t]].in.push_back(place_index[s]);
        else if (transition_index.contains(s) && place_index.contains(t)) transitions_[transition_index[s]].out.push_back(place_index[t]);
        else throw std::runtime_error("arc " + s + " -> " + t + " does not join a place and a transition");
    }
    initial_ = marking;
    final_.assign(places_.size(), 0);
    if (auto fm = net.get_child_optional("finalmarkings.marking")) {
        for (const auto& [k, c] : *fm)
            if (k == "place") final_[place_index.at(c.get<std::string>("<xmlattr>.idref"))] = c.get<int>("text", 1);
    } else {
        // Without a declared final marking, the sink places are the end.
        for (std::size_t p = 0; p < places_.size(); ++p) {
            const bool consumed = std::any_of(transitions_.begin(), transitions_.end(), [&](const Transition& t) {
                return std::find(t.in.begin(), t.in.end(), static_cast<int>(p)) != t.in.end();
            });
            if (!consumed) final_[p] = 1;
        }
    }
}

std::size_t PetriNet::visible_count() const {
    return static_cast<std::size_t>(std::count_if(transitions_.begin(), transitions_.end(), [](const Transition& t) { return !t.invisible; }));
}

std::vector<std::string> PetriNet::visible_labels() const {
    std::vector<std::string> out;
    for (const auto& t : transitions_)
        if (!t.invisible) out.push_back(t.label);
    return out;
}

std::size_t PetriNet::consumers(const std::string& place_id) const {
    const auto it = std::find(places_.begin(), places_.end(), place_id);
    if (it == places_.end()) return 0;
    const int p = static_cast<int>(it - places_.begin());
    return static_cast<std::size_t>(std::count_if(transitions_.begin(), transitions_.end(), [&](const Transition& t) {
        return std::find(t.in.begin(), t.in.end(), p) != t.in.end();
    }));
}

bool PetriNet::replays(const std::vector<std::string>& labels) const {
    constexpr std::size_t kMaxStates = 20000;
    auto enabled = [](const Transition& t, const Marking& m) {
        return std::all_of(t.in.begin(), t.in.end(), [&](int p) { return m[p] > 0; });
    };
    auto fire = [](const Transition& t, Marking m) {
        for (int p : t.in) --m[p];
        for (int p : t.out) ++m[p];
        return m;
    };
    auto closure = [&](const std::set<Marking>& from) {
        std::set<Marking> seen = from;
        std::deque<Marking> todo(from.begin(), from.end());
        while (!todo.empty() && seen.size() < kMaxStates) {
            Marking m = todo.front();
            todo.pop_front();
            for (const auto& t : transitions_) {
                if (!t.invisible || !enabled(t, m)) continue;
                auto next = fire(t, m);
                if (seen.insert(next).second) todo.push_back(std::move(next));
            }
        }
        return seen;
    };

    std::set<Marking> states = closure({initial_});
    for (const auto& label : labels) {
        std::set<Marking> next;
        for (const auto& m : states)
            for (const auto& t : transitions_)
                if (!t.invisible && t.label == label && enabled(t, m)) next.insert(fire(t, m));
        if (next.empty()) return false;
        states = closure(next);
    }
    return states.contains(final_);
}

}  // namespace oracle
