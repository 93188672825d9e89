#include "fdbound/network.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "fdbound/error.hpp"

namespace fdbound {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& text, std::size_t byte, const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    std::ostringstream os;
    os << "syntax error at line " << line << ", column " << col << ": " << what;
    throw ParseError(os.str());
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ParseError("unknown key '" + it.key() + "' in " + where);
    }
}

std::string require_string(const ordered_json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ParseError("missing key '" + key + "' in " + where);
    if (!obj.at(key).is_string())
        throw ParseError("key '" + key + "' in " + where + " must be a string");
    return obj.at(key).get<std::string>();
}

} // namespace

NetworkSpec parse_network_lenient(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
    }
    if (!doc.is_object()) throw ParseError("document root must be an object");
    reject_unknown_keys(doc, {"nodes", "edges", "sessions"}, "document root");
    for (const char* key : {"nodes", "edges", "sessions"}) {
        if (!doc.contains(key)) throw ParseError(std::string("missing key '") + key + "' in document root");
        if (!doc.at(key).is_array())
            throw ParseError(std::string("key '") + key + "' must be an array");
    }

    NetworkSpec spec;
    for (const auto& n : doc.at("nodes")) {
        if (!n.is_string()) throw ParseError("node identifiers must be strings");
        spec.nodes.push_back(n.get<std::string>());
    }
    for (const auto& e : doc.at("edges")) {
        if (!e.is_object()) throw ParseError("edge entries must be objects");
        reject_unknown_keys(e, {"id", "tail", "head", "capacity"}, "edge entry");
        EdgeSpec es;
        es.id = require_string(e, "id", "edge entry");
        es.tail = require_string(e, "tail", "edge '" + es.id + "'");
        es.head = require_string(e, "head", "edge '" + es.id + "'");
        std::string cap = require_string(e, "capacity", "edge '" + es.id + "'");
        es.capacity = parse_rational(cap);
        spec.edges.push_back(std::move(es));
    }
    for (const auto& s : doc.at("sessions")) {
        if (!s.is_object()) throw ParseError("session entries must be objects");
        reject_unknown_keys(s, {"id", "source", "sinks"}, "session entry");
        SessionSpec ss;
        ss.id = require_string(s, "id", "session entry");
        ss.source_node = require_string(s, "source", "session '" + ss.id + "'");
        if (!s.contains("sinks") || !s.at("sinks").is_array())
            throw ParseError("session '" + ss.id + "' must carry a 'sinks' array");
        for (const auto& u : s.at("sinks")) {
            if (!u.is_string()) throw ParseError("sinks of session '" + ss.id + "' must be strings");
            ss.sinks.push_back(u.get<std::string>());
        }
        std::sort(ss.sinks.begin(), ss.sinks.end());
        spec.sessions.push_back(std::move(ss));
    }
    return spec;
}

namespace {

// Path-marking DFS; flags whether the directed graph (restricted to edges
// with declared endpoints) has a cycle.
bool has_directed_cycle(const NetworkSpec& spec) {
    std::unordered_map<std::string, int> node_ix;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i)
        node_ix.emplace(spec.nodes[i], static_cast<int>(i));
    std::vector<std::vector<int>> adj(spec.nodes.size());
    for (const auto& e : spec.edges) {
        auto t = node_ix.find(e.tail);
        auto h = node_ix.find(e.head);
        if (t == node_ix.end() || h == node_ix.end()) continue;
        adj[t->second].push_back(h->second);
    }
    std::vector<int> state(spec.nodes.size(), 0); // 0 new, 1 on path, 2 done
    std::vector<std::pair<int, std::size_t>> stack;
    for (std::size_t start = 0; start < spec.nodes.size(); ++start) {
        if (state[start] != 0) continue;
        stack.emplace_back(static_cast<int>(start), 0);
        state[start] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next < adj[v].size()) {
                int w = adj[v][next++];
                if (state[w] == 1) return true;
                if (state[w] == 0) {
                    state[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace

std::vector<Violation> validate_network(const NetworkSpec& spec) {
    std::vector<Violation> out;
    auto flag = [&out](std::string code, std::string subject, std::string detail) {
        out.push_back({std::move(code), std::move(subject), std::move(detail)});
    };

    std::unordered_set<std::string> nodes;
    for (const auto& n : spec.nodes) {
        if (!nodes.insert(n).second)
            flag("duplicate-node", n, "node '" + n + "' declared more than once");
    }
    std::unordered_set<std::string> edge_ids;
    for (const auto& e : spec.edges) {
        if (!edge_ids.insert(e.id).second)
            flag("duplicate-edge", e.id, "edge '" + e.id + "' declared more than once");
        if (!nodes.count(e.tail))
            flag("unknown-node", e.id, "edge '" + e.id + "' tail '" + e.tail + "' is not a declared node");
        if (!nodes.count(e.head))
            flag("unknown-node", e.id, "edge '" + e.id + "' head '" + e.head + "' is not a declared node");
        if (e.tail == e.head)
            flag("self-loop", e.id, "edge '" + e.id + "' has equal tail and head");
        if (e.capacity <= 0)
            flag("nonpositive-capacity", e.id,
                 "edge '" + e.id + "' capacity " + format_rational(e.capacity) + " must be > 0");
    }
    std::unordered_set<std::string> session_ids;
    for (const auto& s : spec.sessions) {
        if (!session_ids.insert(s.id).second)
            flag("duplicate-session", s.id, "session '" + s.id + "' declared more than once");
        if (!nodes.count(s.source_node))
            flag("unknown-node", s.id,
                 "session '" + s.id + "' source '" + s.source_node + "' is not a declared node");
        if (s.sinks.empty())
            flag("empty-sinks", s.id, "session '" + s.id + "' demands no sinks");
        std::unordered_set<std::string> seen;
        for (const auto& u : s.sinks) {
            if (!nodes.count(u))
                flag("unknown-node", s.id, "session '" + s.id + "' sink '" + u + "' is not a declared node");
            if (!seen.insert(u).second)
                flag("duplicate-sink", s.id, "session '" + s.id + "' lists sink '" + u + "' twice");
            if (u == s.source_node)
                flag("source-in-sinks", s.id,
                     "session '" + s.id + "' demands itself at its source node '" + u + "'");
        }
    }
    if (has_directed_cycle(spec))
        flag("cyclic-network", "", "network graph must be acyclic");
    return out;
}

NetworkSpec parse_network(const std::string& text) {
    NetworkSpec spec = parse_network_lenient(text);
    auto violations = validate_network(spec);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "invalid network:";
        for (const auto& v : violations) os << "\n  [" << v.code << "] " << v.detail;
        throw InvalidNetworkError(os.str());
    }
    return spec;
}

std::string serialize_network(const NetworkSpec& spec) {
    ordered_json doc;
    doc["nodes"] = spec.nodes;
    doc["edges"] = ordered_json::array();
    for (const auto& e : spec.edges) {
        ordered_json je;
        je["id"] = e.id;
        je["tail"] = e.tail;
        je["head"] = e.head;
        je["capacity"] = format_rational(e.capacity);
        doc["edges"].push_back(std::move(je));
    }
    doc["sessions"] = ordered_json::array();
    for (const auto& s : spec.sessions) {
        ordered_json js;
        js["id"] = s.id;
        js["source"] = s.source_node;
        js["sinks"] = s.sinks;
        doc["sessions"].push_back(std::move(js));
    }
    return doc.dump(2) + "\n";
}

} // namespace fdbound
