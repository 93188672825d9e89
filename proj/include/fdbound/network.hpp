#pragma once

#include <string>
#include <vector>

#include "fdbound/rational.hpp"

namespace fdbound {

// Multi-source network coding instance: a capacitated DAG plus multicast
// sessions. The JSON file format is documented in the README.

struct EdgeSpec {
    std::string id;
    std::string tail;
    std::string head;
    Rational capacity; // must be > 0

    bool operator==(const EdgeSpec& o) const {
        return id == o.id && tail == o.tail && head == o.head && capacity == o.capacity;
    }
};

struct SessionSpec {
    std::string id;
    std::string source_node;
    std::vector<std::string> sinks; // sorted, unique, nonempty

    bool operator==(const SessionSpec& o) const = default;
};

struct NetworkSpec {
    std::vector<std::string> nodes;
    std::vector<EdgeSpec> edges;
    std::vector<SessionSpec> sessions;

    bool operator==(const NetworkSpec& o) const = default;
};

struct Violation {
    std::string code;    // machine-readable, e.g. "nonpositive-capacity"
    std::string subject; // id of the offending element
    std::string detail;  // human-readable sentence
};

// Parses and fully validates. Throws ParseError on malformed documents
// (with line/column) and InvalidNetworkError when any invariant fails.
NetworkSpec parse_network(const std::string& text);

// Parse without the validity gate: syntax errors still throw ParseError,
// but invariant violations are left for validate_network to report.
NetworkSpec parse_network_lenient(const std::string& text);

// Every invariant violation, as data; empty result means the spec is valid.
std::vector<Violation> validate_network(const NetworkSpec& spec);

// Canonical serialization; parse_network(serialize_network(s)) == s for
// valid s, byte-stable across runs.
std::string serialize_network(const NetworkSpec& spec);

} // namespace fdbound
