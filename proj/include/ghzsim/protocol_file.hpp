#pragma once

#include "ghzsim/protocol.hpp"

namespace ghzsim {

/// Header block of a protocol file; appears once, before any step line.
struct ProtocolHeader {
    AtomFamily family = AtomFamily::Cascade;
    int sign = 1;
    int cutoff = 4;
    double tolerance = kDefaultTol;
};

struct ParsedProtocol {
    ProtocolHeader header;
    std::vector<ProtocolStep> steps;
};

/// Thrown with a 1-based line number on any syntax or vocabulary error.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

/// Line-oriented key=value grammar. Comments (#) and blank lines ignored.
/// Angle values accept decimals plus the literals pi, pi/2, pi/4 with an
/// optional leading minus.
ParsedProtocol parse_protocol(const std::string& text);

std::string serialize_protocol(const ParsedProtocol& proto);

double parse_angle(const std::string& token);  // exposed for tests

}  // namespace ghzsim
