#pragma once

#include "ghzsim/protocol.hpp"

namespace ghzsim {

struct RunConfig {
    AtomFamily family;
    int sign;
    int shots;
    std::uint64_t seed;
    int cutoff;
    double tol;
};

/// Stable-schema JSON:
/// {"config":{...},"shots":[{"i":0,"labels":[...],"eigs":[...],"product":1},...],
///  "histogram":{...},"expected_D":1.0,"pass":true}
std::string report_json(const RunConfig& config, const TestResult& result);

/// Columns: shot,label1,label2,label3,eig1,eig2,eig3,product
std::string report_csv(const TestResult& result);

}  // namespace ghzsim
