#include "ghzsim/report.hpp"

#include <sstream>

#include <json.hpp>

namespace ghzsim {

std::string report_json(const RunConfig& config, const TestResult& result) {
    nlohmann::ordered_json j;
    j["config"] = {
        {"family", config.family == AtomFamily::Cascade ? "cascade" : "lambda"},
        {"sign", config.sign > 0 ? "plus" : "minus"},
        {"shots", config.shots},
        {"seed", config.seed},
        {"cutoff", config.cutoff},
        {"tol", config.tol},
    };
    j["shots"] = nlohmann::ordered_json::array();
    for (const OutcomeRecord& rec : result.records) {
        j["shots"].push_back({{"i", rec.shot},
                              {"labels", {rec.labels[0], rec.labels[1], rec.labels[2]}},
                              {"eigs", {rec.eigs[0], rec.eigs[1], rec.eigs[2]}},
                              {"product", rec.product}});
    }
    j["histogram"] = nlohmann::ordered_json::object();
    for (const auto& [branch, count] : result.aggregate.histogram) j["histogram"][branch] = count;
    j["expected_D"] = result.aggregate.expected_d;
    j["pass"] = result.aggregate.all_match;
    return j.dump(2) + "\n";
}

std::string report_csv(const TestResult& result) {
    std::ostringstream out;
    out << "shot,label1,label2,label3,eig1,eig2,eig3,product\n";
    for (const OutcomeRecord& rec : result.records) {
        out << rec.shot << ',' << rec.labels[0] << ',' << rec.labels[1] << ',' << rec.labels[2]
            << ',' << rec.eigs[0] << ',' << rec.eigs[1] << ',' << rec.eigs[2] << ','
            << rec.product << "\n";
    }
    return out.str();
}

}  // namespace ghzsim
