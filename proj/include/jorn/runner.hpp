#pragma once

#include "jorn/graph.hpp"

#include <string>
#include <vector>

namespace jorn {

struct Discrepancy {
    std::string stage;
    std::string subject;
    std::string field;
    std::string expected;
    std::string computed;
    std::string note;
};

struct StageResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> lines;
};

struct RunConfig {
    std::string data_dir;
    std::vector<std::string> stages;  // empty runs everything
    std::vector<std::pair<std::string, std::vector<ParamMap>>> samples;
};

struct RunReport {
    std::vector<StageResult> stages;
    std::vector<Discrepancy> discrepancies;
    std::string summary;
    int exit_code = 0;  // 0 confirmed, 1 mismatch, 2 input error

    std::string to_text() const;
    std::string to_json_text() const;
};

const std::vector<std::string>& stage_names();

std::string default_data_dir();

// parses "J_27:eps=2,phi=3"
std::pair<std::string, ParamMap> parse_sample_override(const std::string& text);

RunReport run_all(const RunConfig& cfg);
RunReport run_all(const Catalog& cat, const CurveFile& cf, const std::vector<std::string>& stages = {});

}  // namespace jorn
