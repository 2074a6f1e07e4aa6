#pragma once
// Commands behind the CLI and the C API; text and JSON from one data model.

#include "catalog.hpp"
#include "cohomology.hpp"

#include <string>

namespace ca {

struct RunOptions {
    int max_degree = 6;
    int page = 2;
    int truncate = -1;        // window radius; -1 picks the spec default
    int samples = 200;        // random elements for the contraction suite
};

struct RunResult {
    std::string text;
    std::string json;
    bool pass = true;
};

const std::vector<std::string>& commands();
// throws std::invalid_argument on an unknown command
RunResult run(const std::string& command, const CourantSpec& spec, const RunOptions& opt);

} // namespace ca
