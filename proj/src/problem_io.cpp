#include "rrap/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rrap {

namespace {

using nlohmann::json;

SerialParallelProblem from_json(const json& j) {
    SerialParallelProblem problem;
    problem.name = j.value("name", std::string{});
    if (!j.contains("subsystems") || !j["subsystems"].is_array()) {
        throw InvalidProblemError("problem file needs a \"subsystems\" array");
    }
    for (const auto& entry : j["subsystems"]) {
        Subsystem s;
        s.reliability = entry.at("r").get<double>();
        s.cost = entry.at("c").get<int>();
        s.weight = entry.at("w").get<int>();
        problem.subsystems.push_back(s);
    }
    problem.cost_budget = j.at("cost_budget").get<long long>();
    problem.weight_budget = j.at("weight_budget").get<long long>();
    return problem;
}

}  // namespace

SerialParallelProblem parse_problem(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InvalidProblemError(std::string("problem JSON does not parse: ") + e.what());
    }
    SerialParallelProblem problem;
    try {
        problem = from_json(j);
    } catch (const json::exception& e) {
        throw InvalidProblemError(std::string("problem JSON malformed: ") + e.what());
    }
    validate_problem(problem);
    return problem;
}

SerialParallelProblem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidProblemError("cannot open problem file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string problem_to_json(const SerialParallelProblem& problem) {
    nlohmann::ordered_json j;
    j["name"] = problem.name;
    j["subsystems"] = nlohmann::ordered_json::array();
    for (const Subsystem& s : problem.subsystems) {
        j["subsystems"].push_back({{"r", s.reliability}, {"c", s.cost}, {"w", s.weight}});
    }
    j["cost_budget"] = problem.cost_budget;
    j["weight_budget"] = problem.weight_budget;
    return j.dump(2) + "\n";
}

}  // namespace rrap
