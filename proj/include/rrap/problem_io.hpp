#ifndef RRAP_PROBLEM_IO_HPP
#define RRAP_PROBLEM_IO_HPP

#include <string>

#include "rrap/model.hpp"

namespace rrap {

// Problem file format (JSON):
//   {"name": "...",
//    "subsystems": [{"r": 0.9, "c": 5, "w": 8}, ...],
//    "cost_budget": 400, "weight_budget": 414}

/// Parses and validates a problem from JSON text.
/// Throws InvalidProblemError on malformed or inconsistent input.
SerialParallelProblem parse_problem(const std::string& json_text);

/// Reads a problem file from disk. Throws InvalidProblemError if the file
/// cannot be read or does not validate.
SerialParallelProblem load_problem(const std::string& path);

/// Serializes a problem back to the file format (round-trips with
/// parse_problem).
std::string problem_to_json(const SerialParallelProblem& problem);

}  // namespace rrap

#endif  // RRAP_PROBLEM_IO_HPP
