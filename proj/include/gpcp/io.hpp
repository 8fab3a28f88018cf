#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpcp/classify.hpp"
#include "gpcp/errorbound.hpp"
#include "gpcp/problem.hpp"
#include "gpcp/solvers.hpp"

namespace gpcp {

/// Problem files are JSON:
///
///   {
///     "schema_version": 1, "name": "...", "n": 2, "m": 4, "l": 4,
///     "F": {"tensors": [{"order": 4, "entries": [[[1,1,1,1], 1.0], ...]}],
///           "constant": [-1, 0]},
///     "G": {...},
///     "cone": "orthant" | {"generated": [[1, 0], [0, 1]]}
///   }
///
/// Indices are 1-based. Unlisted entries are zero, and tensor orders omitted
/// from a map become zero tensors.
GpcpProblem problem_from_json_text(const std::string& text);
GpcpProblem load_problem(const std::filesystem::path& path);

/// Canonical form: every order from m down to 2 is written, nonzero entries
/// only, in row-major order.
nlohmann::json problem_to_json(const GpcpProblem& p);
void save_problem(const GpcpProblem& p, const std::filesystem::path& path);

namespace fixtures {

/// a_1111 = 1, a_2111 = -1, a_2222 = 1.
DenseTensor example_2_1_a();
/// b_1111 = 1, b_2122 = -1, b_2222 = 1.
DenseTensor example_2_1_b();

/// F = A x^3 + (-1, 0), G = B x^3 + (1, 0) on R^2_+; solution set {(1, 1)}.
GpcpProblem example_5_1();
/// F = A x^3, G = B x^3.
GpcpProblem example_2_1_pair();
/// F = I x^3 + (-1, -1), G = x.
GpcpProblem tcp_unit();
/// F = x + (-1, -2), G = x.
GpcpProblem lcp_demo();
/// F = I x^3, G = I x^3.
GpcpProblem unit_unit_pair();
/// F = 0 x^3, G = I x^3.
GpcpProblem zero_unit_pair();

std::vector<std::string> names();
/// Throws InvalidArgument for an unknown name.
GpcpProblem by_name(const std::string& name);

}  // namespace fixtures

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const SolutionSetEstimate& omega);
nlohmann::json to_json(const ClassificationVerdict& verdict);
nlohmann::json to_json(const PathTrace& trace);
nlohmann::json to_json(const ErrorBoundReport& report, bool include_samples = false);
nlohmann::json to_json(const AssumptionProbeResult& result);

}  // namespace gpcp
