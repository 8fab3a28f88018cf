#include "gpcp/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gpcp/errors.hpp"

namespace gpcp {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) invalid(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) invalid(where, "missing field \"" + key + "\"");
  return *it;
}

int read_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) invalid(where, "expected an integer");
  return v.get<int>();
}

double read_real(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) invalid(where, "value must be finite");
  return d;
}

Vector read_vector(const json& v, int n, const std::string& where) {
  if (!v.is_array()) invalid(where, "expected an array");
  if (static_cast<int>(v.size()) != n) {
    invalid(where, "expected " + std::to_string(n) + " components, got " + std::to_string(v.size()));
  }
  Vector out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = read_real(v[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

DenseTensor read_tensor(const json& spec, int n, int order, const std::string& where) {
  const json& entries = field(spec, "entries", where);
  if (!entries.is_array()) invalid(where + ".entries", "expected an array");
  std::vector<SparseEntry> sparse;
  std::set<std::vector<int>> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string at = where + ".entries[" + std::to_string(e) + "]";
    const json& item = entries[e];
    if (!item.is_array() || item.size() != 2 || !item[0].is_array()) {
      invalid(at, "expected [index-list, value]");
    }
    const json& idx = item[0];
    if (static_cast<int>(idx.size()) != order) {
      invalid(at, "index list has length " + std::to_string(idx.size()) + " but the tensor has order " +
                      std::to_string(order));
    }
    SparseEntry entry;
    for (std::size_t s = 0; s < idx.size(); ++s) {
      const int i = read_int(idx[s], at + "[0][" + std::to_string(s) + "]");
      if (i < 1 || i > n) {
        invalid(at, "index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
      }
      entry.index.push_back(i - 1);
    }
    if (!seen.insert(entry.index).second) invalid(at, "duplicate index");
    entry.value = read_real(item[1], at + "[1]");
    sparse.push_back(std::move(entry));
  }
  return DenseTensor::from_sparse(order, n, sparse);
}

PolyMap read_map(const json& spec, int n, int degree_plus_one, const std::string& where) {
  const json& tensors = field(spec, "tensors", where);
  if (!tensors.is_array()) invalid(where + ".tensors", "expected an array");

  std::vector<std::optional<DenseTensor>> slots(static_cast<std::size_t>(degree_plus_one - 1));
  int previous = degree_plus_one + 1;
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const std::string at = where + ".tensors[" + std::to_string(k) + "]";
    const int order = read_int(field(tensors[k], "order", at), at + ".order");
    if (order < 2 || order > degree_plus_one) {
      invalid(at, "order " + std::to_string(order) + " outside [2, " + std::to_string(degree_plus_one) + "]");
    }
    if (order >= previous) invalid(at, "tensor orders must strictly descend");
    previous = order;
    slots[static_cast<std::size_t>(degree_plus_one - order)] = read_tensor(tensors[k], n, order, at);
  }

  std::vector<DenseTensor> tuple;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const int order = degree_plus_one - static_cast<int>(k);
    tuple.push_back(slots[k] ? *slots[k] : DenseTensor::zeros(order, n));
  }
  const Vector constant = spec.contains("constant")
                              ? read_vector(spec.at("constant"), n, where + ".constant")
                              : Vector::Zero(n);
  return PolyMap(TensorTuple(std::move(tuple)), constant);
}

Cone read_cone(const json& spec, int n) {
  if (spec.is_string()) {
    if (spec.get<std::string>() != "orthant") invalid("cone", "unknown cone \"" + spec.get<std::string>() + "\"");
    return Cone::orthant(n);
  }
  const json& gens = field(spec, "generated", "cone");
  if (!gens.is_array() || gens.empty()) invalid("cone.generated", "expected a nonempty array");
  std::vector<Vector> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = "cone.generated[" + std::to_string(i) + "]";
    Vector g = read_vector(gens[i], n, at);
    if (g.norm() == 0.0) invalid(at, "generator must be nonzero");
    generators.push_back(std::move(g));
  }
  return Cone::generated(std::move(generators));
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json map_to_json(const PolyMap& f) {
  json tensors = json::array();
  for (const auto& t : f.tuple().tensors()) {
    json entries = json::array();
    std::vector<int> index(static_cast<std::size_t>(t.order()), 0);
    const auto values = t.entries();
    for (std::size_t off = 0; off < values.size(); ++off) {
      std::size_t rest = off;
      for (int s = t.order() - 1; s >= 0; --s) {
        index[static_cast<std::size_t>(s)] = static_cast<int>(rest % static_cast<std::size_t>(t.dim())) + 1;
        rest /= static_cast<std::size_t>(t.dim());
      }
      if (values[off] != 0.0) entries.push_back(json::array({index, values[off]}));
    }
    tensors.push_back({{"order", t.order()}, {"entries", std::move(entries)}});
  }
  return {{"tensors", std::move(tensors)}, {"constant", to_json(f.constant())}};
}

}  // namespace

GpcpProblem problem_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) invalid("document", "expected a JSON object");

  const int version = read_int(field(doc, "schema_version", "document"), "schema_version");
  if (version != 1) invalid("schema_version", "unsupported version " + std::to_string(version));
  const int n = read_int(field(doc, "n", "document"), "n");
  const int m = read_int(field(doc, "m", "document"), "m");
  const int l = read_int(field(doc, "l", "document"), "l");
  if (n < 1) invalid("n", "must be positive");
  if (m < 2) invalid("m", "must be at least 2");
  if (l < 2) invalid("l", "must be at least 2");

  PolyMap f = read_map(field(doc, "F", "document"), n, m, "F");
  PolyMap g = read_map(field(doc, "G", "document"), n, l, "G");
  Cone cone = doc.contains("cone") ? read_cone(doc.at("cone"), n) : Cone::orthant(n);
  std::string name;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) invalid("name", "expected a string");
    name = doc.at("name").get<std::string>();
  }
  return GpcpProblem(std::move(f), std::move(g), std::move(cone), std::move(name));
}

GpcpProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return problem_from_json_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json problem_to_json(const GpcpProblem& p) {
  json doc;
  doc["schema_version"] = 1;
  doc["name"] = p.name();
  doc["n"] = p.dim();
  doc["m"] = p.f().degree_plus_one();
  doc["l"] = p.g().degree_plus_one();
  doc["F"] = map_to_json(p.f());
  doc["G"] = map_to_json(p.g());
  switch (p.cone().kind()) {
    case Cone::Kind::NonnegativeOrthant:
      doc["cone"] = "orthant";
      break;
    case Cone::Kind::FinitelyGenerated: {
      json gens = json::array();
      for (const auto& g : p.cone().generators()) gens.push_back(to_json(g));
      doc["cone"] = {{"generated", std::move(gens)}};
      break;
    }
    case Cone::Kind::DualOfFinitelyGenerated:
      throw InvalidArgument("problem files cannot describe halfspace-represented cones");
  }
  return doc;
}

void save_problem(const GpcpProblem& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << problem_to_json(p).dump(2) << '\n';
}

namespace fixtures {

DenseTensor example_2_1_a() {
  const std::vector<SparseEntry> entries{{{0, 0, 0, 0}, 1.0}, {{1, 0, 0, 0}, -1.0}, {{1, 1, 1, 1}, 1.0}};
  return DenseTensor::from_sparse(4, 2, entries);
}

DenseTensor example_2_1_b() {
  const std::vector<SparseEntry> entries{{{0, 0, 0, 0}, 1.0}, {{1, 0, 1, 1}, -1.0}, {{1, 1, 1, 1}, 1.0}};
  return DenseTensor::from_sparse(4, 2, entries);
}

GpcpProblem example_5_1() {
  return GpcpProblem(PolyMap(TensorTuple::leading_only(example_2_1_a()), Vector{{-1.0, 0.0}}),
                     PolyMap(TensorTuple::leading_only(example_2_1_b()), Vector{{1.0, 0.0}}),
                     Cone::orthant(2), "example_5_1");
}

GpcpProblem example_2_1_pair() {
  return GpcpProblem(PolyMap(TensorTuple::leading_only(example_2_1_a()), Vector::Zero(2)),
                     PolyMap(TensorTuple::leading_only(example_2_1_b()), Vector::Zero(2)),
                     Cone::orthant(2), "example_2_1_pair");
}

GpcpProblem tcp_unit() {
  return GpcpProblem(PolyMap(TensorTuple::leading_only(unit_tensor(4, 2)), Vector{{-1.0, -1.0}}),
                     PolyMap::identity(2), Cone::orthant(2), "tcp_unit");
}

GpcpProblem lcp_demo() {
  return GpcpProblem(PolyMap::affine(Matrix::Identity(2, 2), Vector{{-1.0, -2.0}}), PolyMap::identity(2),
                     Cone::orthant(2), "lcp_demo");
}

GpcpProblem unit_unit_pair() {
  const auto unit = TensorTuple::leading_only(unit_tensor(4, 2));
  return GpcpProblem(PolyMap(unit, Vector::Zero(2)), PolyMap(unit, Vector::Zero(2)), Cone::orthant(2),
                     "unit_unit_pair");
}

GpcpProblem zero_unit_pair() {
  return GpcpProblem(PolyMap(TensorTuple::leading_only(DenseTensor::zeros(4, 2)), Vector::Zero(2)),
                     PolyMap(TensorTuple::leading_only(unit_tensor(4, 2)), Vector::Zero(2)),
                     Cone::orthant(2), "zero_unit_pair");
}

std::vector<std::string> names() {
  return {"example_5_1", "example_2_1_pair", "tcp_unit", "lcp_demo", "unit_unit_pair", "zero_unit_pair"};
}

GpcpProblem by_name(const std::string& name) {
  if (name == "example_5_1") return example_5_1();
  if (name == "example_2_1_pair") return example_2_1_pair();
  if (name == "tcp_unit") return tcp_unit();
  if (name == "lcp_demo") return lcp_demo();
  if (name == "unit_unit_pair") return unit_unit_pair();
  if (name == "zero_unit_pair") return zero_unit_pair();
  throw InvalidArgument("unknown fixture \"" + name + "\"");
}

}  // namespace fixtures

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const SolutionSetEstimate& omega) {
  json points = json::array();
  for (std::size_t i = 0; i < omega.size(); ++i) {
    points.push_back({{"x", to_json(omega.points[i])}, {"residual", omega.residuals[i]}});
  }
  return {{"count", omega.size()}, {"dedupe_radius", omega.dedupe_radius}, {"points", std::move(points)}};
}

json to_json(const ClassificationVerdict& verdict) {
  json out{{"query", to_string(verdict.query)},
           {"outcome", verdict.counterexample_found ? "CounterexampleFound" : "NoCounterexampleFound"},
           {"summary", verdict.summary()},
           {"budget_used", verdict.budget_used},
           {"iters_per_start", verdict.iters_per_start},
           {"x", to_json(verdict.best.x)},
           {"value", verdict.best.value}};
  if (verdict.query == Query::ErPair) {
    out["v"] = verdict.best.v;
    out["t"] = verdict.best.t;
  }
  return out;
}

json to_json(const PathTrace& trace) {
  json samples = json::array();
  for (const auto& s : trace.samples) {
    samples.push_back({{"t", s.t}, {"x", to_json(s.x)}, {"norm_x", s.norm_x}, {"residual", s.residual}});
  }
  json out{{"outcome", to_string(trace.outcome)}, {"samples", std::move(samples)}};
  out["solution"] = trace.solution ? to_json(*trace.solution) : json(nullptr);
  return out;
}

json to_json(const ErrorBoundReport& report, bool include_samples) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json out{{"omega_hat", to_json(report.omega_hat)},
           {"box", {{"lo", to_json(report.box.lo)}, {"hi", to_json(report.box.hi)}}},
           {"sample_count", report.sample_count},
           {"ratio_count", report.ratios.size()},
           {"excluded", report.excluded},
           {"c_estimate", report.c_estimate},
           {"tau_fit", finite_or_null(report.tau_fit)},
           {"tau_fit_box", finite_or_null(report.tau_fit_box)},
           {"caveat", "distances are measured to the estimated solution set (" +
                          std::to_string(report.omega_hat.size()) +
                          " points); c_estimate overestimates c if solutions were missed"}};
  if (include_samples) {
    json samples = json::array();
    for (const auto& s : report.ratios) {
      samples.push_back({{"x", to_json(s.x)}, {"dist", s.dist}, {"r", s.r}, {"ratio", s.ratio}, {"local", s.local}});
    }
    out["samples"] = std::move(samples);
  }
  return out;
}

json to_json(const AssumptionProbeResult& result) {
  json out{{"target", to_string(result.target)}, {"outcome", result.summary()}};
  if (!result.rho_probes.empty()) {
    json probes = json::array();
    for (const auto& r : result.rho_probes) {
      json item{{"rho", r.rho}, {"violated", r.violated}, {"pairs_tested", r.pairs_tested},
                {"min_slack", std::isfinite(r.min_slack) ? json(r.min_slack) : json(nullptr)}};
      if (r.witness) {
        item["witness"] = {{"x", to_json(r.witness->x)},
                           {"y", to_json(r.witness->y)},
                           {"value", r.witness->value},
                           {"bound", r.witness->bound}};
      }
      probes.push_back(std::move(item));
    }
    out["rho_probes"] = std::move(probes);
  }
  if (!result.directions.empty()) {
    json dirs = json::array();
    for (const auto& d : result.directions) {
      dirs.push_back({{"direction", to_json(d.direction)},
                      {"j0", d.j0 < 0 ? json(nullptr) : json(d.j0 + 1)},
                      {"limit", d.limit},
                      {"limits", d.limits},
                      {"violation", d.violation}});
    }
    out["directions"] = std::move(dirs);
  }
  if (!result.rays.empty()) {
    json rays = json::array();
    for (const auto& r : result.rays) {
      json item{{"direction", to_json(r.direction)},
                {"evaluations", r.scales.size()},
                {"truncated", r.truncated},
                {"premise_met", r.premise_met},
                {"neg_f_tail", r.neg_f_tail},
                {"neg_g_tail", r.neg_g_tail},
                {"violation", r.violation},
                {"note", r.note}};
      if (r.premise_met) {
        item["limsup"] = r.limsup;
        item["j0"] = r.j0 < 0 ? json(nullptr) : json(r.j0 + 1);
      }
      rays.push_back(std::move(item));
    }
    out["rays"] = std::move(rays);
  }
  return out;
}

}  // namespace gpcp
