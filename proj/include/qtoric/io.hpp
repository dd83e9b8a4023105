#pragma once

// JSON encodings: characteristic-matrix input files, polynomials as
// sorted [generator_index, exponent] pair lists, and run reports.
//
// Matrix file, schema version 1:
//   {"version": 1, "n": 2, "columns": [[1,0],[0,1],[1,0],[0,1]]}
// "version" may be omitted; columns 1..n are F_1..F_n, n+1..2n are F'_1..F'_n.

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtoric/cube.hpp"
#include "qtoric/gf2poly.hpp"
#include "qtoric/manifolds.hpp"

namespace qtoric::io {

using json = nlohmann::json;

inline constexpr int kMatrixSchemaVersion = 1;

inline CharacteristicMatrix matrix_from_json(const json& j) {
  try {
    if (!j.is_object()) throw std::invalid_argument("matrix file: top level must be an object");
    if (j.contains("version") && j.at("version").get<int>() != kMatrixSchemaVersion) {
      throw std::invalid_argument("matrix file: unsupported schema version " +
                                  j.at("version").dump());
    }
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kHardDimensionCap) {
      throw std::invalid_argument("matrix file: n out of range");
    }
    auto columns = j.at("columns").get<std::vector<std::vector<std::int64_t>>>();
    return CharacteristicMatrix(static_cast<std::size_t>(n), std::move(columns));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("matrix file: ") + e.what());
  }
}

inline json matrix_to_json(const CharacteristicMatrix& cm) {
  return {{"version", kMatrixSchemaVersion},
          {"n", cm.dimension()},
          {"columns", cm.columns()}};
}

inline CharacteristicMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("matrix file " + path + " is not valid JSON: " + e.what());
  }
  return matrix_from_json(j);
}

/// One monomial: sorted [index, exponent] pairs; the unit is [].
using TermList = std::vector<std::vector<std::array<unsigned, 2>>>;

inline TermList encode(const Gf2Polynomial& p) {
  TermList out;
  for (const auto& m : p.terms()) {
    std::vector<std::array<unsigned, 2>> pairs;
    for (const auto& [i, e] : m.pairs()) pairs.push_back({static_cast<unsigned>(i), e});
    out.push_back(std::move(pairs));
  }
  return out;
}

inline Gf2Polynomial decode(const TermList& terms) {
  std::vector<Monomial> monomials;
  for (const auto& pairs : terms) {
    Monomial m;
    for (const auto& [i, e] : pairs) m = m * Monomial::variable(i, e);
    monomials.push_back(m);
  }
  return Gf2Polynomial::from_terms(std::move(monomials));
}

struct ComponentRecord {
  int degree = 0;
  TermList terms;
  std::string text;
  friend bool operator==(const ComponentRecord&, const ComponentRecord&) = default;
};

struct ClassRecord {
  std::string name;
  std::vector<ComponentRecord> components;
  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct Inputs {
  std::optional<std::string> family;
  std::optional<int> n;
  std::optional<std::string> basis;
  std::optional<std::string> matrix_source;
  std::optional<int> n_max;
  std::optional<bool> check;
  friend bool operator==(const Inputs&, const Inputs&) = default;
};

struct RunReport {
  std::string command;
  std::vector<std::string> args;
  Inputs inputs;
  std::vector<std::string> generators;
  std::vector<TermList> relations;
  std::vector<ClassRecord> classes;
  std::optional<BoundReport> bound;
  std::vector<std::vector<int>> sigma_rows;
  std::vector<Verdict> verdicts;
  /// Wall time; kept outside the deterministic "report" body.
  double timing_ms = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline ClassRecord class_record(const std::string& name, const GradedClass& c,
                                const std::vector<std::string>& names) {
  ClassRecord r{name, {}};
  for (std::size_t k = 0; k < c.components.size(); ++k) {
    r.components.push_back(
        {static_cast<int>(2 * k), encode(c.components[k]), to_string(c.components[k], names)});
  }
  return r;
}

namespace detail {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

}  // namespace detail

inline json to_json(const RunReport& r) {
  json body;
  body["command"] = r.command;
  body["args"] = r.args;
  json inputs = json::object();
  detail::put_optional(inputs, "family", r.inputs.family);
  detail::put_optional(inputs, "n", r.inputs.n);
  detail::put_optional(inputs, "basis", r.inputs.basis);
  detail::put_optional(inputs, "matrix_source", r.inputs.matrix_source);
  detail::put_optional(inputs, "n_max", r.inputs.n_max);
  detail::put_optional(inputs, "check", r.inputs.check);
  body["inputs"] = inputs;
  body["generators"] = r.generators;
  body["relations"] = r.relations;
  json classes = json::array();
  for (const auto& c : r.classes) {
    json comps = json::array();
    for (const auto& comp : c.components) {
      comps.push_back({{"degree", comp.degree}, {"terms", comp.terms}, {"text", comp.text}});
    }
    classes.push_back({{"name", c.name}, {"components", comps}});
  }
  body["classes"] = classes;
  if (r.bound) {
    body["bound"] = {{"dimension", r.bound->dimension},
                     {"k_max", r.bound->k_max},
                     {"sw_bound", r.bound->sw_bound},
                     {"generic_bound", r.bound->generic_bound},
                     {"final", r.bound->final_bound}};
  }
  body["sigma_rows"] = r.sigma_rows;
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"detail", v.detail}});
  }
  body["verdicts"] = verdicts;
  return {{"report", body}, {"timing_ms", r.timing_ms}};
}

inline RunReport from_json(const json& j) {
  const json& body = j.at("report");
  RunReport r;
  r.command = body.at("command").get<std::string>();
  r.args = body.at("args").get<std::vector<std::string>>();
  const json& inputs = body.at("inputs");
  detail::get_optional(inputs, "family", r.inputs.family);
  detail::get_optional(inputs, "n", r.inputs.n);
  detail::get_optional(inputs, "basis", r.inputs.basis);
  detail::get_optional(inputs, "matrix_source", r.inputs.matrix_source);
  detail::get_optional(inputs, "n_max", r.inputs.n_max);
  detail::get_optional(inputs, "check", r.inputs.check);
  r.generators = body.at("generators").get<std::vector<std::string>>();
  r.relations = body.at("relations").get<std::vector<TermList>>();
  for (const auto& c : body.at("classes")) {
    ClassRecord rec{c.at("name").get<std::string>(), {}};
    for (const auto& comp : c.at("components")) {
      rec.components.push_back({comp.at("degree").get<int>(), comp.at("terms").get<TermList>(),
                                comp.at("text").get<std::string>()});
    }
    r.classes.push_back(std::move(rec));
  }
  if (body.contains("bound")) {
    const json& b = body.at("bound");
    r.bound = BoundReport{b.at("dimension").get<int>(), b.at("k_max").get<int>(),
                          b.at("sw_bound").get<int>(), b.at("generic_bound").get<int>(),
                          b.at("final").get<int>()};
  }
  r.sigma_rows = body.at("sigma_rows").get<std::vector<std::vector<int>>>();
  for (const auto& v : body.at("verdicts")) {
    r.verdicts.push_back({v.at("name").get<std::string>(), v.at("passed").get<bool>(),
                          v.at("detail").get<std::string>()});
  }
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

}  // namespace qtoric::io
