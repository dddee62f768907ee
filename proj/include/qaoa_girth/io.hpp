// Copyright 2026 The qaoa-girth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: parameter JSON, TreeSpec JSON, optimum records as CSV and JSON.
// Requires nlohmann/json on the include path.

#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaoa_girth/core.hpp"
#include "qaoa_girth/optim.hpp"
#include "qaoa_girth/tree.hpp"

namespace qaoa_girth::io {

using json = nlohmann::json;

/// Shortest form that reads back as the same double (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------
// {"p": int, "q": int, "gamma": [...], "beta": [...]}

inline json params_to_json(const QaoaParams& x) {
  return json{{"p", x.p()}, {"q", x.q()}, {"gamma", x.gamma()}, {"beta", x.beta()}};
}

inline QaoaParams params_from_json(const json& j) {
  try {
    if (!j.is_object()) throw std::invalid_argument("parameter file must hold a JSON object");
    const auto gamma = j.at("gamma").get<std::vector<double>>();
    const auto beta = j.at("beta").get<std::vector<double>>();
    const int q = j.contains("q") ? j.at("q").get<int>() : 2;
    QaoaParams x(gamma, beta, q);
    if (j.contains("p") && j.at("p").get<int>() != x.p()) {
      throw std::invalid_argument("parameter file: p does not match the angle lists");
    }
    return x;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("parameter file: ") + e.what());
  }
}

inline QaoaParams load_params(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return params_from_json(j);
}

inline void save_params(const std::string& path, const QaoaParams& x) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << params_to_json(x).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// TreeSpec: {"q", "D", "p", "hyperedges": [[...]], "couplings": [...]}

inline json tree_to_json(const TreeSpec& t) {
  return json{{"q", t.q},
              {"D", t.D},
              {"p", t.p},
              {"num_vertices", t.num_vertices},
              {"central_edge", t.central_edge},
              {"hyperedges", t.hyperedges},
              {"couplings", t.couplings}};
}

inline TreeSpec tree_from_json(const json& j) {
  try {
    TreeSpec t;
    t.q = j.at("q").get<int>();
    t.D = j.at("D").get<long long>();
    t.p = j.at("p").get<int>();
    t.hyperedges = j.at("hyperedges").get<std::vector<std::vector<int>>>();
    t.central_edge = j.value("central_edge", 0);
    int max_vertex = -1;
    for (const auto& e : t.hyperedges) {
      for (int v : e) max_vertex = std::max(max_vertex, v);
    }
    t.num_vertices = j.value("num_vertices", max_vertex + 1);
    t.couplings = j.value("couplings", std::vector<int>(t.hyperedges.size(), -1));
    validate_tree(t);
    return t;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("tree spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Optimum records.

inline std::string records_csv_header(int p_max) {
  std::string h = "p,q,nu_bar";
  for (int r = 1; r <= p_max; ++r) h += ",gamma_" + std::to_string(r);
  for (int r = 1; r <= p_max; ++r) h += ",beta_" + std::to_string(r);
  return h + ",converged,n_evals";
}

/// One CSV row; columns beyond the record's depth are left empty.
inline std::string records_csv_row(const OptimumRecord& rec, int p_max) {
  const int p = rec.params.p();
  if (p > p_max) throw std::invalid_argument("records_csv_row: depth exceeds table width");
  std::string row = std::to_string(p) + "," + std::to_string(rec.params.q()) + "," + format_double(rec.value);
  for (int r = 1; r <= p_max; ++r) row += "," + (r <= p ? format_double(rec.params.gamma(r)) : std::string());
  for (int r = 1; r <= p_max; ++r) row += "," + (r <= p ? format_double(rec.params.beta(r)) : std::string());
  row += std::string(",") + (rec.converged ? "true" : "false") + "," + std::to_string(rec.n_evals);
  return row;
}

inline json record_to_json(const OptimumRecord& rec) {
  return json{{"p", rec.params.p()},
              {"q", rec.params.q()},
              {"nu_bar", rec.value},
              {"gamma", rec.params.gamma()},
              {"beta", rec.params.beta()},
              {"grad_norm", rec.grad_norm},
              {"converged", rec.converged},
              {"n_evals", rec.n_evals}};
}

inline OptimumRecord record_from_json(const json& j) {
  try {
    OptimumRecord rec{QaoaParams(j.at("gamma").get<std::vector<double>>(), j.at("beta").get<std::vector<double>>(),
                                 j.value("q", 2)),
                      j.at("nu_bar").get<double>(), j.value("grad_norm", 0.0), j.value("n_evals", 0LL),
                      j.value("converged", false)};
    return rec;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("record: ") + e.what());
  }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("records: bad number in " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("records: bad number in " + what + ": '" + s + "'");
  return v;
}

}  // namespace detail

/// Parses a records CSV written by `records_csv_header` / `records_csv_row`.
inline std::vector<OptimumRecord> parse_records_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("records: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = detail::split_csv_line(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* need : {"p", "q", "nu_bar", "converged", "n_evals"}) {
    if (!col.count(need)) throw std::invalid_argument(std::string("records: missing column ") + need);
  }

  std::vector<OptimumRecord> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    const std::string where = "line " + std::to_string(lineno);
    if (cells.size() != header.size()) throw std::invalid_argument("records: wrong field count on " + where);
    const int p = static_cast<int>(detail::parse_double(cells[col["p"]], where));
    const int q = static_cast<int>(detail::parse_double(cells[col["q"]], where));
    std::vector<double> gamma, beta;
    for (int r = 1; r <= p; ++r) {
      const auto g = col.find("gamma_" + std::to_string(r));
      const auto b = col.find("beta_" + std::to_string(r));
      if (g == col.end() || b == col.end()) throw std::invalid_argument("records: missing angle column on " + where);
      gamma.push_back(detail::parse_double(cells[g->second], where));
      beta.push_back(detail::parse_double(cells[b->second], where));
    }
    const std::string& conv = cells[col["converged"]];
    if (conv != "true" && conv != "false") throw std::invalid_argument("records: bad converged flag on " + where);
    OptimumRecord rec{QaoaParams(gamma, beta, q), detail::parse_double(cells[col["nu_bar"]], where), 0.0,
                      static_cast<long long>(detail::parse_double(cells[col["n_evals"]], where)), conv == "true"};
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace qaoa_girth::io
