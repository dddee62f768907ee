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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "qaoa_girth/io.hpp"
#include "qaoa_girth/published.hpp"

namespace qg = qaoa_girth;
namespace io = qaoa_girth::io;

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 rng(601);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(std::numbers::pi), "3.1415926535897931");
}

TEST(ParamsJson, RoundTrip) {
  const auto x = qg::QaoaParams({0.1, 0.2}, {0.3, 1.0 / 3.0}, 4);
  const auto j = io::params_to_json(x);
  EXPECT_EQ(j.at("p"), 2);
  EXPECT_EQ(j.at("q"), 4);
  EXPECT_EQ(io::params_from_json(j), x);
  EXPECT_EQ(io::params_from_json(io::json::parse(j.dump())), x);

  const auto path = (std::filesystem::temp_directory_path() / "qaoa_girth_params_rt.json").string();
  io::save_params(path, qg::published::optimal_params(6));
  EXPECT_EQ(io::load_params(path), qg::published::optimal_params(6));
  std::filesystem::remove(path);
}

TEST(ParamsJson, DefaultsAndErrors) {
  EXPECT_EQ(io::params_from_json(io::json::parse(R"({"gamma":[0.5],"beta":[0.4]})")).q(), 2);
  for (const char* bad : {R"([1,2])", R"({"gamma":[0.5]})", R"({"p":2,"gamma":[0.5],"beta":[0.4]})",
                          R"({"gamma":[0.5,0.1],"beta":[0.4]})", R"({"gamma":["x"],"beta":[0.4]})",
                          R"({"q":1,"gamma":[0.5],"beta":[0.4]})"}) {
    EXPECT_THROW(io::params_from_json(io::json::parse(bad)), std::invalid_argument) << bad;
  }
  EXPECT_THROW(io::load_params("/nonexistent/params.json"), std::invalid_argument);
}

TEST(TreeJson, RoundTripAndValidation) {
  const auto t = qg::build_tree(3, 2, 1);
  const auto back = io::tree_from_json(io::json::parse(io::tree_to_json(t).dump()));
  EXPECT_EQ(back.hyperedges, t.hyperedges);
  EXPECT_EQ(back.couplings, t.couplings);
  EXPECT_EQ(back.num_vertices, t.num_vertices);
  EXPECT_EQ(back.D, t.D);
  const auto minimal = io::tree_from_json(io::json::parse(R"({"q":2,"D":1,"p":1,"hyperedges":[[0,1],[1,2]]})"));
  EXPECT_EQ(minimal.num_vertices, 3);
  EXPECT_EQ(minimal.couplings, (std::vector<int>{-1, -1}));
  EXPECT_THROW(io::tree_from_json(io::json::parse(R"({"q":2,"D":1,"p":1,"hyperedges":[[0,1],[1,2],[2,0]]})")),
               std::invalid_argument);
  EXPECT_THROW(io::tree_from_json(io::json::parse(R"({"q":2,"D":1,"p":1,"hyperedges":[[0,1,2]]})")),
               std::invalid_argument);
}

TEST(RecordsCsv, HeaderAndPaddedRows) {
  EXPECT_EQ(io::records_csv_header(2), "p,q,nu_bar,gamma_1,gamma_2,beta_1,beta_2,converged,n_evals");
  const qg::OptimumRecord r1{qg::QaoaParams({0.5}, {0.25}), 0.1, 1e-9, 42, true};
  EXPECT_EQ(io::records_csv_row(r1, 3), "1,2,0.10000000000000001,0.5,,,0.25,,,true,42");
  EXPECT_THROW(io::records_csv_row(r1, 0), std::invalid_argument);
}

TEST(RecordsCsv, RoundTrip) {
  std::vector<qg::OptimumRecord> recs;
  for (int p = 1; p <= 4; ++p) {
    recs.push_back({qg::published::optimal_params(p), *qg::published::optimal_value(p) + 1e-17 * p, 0.0, 100 * p,
                    p % 2 == 0});
  }
  std::string text = io::records_csv_header(4) + "\n";
  for (const auto& r : recs) text += io::records_csv_row(r, 4) + "\n";
  const auto back = io::parse_records_csv(text);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(back[i].params, recs[i].params);
    EXPECT_EQ(back[i].value, recs[i].value);
    EXPECT_EQ(back[i].n_evals, recs[i].n_evals);
    EXPECT_EQ(back[i].converged, recs[i].converged);
  }
  // CRLF line endings and trailing blank lines are tolerated.
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  EXPECT_EQ(io::parse_records_csv(crlf + "\r\n").size(), 4u);
}

TEST(RecordsCsv, RejectsMalformed) {
  const std::string h = io::records_csv_header(1) + "\n";
  for (const std::string& bad : {std::string(), std::string("p,q\n1,2\n"), h + "1,2,0.3,0.5,0.4,true\n",
                                 h + "1,2,abc,0.5,0.4,true,3\n", h + "1,2,0.3,0.5,0.4,yes,3\n",
                                 h + "2,2,0.3,0.5,0.4,true,3\n", h + "1,2,0.3,,0.4,true,3\n"}) {
    EXPECT_THROW(io::parse_records_csv(bad), std::invalid_argument) << bad;
  }
}

TEST(RecordJson, RoundTrip) {
  const qg::OptimumRecord r{qg::QaoaParams({0.3, 0.6}, {0.5, 0.2}, 3), 0.25, 3e-8, 77, true};
  const auto back = io::record_from_json(io::json::parse(io::record_to_json(r).dump()));
  EXPECT_EQ(back.params, r.params);
  EXPECT_EQ(back.value, r.value);
  EXPECT_EQ(back.grad_norm, r.grad_norm);
  EXPECT_EQ(back.n_evals, r.n_evals);
  EXPECT_EQ(back.converged, r.converged);
  EXPECT_THROW(io::record_from_json(io::json::parse(R"({"gamma":[1]})")), std::invalid_argument);
}
