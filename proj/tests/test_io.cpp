// Copyright 2026 The rmt-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>

#include "rmtlab/error.hpp"
#include "rmtlab/io.hpp"
#include "test_util.hpp"

namespace rmtlab {
namespace {

namespace fs = std::filesystem;

std::size_t count(const std::string& s, std::string_view needle) {
  std::size_t c = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++c;
  return c;
}

fs::path scratch(std::string_view name) {
  const auto dir = fs::temp_directory_path() / ("rmtlab_io_" + std::string(name));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(ScatterSvg, MarkersAndCircle) {
  Esd2D esd{{1.0, -1.0, Complex(0, 1), Complex(0, -1)}};
  const auto with = scatter_svg(esd, true);
  EXPECT_EQ(count(with, "<circle cx"), 4u);
  EXPECT_EQ(count(with, "unit-circle"), 1u);
  EXPECT_NE(with.find(">Re<"), std::string::npos);
  EXPECT_NE(with.find(">Im<"), std::string::npos);
  EXPECT_NE(with.find("viewBox=\"0 0 800 800\""), std::string::npos);
  // (1, 0) maps to 400 + 680/3 on the x axis.
  EXPECT_NE(with.find("cx=\"626.67\" cy=\"400.00\""), std::string::npos);
  EXPECT_EQ(count(scatter_svg(esd, false), "unit-circle"), 0u);
}

TEST(ScatterSvg, DedupKeepsLargeCloudSmall) {
  Esd2D esd;
  for (int k = 0; k < 1024; ++k) esd.eigenvalues.push_back(0.5);
  EXPECT_EQ(count(scatter_svg(esd, true), "<circle cx"), 1u);
  esd.eigenvalues.clear();
  const auto x = testing::random_gaussian(1024, 3);
  for (std::size_t k = 0; k < 1024; ++k) esd.eigenvalues.push_back(x.data()[k]);
  EXPECT_LT(scatter_svg(esd, true).size(), 1u << 20);
}

TEST(CurveSvg, BandAndLine) {
  const auto svg = curve_svg({{0.1, 0.2, 0.1, 0.3}, {0.2, 0.4, 0.3, 0.5}, {0.3, 0.5, 0.4, 0.6}},
                             "tail <curve>", "eps", "p");
  EXPECT_EQ(count(svg, "<polyline"), 1u);
  EXPECT_EQ(count(svg, "ci-band"), 1u);
  EXPECT_NE(svg.find("tail &lt;curve&gt;"), std::string::npos);
  EXPECT_EQ(count(curve_svg({}, "t", "x", "y"), "<polyline"), 0u);
  EXPECT_EQ(count(curve_svg({{1.0, 1.0, 1.0, 1.0}}, "t", "x", "y"), "<polyline"), 1u);
}

TEST(Csv, Schemas) {
  Summary s;
  s.columns = {"a", "b"};
  s.records = {{0, {1.5, NAN}, true}, {1, {0.25, 2.0}, false}};
  s.proportions = {{"eps=0.1", 0.1, 3, 10, 0.3, {0.1, 0.6}}, {"a<=1", 1.0, 1, 2, 0.5, {0, 1}}};
  EXPECT_EQ(trials_csv(s), "trial,a,b,singular\n0,1.5,nan,1\n1,0.25,2,0\n");
  ExperimentConfig c;
  c.ensemble.n = 100;
  c.ensemble.dist = EntryDistribution::real_gaussian();
  c.z = Complex(1, -1);
  EXPECT_EQ(smin_tail_csv(s, c),
            "epsilon,p_hat,ci_lo,ci_hi,trials,n,dist,z_re,z_im\n"
            "0.1,0.3,0.1,0.6,10,100,real-gaussian,1,-1\n");
  EXPECT_EQ(smallball_csv({{1.0, 0.5, 0.01, 0.9, std::nullopt, 1.0}}),
            "epsilon,p_hat,half_width,be_bound,esseen_bound,lcd_bound\n1,0.5,0.01,0.9,,1\n");
  PotentialGrid g{4, 0.8, 1.2, {{2.0, std::log(0.5)}, {0.0, std::nullopt}}};
  const auto pg = potential_grid_csv(g);
  EXPECT_NE(pg.find("\n2,0,"), std::string::npos);
  EXPECT_NE(pg.find("singular"), std::string::npos);
}

TEST(SummaryJson, Parses) {
  Summary s;
  s.kind = ExperimentKind::kNormBound;
  s.config_hash = 0xabcull;
  s.stats = {{"x", 2, 1.0, 1.0, 0.5, 1.5, {0.2, 1.8}}};
  s.scalars = {{"slope", 0.5}};
  const auto j = nlohmann::json::parse(summary_json(s));
  EXPECT_EQ(j["kind"], "norm-bound");
  EXPECT_EQ(j["config_hash"], "0000000000000abc");
  EXPECT_EQ(j["stats"][0]["median"], 1.0);
  EXPECT_EQ(j["scalars"]["slope"], 0.5);
}

TEST(VectorCsv, ReadsRealAndComplexRows) {
  const auto dir = scratch("vec");
  write_file(dir / "v.csv", "re,im\n1\n# comment\n\n2.5, -1\n");
  const auto v = read_vector_csv(dir / "v.csv");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[1], Complex(2.5, -1));
  write_file(dir / "bad.csv", "1\nx\n");
  EXPECT_THROW(read_vector_csv(dir / "bad.csv"), Error);
  EXPECT_THROW(read_vector_csv(dir / "missing.csv"), Error);
}

TEST(ResultsCache, HitOnlyOnExactHashAndArtifacts) {
  const auto dir = scratch("cache");
  ResultsCache cache(dir);
  EXPECT_FALSE(cache.lookup(42));
  write_file(cache.directory(42) / "a.csv", "x\n");
  cache.store(42, {"a.csv"});
  const auto hit = cache.lookup(42);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->tool_version, kToolVersion);
  EXPECT_FALSE(cache.lookup(43));
  fs::remove(cache.directory(42) / "a.csv");
  EXPECT_FALSE(cache.lookup(42));
}

}  // namespace
}  // namespace rmtlab
