/*
 * Copyright 2026 The authid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "authid/common/error.hpp"
#include "authid/common/rng.hpp"
#include "authid/numcore/adam.hpp"
#include "authid/numcore/grad_check.hpp"
#include "authid/numcore/graph.hpp"
#include "authid/numcore/params_io.hpp"

namespace authid::numcore {
namespace {

TEST(Graph, SigmoidOfZero) {
  Graph<double> g;
  const auto x = g.input({1});
  const auto y = g.sigmoid(x);
  g.forward();
  EXPECT_DOUBLE_EQ(g.value(y)[0], 0.5);
  g.backward(y);
  EXPECT_DOUBLE_EQ(g.grad(x)[0], 0.25);
}

TEST(Graph, ConvolutionByHand) {
  Graph<double> g;
  const auto x = g.input({3, 1});
  const auto w = g.param({1, 2, 1});
  const auto b = g.param({1});
  const auto y = g.conv1d(x, w, b);
  const double xs[] = {1, 2, 3}, ws[] = {1, 1};
  g.set_input(x, xs);
  std::copy(std::begin(ws), std::end(ws), g.value(w).begin());
  g.forward();
  ASSERT_EQ(g.shape(y), (Shape{2, 1}));
  EXPECT_DOUBLE_EQ(g.value(y)[0], 3);
  EXPECT_DOUBLE_EQ(g.value(y)[1], 5);
}

TEST(Graph, MultiChannelConvolution) {
  // x [3, 2], w [2, 2, 2]: out[t, o] = b[o] + sum_k sum_c x[t+k, c] w[o, k, c]
  Graph<double> g;
  const auto x = g.input({3, 2});
  const auto w = g.param({2, 2, 2});
  const auto b = g.param({2});
  const auto y = g.conv1d(x, w, b);
  const double xs[] = {1, 2, 3, 4, 5, 6};
  g.set_input(x, xs);
  const double ws[] = {1, 0, 0, 1, -1, 1, 2, 0};
  std::copy(std::begin(ws), std::end(ws), g.value(w).begin());
  g.value(b)[0] = 0.5;
  g.value(b)[1] = -1;
  g.forward();
  const std::vector<double> got(g.value(y).begin(), g.value(y).end());
  EXPECT_EQ(got, (std::vector<double>{5.5, 6, 9.5, 10}));
}

TEST(Graph, MaxPoolByHand) {
  Graph<double> g;
  const auto x = g.input({2, 2});
  const auto y = g.max_pool(x);
  const double xs[] = {1, 4, 3, 2};
  g.set_input(x, xs);
  g.forward();
  EXPECT_DOUBLE_EQ(g.value(y)[0], 3);
  EXPECT_DOUBLE_EQ(g.value(y)[1], 4);
  const auto s = g.sum(y);
  g.forward();
  g.backward(s);
  const std::vector<double> dx(g.grad(x).begin(), g.grad(x).end());
  EXPECT_EQ(dx, (std::vector<double>{0, 1, 1, 0}));
}

TEST(Graph, SumGradientIsOnes) {
  Graph<double> g;
  const auto x = g.input({5});
  const auto s = g.sum(x);
  g.forward();
  g.backward(s);
  for (double d : g.grad(x)) EXPECT_EQ(d, 1.0);
}

TEST(Graph, CosineAndRuzickaValues) {
  Graph<double> g;
  const auto a = g.input({2});
  const auto b = g.input({2});
  const auto c = g.cosine(a, b);
  const auto r = g.ruzicka(a, b);
  const double av[] = {1, 2}, bv[] = {2, 1};
  g.set_input(a, av);
  g.set_input(b, bv);
  g.forward();
  EXPECT_NEAR(g.value(c)[0], 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(g.value(r)[0], 0.5);
  const double z[] = {0, 0};
  g.set_input(a, z);
  g.forward();
  EXPECT_EQ(g.value(c)[0], 0.0);
}

TEST(Graph, BceClipsAndSoftmaxNormalises) {
  Graph<double> g;
  const auto p = g.input({1});
  const auto y = g.input({1});
  const auto l = g.bce(p, y);
  const double one[] = {1.0}, zero[] = {0.0};
  g.set_input(p, one);
  g.set_input(y, zero);
  g.forward();
  EXPECT_NEAR(g.value(l)[0], -std::log(kBceClip), 1e-9);
  EXPECT_TRUE(std::isfinite(g.value(l)[0]));

  Graph<double> h;
  const auto z = h.input({3});
  const auto t = h.index_input(1);
  const auto x = h.softmax_xent(z, t);
  const double zs[] = {1, 2, 3};
  const std::int32_t target[] = {2};
  h.set_input(z, zs);
  h.set_indices(t, target);
  h.forward();
  const double lse = std::log(std::exp(1.0) + std::exp(2.0) + std::exp(3.0));
  EXPECT_NEAR(h.value(x)[0], lse - 3, 1e-12);
}

TEST(Graph, ShapeErrorsNameTheNode) {
  Graph<double> g;
  const auto x = g.input({4, 3});
  const auto w = g.param({2, 2, 5});
  const auto b = g.param({2});
  try {
    g.conv1d(x, w, b, "conv7");
    FAIL();
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("conv7"), std::string::npos) << e.what();
  }
  const auto u = g.input({3});
  const auto v = g.input({4});
  EXPECT_THROW(g.abs_diff(u, v), ShapeError);
  EXPECT_THROW(g.input({}), ShapeError);
  const auto wide = g.param({2, 9, 3});
  const auto bb = g.param({2});
  EXPECT_THROW(g.conv1d(x, wide, bb), ShapeError);
}

TEST(Graph, BackwardBeforeForwardThrows) {
  Graph<double> g;
  const auto x = g.input({2});
  const auto s = g.sum(x);
  EXPECT_THROW(g.backward(s), Error);
}

TEST(Graph, ParamGradientsAccumulateUntilZeroed) {
  Graph<double> g;
  const auto w = g.param({2});
  const auto x = g.input({2});
  const auto s = g.weighted_sum(x, w);
  const double xs[] = {3, 4};
  g.set_input(x, xs);
  g.forward();
  g.backward(s);
  g.backward(s);
  EXPECT_DOUBLE_EQ(g.grad(w)[0], 6);
  EXPECT_DOUBLE_EQ(g.grad(x)[0], 0);  // w is zero
  g.zero_grad();
  g.backward(s);
  EXPECT_DOUBLE_EQ(g.grad(w)[1], 4);
}

TEST(Graph, EmbeddingScattersIntoRepeatedRows) {
  Graph<double> g;
  const auto table = g.param({4, 2});
  const auto idx = g.index_input(3);
  const auto e = g.embedding(table, idx);
  const auto s = g.sum(e);
  const std::int32_t ids[] = {1, 3, 1};
  g.set_indices(idx, ids);
  g.forward();
  g.backward(s);
  const std::vector<double> dt(g.grad(table).begin(), g.grad(table).end());
  EXPECT_EQ(dt, (std::vector<double>{0, 0, 2, 2, 0, 0, 1, 1}));
  const std::int32_t bad[] = {0, 4, 0};
  g.set_indices(idx, bad);
  EXPECT_THROW(g.forward(), ShapeError);
}

struct KernelCase {
  OpKind kind;
  std::vector<Shape> shapes;
};

class KernelGradients : public ::testing::TestWithParam<KernelCase> {};

TEST_P(KernelGradients, MatchCentralDifferences) {
  const auto& c = GetParam();
  const double err = grad_check(c.kind, c.shapes, 40, 1234);
  EXPECT_LE(err, 1e-4) << op_name(c.kind);
}

INSTANTIATE_TEST_SUITE_P(
    AllKernels, KernelGradients,
    ::testing::Values(KernelCase{OpKind::kTanh, {{5, 3}}}, KernelCase{OpKind::kSigmoid, {{7}}},
                      KernelCase{OpKind::kMaxPool, {{6, 4}}}, KernelCase{OpKind::kSum, {{9}}},
                      KernelCase{OpKind::kScaleShift, {{4}}}, KernelCase{OpKind::kConv1d, {{7, 3}, {4, 3, 3}}},
                      KernelCase{OpKind::kConv1d, {{5, 2}, {3, 1, 2}}}, KernelCase{OpKind::kDense, {{6}, {4, 6}}},
                      KernelCase{OpKind::kEmbedding, {{5, 3}, {8}}}, KernelCase{OpKind::kAbsDiff, {{6}, {6}}},
                      KernelCase{OpKind::kSquareDiff, {{6}, {6}}}, KernelCase{OpKind::kWeightedSum, {{6}, {6}}},
                      KernelCase{OpKind::kCosine, {{6}, {6}}}, KernelCase{OpKind::kRuzicka, {{6}, {6}}},
                      KernelCase{OpKind::kBce, {}}, KernelCase{OpKind::kSoftmaxXent, {{5}}}),
    [](const ::testing::TestParamInfo<KernelCase>& info) {
      return std::string(op_name(info.param.kind)) + "_" + std::to_string(info.index);
    });

TEST(GradCheck, SigmoidHundredPointsTight) {
  EXPECT_LT(grad_check(OpKind::kSigmoid, {{100}}, 1, 99), 1e-6);
}

TEST(GradCheck, RelativeErrorFloor) {
  EXPECT_DOUBLE_EQ(relative_error(1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(2.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(relative_error(0.0, 1e-9), 1e-3);
}

TEST(Adam, ZeroGradientLeavesEverything) {
  Graph<double> g;
  const auto w = g.param({3});
  g.value(w)[0] = 1;
  AdamState<double> st(g);
  adam_step(g, st, AdamConfig{});
  EXPECT_EQ(g.value(w)[0], 1.0);
  EXPECT_EQ(g.value(w)[1], 0.0);
  EXPECT_EQ(st.m[0], std::vector<double>(3, 0.0));
  EXPECT_EQ(st.v[0], std::vector<double>(3, 0.0));
  EXPECT_EQ(st.step, 1);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  Graph<double> g;
  const auto w = g.param({3});
  AdamState<double> st(g);
  const double grads[] = {0.3, -2.0, 1e-3};
  std::copy(std::begin(grads), std::end(grads), g.grad(w).begin());
  AdamConfig cfg;
  adam_step(g, st, cfg);
  for (int i = 0; i < 3; ++i) {
    const double expect = -cfg.lr * grads[i] / (std::abs(grads[i]) + cfg.eps);
    EXPECT_NEAR(g.value(w)[i], expect, 1e-15);
  }
}

TEST(Adam, NonFiniteGradientRejectedWithoutUpdate) {
  Graph<double> g;
  const auto a = g.param({2}, "good");
  const auto b = g.param({2}, "bad");
  AdamState<double> st(g);
  g.grad(a)[0] = 1;
  g.grad(b)[1] = std::nan("");
  try {
    adam_step(g, st, AdamConfig{});
    FAIL();
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("bad"), std::string::npos);
  }
  EXPECT_EQ(g.value(a)[0], 0.0);
  EXPECT_EQ(st.step, 0);
}

TEST(Adam, DeterministicTrajectory) {
  auto run = [] {
    Graph<float> g;
    const auto w = g.param({4});
    const auto x = g.input({4});
    const auto s = g.cosine(w, x);
    Rng rng(8);
    for (auto& v : g.value(w)) v = static_cast<float>(rng.uniform(-1, 1));
    for (auto& v : g.value(x)) v = static_cast<float>(rng.uniform(-1, 1));
    AdamState<float> st(g);
    for (int i = 0; i < 20; ++i) {
      g.forward();
      g.zero_grad();
      g.backward(s);
      adam_step(g, st, AdamConfig{});
    }
    return std::vector<float>(g.value(w).begin(), g.value(w).end());
  };
  EXPECT_EQ(run(), run());
}

TEST(ParamsIo, RoundTripBitExact) {
  ParamFile f;
  f.meta = {{"hello", "world"}};
  f.params.push_back({"a", {2, 3}, {1.5f, -0.0f, 3e-38f, 1e30f, 7, 8}});
  f.params.push_back({"b", {1}, {0.1f}});
  std::stringstream ss;
  write_params(ss, f);
  const auto back = read_params(ss, "mem");
  EXPECT_EQ(back.meta, f.meta);
  ASSERT_EQ(back.params.size(), 2u);
  EXPECT_EQ(back.params[0].shape, (Shape{2, 3}));
  EXPECT_EQ(std::memcmp(back.params[0].values.data(), f.params[0].values.data(), 6 * sizeof(float)), 0);
  EXPECT_EQ(back.params[1].values[0], 0.1f);
}

TEST(ParamsIo, TruncatedTrailingAndVersion) {
  ParamFile f;
  f.params.push_back({"a", {4}, {1, 2, 3, 4}});
  std::stringstream ss;
  write_params(ss, f);
  const std::string full = ss.str();
  std::stringstream cut(full.substr(0, full.size() - 3));
  EXPECT_THROW(read_params(cut, "cut"), ParseError);
  std::stringstream extra(full + "x");
  EXPECT_THROW(read_params(extra, "extra"), ParseError);
  std::string bumped = full;
  const auto pos = bumped.find("\"version\":1");
  ASSERT_NE(pos, std::string::npos);
  bumped.replace(pos, 11, "\"version\":2");
  std::stringstream vb(bumped);
  EXPECT_THROW(read_params(vb, "bumped"), VersionMismatch);
}

TEST(ParamsIo, CollectAssignChecksNames) {
  Graph<float> g;
  g.param({2}, "w");
  g.param({3}, "b");
  g.value(0)[1] = 4;
  auto ps = collect_params(g);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].values[1], 4.0f);
  Graph<float> h;
  h.param({2}, "w");
  h.param({3}, "b");
  assign_params(h, ps);
  EXPECT_EQ(h.value(0)[1], 4.0f);
  ps[1].name = "c";
  EXPECT_THROW(assign_params(h, ps), Error);
}

}  // namespace
}  // namespace authid::numcore
