#include <cmath>
#include <vector>

#include "doctest.h"
#include "prefmodel/common.hpp"
#include "prefmodel/svm.hpp"

using namespace prefmodel;
using doctest::Approx;

namespace {

Instance inst(std::vector<double> f, int label) {
  Instance i;
  i.features = std::move(f);
  i.label = label;
  return i;
}

// Two ring-free blobs separated along the diagonal.
std::vector<Instance> blob_data(int per_class, double gap, double sigma,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> data;
  for (int c = 0; c < 2; ++c) {
    const int label = c == 0 ? 1 : -1;
    for (int i = 0; i < per_class; ++i)
      data.push_back(inst({label * gap + sigma * rng.normal(),
                           label * gap + sigma * rng.normal()},
                          label));
  }
  return data;
}

double accuracy(const TrainedModel& model, const std::vector<Instance>& data) {
  int correct = 0;
  for (const Instance& x : data)
    if (predict(model, x.features) == x.label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace

TEST_CASE("svm: separable blobs reach zero training error") {
  auto data = blob_data(40, 2.0, 0.4, 1);
  TrainedModel model = train_svm_smo(data, 8.0, 0.5);
  CHECK(model.kind == LearnerKind::svm);
  CHECK(accuracy(model, data) == 1.0);

  const auto& svm = std::get<SVMModel>(model.params);
  // Converged: every remaining first-order violation is inside tolerance.
  CHECK(svm.max_kkt_violation < kSmoTolerance);
  // Dual feasibility: box constraint and the equality constraint.
  double balance = 0.0;
  for (std::size_t i = 0; i < svm.alpha.size(); ++i) {
    CHECK(svm.alpha[i] > 0.0);  // only support vectors are stored
    CHECK(svm.alpha[i] <= svm.cost + 1e-12);
    balance += svm.alpha[i] * svm.sv_labels[i];
  }
  CHECK(std::abs(balance) < 1e-8);
  CHECK(svm.support_vectors.size() < data.size());
}

TEST_CASE("svm: rbf kernel solves four-point xor") {
  std::vector<Instance> data = {inst({0.0, 0.0}, -1), inst({1.0, 1.0}, -1),
                                inst({0.0, 1.0}, 1), inst({1.0, 0.0}, 1)};
  TrainedModel model = train_svm_smo(data, 16.0, 1.0);
  CHECK(accuracy(model, data) == 1.0);
}

TEST_CASE("svm: decision values have the right sign and scale handling") {
  // Features live on wildly different ranges; internal rescaling must cope.
  Rng rng(5);
  std::vector<Instance> data;
  for (int i = 0; i < 60; ++i) {
    const int label = i % 2 == 0 ? 1 : -1;
    data.push_back(inst({label * 3000.0 + 400.0 * rng.normal(),
                         0.001 * label + 0.0002 * rng.normal()},
                        label));
  }
  TrainedModel model = train_svm_smo(data, 4.0, 0.5);
  CHECK(accuracy(model, data) > 0.95);
  const auto& svm = std::get<SVMModel>(model.params);
  CHECK(svm_decision(svm, std::vector<double>{3000.0, 0.001}) > 0.0);
  CHECK(svm_decision(svm, std::vector<double>{-3000.0, -0.001}) < 0.0);
  // Stored scale bounds cover the training range.
  CHECK(svm.scale_min[0] <= -3000.0 + 400.0);
  CHECK(svm.scale_max[0] >= 3000.0 - 400.0);
}

TEST_CASE("svm: soft margin tolerates overlapping classes") {
  auto data = blob_data(60, 0.5, 0.8, 9);
  TrainedModel model = train_svm_smo(data, 1.0, 0.5);
  const auto& svm = std::get<SVMModel>(model.params);
  CHECK(svm.max_kkt_violation < kSmoTolerance);
  CHECK(accuracy(model, data) > 0.6);
  // Some margin violators should sit at the box bound.
  bool any_bound = false;
  for (double a : svm.alpha)
    if (a >= svm.cost - 1e-9) any_bound = true;
  CHECK(any_bound);
}

TEST_CASE("svm: training is bit-for-bit deterministic") {
  auto data = blob_data(50, 0.8, 0.7, 13);
  TrainedModel a = train_svm_smo(data, 2.0, 0.25);
  TrainedModel b = train_svm_smo(data, 2.0, 0.25);
  CHECK(serialize_model(a) == serialize_model(b));
}

TEST_CASE("svm: sweep cap converts stalls into a convergence error") {
  auto data = blob_data(80, 1.5, 0.5, 17);
  try {
    train_svm_smo(data, 32.0, 0.5, 0, 1);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 0.0);
    CHECK(std::string(e.what()).find("sweep") != std::string::npos);
  }
  // The same data converges when given normal headroom.
  CHECK_NOTHROW(train_svm_smo(data, 32.0, 0.5));
}

TEST_CASE("svm: parameter validation") {
  auto data = blob_data(10, 2.0, 0.3, 19);
  CHECK_THROWS_AS(train_svm_smo(data, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(train_svm_smo(data, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(train_svm_smo(data, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(train_svm_smo({}, 1.0, 0.5), DomainError);
  std::vector<Instance> one_class = {inst({1.0}, 1), inst({2.0}, 1)};
  CHECK_THROWS_AS(train_svm_smo(one_class, 1.0, 0.5), DomainError);
  std::vector<Instance> ragged = {inst({1.0, 2.0}, 1), inst({0.0}, -1)};
  CHECK_THROWS_AS(train_svm_smo(ragged, 1.0, 0.5), ContractError);
}

TEST_CASE("svm: constant feature does not break scaling") {
  std::vector<Instance> data;
  for (int i = 0; i < 30; ++i)
    data.push_back(inst({static_cast<double>(i), 42.0}, i < 15 ? -1 : 1));
  TrainedModel model = train_svm_smo(data, 8.0, 0.5);
  CHECK(accuracy(model, data) == 1.0);
  CHECK(predict(model, std::vector<double>{29.0, 42.0}) == 1);
}

TEST_CASE("svm: serialization round trip preserves the decision surface") {
  auto data = blob_data(40, 1.0, 0.6, 23);
  TrainedModel model = train_svm_smo(data, 2.0, 0.5, 0xabcUL);
  TrainedModel back = deserialize_model(serialize_model(model));
  CHECK(back.kind == LearnerKind::svm);
  CHECK(back.registry_fingerprint == 0xabcUL);
  const auto& sa = std::get<SVMModel>(model.params);
  const auto& sb = std::get<SVMModel>(back.params);
  REQUIRE(sa.support_vectors.size() == sb.support_vectors.size());
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> x = {4.0 * rng.normal(), 4.0 * rng.normal()};
    CHECK(svm_decision(sb, x) == Approx(svm_decision(sa, x)).epsilon(1e-12));
  }
}
