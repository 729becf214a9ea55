#include <doctest.h>

#include <numeric>
#include <random>

#include "crn/tpc.hpp"
#include "support/random_instances.hpp"

using namespace crn;

namespace {

std::vector<bool> all_active(const NetworkInstance& net) { return std::vector<bool>(net.num_users(), true); }

}  // namespace

TEST_SUITE("tpc") {
  TEST_CASE("one update by hand") {
    NetworkInstance::Params p;
    p.num_pu = 1;
    p.num_su = 1;
    p.num_pbs = 1;
    p.num_sbs = 1;
    p.serving = {0, 1};
    p.gain = Matrix(2, 2);
    p.gain << 0.5, 0.1, 0.2, 0.8;
    p.noise = Vector::Constant(2, 0.1);
    p.p_max = Vector::Constant(2, 1.0);
    p.target_sinr = Vector(2);
    p.target_sinr << 2.0, 20.0;
    const NetworkInstance net(std::move(p));
    PowerVector pw(2);
    pw << 0.3, 0.6;
    const PowerVector next = tpc_step(net, pw, all_active(net));
    CHECK(next[0] == doctest::Approx(2.0 * (0.1 * 0.6 + 0.1) / 0.5));
    CHECK(next[1] == doctest::Approx(1.0));  // capped
    const std::vector<bool> only_pu{true, false};
    CHECK(tpc_step(net, pw, only_pu)[1] == 0.0);
  }

  TEST_CASE("feasible instances reach the exact SINR solution") {
    std::mt19937_64 rng(21);
    testing::RandomShape shape;
    shape.num_su = 4;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const NetworkInstance net = testing::random_network(rng, shape);
      if (!is_sinr_feasible(net, net.target_sinr())) continue;
      const PowerVector exact = powers_from_sinr(net, net.target_sinr());
      for (bool polish : {true, false}) {
        TpcOptions opts;
        opts.polish = polish;
        opts.tol = 1e-12;
        const TpcResult r = run_tpc(net, all_active(net), opts);
        CHECK(r.converged);
        CHECK(r.iterations <= 10000);
        CHECK(std::all_of(r.supported.begin(), r.supported.end(), [](bool b) { return b; }));
        for (int i = 0; i < net.num_users(); ++i)
          CHECK(r.p_stationary[i] == doctest::Approx(exact[i]).epsilon(1e-7));
      }
      ++checked;
    }
    CHECK(checked > 50);
  }

  TEST_CASE("overloaded users are capped and reported unsupported") {
    NetworkInstance::Params p;
    p.num_pu = 1;
    p.num_su = 2;
    p.num_pbs = 1;
    p.num_sbs = 1;
    p.serving = {0, 1, 1};
    p.gain = Matrix(2, 3);
    p.gain << 1.0, 0.01, 0.01, 0.01, 1.0, 1.0;
    p.noise = Vector::Constant(2, 0.01);
    p.p_max = Vector::Constant(3, 1.0);
    p.target_sinr = Vector(3);
    p.target_sinr << 0.5, 2.0, 2.0;
    const NetworkInstance net(std::move(p));
    const TpcResult r = run_tpc(net, all_active(net));
    CHECK(r.converged);
    CHECK(r.p_stationary[1] == doctest::Approx(1.0));
    CHECK(r.p_stationary[2] == doctest::Approx(1.0));
    CHECK_FALSE(r.supported[1]);
    CHECK_FALSE(r.supported[2]);
    CHECK(r.supported[0]);
    // the fixed point satisfies the update map
    const PowerVector again = tpc_step(net, r.p_stationary, all_active(net));
    CHECK((again - r.p_stationary).cwiseAbs().maxCoeff() <= 1e-9);
  }

  TEST_CASE("warm start lands on the same fixed point") {
    std::mt19937_64 rng(8);
    testing::RandomShape shape;
    shape.num_su = 6;
    shape.max_target = 2.0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
      const NetworkInstance net = testing::random_network(rng, shape);
      const auto active = all_active(net);
      const TpcResult cold = run_tpc(net, active);
      PowerVector start(net.num_users());
      for (int i = 0; i < net.num_users(); ++i) start[i] = u(rng);
      const TpcResult warm = run_tpc(net, active, start);
      REQUIRE(cold.converged);
      REQUIRE(warm.converged);
      for (int i = 0; i < net.num_users(); ++i)
        CHECK(warm.p_stationary[i] == doctest::Approx(cold.p_stationary[i]).epsilon(1e-7));
    }
  }

  TEST_CASE("inactive users stay silent") {
    std::mt19937_64 rng(4);
    const NetworkInstance net = testing::random_network(rng, {});
    std::vector<bool> active(net.num_users(), true);
    active.back() = false;
    const TpcResult r = run_tpc(net, active, PowerVector::Constant(net.num_users(), 0.5));
    CHECK(r.p_stationary[net.num_users() - 1] == 0.0);
    CHECK_FALSE(r.supported.back());
  }

  TEST_CASE("active mask") {
    std::mt19937_64 rng(4);
    const NetworkInstance net = testing::random_network(rng, {});
    const std::vector<int> users{0, net.num_users() - 1};
    const auto mask = active_mask(net, users);
    CHECK(std::accumulate(mask.begin(), mask.end(), 0) == 2);
    CHECK(mask.front());
    CHECK(mask.back());
  }
}
