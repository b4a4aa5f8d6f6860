#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qmaxwell/errors.hpp"
#include "qmaxwell/metrics.hpp"

using namespace qmaxwell;
using namespace qmaxwell::metrics;

namespace {

Eigen::VectorXd real_vector(const StateVector& s) {
    const auto r = s.real_part();
    return Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

StateVector real_random(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = g(rng);
    auto s = StateVector::from_real(v);
    s.normalize();
    return s;
}

}  // namespace

TEST_CASE("trace error examples") {
    const StateVector zero(2);
    CHECK(trace_error(zero, zero) == 0.0);
    CHECK(trace_error(zero, StateVector::basis(2, 3)) == 1.0);
    std::vector<Complex> a{std::sqrt(0.75), std::sqrt(0.25)};
    CHECK(trace_error(StateVector(1), StateVector(a)) == doctest::Approx(0.5));
    Eigen::VectorXd c(2);
    c << std::sqrt(0.75), std::sqrt(0.25);
    CHECK(trace_error(StateVector(1), c) == doctest::Approx(0.5));
}

TEST_CASE("trace error is sign and scale invariant") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto q = real_random(4, rng);
        const Eigen::VectorXd c = real_vector(real_random(4, rng));
        const double e = trace_error(q, c);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        CHECK(trace_error(q, Eigen::VectorXd(-c)) == doctest::Approx(e).epsilon(1e-12));
        CHECK(trace_error(q, Eigen::VectorXd(37.5 * c)) == doctest::Approx(e).epsilon(1e-12));
        CHECK(trace_error(q, Eigen::VectorXd(-1e-3 * c)) == doctest::Approx(e).epsilon(1e-12));
        const Eigen::VectorXd qv = real_vector(q);
        CHECK(trace_error(StateVector::from_real(std::vector<double>(qv.begin(), qv.end())), c) ==
              doctest::Approx(e));
        std::vector<double> flipped(qv.size());
        for (Eigen::Index k = 0; k < qv.size(); ++k) flipped[k] = -qv[k];
        CHECK(trace_error(StateVector::from_real(flipped), c) == doctest::Approx(e).epsilon(1e-12));
    }
}

TEST_CASE("trace error rejects degenerate inputs") {
    CHECK_THROWS_AS(trace_error(StateVector(2), Eigen::VectorXd::Zero(4)), InvalidArgument);
    CHECK_THROWS_AS(trace_error(StateVector(2), Eigen::VectorXd::Ones(8)), DimensionMismatch);
}

TEST_CASE("time average examples") {
    std::vector<TimedState> q;
    std::vector<TimedVector> c;
    Eigen::VectorXd e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    q.push_back({0.0, StateVector(1)});
    q.push_back({0.1, StateVector(1)});
    c.push_back({0.0, e0});
    c.push_back({0.1, e1});
    const auto r = time_average_trace_error(q, c, 0.1);
    CHECK(r.epsilon_tr == doctest::Approx(0.5));
    REQUIRE(r.per_step_trace_error.size() == 2);
    CHECK(r.per_step_fidelity[0] == 1.0);
    CHECK(r.per_step_fidelity[1] == 0.0);
    CHECK(r.times == std::vector<double>{0.0, 0.1});
}

TEST_CASE("constant per-step error averages to itself") {
    std::vector<double> steps(7, 0.3);
    CHECK(mean_error(steps) == doctest::Approx(0.3));
    CHECK_THROWS_AS(mean_error({}), InvalidArgument);
}

TEST_CASE("a trajectory against itself has zero error") {
    std::mt19937_64 rng(2);
    std::vector<TimedVector> a;
    std::vector<TimedState> q;
    for (int k = 0; k < 5; ++k) {
        const auto s = real_random(3, rng);
        a.push_back({0.01 * k, real_vector(s)});
        q.push_back({0.01 * k, s});
    }
    CHECK(time_average_trace_error(a, a, 0.01).epsilon_tr == 0.0);
    CHECK(time_average_trace_error(q, a, 0.01).epsilon_tr <= 1e-7);
}

TEST_CASE("misaligned or mismatched trajectories are rejected") {
    std::vector<TimedVector> a{{0.0, Eigen::VectorXd::Ones(4)}, {0.1, Eigen::VectorXd::Ones(4)}};
    std::vector<TimedVector> b{{0.0, Eigen::VectorXd::Ones(4)}, {0.2, Eigen::VectorXd::Ones(4)}};
    CHECK_THROWS_AS(time_average_trace_error(a, b, 0.1), InvalidArgument);
    std::vector<TimedVector> c{{0.0, Eigen::VectorXd::Ones(4)}};
    CHECK_THROWS_AS(time_average_trace_error(a, c, 0.1), DimensionMismatch);
    CHECK_THROWS_AS(time_average_trace_error(std::vector<TimedVector>{}, std::vector<TimedVector>{}, 0.1),
                    InvalidArgument);
    std::vector<TimedVector> near{{0.04, Eigen::VectorXd::Ones(4)}, {0.14, Eigen::VectorXd::Ones(4)}};
    CHECK(time_average_trace_error(a, near, 0.1).epsilon_tr == 0.0);
}
