#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "smcurve/controls.hpp"

using namespace smcurve;

TEST_CASE("effective load", "[controls]") {
    CHECK(effective_load({1000, 100, 500.0, 1, 1.0}) == Catch::Approx(1.8).margin(1e-12));
    CHECK(effective_load({600, 0, 200.0, 1, 1.0}) == Catch::Approx(3.0).margin(1e-12));
    CHECK(effective_load({50, 50, 10.0, 1, 1.0}) == 0.0);
    // exactly linear and non-increasing in m_rand
    double prev = effective_load({100, 0, 25.0, 1, 1.0});
    for (long r = 1; r <= 100; ++r) {
        double cur = effective_load({100, r, 25.0, 1, 1.0});
        CHECK(cur == Catch::Approx(prev - 1.0 / 25.0).margin(1e-12));
        prev = cur;
    }
    CHECK_THROWS_AS(effective_load({10, 11, 5.0, 1, 1.0}), std::invalid_argument);
}

TEST_CASE("effective temperature", "[controls]") {
    CHECK(effective_temperature({10, 0, 1.0, 1, 1.0}) == 1.0);
    CHECK(effective_temperature({10, 0, 1.0, 8, 1.0}) ==
          Catch::Approx(0.5 * effective_temperature({10, 0, 1.0, 4, 1.0})).margin(1e-12));
    double prev = pos_inf();
    for (long t = 1; t <= 64; t *= 2) {
        double cur = effective_temperature({10, 0, 1.0, t, 2.0});
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(effective_temperature({10, 0, 1.0, 1000000, 1.0}) < 1e-5);
}

TEST_CASE("label randomization", "[controls]") {
    auto inst = generate_instance(10, 1000, WeightSpace::IsingHypercube, 3);

    auto zero = randomize_labels(inst, 0.0, 7);
    CHECK(zero.m_rand == 0);
    CHECK(zero.instance.labels == inst.labels);

    auto tenth = randomize_labels(inst, 0.1, 7);
    CHECK(tenth.m_rand == 100);
    int touched = 0;
    for (std::size_t i = 0; i < inst.labels.size(); ++i)
        if (tenth.instance.labels[i] != inst.labels[i]) ++touched;
    // an independent fair coin keeps roughly half of the touched labels
    CHECK(touched <= 100);
    CHECK(touched > 20);

    auto again = randomize_labels(inst, 0.1, 7);
    CHECK(again.instance.labels == tenth.instance.labels);  // deterministic
    auto other = randomize_labels(inst, 0.1, 8);
    CHECK(other.instance.labels != tenth.instance.labels);

    auto all = randomize_labels(inst, 1.0, 9);
    CHECK(all.m_rand == 1000);

    CHECK_THROWS_AS(randomize_labels(inst, 1.5, 0), std::invalid_argument);
}

TEST_CASE("trajectory structure and coordinates", "[controls]") {
    auto rep = trajectory_experiment(8, 40, 0.4, 30, 10, 20, 5, 1.0, 0.0, 2);
    CHECK(rep.a.alpha == Catch::Approx(5.0).margin(1e-12));
    CHECK(rep.b.alpha < rep.a.alpha);
    CHECK(rep.c.alpha == rep.b.alpha);
    CHECK(rep.b.tau == rep.a.tau);
    CHECK(rep.c.tau == Catch::Approx(1.0 / 10.0).margin(1e-12));
    CHECK(rep.b.t_star == 30);
    CHECK(rep.c.t_star == 10);
    CHECK_NOTHROW(rep.check_structure());

    // thread independence, bit for bit
    auto rep1 = trajectory_experiment(8, 40, 0.4, 30, 10, 20, 5, 1.0, 0.0, 1);
    CHECK(rep1.a.mean_gen_error == rep.a.mean_gen_error);
    CHECK(rep1.b.mean_gen_error == rep.b.mean_gen_error);
    CHECK(rep1.c.mean_gen_error == rep.c.mean_gen_error);
}

TEST_CASE("vanishing noise makes B statistically equal to A", "[controls]") {
    // fraction small enough that round(f m) = 0: same data, independent chains
    auto rep = trajectory_experiment(10, 30, 0.001, 60, 20, 60, 11, 1.0, 0.0, 2);
    double diff = std::abs(rep.b.mean_gen_error - rep.a.mean_gen_error);
    double se = std::hypot(rep.a.se_gen_error, rep.b.se_gen_error);
    CHECK(diff < 4.0 * se);
}

TEST_CASE("noise hurts: B generalizes worse than A", "[controls]") {
    auto rep = trajectory_experiment(12, 60, 0.4, 200, 20, 80, 21, 1.0, 0.0, 2);
    double gap = rep.b.mean_gen_error - rep.a.mean_gen_error;
    double se = std::hypot(rep.a.se_gen_error, rep.b.se_gen_error);
    CHECK(gap > 3.0 * se);
    // gen error against the clean teacher exceeds the label-noise floor
    CHECK(rep.b.mean_gen_error > 0.2);
}

TEST_CASE("overfitting witness in the overparameterized regime", "[controls]") {
    // documented settings: capacity n = 200 far above m = 60, so the greedy
    // chain drives the training error on the corrupted set below 0.05 while
    // the error against the clean teacher stays above noise/2
    auto rep = trajectory_experiment(200, 60, 0.4, 600, 600, 100, 31, 1.0, 0.0, 2);
    CHECK(rep.b.mean_train_error < 0.05);
    CHECK(rep.b.mean_gen_error > 0.2);
}

TEST_CASE("validation-based stop selection returns a candidate", "[controls]") {
    std::vector<long> candidates{5, 20, 80};
    long chosen = select_t_star_by_validation(10, 40, 0.4, candidates, 12, 17, 0.0, 2);
    CHECK(std::set<long>(candidates.begin(), candidates.end()).count(chosen) == 1);
    long again = select_t_star_by_validation(10, 40, 0.4, candidates, 12, 17, 0.0, 1);
    CHECK(chosen == again);
}
