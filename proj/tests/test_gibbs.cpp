#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "smcurve/gibbs.hpp"

using namespace smcurve;

TEST_CASE("instance generation contract", "[gibbs]") {
    auto inst = generate_instance(8, 20, WeightSpace::IsingHypercube, 5);
    REQUIRE(inst.m() == 20);
    for (double w : inst.teacher) CHECK((w == 1.0 || w == -1.0));
    for (int p = 0; p < inst.m(); ++p) {
        double dot = 0.0;
        for (int i = 0; i < inst.n; ++i) dot += inst.teacher[i] * inst.pattern(p, i);
        CHECK(inst.labels[p] == sign_pm(dot));  // realizable by construction
    }

    auto sph = generate_instance(8, 5, WeightSpace::Sphere, 5);
    double norm2 = 0.0;
    for (double w : sph.teacher) norm2 += w * w;
    CHECK(norm2 == Catch::Approx(8.0).margin(1e-9));

    auto empty = generate_instance(4, 0, WeightSpace::IsingHypercube, 1);
    CHECK(empty.m() == 0);

    // fixed seed -> byte-identical instance
    auto a = generate_instance(6, 9, WeightSpace::IsingHypercube, 42);
    auto b = generate_instance(6, 9, WeightSpace::IsingHypercube, 42);
    CHECK(a.teacher == b.teacher);
    CHECK(a.patterns == b.patterns);
    CHECK(a.labels == b.labels);
    auto c = generate_instance(6, 9, WeightSpace::IsingHypercube, 43);
    CHECK(a.patterns != c.patterns);
}

TEST_CASE("version space enumeration agrees with direct filtering", "[gibbs]") {
    auto inst = generate_instance(10, 12, WeightSpace::IsingHypercube, 17);
    auto vs = enumerate_version_space(inst);

    // oracle: test every mask directly through the forward rule
    std::vector<std::uint32_t> direct;
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        std::vector<double> J(10);
        for (int i = 0; i < 10; ++i) J[i] = (mask >> i) & 1u ? 1.0 : -1.0;
        if (training_errors(inst, J) == 0) direct.push_back(mask);
    }
    std::sort(vs.begin(), vs.end());
    CHECK(vs == direct);
    // teacher always survives (realizable)
    CHECK(std::binary_search(vs.begin(), vs.end(), inst.teacher_mask()));
}

TEST_CASE("n = 1 with one example pins the version space to the teacher", "[gibbs]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = generate_instance(1, 1, WeightSpace::IsingHypercube, seed);
        auto vs = enumerate_version_space(inst);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0] == inst.teacher_mask());
        auto pt = exact_gibbs_gen_error(inst, 10, seed);
        CHECK(pt.mean_eps == 0.0);
    }
}

TEST_CASE("zero data gives the exact symmetric average 1/2", "[gibbs]") {
    auto inst = generate_instance(11, 0, WeightSpace::IsingHypercube, 3);
    auto pt = exact_gibbs_gen_error(inst, 5, 3);
    CHECK(pt.mean_eps == Catch::Approx(0.5).margin(1e-12));  // exact level average
    CHECK(pt.stderr_eps == 0.0);
}

TEST_CASE("metropolis at tau = 0 has a non-increasing energy trace", "[gibbs]") {
    auto inst = generate_instance(12, 30, WeightSpace::IsingHypercube, 9);
    GibbsConfig cfg;
    cfg.tau = 0.0;
    cfg.sweeps = 60;
    cfg.seed = 4;
    auto res = metropolis_gibbs(inst, cfg);
    REQUIRE(res.energy_trace.size() == 60);
    for (std::size_t i = 1; i < res.energy_trace.size(); ++i)
        CHECK(res.energy_trace[i] <= res.energy_trace[i - 1]);
}

TEST_CASE("metropolis at tau = 0 reaches zero training error at alpha = 5", "[gibbs]") {
    // realizable instances keep a nonempty version space (checked by
    // enumeration); the greedy chain should land in it most of the time
    int hits = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto inst = generate_instance(10, 50, WeightSpace::IsingHypercube, derive_seed(31, t));
        REQUIRE_FALSE(enumerate_version_space(inst).empty());
        GibbsConfig cfg;
        cfg.tau = 0.0;
        cfg.sweeps = 80;
        cfg.seed = derive_seed(32, t);
        auto res = metropolis_gibbs(inst, cfg);
        if (res.energy_trace.back() == 0.0) ++hits;
    }
    CHECK(hits > 50);
}

TEST_CASE("metropolis at very large tau samples near-uniformly", "[gibbs]") {
    RunningStats stats;
    for (std::uint64_t t = 0; t < 40; ++t) {
        auto inst = generate_instance(10, 20, WeightSpace::IsingHypercube, derive_seed(51, t));
        GibbsConfig cfg;
        cfg.tau = 1e6;
        cfg.sweeps = 300;
        cfg.burn_in = 100;
        cfg.seed = derive_seed(52, t);
        stats.add(metropolis_gibbs(inst, cfg).mean_eps(cfg.burn_in));
    }
    CHECK(std::abs(stats.mean() - 0.5) < 4.0 * std::max(stats.stderr_mean(), 1e-3));
}

TEST_CASE("spherical metropolis keeps the norm constraint", "[gibbs]") {
    auto inst = generate_instance(8, 16, WeightSpace::Sphere, 23);
    GibbsConfig cfg;
    cfg.tau = 0.1;
    cfg.sweeps = 50;
    cfg.burn_in = 20;
    cfg.seed = 8;
    auto res = metropolis_gibbs(inst, cfg);
    double norm2 = 0.0;
    for (double w : res.student) norm2 += w * w;
    CHECK(norm2 == Catch::Approx(8.0).margin(1e-9));
    CHECK(res.energy_trace.back() <= res.energy_trace.front());
}

TEST_CASE("empirical curve: determinism and thread independence", "[gibbs]") {
    GibbsConfig cfg;
    cfg.seed = 1234;
    std::vector<double> alphas{0.5, 1.0, 2.0};
    auto c1 = empirical_learning_curve(8, alphas, WeightSpace::IsingHypercube,
                                       SamplerKind::ExactEnumeration, cfg, 50, 1);
    auto c2 = empirical_learning_curve(8, alphas, WeightSpace::IsingHypercube,
                                       SamplerKind::ExactEnumeration, cfg, 50, 4);
    REQUIRE(c1.size() == c2.size());
    for (std::size_t i = 0; i < c1.size(); ++i) {
        CHECK(c1[i].mean_eps == c2[i].mean_eps);  // bitwise equal
        CHECK(c1[i].stderr_eps == c2[i].stderr_eps);
        CHECK(c1[i].m == static_cast<int>(std::nearbyint(alphas[i] * 8)));
    }

    auto single = empirical_learning_curve(6, {1.0}, WeightSpace::IsingHypercube,
                                           SamplerKind::ExactEnumeration, cfg, 1, 1);
    CHECK(single[0].stderr_eps == 0.0);
    CHECK(single[0].low_trials);
}

TEST_CASE("phase map labels and degenerate columns", "[gibbs]") {
    GibbsConfig cfg;
    cfg.sweeps = 120;
    cfg.burn_in = 60;
    cfg.seed = 77;
    auto map =
        phase_map(12, {0.0, 4.0}, {0.0, 50.0}, WeightSpace::IsingHypercube, cfg, 40, 0.25, 2);
    REQUIRE(map.cells.size() == 4);
    auto cell = [&](std::size_t ai, std::size_t ti) -> const PhaseMap::Cell& {
        return map.cells[ai * 2 + ti];
    };
    // alpha = 0: no data, mean eps ~ 0.5 at every tau
    CHECK(std::abs(cell(0, 0).mean_eps - 0.5) < 0.08);
    CHECK(std::abs(cell(0, 1).mean_eps - 0.5) < 0.08);
    CHECK_FALSE(cell(0, 0).good);
    // high alpha, tau = 0: good phase; training error exactly 0 on the exact column
    CHECK(cell(1, 0).good);
    CHECK(cell(1, 0).mean_train_err == 0.0);
    // very hot row stays poor even at high alpha
    CHECK_FALSE(cell(1, 1).good);

    auto map2 =
        phase_map(12, {0.0, 4.0}, {0.0, 50.0}, WeightSpace::IsingHypercube, cfg, 40, 0.25, 1);
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        CHECK(map.cells[i].mean_eps == map2.cells[i].mean_eps);
        CHECK(map.cells[i].mean_train_err == map2.cells[i].mean_train_err);
    }
}

TEST_CASE("rademacher patterns as the documented alternative", "[gibbs]") {
    auto inst = generate_instance(9, 25, WeightSpace::IsingHypercube, 61, PatternDist::Rademacher);
    for (double x : inst.patterns) CHECK((x == 1.0 || x == -1.0));
    for (int p = 0; p < inst.m(); ++p) {
        double dot = 0.0;
        for (int i = 0; i < inst.n; ++i) dot += inst.teacher[i] * inst.pattern(p, i);
        CHECK(inst.labels[p] == sign_pm(dot));
    }
    // the version-space machinery works unchanged on +-1 inputs
    auto vs = enumerate_version_space(inst);
    CHECK(std::find(vs.begin(), vs.end(), inst.teacher_mask()) != vs.end());
}

TEST_CASE("config validation", "[gibbs]") {
    GibbsConfig bad;
    bad.tau = -0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.tau = 0.0;
    bad.sweeps = 10;
    bad.burn_in = 10;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(0, 1, WeightSpace::Sphere, 0), std::invalid_argument);
    auto big = generate_instance(25, 1, WeightSpace::IsingHypercube, 0);
    CHECK_THROWS_AS(enumerate_version_space(big), std::invalid_argument);
}
