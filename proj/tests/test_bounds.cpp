#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "smcurve/bounds.hpp"
#include "smcurve/gibbs.hpp"

using namespace smcurve;

TEST_CASE("hoeffding bound", "[bounds]") {
    CHECK(hoeffding_bound(100, 0.1) == Catch::Approx(2.0 * std::exp(-2.0)).margin(1e-12));
    CHECK(hoeffding_bound(1, 1e6) == Catch::Approx(0.0).margin(1e-300));
    // doubling m squares the bound/2 ratio
    double v1 = hoeffding_bound(37, 0.07) / 2.0;
    double v2 = hoeffding_bound(74, 0.07) / 2.0;
    CHECK(v2 == Catch::Approx(v1 * v1).epsilon(1e-12));
}

TEST_CASE("uniform bound", "[bounds]") {
    CHECK(uniform_bound(1, 100, 0.1) == hoeffding_bound(100, 0.1));
    CHECK(uniform_bound(1024, 100, 0.1) ==
          Catch::Approx(1024.0 * 2.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(uniform_bound(1024, 100, 0.1) > 1.0);  // vacuity is the point
    CHECK(uniform_bound(2048, 100, 0.1) ==
          Catch::Approx(2.0 * uniform_bound(1024, 100, 0.1)).epsilon(1e-12));
}

TEST_CASE("pac consistent-hypothesis bound", "[bounds]") {
    PacParams p{0.05, 200};
    CHECK(pac_consistent_error_bound(1024, p) ==
          Catch::Approx((std::log(1024.0) + std::log(20.0)) / 200.0).epsilon(1e-12));
    CHECK(pac_consistent_error_bound(1, PacParams{0.999999, 10}) ==
          Catch::Approx(0.0).margin(1e-5));
    // decreasing in m, increasing in class size
    CHECK(pac_consistent_error_bound(1024, PacParams{0.05, 400}) <
          pac_consistent_error_bound(1024, p));
    CHECK(pac_consistent_error_bound(2048, p) > pac_consistent_error_bound(1024, p));
}

TEST_CASE("refined spectrum bound basics", "[bounds]") {
    ErrorSpectrum single{{{0.0, 1}}};
    auto r = refined_spectrum_bound(single, PacParams{0.05, 3});
    CHECK(r.bound == 0.0);
    CHECK_FALSE(r.vacuous);

    ErrorSpectrum empty;
    CHECK_THROWS_AS(refined_spectrum_bound(empty, PacParams{0.05, 3}), std::invalid_argument);

    // all-high spectrum with m too small to kill the tail: vacuous
    ErrorSpectrum hard{{{0.4, 100}, {0.6, 100}}};
    auto rv = refined_spectrum_bound(hard, PacParams{1e-12, 1});
    CHECK(rv.vacuous);
    CHECK(rv.bound == 0.6);
}

TEST_CASE("ising spectrum at n = 10 against a second enumeration", "[bounds]") {
    auto spec = exact_ising_spectrum(10);
    REQUIRE(spec.levels.size() == 11);
    CHECK(spec.total() == 1024);

    // independent enumeration route: count popcounts of mask ^ teacher over
    // all masks with an explicit all-ones teacher
    auto inst = generate_instance(10, 0, WeightSpace::IsingHypercube, 99);
    for (auto& w : inst.teacher) w = 1.0;
    std::vector<std::uint64_t> counts(11, 0);
    std::uint32_t tmask = inst.teacher_mask();
    REQUIRE(tmask == 0x3FFu);
    for (std::uint32_t mask = 0; mask < 1024; ++mask) {
        int d = std::popcount(mask ^ tmask);
        ++counts[static_cast<std::size_t>(d)];
        double eps = mask_gen_error(mask, tmask, 10);
        CHECK(eps == Catch::Approx(spec.levels[static_cast<std::size_t>(d)].eps).margin(1e-12));
    }
    for (int d = 0; d <= 10; ++d)
        CHECK(counts[static_cast<std::size_t>(d)] == spec.levels[static_cast<std::size_t>(d)].count);

    auto rb = refined_spectrum_bound(spec, PacParams{0.05, 50});
    CHECK_FALSE(rb.vacuous);
    // strict tail at level 0: 10 (0.7952)^50 + ... ~ 1e-4 <= 0.05, so the bound is 0
    CHECK(rb.bound == 0.0);
    CHECK(rb.bound <= pac_consistent_error_bound(1024, PacParams{0.05, 50}));
}

TEST_CASE("refined bound is monotone in m and in delta", "[bounds]") {
    auto spec = exact_ising_spectrum(12);
    double prev = 1.0;
    for (long m : {5, 10, 20, 40, 80, 160}) {
        double b = refined_spectrum_bound(spec, PacParams{0.05, m}).bound;
        CHECK(b <= prev + 1e-15);
        prev = b;
    }
    prev = 0.0;
    for (double d : {0.5, 0.1, 0.02, 0.004}) {  // shrinking delta can only raise the bound
        double b = refined_spectrum_bound(spec, PacParams{d, 30}).bound;
        CHECK(b >= prev - 1e-15);
        prev = b;
    }
}

TEST_CASE("refined bound dominated by the pac bound on enumerable classes", "[bounds]") {
    for (int n : {6, 8, 10, 12}) {
        auto spec = exact_ising_spectrum(n);
        std::uint64_t size = spec.total();
        for (long m : {10, 30, 50, 100}) {
            PacParams p{0.05, m};
            CHECK(refined_spectrum_bound(spec, p).bound <=
                  pac_consistent_error_bound(size, p) + 1e-12);
        }
    }
}

TEST_CASE("level survival frequencies follow (1-eps)^m", "[bounds]") {
    // one uniformly drawn student per level per instance keeps the survival
    // events independent Bernoulli draws across instances
    const int n = 10;
    const int m = 8;
    const long instances = 1000;
    auto spec = exact_ising_spectrum(n);
    std::vector<long> survived(spec.levels.size(), 0);
    std::mt19937_64 eng(2024);

    for (long it = 0; it < instances; ++it) {
        auto inst = generate_instance(n, m, WeightSpace::IsingHypercube, derive_seed(77, it));
        std::uint32_t tmask = inst.teacher_mask();
        for (std::size_t lvl = 0; lvl < spec.levels.size(); ++lvl) {
            // uniform student at Hamming distance lvl from the teacher
            std::uint32_t mask = tmask;
            std::vector<int> sites(n);
            std::iota(sites.begin(), sites.end(), 0);
            for (std::size_t d = 0; d < lvl; ++d) {
                std::uniform_int_distribution<std::size_t> pick(d, sites.size() - 1);
                std::swap(sites[d], sites[pick(eng)]);
                mask ^= (1u << sites[d]);
            }
            std::vector<double> J(n);
            for (int i = 0; i < n; ++i) J[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1.0 : -1.0;
            if (training_errors(inst, J) == 0) ++survived[lvl];
        }
    }
    for (std::size_t lvl = 0; lvl < spec.levels.size(); ++lvl) {
        double p = std::pow(1.0 - spec.levels[lvl].eps, m);
        if (instances * p < 5.0) continue;
        double phat = static_cast<double>(survived[lvl]) / instances;
        double sd = std::sqrt(p * (1.0 - p) / instances);
        INFO("level " << lvl << " eps=" << spec.levels[lvl].eps);
        CHECK(std::abs(phat - p) <= 4.0 * sd);
    }
}

TEST_CASE("vc rate shapes", "[bounds]") {
    auto curve = vc_rate_curve(1, {std::exp(1.0)}, true);
    CHECK(curve.points[0].second == Catch::Approx(std::exp(-1.0)).margin(1e-12));
    CHECK(curve.label.find("constants unspecified") != std::string::npos);

    std::vector<double> ms;
    for (int m = 3; m <= 200; ++m) ms.push_back(m);
    auto real = vc_rate_curve(7, ms, true);
    auto unreal = vc_rate_curve(7, ms, false);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (real.points[i].second < 1.0 && unreal.points[i].second < 1.0)
            CHECK(real.points[i].second < unreal.points[i].second);
        if (i > 0) CHECK(real.points[i].second <= real.points[i - 1].second + 1e-15);
    }
}
