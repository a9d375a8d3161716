#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "smcurve/linreg.hpp"

using namespace smcurve;

namespace {

LeastSquaresProblem random_problem(int n, int p, std::mt19937_64& eng, bool with_split = false) {
    std::normal_distribution<double> g(0.0, 1.0);
    LeastSquaresProblem prob;
    prob.a.resize(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) prob.a(i, j) = g(eng);
    Eigen::VectorXd x(p);
    for (int j = 0; j < p; ++j) x(j) = g(eng);
    prob.b = prob.a * x;
    for (int i = 0; i < n; ++i) prob.b(i) += 0.1 * g(eng);
    if (with_split) {
        Eigen::MatrixXd at(n, p);
        Eigen::VectorXd bt(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < p; ++j) at(i, j) = g(eng);
            bt(i) = at.row(i).dot(x) + 0.1 * g(eng);
        }
        prob.split = {at, bt};
    }
    return prob;
}

}  // namespace

TEST_CASE("ridge identity case", "[linreg]") {
    LeastSquaresProblem prob;
    prob.a = Eigen::MatrixXd::Identity(2, 2);
    prob.b.resize(2);
    prob.b << 1.0, 0.0;
    auto x = ridge_solve(prob, 1.0);
    CHECK(x(0) == Catch::Approx(0.5).margin(1e-12));
    CHECK(x(1) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("ridge matches the normal-equation oracle", "[linreg]") {
    std::mt19937_64 eng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto prob = random_problem(20, 10, eng);
        for (double lambda : {0.0, 0.01, 0.5, 3.0}) {
            auto x = ridge_solve(prob, lambda);
            Eigen::MatrixXd lhs = prob.a.transpose() * prob.a +
                                  lambda * lambda * Eigen::MatrixXd::Identity(10, 10);
            Eigen::VectorXd oracle = lhs.ldlt().solve(prob.a.transpose() * prob.b);
            CHECK((x - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
            // residual of the normal equations
            CHECK((lhs * x - prob.a.transpose() * prob.b).norm() <=
                  1e-9 * (prob.a.transpose() * prob.b).norm());
        }
    }
}

TEST_CASE("ridge rank deficiency and shrinkage limit", "[linreg]") {
    LeastSquaresProblem sing;
    sing.a.resize(3, 2);
    sing.a << 1, 1, 2, 2, 3, 3;  // rank 1
    sing.b.resize(3);
    sing.b << 1, 2, 3;
    CHECK_THROWS_WITH(ridge_solve(sing, 0.0), Catch::Matchers::ContainsSubstring("rank 1 < 2"));
    CHECK_NOTHROW(ridge_solve(sing, 0.5));

    std::mt19937_64 eng(12);
    auto prob = random_problem(15, 6, eng);
    auto x = ridge_solve(prob, 1e6);
    CHECK(x.norm() < 1e-6 * (prob.a.transpose() * prob.b).norm());
}

TEST_CASE("ridge optimality against random perturbations", "[linreg]") {
    std::mt19937_64 eng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        auto prob = random_problem(12, 5, eng);
        for (int li = 0; li < 10; ++li) {
            double lambda = 0.05 * (li + 1);
            auto x = ridge_solve(prob, lambda);
            double fx = (prob.a * x - prob.b).squaredNorm() + lambda * lambda * x.squaredNorm();
            for (int pert = 0; pert < 50; ++pert) {
                Eigen::VectorXd d(5);
                for (int j = 0; j < 5; ++j) d(j) = 0.1 * g(eng);
                Eigen::VectorXd y = x + d;
                double fy = (prob.a * y - prob.b).squaredNorm() + lambda * lambda * y.squaredNorm();
                REQUIRE(fy >= fx - 1e-10);
            }
        }
    }
}

TEST_CASE("tsvd basics", "[linreg]") {
    LeastSquaresProblem diag;
    diag.a.resize(2, 2);
    diag.a << 3, 0, 0, 1;
    diag.b.resize(2);
    diag.b << 3, 1;
    auto x0 = tsvd_solve(diag, 0);
    CHECK(x0.norm() == 0.0);
    auto x1 = tsvd_solve(diag, 1);
    CHECK(x1(0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(x1(1) == Catch::Approx(0.0).margin(1e-12));
    auto x2 = tsvd_solve(diag, 2);
    CHECK(x2(0) == Catch::Approx(1.0).margin(1e-12));
    CHECK(x2(1) == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(tsvd_solve(diag, 3), std::invalid_argument);
    CHECK_THROWS_AS(tsvd_solve(diag, -1), std::invalid_argument);

    // k = rank reproduces the minimum-norm LS solution (pseudo-inverse oracle)
    std::mt19937_64 eng(14);
    auto prob = random_problem(9, 6, eng);
    int r = numerical_rank(prob.a);
    CHECK(r == 6);
    auto xr = tsvd_solve(prob, r);
    Eigen::VectorXd pinv = prob.a.completeOrthogonalDecomposition().solve(prob.b);
    CHECK((xr - pinv).norm() <= 1e-9 * (1.0 + pinv.norm()));

    CHECK(tsvd_truncation_tie(diag, 1) == false);
    LeastSquaresProblem tie;
    tie.a = Eigen::MatrixXd::Identity(3, 3);
    tie.b = Eigen::VectorXd::Ones(3);
    CHECK(tsvd_truncation_tie(tie, 1));  // all singular values equal
}

TEST_CASE("lambda path is monotone; rank path norm non-decreasing", "[linreg]") {
    std::mt19937_64 eng(15);
    for (int rep = 0; rep < 25; ++rep) {
        auto prob = random_problem(20, 10, eng, true);
        std::vector<double> lambdas;
        for (int k = 0; k <= 30; ++k) lambdas.push_back(0.02 * std::pow(1.3, k));
        auto path = regularization_path(prob, RegKnob::Lambda, lambdas);
        REQUIRE(path.test_residuals.size() == lambdas.size());
        for (std::size_t i = 1; i < lambdas.size(); ++i) {
            REQUIRE(path.solution_norms[i] <= path.solution_norms[i - 1] * (1.0 + 1e-12) + 1e-15);
            REQUIRE(path.train_residuals[i] >= path.train_residuals[i - 1] * (1.0 - 1e-12) - 1e-15);
        }

        std::vector<double> ks{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        auto rpath = regularization_path(prob, RegKnob::RankK, ks);
        for (std::size_t i = 1; i < ks.size(); ++i)
            REQUIRE(rpath.solution_norms[i] >= rpath.solution_norms[i - 1] - 1e-12);
    }

    std::mt19937_64 eng2(16);
    auto prob = random_problem(8, 4, eng2);
    auto single = regularization_path(prob, RegKnob::Lambda, {0.7});
    CHECK(single.knob_values.size() == 1);
    CHECK_THROWS_AS(regularization_path(prob, RegKnob::Lambda, {1.0, 0.5, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("ridge converges to tsvd at vanishing lambda", "[linreg]") {
    std::mt19937_64 eng(17);
    for (int rep = 0; rep < 20; ++rep) {
        auto prob = random_problem(20, 10, eng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(prob.a);
        double smax = svd.singularValues()(0);
        auto xr = ridge_solve(prob, 1e-8 * smax);
        auto xt = tsvd_solve(prob, numerical_rank(prob.a));
        CHECK((xr - xt).norm() <= 1e-6 * (1.0 + xt.norm()));
    }
}
