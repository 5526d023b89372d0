#include <icic/analysis.hpp>
#include <icic/exhaustive.hpp>
#include <icic/graph.hpp>
#include <icic/random.hpp>
#include <icic/scenario_gen.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace icic;

namespace {

double rel(double a, double b)
{
	return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST(SharingPenalty, AtOneReducesToSingleUser)
{
	for (double alpha : {0.3, 0.5, 2.0, 3.5})
		EXPECT_NEAR(f_eval(1.0, alpha, 0.7, 50.0, 1.3), std::pow(0.7 + std::log(51.0), 1.0 - alpha) / (1.0 - alpha),
		            1e-13);
	EXPECT_NEAR(f1_eval(1.0, 0.7, 50.0, 1.3), std::log(0.7 + std::log(51.0)), 1e-14);
}

TEST(SharingPenalty, HighPrecisionValue)
{
	// 30-digit evaluation of the defining formula at these parameters
	EXPECT_NEAR(f_eval(2.0, 0.5, 0.4, 100.0, 1.2), 2.739830437544979256, 1e-13);
}

TEST(SharingPenalty, MatchesNaiveFormulaWhereCancellationIsMild)
{
	random_source rng(4);
	for (int i = 0; i < 200; ++i) {
		const double x = rng.uniform(1.0, 20.0), alpha = rng.uniform(0.05, 4.0), tau = rng.uniform(0.1, 5.0);
		const double eta = rng.uniform(1.0, 500.0), beta = rng.uniform(0.5, 3.0);
		if (std::abs(alpha - 1.0) < 1e-3)
			continue;
		const double r = std::log(1.0 + eta / ((x - 1.0) * eta * beta + 1.0));
		const double naive = x * std::pow(tau + r, 1.0 - alpha) / (1.0 - alpha) -
		                     (x - 1.0) * std::pow(tau, 1.0 - alpha) / (1.0 - alpha);
		EXPECT_NEAR(f_eval(x, alpha, tau, eta, beta), naive, 1e-9 * (1.0 + std::abs(naive)));
		const double naive1 = x * std::log(tau + r) - (x - 1.0) * std::log(tau);
		EXPECT_NEAR(f1_eval(x, tau, eta, beta), naive1, 1e-9 * (1.0 + std::abs(naive1)));
	}
}

TEST(SharingPenalty, LimitsAtLargeX)
{
	EXPECT_LT(rel(f_eval(1e8, 0.5, 0.4, 100.0, 1.2), f_limit(0.5, 0.4, 1.2)), 1e-4);
	EXPECT_LT(rel(f_eval(1e8, 2.8, 3.6, 30.0, 1.25), f_limit(2.8, 3.6, 1.25)), 1e-4);
	EXPECT_LT(rel(f1_eval(1e8, 0.99, 100.0, 1.03), f1_limit(0.99, 1.03)), 1e-4);
	EXPECT_NEAR(f1_limit(0.99, 1.03), 0.97063025647758, 1e-13);
	// the closed form equals tau^(1-alpha)/(1-alpha) + tau^(-alpha)/beta
	for (double alpha : {0.5, 2.8})
		EXPECT_NEAR(f_limit(alpha, 0.4, 1.2),
		            std::pow(0.4, 1.0 - alpha) / (1.0 - alpha) + std::pow(0.4, -alpha) / 1.2, 1e-12);
}

TEST(SharingPenalty, InfiniteBetaLeavesLogTau)
{
	EXPECT_NEAR(f1_eval(5.0, 0.8, 100.0, 1e300), std::log(0.8), 1e-12);
}

TEST(SharingPenalty, DomainErrors)
{
	EXPECT_THROW(f_eval(0.5, 0.5, 1, 1, 1), domain_error);
	EXPECT_THROW(f_eval(2, 1.0, 1, 1, 1), domain_error);
	EXPECT_THROW(f_eval(2, 0.5, 0, 1, 1), domain_error);
	EXPECT_THROW(f1_eval(2, 1, -1, 1), domain_error);
	EXPECT_THROW(f1_eval(2, 1, 1, 0), domain_error);
}

TEST(Sublevel, TableRowAlphaOneHolds)
{
	lemma_check_config cfg{1.0, 0.99, 100.0, 1.03};
	const auto r = verify_sublevel(cfg);
	EXPECT_EQ(r.status, sublevel_status::holds);
	EXPECT_LE(r.worst_gap, sublevel_slack);
}

TEST(Sublevel, TableRowAlphaTwoPointEightHolds)
{
	lemma_check_config cfg{2.8, std::log(31.0) + 0.05, 30.0, 1.25};
	EXPECT_EQ(verify_sublevel(cfg).status, sublevel_status::holds);
}

TEST(Sublevel, PrerequisiteViolationIsNotApplicable)
{
	lemma_check_config cfg{1.0, 1.5, 100.0, 1.03};
	EXPECT_EQ(verify_sublevel(cfg).status, sublevel_status::not_applicable);
	EXPECT_EQ(verify_sublevel({0.0, 1.0, 10.0, 5.0}).status, sublevel_status::not_applicable);
}

TEST(Sublevel, SmallBetaIsCaught)
{
	// no prerequisites: with weak crosstalk sharing a subchannel pays off
	lemma_check_config cfg{1.0, 0.99, 100.0, 0.01};
	cfg.enforce_prerequisites = false;
	EXPECT_EQ(verify_sublevel(cfg).status, sublevel_status::violated);
}

TEST(Sublevel, RandomPrerequisiteDraws)
{
	random_source rng(17);
	int done[3] = {0, 0, 0};
	while (done[0] + done[1] + done[2] < 150) {
		const int kind = static_cast<int>(rng.index(3));
		if (done[kind] >= 50)
			continue;
		lemma_check_config cfg;
		cfg.grid_points = 20'000;
		cfg.eta = std::exp(rng.uniform(std::log(2.0), std::log(1e4)));
		if (kind == 0) {
			cfg.alpha = 1.0;
			cfg.tau = rng.uniform(0.05, 0.999);
			cfg.beta = conditions::threshold3(cfg.tau, cfg.eta) * (1.0 + rng.uniform(0.0, 2.0));
		} else if (kind == 1) {
			do
				cfg.alpha = rng.uniform(0.01, 1.99);
			while (std::abs(cfg.alpha - 1.0) < 1e-3);
			cfg.tau = cfg.alpha * rng.uniform(0.05, 0.999);
			cfg.beta = conditions::threshold1(cfg.alpha, cfg.tau, cfg.eta) * (1.0 + rng.uniform(0.0, 2.0));
		} else {
			cfg.alpha = rng.uniform(2.0, 6.0);
			cfg.tau = std::log1p(cfg.eta) + rng.uniform(0.0, 3.0);
			if (!(conditions::condition2_factor(cfg.alpha, cfg.tau) > 1.0))
				continue;
			cfg.beta = conditions::threshold2(cfg.alpha, cfg.tau, cfg.eta) * (1.0 + rng.uniform(0.0, 2.0));
		}
		ASSERT_TRUE(conditions::holds(cfg.alpha, cfg.tau, cfg.eta, cfg.beta));
		const auto r = verify_sublevel(cfg);
		EXPECT_EQ(r.status, sublevel_status::holds)
			<< "alpha=" << cfg.alpha << " tau=" << cfg.tau << " eta=" << cfg.eta << " beta=" << cfg.beta
			<< " gap=" << r.worst_gap << " at x=" << r.worst_x;
		++done[kind];
	}
}

TEST(TablePoints, CoverEveryRowAndRespectOpenEnds)
{
	const auto pts = table1_points(10);
	std::size_t alpha_one = 0;
	for (const auto& p : pts) {
		EXPECT_GT(p.config.tau, 0.0);
		if (p.config.alpha == 1.0)
			++alpha_one;
		EXPECT_LT(p.config.alpha, 6.0);
		if (p.label == "alpha=1") {
			EXPECT_LT(p.config.tau, 1.0);
		}
		if (p.label.find("[0.01,2)") != std::string::npos) {
			EXPECT_LT(p.config.alpha, 2.0);
			EXPECT_NE(p.config.alpha, 1.0);
		}
	}
	EXPECT_EQ(alpha_one, 9u);
	EXPECT_EQ(pts.size(), 9u + 5u * 27u);
}

TEST(TablePoints, OnlyTheKnownCornersMissTheirPrerequisites)
{
	std::vector<std::string> waived;
	for (const auto& r : verify_table1(2'000)) {
		EXPECT_EQ(r.report.status, sublevel_status::holds) << r.point.label;
		if (r.prerequisites_waived) {
			EXPECT_EQ(r.point.label, "alpha in [2.7,2.9]");
			EXPECT_EQ(r.point.config.alpha, 2.7);
			waived.push_back(r.point.label);
		}
	}
	EXPECT_EQ(waived.size(), 3u);
}

TEST(Reduction, CanonicalGraphs)
{
	struct named
	{
		simple_graph g;
		std::size_t expect;
	};
	const std::vector<named> graphs{
		{complete_graph(3), 1}, {path_graph(3), 2}, {cycle_graph(5), 2}, {star_graph(4), 4}, {simple_graph(4), 4}};
	for (const auto& [g, expect] : graphs)
		for (auto [alpha, tau] : {std::pair{0.5, 0.5}, std::pair{1.0, 0.9}, std::pair{2.0, 1.0}}) {
			auto [s, p] = mis_gadget_scenario(g);
			p.alpha = alpha;
			p.tau = tau;
			const auto rep = exhaustive_search(s, p);
			EXPECT_EQ(recover_mis_size(rep, g.order(), p), expect);
		}
}

TEST(Reduction, NonIntegralUtilityIsInconsistent)
{
	auto [s, p] = mis_gadget_scenario(complete_graph(3));
	p.alpha = 0.5;
	p.tau = 0.5;
	auto rep = exhaustive_search(s, p);
	rep.utility += 0.3;
	EXPECT_THROW(recover_mis_size(rep, 3, p), inconsistency_error);
}
