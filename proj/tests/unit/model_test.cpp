#include <icic/metrics.hpp>
#include <icic/model.hpp>
#include <icic/random.hpp>
#include <icic/scenario_gen.hpp>

#include <support/brute_force.hpp>
#include <support/builders.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace icic;
using icic::testing::make_scenario;

namespace {

// ln(1 + ln 3), frozen from a 30-digit evaluation
constexpr double log_one_plus_ln3 = 0.741276311375015219;

params unit_params(double alpha = 0.0, double tau = 1.0)
{
	return {alpha, tau, 1.0, 1.0};
}

} // namespace

TEST(Params, RejectsOutOfDomainValues)
{
	EXPECT_NO_THROW(params{}.validate());
	EXPECT_THROW((params{-0.1, 1, 1, 1}.validate()), domain_error);
	EXPECT_THROW((params{0, 0, 1, 1}.validate()), domain_error);
	EXPECT_THROW((params{0, 1, 0, 1}.validate()), domain_error);
	EXPECT_THROW((params{0, 1, 1, -1}.validate()), domain_error);
}

TEST(GainTensor, RejectsNegativeAndNaN)
{
	gain_tensor g(1, 1, 1);
	EXPECT_THROW(g.set(0, 0, 0, -1.0), domain_error);
	EXPECT_THROW(g.set(0, 0, 0, std::nan("")), domain_error);
	EXPECT_NO_THROW(g.set(0, 0, 0, infinity));
	EXPECT_THROW(g.set(1, 0, 0, 1.0), malformed_allocation);
}

TEST(ScenarioValidate, CatchesBrokenInvariants)
{
	auto s = make_scenario(2, 1, {0, 1});
	EXPECT_NO_THROW(s.validate());
	auto asym = s;
	asym.neighbors = {{1}, {}};
	EXPECT_THROW(asym.validate(), domain_error);
	auto self = s;
	self.neighbors = {{0, 1}, {0}};
	EXPECT_THROW(self.validate(), domain_error);
	auto outside = s;
	outside.bs_positions = {{0.5, 0.5}, {1.5, 0.5}};
	EXPECT_THROW(outside.validate(), domain_error);
	auto unknown = s;
	unknown.association = {0, 2};
	EXPECT_THROW(unknown.validate(), domain_error);
}

TEST(Feasibility, EmptyAllocationIsFeasible)
{
	const auto s = make_scenario(2, 1, {0, 0, 1}, 1.0);
	EXPECT_TRUE(is_feasible({}, s));
}

TEST(Feasibility, TwoMsOfOneCellOnOneSubchannelIsInfeasible)
{
	const auto s = make_scenario(2, 1, {0, 0, 1}, 1.0);
	EXPECT_FALSE(is_feasible({{0, 0, 0}, {0, 1, 0}}, s));
}

TEST(Feasibility, DifferentCellsMayShareASubchannel)
{
	const auto s = make_scenario(2, 1, {0, 0, 1}, 1.0);
	EXPECT_TRUE(is_feasible({{0, 0, 0}, {1, 2, 0}}, s));
}

TEST(Feasibility, BadIndicesAreMalformed)
{
	const auto s = make_scenario(2, 1, {0, 0, 1}, 1.0);
	EXPECT_THROW(is_feasible({{0, 2, 0}}, s), malformed_allocation); // MS 2 is not served by BS 0
	EXPECT_THROW(is_feasible({{0, 0, 1}}, s), malformed_allocation);
	EXPECT_THROW(is_feasible({{5, 0, 0}}, s), malformed_allocation);
}

TEST(Throughput, UnassignedMsGetsZero)
{
	auto s = make_scenario(1, 2, {0, 0}, 2.0);
	EXPECT_EQ(ms_throughput({{0, 0, 0}}, s, unit_params(), 1), 0.0);
}

TEST(Throughput, SingleLinkWithSnrTwoIsLn3)
{
	auto s = make_scenario(1, 1, {0}, 2.0);
	EXPECT_DOUBLE_EQ(ms_throughput({{0, 0, 0}}, s, unit_params(), 0), std::log(3.0));
}

TEST(Throughput, InfiniteInterfererGivesZero)
{
	auto s = make_scenario(2, 1, {0, 1}, 0.0);
	s.gains.set(0, 0, 0, 2.0);
	s.gains.set(1, 0, 0, infinity);
	s.gains.set(1, 1, 0, 2.0);
	const allocation z{{0, 0, 0}, {1, 1, 0}};
	EXPECT_EQ(ms_throughput(z, s, unit_params(), 0), 0.0);
	EXPECT_DOUBLE_EQ(ms_throughput(z, s, unit_params(), 1), std::log(3.0));
}

TEST(Throughput, ZeroServingGainGivesZero)
{
	auto s = make_scenario(1, 1, {0}, 0.0);
	EXPECT_EQ(ms_throughput({{0, 0, 0}}, s, unit_params(), 0), 0.0);
}

TEST(Throughput, InterferenceCountsAllBssNotJustNeighbors)
{
	// BS 2 is not a neighbor of BS 0 but still interferes
	auto s = make_scenario(3, 1, {0, 1, 2}, 1.0, {{1}, {0}, {}});
	const allocation z{{0, 0, 0}, {2, 2, 0}};
	const double expect = std::log1p(1.0 / (1.0 + 1.0));
	EXPECT_DOUBLE_EQ(ms_throughput(z, s, unit_params(), 0), expect);
}

TEST(Throughput, TotalMatchesDirectSumOverLinks)
{
	random_source rng(11);
	auto s = make_scenario(2, 1, {0, 1});
	for (std::size_t a = 0; a < 2; ++a)
		for (std::size_t j = 0; j < 2; ++j)
			s.gains.set(a, j, 0, rng.uniform(0.1, 5.0));
	const allocation z{{0, 0, 0}, {1, 1, 0}};
	const params p{0.0, 1.0, 2.0, 0.5};
	// direct link-by-link evaluation of the sum-rate formula
	double direct = 0.0;
	direct += std::log(1.0 + 2.0 * s.gains(0, 0, 0) / (2.0 * s.gains(1, 0, 0) + 0.5));
	direct += std::log(1.0 + 2.0 * s.gains(1, 1, 0) / (2.0 * s.gains(0, 1, 0) + 0.5));
	EXPECT_NEAR(total_throughput(z, s, p), direct, 1e-14);
	EXPECT_DOUBLE_EQ(total_throughput(z, s, p), ms_throughput(z, s, p, 0) + ms_throughput(z, s, p, 1));
}

TEST(Throughput, EmptyAllocationTotalsZero)
{
	const auto s = make_scenario(2, 2, {0, 1}, 1.0);
	EXPECT_EQ(total_throughput({}, s, unit_params()), 0.0);
}

TEST(Utility, EmptyAllocationAlphaTwo)
{
	const auto s = make_scenario(1, 1, {0, 0, 0}, 1.0);
	EXPECT_DOUBLE_EQ(tau_alpha_utility({}, s, unit_params(2.0, 1.0)), -3.0);
}

TEST(Utility, AlphaOneSingleLink)
{
	auto s = make_scenario(1, 1, {0}, 2.0);
	EXPECT_NEAR(tau_alpha_utility({{0, 0, 0}}, s, unit_params(1.0, 1.0)), log_one_plus_ln3, 1e-15);
}

TEST(Utility, AlphaZeroIsShiftedThroughput)
{
	scenario_config cfg;
	cfg.num_ms = 5;
	cfg.num_subchannels = 2;
	for (std::uint64_t seed = 1; seed <= 20; ++seed) {
		cfg.seed = seed;
		const auto s = generate(cfg);
		random_source rng(seed);
		allocation z;
		const auto cells = s.cells();
		for (std::size_t a = 0; a < s.num_bs; ++a)
			for (std::size_t n = 0; n < s.num_subchannels; ++n)
				if (!cells[a].empty() && rng.bernoulli(0.7))
					z.insert({a, cells[a][rng.index(cells[a].size())], n});
		for (double tau : {0.5, 1.0, 8.0}) {
			const params p{0.0, tau, 1.0, 1e-3};
			const double lhs = tau_alpha_utility(z, s, p);
			const double rhs = static_cast<double>(s.num_ms) * tau + total_throughput(z, s, p);
			// summation order differs between the two sides
			EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs));
		}
	}
}

TEST(Utility, StrictlyIncreasingInEachThroughput)
{
	random_source rng(5);
	for (double alpha : {0.0, 0.5, 1.0, 2.0, 4.0})
		for (double tau : {0.1, 1.0, 8.5})
			for (int trial = 0; trial < 20; ++trial) {
				std::vector<double> u(4);
				for (auto& x : u)
					x = rng.uniform(0.0, 10.0);
				const double base = tau_alpha_utility(u, alpha, tau);
				for (std::size_t j = 0; j < u.size(); ++j) {
					auto v = u;
					v[j] += 1e-3;
					EXPECT_GT(tau_alpha_utility(v, alpha, tau), base);
				}
			}
}

TEST(Fairness, JainExamples)
{
	EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{1, 1, 1, 1}), 1.0);
	EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{1, 1, 0, 0}), 0.5);
	EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{3, 1}), 0.8);
	EXPECT_DOUBLE_EQ(jain_fairness(std::vector<double>{0, 0, 0}), 1.0);
}

TEST(Fairness, NEqualOfM)
{
	for (std::size_t m = 1; m <= 8; ++m)
		for (std::size_t n = 1; n <= m; ++n) {
			std::vector<double> u(m, 0.0);
			for (std::size_t i = 0; i < n; ++i)
				u[i] = 2.5;
			EXPECT_NEAR(jain_fairness(u), static_cast<double>(n) / static_cast<double>(m), 1e-15);
		}
}

TEST(Fairness, StaysInUnitInterval)
{
	random_source rng(9);
	for (int i = 0; i < 200; ++i) {
		std::vector<double> u(1 + rng.index(10));
		for (auto& x : u)
			x = rng.bernoulli(0.3) ? 0.0 : rng.uniform(0.0, 100.0);
		const double fi = jain_fairness(u);
		EXPECT_GE(fi, 0.0);
		EXPECT_LE(fi, 1.0 + 1e-15);
	}
}

TEST(EtaBeta, Examples)
{
	auto s = make_scenario(3, 1, {0}, 0.0);
	s.gains.set(0, 0, 0, 2.0);
	s.gains.set(1, 0, 0, 4.0);
	s.gains.set(2, 0, 0, 6.0);
	EXPECT_DOUBLE_EQ(eta(s, unit_params(), 0, 0, 0), 2.0);
	EXPECT_DOUBLE_EQ(beta(s, 0, 0, 0), 2.0);
	s.gains.set(2, 0, 0, 0.0);
	EXPECT_EQ(beta(s, 0, 0, 0), 0.0);

	auto t = make_scenario(1, 1, {0}, 5.0);
	EXPECT_DOUBLE_EQ(eta(t, params{0, 1, 4.0, 2.0}, 0, 0, 0), 10.0);
	t.gains.set(0, 0, 0, 0.0);
	EXPECT_EQ(eta(t, unit_params(), 0, 0, 0), 0.0);
}

TEST(EtaBeta, GadgetMixOfInfiniteAndZeroCrosstalk)
{
	auto s = make_scenario(3, 1, {0}, 0.0);
	s.gains.set(0, 0, 0, 2.0);
	s.gains.set(1, 0, 0, infinity);
	EXPECT_EQ(beta(s, 0, 0, 0), 0.0);
}

TEST(EtaBeta, Errors)
{
	auto one = make_scenario(1, 1, {0}, 2.0);
	EXPECT_THROW(beta(one, 0, 0, 0), domain_error);
	auto two = make_scenario(2, 1, {0}, 0.0);
	EXPECT_THROW(beta(two, 0, 0, 0), domain_error);
}

TEST(Monotonicity, ThroughputFallsWithInterfererGainAndRisesWithServingGain)
{
	scenario_config cfg;
	cfg.num_bs = 3;
	cfg.num_ms = 6;
	cfg.num_subchannels = 2;
	const params p{0.0, 1.0, 1.0, 1e-3};
	for (std::uint64_t seed = 1; seed <= 20; ++seed) {
		cfg.seed = seed;
		auto s = generate(cfg);
		const auto cells = s.cells();
		allocation z;
		for (std::size_t a = 0; a < s.num_bs; ++a)
			for (std::size_t n = 0; n < s.num_subchannels; ++n)
				if (!cells[a].empty())
					z.insert({a, cells[a][n % cells[a].size()], n});
		for (const auto& t : z) {
			const double base = ms_throughput(z, s, p, t.ms);
			auto up = s;
			up.gains.set(t.bs, t.ms, t.subchannel, s.gains(t.bs, t.ms, t.subchannel) * 1.01);
			EXPECT_GE(ms_throughput(z, up, p, t.ms), base);
			for (std::size_t b = 0; b < s.num_bs; ++b) {
				if (b == t.bs)
					continue;
				auto worse = s;
				worse.gains.set(b, t.ms, t.subchannel, s.gains(b, t.ms, t.subchannel) * 1.5 + 1e-3);
				EXPECT_LE(ms_throughput(z, worse, p, t.ms), base);
			}
		}
	}
}

TEST(Monotonicity, DeallocationHurtsOnlyTheOwner)
{
	scenario_config cfg;
	cfg.num_bs = 3;
	cfg.num_ms = 6;
	cfg.num_subchannels = 3;
	const params p{0.0, 1.0, 1.0, 1e-3};
	for (std::uint64_t seed = 1; seed <= 30; ++seed) {
		cfg.seed = seed;
		const auto s = generate(cfg);
		random_source rng(seed + 100);
		const auto cells = s.cells();
		allocation z;
		for (std::size_t a = 0; a < s.num_bs; ++a)
			for (std::size_t n = 0; n < s.num_subchannels; ++n)
				if (!cells[a].empty() && rng.bernoulli(0.8))
					z.insert({a, cells[a][rng.index(cells[a].size())], n});
		const auto before = ms_throughputs(z, s, p);
		for (const auto& t : z) {
			auto smaller = z;
			smaller.erase(t);
			const auto after = ms_throughputs(smaller, s, p);
			for (std::size_t j = 0; j < s.num_ms; ++j) {
				if (j == t.ms)
					EXPECT_LE(after[j], before[j]);
				else
					EXPECT_GE(after[j], before[j]);
			}
		}
	}
}

TEST(Allocation, OrderAndEquality)
{
	allocation a{{0, 1, 0}, {0, 0, 1}};
	allocation b{{0, 0, 1}, {0, 1, 0}};
	EXPECT_EQ(a, b);
	allocation c{{0, 0, 0}};
	EXPECT_TRUE(c < a);
	EXPECT_FALSE(a < c);
	EXPECT_EQ(served_count(a), 2u);
	EXPECT_EQ(served_count(allocation{{0, 0, 0}, {0, 0, 1}}), 1u);
}
