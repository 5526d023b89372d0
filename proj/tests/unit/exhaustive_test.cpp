#include <icic/exhaustive.hpp>
#include <icic/scenario_gen.hpp>

#include <support/brute_force.hpp>
#include <support/builders.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace icic;
using icic::testing::for_each_allocation;
using icic::testing::make_scenario;

namespace {

scenario small_random(std::uint64_t seed, std::size_t k = 2, std::size_t m = 4, std::size_t n = 2)
{
	scenario_config cfg;
	cfg.num_bs = k;
	cfg.num_ms = m;
	cfg.num_subchannels = n;
	cfg.seed = seed;
	return generate(cfg);
}

} // namespace

TEST(Exhaustive, SingleLinkIsAllocated)
{
	auto s = make_scenario(1, 1, {0}, 2.0);
	const params p{0.0, 1.0, 1.0, 1.0};
	const auto r = exhaustive_search(s, p);
	EXPECT_EQ(r.alloc, (allocation{{0, 0, 0}}));
	EXPECT_DOUBLE_EQ(r.utility, 1.0 + std::log(3.0));
	EXPECT_EQ(r.certificate, certificate_status::exact);
	EXPECT_EQ(r.states_explored, 2u);
}

TEST(Exhaustive, TriangleGadgetServesOne)
{
	auto [s, p] = mis_gadget_scenario(complete_graph(3));
	p.alpha = 0.5;
	p.tau = 0.5;
	const auto r = exhaustive_search(s, p);
	const double expect = std::sqrt(0.5 + std::log(3.0)) / 0.5 + 2.0 * std::sqrt(0.5) / 0.5;
	EXPECT_NEAR(r.utility, expect, 1e-14);
	// frozen 30-digit value of the same expression
	EXPECT_NEAR(r.utility, 5.357151932761573721, 1e-13);
	EXPECT_EQ(r.alloc.size(), 1u);
}

TEST(Exhaustive, BudgetExceededNamesStateCount)
{
	const auto s = small_random(1, 2, 6, 4);
	const params p{};
	try {
		exhaustive_search(s, p, {10});
		FAIL() << "expected instance_too_large";
	} catch (const instance_too_large& e) {
		EXPECT_NE(std::string(e.what()).find(std::to_string(state_count(s))), std::string::npos);
	}
}

TEST(Exhaustive, MatchesIndependentEnumeration)
{
	for (std::uint64_t seed = 1; seed <= 25; ++seed) {
		const auto s = small_random(seed, 2, 4, 2);
		for (double alpha : {0.0, 1.0, 2.0}) {
			const params p{alpha, 1.0, 1.0, 1e-3};
			const auto r = exhaustive_search(s, p);
			double best = -infinity;
			std::uint64_t seen = 0;
			for_each_allocation(s, [&](const allocation& z) {
				++seen;
				best = std::max(best, tau_alpha_utility(z, s, p));
			});
			EXPECT_EQ(seen, state_count(s));
			EXPECT_EQ(r.states_explored, seen);
			EXPECT_NEAR(r.utility, best, 1e-12 * std::abs(best));
			EXPECT_TRUE(is_feasible(r.alloc, s));
			EXPECT_NEAR(tau_alpha_utility(r.alloc, s, p), r.utility, 1e-12 * std::abs(best));
		}
	}
}

TEST(Exhaustive, DominatesRandomAllocations)
{
	random_source rng(77);
	for (std::uint64_t seed = 1; seed <= 3; ++seed) {
		const auto s = small_random(seed, 3, 6, 2);
		const params p{1.0, 1.0, 1.0, 1e-3};
		const auto r = exhaustive_search(s, p);
		const auto cells = s.cells();
		for (int i = 0; i < 10'000; ++i) {
			allocation z;
			for (std::size_t a = 0; a < s.num_bs; ++a)
				for (std::size_t n = 0; n < s.num_subchannels; ++n) {
					const auto pick = rng.index(cells[a].size() + 1);
					if (pick)
						z.insert({a, cells[a][pick - 1], n});
				}
			ASSERT_LE(tau_alpha_utility(z, s, p), r.utility);
		}
	}
}

TEST(Exhaustive, TieBreakPicksLexicographicallySmallest)
{
	// two identical isolated cells: serving MS 0 or MS 1 on subchannel 0 ties
	auto s = make_scenario(1, 1, {0, 0}, 2.0);
	const params p{0.0, 1.0, 1.0, 1.0};
	const auto r = exhaustive_search(s, p);
	EXPECT_EQ(r.alloc, (allocation{{0, 0, 0}}));
}

TEST(Exhaustive, AlphaZeroArgmaxIgnoresTau)
{
	for (std::uint64_t seed = 1; seed <= 10; ++seed) {
		const auto s = small_random(seed, 2, 4, 2);
		const auto base = exhaustive_search(s, {0.0, 0.5, 1.0, 1e-3}).alloc;
		for (double tau : {1.0, 8.0})
			EXPECT_EQ(exhaustive_search(s, {0.0, tau, 1.0, 1e-3}).alloc, base);
		// and it is the sum-rate maximizer
		double best = -1.0;
		for_each_allocation(s, [&](const allocation& z) { best = std::max(best, total_throughput(z, s, {0, 1, 1, 1e-3})); });
		EXPECT_NEAR(total_throughput(base, s, {0, 1, 1, 1e-3}), best, 1e-12 * best);
	}
}
