#pragma once

// Brute-force optimum of the tau-alpha utility. This is the reference every
// other solver is checked against, so it does no pruning.

#include <icic/error.hpp>
#include <icic/metrics.hpp>
#include <icic/model.hpp>
#include <icic/report.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace icic {

struct search_budget
{
	std::uint64_t max_states = 100'000'000;
};

/// prod over (bs, subchannel) of (M_a + 1), saturating at UINT64_MAX.
inline std::uint64_t state_count(const scenario& scn)
{
	const auto cells = scn.cells();
	std::uint64_t total = 1;
	for (std::size_t a = 0; a < scn.num_bs; ++a)
		for (std::size_t n = 0; n < scn.num_subchannels; ++n) {
			const std::uint64_t choices = cells[a].size() + 1;
			if (total > UINT64_MAX / choices)
				return UINT64_MAX;
			total *= choices;
		}
	return total;
}

/// Enumerates every feasible allocation. Each (bs, subchannel) cell is an
/// odometer digit whose value 0 means unused and i > 0 means the i-th MS of the
/// cell. Ties on utility go to the lexicographically smallest triple set.
inline solver_report exhaustive_search(const scenario& scn, const params& p, const search_budget& budget = {})
{
	scn.validate();
	p.validate();
	const std::uint64_t states = state_count(scn);
	if (states > budget.max_states)
		throw instance_too_large("exhaustive search needs " +
		                         (states == UINT64_MAX ? std::string("more than 2^64") : std::to_string(states)) +
		                         " states, budget is " + std::to_string(budget.max_states));

	const auto cells = scn.cells();
	const std::size_t num_sub = scn.num_subchannels;
	const std::size_t num_cells = scn.num_bs * num_sub;

	detail::occupancy occ{scn.num_bs, num_sub, std::vector<std::size_t>(num_cells, detail::no_ms), true};
	std::vector<std::size_t> digit(num_cells, 0);
	std::vector<double> u;

	auto to_allocation = [&](const detail::occupancy& o) {
		allocation z;
		for (std::size_t c = 0; c < num_cells; ++c)
			if (o.owner[c] != detail::no_ms)
				z.insert({c / num_sub, o.owner[c], c % num_sub});
		return z;
	};

	detail::throughputs_into(occ, scn, p, u);
	double best_utility = tau_alpha_utility(u, p.alpha, p.tau);
	allocation best = to_allocation(occ);
	std::uint64_t visited = 1;

	for (;;) {
		std::size_t c = 0;
		for (; c < num_cells; ++c) {
			const auto& members = cells[c / num_sub];
			if (digit[c] < members.size()) {
				++digit[c];
				occ.owner[c] = members[digit[c] - 1];
				break;
			}
			digit[c] = 0;
			occ.owner[c] = detail::no_ms;
		}
		if (c == num_cells)
			break;
		++visited;
		detail::throughputs_into(occ, scn, p, u);
		const double value = tau_alpha_utility(u, p.alpha, p.tau);
		if (value > best_utility) {
			best_utility = value;
			best = to_allocation(occ);
		} else if (value == best_utility) {
			auto candidate = to_allocation(occ);
			if (candidate < best)
				best = std::move(candidate);
		}
	}

	auto report = make_report("exhaustive", std::move(best), scn, p);
	report.certificate = certificate_status::exact;
	report.states_explored = visited;
	return report;
}

} // namespace icic
