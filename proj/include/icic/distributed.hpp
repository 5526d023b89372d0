#pragma once

// Synchronous-round simulation of the distributed greedy allocation protocol.
//
// Each round every active BS computes p_a, its best (MS, subchannel) rate
// estimate given the subchannels its neighbors are known to use. A BS whose
// p_a is at least every neighbor's allocates that pair; announcements are then
// merged into the neighbors' views. All reads in a round use the state at the
// start of the round.

#include <icic/error.hpp>
#include <icic/metrics.hpp>
#include <icic/model.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace icic {

enum class termination_reason
{
	all_ms_served,
	all_subchannels_used,
	below_threshold,
	no_candidate,
};

inline std::string_view to_string(termination_reason r)
{
	switch (r) {
	case termination_reason::all_ms_served: return "all-ms-served";
	case termination_reason::all_subchannels_used: return "all-subchannels-used";
	case termination_reason::below_threshold: return "below-threshold";
	case termination_reason::no_candidate: return "no-candidate";
	}
	return "no-candidate";
}

/// Local view held by one BS.
struct bs_state
{
	std::size_t id = 0;
	std::vector<std::size_t> members;                 // MSs of this cell, increasing
	std::vector<char> member_served;                  // aligned with members
	std::vector<std::pair<std::size_t, std::size_t>> assigned; // (ms, subchannel) in allocation order
	std::vector<char> own_usage;                      // y-hat for this BS, per subchannel
	std::vector<std::vector<char>> neighbor_usage;    // y-hat per scn.neighbors[id][k], per subchannel
	bool terminated = false;
	std::optional<termination_reason> reason;

	static bs_state initial(const scenario& scn, std::size_t bs)
	{
		bs_state s;
		s.id = bs;
		s.members = scn.cell_members(bs);
		s.member_served.assign(s.members.size(), 0);
		s.own_usage.assign(scn.num_subchannels, 0);
		s.neighbor_usage.assign(scn.neighbors[bs].size(), std::vector<char>(scn.num_subchannels, 0));
		return s;
	}

	bool all_served() const
	{
		return std::all_of(member_served.begin(), member_served.end(), [](char c) { return c != 0; });
	}

	bool all_subchannels_used() const
	{
		return std::all_of(own_usage.begin(), own_usage.end(), [](char c) { return c != 0; });
	}
};

struct candidate
{
	double value = -infinity; // -inf when no eligible pair exists
	std::size_t ms = 0;
	std::size_t subchannel = 0;

	bool empty() const { return value == -infinity; }
};

/// Best estimated rate over unserved members and subchannels the cell does not
/// use yet. Interference counts neighbors only. Ties go to the lowest MS, then
/// the lowest subchannel.
inline candidate compute_pa(const bs_state& st, const scenario& scn, const params& p)
{
	candidate best;
	const auto& nbrs = scn.neighbors[st.id];
	for (std::size_t k = 0; k < st.members.size(); ++k) {
		if (st.member_served[k])
			continue;
		const std::size_t j = st.members[k];
		for (std::size_t n = 0; n < scn.num_subchannels; ++n) {
			if (st.own_usage[n])
				continue;
			double interference = 0.0;
			for (std::size_t b = 0; b < nbrs.size(); ++b)
				if (st.neighbor_usage[b][n])
					interference += scn.gains(nbrs[b], j, n);
			const double rate = link_rate(p.power, p.noise, scn.gains(st.id, j, n), interference);
			if (best.empty() || rate > best.value) {
				best.value = rate;
				best.ms = j;
				best.subchannel = n;
			}
		}
	}
	return best;
}

enum class bs_action
{
	allocate,
	defer,
	terminate,
};

inline std::string_view to_string(bs_action a)
{
	switch (a) {
	case bs_action::allocate: return "allocate";
	case bs_action::defer: return "defer";
	case bs_action::terminate: return "terminate";
	}
	return "defer";
}

/// What one active BS did in one round.
struct bs_event
{
	std::size_t bs = 0;
	double pa = -infinity;
	bs_action action = bs_action::defer;
	std::size_t ms = 0;         // allocate only
	std::size_t subchannel = 0; // allocate only
	std::optional<termination_reason> terminated; // set when the BS stopped this round
};

struct round_record
{
	std::size_t index = 0; // 1-based
	std::vector<bs_event> events;
};

/// Estimated (neighbor-only) versus realized (all BSs) rate of an allocated link.
struct link_outcome
{
	std::size_t bs = 0;
	std::size_t ms = 0;
	std::size_t subchannel = 0;
	std::size_t round = 0;
	double estimated = 0.0;
	double realized = 0.0;
};

struct round_trace
{
	std::vector<round_record> rounds;
	std::vector<link_outcome> links;
};

/// Rebuilds the final allocation from the allocate events of a trace.
inline allocation replay(const round_trace& trace)
{
	allocation z;
	for (const auto& r : trace.rounds)
		for (const auto& e : r.events)
			if (e.action == bs_action::allocate)
				z.insert({e.bs, e.ms, e.subchannel});
	return z;
}

struct distributed_result
{
	allocation alloc;
	round_trace trace;
	std::vector<bs_state> states;
};

/// Upper bound on the number of rounds: min(M, K N) + K.
inline std::size_t round_bound(const scenario& scn)
{
	return std::min(scn.num_ms, scn.num_bs * scn.num_subchannels) + scn.num_bs;
}

inline distributed_result run_distributed(const scenario& scn, const params& p, double p0)
{
	scn.validate();
	p.validate();
	if (!(p0 > 0.0))
		throw domain_error("termination threshold p0 must be positive");

	const std::size_t k = scn.num_bs;
	distributed_result out;
	out.states.reserve(k);
	for (std::size_t a = 0; a < k; ++a)
		out.states.push_back(bs_state::initial(scn, a));
	auto& states = out.states;

	// position of b inside a's neighbor list, for announcement delivery
	std::vector<std::vector<std::size_t>> slot_of(k, std::vector<std::size_t>(k, SIZE_MAX));
	for (std::size_t a = 0; a < k; ++a)
		for (std::size_t s = 0; s < scn.neighbors[a].size(); ++s)
			slot_of[a][scn.neighbors[a][s]] = s;

	const std::size_t bound = round_bound(scn);
	std::vector<double> pa(k);
	std::vector<candidate> cand(k);
	std::size_t active = k;

	for (std::size_t round = 1; active > 0; ++round) {
		if (round > bound)
			throw error("distributed protocol exceeded its round bound");
		round_record rec;
		rec.index = round;
		std::vector<std::size_t> event_of(k, SIZE_MAX);

		// step 1: p_a from the start-of-round snapshot
		std::fill(pa.begin(), pa.end(), -infinity);
		for (std::size_t a = 0; a < k; ++a) {
			if (states[a].terminated)
				continue;
			cand[a] = compute_pa(states[a], scn, p);
			bs_event ev;
			ev.bs = a;
			ev.pa = cand[a].value;
			if (cand[a].empty() || cand[a].value < p0) {
				ev.action = bs_action::terminate;
				ev.terminated = cand[a].empty() ? termination_reason::no_candidate : termination_reason::below_threshold;
			} else {
				pa[a] = cand[a].value;
			}
			event_of[a] = rec.events.size();
			rec.events.push_back(ev);
		}

		// step 2: local maxima allocate; terminated BSs count as -inf
		std::vector<std::size_t> winners;
		for (auto& ev : rec.events) {
			if (ev.action == bs_action::terminate)
				continue;
			const std::size_t a = ev.bs;
			bool local_max = true;
			for (auto b : scn.neighbors[a])
				if (pa[b] > pa[a]) {
					local_max = false;
					break;
				}
			if (local_max) {
				ev.action = bs_action::allocate;
				ev.ms = cand[a].ms;
				ev.subchannel = cand[a].subchannel;
				winners.push_back(a);
			}
		}

		// step 3: apply allocations, then deliver announcements
		for (auto a : winners) {
			auto& st = states[a];
			const auto& c = cand[a];
			st.assigned.emplace_back(c.ms, c.subchannel);
			st.own_usage[c.subchannel] = 1;
			const auto it = std::lower_bound(st.members.begin(), st.members.end(), c.ms);
			st.member_served[static_cast<std::size_t>(it - st.members.begin())] = 1;
			for (auto b : scn.neighbors[a])
				states[b].neighbor_usage[slot_of[b][a]][c.subchannel] = 1;
			out.trace.links.push_back({a, c.ms, c.subchannel, round, c.value, 0.0});
		}

		for (auto& ev : rec.events) {
			auto& st = states[ev.bs];
			if (ev.action == bs_action::allocate) {
				if (st.all_served())
					ev.terminated = termination_reason::all_ms_served;
				else if (st.all_subchannels_used())
					ev.terminated = termination_reason::all_subchannels_used;
			}
			if (ev.terminated) {
				st.terminated = true;
				st.reason = ev.terminated;
				--active;
			}
		}
		out.trace.rounds.push_back(std::move(rec));
	}

	for (const auto& st : states)
		for (auto [j, n] : st.assigned)
			out.alloc.insert({st.id, j, n});

	const auto occ = detail::checked_occupancy(out.alloc, scn);
	for (auto& link : out.trace.links) {
		double interference = 0.0;
		for (std::size_t i = 0; i < k; ++i)
			if (i != link.bs && occ.at(i, link.subchannel) != detail::no_ms)
				interference += scn.gains(i, link.ms, link.subchannel);
		link.realized = link_rate(p.power, p.noise, scn.gains(link.bs, link.ms, link.subchannel), interference);
	}
	return out;
}

/// Threshold that gives close to the best total throughput for a K x N system with M users.
inline double throughput_optimal_p0(std::size_t num_bs, std::size_t num_ms, std::size_t num_sub)
{
	if (num_bs == 0 || num_ms == 0 || num_sub == 0)
		throw domain_error("K, M and N must be positive");
	const double kn = static_cast<double>(num_bs * num_sub);
	const double m = static_cast<double>(num_ms);
	if (num_ms <= num_bs * num_sub)
		return 1.0 + m / (2.0 * kn);
	if (std::log(m) <= 0.0)
		throw domain_error("p0* second branch needs log M > 0");
	return 1.0 + std::log(kn) / (2.0 * std::log(m));
}

/// p0 = 1 / (1/p0* + alpha): shrinks toward 0 as alpha grows.
inline double default_p0(std::size_t num_bs, std::size_t num_ms, std::size_t num_sub, double alpha)
{
	if (!(alpha >= 0.0))
		throw domain_error("alpha must be nonnegative");
	return 1.0 / (1.0 / throughput_optimal_p0(num_bs, num_ms, num_sub) + alpha);
}

} // namespace icic
