#pragma once

#include <icic/metrics.hpp>
#include <icic/model.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace icic {

enum class certificate_status
{
	none,        // heuristic solver, no optimality claim
	exact,       // exhaustive enumeration
	certified,   // the governing polynomial-time condition holds
	uncertified, // the governing condition fails
	not_covered, // no condition governs this alpha (alpha = 0)
};

inline std::string_view to_string(certificate_status s)
{
	switch (s) {
	case certificate_status::none: return "none";
	case certificate_status::exact: return "exact";
	case certificate_status::certified: return "certified";
	case certificate_status::uncertified: return "uncertified";
	case certificate_status::not_covered: return "not-covered";
	}
	return "none";
}

struct solver_report
{
	std::string method;
	allocation alloc;
	std::vector<double> throughputs;
	double utility = 0.0;
	double total_throughput = 0.0;
	double fairness = 1.0;
	std::size_t served = 0;
	certificate_status certificate = certificate_status::none;
	std::string certificate_detail;
	std::uint64_t states_explored = 0; // exhaustive only
	std::size_t rounds = 0;            // distributed only
};

/// Fills every metric of a report from its allocation.
inline solver_report make_report(std::string method, allocation alloc, const scenario& scn, const params& p)
{
	solver_report r;
	r.method = std::move(method);
	r.throughputs = ms_throughputs(alloc, scn, p);
	r.utility = tau_alpha_utility(r.throughputs, p.alpha, p.tau);
	r.total_throughput = total_throughput(r.throughputs);
	r.fairness = jain_fairness(r.throughputs);
	r.served = served_count(alloc);
	r.alloc = std::move(alloc);
	return r;
}

} // namespace icic
