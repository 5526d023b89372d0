#pragma once

// Closed-form evaluations on an allocation: feasibility, throughput, utility,
// fairness, and the per-link eta / beta quantities used by the certificates.

#include <icic/error.hpp>
#include <icic/model.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <vector>

namespace icic {

/// Rate of one link in nats: log(1 + P h / (P I + N0)).
///
/// Zero serving gain gives 0 and so does infinite interference, whatever the serving gain.
inline double link_rate(double power, double noise, double serving_gain, double interference_gain)
{
	if (serving_gain == 0.0 || std::isinf(interference_gain))
		return 0.0;
	return std::log1p(power * serving_gain / (power * interference_gain + noise));
}

/// alpha-fair kernel: log(x) when alpha == 1, x^(1-alpha)/(1-alpha) otherwise.
inline double alpha_fair(double x, double alpha)
{
	if (alpha == 1.0)
		return std::log(x);
	if (alpha == 0.0)
		return x;
	return std::pow(x, 1.0 - alpha) / (1.0 - alpha);
}

/// Utility contributed by a user with zero throughput.
inline double unserved_utility(double tau, double alpha)
{
	return alpha_fair(tau, alpha);
}

namespace detail {

inline constexpr std::size_t no_ms = std::numeric_limits<std::size_t>::max();

/// Dense per-(bs, subchannel) occupancy: which MS, if any, the cell serves there.
struct occupancy
{
	std::size_t num_bs = 0;
	std::size_t num_sub = 0;
	std::vector<std::size_t> owner; // [bs * N + n] -> ms or no_ms
	bool feasible = true;

	std::size_t at(std::size_t bs, std::size_t n) const { return owner[bs * num_sub + n]; }
};

inline occupancy make_occupancy(const allocation& alloc, const scenario& scn)
{
	occupancy occ{scn.num_bs, scn.num_subchannels,
	              std::vector<std::size_t>(scn.num_bs * scn.num_subchannels, no_ms), true};
	for (const auto& t : alloc) {
		if (t.bs >= scn.num_bs || t.ms >= scn.num_ms || t.subchannel >= scn.num_subchannels)
			throw malformed_allocation("allocation triple index out of range");
		if (scn.association[t.ms] != t.bs)
			throw malformed_allocation("allocation assigns an MS through a BS that does not serve it");
		auto& slot = occ.owner[t.bs * occ.num_sub + t.subchannel];
		if (slot != no_ms)
			occ.feasible = false;
		else
			slot = t.ms;
	}
	return occ;
}

/// Per-MS throughput for a feasible occupancy. Interference sums over every other
/// transmitting BS in increasing index order.
inline void throughputs_into(const occupancy& occ, const scenario& scn, const params& p, std::vector<double>& u)
{
	u.assign(scn.num_ms, 0.0);
	for (std::size_t n = 0; n < occ.num_sub; ++n) {
		for (std::size_t a = 0; a < occ.num_bs; ++a) {
			const std::size_t j = occ.at(a, n);
			if (j == no_ms)
				continue;
			double interference = 0.0;
			for (std::size_t i = 0; i < occ.num_bs; ++i)
				if (i != a && occ.at(i, n) != no_ms)
					interference += scn.gains(i, j, n);
			u[j] += link_rate(p.power, p.noise, scn.gains(a, j, n), interference);
		}
	}
}

inline std::vector<double> throughputs(const occupancy& occ, const scenario& scn, const params& p)
{
	std::vector<double> u;
	throughputs_into(occ, scn, p, u);
	return u;
}

inline occupancy checked_occupancy(const allocation& alloc, const scenario& scn)
{
	auto occ = make_occupancy(alloc, scn);
	if (!occ.feasible)
		throw domain_error("allocation is infeasible: a cell uses a subchannel for two MSs");
	return occ;
}

} // namespace detail

/// True iff no cell assigns the same subchannel to two of its MSs.
/// Throws malformed_allocation when a triple does not exist in the scenario.
inline bool is_feasible(const allocation& alloc, const scenario& scn)
{
	return detail::make_occupancy(alloc, scn).feasible;
}

/// Every MS's throughput, indexed by MS.
inline std::vector<double> ms_throughputs(const allocation& alloc, const scenario& scn, const params& p)
{
	return detail::throughputs(detail::checked_occupancy(alloc, scn), scn, p);
}

inline double ms_throughput(const allocation& alloc, const scenario& scn, const params& p, std::size_t ms)
{
	if (ms >= scn.num_ms)
		throw malformed_allocation("MS index out of range");
	return ms_throughputs(alloc, scn, p)[ms];
}

inline double total_throughput(std::span<const double> throughput)
{
	double s = 0.0;
	for (double u : throughput)
		s += u;
	return s;
}

inline double total_throughput(const allocation& alloc, const scenario& scn, const params& p)
{
	return total_throughput(ms_throughputs(alloc, scn, p));
}

inline double tau_alpha_utility(std::span<const double> throughput, double alpha, double tau)
{
	double s = 0.0;
	for (double u : throughput)
		s += alpha_fair(tau + u, alpha);
	return s;
}

inline double tau_alpha_utility(const allocation& alloc, const scenario& scn, const params& p)
{
	return tau_alpha_utility(ms_throughputs(alloc, scn, p), p.alpha, p.tau);
}

/// Jain's index (sum u)^2 / (M sum u^2); the all-zero vector scores 1.
inline double jain_fairness(std::span<const double> throughput)
{
	if (throughput.empty())
		return 1.0;
	double s = 0.0;
	double s2 = 0.0;
	for (double u : throughput) {
		s += u;
		s2 += u * u;
	}
	if (s2 == 0.0)
		return 1.0;
	return (s * s) / (static_cast<double>(throughput.size()) * s2);
}

inline double jain_fairness(const allocation& alloc, const scenario& scn, const params& p)
{
	return jain_fairness(ms_throughputs(alloc, scn, p));
}

/// Number of distinct MSs holding at least one subchannel.
inline std::size_t served_count(const allocation& alloc)
{
	std::set<std::size_t> ms;
	for (const auto& t : alloc)
		ms.insert(t.ms);
	return ms.size();
}

namespace detail {

inline void require_serving(const scenario& scn, std::size_t a, std::size_t j, std::size_t n)
{
	if (a >= scn.num_bs || j >= scn.num_ms || n >= scn.num_subchannels)
		throw domain_error("(bs, ms, subchannel) index out of range");
	if (scn.association[j] != a)
		throw domain_error("MS is not served by the given BS");
}

} // namespace detail

/// Serving SNR proxy P H[a][j][n] / N0.
inline double eta(const scenario& scn, const params& p, std::size_t a, std::size_t j, std::size_t n)
{
	detail::require_serving(scn, a, j, n);
	return p.power * scn.gains(a, j, n) / p.noise;
}

/// Least crosstalk gain to MS j on subchannel n, relative to its serving gain.
inline double beta(const scenario& scn, std::size_t a, std::size_t j, std::size_t n)
{
	detail::require_serving(scn, a, j, n);
	if (scn.num_bs < 2)
		throw domain_error("beta is undefined without an interfering BS (K = 1)");
	const double serving = scn.gains(a, j, n);
	if (serving == 0.0)
		throw domain_error("beta is undefined for a zero serving gain");
	double least = infinity;
	for (std::size_t b = 0; b < scn.num_bs; ++b)
		if (b != a)
			least = std::min(least, scn.gains(b, j, n));
	return least / serving;
}

} // namespace icic
