#pragma once

// Polynomial-time solver: reduce to max-weight bipartite matching between MSs
// and subchannels, and check the interference conditions under which the
// matching is an optimal allocation.

#include <icic/error.hpp>
#include <icic/hungarian.hpp>
#include <icic/metrics.hpp>
#include <icic/model.hpp>
#include <icic/report.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace icic {

/// MSs on the left, subchannels on the right, dense weight W[ms][subchannel].
struct weighted_bipartite_graph
{
	std::size_t num_left = 0;
	std::size_t num_right = 0;
	std::vector<double> weight; // row-major num_left x num_right
	double baseline = 0.0;      // utility of an unmatched MS

	double operator()(std::size_t left, std::size_t right) const { return weight[left * num_right + right]; }
	double shifted(std::size_t left, std::size_t right) const { return (*this)(left, right) - baseline; }
};

using matching = std::vector<std::pair<std::size_t, std::size_t>>; // (ms, subchannel)

/// Utility of an MS whose only subchannel has serving SNR `eta` and no interference.
/// tau = 0 is tolerated here (pure-rate weights when alpha = 0).
inline double edge_weight(double eta, double alpha, double tau)
{
	return alpha_fair(tau + std::log1p(eta), alpha);
}

inline weighted_bipartite_graph build_weights(const scenario& scn, const params& p)
{
	scn.validate();
	p.validate();
	weighted_bipartite_graph g;
	g.num_left = scn.num_ms;
	g.num_right = scn.num_subchannels;
	g.weight.resize(g.num_left * g.num_right);
	g.baseline = unserved_utility(p.tau, p.alpha);
	for (std::size_t j = 0; j < scn.num_ms; ++j) {
		const std::size_t a = scn.serving_bs(j);
		for (std::size_t n = 0; n < scn.num_subchannels; ++n) {
			const double h = scn.gains(a, j, n);
			if (h == 0.0 || std::isinf(h))
				throw domain_error("matching weights need finite positive serving gains (MS " + std::to_string(j) +
				                   ", subchannel " + std::to_string(n) + ")");
			g.weight[j * g.num_right + n] = edge_weight(p.power * h / p.noise, p.alpha, p.tau);
		}
	}
	return g;
}

/// Matching maximizing the sum of (W - baseline) over its edges.
inline matching max_weight_matching(const weighted_bipartite_graph& g)
{
	if (g.weight.size() != g.num_left * g.num_right)
		throw domain_error("weight matrix shape mismatch");
	std::vector<double> shifted(g.weight.size());
	for (std::size_t i = 0; i < shifted.size(); ++i) {
		if (!std::isfinite(g.weight[i]))
			throw domain_error("matching weights must be finite");
		shifted[i] = g.weight[i] - g.baseline;
	}
	return max_weight_assignment<double>(shifted, g.num_left, g.num_right);
}

inline double matching_value(const weighted_bipartite_graph& g, const matching& m)
{
	double s = 0.0;
	for (auto [j, n] : m)
		s += g.shifted(j, n);
	return s;
}

inline allocation matching_to_allocation(const matching& m, const scenario& scn)
{
	std::vector<char> ms_used(scn.num_ms, 0);
	std::vector<char> sub_used(scn.num_subchannels, 0);
	allocation z;
	for (auto [j, n] : m) {
		if (j >= scn.num_ms || n >= scn.num_subchannels)
			throw malformed_allocation("matching edge out of range");
		if (ms_used[j] || sub_used[n])
			throw domain_error("edge set is not a matching");
		ms_used[j] = sub_used[n] = 1;
		z.insert({scn.serving_bs(j), j, n});
	}
	return z;
}

enum class governing_condition
{
	none,      // alpha = 0
	condition1, // alpha in (0, 2) \ {1}
	condition2, // alpha >= 2
	condition3, // alpha = 1
};

inline std::string_view to_string(governing_condition c)
{
	switch (c) {
	case governing_condition::none: return "none";
	case governing_condition::condition1: return "condition-1";
	case governing_condition::condition2: return "condition-2";
	case governing_condition::condition3: return "condition-3";
	}
	return "none";
}

inline governing_condition governing_condition_for(double alpha)
{
	if (alpha == 0.0)
		return governing_condition::none;
	if (alpha == 1.0)
		return governing_condition::condition3;
	if (alpha < 2.0)
		return governing_condition::condition1;
	return governing_condition::condition2;
}

struct condition_record
{
	std::size_t bs = 0;
	std::size_t ms = 0;
	std::size_t subchannel = 0;
	double eta = 0.0;
	double beta = 0.0;
	std::optional<double> threshold1; // undefined at alpha = 1
	std::optional<double> threshold2; // undefined at alpha = 1
	double threshold3 = 0.0;
	bool rate_within_tau = false; // log(1 + eta) <= tau
};

struct condition_report
{
	double alpha = 0.0;
	double tau = 0.0;
	std::vector<condition_record> records;
	std::optional<double> condition2_factor; // alpha (2^(alpha-1) - 1) / (tau (alpha - 1))
	bool cond1_holds = false;
	bool cond2_holds = false;
	bool cond3_holds = false;
	bool cond4_holds = false; // every crosstalk gain is +inf
	governing_condition applicable = governing_condition::none;

	bool applicable_holds() const
	{
		switch (applicable) {
		case governing_condition::condition1: return cond1_holds;
		case governing_condition::condition2: return cond2_holds;
		case governing_condition::condition3: return cond3_holds;
		case governing_condition::none: return false;
		}
		return false;
	}
};

namespace conditions {

/// (alpha-1) / (tau - (tau + log(1+eta))^(1-alpha) tau^alpha), shared by conditions 1 and 2.
inline double limit_term(double alpha, double tau, double eta)
{
	const double rate = std::log1p(eta);
	return (alpha - 1.0) / (tau - std::pow(tau + rate, 1.0 - alpha) * std::pow(tau, alpha));
}

inline double condition2_factor(double alpha, double tau)
{
	return alpha * (std::pow(2.0, alpha - 1.0) - 1.0) / (tau * (alpha - 1.0));
}

inline double threshold1(double alpha, double tau, double eta)
{
	return std::max(limit_term(alpha, tau, eta), alpha / tau + 1.0 / eta);
}

inline double threshold2(double alpha, double tau, double eta)
{
	return std::max(limit_term(alpha, tau, eta), condition2_factor(alpha, tau) + 1.0 / eta);
}

inline double threshold3(double tau, double eta)
{
	return std::max(1.0 / eta + 1.0 / tau, 1.0 / (tau * std::log1p(std::log1p(eta) / tau)));
}

/// Scalar form of the governing condition for one (eta, beta) pair.
inline bool holds(double alpha, double tau, double eta, double beta)
{
	switch (governing_condition_for(alpha)) {
	case governing_condition::condition1:
		return tau < alpha && beta >= threshold1(alpha, tau, eta);
	case governing_condition::condition2:
		return condition2_factor(alpha, tau) > 1.0 && std::log1p(eta) <= tau && beta >= threshold2(alpha, tau, eta);
	case governing_condition::condition3:
		return tau < 1.0 && beta >= threshold3(tau, eta);
	case governing_condition::none:
		return false;
	}
	return false;
}

} // namespace conditions

inline condition_report check_conditions(const scenario& scn, const params& p)
{
	scn.validate();
	p.validate();
	if (scn.num_bs < 2)
		throw domain_error("conditions need at least two BSs");
	condition_report rep;
	rep.alpha = p.alpha;
	rep.tau = p.tau;
	rep.applicable = governing_condition_for(p.alpha);
	const bool alpha_is_one = p.alpha == 1.0;
	if (!alpha_is_one)
		rep.condition2_factor = conditions::condition2_factor(p.alpha, p.tau);

	bool all1 = !alpha_is_one;
	bool all2 = !alpha_is_one;
	bool all3 = true;
	bool all_rate = true;
	bool all_inf = true;
	for (std::size_t j = 0; j < scn.num_ms; ++j) {
		const std::size_t a = scn.serving_bs(j);
		for (std::size_t n = 0; n < scn.num_subchannels; ++n) {
			if (scn.gains(a, j, n) == 0.0)
				throw domain_error("conditions need positive serving gains");
			condition_record r;
			r.bs = a;
			r.ms = j;
			r.subchannel = n;
			r.eta = eta(scn, p, a, j, n);
			r.beta = beta(scn, a, j, n);
			if (!alpha_is_one) {
				r.threshold1 = conditions::threshold1(p.alpha, p.tau, r.eta);
				r.threshold2 = conditions::threshold2(p.alpha, p.tau, r.eta);
				all1 = all1 && r.beta >= *r.threshold1;
				all2 = all2 && r.beta >= *r.threshold2;
			}
			r.threshold3 = conditions::threshold3(p.tau, r.eta);
			all3 = all3 && r.beta >= r.threshold3;
			r.rate_within_tau = std::log1p(r.eta) <= p.tau;
			all_rate = all_rate && r.rate_within_tau;
			all_inf = all_inf && std::isinf(r.beta);
			rep.records.push_back(r);
		}
	}
	rep.cond1_holds = p.tau < p.alpha && all1;
	rep.cond2_holds = rep.condition2_factor.has_value() && *rep.condition2_factor > 1.0 && all_rate && all2;
	rep.cond3_holds = p.tau < 1.0 && all3;
	rep.cond4_holds = all_inf;
	return rep;
}

/// Weights -> Hungarian matching -> allocation, with the certificate attached.
inline solver_report solve_via_matching(const scenario& scn, const params& p)
{
	const auto g = build_weights(scn, p);
	auto report = make_report("matching", matching_to_allocation(max_weight_matching(g), scn), scn, p);
	if (scn.num_bs < 2) {
		report.certificate = certificate_status::not_covered;
		report.certificate_detail = "single cell: no crosstalk to certify against";
		return report;
	}
	const auto cond = check_conditions(scn, p);
	if (cond.applicable == governing_condition::none) {
		report.certificate = certificate_status::not_covered;
		report.certificate_detail = "alpha = 0 is outside the certified range";
	} else {
		report.certificate = cond.applicable_holds() ? certificate_status::certified : certificate_status::uncertified;
		report.certificate_detail = std::string(to_string(cond.applicable)) +
		                            (cond.applicable_holds() ? " holds" : " does not hold");
	}
	return report;
}

} // namespace icic
