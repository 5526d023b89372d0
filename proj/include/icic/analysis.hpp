#pragma once

// Numeric checks behind the polynomial-time certificate and the hardness
// reduction.
//
// For x >= 1 co-channel users on one subchannel, f(x) (alpha != 1) and f1(x)
// (alpha = 1) compare the best-case utility of sharing against keeping only one
// user. The certificate is sound when both stay below their value at x = 1.

#include <icic/error.hpp>
#include <icic/matching.hpp>
#include <icic/metrics.hpp>
#include <icic/report.hpp>

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace icic {

namespace detail {

inline void require_lemma_domain(double x, double tau, double eta, double beta)
{
	if (!(x >= 1.0))
		throw domain_error("x must be >= 1");
	if (!(tau > 0.0) || !(eta > 0.0) || !(beta > 0.0))
		throw domain_error("tau, eta and beta must be positive");
}

// log(1 + eta / ((x-1) eta beta + 1))
inline double shared_rate(double x, double eta, double beta)
{
	return std::log1p(eta / ((x - 1.0) * eta * beta + 1.0));
}

} // namespace detail

/// f(x) = x (tau + r(x))^(1-alpha)/(1-alpha) - (x-1) tau^(1-alpha)/(1-alpha),
/// evaluated as tau^(1-alpha)/(1-alpha) [x expm1((1-alpha) log1p(r/tau)) + 1]
/// so the two large terms never cancel.
inline double f_eval(double x, double alpha, double tau, double eta, double beta)
{
	detail::require_lemma_domain(x, tau, eta, beta);
	if (alpha == 1.0)
		throw domain_error("f is defined for alpha != 1; use f1_eval");
	if (!(alpha >= 0.0))
		throw domain_error("alpha must be nonnegative");
	const double r = detail::shared_rate(x, eta, beta);
	const double scale = std::pow(tau, 1.0 - alpha) / (1.0 - alpha);
	return scale * (x * std::expm1((1.0 - alpha) * std::log1p(r / tau)) + 1.0);
}

/// f1(x) = x log(tau + r(x)) - (x-1) log tau = x log1p(r/tau) + log tau.
inline double f1_eval(double x, double tau, double eta, double beta)
{
	detail::require_lemma_domain(x, tau, eta, beta);
	return x * std::log1p(detail::shared_rate(x, eta, beta) / tau) + std::log(tau);
}

/// lim_{x->inf} f(x) = tau^(-alpha) (1 + beta tau - alpha) / (beta (1 - alpha)).
inline double f_limit(double alpha, double tau, double beta)
{
	return std::pow(tau, -alpha) * (1.0 + beta * tau - alpha) / (beta * (1.0 - alpha));
}

/// lim_{x->inf} f1(x) = 1/(beta tau) + log tau.
inline double f1_limit(double tau, double beta)
{
	return 1.0 / (beta * tau) + std::log(tau);
}

struct lemma_check_config
{
	double alpha = 1.0;
	double tau = 0.99;
	double eta = 100.0;
	double beta = 1.03;
	double x_max = 1e4;
	std::size_t grid_points = 100'000;
	bool enforce_prerequisites = true;
};

enum class sublevel_status
{
	holds,
	violated,
	not_applicable,
};

inline std::string_view to_string(sublevel_status s)
{
	switch (s) {
	case sublevel_status::holds: return "holds";
	case sublevel_status::violated: return "violated";
	case sublevel_status::not_applicable: return "not-applicable";
	}
	return "not-applicable";
}

struct sublevel_report
{
	sublevel_status status = sublevel_status::not_applicable;
	bool prerequisites_met = false;
	double value_at_one = 0.0;
	double worst_x = 1.0;
	double worst_gap = 0.0; // max over grid of value(x) - value(1)
	double limit = 0.0;
	double limit_gap = 0.0; // limit - value(1)
};

inline constexpr double sublevel_slack = 1e-12;

/// Checks value(x) <= value(1) on a log-spaced grid over [1, x_max] and at the
/// x -> inf limit. With enforce_prerequisites the governing condition must hold
/// first, otherwise the report is not-applicable.
inline sublevel_report verify_sublevel(const lemma_check_config& cfg)
{
	sublevel_report rep;
	if (cfg.grid_points < 2 || !(cfg.x_max > 1.0))
		throw domain_error("grid needs at least two points and x_max > 1");
	rep.prerequisites_met = conditions::holds(cfg.alpha, cfg.tau, cfg.eta, cfg.beta);
	if (cfg.enforce_prerequisites && !rep.prerequisites_met)
		return rep;
	if (cfg.alpha == 0.0 && cfg.enforce_prerequisites)
		return rep;

	const bool log_form = cfg.alpha == 1.0;
	auto value = [&](double x) {
		return log_form ? f1_eval(x, cfg.tau, cfg.eta, cfg.beta) : f_eval(x, cfg.alpha, cfg.tau, cfg.eta, cfg.beta);
	};
	rep.value_at_one = value(1.0);
	rep.worst_gap = -infinity;
	const double log_max = std::log(cfg.x_max);
	const double steps = static_cast<double>(cfg.grid_points - 1);
	for (std::size_t i = 1; i < cfg.grid_points; ++i) {
		const double x = i + 1 == cfg.grid_points ? cfg.x_max : std::exp(log_max * static_cast<double>(i) / steps);
		const double gap = value(x) - rep.value_at_one;
		if (gap > rep.worst_gap) {
			rep.worst_gap = gap;
			rep.worst_x = x;
		}
	}
	rep.limit = log_form ? f1_limit(cfg.tau, cfg.beta) : f_limit(cfg.alpha, cfg.tau, cfg.beta);
	rep.limit_gap = rep.limit - rep.value_at_one;
	rep.status = rep.worst_gap <= sublevel_slack && rep.limit_gap <= sublevel_slack ? sublevel_status::holds
	                                                                               : sublevel_status::violated;
	return rep;
}

/// One row of the reference parameter table.
struct table1_row
{
	enum class tau_rule
	{
		interval,        // tau ranges over [k_lo, k_hi]
		alpha_minus_k,   // tau = alpha - k
		rate_plus_k,     // tau = log(1 + eta) + k
	};

	std::string label;
	double alpha_lo = 0.0;
	double alpha_hi = 0.0;
	bool alpha_hi_open = false;
	double eta_lo = 0.0;
	double eta_hi = 0.0;
	bool eta_open = false; // both ends open
	tau_rule rule = tau_rule::interval;
	double k_lo = 0.0;
	double k_hi = 0.0;
	bool k_hi_open = false;
	double beta_min = 0.0;
};

inline std::vector<table1_row> table1_rows()
{
	using r = table1_row::tau_rule;
	return {
		{"alpha=1", 1.0, 1.0, false, 1e2, 1e3, false, r::interval, 0.99, 1.0, true, 1.021},
		{"alpha in [0.01,2)\\{1}", 0.01, 2.0, true, 1e2, 1e3, false, r::alpha_minus_k, 1e-4, 1e-3, false, 1.13},
		{"alpha in [2.7,2.9]", 2.7, 2.9, false, 30.0, 33.0, false, r::rate_plus_k, 1e-2, 1e-1, false, 1.25},
		{"alpha in [3.5,3.7]", 3.5, 3.7, false, 500.0, 600.0, true, r::rate_plus_k, 1e-3, 1e-2, false, 1.22},
		{"alpha in [4.4,4.6]", 4.4, 4.6, false, 790.0, 900.0, false, r::rate_plus_k, 5.0, 5.5, false, 1.22},
		{"alpha in [5.3,5.5]", 5.3, 5.5, false, 810.0, 900.0, false, r::rate_plus_k, 15.0, 16.0, false, 1.22},
	};
}

struct table1_point
{
	std::string label;
	lemma_check_config config;
};

namespace detail {

// lo, midpoint, hi; open ends are pulled inward by 1e-6 of the width
inline std::vector<double> endpoints_and_mid(double lo, double hi, bool lo_open, bool hi_open)
{
	if (lo == hi)
		return {lo};
	const double eps = 1e-6 * (hi - lo);
	return {lo_open ? lo + eps : lo, 0.5 * (lo + hi), hi_open ? hi - eps : hi};
}

} // namespace detail

/// Every row instantiated at its interval endpoints and midpoints, with beta at the row's minimum.
inline std::vector<table1_point> table1_points(std::size_t grid_points = 100'000, double x_max = 1e4)
{
	std::vector<table1_point> out;
	for (const auto& row : table1_rows()) {
		for (double alpha : detail::endpoints_and_mid(row.alpha_lo, row.alpha_hi, false, row.alpha_hi_open)) {
			if (alpha == 1.0 && row.alpha_lo != row.alpha_hi)
				continue;
			for (double eta : detail::endpoints_and_mid(row.eta_lo, row.eta_hi, row.eta_open, row.eta_open)) {
				for (double k : detail::endpoints_and_mid(row.k_lo, row.k_hi, false, row.k_hi_open)) {
					lemma_check_config cfg;
					cfg.alpha = alpha;
					cfg.eta = eta;
					cfg.beta = row.beta_min;
					cfg.grid_points = grid_points;
					cfg.x_max = x_max;
					switch (row.rule) {
					case table1_row::tau_rule::interval: cfg.tau = k; break;
					case table1_row::tau_rule::alpha_minus_k: cfg.tau = alpha - k; break;
					case table1_row::tau_rule::rate_plus_k: cfg.tau = std::log1p(eta) + k; break;
					}
					out.push_back({row.label, cfg});
				}
			}
		}
	}
	return out;
}

struct table1_result
{
	table1_point point;
	sublevel_report report;
	bool prerequisites_waived = false;
};

/// Runs the sublevel check on every table point. A few table corners miss
/// the governing condition's prerequisites (alpha >= 2 needs the factor
/// alpha (2^(alpha-1) - 1) / (tau (alpha-1)) > 1); those are rechecked with the
/// prerequisites waived and flagged, so the lemma itself is still exercised.
inline std::vector<table1_result> verify_table1(std::size_t grid_points = 100'000, double x_max = 1e4)
{
	std::vector<table1_result> out;
	for (auto& pt : table1_points(grid_points, x_max)) {
		table1_result r{pt, verify_sublevel(pt.config), false};
		if (r.report.status == sublevel_status::not_applicable) {
			auto cfg = pt.config;
			cfg.enforce_prerequisites = false;
			r.report = verify_sublevel(cfg);
			r.prerequisites_waived = true;
		}
		out.push_back(std::move(r));
	}
	return out;
}

/// Size of the independent set encoded by an optimal gadget allocation: each
/// served vertex contributes g = u(tau + ln 3), each other vertex u(tau).
inline std::size_t recover_mis_size(const solver_report& report, std::size_t graph_order, const params& p)
{
	const double served = alpha_fair(p.tau + std::log(3.0), p.alpha);
	const double idle = unserved_utility(p.tau, p.alpha);
	const double k = (report.utility - static_cast<double>(graph_order) * idle) / (served - idle);
	const double rounded = std::round(k);
	if (!(std::abs(k - rounded) <= 1e-6) || rounded < 0.0)
		throw inconsistency_error("gadget utility does not encode an integral set size (k = " + std::to_string(k) +
		                          ")");
	return static_cast<std::size_t>(rounded);
}

} // namespace icic
