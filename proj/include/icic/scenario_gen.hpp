#pragma once

// Random instance generation and the independent-set gadget.

#include <icic/error.hpp>
#include <icic/graph.hpp>
#include <icic/model.hpp>
#include <icic/random.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

namespace icic {

struct scenario_config
{
	std::size_t num_bs = 2;
	std::size_t num_ms = 7;
	std::size_t num_subchannels = 4;
	double d_min = 0.1;
	double neighbor_radius = 0.4;
	double path_loss_gamma = 3.0;
	double gain_constant = 1.0;
	double shadow_sigma_db = 8.0;
	double rayleigh_scale = 1.0;
	std::uint64_t seed = 1;

	void validate() const
	{
		if (num_bs == 0 || num_ms == 0 || num_subchannels == 0)
			throw domain_error("K, M and N must be positive");
		if (!(d_min > 0.0))
			throw domain_error("d_min must be positive");
		if (!(neighbor_radius > 0.0))
			throw domain_error("neighbor_radius must be positive");
		if (!(path_loss_gamma > 2.0 && path_loss_gamma < 4.0))
			throw domain_error("path loss exponent must lie in (2, 4)");
		if (!(gain_constant > 0.0))
			throw domain_error("gain constant must be positive");
		if (!(shadow_sigma_db >= 0.0))
			throw domain_error("shadowing sigma must be nonnegative");
		if (!(rayleigh_scale > 0.0))
			throw domain_error("Rayleigh scale must be positive");
	}
};

inline constexpr std::size_t max_placement_attempts = 1'000'000;

/// Distances below this are clamped before applying the path-loss law.
inline constexpr double min_link_distance = 1e-6;

/// Draws a scenario. Draw order is fixed: BS positions (x then y, rejected
/// points redrawn in place), MS positions, shadowing S[bs][ms] row-major,
/// then fast fading X[bs][ms][n] row-major.
inline scenario generate(const scenario_config& cfg)
{
	cfg.validate();
	random_source rng(cfg.seed);
	scenario s;
	s.num_bs = cfg.num_bs;
	s.num_ms = cfg.num_ms;
	s.num_subchannels = cfg.num_subchannels;

	std::size_t attempts = 0;
	s.bs_positions.reserve(cfg.num_bs);
	while (s.bs_positions.size() < cfg.num_bs) {
		if (++attempts > max_placement_attempts)
			throw placement_infeasible("could not place " + std::to_string(cfg.num_bs) +
			                           " BSs with d_min = " + std::to_string(cfg.d_min));
		point c;
		c.x = rng.uniform();
		c.y = rng.uniform();
		bool ok = true;
		for (const auto& q : s.bs_positions)
			if (distance(c, q) < cfg.d_min) {
				ok = false;
				break;
			}
		if (ok)
			s.bs_positions.push_back(c);
	}

	s.ms_positions.resize(cfg.num_ms);
	for (auto& m : s.ms_positions) {
		m.x = rng.uniform();
		m.y = rng.uniform();
	}

	// nearest BS, lowest index on ties
	s.association.resize(cfg.num_ms);
	for (std::size_t j = 0; j < cfg.num_ms; ++j) {
		std::size_t best = 0;
		double best_d = distance(s.ms_positions[j], s.bs_positions[0]);
		for (std::size_t a = 1; a < cfg.num_bs; ++a) {
			const double d = distance(s.ms_positions[j], s.bs_positions[a]);
			if (d < best_d) {
				best_d = d;
				best = a;
			}
		}
		s.association[j] = best;
	}

	s.neighbors.assign(cfg.num_bs, {});
	for (std::size_t a = 0; a < cfg.num_bs; ++a)
		for (std::size_t b = 0; b < cfg.num_bs; ++b)
			if (a != b && distance(s.bs_positions[a], s.bs_positions[b]) <= cfg.neighbor_radius)
				s.neighbors[a].push_back(b);

	std::vector<double> shadow(cfg.num_bs * cfg.num_ms);
	for (auto& v : shadow)
		v = rng.shadowing(cfg.shadow_sigma_db);

	s.gains = gain_tensor(cfg.num_bs, cfg.num_ms, cfg.num_subchannels);
	for (std::size_t a = 0; a < cfg.num_bs; ++a)
		for (std::size_t j = 0; j < cfg.num_ms; ++j) {
			const double d = std::max(distance(s.bs_positions[a], s.ms_positions[j]), min_link_distance);
			const double path = cfg.gain_constant * shadow[a * cfg.num_ms + j] / std::pow(d, cfg.path_loss_gamma);
			for (std::size_t n = 0; n < cfg.num_subchannels; ++n)
				s.gains.set(a, j, n, path * rng.rayleigh(cfg.rayleigh_scale));
		}
	return s;
}

/// Instance built from a graph: one BS and one MS per vertex, one subchannel,
/// serving gain 2, crosstalk +inf along edges and 0 elsewhere.
/// The returned params fix P = N0 = 1; alpha and tau are left for the caller.
inline std::pair<scenario, params> mis_gadget_scenario(const simple_graph& g)
{
	const std::size_t k = g.order();
	if (k == 0)
		throw domain_error("gadget needs at least one vertex");
	scenario s;
	s.num_bs = k;
	s.num_ms = k;
	s.num_subchannels = 1;
	s.association.resize(k);
	s.neighbors.assign(k, {});
	s.gains = gain_tensor(k, k, 1);
	for (std::size_t u = 0; u < k; ++u) {
		s.association[u] = u;
		for (std::size_t v = 0; v < k; ++v) {
			if (v != u)
				s.neighbors[u].push_back(v);
			if (u == v)
				s.gains.set(u, v, 0, 2.0);
			else if (g.adjacent(u, v))
				s.gains.set(u, v, 0, infinity);
		}
	}
	params p;
	p.power = 1.0;
	p.noise = 1.0;
	return {std::move(s), p};
}

} // namespace icic
