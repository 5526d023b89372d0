#pragma once

// Small undirected simple graphs for the independent-set reduction.

#include <icic/error.hpp>
#include <icic/random.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace icic {

class simple_graph
{
public:
	simple_graph() = default;

	explicit simple_graph(std::size_t order) : adj_(order) {}

	simple_graph(std::size_t order, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
		: adj_(order)
	{
		for (auto [u, v] : edges)
			add_edge(u, v);
	}

	std::size_t order() const noexcept { return adj_.size(); }

	/// Adds {u, v}; duplicates are ignored, self-loops rejected.
	void add_edge(std::size_t u, std::size_t v)
	{
		if (u >= order() || v >= order())
			throw domain_error("edge endpoint out of range");
		if (u == v)
			throw domain_error("self-loops are not allowed");
		auto& nu = adj_[u];
		if (std::find(nu.begin(), nu.end(), v) != nu.end())
			return;
		nu.insert(std::upper_bound(nu.begin(), nu.end(), v), v);
		auto& nv = adj_[v];
		nv.insert(std::upper_bound(nv.begin(), nv.end(), u), u);
	}

	bool adjacent(std::size_t u, std::size_t v) const
	{
		return std::binary_search(adj_.at(u).begin(), adj_.at(u).end(), v);
	}

	const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_.at(u); }

	/// Edges as (u, v) with u < v, sorted.
	std::vector<std::pair<std::size_t, std::size_t>> edges() const
	{
		std::vector<std::pair<std::size_t, std::size_t>> out;
		for (std::size_t u = 0; u < order(); ++u)
			for (auto v : adj_[u])
				if (u < v)
					out.emplace_back(u, v);
		return out;
	}

private:
	std::vector<std::vector<std::size_t>> adj_;
};

inline simple_graph complete_graph(std::size_t n)
{
	simple_graph g(n);
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = u + 1; v < n; ++v)
			g.add_edge(u, v);
	return g;
}

inline simple_graph path_graph(std::size_t n)
{
	simple_graph g(n);
	for (std::size_t u = 0; u + 1 < n; ++u)
		g.add_edge(u, u + 1);
	return g;
}

inline simple_graph cycle_graph(std::size_t n)
{
	simple_graph g = path_graph(n);
	if (n >= 3)
		g.add_edge(n - 1, 0);
	return g;
}

/// Star with `leaves` leaves around vertex 0.
inline simple_graph star_graph(std::size_t leaves)
{
	simple_graph g(leaves + 1);
	for (std::size_t v = 1; v <= leaves; ++v)
		g.add_edge(0, v);
	return g;
}

/// G(n, p): each pair drawn in (u, v) lexicographic order.
inline simple_graph random_graph(std::size_t n, double p, std::uint64_t seed)
{
	random_source rng(seed);
	simple_graph g(n);
	for (std::size_t u = 0; u < n; ++u)
		for (std::size_t v = u + 1; v < n; ++v)
			if (rng.bernoulli(p))
				g.add_edge(u, v);
	return g;
}

/// Exact maximum independent set size by subset enumeration (order <= 24).
inline std::size_t max_independent_set_size(const simple_graph& g)
{
	const std::size_t n = g.order();
	if (n > 24)
		throw domain_error("brute-force MIS limited to 24 vertices");
	std::vector<std::uint32_t> nbr_mask(n, 0);
	for (std::size_t u = 0; u < n; ++u)
		for (auto v : g.neighbors(u))
			nbr_mask[u] |= std::uint32_t{1} << v;
	std::size_t best = 0;
	for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
		bool independent = true;
		for (std::size_t u = 0; u < n && independent; ++u)
			if ((s >> u & 1u) && (nbr_mask[u] & s))
				independent = false;
		if (independent)
			best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(s)));
	}
	return best;
}

/// Edge-list text: optional "vertices <n>" line, then one "u v" pair per line.
/// Blank lines and '#' comments are skipped. Without a vertices line the order
/// is one more than the largest endpoint.
inline simple_graph read_edge_list(std::istream& in)
{
	std::vector<std::pair<std::size_t, std::size_t>> edges;
	std::size_t declared = 0;
	bool has_declared = false;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (auto hash = line.find('#'); hash != std::string::npos)
			line.erase(hash);
		std::istringstream ls(line);
		std::string first;
		if (!(ls >> first))
			continue;
		if (first == "vertices") {
			if (!(ls >> declared))
				throw parse_error("line " + std::to_string(lineno) + ": expected vertex count");
			has_declared = true;
			continue;
		}
		std::size_t u = 0;
		std::size_t v = 0;
		try {
			u = std::stoul(first);
		} catch (const std::exception&) {
			throw parse_error("line " + std::to_string(lineno) + ": expected an edge 'u v'");
		}
		if (!(ls >> v))
			throw parse_error("line " + std::to_string(lineno) + ": expected an edge 'u v'");
		edges.emplace_back(u, v);
	}
	std::size_t order = declared;
	if (!has_declared)
		for (auto [u, v] : edges)
			order = std::max({order, u + 1, v + 1});
	if (order == 0)
		throw parse_error("graph has no vertices");
	try {
		return simple_graph(order, edges);
	} catch (const domain_error& e) {
		throw parse_error(e.what());
	}
}

} // namespace icic
