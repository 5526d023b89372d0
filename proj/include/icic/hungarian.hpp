#pragma once

// Kuhn-Munkres assignment with row/column potentials, O(n^3).

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace icic {

/// Minimum-cost perfect assignment on a square n x n cost matrix (row-major).
/// Returns, for each row, the column it is assigned to.
template <typename Real>
std::vector<std::size_t> hungarian_min_cost(std::span<const Real> cost, std::size_t n)
{
	if (cost.size() != n * n)
		throw std::invalid_argument("hungarian_min_cost: cost matrix must be n x n");
	if (n == 0)
		return {};

	// integer costs have no infinity; half of max leaves room for one subtraction
	constexpr Real inf = std::numeric_limits<Real>::has_infinity ? std::numeric_limits<Real>::infinity()
	                                                             : std::numeric_limits<Real>::max() / 2;
	// 1-based potentials; index 0 is the virtual root column
	std::vector<Real> u(n + 1, Real{0});
	std::vector<Real> v(n + 1, Real{0});
	std::vector<std::size_t> col_owner(n + 1, 0); // column -> row (1-based, 0 = free)
	std::vector<std::size_t> way(n + 1, 0);
	std::vector<Real> min_slack(n + 1);
	std::vector<char> used(n + 1);

	for (std::size_t row = 1; row <= n; ++row) {
		col_owner[0] = row;
		std::size_t col0 = 0;
		std::fill(min_slack.begin(), min_slack.end(), inf);
		std::fill(used.begin(), used.end(), 0);
		do {
			used[col0] = 1;
			const std::size_t r = col_owner[col0];
			Real delta = inf;
			std::size_t col1 = 0;
			for (std::size_t c = 1; c <= n; ++c) {
				if (used[c])
					continue;
				const Real slack = cost[(r - 1) * n + (c - 1)] - u[r] - v[c];
				if (slack < min_slack[c]) {
					min_slack[c] = slack;
					way[c] = col0;
				}
				if (min_slack[c] < delta) {
					delta = min_slack[c];
					col1 = c;
				}
			}
			for (std::size_t c = 0; c <= n; ++c) {
				if (used[c]) {
					u[col_owner[c]] += delta;
					v[c] -= delta;
				} else {
					min_slack[c] -= delta;
				}
			}
			col0 = col1;
		} while (col_owner[col0] != 0);
		// augment along the alternating path
		do {
			const std::size_t col1 = way[col0];
			col_owner[col0] = col_owner[col1];
			col0 = col1;
		} while (col0 != 0);
	}

	std::vector<std::size_t> assignment(n);
	for (std::size_t c = 1; c <= n; ++c)
		assignment[col_owner[c] - 1] = c - 1;
	return assignment;
}

/// Maximum-weight (not necessarily perfect) matching on a rows x cols matrix.
/// Pads to a square with zero weights and keeps only strictly positive edges,
/// so negative entries are never matched. Result is sorted by row.
template <typename Real>
std::vector<std::pair<std::size_t, std::size_t>> max_weight_assignment(std::span<const Real> weight, std::size_t rows,
                                                                      std::size_t cols)
{
	if (weight.size() != rows * cols)
		throw std::invalid_argument("max_weight_assignment: weight matrix shape mismatch");
	const std::size_t d = std::max(rows, cols);
	std::vector<Real> cost(d * d, Real{0});
	for (std::size_t r = 0; r < rows; ++r)
		for (std::size_t c = 0; c < cols; ++c)
			cost[r * d + c] = -std::max(weight[r * cols + c], Real{0});
	const auto assignment = hungarian_min_cost<Real>(cost, d);
	std::vector<std::pair<std::size_t, std::size_t>> out;
	for (std::size_t r = 0; r < rows; ++r) {
		const std::size_t c = assignment[r];
		if (c < cols && weight[r * cols + c] > Real{0})
			out.emplace_back(r, c);
	}
	return out;
}

} // namespace icic
