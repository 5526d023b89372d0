#pragma once

// Reference implementations that are slow but obviously correct.

#include <icic/model.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace icic::testing {

/// Best total weight of any matching (edges of any sign may be skipped) on a
/// rows x cols matrix, by trying every partial injection.
inline double brute_force_matching_value(const std::vector<double>& w, std::size_t rows, std::size_t cols)
{
	std::vector<char> used(cols, 0);
	double best = 0.0;
	std::function<void(std::size_t, double)> go = [&](std::size_t r, double acc) {
		if (r == rows) {
			best = std::max(best, acc);
			return;
		}
		go(r + 1, acc);
		for (std::size_t c = 0; c < cols; ++c)
			if (!used[c]) {
				used[c] = 1;
				go(r + 1, acc + w[r * cols + c]);
				used[c] = 0;
			}
	};
	go(0, 0.0);
	return best;
}

/// Calls f on every feasible allocation of a small scenario.
template <typename F>
void for_each_allocation(const scenario& scn, F&& f)
{
	const auto cells = scn.cells();
	std::vector<std::size_t> digit(scn.num_bs * scn.num_subchannels, 0);
	for (;;) {
		allocation z;
		for (std::size_t a = 0; a < scn.num_bs; ++a)
			for (std::size_t n = 0; n < scn.num_subchannels; ++n)
				if (auto d = digit[a * scn.num_subchannels + n])
					z.insert({a, cells[a][d - 1], n});
		f(z);
		std::size_t i = 0;
		for (; i < digit.size(); ++i) {
			const std::size_t a = i / scn.num_subchannels;
			if (++digit[i] <= cells[a].size())
				break;
			digit[i] = 0;
		}
		if (i == digit.size())
			return;
	}
}

} // namespace icic::testing
