#pragma once

// Domain types of the fixed-power subchannel allocation problem.

#include <icic/error.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace icic {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Fairness and radio parameters. Power and noise are linear (watts).
struct params
{
	double alpha = 0.0;
	double tau = 1.0;
	double power = 1.0;
	double noise = 1.0e-3;

	void validate() const
	{
		if (!(alpha >= 0.0) || !std::isfinite(alpha))
			throw domain_error("alpha must be a finite nonnegative number");
		if (!(tau > 0.0) || !std::isfinite(tau))
			throw domain_error("tau must be a finite positive number");
		if (!(power > 0.0) || !std::isfinite(power))
			throw domain_error("power must be a finite positive number");
		if (!(noise > 0.0) || !std::isfinite(noise))
			throw domain_error("noise must be a finite positive number");
	}
};

struct point
{
	double x = 0.0;
	double y = 0.0;

	friend bool operator==(const point&, const point&) = default;
};

inline double distance(const point& a, const point& b)
{
	return std::hypot(a.x - b.x, a.y - b.y);
}

/// Dense K x M x N tensor of channel gains H[bs][ms][subchannel].
///
/// Entries are nonnegative reals or +infinity; NaN and negative values are rejected.
class gain_tensor
{
public:
	gain_tensor() = default;

	gain_tensor(std::size_t num_bs, std::size_t num_ms, std::size_t num_sub, double fill = 0.0)
		: k_(num_bs), m_(num_ms), n_(num_sub), data_(num_bs * num_ms * num_sub, check(fill))
	{
	}

	std::size_t num_bs() const noexcept { return k_; }
	std::size_t num_ms() const noexcept { return m_; }
	std::size_t num_subchannels() const noexcept { return n_; }

	double operator()(std::size_t bs, std::size_t ms, std::size_t sub) const
	{
		return data_[index(bs, ms, sub)];
	}

	void set(std::size_t bs, std::size_t ms, std::size_t sub, double value)
	{
		data_[index(bs, ms, sub)] = check(value);
	}

	/// Row-major [bs][ms][subchannel] view of the raw values.
	const std::vector<double>& values() const noexcept { return data_; }

	friend bool operator==(const gain_tensor& a, const gain_tensor& b)
	{
		// bitwise equality on the numbers; +inf == +inf holds
		return a.k_ == b.k_ && a.m_ == b.m_ && a.n_ == b.n_ && a.data_ == b.data_;
	}

private:
	static double check(double v)
	{
		if (std::isnan(v) || v < 0.0)
			throw domain_error("channel gain must be nonnegative (or +inf)");
		return v;
	}

	std::size_t index(std::size_t bs, std::size_t ms, std::size_t sub) const
	{
		if (bs >= k_ || ms >= m_ || sub >= n_)
			throw malformed_allocation("gain index out of range");
		return (bs * m_ + ms) * n_ + sub;
	}

	std::size_t k_ = 0;
	std::size_t m_ = 0;
	std::size_t n_ = 0;
	std::vector<double> data_;
};

/// A problem instance: topology, association, neighbor sets and gains.
struct scenario
{
	std::size_t num_bs = 0;
	std::size_t num_ms = 0;
	std::size_t num_subchannels = 0;
	std::vector<point> bs_positions;
	std::vector<point> ms_positions;
	std::vector<std::size_t> association; // ms -> serving bs
	std::vector<std::vector<std::size_t>> neighbors; // bs -> sorted neighbor list
	gain_tensor gains;

	std::size_t serving_bs(std::size_t ms) const { return association.at(ms); }

	/// MSs served by `bs`, in increasing index order.
	std::vector<std::size_t> cell_members(std::size_t bs) const
	{
		std::vector<std::size_t> out;
		for (std::size_t j = 0; j < num_ms; ++j)
			if (association[j] == bs)
				out.push_back(j);
		return out;
	}

	std::vector<std::vector<std::size_t>> cells() const
	{
		std::vector<std::vector<std::size_t>> out(num_bs);
		for (std::size_t j = 0; j < num_ms; ++j)
			out[association[j]].push_back(j);
		return out;
	}

	bool are_neighbors(std::size_t a, std::size_t b) const
	{
		const auto& nb = neighbors.at(a);
		return std::binary_search(nb.begin(), nb.end(), b);
	}

	/// Throws domain_error describing the first violated invariant.
	void validate() const
	{
		if (num_bs == 0 || num_ms == 0 || num_subchannels == 0)
			throw domain_error("scenario needs K, M, N >= 1");
		if (gains.num_bs() != num_bs || gains.num_ms() != num_ms || gains.num_subchannels() != num_subchannels)
			throw domain_error("gain tensor shape does not match K x M x N");
		if (association.size() != num_ms)
			throw domain_error("association must list one serving BS per MS");
		for (auto a : association)
			if (a >= num_bs)
				throw domain_error("association refers to an unknown BS");
		if (neighbors.size() != num_bs)
			throw domain_error("neighbor lists must have one entry per BS");
		auto in_square = [](const point& p) {
			return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
		};
		if (!bs_positions.empty() && bs_positions.size() != num_bs)
			throw domain_error("bs_positions length differs from K");
		if (!ms_positions.empty() && ms_positions.size() != num_ms)
			throw domain_error("ms_positions length differs from M");
		for (const auto& p : bs_positions)
			if (!in_square(p))
				throw domain_error("BS position outside the unit square");
		for (const auto& p : ms_positions)
			if (!in_square(p))
				throw domain_error("MS position outside the unit square");
		for (std::size_t a = 0; a < num_bs; ++a) {
			const auto& nb = neighbors[a];
			if (!std::is_sorted(nb.begin(), nb.end()) || std::adjacent_find(nb.begin(), nb.end()) != nb.end())
				throw domain_error("neighbor lists must be strictly increasing");
			for (auto b : nb) {
				if (b >= num_bs)
					throw domain_error("neighbor refers to an unknown BS");
				if (b == a)
					throw domain_error("a BS cannot neighbor itself");
				if (!are_neighbors(b, a))
					throw domain_error("neighbor relation must be symmetric");
			}
		}
	}

	friend bool operator==(const scenario&, const scenario&) = default;
};

/// One active assignment z[bs][ms][subchannel] = 1.
struct triple
{
	std::size_t bs = 0;
	std::size_t ms = 0;
	std::size_t subchannel = 0;

	friend auto operator<=>(const triple&, const triple&) = default;
};

/// Sparse binary allocation: the set of triples with z = 1, kept sorted.
class allocation
{
public:
	using const_iterator = std::set<triple>::const_iterator;

	allocation() = default;
	allocation(std::initializer_list<triple> init) : z_(init) {}

	bool insert(const triple& t) { return z_.insert(t).second; }
	bool erase(const triple& t) { return z_.erase(t) > 0; }
	bool contains(const triple& t) const { return z_.count(t) > 0; }
	std::size_t size() const noexcept { return z_.size(); }
	bool empty() const noexcept { return z_.empty(); }

	const_iterator begin() const noexcept { return z_.begin(); }
	const_iterator end() const noexcept { return z_.end(); }

	friend bool operator==(const allocation&, const allocation&) = default;

	/// Lexicographic order on the sorted triple sequence.
	friend bool operator<(const allocation& a, const allocation& b)
	{
		return std::lexicographical_compare(a.z_.begin(), a.z_.end(), b.z_.begin(), b.z_.end());
	}

private:
	std::set<triple> z_;
};

} // namespace icic
