#pragma once

// Portable random draws. std::mt19937_64 is bit-exact across standard libraries,
// the std:: distributions are not, so every transform is spelled out here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace icic {

class random_source
{
public:
	explicit random_source(std::uint64_t seed) : engine_(seed) {}

	/// Uniform on [0, 1) with 53 random bits.
	double uniform()
	{
		return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
	}

	double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

	/// Standard normal by Box-Muller; consumes two uniforms, keeps no spare.
	double normal()
	{
		const double u1 = 1.0 - uniform(); // (0, 1]
		const double u2 = uniform();
		return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
	}

	/// Rayleigh(scale) by inversion: scale * sqrt(-2 ln(1 - u)).
	double rayleigh(double scale)
	{
		return scale * std::sqrt(-2.0 * std::log1p(-uniform()));
	}

	/// Log-normal shadowing factor 10^(sigma_db * Z / 10).
	double shadowing(double sigma_db)
	{
		return std::pow(10.0, sigma_db * normal() / 10.0);
	}

	bool bernoulli(double p) { return uniform() < p; }

	/// Uniform integer in [0, n) by rejection (no modulo bias).
	std::uint64_t index(std::uint64_t n)
	{
		const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
		std::uint64_t x;
		do {
			x = engine_();
		} while (x >= limit);
		return x % n;
	}

private:
	std::mt19937_64 engine_;
};

} // namespace icic
