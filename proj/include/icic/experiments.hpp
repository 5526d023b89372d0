#pragma once

// Parameter sweeps over alpha, tau or p0 with seed averaging, CSV output and a
// two-axis SVG plot (throughput on the left, fairness index on the right).

#include <icic/distributed.hpp>
#include <icic/error.hpp>
#include <icic/exhaustive.hpp>
#include <icic/io.hpp>
#include <icic/matching.hpp>
#include <icic/report.hpp>
#include <icic/scenario_gen.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace icic {

enum class solver_method
{
	exhaustive,
	matching,
	distributed,
};

inline std::string_view to_string(solver_method m)
{
	switch (m) {
	case solver_method::exhaustive: return "exhaustive";
	case solver_method::matching: return "matching";
	case solver_method::distributed: return "distributed";
	}
	return "exhaustive";
}

inline solver_method parse_solver_method(std::string_view s)
{
	if (s == "exhaustive")
		return solver_method::exhaustive;
	if (s == "matching")
		return solver_method::matching;
	if (s == "distributed")
		return solver_method::distributed;
	throw domain_error("unknown method '" + std::string(s) + "'");
}

enum class swept_variable
{
	alpha,
	tau,
	p0,
};

inline std::string_view to_string(swept_variable v)
{
	switch (v) {
	case swept_variable::alpha: return "alpha";
	case swept_variable::tau: return "tau";
	case swept_variable::p0: return "p0";
	}
	return "alpha";
}

inline swept_variable parse_swept_variable(std::string_view s)
{
	if (s == "alpha")
		return swept_variable::alpha;
	if (s == "tau")
		return swept_variable::tau;
	if (s == "p0")
		return swept_variable::p0;
	throw domain_error("unknown swept variable '" + std::string(s) + "'");
}

struct sweep_spec
{
	scenario_config scenario; // scenario.seed is the base seed
	solver_method method = solver_method::exhaustive;
	swept_variable variable = swept_variable::alpha;
	std::vector<double> grid;
	double alpha = 0.0;
	double tau = 8.5;
	std::optional<double> p0; // distributed only; default_p0 when unset
	double power = 1.0;
	double noise = 1e-3;
	std::size_t num_seeds = 50;
	search_budget budget;
	unsigned threads = 0; // 0: hardware concurrency

	void validate() const
	{
		scenario.validate();
		if (grid.empty())
			throw domain_error("sweep grid is empty");
		for (std::size_t i = 1; i < grid.size(); ++i)
			if (!(grid[i] > grid[i - 1]))
				throw domain_error("sweep grid must be strictly increasing");
		if (num_seeds == 0)
			throw domain_error("num_seeds must be positive");
		if (variable == swept_variable::p0 && method != solver_method::distributed)
			throw domain_error("a p0 sweep needs the distributed method");
	}
};

struct sweep_row
{
	double value = 0.0;
	std::uint64_t seed = 0;
	double throughput = std::nan("");
	double fi = std::nan("");
	double utility = std::nan("");
	std::size_t served = 0;
	std::string status; // "ok", a certificate status, or "error: ..."

	bool ok() const { return status.rfind("error", 0) != 0; }
};

struct aggregate_row
{
	double value = 0.0;
	std::size_t runs = 0;
	std::size_t ok = 0;
	double throughput_mean = 0.0;
	double throughput_stderr = 0.0;
	double fi_mean = 0.0;
	double fi_stderr = 0.0;
	double utility_mean = 0.0;
	double utility_stderr = 0.0;
	double served_mean = 0.0;
	double served_stderr = 0.0;
};

struct sweep_table
{
	swept_variable variable = swept_variable::alpha;
	solver_method method = solver_method::exhaustive;
	std::vector<sweep_row> rows; // ordered by (value, seed)
	std::vector<aggregate_row> aggregate;
};

/// Solves one instance with the requested method and packs the outcome into a row.
inline sweep_row solve_row(const sweep_spec& spec, const scenario& scn, double value, std::uint64_t seed)
{
	sweep_row row;
	row.value = value;
	row.seed = seed;
	try {
		params p;
		p.alpha = spec.variable == swept_variable::alpha ? value : spec.alpha;
		p.tau = spec.variable == swept_variable::tau ? value : spec.tau;
		p.power = spec.power;
		p.noise = spec.noise;
		p.validate();
		solver_report rep;
		switch (spec.method) {
		case solver_method::exhaustive:
			rep = exhaustive_search(scn, p, spec.budget);
			row.status = "ok";
			break;
		case solver_method::matching:
			rep = solve_via_matching(scn, p);
			row.status = std::string(to_string(rep.certificate));
			break;
		case solver_method::distributed: {
			const double p0 = spec.variable == swept_variable::p0
			                      ? value
			                      : spec.p0.value_or(default_p0(scn.num_bs, scn.num_ms, scn.num_subchannels, p.alpha));
			const auto res = run_distributed(scn, p, p0);
			rep = make_report("distributed", res.alloc, scn, p);
			row.status = "ok";
			break;
		}
		}
		row.throughput = rep.total_throughput;
		row.fi = rep.fairness;
		row.utility = rep.utility;
		row.served = rep.served;
	} catch (const std::exception& e) {
		std::string msg = e.what();
		std::replace_if(msg.begin(), msg.end(), [](char c) { return c == ',' || c == '\n' || c == '"'; }, ' ');
		row.status = "error: " + msg;
	}
	return row;
}

namespace detail {

inline void mean_stderr(const std::vector<double>& v, double& mean, double& se)
{
	mean = 0.0;
	se = 0.0;
	if (v.empty())
		return;
	for (double x : v)
		mean += x;
	mean /= static_cast<double>(v.size());
	if (v.size() < 2)
		return;
	double ss = 0.0;
	for (double x : v)
		ss += (x - mean) * (x - mean);
	se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

} // namespace detail

/// Mean and standard error over the successful rows of each grid value.
/// `rows` must be ordered by value.
inline std::vector<aggregate_row> aggregate_rows(const std::vector<sweep_row>& rows)
{
	std::vector<aggregate_row> out;
	for (std::size_t i = 0; i < rows.size();) {
		std::size_t end = i;
		std::vector<double> tp, fi, ut, sv;
		while (end < rows.size() && rows[end].value == rows[i].value) {
			if (rows[end].ok()) {
				tp.push_back(rows[end].throughput);
				fi.push_back(rows[end].fi);
				ut.push_back(rows[end].utility);
				sv.push_back(static_cast<double>(rows[end].served));
			}
			++end;
		}
		aggregate_row a;
		a.value = rows[i].value;
		a.runs = end - i;
		a.ok = tp.size();
		detail::mean_stderr(tp, a.throughput_mean, a.throughput_stderr);
		detail::mean_stderr(fi, a.fi_mean, a.fi_stderr);
		detail::mean_stderr(ut, a.utility_mean, a.utility_stderr);
		detail::mean_stderr(sv, a.served_mean, a.served_stderr);
		out.push_back(a);
		i = end;
	}
	return out;
}

/// Seed i uses scenario seed base + i; the same scenario is solved at every grid value.
/// Seeds run in parallel, rows come back in (value, seed) order.
inline sweep_table run_sweep(const sweep_spec& spec)
{
	spec.validate();
	const std::size_t seeds = spec.num_seeds;
	const std::size_t width = spec.grid.size();
	std::vector<sweep_row> cells(seeds * width);

	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t s; (s = next.fetch_add(1)) < seeds;) {
			auto cfg = spec.scenario;
			cfg.seed = spec.scenario.seed + s;
			std::optional<scenario> scn;
			std::string failure;
			try {
				scn = generate(cfg);
			} catch (const std::exception& e) {
				failure = std::string("error: ") + e.what();
			}
			for (std::size_t v = 0; v < width; ++v) {
				auto& row = cells[v * seeds + s];
				if (scn) {
					row = solve_row(spec, *scn, spec.grid[v], cfg.seed);
				} else {
					row.value = spec.grid[v];
					row.seed = cfg.seed;
					row.status = failure;
				}
			}
		}
	};
	unsigned n_threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
	n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, seeds));
	std::vector<std::thread> pool;
	for (unsigned t = 1; t < n_threads; ++t)
		pool.emplace_back(worker);
	worker();
	for (auto& t : pool)
		t.join();

	sweep_table table;
	table.variable = spec.variable;
	table.method = spec.method;
	table.rows = std::move(cells);
	table.aggregate = aggregate_rows(table.rows);
	return table;
}

// -- CSV --------------------------------------------------------------------

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double v)
{
	if (std::isnan(v))
		return "nan";
	if (std::isinf(v))
		return v > 0 ? "inf" : "-inf";
	char buf[64];
	auto res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view s)
{
	if (s == "nan")
		return std::nan("");
	if (s == "inf")
		return infinity;
	if (s == "-inf")
		return -infinity;
	double v = 0.0;
	auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
		throw parse_error("bad number '" + std::string(s) + "'");
	return v;
}

inline constexpr std::string_view raw_csv_header = "swept_var,value,seed,throughput,fi,utility,served,method,status";
inline constexpr std::string_view aggregate_csv_header =
	"swept_var,value,runs,ok,throughput_mean,throughput_stderr,fi_mean,fi_stderr,utility_mean,utility_stderr,"
	"served_mean,served_stderr";

inline std::string raw_csv(const sweep_table& t)
{
	std::ostringstream os;
	os << raw_csv_header << '\n';
	const auto var = to_string(t.variable);
	const auto method = to_string(t.method);
	for (const auto& r : t.rows)
		os << var << ',' << format_number(r.value) << ',' << r.seed << ',' << format_number(r.throughput) << ','
		   << format_number(r.fi) << ',' << format_number(r.utility) << ',' << r.served << ',' << method << ','
		   << r.status << '\n';
	return os.str();
}

inline std::string aggregate_csv(swept_variable var, const std::vector<aggregate_row>& rows)
{
	std::ostringstream os;
	os << aggregate_csv_header << '\n';
	for (const auto& a : rows)
		os << to_string(var) << ',' << format_number(a.value) << ',' << a.runs << ',' << a.ok << ','
		   << format_number(a.throughput_mean) << ',' << format_number(a.throughput_stderr) << ','
		   << format_number(a.fi_mean) << ',' << format_number(a.fi_stderr) << ',' << format_number(a.utility_mean)
		   << ',' << format_number(a.utility_stderr) << ',' << format_number(a.served_mean) << ','
		   << format_number(a.served_stderr) << '\n';
	return os.str();
}

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line)
{
	std::vector<std::string_view> out;
	std::size_t start = 0;
	for (;;) {
		const auto pos = line.find(',', start);
		out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
		if (pos == std::string_view::npos)
			return out;
		start = pos + 1;
	}
}

inline std::size_t parse_count(std::string_view s)
{
	std::size_t v = 0;
	auto res = std::from_chars(s.data(), s.data() + s.size(), v);
	if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
		throw parse_error("bad count '" + std::string(s) + "'");
	return v;
}

} // namespace detail

struct aggregate_file
{
	swept_variable variable = swept_variable::alpha;
	std::vector<aggregate_row> rows;
};

inline aggregate_file parse_aggregate_csv(std::istream& in)
{
	std::string line;
	if (!std::getline(in, line) || line != aggregate_csv_header)
		throw parse_error("aggregate CSV header mismatch");
	aggregate_file out;
	while (std::getline(in, line)) {
		if (line.empty())
			continue;
		const auto f = detail::split_commas(line);
		if (f.size() != 12)
			throw parse_error("aggregate CSV row needs 12 fields");
		out.variable = parse_swept_variable(f[0]);
		aggregate_row a;
		a.value = parse_number(f[1]);
		a.runs = detail::parse_count(f[2]);
		a.ok = detail::parse_count(f[3]);
		a.throughput_mean = parse_number(f[4]);
		a.throughput_stderr = parse_number(f[5]);
		a.fi_mean = parse_number(f[6]);
		a.fi_stderr = parse_number(f[7]);
		a.utility_mean = parse_number(f[8]);
		a.utility_stderr = parse_number(f[9]);
		a.served_mean = parse_number(f[10]);
		a.served_stderr = parse_number(f[11]);
		out.rows.push_back(a);
	}
	return out;
}

// -- plot -------------------------------------------------------------------

/// Two-axis line plot of the aggregate: mean throughput (left axis, solid) and
/// mean FI (right axis, dashed, fixed [0, 1]), with stderr whiskers.
inline std::string render_plot_svg(swept_variable var, const std::vector<aggregate_row>& rows)
{
	if (rows.empty())
		throw domain_error("nothing to plot");
	constexpr double w = 640, h = 400, left = 70, right = 70, top = 30, bottom = 50;
	const double pw = w - left - right;
	const double ph = h - top - bottom;

	const double x_lo = rows.front().value;
	const double x_hi = rows.back().value;
	double y_hi = 0.0;
	for (const auto& a : rows)
		y_hi = std::max(y_hi, a.throughput_mean + a.throughput_stderr);
	if (!(y_hi > 0.0))
		y_hi = 1.0;

	auto fx = [&](double v) { return x_hi > x_lo ? left + pw * (v - x_lo) / (x_hi - x_lo) : left + pw / 2; };
	auto fy_tp = [&](double v) { return top + ph * (1.0 - v / y_hi); };
	auto fy_fi = [&](double v) { return top + ph * (1.0 - v); };
	auto num = [](double v) {
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.2f", v);
		return std::string(buf);
	};
	auto label = [](double v) {
		char buf[32];
		std::snprintf(buf, sizeof buf, "%.4g", v);
		return std::string(buf);
	};

	std::ostringstream os;
	os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
	   << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
	os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
	os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
	   << "\" fill=\"none\" stroke=\"black\"/>\n";

	for (int i = 0; i <= 4; ++i) {
		const double f = i / 4.0;
		const double y = top + ph * (1.0 - f);
		os << "<text x=\"" << left - 6 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << label(f * y_hi)
		   << "</text>\n";
		os << "<text x=\"" << left + pw + 6 << "\" y=\"" << num(y + 4) << "\">" << label(f) << "</text>\n";
	}
	for (const auto& a : rows)
		os << "<text x=\"" << num(fx(a.value)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
		   << label(a.value) << "</text>\n";
	os << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">" << to_string(var)
	   << "</text>\n";
	os << "<text x=\"15\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 15 " << top + ph / 2
	   << ")\" text-anchor=\"middle\">total throughput</text>\n";
	os << "<text x=\"" << w - 15 << "\" y=\"" << top + ph / 2 << "\" transform=\"rotate(90 " << w - 15 << ' '
	   << top + ph / 2 << ")\" text-anchor=\"middle\">fairness index</text>\n";

	auto series = [&](auto fy, auto mean, auto se, const char* style) {
		os << "<polyline fill=\"none\" " << style << " points=\"";
		for (std::size_t i = 0; i < rows.size(); ++i)
			os << (i ? " " : "") << num(fx(rows[i].value)) << ',' << num(fy(mean(rows[i])));
		os << "\"/>\n";
		for (const auto& a : rows)
			os << "<line " << style << " x1=\"" << num(fx(a.value)) << "\" x2=\"" << num(fx(a.value)) << "\" y1=\""
			   << num(fy(mean(a) - se(a))) << "\" y2=\"" << num(fy(mean(a) + se(a))) << "\"/>\n";
	};
	series(fy_tp, [](const aggregate_row& a) { return a.throughput_mean; },
	       [](const aggregate_row& a) { return a.throughput_stderr; }, "stroke=\"#1f4e9c\" stroke-width=\"2\"");
	series(fy_fi, [](const aggregate_row& a) { return a.fi_mean; }, [](const aggregate_row& a) { return a.fi_stderr; },
	       "stroke=\"#b03a2e\" stroke-width=\"2\" stroke-dasharray=\"6 4\"");
	os << "</svg>\n";
	return os.str();
}

// -- files ------------------------------------------------------------------

struct output_paths
{
	std::string raw;
	std::string aggregate;
	std::string plot;
};

/// foo.csv -> foo.csv, foo_aggregate.csv, foo.svg
inline output_paths output_paths_for(const std::string& raw_path)
{
	std::filesystem::path p(raw_path);
	const auto stem = p.stem().string();
	auto sibling = [&](const std::string& name) { return (p.parent_path() / name).string(); };
	return {raw_path, sibling(stem + "_aggregate.csv"), sibling(stem + ".svg")};
}

inline output_paths emit_outputs(const sweep_table& t, const std::string& raw_path, bool with_plot = true)
{
	if (t.rows.empty())
		throw domain_error("sweep table is empty");
	const auto paths = output_paths_for(raw_path);
	write_file(paths.raw, raw_csv(t));
	write_file(paths.aggregate, aggregate_csv(t.variable, t.aggregate));
	if (with_plot)
		write_file(paths.plot, render_plot_svg(t.variable, t.aggregate));
	return paths;
}

} // namespace icic
