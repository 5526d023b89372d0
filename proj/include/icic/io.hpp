#pragma once

// JSON file formats for scenarios, allocations and reports, plus the
// line-oriented round trace. Infinite numbers are written as the strings
// "inf" / "-inf"; finite doubles use shortest round-trip form, so
// parse(serialize(x)) == x bit for bit.

#include <icic/distributed.hpp>
#include <icic/error.hpp>
#include <icic/matching.hpp>
#include <icic/model.hpp>
#include <icic/report.hpp>

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

namespace icic {

using json = nlohmann::json;

inline constexpr int scenario_format_version = 1;

namespace detail {

inline json number_to_json(double v)
{
	if (std::isinf(v))
		return v > 0 ? "inf" : "-inf";
	if (std::isnan(v))
		return "nan";
	return v;
}

inline double number_from_json(const json& j, const char* what)
{
	if (j.is_number())
		return j.get<double>();
	if (j.is_string()) {
		const auto& s = j.get_ref<const std::string&>();
		if (s == "inf")
			return infinity;
		if (s == "-inf")
			return -infinity;
		if (s == "nan")
			return std::nan("");
	}
	throw parse_error(std::string("expected a number or \"inf\" for ") + what);
}

inline const json& require(const json& obj, const char* key)
{
	if (!obj.is_object() || !obj.contains(key))
		throw parse_error(std::string("missing field \"") + key + "\"");
	return obj.at(key);
}

inline std::size_t index_from_json(const json& j, const char* what)
{
	if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
		throw parse_error(std::string("expected a nonnegative integer for ") + what);
	return j.get<std::size_t>();
}

inline json parse_text(const std::string& text)
{
	try {
		return json::parse(text);
	} catch (const json::parse_error& e) {
		throw parse_error(std::string("malformed JSON: ") + e.what());
	}
}

} // namespace detail

// -- scenario ---------------------------------------------------------------

inline json to_json(const scenario& s)
{
	json out;
	out["format"] = "icic-scenario";
	out["version"] = scenario_format_version;
	out["K"] = s.num_bs;
	out["M"] = s.num_ms;
	out["N"] = s.num_subchannels;
	auto points = [](const std::vector<point>& v) {
		json arr = json::array();
		for (const auto& p : v)
			arr.push_back(json::array({p.x, p.y}));
		return arr;
	};
	out["bs_positions"] = points(s.bs_positions);
	out["ms_positions"] = points(s.ms_positions);
	out["association"] = s.association;
	out["neighbors"] = s.neighbors;
	json gains = json::array();
	for (double g : s.gains.values())
		gains.push_back(detail::number_to_json(g));
	out["gains"] = std::move(gains);
	return out;
}

inline scenario scenario_from_json(const json& j)
{
	try {
		if (detail::require(j, "format") != "icic-scenario")
			throw parse_error("not an icic-scenario document");
		if (detail::require(j, "version") != scenario_format_version)
			throw parse_error("unsupported scenario format version");
		scenario s;
		s.num_bs = detail::index_from_json(detail::require(j, "K"), "K");
		s.num_ms = detail::index_from_json(detail::require(j, "M"), "M");
		s.num_subchannels = detail::index_from_json(detail::require(j, "N"), "N");
		auto points = [](const json& arr, const char* what) {
			std::vector<point> v;
			for (const auto& p : arr) {
				if (!p.is_array() || p.size() != 2)
					throw parse_error(std::string("positions in ") + what + " must be [x, y] pairs");
				v.push_back({detail::number_from_json(p[0], what), detail::number_from_json(p[1], what)});
			}
			return v;
		};
		s.bs_positions = points(detail::require(j, "bs_positions"), "bs_positions");
		s.ms_positions = points(detail::require(j, "ms_positions"), "ms_positions");
		for (const auto& a : detail::require(j, "association"))
			s.association.push_back(detail::index_from_json(a, "association"));
		for (const auto& list : detail::require(j, "neighbors")) {
			auto& nb = s.neighbors.emplace_back();
			for (const auto& b : list)
				nb.push_back(detail::index_from_json(b, "neighbors"));
		}
		const auto& gains = detail::require(j, "gains");
		if (!gains.is_array() || gains.size() != s.num_bs * s.num_ms * s.num_subchannels)
			throw parse_error("gains must hold K*M*N values in [bs][ms][subchannel] order");
		s.gains = gain_tensor(s.num_bs, s.num_ms, s.num_subchannels);
		std::size_t i = 0;
		for (std::size_t a = 0; a < s.num_bs; ++a)
			for (std::size_t m = 0; m < s.num_ms; ++m)
				for (std::size_t n = 0; n < s.num_subchannels; ++n)
					s.gains.set(a, m, n, detail::number_from_json(gains[i++], "gains"));
		s.validate();
		return s;
	} catch (const parse_error&) {
		throw;
	} catch (const domain_error& e) {
		throw parse_error(std::string("invalid scenario: ") + e.what());
	} catch (const malformed_allocation& e) {
		throw parse_error(std::string("invalid scenario: ") + e.what());
	} catch (const json::exception& e) {
		throw parse_error(std::string("invalid scenario: ") + e.what());
	}
}

// -- allocation -------------------------------------------------------------

inline json to_json(const allocation& z)
{
	json triples = json::array();
	for (const auto& t : z)
		triples.push_back(json::array({t.bs, t.ms, t.subchannel}));
	return json{{"format", "icic-allocation"}, {"triples", std::move(triples)}};
}

inline allocation allocation_from_json(const json& j)
{
	const json& triples = j.is_array() ? j : detail::require(j, "triples");
	allocation z;
	for (const auto& t : triples) {
		if (!t.is_array() || t.size() != 3)
			throw parse_error("allocation entries must be [bs, ms, subchannel]");
		z.insert({detail::index_from_json(t[0], "bs"), detail::index_from_json(t[1], "ms"),
		          detail::index_from_json(t[2], "subchannel")});
	}
	return z;
}

// -- reports ----------------------------------------------------------------

inline json to_json(const solver_report& r)
{
	json tp = json::array();
	for (double u : r.throughputs)
		tp.push_back(detail::number_to_json(u));
	json out{
		{"format", "icic-report"},
		{"method", r.method},
		{"utility", detail::number_to_json(r.utility)},
		{"total_throughput", detail::number_to_json(r.total_throughput)},
		{"fairness", detail::number_to_json(r.fairness)},
		{"served", r.served},
		{"certificate", std::string(to_string(r.certificate))},
		{"certificate_detail", r.certificate_detail},
		{"throughputs", std::move(tp)},
		{"allocation", to_json(r.alloc)["triples"]},
	};
	if (r.states_explored)
		out["states_explored"] = r.states_explored;
	if (r.rounds)
		out["rounds"] = r.rounds;
	return out;
}

inline json to_json(const condition_report& c)
{
	auto opt = [](const std::optional<double>& v) { return v ? detail::number_to_json(*v) : json(nullptr); };
	json records = json::array();
	for (const auto& r : c.records)
		records.push_back({
			{"bs", r.bs},
			{"ms", r.ms},
			{"subchannel", r.subchannel},
			{"eta", detail::number_to_json(r.eta)},
			{"beta", detail::number_to_json(r.beta)},
			{"threshold1", opt(r.threshold1)},
			{"threshold2", opt(r.threshold2)},
			{"threshold3", detail::number_to_json(r.threshold3)},
			{"rate_within_tau", r.rate_within_tau},
		});
	return {
		{"format", "icic-conditions"},
		{"alpha", c.alpha},
		{"tau", c.tau},
		{"condition2_factor", opt(c.condition2_factor)},
		{"condition1", c.cond1_holds},
		{"condition2", c.cond2_holds},
		{"condition3", c.cond3_holds},
		{"condition4", c.cond4_holds},
		{"applicable", std::string(to_string(c.applicable))},
		{"applicable_holds", c.applicable_holds()},
		{"records", std::move(records)},
	};
}

// -- trace ------------------------------------------------------------------

/// One JSON object per line: first every per-BS event in round order, then one
/// "link" line per allocated link with estimated and realized rates.
inline void write_trace(std::ostream& os, const round_trace& t)
{
	for (const auto& r : t.rounds)
		for (const auto& e : r.events) {
			json line{{"round", r.index}, {"bs", e.bs}, {"pa", detail::number_to_json(e.pa)},
			          {"action", std::string(to_string(e.action))}};
			if (e.action == bs_action::allocate) {
				line["ms"] = e.ms;
				line["subchannel"] = e.subchannel;
			}
			if (e.terminated)
				line["terminated"] = std::string(to_string(*e.terminated));
			os << line.dump() << '\n';
		}
	for (const auto& l : t.links)
		os << json{{"link", json::array({l.bs, l.ms, l.subchannel})},
		           {"round", l.round},
		           {"estimated", detail::number_to_json(l.estimated)},
		           {"realized", detail::number_to_json(l.realized)}}
		          .dump()
		   << '\n';
}

// -- files ------------------------------------------------------------------

inline std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw io_error("cannot open " + path);
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline void write_file(const std::string& path, const std::string& contents)
{
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out)
		throw io_error("cannot write " + path);
	out << contents;
	out.flush();
	if (!out)
		throw io_error("write failed for " + path);
}

inline std::string serialize(const scenario& s) { return to_json(s).dump(2) + "\n"; }
inline std::string serialize(const allocation& z) { return to_json(z).dump(2) + "\n"; }

inline scenario parse_scenario(const std::string& text) { return scenario_from_json(detail::parse_text(text)); }
inline allocation parse_allocation(const std::string& text) { return allocation_from_json(detail::parse_text(text)); }

inline scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

} // namespace icic
