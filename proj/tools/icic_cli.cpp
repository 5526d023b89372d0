// Command-line front end: scenario generation, the three solvers, condition
// certificates, lemma and reduction checks, and parameter sweeps.
//
// Exit codes: 0 success, 1 usage, 2 solver or domain error, 3 I/O error.

#include <icic/icic.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_domain = 2;
constexpr int exit_io = 3;

struct global_options
{
	std::uint64_t seed = 1;
	std::string out;
	std::string format = "json";
};

// Each flag also answers to the config field name, which is what --config files use.
void add_scenario_flags(CLI::App* cmd, icic::scenario_config& cfg)
{
	cmd->add_option("-K,--num-bs,--num_bs", cfg.num_bs, "number of base stations")->capture_default_str();
	cmd->add_option("-M,--num-ms,--num_ms", cfg.num_ms, "number of mobile stations")->capture_default_str();
	cmd->add_option("-N,--num-subchannels,--num_subchannels", cfg.num_subchannels, "number of subchannels")
		->capture_default_str();
	cmd->add_option("--d-min,--d_min", cfg.d_min, "minimum BS separation")->capture_default_str();
	cmd->add_option("--neighbor-radius,--neighbor_radius", cfg.neighbor_radius, "BS neighbor radius")
		->capture_default_str();
	cmd->add_option("--gamma,--path_loss_gamma", cfg.path_loss_gamma, "path loss exponent, in (2, 4)")
		->capture_default_str();
	cmd->add_option("--gain-constant,--gain_constant", cfg.gain_constant, "path loss constant k")
		->capture_default_str();
	cmd->add_option("--shadow-sigma,--shadow_sigma_db", cfg.shadow_sigma_db, "log-normal shadowing sigma in dB")
		->capture_default_str();
	cmd->add_option("--rayleigh-scale,--rayleigh_scale", cfg.rayleigh_scale, "Rayleigh fading scale")
		->capture_default_str();
}

// CLI11 ignores set_config on subcommands, so the file is read here.
// Flags given on the command line win over file keys.
int apply_config_file(CLI::App* cmd, const std::string& path)
{
	std::vector<CLI::ConfigItem> items;
	try {
		items = CLI::ConfigTOML().from_file(path);
	} catch (const CLI::ParseError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_io;
	}
	for (const auto& item : items) {
		if (item.name == "++" || item.name == "--")
			continue; // section markers
		CLI::Option* opt = nullptr;
		try {
			opt = cmd->get_option("--" + item.name);
		} catch (const CLI::OptionNotFound&) {
			std::cerr << "error: unknown config key '" << item.name << "' in " << path << '\n';
			return exit_usage;
		}
		if (opt->count() > 0)
			continue;
		try {
			opt->add_result(item.inputs);
			opt->run_callback();
		} catch (const CLI::ParseError& e) {
			std::cerr << "error: config key '" << item.name << "': " << e.what() << '\n';
			return exit_usage;
		}
	}
	return exit_ok;
}

void emit(const global_options& g, const std::string& text)
{
	std::cout << text;
	if (!g.out.empty())
		icic::write_file(g.out, text);
}

std::string report_csv(const icic::solver_report& r)
{
	std::ostringstream os;
	os << "method,utility,throughput,fi,served,certificate\n"
	   << r.method << ',' << icic::format_number(r.utility) << ',' << icic::format_number(r.total_throughput) << ','
	   << icic::format_number(r.fairness) << ',' << r.served << ',' << icic::to_string(r.certificate) << '\n';
	return os.str();
}

// -- solve ------------------------------------------------------------------

struct solve_options
{
	std::string method = "exhaustive";
	std::string scenario;
	double alpha = 0.0;
	double tau = 1.0;
	double power = 1.0;
	double noise = 1e-3;
	std::optional<double> p0;
	std::string trace;
	std::uint64_t max_states = icic::search_budget{}.max_states;
};

int run_solve(const global_options& g, const solve_options& o)
{
	const auto scn = icic::load_scenario(o.scenario);
	icic::params p{o.alpha, o.tau, o.power, o.noise};
	p.validate();
	icic::solver_report rep;
	switch (icic::parse_solver_method(o.method)) {
	case icic::solver_method::exhaustive:
		rep = icic::exhaustive_search(scn, p, {o.max_states});
		break;
	case icic::solver_method::matching:
		rep = icic::solve_via_matching(scn, p);
		break;
	case icic::solver_method::distributed: {
		const double p0 = o.p0.value_or(icic::default_p0(scn.num_bs, scn.num_ms, scn.num_subchannels, p.alpha));
		auto res = icic::run_distributed(scn, p, p0);
		rep = icic::make_report("distributed", res.alloc, scn, p);
		rep.rounds = res.trace.rounds.size();
		rep.certificate_detail = "p0 = " + icic::format_number(p0);
		if (!o.trace.empty()) {
			std::ostringstream os;
			icic::write_trace(os, res.trace);
			icic::write_file(o.trace, os.str());
		}
		break;
	}
	}
	emit(g, g.format == "csv" ? report_csv(rep) : icic::to_json(rep).dump(2) + "\n");
	return exit_ok;
}

// -- certify ----------------------------------------------------------------

int run_certify(const global_options& g, const std::string& path, double alpha, double tau, double power, double noise)
{
	const auto scn = icic::load_scenario(path);
	icic::params p{alpha, tau, power, noise};
	const auto rep = icic::check_conditions(scn, p);

	auto opt = [](const std::optional<double>& v) { return v ? icic::format_number(*v) : std::string("-"); };
	std::ostringstream os;
	if (g.format == "csv") {
		os << "bs,ms,subchannel,eta,beta,threshold1,threshold2,threshold3,rate_within_tau\n";
		for (const auto& r : rep.records)
			os << r.bs << ',' << r.ms << ',' << r.subchannel << ',' << icic::format_number(r.eta) << ','
			   << icic::format_number(r.beta) << ',' << opt(r.threshold1) << ',' << opt(r.threshold2) << ','
			   << icic::format_number(r.threshold3) << ',' << (r.rate_within_tau ? 1 : 0) << '\n';
	} else {
		os << std::left << std::setw(4) << "bs" << std::setw(5) << "ms" << std::setw(5) << "sub" << std::setw(14)
		   << "eta" << std::setw(14) << "beta" << std::setw(14) << "thr1" << std::setw(14) << "thr2" << std::setw(14)
		   << "thr3"
		   << "log(1+eta)<=tau\n";
		auto cell = [](const std::string& s) {
			std::ostringstream c;
			c << std::left << std::setw(14) << s;
			return c.str();
		};
		auto short_num = [](double v) {
			std::ostringstream c;
			c << std::setprecision(6) << v;
			return c.str();
		};
		auto short_opt = [&](const std::optional<double>& v) { return v ? short_num(*v) : std::string("-"); };
		for (const auto& r : rep.records)
			os << std::left << std::setw(4) << r.bs << std::setw(5) << r.ms << std::setw(5) << r.subchannel
			   << cell(short_num(r.eta)) << cell(short_num(r.beta)) << cell(short_opt(r.threshold1))
			   << cell(short_opt(r.threshold2)) << cell(short_num(r.threshold3)) << (r.rate_within_tau ? "yes" : "no")
			   << '\n';
		os << "condition 1: " << (rep.cond1_holds ? "holds" : "fails") << '\n'
		   << "condition 2: " << (rep.cond2_holds ? "holds" : "fails") << '\n'
		   << "condition 3: " << (rep.cond3_holds ? "holds" : "fails") << '\n'
		   << "condition 4: " << (rep.cond4_holds ? "holds" : "fails") << '\n'
		   << "governing: " << icic::to_string(rep.applicable) << " -> "
		   << (rep.applicable_holds() ? "certified" : "not certified") << '\n';
	}
	std::cout << os.str();
	if (!g.out.empty())
		icic::write_file(g.out, icic::to_json(rep).dump(2) + "\n");
	return exit_ok;
}

// -- verify-lemmas ----------------------------------------------------------

std::string sublevel_line(const std::string& label, const icic::lemma_check_config& c, const icic::sublevel_report& r,
                          bool csv, bool waived)
{
	std::ostringstream os;
	if (csv) {
		os << label << ',' << icic::format_number(c.alpha) << ',' << icic::format_number(c.tau) << ','
		   << icic::format_number(c.eta) << ',' << icic::format_number(c.beta) << ',' << icic::to_string(r.status)
		   << ',' << icic::format_number(r.worst_x) << ',' << icic::format_number(r.worst_gap) << ','
		   << icic::format_number(r.limit_gap) << ',' << (waived ? "waived" : "met") << '\n';
	} else {
		os << std::setprecision(6) << label << ": alpha=" << c.alpha << " tau=" << c.tau << " eta=" << c.eta
		   << " beta=" << c.beta << " -> " << icic::to_string(r.status);
		if (r.status != icic::sublevel_status::not_applicable)
			os << " (worst x=" << r.worst_x << " gap=" << r.worst_gap << ", limit gap=" << r.limit_gap << ")";
		if (waived)
			os << " [prerequisites not met; checked anyway]";
		os << '\n';
	}
	return os.str();
}

constexpr const char* lemma_csv_header = "row,alpha,tau,eta,beta,status,worst_x,worst_gap,limit_gap,prerequisites\n";

int run_verify_lemmas(const global_options& g, bool table1, icic::lemma_check_config cfg)
{
	const bool csv = g.format == "csv";
	std::string text = csv ? lemma_csv_header : "";
	bool all_hold = true;
	if (table1) {
		std::size_t waived = 0;
		for (const auto& r : icic::verify_table1(cfg.grid_points, cfg.x_max)) {
			text += sublevel_line(r.point.label, r.point.config, r.report, csv, r.prerequisites_waived);
			all_hold = all_hold && r.report.status == icic::sublevel_status::holds;
			waived += r.prerequisites_waived;
		}
		if (!csv && waived)
			text += std::to_string(waived) + " table point(s) fall outside their condition's prerequisites\n";
	} else {
		const auto r = icic::verify_sublevel(cfg);
		text += sublevel_line("custom", cfg, r, csv, false);
		all_hold = r.status == icic::sublevel_status::holds;
	}
	emit(g, text);
	return all_hold ? exit_ok : exit_domain;
}

// -- verify-reduction -------------------------------------------------------

int run_verify_reduction(const global_options& g, const std::string& path, double alpha, double tau)
{
	std::ifstream in(path);
	if (!in)
		throw icic::io_error("cannot open " + path);
	const auto graph = icic::read_edge_list(in);
	auto [scn, p] = icic::mis_gadget_scenario(graph);
	p.alpha = alpha;
	p.tau = tau;
	const auto rep = icic::exhaustive_search(scn, p);
	const auto recovered = icic::recover_mis_size(rep, graph.order(), p);
	const auto brute = icic::max_independent_set_size(graph);
	std::ostringstream os;
	if (g.format == "csv")
		os << "vertices,edges,alpha,tau,recovered,brute_force,match\n"
		   << graph.order() << ',' << graph.edges().size() << ',' << icic::format_number(alpha) << ','
		   << icic::format_number(tau) << ',' << recovered << ',' << brute << ',' << (recovered == brute) << '\n';
	else
		os << "vertices " << graph.order() << ", edges " << graph.edges().size() << "\nrecovered independent set size "
		   << recovered << "\nbrute-force maximum independent set " << brute << '\n'
		   << (recovered == brute ? "match" : "MISMATCH") << '\n';
	emit(g, os.str());
	return recovered == brute ? exit_ok : exit_domain;
}

// -- sweep ------------------------------------------------------------------

std::vector<double> parse_grid(const std::string& s)
{
	std::vector<double> out;
	std::stringstream ss(s);
	std::string item;
	while (std::getline(ss, item, ','))
		out.push_back(icic::parse_number(item));
	return out;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Subchannel allocation under tau-alpha fairness: solvers, certificates and sweeps"};
	app.require_subcommand(1);
	app.fallthrough(); // global flags may follow the subcommand
	global_options g;
	app.add_option("--seed", g.seed, "random seed (generate, sweep base seed)")->capture_default_str();
	app.add_option("--out", g.out, "output file");
	app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

	auto* gen = app.add_subcommand("generate", "draw a random scenario");
	icic::scenario_config cfg;
	add_scenario_flags(gen, cfg);
	std::string config_path;
	gen->add_option("--config", config_path, "TOML or INI file whose keys mirror the flag names");

	auto* solve = app.add_subcommand("solve", "solve a scenario");
	solve_options so;
	solve->add_option("--method", so.method)->check(CLI::IsMember({"exhaustive", "matching", "distributed"}))
		->capture_default_str();
	solve->add_option("--scenario", so.scenario)->required();
	solve->add_option("--alpha", so.alpha)->capture_default_str();
	solve->add_option("--tau", so.tau)->capture_default_str();
	solve->add_option("--power", so.power)->capture_default_str();
	solve->add_option("--noise", so.noise)->capture_default_str();
	solve->add_option("--p0", so.p0, "distributed termination threshold (default from K, M, N, alpha)");
	solve->add_option("--trace", so.trace, "write the distributed round trace (JSON lines)");
	solve->add_option("--max-states", so.max_states, "exhaustive search budget")->capture_default_str();

	auto* cert = app.add_subcommand("certify", "evaluate the optimality conditions for the matching solver");
	std::string cert_scenario;
	double cert_alpha = 0.0, cert_tau = 1.0, cert_power = 1.0, cert_noise = 1e-3;
	cert->add_option("--scenario", cert_scenario)->required();
	cert->add_option("--alpha", cert_alpha)->required();
	cert->add_option("--tau", cert_tau)->required();
	cert->add_option("--power", cert_power)->capture_default_str();
	cert->add_option("--noise", cert_noise)->capture_default_str();

	auto* lem = app.add_subcommand("verify-lemmas", "numeric sublevel check of the sharing penalty functions");
	icic::lemma_check_config lc;
	bool table1 = false;
	auto* table_flag = lem->add_flag("--table1", table1, "check every row of the built-in example table");
	auto* a_opt = lem->add_option("--alpha", lc.alpha)->excludes(table_flag);
	auto* t_opt = lem->add_option("--tau", lc.tau)->excludes(table_flag);
	auto* e_opt = lem->add_option("--eta", lc.eta)->excludes(table_flag);
	auto* b_opt = lem->add_option("--beta", lc.beta)->excludes(table_flag);
	lem->add_option("--x-max", lc.x_max)->capture_default_str();
	lem->add_option("--grid-points", lc.grid_points)->capture_default_str();

	auto* red = app.add_subcommand("verify-reduction", "check the independent-set gadget on a graph");
	std::string graph_path;
	double red_alpha = 0.5, red_tau = 0.5;
	red->add_option("--graph", graph_path, "edge list file")->required();
	red->add_option("--alpha", red_alpha)->capture_default_str();
	red->add_option("--tau", red_tau)->capture_default_str();

	auto* sw = app.add_subcommand("sweep", "seed-averaged parameter sweep");
	icic::sweep_spec spec;
	std::string sw_method = "exhaustive", sw_var = "alpha", sw_grid;
	bool no_plot = false;
	add_scenario_flags(sw, spec.scenario);
	sw->add_option("--method", sw_method)->check(CLI::IsMember({"exhaustive", "matching", "distributed"}))
		->capture_default_str();
	sw->add_option("--var", sw_var, "swept variable")->check(CLI::IsMember({"alpha", "tau", "p0"}))
		->capture_default_str();
	sw->add_option("--grid", sw_grid, "comma-separated, strictly increasing values")->required();
	sw->add_option("--alpha", spec.alpha)->capture_default_str();
	sw->add_option("--tau", spec.tau)->capture_default_str();
	sw->add_option("--p0", spec.p0);
	sw->add_option("--power", spec.power)->capture_default_str();
	sw->add_option("--noise", spec.noise)->capture_default_str();
	sw->add_option("--seeds", spec.num_seeds)->capture_default_str();
	sw->add_option("--threads", spec.threads, "0 = all cores")->capture_default_str();
	sw->add_option("--max-states", spec.budget.max_states)->capture_default_str();
	sw->add_flag("--no-plot", no_plot);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int rc = app.exit(e);
		return rc == 0 ? exit_ok : exit_usage;
	}

	try {
		if (gen->parsed()) {
			if (!config_path.empty()) {
				if (const int rc = apply_config_file(gen, config_path); rc != exit_ok)
					return rc;
			}
			cfg.seed = g.seed;
			emit(g, icic::serialize(icic::generate(cfg)));
			return exit_ok;
		}
		if (solve->parsed())
			return run_solve(g, so);
		if (cert->parsed())
			return run_certify(g, cert_scenario, cert_alpha, cert_tau, cert_power, cert_noise);
		if (lem->parsed()) {
			if (!table1 && (!*a_opt || !*t_opt || !*e_opt || !*b_opt)) {
				std::cerr << "verify-lemmas needs --table1 or all of --alpha --tau --eta --beta\n";
				return exit_usage;
			}
			return run_verify_lemmas(g, table1, lc);
		}
		if (red->parsed())
			return run_verify_reduction(g, graph_path, red_alpha, red_tau);
		if (sw->parsed()) {
			spec.method = icic::parse_solver_method(sw_method);
			spec.variable = icic::parse_swept_variable(sw_var);
			spec.grid = parse_grid(sw_grid);
			spec.scenario.seed = g.seed;
			const auto table = icic::run_sweep(spec);
			if (g.out.empty()) {
				std::cout << icic::raw_csv(table);
			} else {
				const auto paths = icic::emit_outputs(table, g.out, !no_plot);
				std::cout << icic::aggregate_csv(table.variable, table.aggregate);
				std::cerr << "wrote " << paths.raw << ", " << paths.aggregate << (no_plot ? "" : ", " + paths.plot)
				          << '\n';
			}
			return exit_ok;
		}
	} catch (const icic::io_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_io;
	} catch (const icic::error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_domain;
	}
	return exit_usage;
}
