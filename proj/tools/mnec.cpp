#include "mnec/mnec.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#ifndef MNEC_DATA_DIR
#define MNEC_DATA_DIR "data"
#endif

using namespace mnec;

namespace {

// exit codes
constexpr int ok_exit = 0, fail_exit = 1, usage_exit = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

field parse_field(const std::string& s) {
    try {
        return field::parse(s);
    } catch (const field_error& e) {
        throw usage_error(e.what());
    }
}

network_file load_network(const std::string& path, const std::string& code_path) {
    std::istringstream is(read_file(path));
    auto nf = read_network(is);
    if (!code_path.empty()) {
        std::istringstream cs(read_file(code_path));
        nf.code = read_code(cs, nf.net);
    }
    return nf;
}

struct construct_opts {
    std::vector<std::size_t> sources{1};
    std::size_t n = 1, alpha = 1, nc = 1, sinks = 1, ec = 2;
    std::string fld = "gf8", replay, out = "out", tie = "lex";
    std::uint64_t seed = 1, budget = 1'000'000;
    bool minimize = false;
    std::vector<std::size_t> minimize_steps;
    unsigned jobs = 1;
};

int run_construct(const construct_opts& o, build_mode mode) {
    build_params p;
    p.mode = mode;
    p.sources = mode == build_mode::multicast ? o.sources : std::vector<std::size_t>(o.n, 1);
    p.alpha = o.alpha;
    p.nc = o.nc;
    p.sinks = o.sinks;
    p.fld = parse_field(o.fld);
    p.seed = o.seed;
    p.ec = o.ec;
    p.trial_budget = o.budget;
    p.minimize = o.minimize || !o.minimize_steps.empty();
    p.minimize_steps = o.minimize_steps;
    p.prefer_newest = o.tie == "newest";
    if (!o.replay.empty()) p.replay = load_trace(o.replay);
    if (p.sources.empty() || p.ec < 2) throw usage_error("need at least one source and --ec >= 2");
    if (!field_size_rule_holds(p))
        std::cerr << "warning: field below the q > |T| C(|E|, 2α) size rule; construction may fail\n";

    build_result res;
    try {
        res = construct(p);
    } catch (const build_error& e) {
        res.message = e.what();
    }
    if (!res.ok) {
        std::cout << "FAIL " << res.message << "\n";
        return fail_exit;
    }
    const build_state& s = res.state;
    realized r = realize(s);
    auto v = check_correcting(r.net, r.code, p.alpha, o.jobs);

    std::ostringstream net, code, mat, trace;
    write_network(net, r.net);
    write_code(code, r.code);
    write_matroid(mat, s.matroid());
    for (auto& t : s.trace) trace << format_trace_step(t) << "\n";
    write_file(o.out + ".net", net.str());
    write_file(o.out + ".code", code.str());
    write_file(o.out + ".mat", mat.str());
    write_file(o.out + ".dot", export_dot(r.net, &r.code));
    write_file(o.out + ".trace", trace.str());

    std::cout << "constructed " << s.edges() << " eligible edges, " << r.net.sinks().size() << " sinks over "
              << p.fld.name() << "\n";
    for (auto& t : s.trace) std::cout << "  " << format_trace_step(t) << "\n";
    std::cout << "sink inputs: " << in_sizes(s) << "\n";
    std::cout << v.line(r.net) << "\n";
    return v.pass ? ok_exit : fail_exit;
}

struct verify_opts {
    std::string network, code, matroid;
    long alpha = -1, beta = -1;
    bool dump = false, oracle = false;
    unsigned jobs = 1;
};

int run_verify(const verify_opts& o) {
    if ((o.alpha < 0) == (o.beta < 0)) throw usage_error("give exactly one of --alpha and --beta");
    std::size_t beta = o.beta >= 0 ? static_cast<std::size_t>(o.beta) : 2 * static_cast<std::size_t>(o.alpha);
    auto nf = load_network(o.network, o.code);
    const network& net = nf.net;
    if (auto d = net.validate(); !d.ok) throw usage_error("invalid network: " + d.message);

    if (!o.matroid.empty()) {
        std::istringstream ms(read_file(o.matroid));
        vector_matroid m = read_matroid(ms);
        auto [f, b] = standard_assignment(net.n(), net.eligible_edges().size());
        auto r = check_matroidal(net, m, f, b, beta);
        std::cout << (r.pass ? "PASS β=" + std::to_string(beta) : r.line()) << "\n";
        return r.pass ? ok_exit : fail_exit;
    }
    if (!nf.code) throw usage_error("no code: the network file has no A/K lines and --code was not given");
    const network_code& code = *nf.code;
    auto v = check_detecting(net, code, beta, o.jobs);
    std::cout << v.line(net) << "\n";
    if (o.oracle) {
        auto s = semantic_oracle(net, code, beta);
        std::cout << "oracle: " << s.line(net) << "\n";
        if (!s.budget_exceeded && s.pass != v.pass) {
            std::cout << "FAIL oracle disagrees with the span check\n";
            return fail_exit;
        }
    }
    if (o.dump && v.pass) {
        auto el = net.eligible_edges();
        std::size_t k = std::min(beta, el.size());
        for (auto t : net.sinks())
            for (combinations c(el.size(), k); !c.done(); c.next()) {
                std::vector<std::size_t> pat;
                for (auto i : c.get()) pat.push_back(el[i]);
                auto x = decoding_matrix(net, code, t, pat);
                std::cout << "decoder sink=" << net.nodes[t].id << " pattern=" << detail::pattern_text(net, pat) << "\n";
                if (x) x->write(std::cout);
            }
    }
    return v.pass ? ok_exit : fail_exit;
}

int print_report(const report& r) {
    std::cout << r.text() << (r.pass ? "PASS" : "FAIL") << "\n";
    for (auto& t : r.timings) std::cerr << "time " << t << "\n";
    return r.pass ? ok_exit : fail_exit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matroidal network error correction: construct, verify and reproduce"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string data_dir = MNEC_DATA_DIR;
    unsigned jobs = 1;
    app.add_option("--data-dir", data_dir, "Directory holding the shipped fixtures");
    app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

    auto* construct_cmd = app.add_subcommand("construct", "Build a network and its error-correcting code");
    construct_cmd->require_subcommand(1);
    construct_cmd->fallthrough();
    construct_opts co;
    auto common = [&](CLI::App* c) {
        c->add_option("--alpha", co.alpha, "Errors to correct");
        c->add_option("--nc", co.nc, "Coding nodes to add");
        c->add_option("--field", co.fld, "gf2, gf3, gf4, gf8, gf16 or custom:p,m,modulus");
        c->add_option("--seed", co.seed);
        c->add_option("--ec", co.ec, "Inputs per coding node");
        c->add_option("--budget", co.budget, "Coefficient tuples tried per extension");
        c->add_flag("--minimize-sinks", co.minimize, "Shrink sink inputs after every step");
        c->add_option("--minimize-steps", co.minimize_steps, "Shrink only after these steps (1-based)")->delimiter(',');
        c->add_option("--minimize-tie", co.tie, "Tie rule when shrinking")->check(CLI::IsMember({"lex", "newest"}));
        c->add_option("--replay", co.replay, "Trace file to replay");
        c->add_option("--out", co.out, "Output prefix for .net .code .mat .dot .trace");
    };
    auto* mc = construct_cmd->add_subcommand("multicast");
    mc->add_option("--sources", co.sources, "Messages per source")->delimiter(',');
    mc->add_option("--sinks", co.sinks);
    common(mc);
    auto* uc = construct_cmd->add_subcommand("unicast");
    uc->add_option("--n", co.n, "Source-sink pairs");
    common(uc);

    auto* verify_cmd = app.add_subcommand("verify", "Check a network code for error detection or correction");
    verify_opts vo;
    verify_cmd->add_option("--network", vo.network)->required();
    verify_cmd->add_option("--code", vo.code);
    verify_cmd->add_option("--alpha", vo.alpha, "Correct this many errors");
    verify_cmd->add_option("--beta", vo.beta, "Detect this many errors at known locations");
    verify_cmd->add_option("--as-matroid", vo.matroid, "Check the matroidal conditions for this matroid instead");
    verify_cmd->add_flag("--dump-decoders", vo.dump);
    verify_cmd->add_flag("--oracle", vo.oracle, "Also run the enumerating oracle");

    auto* repro_cmd = app.add_subcommand("reproduce", "Rebuild a shipped example and compare");
    std::string example;
    repro_cmd->add_option("--example", example)->required()->check(CLI::IsMember(example_ids()));

    auto* bench_cmd = app.add_subcommand("bench", "Benchmarks");
    bench_cmd->require_subcommand(1);
    bench_cmd->fallthrough();
    auto* ins = bench_cmd->add_subcommand("insufficiency", "Linear insufficiency networks");
    bench_options bo;
    ins->add_flag("--full", bo.full, "Include the long GF(2) search on n2");
    ins->add_option("--budget-min", bo.budget_minutes, "Wall-clock budget per search")->check(CLI::PositiveNumber);

    auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of a network");
    std::string dot_net, dot_code, dot_out;
    dot_cmd->add_option("--network", dot_net)->required();
    dot_cmd->add_option("--code", dot_code);
    dot_cmd->add_option("--out", dot_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ok_exit : usage_exit;
    }

    try {
        co.jobs = jobs;
        if (*mc) return run_construct(co, build_mode::multicast);
        if (*uc) return run_construct(co, build_mode::unicast);
        if (*verify_cmd) {
            vo.jobs = jobs;
            return run_verify(vo);
        }
        if (*repro_cmd) return print_report(reproduce(example, data_dir, jobs));
        if (*ins) {
            bo.jobs = jobs;
            return print_report(insufficiency_bench(data_dir + "/insufficiency", bo));
        }
        if (*dot_cmd) {
            auto nf = load_network(dot_net, dot_code);
            std::string text = export_dot(nf.net, nf.code ? &*nf.code : nullptr);
            if (dot_out.empty())
                std::cout << text;
            else
                write_file(dot_out, text);
            return ok_exit;
        }
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_exit;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_exit;
    } catch (const field_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_exit;
    } catch (const network_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_exit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fail_exit;
    }
    return usage_exit;
}
