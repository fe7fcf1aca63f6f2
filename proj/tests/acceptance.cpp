// One pass/fail line per acceptance criterion, with supporting detail lines.
// argv[1] is the mnec CLI, used for the determinism criterion; defaults to the one next to this binary.

#include "mnec/mnec.hpp"

#include "instances.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <unistd.h>

using namespace mnec;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = MNEC_DATA_DIR;

using clock_type = std::chrono::steady_clock;

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

std::string secs(double s) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << s << " s";
    return os.str();
}

struct criterion {
    explicit criterion(int i) : id(i) {}

    int id;
    bool pass = true;
    std::vector<std::string> detail;

    void need(bool ok, const std::string& what) {
        pass = pass && ok;
        detail.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
    void note(const std::string& what) { detail.push_back("note  " + what); }
};

std::size_t failed_claims(const report& r) {
    std::size_t k = 0;
    for (auto& l : r.lines)
        if (l.rfind("FAIL", 0) == 0) ++k;
    return k;
}

std::size_t claims(const report& r) {
    std::size_t k = 0;
    for (auto& l : r.lines)
        if (l.rfind("note", 0) != 0) ++k;
    return k;
}

// 1: shipped stage matrices of the multicast and unicast examples
criterion stage_regression() {
    criterion c{1};
    auto t0 = clock_type::now();
    for (const char* id : {"fig3", "fig5"}) {
        auto r = reproduce(id, data_dir);
        std::size_t stages = 0;
        for (auto& l : r.lines)
            if (l.find("matrix equals stage") != std::string::npos) ++stages;
        c.need(r.pass, std::string(id) + ": " + std::to_string(stages) + " stage matrices, " +
                           std::to_string(claims(r) - failed_claims(r)) + "/" + std::to_string(claims(r)) +
                           " checks (matroidal β=2, extracted code corrects α=1)");
        for (auto& l : r.lines)
            if (l.rfind("FAIL", 0) == 0) c.note(l);
    }
    double t = since(t0);
    c.need(t < 5, "runtime " + secs(t) + " (limit 5 s)");
    return c;
}

criterion replay(int id, const std::string& example, std::size_t eligible, std::size_t beta, std::size_t sinks,
                 double limit) {
    criterion c{id};
    auto t0 = clock_type::now();
    auto p = example_params(example, data_dir);
    auto res = construct(p);
    c.need(res.ok, example + " replay of " + std::to_string(p.replay.size()) + " recorded rows" +
                       (res.ok ? "" : ": " + res.message));
    if (!res.ok) return c;
    auto r = realize(res.state);
    auto el = r.net.eligible_edges().size();
    c.need(el == eligible && r.net.sinks().size() == sinks,
           std::to_string(el) + " eligible edges, " + std::to_string(r.net.sinks().size()) + " sinks");
    auto v = check_correcting(r.net, r.code, p.alpha);
    std::uint64_t patterns = binomial(el, beta);
    c.need(v.pass, "α=" + std::to_string(p.alpha) + " over C(" + std::to_string(el) + "," + std::to_string(beta) +
                       ")=" + std::to_string(patterns) + " patterns x " + std::to_string(sinks) + " sinks: " +
                       v.line(r.net));
    double t = since(t0);
    c.need(t < limit, "runtime " + secs(t) + " (limit " + secs(limit) + ")");
    return c;
}

// 4: code -> matroid -> code on seeded constructions
criterion round_trips() {
    criterion c{4};
    std::size_t ok = 0, built = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        build_params p;
        p.mode = seed % 2 ? build_mode::multicast : build_mode::unicast;
        p.alpha = seed % 3;
        p.fld = field::parse(seed % 4 < 2 ? "gf16" : "gf8");
        p.seed = seed;
        p.nc = 2 + seed % 3;
        if (p.mode == build_mode::multicast) {
            p.sources = seed % 5 == 0 ? std::vector<std::size_t>{2, 1} : std::vector<std::size_t>{2};
            p.sinks = 2;
        } else {
            p.sources.assign(2, 1);
        }
        p.ec = 2;
        std::string tag = "seed " + std::to_string(seed) + " " + (seed % 2 ? "multicast" : "unicast") + " α=" +
                          std::to_string(p.alpha) + " " + p.fld.name();
        build_result res;
        try {
            res = construct(p);
        } catch (const build_error& e) {
            res.message = e.what();
        }
        if (!res.ok) {
            c.need(false, tag + ": construction failed: " + res.message);
            continue;
        }
        ++built;
        auto r = realize(res.state);
        std::size_t beta = 2 * p.alpha;
        std::string why;
        auto direct = check_correcting(r.net, r.code, p.alpha);
        if (!direct.pass) why = "constructed code " + direct.line(r.net);
        auto [f, b] = standard_assignment(res.state.n, res.state.edges());
        auto built_m = check_matroidal(r.net, res.state.matroid(), f, b, beta);
        if (why.empty() && !built_m.pass) why = "constructed matroid " + built_m.line();
        if (why.empty()) {
            auto form = code_to_matroid(r.net, r.code, beta);
            auto m = check_matroidal(r.net, form.m, form.f, form.b, beta);
            auto back = matroid_to_code(form.m, form.f, form.b, r.net);
            auto v = check_correcting(r.net, back, p.alpha);
            bool same = same_up_to_scaling(global_vectors(r.net, r.code).select_cols(r.eligible),
                                           global_vectors(r.net, back).select_cols(r.eligible));
            if (!m.pass) why = "derived matroid " + m.line();
            else if (!v.pass) why = "extracted code " + v.line(r.net);
            else if (!same) why = "global vectors differ beyond scaling";
        }
        if (why.empty())
            ++ok;
        else
            c.need(false, tag + ": " + why);
    }
    c.need(ok == 50, std::to_string(ok) + "/50 round trips preserve global vectors up to scaling and pass both checks (" +
                         std::to_string(built) + " constructed)");
    return c;
}

// 5: span check against full enumeration, on constructed codes and on
// copies with one coefficient changed
criterion oracle_agreement() {
    criterion c(5);
    std::mt19937_64 g(5);
    std::size_t agree = 0, passes = 0, fails = 0, collisions = 0, done = 0;
    std::uint64_t max_eval = 0;
    for (std::uint64_t seed = 1; done < 20; ++seed) {
        build_params p;
        p.mode = seed % 2 ? build_mode::multicast : build_mode::unicast;
        p.sources = p.mode == build_mode::multicast ? std::vector<std::size_t>{1} : std::vector<std::size_t>{1, 1};
        p.alpha = 1;
        p.sinks = 2;
        p.nc = 1 + seed % 2;
        p.fld = field::parse("gf8");
        p.seed = seed;
        auto res = construct(p);
        if (!res.ok) continue;
        auto r = realize(res.state);
        network_code code = r.code;
        if (done % 2) {
            // drop one nonzero coefficient of A or K
            std::vector<std::pair<bool, std::size_t>> nz;
            for (std::size_t i = 0; i < code.a.data().size(); ++i)
                if (code.a.data()[i]) nz.push_back({true, i});
            for (std::size_t i = 0; i < code.k.data().size(); ++i)
                if (code.k.data()[i]) nz.push_back({false, i});
            auto [in_a, pos] = nz[g() % nz.size()];
            matrix& m = in_a ? code.a : code.k;
            m(pos / m.cols(), pos % m.cols()) = 0;
        }
        auto o = semantic_oracle(r.net, code, 2, 10'000'000);
        if (o.budget_exceeded) continue;
        ++done;
        max_eval = std::max(max_eval, o.evaluations);
        auto v = check_detecting(r.net, code, 2);
        if (v.pass == o.pass) ++agree;
        if (o.pass) {
            ++passes;
            continue;
        }
        ++fails;
        auto y1 = instances::outputs(r.net, code, o.sink, o.x1, o.pattern, o.z1);
        auto y2 = instances::outputs(r.net, code, o.sink, o.x2, o.pattern, o.z2);
        bool differs = false;
        for (auto d : r.net.nodes[o.sink].messages) differs = differs || o.x1[d] != o.x2[d];
        if (y1 == y2 && differs) ++collisions;
    }
    c.need(agree == 20, std::to_string(agree) + "/20 instances agree on pass/fail at β=2 (" + std::to_string(passes) +
                            " pass, " + std::to_string(fails) + " fail, largest enumeration " +
                            std::to_string(max_eval) + ")");
    c.need(fails > 0 && collisions == fails, std::to_string(collisions) + "/" + std::to_string(fails) +
                                                  " failing instances give a colliding pair confirmed by direct evaluation");
    return c;
}

index_set complement(std::size_t n, const index_set& s) {
    index_set out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end()) out.push_back(i);
    return out;
}

// 6: matroid engine examples and identities
criterion matroid_fixtures() {
    criterion c{6};
    field gf2 = field::parse("gf2");
    vector_matroid m(matrix(gf2, {{1, 0, 0, 1}, {0, 1, 0, 1}}));
    c.need(m.restrict_to({0, 1, 2}).rep() == matrix(gf2, {{1, 0, 0}, {0, 1, 0}}), "restriction to {1,2,3}");
    c.need(m.dual().rep() == matrix(gf2, {{0, 0, 1, 0}, {1, 1, 0, 1}}), "dual matrix");
    auto ct = m.contract({3});
    c.need(ct.rep() == matrix(gf2, {{1, 1, 0}}), "contraction of {4}");
    c.need(m.closure({0}) == index_set{0, 2}, "cl({1}) = {1,3}");
    auto dc = m.dual().circuits();
    c.need(std::find(dc.begin(), dc.end(), index_set{1, 3}) != dc.end(), "{2,4} is a circuit of the dual");
    auto u = mds_matroid(4, 5, field::parse("gf8")).contract({3, 4});
    c.need(u.rank() == 2 && u.independent({0, 1}) && u.independent({0, 2}) && u.independent({1, 2}),
           "U(4,5) contracted by two elements is U(2,3)");
    vector_matroid b(matrix(gf2, {{1, 0, 0, 0, 1}, {0, 1, 0, 0, 1}, {0, 0, 1, 0, 1}}));
    auto ext = b.principal_extension({2, 3, 4}, "6");
    bool principal = true;
    for (auto& fl : b.flats()) {
        auto with = fl;
        with.push_back(5);
        bool in_cl = ext.rank(with) == b.rank(fl);
        bool want = std::find(fl.begin(), fl.end(), 2) != fl.end() && std::find(fl.begin(), fl.end(), 3) != fl.end() &&
                    std::find(fl.begin(), fl.end(), 4) != fl.end();
        principal = principal && in_cl == want;
    }
    c.need(principal, "principal extension on {3,4,5} lies exactly in the flats containing it (" + ext.fld().name() + ")");

    std::mt19937_64 g(6);
    std::size_t subsets = 0, bad = 0, pairs = 0, bad_pairs = 0, count = 0;
    const char* fields[] = {"gf2", "gf3", "gf4", "gf5"};
    while (count < 100) {
        field f = field::parse(fields[count % 4]);
        std::size_t rows = 1 + g() % 4, cols = 2 + g() % 6;  // at most 7 so extensions stay within 8
        vector_matroid mm(oracle::random_matrix(f, rows, cols, g));
        ++count;
        std::size_t n = mm.size();
        for (std::size_t e = 0; e < n; ++e) {
            if (mm.rep().col_is_zero(e)) continue;
            auto par = mm.parallel_extend(e, "p");
            bool coloop = mm.rank(complement(n, {e})) < mm.rank();
            std::optional<vector_matroid> ser;
            if (!coloop) ser = mm.series_extend(e, "s");
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                auto s = from_mask(x);
                ++subsets;
                if (par.rank(s) != mm.rank(s)) ++bad;
                if (x >> e & 1) {
                    auto t = s;
                    t.erase(std::find(t.begin(), t.end(), e));
                    t.push_back(n);
                    if (par.rank(t) != mm.rank(s)) ++bad;
                }
                if (ser) {
                    if (ser->contract({n}).rank(s) != mm.rank(s)) ++bad;
                    if (!(x >> e & 1) && ser->rank(s) != mm.rank(s)) ++bad;
                }
            }
            if (ser && ser->dual().rank(index_set{e, n}) != 1) ++bad;
            if (par.rank(index_set{e, n}) != 1) ++bad;
        }
        auto cs = mm.circuits();
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j) {
                index_set both, uni;
                std::set_intersection(cs[i].begin(), cs[i].end(), cs[j].begin(), cs[j].end(), std::back_inserter(both));
                std::set_union(cs[i].begin(), cs[i].end(), cs[j].begin(), cs[j].end(), std::back_inserter(uni));
                for (auto e : both) {
                    ++pairs;
                    auto rest = uni;
                    rest.erase(std::find(rest.begin(), rest.end(), e));
                    bool found = false;
                    for (auto& cc : cs) found = found || std::includes(rest.begin(), rest.end(), cc.begin(), cc.end());
                    if (!found) ++bad_pairs;
                }
            }
    }
    c.need(bad == 0, "parallel and series extension rank identities on 100 random matroids: " +
                         std::to_string(subsets) + " subsets, " + std::to_string(bad) + " violations");
    c.need(bad_pairs == 0, "circuit elimination: " + std::to_string(pairs) + " (pair, element) cases, " +
                               std::to_string(bad_pairs) + " violations");
    return c;
}

// 7: field size behaviour
criterion field_size() {
    criterion c{7};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        build_params p;
        p.mode = build_mode::multicast;
        p.sources = {3};
        p.alpha = 3;
        p.sinks = 3;
        p.nc = 10;
        p.fld = field::parse("gf16");
        p.seed = seed;
        auto t0 = clock_type::now();
        auto res = construct(p);
        double t = since(t0);
        std::string line = "GF(16) seed " + std::to_string(seed) + ": ";
        if (!res.ok) {
            c.need(false, line + res.message);
            continue;
        }
        auto r = realize(res.state);
        auto v = check_correcting(r.net, r.code, 3);
        c.need(v.pass, line + std::to_string(res.state.trace.size()) + " coding nodes, " +
                           std::to_string(res.state.candidates_tried) + " candidate vectors, " + v.line(r.net) + ", " +
                           secs(t));
    }
    build_params q;
    q.mode = build_mode::multicast;
    q.sources = {1};
    q.alpha = 1;
    q.sinks = 1;
    q.nc = 1;
    q.fld = field::parse("gf2");
    c.note("GF(2) is below the size rule: " + std::string(field_size_rule_holds(q) ? "rule holds" : "rule fails"));
    auto res = construct(q);
    c.need(!res.ok && !res.message.empty(), "GF(2) α=1 multicast reports failure: " + res.message);
    q.sources = {2, 1};
    try {
        construct(q);
        c.need(false, "GF(2) with sources 2,1 should not build");
    } catch (const build_error& e) {
        c.need(true, std::string("GF(2) with sources 2,1 reports: ") + e.what());
    }
    return c;
}

// 8: linear insufficiency networks
criterion insufficiency() {
    criterion c{8};
    std::string dir = data_dir + "/insufficiency";
    auto n1 = load_fixture("n1", dir), n2 = load_fixture("n2", dir), n3 = load_fixture("n3", dir);
    field gf2 = field::parse("gf2"), gf3 = field::parse("gf3"), gf4 = field::parse("gf4");

    network a = with_field(n1.net, gf2);
    auto va = check_detecting(a, all_ones(a, n1.fixed), 1);
    c.need(va.pass, "(a) n1 all-ones over GF(2), β=1: " + va.line(a));

    search_options so;
    so.budget_seconds = 30 * 60;
    auto t0 = clock_type::now();
    auto s = linear_detecting_search(n1, gf3, so);
    double ts = since(t0);
    c.need(s.status == search_status::exhausted && ts < 1800,
           std::string("(b) n1 pruned search over GF(3): ") + status_name(s.status) + ", " +
               std::to_string(s.nodes) + " nodes, " + secs(ts));

    network b3 = with_field(n2.net, gf3), b2 = with_field(n2.net, gf2);
    auto v3 = check_detecting(b3, all_ones(b3, n2.fixed), 1);
    auto v2 = check_detecting(b2, all_ones(b2, n2.fixed), 1);
    c.need(v3.pass && !v2.pass, "(c) n2 all-ones over GF(3): " + v3.line(b3) + "; over GF(2): " + v2.line(b2));

    t0 = clock_type::now();
    auto nl = nonlinear_verify(n3.net, *n3.nonlinear);
    double tn = since(t0);
    auto mu = nonlinear_verify(n3.net, identity_mutant(*n3.nonlinear));
    c.need(nl.pass && tn < 60, "(d) n3 nonlinear code under single-edge substitution: " + nl.line(n3.net) + ", " + secs(tn));
    c.need(!mu.pass, "(d) mutant with t replaced by the identity: " + mu.line(n3.net));
    network g4 = with_field(n3.net, gf4);
    std::vector<std::size_t> all(g4.edges.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    auto lin = substitution_check(g4, as_symbol_code(g4, all_ones(g4, n3.fixed)), all);
    c.note("n3 linear all-ones over GF(4): " + lin.line(g4));

    auto am = n3_amalgam_checks(*n1.reference, *n2.reference, n3.net, 1000);
    c.need(am.restriction_mismatches == 0, "(e) restriction agreement: " + std::to_string(am.restriction_mismatches) +
                                               " mismatches in " + std::to_string(am.restriction_checked) + " samples");
    c.need(am.axioms.ok, "(e) R1-R3 on " + std::to_string(am.axioms.checked) + " sampled pairs: " +
                             (am.axioms.ok ? std::string("no violation") : am.axioms.witness));
    c.need(am.full_rank == 27, "(e) r(full) = " + std::to_string(am.full_rank));
    c.need(am.matroidal.pass, "(e) amalgam satisfies the matroidal conditions on n3 at β=1: " + am.matroidal.line());
    if (!am.axioms.ok) {
        c.note("analysis: r(X) = r1(X1) + r2(X2) - |X ∩ shared| is not monotone. A shared element lying in the");
        c.note("closure of X1 in the first matroid and of X2 in the second lowers the value when added.");
        c.note("smallest witness: " + am.monotonicity_witness);
        c.note("the minimum of the formula over supersets X ∪ S, S a set of shared elements, repairs this:");
        c.note("closed amalgam restriction mismatches " + std::to_string(am.closed_restriction_mismatches) +
               ", R1-R3 " + (am.closed_axioms.ok ? std::string("no violation") : am.closed_axioms.witness) +
               ", r(full) = " + std::to_string(am.closed_full_rank) + ", matroidal " + am.closed_matroidal.line());
    }
    return c;
}

std::string run(const std::string& cmd) {
    std::string out;
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!p) return "<popen failed>";
    std::array<char, 4096> buf;
    std::size_t k;
    while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), k);
    int rc = pclose(p);
    return out + "\n<exit " + std::to_string(WEXITSTATUS(rc)) + ">";
}

// 9: byte-identical output across two runs
criterion determinism(const std::string& cli) {
    criterion c{9};
    if (cli.empty() || !fs::exists(cli)) {
        c.need(false, "CLI path not given or missing: '" + cli + "'");
        return c;
    }
    fs::path tmp = fs::temp_directory_path() / ("mnec_acceptance_" + std::to_string(getpid()));
    fs::create_directories(tmp);
    auto q = [](const std::string& s) { return "'" + s + "'"; };
    std::string fig3net = data_dir + "/fig3/network.net", fig3code = data_dir + "/fig3/code.txt";
    struct job {
        std::string name, args;
        bool writes;
    };
    std::vector<job> jobs{
        {"construct multicast", "construct multicast --sources 2,1 --sinks 2 --alpha 1 --nc 4 --field gf16 --seed 7", true},
        {"construct unicast", "construct unicast --n 3 --alpha 1 --nc 3 --field gf16 --seed 3 --minimize-sinks", true},
        {"verify", "verify --network " + q(fig3net) + " --code " + q(fig3code) + " --alpha 1 --dump-decoders --oracle", false},
        {"reproduce fig10", "--data-dir " + q(data_dir) + " reproduce --example fig10", false},
        {"bench insufficiency", "--data-dir " + q(data_dir) + " bench insufficiency", false},
    };
    for (auto& j : jobs) {
        std::string a_prefix = (tmp / "a").string(), b_prefix = (tmp / "b").string();
        std::string ra = run(q(cli) + " " + j.args + (j.writes ? " --out " + q(a_prefix) : ""));
        std::string rb = run(q(cli) + " " + j.args + (j.writes ? " --out " + q(b_prefix) : ""));
        bool same = ra == rb;
        std::string files;
        if (j.writes)
            for (const char* ext : {".net", ".code", ".mat", ".dot", ".trace"}) {
                std::string fa, fb;
                try {
                    fa = read_file(a_prefix + ext);
                    fb = read_file(b_prefix + ext);
                } catch (const io_error&) {
                    same = false;
                }
                same = same && fa == fb && !fa.empty();
                files += std::string(" ") + ext;
            }
        std::string last = ra.substr(0, ra.find('\n'));
        c.need(same, j.name + ": stdout" + (files.empty() ? "" : " and" + files) + " identical (" +
                         std::to_string(ra.size()) + " bytes of output; first line: " + last + ")");
    }
    fs::remove_all(tmp);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    auto here = std::filesystem::path(argv[0]).parent_path();
    std::string cli = argc > 1 ? argv[1] : ((here.empty() ? "." : here) / "mnec").string();
    std::vector<std::function<criterion()>> all{
        stage_regression,
        [] { return replay(2, "table1", 19, 6, 3, 60); },
        [] { return replay(3, "table2", 40, 4, 5, 120); },
        round_trips,
        oracle_agreement,
        matroid_fixtures,
        field_size,
        insufficiency,
        [&] { return determinism(cli); },
    };
    bool everything = true;
    std::vector<std::string> summary;
    for (std::size_t i = 0; i < all.size(); ++i) {
        criterion c{static_cast<int>(i + 1)};
        try {
            c = all[i]();
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail.push_back(std::string("FAIL  exception: ") + e.what());
        }
        std::cout << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
        for (auto& d : c.detail) std::cout << "    " << d << "\n";
        std::cout.flush();
        summary.push_back(std::to_string(c.id) + (c.pass ? " PASS" : " FAIL"));
        everything = everything && c.pass;
    }
    std::cout << "summary:";
    for (auto& s : summary) std::cout << " " << s << ";";
    std::cout << "\n";
    return everything ? 0 : 1;
}
