#include <doctest.h>

#include "instances.hpp"

#include <sstream>

using namespace mnec;

namespace {

// The matroidal conditions ask every edge to depend on the messages, so codes
// with an all-zero global vector are outside their scope.
bool nonzero_vectors(const network& net, const network_code& code) {
    try {
        global_vectors(net, code);
        return true;
    } catch (const network_error&) {
        return false;
    }
}

network_file fig3() {
    std::istringstream is(read_file(std::string(MNEC_DATA_DIR) + "/fig3/network.net"));
    auto nf = read_network(is);
    std::istringstream cs(read_file(std::string(MNEC_DATA_DIR) + "/fig3/code.txt"));
    nf.code = read_code(cs, nf.net);
    return nf;
}

}  // namespace

TEST_CASE("code to matroid and back on random instances") {
    std::mt19937_64 g(31);
    std::size_t round_trips = 0;
    // most random topologies cannot even decode without errors; draw until enough pass
    for (int iter = 0; iter < 5000 && round_trips < 60; ++iter) {
        auto [net, code] = instances::random_instance(g, field::parse(iter % 2 ? "gf9" : "gf16"));
        std::size_t beta = iter % 3;
        CAPTURE(iter);
        auto v = check_detecting(net, code, beta);
        if (!v.pass) {
            CHECK_THROWS_AS(code_to_matroid(net, code, beta), matroidal_error);
            continue;
        }
        auto form = code_to_matroid(net, code, beta);
        if (!nonzero_vectors(net, code)) {
            CHECK(check_matroidal(net, form.m, form.f, form.b, beta).tag == "B1");
            continue;
        }
        std::size_t n = net.n(), ne = net.eligible_edges().size();
        CHECK(form.m.size() == n + 2 * ne);
        CHECK(form.m.rank() == n + ne);
        CHECK(check_matroidal(net, form.m, form.f, form.b, beta).pass);
        CHECK(check_matroidal(net, rank_oracle::of(form.m), form.f, form.b, beta).pass);

        auto back = matroid_to_code(form.m, form.f, form.b, net);
        CHECK(back.check(net).empty());
        CHECK(check_detecting(net, back, beta).pass);
        // every edge is eligible here and F has a unit diagonal, so nothing is rescaled
        CHECK(back.a == code.a);
        CHECK(back.k == code.k);
        ++round_trips;
    }
    CHECK(round_trips == 60);
}

TEST_CASE("condition C fails exactly where detection fails") {
    std::mt19937_64 g(32);
    std::size_t compared = 0;
    for (int iter = 0; iter < 300; ++iter) {
        auto [net, code] = instances::random_instance(g, field::parse("gf3"));
        if (!check_detecting(net, code, 0).pass || !nonzero_vectors(net, code)) continue;
        auto form = code_to_matroid(net, code, 0);
        for (std::size_t beta = 1; beta <= 3; ++beta) {
            auto v = check_detecting(net, code, beta);
            auto fast = check_matroidal(net, form.m, form.f, form.b, beta);
            auto slow = check_matroidal(net, rank_oracle::of(form.m), form.f, form.b, beta);
            CAPTURE(iter);
            CAPTURE(beta);
            REQUIRE(fast.pass == v.pass);
            REQUIRE(slow.pass == v.pass);
            if (!v.pass) {
                CHECK(fast.tag == "C");
                CHECK(slow.line() == fast.line());
                CHECK(fast.line() == "FAIL condition=C " + v.line(net).substr(5));
                ++compared;
            }
        }
    }
    CHECK(compared > 20);
}

TEST_CASE("structural conditions report their tag") {
    auto nf = fig3();
    const network& net = nf.net;
    auto form = code_to_matroid(net, *nf.code, 2);
    REQUIRE(check_matroidal(net, form.m, form.f, form.b, 2).pass);

    auto f = form.f;
    auto b = form.b;
    f.msg[1] = f.msg[0];
    CHECK(check_matroidal(net, form.m, f, b, 2).tag == "A");

    f = form.f;
    std::swap(b.b[0], b.b[1]);
    CHECK(check_matroidal(net, form.m, f, b, 2).tag == "basis");

    b = form.b;
    f.edge[0] = b.b[net.n()];
    CHECK(check_matroidal(net, form.m, f, b, 2).tag == "B1");

    f = form.f;
    b.b.pop_back();
    CHECK(check_matroidal(net, form.m, f, b, 2).tag == "size");

    matrix wider = form.m.rep().hcat(matrix(net.fld, form.m.rep().rows(), 1));
    vector_matroid extra(wider);
    CHECK(check_matroidal(net, extra, form.f, form.b, 2).tag == "size");

    // swapping two edge images breaks the input condition of an edge
    f = form.f;
    std::swap(f.edge[0], f.edge[1]);
    auto r = check_matroidal(net, form.m, f, form.b, 2);
    CHECK(!r.pass);
    CHECK((r.tag == "B1" || r.tag == "B2"));
}

TEST_CASE("fig3 round trip through the matroid keeps the eligible global vectors") {
    auto nf = fig3();
    const network& net = nf.net;
    auto form = code_to_matroid(net, *nf.code, 2);
    auto back = matroid_to_code(form.m, form.f, form.b, net);
    CHECK(check_correcting(net, back, 1).pass);
    auto el = net.eligible_edges();
    CHECK(same_up_to_scaling(global_vectors(net, *nf.code).select_cols(el), global_vectors(net, back).select_cols(el)));

    // the shipped matroid for the same network passes too
    std::istringstream ms(read_file(std::string(MNEC_DATA_DIR) + "/fig3/matroid.mat"));
    vector_matroid shipped = read_matroid(ms);
    auto [sf, sb] = standard_assignment(net.n(), el.size());
    CHECK(check_matroidal(net, shipped, sf, sb, 2).pass);
    CHECK(!check_matroidal(net, shipped, sf, sb, 3).pass);
}

TEST_CASE("matroid to code rejects bad inputs") {
    auto nf = fig3();
    const network& net = nf.net;
    auto form = code_to_matroid(net, *nf.code, 2);
    auto b = form.b;
    b.b[1] = b.b[0];
    CHECK_THROWS_AS(matroid_to_code(form.m, form.f, b, net), matroidal_error);
    vector_matroid other(matrix(field::parse("gf16"), form.m.rep().rows(), form.m.size()), form.m.labels());
    CHECK_THROWS_AS(matroid_to_code(other, form.f, form.b, net), matroidal_error);
}

TEST_CASE("scaling comparison") {
    field f = field::parse("gf8");
    matrix a(f, {{1, 0}, {2, 3}}), b(f, {{2, 0}, {5, 1}});
    CHECK(same_up_to_scaling(a, a));
    CHECK(same_up_to_scaling(a, matrix(f, {{2, 0}, {4, 6}})));
    CHECK(!same_up_to_scaling(a, b));
    CHECK(!same_up_to_scaling(a, matrix(f, {{1, 0}})));
}
