#include <doctest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "piq/quiver.hpp"

using namespace piq;

TEST_CASE("builder rejects duplicates and empty quivers")
{
    Quiver::Builder b;
    b.add_vertex("1");
    CHECK_THROWS_AS(b.add_vertex("1"), std::invalid_argument);
    b.add_arrow("a", "1", "1");
    CHECK_THROWS_AS(b.add_arrow("a", "1", "1"), std::invalid_argument);
    CHECK_THROWS_AS(b.add_arrow("b", "1", "2"), std::invalid_argument);
    CHECK_THROWS_AS(Quiver::Builder().build(), std::invalid_argument);
}

TEST_CASE("loops and parallel arrows are kept apart")
{
    auto q = gen::quiver_from(2, {{0, 1}, {0, 1}, {1, 1}});
    CHECK(q.out_arrows(0).size() == 2);
    CHECK(q.in_arrows(1).size() == 3);
    CHECK(flow(q, 0) == 2);
    CHECK(flow(q, 1) == -2);
    CHECK_THROWS_AS(flow(q, 7), std::out_of_range);
    auto cycles = enumerate_simple_cycles(q);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].arrows == std::vector<Arrow>{2});
}

TEST_CASE("path order is length, then arrow ids, then source")
{
    auto q = oriented_cycle(2);
    Path e1 = Path::lazy(0), e2 = Path::lazy(1);
    Path a1 = Path::arrow(q, 0), a2 = Path::arrow(q, 1);
    CHECK(e1 < e2);
    CHECK(e2 < a1);
    CHECK(a1 < a2);
    CHECK(a2 < Path::from_arrows(q, {0, 1}));
    CHECK_THROWS_AS(Path::from_arrows(q, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Path::from_arrows(q, {}), std::invalid_argument);
    CHECK(to_string(q, Path::from_arrows(q, {0, 1})) == "a1*a2");
    CHECK(to_string(q, e2) == "e(2)");
}

TEST_CASE("compose follows endpoints")
{
    auto q = equioriented_a(3);
    Path a1 = Path::arrow(q, 0), a2 = Path::arrow(q, 1);
    CHECK(compose(a1, a2) == Path::from_arrows(q, {0, 1}));
    CHECK_FALSE(compose(a2, a1));
    CHECK(compose(Path::lazy(0), a1) == a1);
    CHECK(compose(a1, Path::lazy(1)) == a1);
    CHECK_FALSE(compose(Path::lazy(0), Path::lazy(1)));
}

TEST_CASE("strongly connected components agree with mutual reachability")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 500; ++k) {
        auto q = gen::random_quiver(rng, 6, 9);
        auto expected = oracle::components_by_reachability(q);
        auto got = strongly_connected_components(q);
        REQUIRE(got.size() == expected.size());
        for (std::size_t c = 0; c < got.size(); ++c) {
            CHECK(got[c].vertices == expected[c]);
            for (Arrow a : got[c].arrows) {
                CHECK(std::binary_search(got[c].vertices.begin(), got[c].vertices.end(), q.source(a)));
                CHECK(std::binary_search(got[c].vertices.begin(), got[c].vertices.end(), q.target(a)));
            }
        }
    }
}

TEST_CASE("simple cycles: canonical, duplicate-free, counted like the oracle")
{
    std::mt19937_64 rng(12);
    for (int k = 0; k < 500; ++k) {
        auto q = gen::random_quiver(rng, 5, 8);
        auto cycles = enumerate_simple_cycles(q);
        CHECK(std::is_sorted(cycles.begin(), cycles.end()));
        CHECK(std::adjacent_find(cycles.begin(), cycles.end()) == cycles.end());
        std::vector<std::size_t> through(q.vertex_count(), 0);
        for (const auto& c : cycles) {
            auto vs = c.vertices(q);
            CHECK(vs.front() == c.start);
            CHECK(*std::min_element(vs.begin(), vs.end()) == c.start);
            CHECK(std::set<Vertex>(vs.begin(), vs.end()).size() == vs.size());
            Path closed = c.rotated_to(q, c.start);
            CHECK(closed.source() == closed.target());
            for (Vertex v : vs) {
                ++through[v];
                CHECK(c.passes_through(q, v));
                CHECK(c.rotated_to(q, v).source() == v);
            }
        }
        CHECK(through == oracle::cycles_through(q));
        CHECK(is_acyclic(q) == cycles.empty());
    }
}

TEST_CASE("longest path on acyclic quivers")
{
    CHECK(longest_path_length(equioriented_a(1)) == 0);
    CHECK(longest_path_length(equioriented_a(5)) == 4);
    auto diamond = gen::quiver_from(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}});
    CHECK(longest_path_length(diamond) == 2);
    CHECK(longest_path(diamond) == std::vector<Arrow>{0, 1});
    CHECK_THROWS_AS(longest_path_length(oriented_cycle(3)), std::domain_error);
    CHECK_THROWS_AS(longest_path(oriented_cycle(1)), std::domain_error);
}

TEST_CASE("named constructions")
{
    auto c1 = oriented_cycle(1);
    CHECK(c1.vertex_count() == 1);
    CHECK(c1.source(0) == c1.target(0));
    auto c4 = oriented_cycle(4);
    CHECK(c4.target(3) == 0);
    CHECK(c4.arrow_name(3) == "a4");
    auto a3 = equioriented_a(3);
    CHECK(a3.arrow_count() == 2);
    CHECK(a3.find_arrow("a2") == Arrow{1});
    CHECK_FALSE(a3.find_vertex("9"));
}
