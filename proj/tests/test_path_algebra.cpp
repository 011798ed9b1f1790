#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "properties.hpp"

using namespace piq;

TEST_CASE("field arithmetic")
{
    CHECK(Field::rationals().is_rational());
    CHECK(Field::prime(7).characteristic() == 7);
    CHECK_THROWS_AS(Field::prime(8), std::invalid_argument);
    CHECK_THROWS_AS(Field::prime(1), std::invalid_argument);
    CHECK(Field::prime(7).reduce(Rational(-1)) == 6);
    CHECK(Field::prime(7).reduce(Rational(1, 3)) == 5);
    CHECK_THROWS_AS(Field::prime(7).reduce(Rational(1, 7)), std::domain_error);
}

TEST_CASE("multiplication matches concatenate-then-reduce on all basis pairs")
{
    for (const auto& [name, algebra] : props::desk_algebras(8)) {
        CAPTURE(name);
        auto basis = algebra.standard_basis(4);
        for (const auto& p : basis)
            for (const auto& q : basis)
                CHECK(algebra.multiply(p, q) == oracle::multiply(algebra, p, q));
    }
}

TEST_CASE("grading and associativity properties")
{
    auto g = props::grading();
    CHECK(g.ok());
    CHECK(g.failures.empty());
    auto a = props::associativity(101, 10, 50);
    CHECK(a.ok());
    CHECK(a.failures.empty());
}

TEST_CASE("graded components partition the standard basis")
{
    for (const auto& [name, algebra] : props::desk_algebras(8)) {
        CAPTURE(name);
        auto basis = algebra.standard_basis(5);
        std::vector<Path> joined;
        const auto n = static_cast<Vertex>(algebra.quiver().vertex_count());
        for (std::size_t d = 0; d <= 5; ++d)
            for (Vertex i = 0; i < n; ++i)
                for (Vertex j = 0; j < n; ++j)
                    for (auto& p : algebra.graded_component(i, j, d)) {
                        CHECK(p.length() == d);
                        CHECK(p.source() == i);
                        CHECK(p.target() == j);
                        joined.push_back(p);
                    }
        std::sort(joined.begin(), joined.end());
        CHECK(std::adjacent_find(joined.begin(), joined.end()) == joined.end());
        CHECK(joined == basis);
    }
}

TEST_CASE("standard bases of small algebras")
{
    auto doc = load_quiver(props::data_file("commutative_square.qv"));
    auto square = make_algebra(doc, 8);
    // e1..e4, four arrows, one surviving length-two path
    CHECK(square.standard_basis(8).size() == 9);
    CHECK(square.basis_exhausted_at(2));
    CHECK_FALSE(square.basis_exhausted_at(1));
    auto a1a2 = parse_path(square.quiver(), "a1*a2");
    auto a3a4 = parse_path(square.quiver(), "a3*a4");
    CHECK(square.normal_form(a1a2) == square.normal_form(a3a4));
    CHECK(square.is_basis_path(a1a2) != square.is_basis_path(a3a4));

    auto cubed = make_algebra(load_quiver(props::data_file("loop_cubed.qv")), 10);
    CHECK(cubed.standard_basis(10).size() == 3);
    auto mono = make_algebra(load_quiver(props::data_file("a3_monomial.qv")), 4);
    CHECK(mono.standard_basis(4).size() == 5);
    CHECK_FALSE(mono.normal_form(parse_path(mono.quiver(), "a*b")));

    AlgebraHandle c2(oriented_cycle(2), {}, 6);
    CHECK(c2.standard_basis(6).size() == 14);
    CHECK_FALSE(c2.basis_exhausted_at(6));
    CHECK_THROWS_AS(c2.standard_basis(7), std::invalid_argument);
}

TEST_CASE("truncation is an error, never silent")
{
    AlgebraHandle c1(oriented_cycle(1), {}, 3);
    auto x = Path::arrow(c1.quiver(), 0);
    auto x2 = c1.multiply(x, x);
    REQUIRE(x2);
    CHECK(c1.multiply(*x2, x));
    auto x3 = *c1.multiply(*x2, x);
    CHECK_THROWS_AS(c1.multiply(x3, x), TruncationError);
    try {
        c1.multiply(x3, x);
    } catch (const TruncationError& e) {
        CHECK(e.left() == x3);
        CHECK(e.right() == x);
    }
}

TEST_CASE("non-confluent binomial systems are rejected")
{
    // a*b -> x*y and b*c -> z*w overlap on b: a*b*c reduces to x*y*c and to a*z*w
    Quiver::Builder b;
    for (auto v : {"1", "2", "3", "4", "5", "6"})
        b.add_vertex(v);
    b.add_arrow("x", "1", "5");
    b.add_arrow("y", "5", "3");
    b.add_arrow("z", "2", "6");
    b.add_arrow("w", "6", "4");
    b.add_arrow("a", "1", "2");
    b.add_arrow("b", "2", "3");
    b.add_arrow("c", "3", "4");
    auto q = std::move(b).build();
    auto p = [&](const char* s) { return parse_path(q, s); };
    std::vector<Relation> rels{Relation::binomial(p("a*b"), p("x*y")), Relation::binomial(p("b*c"), p("z*w"))};
    CHECK_THROWS_AS(AlgebraHandle(q, rels, 6), std::invalid_argument);
    CHECK_NOTHROW(AlgebraHandle(q, {rels[0]}, 6));
    CHECK_THROWS_AS(AlgebraHandle(q, {Relation::binomial(p("a*b"), p("a"))}, 6), std::invalid_argument);
}

TEST_CASE("prime field coefficients reduce")
{
    AlgebraHandle c2(oriented_cycle(2), {}, 4, Field::prime(3));
    auto a1 = Path::arrow(c2.quiver(), 0);
    Element x = c2.basis_element(a1);
    Element y = c2.add(c2.add(x, x), x);
    CHECK(y.is_zero());
    CHECK(c2.scale(x, 4) == x);
    Element u = c2.unit();
    CHECK(u.size() == 2);
    CHECK(c2.multiply(u, x) == x);
    CHECK(c2.multiply(x, u) == x);
}

TEST_CASE("element arithmetic")
{
    AlgebraHandle a3(equioriented_a(3), {}, 4);
    auto a1 = Path::arrow(a3.quiver(), 0), a2 = Path::arrow(a3.quiver(), 1);
    Element x = a3.add(a3.basis_element(a1), a3.scale(a3.basis_element(Path::lazy(1)), 2));
    Element y = a3.basis_element(a2);
    Element xy = a3.multiply(x, y);
    CHECK(xy.size() == 2);
    CHECK(xy.coefficient(*a3.multiply(a1, a2)) == 1);
    CHECK(xy.coefficient(a2) == 2);
    CHECK(a3.subtract(x, x).is_zero());
    CHECK(a3.basis_element(a1).as_basis_path() == a1);
    CHECK_FALSE(x.as_basis_path());
    CHECK(a3.to_string(xy) == "2*a2 + a1*a2");
}
