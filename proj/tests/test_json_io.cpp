#include "polarlab/cowitt.hpp"
#include "polarlab/json_io.hpp"

#include <doctest.h>

#include <random>

using namespace polarlab;

TEST_CASE("algebra presets and round trips")
{
    const auto j = parse_json(R"({"preset": "truncated_polynomial", "p": 3, "max_degree": 12,
                                  "generators": [{"name": "x", "degree": 2, "height": 3}, {"name": "y", "degree": 4}]})");
    const auto a = algebra_from_json(j);
    CHECK(a == truncated_polynomial({{"x", 2, 3}, {"y", 4, 0}}, 3, 12));
    CHECK(algebra_from_json(to_json(a)) == a);

    const auto t = algebra_from_json(parse_json(R"({"preset": "tensor_product", "factors": [
        {"preset": "exterior", "p": 3, "max_degree": 10, "generators": [{"name": "e", "degree": 3}]},
        {"preset": "dual_of", "p": 3, "max_degree": 10, "generators": [{"name": "x", "degree": 2}]}]})"));
    CHECK(check_algebra(t).ok());
    CHECK(algebra_from_json(to_json(t)) == t);

    const auto q = algebra_from_json(parse_json(R"({"preset": "quotient_monomial_ideal", "p": 2, "max_degree": 8,
        "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}], "monomials": [[1, 1]]})"));
    CHECK(q.module().dim_in_degree(2) == 2);
}

TEST_CASE("explicit algebra schema")
{
    const auto a = algebra_from_json(parse_json(R"({"p": 2, "max_degree": 4,
        "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}, {"name": "x2", "degree": 4}],
        "unit": "1",
        "products": [{"left": "1", "right": "1", "value": [{"coef": 1, "basis": "1"}]},
                     {"left": "1", "right": "x", "value": [{"coef": 1, "basis": "x"}]},
                     {"left": "x", "right": "1", "value": [{"coef": 1, "basis": "x"}]},
                     {"left": "1", "right": "x2", "value": [{"coef": 1, "basis": "x2"}]},
                     {"left": "x2", "right": "1", "value": [{"coef": 1, "basis": "x2"}]},
                     {"left": "x", "right": "x", "value": [{"coef": 3, "basis": "x2"}]}]})"));
    CHECK(check_algebra(a).ok());
    CHECK(a.product(1, 1) == SparseVec{{2, 1}});
}

TEST_CASE("polar, F-module, Dieudonne and Witt round trips")
{
    const auto p = polar_from_json(parse_json(R"({"preset": "free_polar", "p": 3, "max_degree": 54,
                                                  "generators": [{"name": "x", "degree": 2}]})"));
    CHECK(polar_from_json(to_json(p)) == p);
    const auto viaPolarize = polar_from_json(parse_json(R"({"polarize": {"preset": "truncated_polynomial", "p": 2,
        "max_degree": 8, "generators": [{"name": "x", "degree": 1}]}})"));
    CHECK(viaPolarize == polarize(truncated_polynomial({{"x", 1, 0}}, 2, 8)));

    std::mt19937_64 rng(3);
    const auto m = random_fmodule(3, 54, 10, rng);
    const auto back = fmodule_from_json(to_json(m));
    CHECK(back.module == m.module);
    CHECK(rank_profile(back) == rank_profile(m));

    const auto d = cowitt_dieudonne(WittCarrier::from_polar(p), std::nullopt);
    CHECK(dieudonne_from_json(to_json(d)) == d);

    const auto c = WittCarrier::from_polar(p);
    const auto w = witt_vector_from_json(parse_json(R"({"degree": 2, "entries": [{"x": 1}, {"x^3": 2}]})"), p.module());
    check_witt_vector(c, w);
    CHECK(witt_vector_from_json(to_json(w, p.module()), p.module()) == w);
}

TEST_CASE("Hopf presets")
{
    const auto h = hopf_from_json(parse_json(R"({"preset": "lambda_p", "p": 3, "j": 2, "max_degree": 54})"));
    CHECK(h.module().dim_in_degree(54) > 0);
    const auto back = hopf_from_json(to_json(h));
    CHECK(back.algebra() == h.algebra());
    CHECK(back.coproducts() == h.coproducts());
    CHECK(to_json(verify_cofree(h, 54))["passed"] == true);
}

TEST_CASE("diagnostics")
{
    try {
        parse_json("{\"p\": 3,\n  \"max_degree\": }");
        FAIL("expected an error");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("malformed JSON") != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"preset": "nope", "p": 3, "max_degree": 2})")), Error);
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"preset": "exterior", "p": 4, "max_degree": 2,
                                                     "generators": []})")),
                    Error);
    CHECK_THROWS_AS(algebra_from_json(parse_json(R"({"p": 3})")), Error);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), Error);
}
