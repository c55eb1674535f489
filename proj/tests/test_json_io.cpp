#include "catch_amalgamated.hpp"

#include "hyperhet/json_io.hpp"

using namespace hyperhet;
using Catch::Approx;

TEST_CASE("hypergraph round trip", "[json_io]") {
    for (const auto& h : {catalog::field_minimal(), catalog::complete_undirected(4), catalog::uniform_012()}) {
        CHECK(hypergraph_from_json(to_json(h)) == h);
        CHECK(hypergraph_from_json(Json::parse(to_json(h).dump())) == h);
    }
}

TEST_CASE("scheme round trip", "[json_io]") {
    const CouplingScheme s = random_generic_scheme(4, 3, 8);
    std::vector<std::string> warnings;
    const CouplingScheme back = scheme_from_json(Json::parse(to_json(s).dump()), warnings);
    CHECK(warnings.empty());
    CHECK(back.internal == s.internal);
    CHECK(back.by_order == s.by_order);

    const RealizationResult r = realize_gh(catalog::classical_complete(), {-0.3, -7.0 / 30, -7.0 / 15}, false);
    REQUIRE(r.realized);
    const CouplingScheme pe = scheme_from_json(to_json(*r.scheme), warnings);
    CHECK(pe.mode == CouplingScheme::Mode::per_edge);
    CHECK(pe.by_edge == r.scheme->by_edge);
}

TEST_CASE("system documents", "[json_io]") {
    const SystemDocument d = system_from_json(read_json_file(std::string(HYPERHET_FIXTURES) + "/systems/gh_uniform012.json"));
    CHECK(d.hypergraph == catalog::uniform_012());
    const NetworkSystem sys(d.hypergraph, d.scheme);
    CHECK(field_identity(sys.field(), gh_reference_system({-0.3, -7.0 / 30, -7.0 / 15})));
}

TEST_CASE("non-symmetric monomial lists are averaged", "[json_io]") {
    const Json lone = Json::parse(R"([{"exponents": [1, 2, 0], "coeff": 0.6}])");
    bool sym = true;
    const SymmetricPolynomial a = symmetric_from_json(lone, 3, sym);
    CHECK_FALSE(sym);
    CHECK(a.coefficient({1, 2, 0}) == Approx(0.6));

    const Json uneven = Json::parse(R"([{"exponents": [1, 0, 2], "coeff": 0.6}, {"exponents": [1, 2, 0], "coeff": 0.2}])");
    const SymmetricPolynomial b = symmetric_from_json(uneven, 3, sym);
    CHECK(sym);
    CHECK(b.coefficient({1, 2, 0}) == Approx(0.4));

    const Json doc = Json::parse(R"({"internal": [{"exponents": [1], "coeff": 1.0}], "mode": "homogeneous",
        "couplings": [{"order": 3, "terms": [{"exponents": [1, 0, 2], "coeff": 0.6}, {"exponents": [1, 2, 0], "coeff": 0.2}]}]})");
    std::vector<std::string> warnings;
    scheme_from_json(doc, warnings);
    CHECK(warnings.size() == 1);
}

TEST_CASE("malformed documents", "[json_io]") {
    CHECK_THROWS_AS(hypergraph_from_json(Json::parse(R"({"edges": []})")), JsonFormatError);
    CHECK_THROWS_AS(hypergraph_from_json(Json::parse(R"({"n": 3, "edges": [{"tail": [4], "head": [1]}]})")), JsonFormatError);
    CHECK_THROWS_AS(hypergraph_from_json(Json::parse(R"({"n": 3, "edges": [{"tail": "x", "head": [1]}]})")), JsonFormatError);
    CHECK_THROWS_AS(polynomial_from_json(Json::parse(R"([{"exponents": [1, 2], "coeff": 1.0}])"), 1), JsonFormatError);
    std::vector<std::string> w;
    CHECK_THROWS_AS(scheme_from_json(Json::parse(R"({"internal": [], "mode": "mixed", "couplings": []})"), w), JsonFormatError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), JsonFormatError);
}

TEST_CASE("report documents", "[json_io]") {
    const Json census = census_to_json(catalog::field_minimal());
    CHECK(census.at("robust_subspaces").size() == 3);
    CHECK(census.at("full_sync_balanced") == true);
    const Json row = uniform3_row(0, 1, 2);
    CHECK(row.at("feasible") == true);
    const double alpha = row.at("params").at("alpha").get<double>();
    CHECK(row.at("params").at("beta").get<double>() == Approx(-(alpha + 1) / 6));
    const Json bad = uniform3_row(1, 0, 0);
    CHECK(bad.at("feasible") == false);

    const FieldCoefficients c{1, 2, 3, 4, 5, 6, 7, 8, 9};
    const FieldCoefficients back = field_coefficients_from_json(to_json(c));
    CHECK(back.e2 == 9);
    CHECK(back.mu1 == 1);
}
