#include <doctest.h>

#include <map>

#include "pflat/flat_decider.hpp"

using namespace pflat;

namespace {

struct Instance {
    std::shared_ptr<const LieAlgebraModel> model;
    Connection canonical;
    Subalgebra sub;
    Connection induced;
    CurvaturePack pack;

    Instance(Field f, int n, const SimpleRootSubset& subset, Structure st)
        : model(build_algebra(f, n)),
          canonical(canonical_connection(model)),
          sub(st == Structure::Parabolic ? parabolic(model, subset)
                                         : solvable_part(model, subset)),
          induced(induced_connection(canonical, sub)),
          pack(induced) {}
};

} // namespace

TEST_CASE("condition system on the borel of sl(2,R)") {
    Instance borel(Field::R, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    QuadraticSystem sys = build_condition_system(borel.induced, borel.pack);
    CHECK(sys.unknowns == 2);
    CHECK(sys.equations.size() == 4);
    CHECK(sys.names[0] == "xi_1");
    CHECK(sys.names[1] == "zeta_12");

    // pair (H,H): -xi^2 + 1/4 = 0
    const MultiPoly& hh = sys.equations[0].poly;
    MultiPoly expect(2);
    expect.add_term({2, 0}, Rational(-1));
    expect.add_term({0, 0}, Rational(1, 4));
    CHECK(hh == expect);

    // antisymmetrized pair equations are the linear bracket constraints:
    // eq(a,b) - eq(b,a) = xi([X_a, X_b])
    for (const auto& eq : sys.equations) {
        for (const auto& other : sys.equations) {
            if (other.a != eq.b || other.b != eq.a) continue;
            MultiPoly diff = eq.poly - other.poly;
            MultiPoly expect_lin(2);
            CoordVec br = borel.induced.carrier().bracket_in(eq.a, eq.b);
            for (int c = 0; c < 2; ++c)
                if (!br[c].is_zero()) expect_lin += MultiPoly::variable(2, c, br[c]);
            CHECK(diff == expect_lin);
        }
    }
}

TEST_CASE("witness verification on the borel") {
    Instance borel(Field::R, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    CHECK(verify_witness(borel.induced, borel.pack, {Rational(-1, 2), Rational()}));
    CHECK(verify_witness(borel.induced, borel.pack, {Rational(1, 2), Rational()}));
    CHECK_FALSE(verify_witness(borel.induced, borel.pack, {Rational(), Rational()}));
}

TEST_CASE("solver finds the borel witnesses by branching") {
    Instance borel(Field::R, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    QuadraticSystem sys = build_condition_system(borel.induced, borel.pack);

    FlatnessVerdict v = solve(sys, borel.induced, borel.pack);
    REQUIRE(v.is_flat());
    CHECK(v.witness[1] == Rational(0));
    CHECK(abs(v.witness[0]) == Rational(1, 2));
    REQUIRE(v.flat_rep.has_value());
    CHECK(v.flat_rep->curvature_is_zero());

    // classification is branch-order independent; the witness may differ
    FlatnessVerdict rev = solve(sys, borel.induced, borel.pack, {8, true});
    CHECK(rev.is_flat());
    CHECK(v.witness[0] == -rev.witness[0]);
}

TEST_CASE("candidate witnesses") {
    // solvable recipe on s_{alpha_3} of sl(4,R): -(1/4)(1, 2, 0, ..., 0)
    Instance s3(Field::R, 4, SimpleRootSubset(4, {3}), Structure::Solvable);
    auto cands = candidate_witnesses(Structure::Solvable, SimpleRootSubset(4, {3}), s3.sub);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0][0] == Rational(-1, 4));
    CHECK(cands[0][1] == Rational(-1, 2));
    for (int i = 2; i < s3.sub.dim(); ++i) CHECK(cands[0][i] == Rational(0));
    CHECK(coordvec_is_zero(cands[1]));
    CHECK(verify_witness(s3.induced, s3.pack, cands[0]));

    // parabolic recipe with i_m != n-1: all -r/n
    auto model6 = build_algebra(Field::R, 6);
    Subalgebra q1 = parabolic(model6, SimpleRootSubset(6, {1}));
    auto qc = candidate_witnesses(Structure::Parabolic, SimpleRootSubset(6, {1}), q1);
    for (int r = 1; r <= 5; ++r)
        CHECK(qc[0][q1.position_of(model6->h_index(r))] == Rational(-r, 6));

    // two-regime recipe: subset {3,5} at n=6 has i_l = 3
    Subalgebra q35 = parabolic(model6, SimpleRootSubset(6, {3, 5}));
    auto qc2 = candidate_witnesses(Structure::Parabolic, SimpleRootSubset(6, {3, 5}), q35);
    CHECK(qc2[0][q35.position_of(model6->h_index(1))] == Rational(-1, 6));
    CHECK(qc2[0][q35.position_of(model6->h_index(2))] == Rational(4, 6));
    CHECK(qc2[0][q35.position_of(model6->h_index(3))] == Rational(3, 6));
    CHECK(qc2[0][q35.position_of(model6->h_index(4))] == Rational(2, 6));
    CHECK(qc2[0][q35.position_of(model6->h_index(5))] == Rational(1, 6));

    // suffix break: subset {1,5} at n=6 has i_l = 5
    Subalgebra q15 = parabolic(model6, SimpleRootSubset(6, {1, 5}));
    auto qc3 = candidate_witnesses(Structure::Parabolic, SimpleRootSubset(6, {1, 5}), q15);
    CHECK(qc3[0][q15.position_of(model6->h_index(3))] == Rational(-3, 6));
    CHECK(qc3[0][q15.position_of(model6->h_index(4))] == Rational(2, 6));
}

TEST_CASE("solver derives the classical contradiction chain at n=6") {
    Instance q(Field::R, 6, SimpleRootSubset(6, {1, 3, 5}), Structure::Parabolic);
    QuadraticSystem sys = build_condition_system(q.induced, q.pack);
    FlatnessVerdict v = solve(sys, q.induced, q.pack);
    REQUIRE(v.is_not_flat());
    REQUIRE_FALSE(v.certificate.empty());

    // The chain forces xi_r = -r/6 for r = 1..5 before the contradiction.
    std::map<std::string, Rational> assigned;
    for (const auto& step : v.certificate)
        if (step.kind == CertStep::Kind::Assign && step.var >= 0)
            assigned.emplace(sys.names[step.var], step.value);
    for (int r = 1; r <= 5; ++r) {
        auto it = assigned.find("xi_" + std::to_string(r));
        REQUIRE(it != assigned.end());
        CHECK(it->second == Rational(-r, 6));
    }
    CHECK(v.certificate.back().kind == CertStep::Kind::ContradictionConst);

    // certificates replay deterministically
    CHECK(replay_certificate(sys, v.certificate));

    // a corrupted certificate does not replay
    auto broken = v.certificate;
    broken.back().value += Rational(1);
    CHECK_FALSE(replay_certificate(sys, broken));
}

TEST_CASE("quaternionic certificates end in a negative square") {
    for (auto [n, subset] : {std::pair<int, SimpleRootSubset>{2, SimpleRootSubset(2, {})},
                             {3, SimpleRootSubset(3, {})},
                             {3, SimpleRootSubset(3, {1})},
                             {3, SimpleRootSubset(3, {2})}}) {
        Instance q(Field::H, n, subset, Structure::Parabolic);
        QuadraticSystem sys = build_condition_system(q.induced, q.pack);
        FlatnessVerdict v = solve(sys, q.induced, q.pack);
        REQUIRE(v.is_not_flat());
        const CertStep& last = v.certificate.back();
        CHECK(last.kind == CertStep::Kind::ContradictionSquare);
        CHECK(last.value.sign() < 0);
        CHECK(replay_certificate(sys, v.certificate));

        // classification is stable under reversed branch order
        FlatnessVerdict rev = solve(sys, q.induced, q.pack, {8, true});
        CHECK(rev.is_not_flat());
    }
}

TEST_CASE("sl(2,H) minimal parabolic certificate names beta_22") {
    Instance q(Field::H, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    QuadraticSystem sys = build_condition_system(q.induced, q.pack);
    FlatnessVerdict v = solve(sys, q.induced, q.pack);
    REQUIRE(v.is_not_flat());
    CHECK(v.certificate.back().text.find("beta_22^2 = -1") != std::string::npos);
}

TEST_CASE("hyperplane oracle") {
    Instance borel(Field::R, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    Representation rep = build_rep_symmetric(borel.induced, borel.pack);

    OracleResult good = hyperplane_oracle(rep, {Rational(-1, 2), Rational()}, 0);
    CHECK(good.mode == OracleResult::Mode::Exact);
    CHECK(good.divisible);

    OracleResult bad = hyperplane_oracle(rep, {Rational(), Rational()}, 0);
    CHECK(bad.mode == OracleResult::Mode::Exact);
    CHECK_FALSE(bad.divisible);

    // probabilistic fallback below the cap threshold
    OracleResult prob = hyperplane_oracle(rep, {Rational(-1, 2), Rational()}, 8, 2);
    CHECK(prob.mode == OracleResult::Mode::Probabilistic);
    CHECK(prob.divisible);
    OracleResult prob_bad = hyperplane_oracle(rep, {Rational(), Rational()}, 8, 2);
    CHECK_FALSE(prob_bad.divisible);
}

TEST_CASE("decide end to end") {
    auto model6 = build_algebra(Field::R, 6);
    Connection canon6 = canonical_connection(model6);

    DecisionReport hard = decide(canon6, SimpleRootSubset(6, {1, 3, 5}), Structure::Parabolic);
    CHECK(hard.verdict.is_not_flat());
    CHECK(hard.autoparallel);
    CHECK(hard.homomorphism);
    CHECK(hard.dynkin == "*-o-*-o-*");

    DecisionReport easy = decide(canon6, SimpleRootSubset(6, {1}), Structure::Parabolic);
    REQUIRE(easy.verdict.is_flat());
    CHECK(easy.oracle_consistent);

    auto model4 = build_algebra(Field::R, 4);
    Connection canon4 = canonical_connection(model4);
    DecisionReport solv = decide(canon4, SimpleRootSubset(4, {3}), Structure::Solvable);
    REQUIRE(solv.verdict.is_flat());
    CHECK(solv.verdict.witness[0] == Rational(-1, 4));
    CHECK(solv.verdict.witness[1] == Rational(-1, 2));
    CHECK(solv.dim == 7);
    CHECK(solv.oracle_mode == OracleResult::Mode::Exact);
    CHECK(solv.oracle_consistent);

    auto modelh = build_algebra(Field::H, 2);
    Connection canonh = canonical_connection(modelh);
    DecisionReport quat = decide(canonh, SimpleRootSubset(2, {}), Structure::Parabolic);
    REQUIRE(quat.verdict.is_not_flat());
    CHECK(quat.verdict.certificate.back().text.find("beta_22^2 = -1") != std::string::npos);

    // agreement with the predicate at small sizes
    for (int n = 3; n <= 5; ++n) {
        auto model = build_algebra(Field::R, n);
        Connection canon = canonical_connection(model);
        for (const auto& subset : all_proper_subsets(n)) {
            DecisionReport r = decide(canon, subset, Structure::Parabolic);
            CHECK(r.verdict.is_not_flat() == parabolic_obstruction(n, subset));
            CHECK(r.verdict.kind != FlatnessVerdict::Kind::Unknown);
            CHECK(r.oracle_consistent);
        }
    }
}

TEST_CASE("condition system requires a symmetric ricci tensor") {
    Instance borel(Field::R, 2, SimpleRootSubset(2, {}), Structure::Parabolic);
    // nabla_Y Y = Y, all other rows zero: asymmetric Ricci.
    std::vector<CoordVec> gamma(4, CoordVec(2));
    gamma[3][1] = Rational(1);
    Connection bent(borel.induced.carrier(), std::move(gamma));
    CurvaturePack pack(bent);
    REQUIRE_FALSE(pack.ricci_symmetric());
    CHECK_THROWS_AS(build_condition_system(bent, pack), RicciNotSymmetric);
    CHECK_THROWS_AS(build_rep_symmetric(bent, pack), RicciNotSymmetric);
    CHECK_FALSE(verify_witness(bent, pack, CoordVec(2)));
}
