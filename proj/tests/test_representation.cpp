#include <doctest.h>

#include <random>

#include "pflat/representation.hpp"

using namespace pflat;

namespace {

struct BorelSetup {
    std::shared_ptr<const LieAlgebraModel> model;
    Connection conn;
    CurvaturePack pack;
    BorelSetup()
        : model(build_algebra(Field::R, 2)),
          conn(induced_connection(
              canonical_connection(model),
              Subalgebra(model, {model->h_index(1), model->off_index(1, 2, QUnit::One)}))),
          pack(conn) {}
};

MatR mat3(std::initializer_list<Rational> vals) {
    MatR m(3, 3);
    auto it = vals.begin();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = *it++;
    return m;
}

} // namespace

TEST_CASE("symmetric representation of the borel subalgebra") {
    BorelSetup s;
    Representation rep = build_rep_symmetric(s.conn, s.pack);
    // f(H1) = [[0,0,1],[0,1/2,0],[1/4,0,0]]
    CHECK(rep.mat(0) == mat3({Rational(0), Rational(0), Rational(1),
                              Rational(0), Rational(1, 2), Rational(0),
                              Rational(1, 4), Rational(0), Rational(0)}));
    // f(E12) = [[0,0,0],[-1/2,0,1],[0,0,0]]
    CHECK(rep.mat(1) == mat3({Rational(0), Rational(0), Rational(0),
                              Rational(-1, 2), Rational(0), Rational(1),
                              Rational(0), Rational(0), Rational(0)}));
    CHECK(verify_homomorphism(rep));

    // g1 component of the symmetric form is -gamma
    auto g1 = g1_component(rep);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            CHECK(g1[a][b] == -s.pack.gamma(a, b));
            CHECK(g1[a][b] == g1[b][a]);
        }
}

TEST_CASE("traceless form is the symmetric form shifted by the trace") {
    BorelSetup s;
    Representation sym = build_rep_symmetric(s.conn, s.pack);
    Representation tless = build_rep_traceless(s.conn, s.pack);
    const int sz = sym.mat_size();
    for (int a = 0; a < sym.dim(); ++a) {
        CHECK(re_trace(tless.mat(a)).is_zero());
        Rational shift = s.conn.op_trace(a) / Rational(sz);
        MatR diff = sym.mat(a) - tless.mat(a);
        // difference is a scalar multiple of the identity
        for (int r = 0; r < sz; ++r)
            for (int c = 0; c < sz; ++c)
                CHECK(diff(r, c) == (r == c ? shift : Rational(0)));
        // (2,2)-entry difference is tr(nabla_X)/(m+1)
        CHECK(sym.mat(a)(sz - 1, sz - 1) - tless.mat(a)(sz - 1, sz - 1) == shift);
    }
}

TEST_CASE("homomorphism verification fails on a perturbed representation") {
    BorelSetup s;
    Representation rep = build_rep_symmetric(s.conn, s.pack);
    rep.mats[0](1, 1) += Rational(1);
    CHECK_FALSE(verify_homomorphism(rep));
}

TEST_CASE("homomorphism for canonical connections and induced parabolics") {
    for (auto [f, n] : {std::pair{Field::R, 3}, {Field::R, 4}, {Field::H, 2}}) {
        auto model = build_algebra(f, n);
        Connection conn = canonical_connection(model);
        CurvaturePack pack(conn);
        CHECK(verify_homomorphism(build_rep_symmetric(conn, pack)));
        for (const auto& subset : all_proper_subsets(n)) {
            Subalgebra q = parabolic(model, subset);
            Connection ind = induced_connection(conn, q);
            CurvaturePack qp(ind);
            CHECK(verify_homomorphism(build_rep_symmetric(ind, qp)));
        }
    }
}

TEST_CASE("invariant polynomial of the borel subalgebra") {
    BorelSetup s;
    Representation rep = build_rep_symmetric(s.conn, s.pack);
    MultiPoly phi = invariant_poly(rep);
    // phi = (z - x/2)^2 (z + x/2) in variables (x, y, z) = (x1, x2, x3)
    MultiPoly x = MultiPoly::variable(3, 0);
    MultiPoly z = MultiPoly::variable(3, 2);
    MultiPoly l1 = z - Rational(1, 2) * x;
    MultiPoly l2 = z + Rational(1, 2) * x;
    CHECK(phi == l1 * l1 * l2);
    CHECK(invariant_poly(rep, DetStrategy::MinorExpansion) == phi);
    CHECK_THROWS_AS(invariant_poly(rep, DetStrategy::Bareiss, 2), SizeCapExceeded);

    // trace shifts leave phi unchanged
    Representation shifted = rep;
    for (int a = 0; a < rep.dim(); ++a)
        for (int d = 0; d < 3; ++d) shifted.mats[a](d, d) += Rational(2 - 3 * a, 3);
    CHECK(invariant_poly(shifted) == phi);
}

TEST_CASE("conjugation by Q and the g1 block") {
    BorelSetup s;
    Representation rep = build_rep_symmetric(s.conn, s.pack);
    CHECK(conjugate_rep(rep, CoordVec(2)).mats == rep.mats);

    std::mt19937 rng(77);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    MultiPoly phi = invariant_poly(rep);
    for (int trial = 0; trial < 20; ++trial) {
        CoordVec xi(2);
        for (auto& c : xi) c = Rational(num(rng), den(rng));
        Representation conj = conjugate_rep(rep, xi);

        // g1 of the conjugate at (a,b): xi(nabla_a b) - xi_a xi_b - gamma(a,b)
        auto g1 = g1_component(conj);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Rational expect;
                const CoordVec& row = s.conn.row(a, b);
                for (int c = 0; c < 2; ++c) expect += row[c] * xi[c];
                expect -= xi[a] * xi[b];
                expect -= s.pack.gamma(a, b);
                CHECK(g1[a][b] == expect);
            }

        // phi_{Q^{-1} f Q}(v) = phi_f(Q v)
        MultiPoly repl = MultiPoly::variable(3, 2);
        for (int i = 0; i < 2; ++i)
            if (!xi[i].is_zero()) repl += MultiPoly::variable(3, i, -xi[i]);
        CHECK(invariant_poly(conj) == phi.substitute(2, repl));
    }

    // the flattening witness zeroes the g1 block
    CoordVec witness = {Rational(-1, 2), Rational()};
    CHECK(g1_is_zero(conjugate_rep(rep, witness)));
}

TEST_CASE("rep of an affinely flat connection has zero g1") {
    auto model = build_algebra(Field::R, 4);
    Connection flat = graded_solvable_connection(model, SimpleRootSubset(4, {}));
    CurvaturePack pack(flat);
    REQUIRE(pack.ricci_symmetric());
    Representation rep = build_rep_symmetric(flat, pack);
    CHECK(g1_is_zero(rep));
    CHECK(verify_homomorphism(rep));
}

TEST_CASE("f(E_1n) has the classified shape on solvable parts") {
    auto model = build_algebra(Field::R, 4);
    Connection conn = canonical_connection(model);
    SimpleRootSubset subset(4, {3}); // complement {1, 2}
    Subalgebra s = solvable_part(model, subset);
    Connection ind = induced_connection(conn, s);
    CurvaturePack pack(ind);
    Representation rep = build_rep_symmetric(ind, pack);

    int e14 = s.position_of(model->off_index(1, 4, QUnit::One));
    const MatR& f = rep.mat(e14);
    const int m = s.dim();
    // row of E14 inside the nabla block carries -i_j/n at the H columns
    CHECK(f(e14, s.position_of(model->h_index(1))) == Rational(-1, 4));
    CHECK(f(e14, s.position_of(model->h_index(2))) == Rational(-2, 4));
    // last column is the coordinate vector of E14
    for (int r = 0; r < m; ++r)
        CHECK(f(r, m) == (r == e14 ? Rational(1) : Rational(0)));
    // bottom row (the -gamma row) vanishes: E41 is outside the carrier
    for (int b = 0; b < m; ++b) CHECK(f(m, b) == Rational(0));
}

TEST_CASE("genericity and the normalized conjugate") {
    BorelSetup s;
    Representation rep = build_rep_symmetric(s.conn, s.pack);
    Representation tless = build_rep_traceless(s.conn, s.pack);

    CHECK(pv_genericity(tless, {Rational(0), Rational(0), Rational(1)}));
    CHECK_FALSE(pv_genericity(rep, {Rational(0), Rational(0), Rational(0)}));

    // genericity(v) == (phi(v) != 0) on random points
    MultiPoly phi = invariant_poly(rep);
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    for (int t = 0; t < 40; ++t) {
        CoordVec v = {Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                      Rational(num(rng), den(rng))};
        CHECK(pv_genericity(rep, v) == !phi.eval(v).is_zero());
    }

    // n-homomorphism at v = e3 satisfies the projective condition exactly
    CoordVec e3 = {Rational(0), Rational(0), Rational(1)};
    Representation nh = n_homomorphism(rep, e3);
    for (int a = 0; a < 2; ++a)
        for (int r = 0; r < 3; ++r)
            CHECK(nh.mat(a)(r, 2) == (r == a ? Rational(1) : Rational(0)));
    CHECK(verify_homomorphism(nh));

    // borel rep at v = (0,0,1): the projective condition holds
    Representation nh2 = n_homomorphism(tless, e3);
    for (int a = 0; a < 2; ++a)
        for (int r = 0; r < 2; ++r)
            CHECK(nh2.mat(a)(r, 2) == (r == a ? Rational(1) : Rational(0)));

    CHECK_THROWS_AS(n_homomorphism(rep, CoordVec(3)), NotGeneric);
}
