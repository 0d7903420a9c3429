#pragma once

#include <utility>
#include <vector>

#include "pflat/connection.hpp"
#include "pflat/errors.hpp"
#include "pflat/matrix.hpp"
#include "pflat/multipoly.hpp"
#include "pflat/poly_det.hpp"

namespace pflat {

enum class RepForm { RicciSymmetric, Traceless, General };

/// Matrix representation of the carrier into gl(m+1, R), one rational
/// (m+1)x(m+1) matrix per basis element. The Ricci-symmetric form is
///   f(X) = [[nabla_X, X], [-gamma(X,.), 0]];
/// the traceless form shifts each image by -(tr nabla_X)/(m+1) times the
/// identity.
struct Representation {
    Subalgebra carrier;
    std::vector<MatR> mats;
    RepForm form = RepForm::General;

    int dim() const { return carrier.dim(); }
    int mat_size() const { return dim() + 1; }
    const MatR& mat(int a) const { return mats[a]; }
};

inline Representation build_rep_symmetric(const Connection& conn, const CurvaturePack& pack) {
    if (!pack.ricci_symmetric())
        throw RicciNotSymmetric("the symmetric representation form needs a symmetric Ricci");
    const int m = conn.dim();
    Representation rep{conn.carrier(), {}, RepForm::RicciSymmetric};
    rep.mats.reserve(m);
    for (int a = 0; a < m; ++a) {
        MatR f(m + 1, m + 1);
        for (int b = 0; b < m; ++b) {
            const CoordVec& col = conn.row(a, b); // coordinates of nabla_{X_a} X_b
            for (int c = 0; c < m; ++c) f(c, b) = col[c];
        }
        f(a, m) = Rational(1); // coordinate column of X_a
        for (int b = 0; b < m; ++b) f(m, b) = -pack.gamma(a, b);
        rep.mats.push_back(std::move(f));
    }
    return rep;
}

inline Representation build_rep_traceless(const Connection& conn, const CurvaturePack& pack) {
    const int m = conn.dim();
    Representation rep{conn.carrier(), {}, RepForm::Traceless};
    rep.mats.reserve(m);
    for (int a = 0; a < m; ++a) {
        MatR f(m + 1, m + 1);
        for (int b = 0; b < m; ++b) {
            const CoordVec& col = conn.row(a, b);
            for (int c = 0; c < m; ++c) f(c, b) = col[c];
        }
        f(a, m) = Rational(1);
        for (int b = 0; b < m; ++b) f(m, b) = -pack.p(a, b);
        Rational shift = conn.op_trace(a) / Rational(m + 1);
        if (!shift.is_zero())
            for (int d = 0; d <= m; ++d) f(d, d) -= shift;
        rep.mats.push_back(std::move(f));
    }
    return rep;
}

/// Traceless projection of an arbitrary representation: subtract
/// (tr f(X))/(m+1) times the identity from every image.
inline Representation traceless_projection(const Representation& rep) {
    Representation out{rep.carrier, rep.mats, RepForm::Traceless};
    const int sz = rep.mat_size();
    for (MatR& f : out.mats) {
        Rational shift = re_trace(f) / Rational(sz);
        if (!shift.is_zero())
            for (int d = 0; d < sz; ++d) f(d, d) -= shift;
    }
    return out;
}

/// [f(X_a), f(X_b)] = f([X_a, X_b]) on all basis pairs.
inline bool verify_homomorphism(const Representation& rep) {
    const int m = rep.dim();
    const int sz = rep.mat_size();
    // Connection-level structure constants restricted to the carrier.
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            MatR lhs = rep.mat(a) * rep.mat(b) - rep.mat(b) * rep.mat(a);
            for (const auto& [i, c] :
                 rep.carrier.model().bracket_sparse(rep.carrier.parent_index(a),
                                                    rep.carrier.parent_index(b))) {
                int p = rep.carrier.position_of(i);
                if (p < 0) return false;
                const MatR& fc = rep.mat(p);
                for (int r = 0; r < sz; ++r)
                    for (int s = 0; s < sz; ++s)
                        if (!fc(r, s).is_zero()) lhs(r, s) -= c * fc(r, s);
            }
            if (!lhs.is_zero()) return false;
        }
    }
    return true;
}

/// The invariant polynomial phi_f(v) = det(f(X_1)v, ..., f(X_m)v, v) in the
/// variables x_1, ..., x_{m+1} (carrier order, with x_{m+1} last).
inline MultiPoly invariant_poly(const Representation& rep,
                                DetStrategy strategy = DetStrategy::Bareiss,
                                int size_cap = kDefaultSymbolicCap) {
    const int sz = rep.mat_size();
    if (sz > size_cap)
        throw SizeCapExceeded("invariant needs " + std::to_string(sz) +
                              " symbolic variables, cap is " + std::to_string(size_cap));
    Mat<MultiPoly> grid(sz, sz, MultiPoly(sz));
    for (int a = 0; a < rep.dim(); ++a) {
        const MatR& f = rep.mat(a);
        for (int r = 0; r < sz; ++r) {
            MultiPoly entry(sz);
            for (int s = 0; s < sz; ++s)
                if (!f(r, s).is_zero()) entry += MultiPoly::variable(sz, s, f(r, s));
            grid(r, a) = std::move(entry);
        }
    }
    for (int r = 0; r < sz; ++r) grid(r, sz - 1) = MultiPoly::variable(sz, r);
    return poly_det(grid, strategy, size_cap);
}

/// Conjugation by Q = [[I, 0], [-xi, 1]]: f -> Q^{-1} f Q with
/// Q^{-1} = [[I, 0], [xi, 1]].
inline Representation conjugate_rep(const Representation& rep, const CoordVec& xi) {
    const int m = rep.dim();
    if (static_cast<int>(xi.size()) != m) throw Error("covector length mismatch");
    const int sz = rep.mat_size();
    MatR q = MatR::identity(sz), qinv = MatR::identity(sz);
    for (int b = 0; b < m; ++b) {
        q(m, b) = -xi[b];
        qinv(m, b) = xi[b];
    }
    Representation out{rep.carrier, {}, RepForm::General};
    out.mats.reserve(m);
    for (int a = 0; a < m; ++a) out.mats.push_back(qinv * (rep.mat(a) * q));
    return out;
}

/// The (2,1) block of each image in the (m|1) block decomposition: an m x m
/// array g1[a][b] = f(X_a)_{m+1, b}. Zero iff the corresponding connection
/// is affinely flat.
inline std::vector<CoordVec> g1_component(const Representation& rep) {
    const int m = rep.dim();
    std::vector<CoordVec> g1(m, CoordVec(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) g1[a][b] = rep.mat(a)(m, b);
    return g1;
}

inline bool g1_is_zero(const Representation& rep) {
    const int m = rep.dim();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (!rep.mat(a)(m, b).is_zero()) return false;
    return true;
}

/// Genericity of v for the extended action: span{f(X_a)v} + R v spans the
/// whole space, i.e. det(f(X_1)v, ..., f(X_m)v, v) != 0.
inline bool pv_genericity(const Representation& rep, const CoordVec& v) {
    const int sz = rep.mat_size();
    if (static_cast<int>(v.size()) != sz) throw Error("point has wrong length");
    MatR p(sz, sz);
    for (int a = 0; a < rep.dim(); ++a) {
        const MatR& f = rep.mat(a);
        for (int r = 0; r < sz; ++r) {
            Rational acc;
            for (int s = 0; s < sz; ++s)
                if (!f(r, s).is_zero() && !v[s].is_zero()) acc += f(r, s) * v[s];
            p(r, a) = acc;
        }
    }
    for (int r = 0; r < sz; ++r) p(r, sz - 1) = v[r];
    return !rational_det(p).is_zero();
}

/// Normalized conjugate at a generic point: f_v = Pbar^{-1} fbar Pbar with
/// Pbar = (fbar(X_1)v, ..., fbar(X_m)v, v). The result satisfies the
/// projective condition f_v(X_a) e_{m+1} = e_a.
inline Representation n_homomorphism(const Representation& rep, const CoordVec& v) {
    if (!pv_genericity(rep, v)) throw NotGeneric("point is not generic for the representation");
    Representation bar = rep.form == RepForm::Traceless ? rep : traceless_projection(rep);
    const int sz = rep.mat_size();
    MatR pbar(sz, sz);
    for (int a = 0; a < rep.dim(); ++a) {
        const MatR& f = bar.mat(a);
        for (int r = 0; r < sz; ++r) {
            Rational acc;
            for (int s = 0; s < sz; ++s)
                if (!f(r, s).is_zero() && !v[s].is_zero()) acc += f(r, s) * v[s];
            pbar(r, a) = acc;
        }
    }
    for (int r = 0; r < sz; ++r) pbar(r, sz - 1) = v[r];
    MatR pinv = rational_inverse(pbar);
    Representation out{rep.carrier, {}, RepForm::General};
    out.mats.reserve(rep.dim());
    for (int a = 0; a < rep.dim(); ++a) out.mats.push_back(pinv * (bar.mat(a) * pbar));
    return out;
}

} // namespace pflat
