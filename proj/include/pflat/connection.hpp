#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/lie_model.hpp"
#include "pflat/parabolic.hpp"

namespace pflat {

/// Left-invariant affine connection on a model or subalgebra, stored as the
/// exact coefficient tensor Gamma^c_{ab}: nabla_{X_a} X_b = sum_c G^c_{ab} X_c.
/// Every connection constructed here is torsion-free:
/// G^c_{ab} - G^c_{ba} = c^c_{ab}.
class Connection {
public:
    Connection(Subalgebra carrier, std::vector<CoordVec> gamma)
        : carrier_(std::move(carrier)), gamma_(std::move(gamma)) {
        build_structure_cache();
    }

    const Subalgebra& carrier() const { return carrier_; }
    int dim() const { return carrier_.dim(); }

    /// Coordinates of nabla_{X_a} X_b in the carrier basis.
    const CoordVec& row(int a, int b) const {
        return gamma_[static_cast<std::size_t>(a) * dim() + b];
    }
    const Rational& coeff(int a, int b, int c) const { return row(a, b)[c]; }

    /// Carrier-restricted structure constants [X_a, X_b], sparse.
    const SparseVec& bracket(int a, int b) const {
        return brackets_[static_cast<std::size_t>(a) * dim() + b];
    }

    /// Operator trace of nabla_{X_a}.
    Rational op_trace(int a) const {
        Rational t;
        for (int c = 0; c < dim(); ++c) t += coeff(a, c, c);
        return t;
    }

    bool is_torsion_free() const {
        const int m = dim();
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                CoordVec expect = to_dense(bracket(a, b), m);
                for (int c = 0; c < m; ++c)
                    if (coeff(a, b, c) - coeff(b, a, c) != expect[c]) return false;
            }
        }
        return true;
    }

    /// Curvature R(X_a, X_b)X_c, computed on demand.
    CoordVec r_tensor(int a, int b, int c) const {
        const int m = dim();
        CoordVec out(m);
        accumulate_composed(out, row(b, c), a, false);
        accumulate_composed(out, row(a, c), b, true);
        for (const auto& [d, coef] : bracket(a, b)) {
            const CoordVec& gdc = row(d, c);
            for (int t = 0; t < m; ++t)
                if (!gdc[t].is_zero()) out[t] -= coef * gdc[t];
        }
        return out;
    }

    /// Single coordinate [R(X_a, X_b)X_c]_t without materializing the vector.
    Rational r_coord(int a, int b, int c, int t) const {
        Rational out;
        const CoordVec& gbc = row(b, c);
        const CoordVec& gac = row(a, c);
        for (int d = 0; d < dim(); ++d) {
            if (!gbc[d].is_zero()) out += gbc[d] * coeff(a, d, t);
            if (!gac[d].is_zero()) out -= gac[d] * coeff(b, d, t);
        }
        for (const auto& [d, coef] : bracket(a, b)) {
            const Rational& g = coeff(d, c, t);
            if (!g.is_zero()) out -= coef * g;
        }
        return out;
    }

    bool curvature_is_zero() const {
        const int m = dim();
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (!coordvec_is_zero(r_tensor(a, b, c))) return false;
        return true;
    }

private:
    // out += (sign ? -1 : +1) * nabla_{X_which}(vec)
    void accumulate_composed(CoordVec& out, const CoordVec& vec, int which, bool negate) const {
        const int m = dim();
        for (int d = 0; d < m; ++d) {
            if (vec[d].is_zero()) continue;
            const CoordVec& g = row(which, d);
            for (int t = 0; t < m; ++t) {
                if (g[t].is_zero()) continue;
                if (negate)
                    out[t] -= vec[d] * g[t];
                else
                    out[t] += vec[d] * g[t];
            }
        }
    }

    void build_structure_cache() {
        const int m = dim();
        brackets_.resize(static_cast<std::size_t>(m) * m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                SparseVec row;
                for (const auto& [i, c] :
                     carrier_.model().bracket_sparse(carrier_.parent_index(a),
                                                     carrier_.parent_index(b))) {
                    int p = carrier_.position_of(i);
                    if (p < 0)
                        throw Error("carrier of a connection must be bracket-closed");
                    row.emplace_back(p, c);
                }
                std::sort(row.begin(), row.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
                brackets_[static_cast<std::size_t>(a) * m + b] = std::move(row);
            }
        }
    }

    Subalgebra carrier_;
    std::vector<CoordVec> gamma_;
    std::vector<SparseVec> brackets_;
};

/// The canonical projectively flat connection
///   nabla_X Y = XY - (Re tr XY / n) I_n
/// on sl(n,R) or sl(n,H), expanded in the canonical basis.
inline Connection canonical_connection(std::shared_ptr<const LieAlgebraModel> model) {
    const int m = model->dim();
    const int n = model->n();
    std::vector<CoordVec> gamma(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            MatH prod = model->product(a, b);
            Rational t = re_trace(prod);
            if (!t.is_zero()) {
                Rational shift = t / Rational(n);
                for (int d = 0; d < n; ++d) prod(d, d) -= Quaternion(shift);
            }
            gamma[static_cast<std::size_t>(a) * m + b] = model->coordinates(prod);
        }
    }
    return Connection(Subalgebra::full(std::move(model)), std::move(gamma));
}

/// True iff nabla_{X_a} X_b stays inside the span of sub for all a, b in sub.
inline bool is_autoparallel(const Connection& conn, const Subalgebra& sub) {
    std::vector<int> pos;
    pos.reserve(sub.dim());
    for (int idx : sub.indices()) {
        int p = conn.carrier().position_of(idx);
        if (p < 0) throw CarrierMismatch("subalgebra is not inside the connection carrier");
        pos.push_back(p);
    }
    std::vector<bool> inside(conn.dim(), false);
    for (int p : pos) inside[p] = true;
    for (int a : pos)
        for (int b : pos) {
            const CoordVec& row = conn.row(a, b);
            for (int c = 0; c < conn.dim(); ++c)
                if (!row[c].is_zero() && !inside[c]) return false;
        }
    return true;
}

/// Restriction of a connection to an autoparallel subalgebra.
inline Connection induced_connection(const Connection& conn, const Subalgebra& sub) {
    if (!is_autoparallel(conn, sub))
        throw NotAutoparallel("subalgebra is not closed under the connection");
    const int ms = sub.dim();
    std::vector<int> pos(ms);
    for (int p = 0; p < ms; ++p) pos[p] = conn.carrier().position_of(sub.parent_index(p));
    std::vector<CoordVec> gamma(static_cast<std::size_t>(ms) * ms, CoordVec(ms));
    for (int a = 0; a < ms; ++a)
        for (int b = 0; b < ms; ++b) {
            const CoordVec& src = conn.row(pos[a], pos[b]);
            CoordVec& dst = gamma[static_cast<std::size_t>(a) * ms + b];
            for (int c = 0; c < ms; ++c) dst[c] = src[pos[c]];
        }
    return Connection(sub, std::move(gamma));
}

/// Flat connection on a graded solvable subalgebra s = a + sum_{k>0} g^k:
///   (a,a) -> 0, (g^i,g^j) -> j/(i+j) [X,Y], (a,n) -> [X,Y], (n,a) -> 0.
/// Torsion-free and curvature-free by construction; both are validated by
/// tests rather than assumed.
inline Connection graded_solvable_connection(const Subalgebra& sub,
                                             const std::vector<int>& member_levels) {
    const int m = sub.dim();
    if (static_cast<int>(member_levels.size()) != m)
        throw GradationInvalid("one level per basis member required");
    for (int lvl : member_levels)
        if (lvl < 0) throw GradationInvalid("levels must be nonnegative");

    auto bracket_checked = [&](int a, int b, int expect_level) {
        CoordVec v = sub.bracket_in(a, b);
        for (int c = 0; c < m; ++c)
            if (!v[c].is_zero() && member_levels[c] != expect_level)
                throw GradationInvalid("bracket violates the gradation");
        return v;
    };

    // Validate: the level-0 part is abelian and the gradation is respected.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (member_levels[a] == 0 && member_levels[b] == 0) {
                if (!coordvec_is_zero(sub.bracket_in(a, b)))
                    throw GradationInvalid("abelian part is not abelian");
            } else {
                bracket_checked(a, b, member_levels[a] + member_levels[b]);
            }
        }

    std::vector<CoordVec> gamma(static_cast<std::size_t>(m) * m, CoordVec(m));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            const int la = member_levels[a], lb = member_levels[b];
            CoordVec& dst = gamma[static_cast<std::size_t>(a) * m + b];
            if (lb == 0) continue; // (a,a) and (n,a) rows vanish
            CoordVec br = sub.bracket_in(a, b);
            Rational factor = la == 0 ? Rational(1) : Rational(lb, la + lb);
            for (int c = 0; c < m; ++c)
                if (!br[c].is_zero()) dst[c] = factor * br[c];
        }
    }
    return Connection(sub, std::move(gamma));
}

/// Convenience: the graded flat connection nabla^{Lambda'} on s_{Lambda'}.
inline Connection graded_solvable_connection(std::shared_ptr<const LieAlgebraModel> model,
                                             const SimpleRootSubset& subset) {
    Subalgebra s = solvable_part(model, subset);
    std::vector<int> z = characteristic_element(subset);
    std::vector<int> levels(s.dim(), 0);
    for (int p = 0; p < s.dim(); ++p) {
        auto root = model->root_of(s.parent_index(p));
        if (root) levels[p] = root_level(z, root->first, root->second);
    }
    return graded_solvable_connection(s, levels);
}

/// All basis pairs where two connections on the same carrier disagree.
struct ConnectionDiff {
    int a, b;
    CoordVec lhs, rhs;
};

inline std::vector<ConnectionDiff> connection_diff(const Connection& c1, const Connection& c2) {
    if (!(c1.carrier() == c2.carrier()))
        throw CarrierMismatch("connection_diff requires a common carrier");
    std::vector<ConnectionDiff> out;
    for (int a = 0; a < c1.dim(); ++a)
        for (int b = 0; b < c1.dim(); ++b)
            if (c1.row(a, b) != c2.row(a, b))
                out.push_back({a, b, c1.row(a, b), c2.row(a, b)});
    return out;
}

/// Projective change by a covector:
///   nabla'_X Y = nabla_X Y - xi(X) Y - xi(Y) X.
/// Torsion-free; the Weyl tensor is unchanged.
inline Connection projective_change(const Connection& conn, const CoordVec& xi) {
    const int m = conn.dim();
    if (static_cast<int>(xi.size()) != m)
        throw Error("covector length must match the carrier dimension");
    std::vector<CoordVec> gamma(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            CoordVec row = conn.row(a, b);
            if (!xi[a].is_zero()) row[b] -= xi[a];
            if (!xi[b].is_zero()) row[a] -= xi[b];
            gamma[static_cast<std::size_t>(a) * m + b] = std::move(row);
        }
    return Connection(conn.carrier(), std::move(gamma));
}

/// Curvature-derived tensors of a connection: Ricci, the projective tensor
/// P, the normalized Ricci tensor gamma (defined when Ricci is symmetric),
/// and Weyl on demand.
///
/// Convention: Ric(X,Y) = trace of Z -> R(Z,X)Y, calibrated so that gamma on
/// the canonical connections equals -Re tr(XY)/n. The calibration is a test,
/// not an assumption; a failing algebra must fail loudly.
class CurvaturePack {
public:
    explicit CurvaturePack(const Connection& conn) : conn_(&conn) {
        const int m = conn.dim();
        ric_.assign(static_cast<std::size_t>(m) * m, Rational());
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                Rational sum;
                for (int a = 0; a < m; ++a) sum += conn.r_coord(a, x, y, a);
                ric_[static_cast<std::size_t>(x) * m + y] = sum;
            }
        p_.assign(static_cast<std::size_t>(m) * m, Rational());
        if (m >= 2) {
            Rational denom = Rational(m) * Rational(m) - Rational(1);
            for (int x = 0; x < m; ++x)
                for (int y = 0; y < m; ++y)
                    p_[static_cast<std::size_t>(x) * m + y] =
                        (Rational(m) * ric(x, y) + ric(y, x)) / denom;
        }
        ricci_symmetric_ = true;
        for (int x = 0; x < m && ricci_symmetric_; ++x)
            for (int y = x + 1; y < m; ++y)
                if (ric(x, y) != ric(y, x)) {
                    ricci_symmetric_ = false;
                    break;
                }
    }

    const Connection& connection() const { return *conn_; }
    int dim() const { return conn_->dim(); }

    const Rational& ric(int x, int y) const {
        return ric_[static_cast<std::size_t>(x) * dim() + y];
    }
    const Rational& p(int x, int y) const { return p_[static_cast<std::size_t>(x) * dim() + y]; }
    bool ricci_symmetric() const { return ricci_symmetric_; }

    /// Normalized Ricci tensor Ric/(m-1); only defined when Ric is symmetric.
    Rational gamma(int x, int y) const {
        if (!ricci_symmetric_) throw RicciNotSymmetric("gamma requires a symmetric Ricci tensor");
        return ric(x, y) / Rational(dim() - 1);
    }

    CoordVec r(int a, int b, int c) const { return conn_->r_tensor(a, b, c); }

    /// Weyl projective curvature
    ///   W(X,Y)Z = R(X,Y)Z + [P(X,Y)-P(Y,X)]Z - [P(Y,Z)X - P(X,Z)Y].
    CoordVec w(int a, int b, int c) const {
        if (dim() < 3) throw DimensionTooSmall("Weyl tensor needs dimension >= 3");
        CoordVec out = conn_->r_tensor(a, b, c);
        Rational skew = p(a, b) - p(b, a);
        if (!skew.is_zero()) out[c] += skew;
        Rational pyz = p(b, c);
        if (!pyz.is_zero()) out[a] -= pyz;
        Rational pxz = p(a, c);
        if (!pxz.is_zero()) out[b] += pxz;
        return out;
    }

    bool weyl_is_zero() const {
        const int m = dim();
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b)
                for (int c = 0; c < m; ++c)
                    if (!coordvec_is_zero(w(a, b, c))) return false;
        return true;
    }

    /// Left-invariant covariant derivative of P:
    ///   (nabla_X P)(Y,Z) = -P(nabla_X Y, Z) - P(Y, nabla_X Z).
    Rational nabla_p(int x, int y, int z) const {
        Rational out;
        const CoordVec& gy = conn_->row(x, y);
        const CoordVec& gz = conn_->row(x, z);
        for (int d = 0; d < dim(); ++d) {
            if (!gy[d].is_zero()) out -= gy[d] * p(d, z);
            if (!gz[d].is_zero()) out -= gz[d] * p(y, d);
        }
        return out;
    }

    /// Codazzi symmetry of P; the projective-flatness criterion in
    /// dimension 2.
    bool codazzi_flat() const {
        if (dim() != 2) throw DimensionTooSmall("Codazzi criterion applies to dimension 2 only");
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z)
                    if (nabla_p(x, y, z) != nabla_p(y, x, z)) return false;
        return true;
    }

    /// Projective flatness by dimension: Weyl for m >= 3, Codazzi for m = 2,
    /// trivially flat for m = 1.
    bool projectively_flat() const {
        if (dim() == 1) return true;
        if (dim() == 2) return codazzi_flat();
        return weyl_is_zero();
    }

private:
    const Connection* conn_;
    std::vector<Rational> ric_, p_;
    bool ricci_symmetric_ = false;
};

inline CurvaturePack analyze_curvature(const Connection& conn) { return CurvaturePack(conn); }

} // namespace pflat
