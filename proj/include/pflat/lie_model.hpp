#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/matrix.hpp"
#include "pflat/quaternion.hpp"
#include "pflat/rational.hpp"

namespace pflat {

enum class Field { R, H };

inline const char* field_tag(Field f) { return f == Field::R ? "r" : "h"; }

/// Coordinates of an element in the canonical basis, dense.
using CoordVec = std::vector<Rational>;

/// Sparse coordinate row: (basis index, coefficient) pairs, index-sorted.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline CoordVec to_dense(const SparseVec& s, int dim) {
    CoordVec v(dim);
    for (const auto& [i, c] : s) v[i] = c;
    return v;
}

inline bool coordvec_is_zero(const CoordVec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

/// One element of the canonical basis of sl(n,R) or sl(n,H):
///   - DiagDual: H(i), the dual basis of the simple roots, 1 <= i <= n-1;
///   - ImagDiag: u·E_tt with u in {i,j,k}           (quaternionic only);
///   - Off:      u·E_ij with i != j, u = 1 over R.
struct BasisElement {
    enum class Kind { DiagDual, ImagDiag, Off };
    Kind kind;
    int i = 0; // H index, or diagonal position t, or row index
    int j = 0; // column index for Off
    QUnit unit = QUnit::One;

    static BasisElement H(int i) { return {Kind::DiagDual, i, 0, QUnit::One}; }
    static BasisElement imag_diag(int t, QUnit u) { return {Kind::ImagDiag, t, 0, u}; }
    static BasisElement off(int i, int j, QUnit u = QUnit::One) { return {Kind::Off, i, j, u}; }

    bool operator==(const BasisElement& o) const {
        return kind == o.kind && i == o.i && j == o.j && unit == o.unit;
    }

    /// Report name: "H1", "E12", "iE23", "jE11". Indices above 9 are
    /// comma-separated to stay unambiguous.
    std::string name() const {
        switch (kind) {
            case Kind::DiagDual: return "H" + std::to_string(i);
            case Kind::ImagDiag:
                return std::string(qunit_prefix(unit)) + "E" + std::to_string(i) +
                       std::to_string(i);
            case Kind::Off: {
                std::string sep = (i > 9 || j > 9) ? "," : "";
                return std::string(qunit_prefix(unit)) + "E" + std::to_string(i) + sep +
                       std::to_string(j);
            }
        }
        return "?";
    }
};

/// H^i = (1/n) diag(n-i, ..., n-i, -i, ..., -i) with the first i entries
/// equal to n-i. Dual to the simple roots: alpha_j(H^i) = delta_ij.
inline MatR dual_basis_H(int n, int i) {
    if (i < 1 || i >= n) throw Error("dual_basis_H index out of range");
    MatR m(n, n);
    for (int t = 0; t < n; ++t)
        m(t, t) = t < i ? Rational(n - i, n) : Rational(-i, n);
    return m;
}

/// Canonical model of sl(n,R) or sl(n,H) as a real Lie algebra: ordered
/// basis, matrix realizations, cached structure constants, and the
/// restricted-root assignment of every basis element.
class LieAlgebraModel {
public:
    LieAlgebraModel(Field field, int n) : field_(field), n_(n) {
        if (n < 2) throw Error("matrix size must be at least 2");
        build_basis();
        build_matrices();
        build_structure_constants();
    }

    Field field() const { return field_; }
    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }

    const std::vector<BasisElement>& basis() const { return basis_; }
    const BasisElement& element(int idx) const { return basis_[idx]; }
    const MatH& matrix(int idx) const { return matrices_[idx]; }
    std::string name(int idx) const { return basis_[idx].name(); }

    int index_of(const BasisElement& e) const {
        for (int k = 0; k < dim(); ++k)
            if (basis_[k] == e) return k;
        throw Error("basis element not found: " + e.name());
    }

    /// Root of a basis element as (i,j) for lambda_i - lambda_j; nullopt for
    /// centralizer elements (H and imaginary diagonals).
    std::optional<std::pair<int, int>> root_of(int idx) const {
        const BasisElement& e = basis_[idx];
        if (e.kind == BasisElement::Kind::Off) return std::make_pair(e.i, e.j);
        return std::nullopt;
    }

    /// Structure constants of [X_a, X_b], sparse in the canonical basis.
    const SparseVec& bracket_sparse(int a, int b) const {
        return brackets_[static_cast<std::size_t>(a) * dim() + b];
    }

    CoordVec bracket(int a, int b) const { return to_dense(bracket_sparse(a, b), dim()); }

    /// Product of the matrix realizations X_a · X_b.
    MatH product(int a, int b) const { return matrices_[a] * matrices_[b]; }

    /// Expand a Re-traceless matrix in the canonical basis. Throws
    /// NotInAlgebra when a nonzero residual remains (e.g. nonzero Re-trace).
    CoordVec coordinates(const MatH& m) const {
        CoordVec coords(dim());
        MatH residual = m;
        // Off-diagonal entries map directly onto the E(i,j,u) elements.
        for (int r = 0; r < n_; ++r) {
            for (int c = 0; c < n_; ++c) {
                if (r == c) continue;
                const Quaternion& q = residual(r, c);
                if (q.is_zero()) continue;
                for (int u = 0; u < 4; ++u) {
                    if (q.comp(u).is_zero()) continue;
                    if (field_ == Field::R && u != 0)
                        throw NotInAlgebra("quaternionic entry in a real model");
                    coords[off_index(r + 1, c + 1, static_cast<QUnit>(u))] = q.comp(u);
                }
                residual(r, c) = Quaternion();
            }
        }
        // Imaginary diagonal parts (quaternionic only).
        for (int t = 0; t < n_; ++t) {
            const Quaternion& q = residual(t, t);
            for (int u = 1; u < 4; ++u) {
                if (q.comp(u).is_zero()) continue;
                if (field_ == Field::R) throw NotInAlgebra("quaternionic entry in a real model");
                coords[imag_index(t + 1, static_cast<QUnit>(u))] = q.comp(u);
            }
            residual(t, t) = Quaternion(q.re());
        }
        // Real diagonal: c_i = alpha_i(D) expands D in the H basis when D is
        // traceless; a nonzero residual certifies the element is outside.
        for (int i = 1; i < n_; ++i) {
            Rational ci = residual(i - 1, i - 1).re() - residual(i, i).re();
            coords[i - 1] = ci;
        }
        for (int i = 1; i < n_; ++i) {
            const MatR h = dual_basis_H(n_, i);
            if (coords[i - 1].is_zero()) continue;
            for (int t = 0; t < n_; ++t)
                residual(t, t) -= Quaternion(coords[i - 1] * h(t, t));
        }
        if (!residual.is_zero()) throw NotInAlgebra("matrix is not in the span of the basis");
        return coords;
    }

    /// Coordinates of an arbitrary linear combination's matrix.
    MatH realize(const CoordVec& coords) const {
        MatH m(n_, n_);
        for (int k = 0; k < dim(); ++k) {
            if (coords[k].is_zero()) continue;
            const MatH& b = matrices_[k];
            for (int r = 0; r < n_; ++r)
                for (int c = 0; c < n_; ++c)
                    if (!b(r, c).is_zero()) m(r, c) += coords[k] * b(r, c);
        }
        return m;
    }

    int off_index(int i, int j, QUnit u) const {
        auto it = off_lookup_.find(std::make_tuple(i, j, static_cast<int>(u)));
        if (it == off_lookup_.end()) throw Error("no such off-diagonal element");
        return it->second;
    }

    int imag_index(int t, QUnit u) const {
        if (field_ == Field::R) throw Error("no imaginary diagonals over R");
        return (n_ - 1) + (t - 1) * 3 + (static_cast<int>(u) - 1);
    }

    int h_index(int i) const { return i - 1; }

private:
    void build_basis() {
        for (int i = 1; i < n_; ++i) basis_.push_back(BasisElement::H(i));
        if (field_ == Field::H)
            for (int t = 1; t <= n_; ++t)
                for (QUnit u : {QUnit::I, QUnit::J, QUnit::K})
                    basis_.push_back(BasisElement::imag_diag(t, u));
        for (int i = 1; i <= n_; ++i) {
            for (int j = 1; j <= n_; ++j) {
                if (i == j) continue;
                if (field_ == Field::R) {
                    basis_.push_back(BasisElement::off(i, j));
                } else {
                    for (QUnit u : {QUnit::One, QUnit::I, QUnit::J, QUnit::K})
                        basis_.push_back(BasisElement::off(i, j, u));
                }
            }
        }
        for (int k = 0; k < dim(); ++k) {
            const BasisElement& e = basis_[k];
            if (e.kind == BasisElement::Kind::Off)
                off_lookup_[std::make_tuple(e.i, e.j, static_cast<int>(e.unit))] = k;
        }
    }

    void build_matrices() {
        matrices_.reserve(basis_.size());
        for (const BasisElement& e : basis_) {
            MatH m(n_, n_);
            switch (e.kind) {
                case BasisElement::Kind::DiagDual: {
                    MatR h = dual_basis_H(n_, e.i);
                    for (int t = 0; t < n_; ++t) m(t, t) = Quaternion(h(t, t));
                    break;
                }
                case BasisElement::Kind::ImagDiag:
                    m(e.i - 1, e.i - 1) = Quaternion::unit(e.unit);
                    break;
                case BasisElement::Kind::Off:
                    m(e.i - 1, e.j - 1) = Quaternion::unit(e.unit);
                    break;
            }
            matrices_.push_back(std::move(m));
        }
    }

    void build_structure_constants() {
        const int m = dim();
        brackets_.resize(static_cast<std::size_t>(m) * m);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                if (a == b) continue;
                if (b < a) {
                    // Antisymmetry: reuse the transposed entry.
                    SparseVec neg;
                    for (const auto& [i, c] : brackets_[static_cast<std::size_t>(b) * m + a])
                        neg.emplace_back(i, -c);
                    brackets_[static_cast<std::size_t>(a) * m + b] = std::move(neg);
                    continue;
                }
                MatH comm = matrices_[a] * matrices_[b] - matrices_[b] * matrices_[a];
                CoordVec coords = coordinates(comm);
                SparseVec sparse;
                for (int i = 0; i < m; ++i)
                    if (!coords[i].is_zero()) sparse.emplace_back(i, coords[i]);
                brackets_[static_cast<std::size_t>(a) * m + b] = std::move(sparse);
            }
        }
    }

    Field field_;
    int n_;
    std::vector<BasisElement> basis_;
    std::vector<MatH> matrices_;
    std::vector<SparseVec> brackets_;
    std::map<std::tuple<int, int, int>, int> off_lookup_;
};

inline std::shared_ptr<const LieAlgebraModel> build_algebra(Field field, int n) {
    return std::make_shared<const LieAlgebraModel>(field, n);
}

/// A subspace of a model spanned by a subsequence of the canonical basis.
/// Bracket closure holds for the subalgebras this toolkit constructs
/// (parabolic, solvable, Langlands a- and n-pieces) and can be checked.
class Subalgebra {
public:
    Subalgebra() = default;
    Subalgebra(std::shared_ptr<const LieAlgebraModel> model, std::vector<int> indices)
        : model_(std::move(model)), indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
        positions_.assign(model_->dim(), -1);
        for (int p = 0; p < dim(); ++p) positions_[indices_[p]] = p;
    }

    static Subalgebra full(std::shared_ptr<const LieAlgebraModel> model) {
        std::vector<int> all(model->dim());
        std::iota(all.begin(), all.end(), 0);
        return Subalgebra(std::move(model), std::move(all));
    }

    const LieAlgebraModel& model() const { return *model_; }
    std::shared_ptr<const LieAlgebraModel> model_ptr() const { return model_; }
    int dim() const { return static_cast<int>(indices_.size()); }
    bool is_full() const { return dim() == model_->dim(); }
    const std::vector<int>& indices() const { return indices_; }
    int parent_index(int pos) const { return indices_[pos]; }
    int position_of(int parent_idx) const { return positions_[parent_idx]; }
    bool contains(int parent_idx) const { return positions_[parent_idx] >= 0; }
    std::string name(int pos) const { return model_->name(indices_[pos]); }

    bool operator==(const Subalgebra& o) const {
        return model_.get() == o.model_.get() && indices_ == o.indices_;
    }

    /// Restrict parent-basis coordinates to subalgebra coordinates; nullopt
    /// when the vector leaves the span.
    std::optional<CoordVec> restrict_coords(const CoordVec& parent_coords) const {
        CoordVec out(dim());
        for (int i = 0; i < model_->dim(); ++i) {
            if (parent_coords[i].is_zero()) continue;
            int p = positions_[i];
            if (p < 0) return std::nullopt;
            out[p] = parent_coords[i];
        }
        return out;
    }

    /// Bracket of two members, in subalgebra coordinates. Throws when the
    /// bracket leaves the span.
    CoordVec bracket_in(int pos_a, int pos_b) const {
        CoordVec out(dim());
        for (const auto& [i, c] : model_->bracket_sparse(indices_[pos_a], indices_[pos_b])) {
            int p = positions_[i];
            if (p < 0) throw Error("bracket leaves the subalgebra span");
            out[p] = c;
        }
        return out;
    }

    bool is_bracket_closed() const {
        for (int a = 0; a < dim(); ++a)
            for (int b = a + 1; b < dim(); ++b)
                for (const auto& [i, c] : model_->bracket_sparse(indices_[a], indices_[b]))
                    if (positions_[i] < 0) return false;
        return true;
    }

private:
    std::shared_ptr<const LieAlgebraModel> model_;
    std::vector<int> indices_;
    std::vector<int> positions_;
};

} // namespace pflat
