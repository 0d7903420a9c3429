#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "pflat/errors.hpp"
#include "pflat/lie_model.hpp"

namespace pflat {

/// A proper subset of the simple roots {alpha_1, ..., alpha_{n-1}},
/// canonicalized to strictly increasing indices. The empty set is legal
/// (minimal parabolic); the full set is not.
struct SimpleRootSubset {
    int n = 0;
    std::vector<int> indices;

    SimpleRootSubset(int n_, std::vector<int> idx) : n(n_), indices(std::move(idx)) {
        std::sort(indices.begin(), indices.end());
        if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
            throw Error("duplicate simple-root index");
        for (int i : indices)
            if (i < 1 || i > n - 1) throw Error("simple-root index out of range");
        if (static_cast<int>(indices.size()) == n - 1)
            throw Error("subset must be proper");
    }

    bool contains(int i) const {
        return std::binary_search(indices.begin(), indices.end(), i);
    }

    /// Indices of the complement Lambda \ Lambda', increasing.
    std::vector<int> complement() const {
        std::vector<int> out;
        for (int i = 1; i <= n - 1; ++i)
            if (!contains(i)) out.push_back(i);
        return out;
    }

    std::string str() const {
        if (indices.empty()) return "empty";
        std::string s;
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(indices[k]);
        }
        return s;
    }

    static SimpleRootSubset parse(int n, const std::string& text) {
        if (text == "empty" || text.empty()) return SimpleRootSubset(n, {});
        std::vector<int> idx;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            idx.push_back(std::stoi(text.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return SimpleRootSubset(n, std::move(idx));
    }
};

/// All proper subsets in canonical (bitmask) order: 2^{n-1} - 1 of them.
inline std::vector<SimpleRootSubset> all_proper_subsets(int n) {
    std::vector<SimpleRootSubset> out;
    const int r = n - 1;
    for (int mask = 0; mask < (1 << r) - 1; ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < r; ++i)
            if (mask & (1 << i)) idx.push_back(i + 1);
        out.emplace_back(n, std::move(idx));
    }
    return out;
}

/// Z = H^{i_1} + ... + H^{i_k} over the complement of the subset, as integer
/// coefficients on (H^1, ..., H^{n-1}).
inline std::vector<int> characteristic_element(const SimpleRootSubset& subset) {
    std::vector<int> z(subset.n - 1, 0);
    for (int i : subset.complement()) z[i - 1] = 1;
    return z;
}

/// Level alpha(Z) of the root lambda_i - lambda_j for integer Z-coordinates:
/// the root is sum_{t in [min,max)} (+-alpha_t), so the level counts Z's
/// support inside the index interval.
inline int root_level(const std::vector<int>& z, int i, int j) {
    int lo = std::min(i, j), hi = std::max(i, j);
    int lvl = 0;
    for (int t = lo; t < hi; ++t) lvl += z[t - 1];
    return i < j ? lvl : -lvl;
}

/// Gradation of the model induced by a characteristic element: basis indices
/// grouped by alpha(Z), centralizer elements at level 0.
struct GradedDecomposition {
    std::vector<int> z;
    std::map<int, std::vector<int>> levels;
    std::vector<int> centralizer; // H and imaginary-diagonal indices

    const std::vector<int>& level(int k) const {
        static const std::vector<int> empty;
        auto it = levels.find(k);
        return it == levels.end() ? empty : it->second;
    }
};

inline GradedDecomposition gradation(const LieAlgebraModel& model, std::vector<int> z) {
    for (int c : z)
        if (c < 0) throw Error("characteristic element must be nonnegative");
    GradedDecomposition g;
    g.z = std::move(z);
    for (int idx = 0; idx < model.dim(); ++idx) {
        auto root = model.root_of(idx);
        if (!root) {
            g.centralizer.push_back(idx);
            g.levels[0].push_back(idx);
        } else {
            g.levels[root_level(g.z, root->first, root->second)].push_back(idx);
        }
    }
    return g;
}

/// Parabolic subalgebra q_{Lambda'}: centralizer plus all root spaces of
/// nonnegative level.
inline Subalgebra parabolic(std::shared_ptr<const LieAlgebraModel> model,
                            const SimpleRootSubset& subset) {
    GradedDecomposition g = gradation(*model, characteristic_element(subset));
    std::vector<int> idx;
    for (const auto& [lvl, members] : g.levels)
        if (lvl >= 0) idx.insert(idx.end(), members.begin(), members.end());
    return Subalgebra(std::move(model), std::move(idx));
}

/// Langlands pieces of the parabolic: q = m + a + n with
///   a = <H^i : i in the complement>,
///   n = the positive-level part,
///   m = the rest of level 0.
struct LanglandsDecomposition {
    Subalgebra m_part;
    Subalgebra a_part;
    Subalgebra n_part;
};

inline LanglandsDecomposition langlands(std::shared_ptr<const LieAlgebraModel> model,
                                        const SimpleRootSubset& subset) {
    GradedDecomposition g = gradation(*model, characteristic_element(subset));
    std::vector<int> a_idx, n_idx, m_idx;
    for (int i : subset.complement()) a_idx.push_back(model->h_index(i));
    for (const auto& [lvl, members] : g.levels)
        if (lvl > 0) n_idx.insert(n_idx.end(), members.begin(), members.end());
    for (int idx : g.level(0))
        if (std::find(a_idx.begin(), a_idx.end(), idx) == a_idx.end()) m_idx.push_back(idx);
    return {Subalgebra(model, std::move(m_idx)), Subalgebra(model, std::move(a_idx)),
            Subalgebra(model, std::move(n_idx))};
}

/// Solvable part s_{Lambda'} = a_{Lambda'} + n_{Lambda'}.
inline Subalgebra solvable_part(std::shared_ptr<const LieAlgebraModel> model,
                                const SimpleRootSubset& subset) {
    LanglandsDecomposition l = langlands(model, subset);
    std::vector<int> idx = l.a_part.indices();
    const auto& n_idx = l.n_part.indices();
    idx.insert(idx.end(), n_idx.begin(), n_idx.end());
    return Subalgebra(std::move(model), std::move(idx));
}

/// Classification predicate: true when the induced connection on the
/// parabolic is NOT projectively equivalent to any flat affine connection,
/// i.e. the subset contains 1 and n-1 and consecutive gaps are at most 2.
inline bool parabolic_obstruction(int n, const SimpleRootSubset& subset) {
    const auto& s = subset.indices;
    if (s.empty()) return false;
    if (s.front() != 1 || s.back() != n - 1) return false;
    for (std::size_t r = 0; r + 1 < s.size(); ++r)
        if (s[r + 1] - s[r] > 2) return false;
    return true;
}

/// One-line Dynkin diagram: '*' for marked simple roots, 'o' otherwise.
inline std::string dynkin_render(int n, const SimpleRootSubset& subset) {
    std::string out;
    for (int i = 1; i <= n - 1; ++i) {
        if (i > 1) out += '-';
        out += subset.contains(i) ? '*' : 'o';
    }
    return out;
}

} // namespace pflat
