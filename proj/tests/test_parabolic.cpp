#include <doctest.h>

#include <set>

#include "pflat/parabolic.hpp"

using namespace pflat;

TEST_CASE("subset canonicalization and validation") {
    SimpleRootSubset s(6, {5, 1, 3});
    CHECK(s.indices == std::vector<int>{1, 3, 5});
    CHECK(s.str() == "1,3,5");
    CHECK(s.complement() == std::vector<int>{2, 4});
    CHECK_THROWS_AS(SimpleRootSubset(4, {1, 2, 3}), Error); // full set
    CHECK_THROWS_AS(SimpleRootSubset(4, {1, 1}), Error);    // duplicate
    CHECK_THROWS_AS(SimpleRootSubset(4, {4}), Error);       // out of range
    CHECK(SimpleRootSubset::parse(6, "1,3,5").indices == std::vector<int>{1, 3, 5});
    CHECK(SimpleRootSubset::parse(6, "empty").indices.empty());
    CHECK(all_proper_subsets(6).size() == 31);
    CHECK(all_proper_subsets(2).size() == 1);
}

TEST_CASE("characteristic element") {
    CHECK(characteristic_element(SimpleRootSubset(4, {3})) == std::vector<int>{1, 1, 0});
    CHECK(characteristic_element(SimpleRootSubset(5, {})) == std::vector<int>{1, 1, 1, 1});
    CHECK(characteristic_element(SimpleRootSubset(4, {2, 3})) == std::vector<int>{1, 0, 0});
}

TEST_CASE("gradation levels") {
    auto r4 = build_algebra(Field::R, 4);
    // Z = H1 + H2 for Lambda' = {alpha_3}
    GradedDecomposition g = gradation(*r4, characteristic_element(SimpleRootSubset(4, {3})));
    auto level_set = [&](int k) {
        std::set<std::string> names;
        for (int idx : g.level(k)) names.insert(r4->name(idx));
        return names;
    };
    CHECK(level_set(1) == std::set<std::string>{"E12", "E23", "E24"});
    CHECK(level_set(2) == std::set<std::string>{"E13", "E14"});
    CHECK(level_set(0) == std::set<std::string>{"H1", "H2", "H3", "E34", "E43"});
    CHECK(level_set(-1) == std::set<std::string>{"E21", "E32", "E42"});
    CHECK(level_set(-2) == std::set<std::string>{"E31", "E41"});

    // Empty subset: level = root height
    GradedDecomposition g0 = gradation(*r4, characteristic_element(SimpleRootSubset(4, {})));
    for (int idx = 0; idx < r4->dim(); ++idx) {
        auto root = r4->root_of(idx);
        if (!root) continue;
        int height = root->second - root->first;
        CHECK(root_level(g0.z, root->first, root->second) == height);
    }
}

TEST_CASE("parabolic subalgebras") {
    auto r4 = build_algebra(Field::R, 4);
    Subalgebra q = parabolic(r4, SimpleRootSubset(4, {3}));
    CHECK(q.dim() == 10);
    CHECK(q.is_bracket_closed());

    auto r2 = build_algebra(Field::R, 2);
    Subalgebra borel = parabolic(r2, SimpleRootSubset(2, {}));
    CHECK(borel.dim() == 2);
    CHECK(borel.name(0) == "H1");
    CHECK(borel.name(1) == "E12");
}

TEST_CASE("langlands decomposition for sl(4,R), subset {3}") {
    auto r4 = build_algebra(Field::R, 4);
    SimpleRootSubset subset(4, {3});
    LanglandsDecomposition l = langlands(r4, subset);

    std::set<std::string> a_names, n_names, m_names;
    for (int i = 0; i < l.a_part.dim(); ++i) a_names.insert(l.a_part.name(i));
    for (int i = 0; i < l.n_part.dim(); ++i) n_names.insert(l.n_part.name(i));
    for (int i = 0; i < l.m_part.dim(); ++i) m_names.insert(l.m_part.name(i));
    CHECK(a_names == std::set<std::string>{"H1", "H2"});
    CHECK(n_names == std::set<std::string>{"E12", "E23", "E24", "E13", "E14"});
    CHECK(m_names == std::set<std::string>{"H3", "E34", "E43"});

    Subalgebra s = solvable_part(r4, subset);
    CHECK(s.dim() == 7);
    CHECK(s.is_bracket_closed());

    // m-part of the empty subset over R is empty
    CHECK(langlands(r4, SimpleRootSubset(4, {})).m_part.dim() == 0);
    // ... and over H it is exactly the imaginary diagonals
    auto h2 = build_algebra(Field::H, 2);
    CHECK(langlands(h2, SimpleRootSubset(2, {})).m_part.dim() == 6);
}

TEST_CASE("solvable parts nest inside the iwasawa part") {
    for (int n = 2; n <= 6; ++n) {
        auto model = build_algebra(Field::R, n);
        Subalgebra s0 = solvable_part(model, SimpleRootSubset(n, {}));
        CHECK(s0.dim() == (n - 1) + n * (n - 1) / 2);
        for (const auto& subset : all_proper_subsets(n)) {
            Subalgebra s = solvable_part(model, subset);
            for (int idx : s.indices()) CHECK(s0.contains(idx));
        }
    }
}

TEST_CASE("classification predicate") {
    CHECK(parabolic_obstruction(6, SimpleRootSubset(6, {1, 3, 5})));
    CHECK(parabolic_obstruction(6, SimpleRootSubset(6, {1, 2, 4, 5})));
    CHECK_FALSE(parabolic_obstruction(6, SimpleRootSubset(6, {1})));
    CHECK_FALSE(parabolic_obstruction(6, SimpleRootSubset(6, {})));
    CHECK_FALSE(parabolic_obstruction(6, SimpleRootSubset(6, {1, 4, 5}))); // gap 3
    CHECK_FALSE(parabolic_obstruction(6, SimpleRootSubset(6, {3, 5})));    // misses 1
    CHECK_FALSE(parabolic_obstruction(6, SimpleRootSubset(6, {1, 3})));    // misses n-1

    // Counting oracle: subsets from 1 to n-1 with gaps in {1,2} are the
    // {1,2}-compositions of n-2; drop the full set.
    auto count_by_enumeration = [](int n) {
        int count = 0;
        for (const auto& subset : all_proper_subsets(n))
            if (parabolic_obstruction(n, subset)) ++count;
        return count;
    };
    auto compositions = [](int distance) {
        // c(0) = 1, c(1) = 1, c(d) = c(d-1) + c(d-2)
        int prev = 1, cur = 1;
        for (int d = 2; d <= distance; ++d) {
            int next = cur + prev;
            prev = cur;
            cur = next;
        }
        return distance == 0 ? 1 : cur;
    };
    CHECK(count_by_enumeration(6) == 4);
    CHECK(compositions(4) - 1 == 4);
    CHECK(count_by_enumeration(7) == 7);
    CHECK(compositions(5) - 1 == 7);
    for (int n = 3; n <= 9; ++n) CHECK(count_by_enumeration(n) == compositions(n - 2) - 1);
}

TEST_CASE("dynkin rendering") {
    CHECK(dynkin_render(6, SimpleRootSubset(6, {1, 3, 5})) == "*-o-*-o-*");
    CHECK(dynkin_render(6, SimpleRootSubset(6, {1, 2, 4, 5})) == "*-*-o-*-*");
    CHECK(dynkin_render(6, SimpleRootSubset(6, {})) == "o-o-o-o-o");
    CHECK(dynkin_render(2, SimpleRootSubset(2, {})) == "o");
}
