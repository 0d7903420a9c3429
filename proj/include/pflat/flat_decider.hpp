#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pflat/connection.hpp"
#include "pflat/errors.hpp"
#include "pflat/multipoly.hpp"
#include "pflat/parabolic.hpp"
#include "pflat/representation.hpp"

namespace pflat {

enum class Structure { Parabolic, Solvable };

inline const char* structure_tag(Structure s) {
    return s == Structure::Parabolic ? "parabolic" : "solvable";
}

/// Unknown names follow the classical bookkeeping: xi_r for H-coordinates,
/// beta/gamma/eta_tt for the imaginary diagonals i/j/kE_tt, zeta_* for
/// root-space coordinates.
inline std::string unknown_name(const BasisElement& e) {
    switch (e.kind) {
        case BasisElement::Kind::DiagDual: return "xi_" + std::to_string(e.i);
        case BasisElement::Kind::ImagDiag: {
            const char* stem = e.unit == QUnit::I ? "beta_" : e.unit == QUnit::J ? "gamma_" : "eta_";
            return stem + std::to_string(e.i) + std::to_string(e.i);
        }
        case BasisElement::Kind::Off: {
            std::string sep = (e.i > 9 || e.j > 9) ? "," : "";
            return "zeta_" + std::string(qunit_prefix(e.unit)) + std::to_string(e.i) + sep +
                   std::to_string(e.j);
        }
    }
    return "?";
}

/// The flatness condition system: one equation per ordered basis pair (a,b),
///   xi(nabla_{X_a} X_b) - xi_a xi_b - gamma(X_a, X_b) = 0,
/// i.e. the vanishing of the g1 component of the conjugated representation.
/// Antisymmetrizing eq(a,b) - eq(b,a) recovers the linear consequences
/// xi([X_a, X_b]) = 0; the solver derives those from the pair equations
/// themselves so that certificates keep the classical shape.
struct QuadraticSystem {
    struct Equation {
        int a, b;
        MultiPoly poly;
    };
    int unknowns = 0;
    std::vector<std::string> names;
    std::vector<Equation> equations;
};

inline QuadraticSystem build_condition_system(const Connection& conn, const CurvaturePack& pack) {
    if (!pack.ricci_symmetric())
        throw RicciNotSymmetric("condition system needs a Ricci-symmetric connection");
    const int m = conn.dim();
    QuadraticSystem sys;
    sys.unknowns = m;
    sys.names.reserve(m);
    for (int p = 0; p < m; ++p)
        sys.names.push_back(unknown_name(conn.carrier().model().element(conn.carrier().parent_index(p))));
    sys.equations.reserve(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            MultiPoly p(m);
            const CoordVec& row = conn.row(a, b);
            for (int c = 0; c < m; ++c)
                if (!row[c].is_zero()) p += MultiPoly::variable(m, c, row[c]);
            Monomial quad(m, 0);
            quad[a] += 1;
            quad[b] += 1;
            p.add_term(std::move(quad), Rational(-1));
            Rational g = pack.gamma(a, b);
            if (!g.is_zero()) p += MultiPoly::constant(m, -g);
            sys.equations.push_back({a, b, std::move(p)});
        }
    }
    return sys;
}

/// One derivation step of the propagation solver.
struct CertStep {
    enum class Kind {
        Assign,             // a forced value
        BranchAssign,       // a chosen quadratic root
        BranchFactor,       // assume a factor vanishes (its variable nonzero)
        ContradictionConst, // equation reduced to a nonzero constant
        ContradictionSquare // equation forces a square to equal a negative rational
    };
    Kind kind;
    int eq_a = -1, eq_b = -1;
    int var = -1;
    Rational value; // assigned value, constant, or the negative square value
    std::string text;
};

struct FlatnessVerdict {
    enum class Kind { Flat, NotFlat, Unknown };
    Kind kind;
    CoordVec witness;                   // Flat: verified covector
    std::optional<Connection> flat_rep; // Flat: the verified flat representative
    std::vector<CertStep> certificate;  // NotFlat: canonical derivation path
    std::string reason;                 // Unknown

    bool is_flat() const { return kind == Kind::Flat; }
    bool is_not_flat() const { return kind == Kind::NotFlat; }
};

inline const char* verdict_tag(const FlatnessVerdict& v) {
    switch (v.kind) {
        case FlatnessVerdict::Kind::Flat: return "flat";
        case FlatnessVerdict::Kind::NotFlat: return "not_flat";
        case FlatnessVerdict::Kind::Unknown: return "unknown";
    }
    return "?";
}

/// Exact witness verification: every pair equation holds at xi and the
/// projective change by xi has vanishing curvature and torsion. The second
/// half re-derives flatness independently of the equation bookkeeping.
inline bool verify_witness(const Connection& conn, const CurvaturePack& pack, const CoordVec& xi) {
    const int m = conn.dim();
    if (static_cast<int>(xi.size()) != m) return false;
    if (!pack.ricci_symmetric()) return false;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            Rational lhs;
            const CoordVec& row = conn.row(a, b);
            for (int c = 0; c < m; ++c)
                if (!row[c].is_zero() && !xi[c].is_zero()) lhs += row[c] * xi[c];
            lhs -= xi[a] * xi[b];
            lhs -= pack.gamma(a, b);
            if (!lhs.is_zero()) return false;
        }
    }
    Connection changed = projective_change(conn, xi);
    return changed.is_torsion_free() && changed.curvature_is_zero();
}

/// Candidate witnesses from the closed-form recipes.
///   solvable s_{Lambda'}: xi(H^{i_j}) = -i_j/n on the abelian coordinates,
///   where {i_1 < ... < i_k} is the complement of Lambda'.
///   parabolic q_{Lambda'}: xi_r = -r/n for r <= i_l - 2 and (n-r)/n beyond,
///   where i_l = n+1 unless the subset reaches n-1, in which case i_l starts
///   the maximal suffix with consecutive gaps <= 2 (the subset's last member
///   when no longer suffix qualifies).
inline std::vector<CoordVec> candidate_witnesses(Structure structure,
                                                 const SimpleRootSubset& subset,
                                                 const Subalgebra& carrier) {
    const int n = subset.n;
    const LieAlgebraModel& model = carrier.model();
    std::vector<CoordVec> out;

    CoordVec recipe(carrier.dim());
    if (structure == Structure::Solvable) {
        for (int i : subset.complement()) {
            int pos = carrier.position_of(model.h_index(i));
            if (pos >= 0) recipe[pos] = Rational(-i, n);
        }
    } else {
        const auto& s = subset.indices;
        int i_l = n + 1;
        if (!s.empty() && s.back() == n - 1) {
            i_l = s.back();
            for (int t = static_cast<int>(s.size()) - 1; t-- > 0;) {
                if (s[t + 1] - s[t] <= 2)
                    i_l = s[t];
                else
                    break;
            }
        }
        for (int r = 1; r <= n - 1; ++r) {
            int pos = carrier.position_of(model.h_index(r));
            if (pos < 0) continue;
            recipe[pos] = r <= i_l - 2 ? Rational(-r, n) : Rational(n - r, n);
        }
    }
    out.push_back(std::move(recipe));
    out.emplace_back(carrier.dim()); // the zero covector
    return out;
}

struct SolveOptions {
    int branch_depth = 8;
    bool reverse_branches = false;
};

namespace detail {

/// Category of one reduced equation.
struct EqInfo {
    enum class Cat { Zero, NonzeroConst, SingleVar, Product, Blocked } cat;
    int var = -1;
    Rational a2, a1, a0; // SingleVar: a2 u^2 + a1 u + a0
    MultiPoly quotient;  // Product: poly = x_var * quotient
};

inline EqInfo analyze_equation(const MultiPoly& p) {
    EqInfo info;
    if (p.is_zero()) {
        info.cat = EqInfo::Cat::Zero;
        return info;
    }
    std::vector<int> vars = p.support_vars();
    if (vars.empty()) {
        info.cat = EqInfo::Cat::NonzeroConst;
        info.a0 = p.constant_term();
        return info;
    }
    if (vars.size() == 1) {
        info.cat = EqInfo::Cat::SingleVar;
        info.var = vars[0];
        for (const auto& [mono, c] : p.terms()) {
            int e = mono[info.var];
            if (e == 0) info.a0 = c;
            else if (e == 1) info.a1 = c;
            else if (e == 2) info.a2 = c;
            else throw Error("equation degree exceeds 2");
        }
        return info;
    }
    // Product form x_u * (linear): some variable divides every monomial.
    for (int u : vars) {
        bool divides_all = true;
        for (const auto& [mono, c] : p.terms())
            if (mono[u] == 0) {
                divides_all = false;
                break;
            }
        if (divides_all) {
            MultiPoly q(p.nvars());
            for (const auto& [mono, c] : p.terms()) {
                Monomial reduced = mono;
                reduced[u] -= 1;
                q.add_term(std::move(reduced), c);
            }
            info.cat = EqInfo::Cat::Product;
            info.var = u;
            info.quotient = std::move(q);
            return info;
        }
    }
    info.cat = EqInfo::Cat::Blocked;
    return info;
}

struct SolveState {
    std::vector<MultiPoly> eqs;
    std::vector<char> done;
    std::vector<std::uint64_t> var_mask;
    std::vector<std::optional<Rational>> assign;
    std::vector<CertStep> steps;
};

inline std::uint64_t mask_of(const MultiPoly& p) {
    std::uint64_t m = 0;
    for (int v : p.support_vars()) m |= std::uint64_t(1) << v;
    return m;
}

} // namespace detail

/// Constraint-propagation solver for the quadratic witness system.
///
/// Deterministic actions (applied in canonical equation order until
/// exhaustion): drop identically-zero equations; a nonzero constant is a
/// contradiction; a single-unknown equation is solved exactly, where a
/// negative discriminant certifies a square equal to a negative rational.
/// When blocked, the solver branches: the roots of a two-root quadratic are
/// explored in descending order, and for a factored equation u*(...) = 0
/// the nonzero-u branch precedes u = 0 (so the classical chain is the
/// final path). On full satisfaction, free unknowns default to zero and the
/// candidate is re-verified; a failed verification makes the leaf
/// inconclusive rather than Flat.
class FlatnessSolver {
public:
    FlatnessSolver(const QuadraticSystem& sys, const Connection& conn, const CurvaturePack& pack,
                   SolveOptions opts)
        : sys_(sys), conn_(conn), pack_(pack), opts_(opts) {
        if (sys.unknowns > 64) throw Error("solver limited to 64 unknowns");
    }

    FlatnessVerdict run() {
        detail::SolveState st;
        st.eqs.reserve(sys_.equations.size());
        for (const auto& e : sys_.equations) st.eqs.push_back(e.poly);
        st.done.assign(sys_.equations.size(), 0);
        st.var_mask.reserve(sys_.equations.size());
        for (const auto& p : st.eqs) st.var_mask.push_back(detail::mask_of(p));
        st.assign.assign(sys_.unknowns, std::nullopt);

        Outcome out = explore(st, 0);
        switch (out) {
            case Outcome::Flat: {
                FlatnessVerdict v{FlatnessVerdict::Kind::Flat, flat_witness_, std::nullopt, {}, ""};
                v.flat_rep = projective_change(conn_, flat_witness_);
                return v;
            }
            case Outcome::Contradiction:
                return {FlatnessVerdict::Kind::NotFlat, {}, std::nullopt, last_contradiction_path_,
                        ""};
            case Outcome::Inconclusive:
                return {FlatnessVerdict::Kind::Unknown, {}, std::nullopt, {}, unknown_reason_};
        }
        throw Error("unreachable");
    }

private:
    enum class Outcome { Flat, Contradiction, Inconclusive };

    std::string eq_label(std::size_t e) const {
        const auto& eq = sys_.equations[e];
        const Subalgebra& car = conn_.carrier();
        return "eq(" + car.name(eq.a) + "," + car.name(eq.b) + ")";
    }

    void substitute(detail::SolveState& st, int var, const Rational& value) {
        st.assign[var] = value;
        const std::uint64_t bit = std::uint64_t(1) << var;
        for (std::size_t e = 0; e < st.eqs.size(); ++e) {
            if (st.done[e] || !(st.var_mask[e] & bit)) continue;
            st.eqs[e] = st.eqs[e].substitute(var, value);
            st.var_mask[e] = detail::mask_of(st.eqs[e]);
        }
    }

    void record_assign(detail::SolveState& st, std::size_t e, int var, const Rational& value,
                       CertStep::Kind kind) {
        CertStep step;
        step.kind = kind;
        step.eq_a = sys_.equations[e].a;
        step.eq_b = sys_.equations[e].b;
        step.var = var;
        step.value = value;
        step.text = eq_label(e) + ": " + sys_.names[var] + " = " + value.str() +
                    (kind == CertStep::Kind::BranchAssign ? " (branch)" : "");
        st.steps.push_back(std::move(step));
        substitute(st, var, value);
    }

    void record_contradiction(detail::SolveState& st, std::size_t e, const detail::EqInfo& info) {
        CertStep step;
        step.eq_a = sys_.equations[e].a;
        step.eq_b = sys_.equations[e].b;
        if (info.cat == detail::EqInfo::Cat::NonzeroConst) {
            step.kind = CertStep::Kind::ContradictionConst;
            step.value = info.a0;
            step.text = eq_label(e) + ": reduces to " + info.a0.str() + " = 0, contradiction";
        } else {
            // a2 u^2 + a1 u + a0 with negative discriminant. Completing the
            // square exposes the negative right-hand side.
            step.kind = CertStep::Kind::ContradictionSquare;
            step.var = info.var;
            if (info.a1.is_zero()) {
                step.value = -info.a0 / info.a2;
                step.text = eq_label(e) + ": " + sys_.names[info.var] + "^2 = " +
                            step.value.str() + ", no real solution";
            } else {
                Rational shift = info.a1 / (Rational(2) * info.a2);
                Rational rhs = (info.a1 * info.a1 - Rational(4) * info.a2 * info.a0) /
                               (Rational(4) * info.a2 * info.a2);
                step.value = rhs;
                step.text = eq_label(e) + ": (" + sys_.names[info.var] + " + " + shift.str() +
                            ")^2 = " + rhs.str() + ", no real solution";
            }
        }
        st.steps.push_back(step);
        last_contradiction_path_ = st.steps;
    }

    /// Apply deterministic steps until exhaustion. Returns true when a
    /// contradiction closed this path.
    bool propagate(detail::SolveState& st) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t e = 0; e < st.eqs.size(); ++e) {
                if (st.done[e]) continue;
                detail::EqInfo info = detail::analyze_equation(st.eqs[e]);
                switch (info.cat) {
                    case detail::EqInfo::Cat::Zero:
                        st.done[e] = 1;
                        break;
                    case detail::EqInfo::Cat::NonzeroConst:
                        record_contradiction(st, e, info);
                        return true;
                    case detail::EqInfo::Cat::SingleVar: {
                        if (info.a2.is_zero()) {
                            record_assign(st, e, info.var, -info.a0 / info.a1,
                                          CertStep::Kind::Assign);
                            st.done[e] = 1;
                            progress = true;
                            break;
                        }
                        Rational disc = info.a1 * info.a1 - Rational(4) * info.a2 * info.a0;
                        if (disc.sign() < 0) {
                            record_contradiction(st, e, info);
                            return true;
                        }
                        if (disc.is_zero()) {
                            record_assign(st, e, info.var,
                                          -info.a1 / (Rational(2) * info.a2),
                                          CertStep::Kind::Assign);
                            st.done[e] = 1;
                            progress = true;
                        }
                        // Two-root case waits for the branch phase.
                        break;
                    }
                    case detail::EqInfo::Cat::Product:
                    case detail::EqInfo::Cat::Blocked:
                        break;
                }
            }
        }
        return false;
    }

    Outcome explore(detail::SolveState st, int depth) {
        if (propagate(st)) return Outcome::Contradiction;

        // Branch selection: first equation offering rational alternatives.
        std::optional<std::size_t> branch_eq;
        detail::EqInfo branch_info;
        bool saw_unresolved = false;
        for (std::size_t e = 0; e < st.eqs.size(); ++e) {
            if (st.done[e]) continue;
            detail::EqInfo info = detail::analyze_equation(st.eqs[e]);
            if (info.cat == detail::EqInfo::Cat::SingleVar && !info.a2.is_zero()) {
                Rational disc = info.a1 * info.a1 - Rational(4) * info.a2 * info.a0;
                Rational root;
                if (rational_sqrt(disc, root)) {
                    branch_eq = e;
                    branch_info = info;
                    branch_info.a0 = root; // stash sqrt(disc)
                    break;
                }
                saw_unresolved = true;
            } else if (info.cat == detail::EqInfo::Cat::Product) {
                branch_eq = e;
                branch_info = info;
                break;
            } else if (info.cat != detail::EqInfo::Cat::Zero) {
                saw_unresolved = true;
            }
        }

        if (!branch_eq) {
            if (saw_unresolved) {
                unknown_reason_ = "propagation blocked on equations outside the solvable patterns";
                return Outcome::Inconclusive;
            }
            // Fully satisfied: zero-fill the free unknowns and re-verify.
            CoordVec xi(sys_.unknowns);
            for (int v = 0; v < sys_.unknowns; ++v)
                if (st.assign[v]) xi[v] = *st.assign[v];
            if (verify_witness(conn_, pack_, xi)) {
                flat_witness_ = std::move(xi);
                return Outcome::Flat;
            }
            unknown_reason_ = "zero-filled solution failed re-verification";
            return Outcome::Inconclusive;
        }

        if (depth >= opts_.branch_depth) {
            unknown_reason_ = "branch depth limit reached";
            return Outcome::Inconclusive;
        }

        bool any_inconclusive = false;
        auto run_child = [&](const std::function<void(detail::SolveState&)>& apply) -> Outcome {
            detail::SolveState child = st;
            apply(child);
            return explore(std::move(child), depth + 1);
        };

        std::vector<std::function<void(detail::SolveState&)>> alts;
        const std::size_t e = *branch_eq;
        if (branch_info.cat == detail::EqInfo::Cat::SingleVar) {
            const Rational sq = branch_info.a0; // sqrt(disc), stashed above
            Rational two_a2 = Rational(2) * branch_info.a2;
            Rational r1 = (-branch_info.a1 + sq) / two_a2;
            Rational r2 = (-branch_info.a1 - sq) / two_a2;
            if (r2 > r1) std::swap(r1, r2); // descending
            if (opts_.reverse_branches) std::swap(r1, r2);
            for (const Rational& root : {r1, r2})
                alts.push_back([this, e, root, var = branch_info.var](detail::SolveState& s) {
                    record_assign(s, e, var, root, CertStep::Kind::BranchAssign);
                    s.done[e] = 1;
                });
        } else {
            // poly = x_var * quotient: assume the cofactor vanishes first
            // (x_var free to be nonzero), then the x_var = 0 chain.
            auto factor_branch = [this, e, q = branch_info.quotient](detail::SolveState& s) {
                CertStep step;
                step.kind = CertStep::Kind::BranchFactor;
                step.eq_a = sys_.equations[e].a;
                step.eq_b = sys_.equations[e].b;
                step.var = branch_var_of(e, s);
                step.text = eq_label(e) + ": branch assuming cofactor vanishes";
                s.steps.push_back(std::move(step));
                s.eqs[e] = q;
                s.var_mask[e] = detail::mask_of(q);
            };
            auto zero_branch = [this, e, var = branch_info.var](detail::SolveState& s) {
                record_assign(s, e, var, Rational(), CertStep::Kind::BranchAssign);
                s.done[e] = 1;
            };
            if (opts_.reverse_branches) {
                alts.push_back(zero_branch);
                alts.push_back(factor_branch);
            } else {
                alts.push_back(factor_branch);
                alts.push_back(zero_branch);
            }
        }

        for (const auto& choice : alts) {
            Outcome out = run_child(choice);
            if (out == Outcome::Flat) return out;
            if (out == Outcome::Inconclusive) any_inconclusive = true;
        }
        return any_inconclusive ? Outcome::Inconclusive : Outcome::Contradiction;
    }

    int branch_var_of(std::size_t e, const detail::SolveState& st) const {
        detail::EqInfo info = detail::analyze_equation(st.eqs[e]);
        return info.var;
    }

    const QuadraticSystem& sys_;
    const Connection& conn_;
    const CurvaturePack& pack_;
    SolveOptions opts_;
    CoordVec flat_witness_;
    std::vector<CertStep> last_contradiction_path_;
    std::string unknown_reason_;
};

inline FlatnessVerdict solve(const QuadraticSystem& sys, const Connection& conn,
                             const CurvaturePack& pack, SolveOptions opts = {}) {
    return FlatnessSolver(sys, conn, pack, opts).run();
}

/// Replay a NotFlat certificate against a fresh copy of the system: apply
/// its substitutions in order and confirm the final step's contradiction
/// reappears exactly.
inline bool replay_certificate(const QuadraticSystem& sys, const std::vector<CertStep>& cert) {
    if (cert.empty()) return false;
    std::vector<MultiPoly> eqs;
    eqs.reserve(sys.equations.size());
    for (const auto& e : sys.equations) eqs.push_back(e.poly);
    auto find_eq = [&](int a, int b) -> int {
        for (std::size_t e = 0; e < sys.equations.size(); ++e)
            if (sys.equations[e].a == a && sys.equations[e].b == b) return static_cast<int>(e);
        return -1;
    };
    for (std::size_t s = 0; s + 1 < cert.size(); ++s) {
        const CertStep& step = cert[s];
        switch (step.kind) {
            case CertStep::Kind::Assign:
            case CertStep::Kind::BranchAssign:
                for (auto& p : eqs) p = p.substitute(step.var, step.value);
                break;
            case CertStep::Kind::BranchFactor: {
                int e = find_eq(step.eq_a, step.eq_b);
                if (e < 0) return false;
                detail::EqInfo info = detail::analyze_equation(eqs[e]);
                if (info.cat != detail::EqInfo::Cat::Product) return false;
                eqs[e] = info.quotient;
                break;
            }
            default:
                return false; // contradictions may only terminate the path
        }
    }
    const CertStep& last = cert.back();
    int e = find_eq(last.eq_a, last.eq_b);
    if (e < 0) return false;
    detail::EqInfo info = detail::analyze_equation(eqs[e]);
    if (last.kind == CertStep::Kind::ContradictionConst)
        return info.cat == detail::EqInfo::Cat::NonzeroConst && info.a0 == last.value;
    if (last.kind == CertStep::Kind::ContradictionSquare) {
        if (info.cat != detail::EqInfo::Cat::SingleVar || info.a2.is_zero()) return false;
        Rational disc = info.a1 * info.a1 - Rational(4) * info.a2 * info.a0;
        if (disc.sign() >= 0) return false;
        if (info.a1.is_zero()) return (-info.a0 / info.a2) == last.value;
        Rational rhs = disc / (Rational(4) * info.a2 * info.a2);
        return rhs == last.value;
    }
    return false;
}

/// Linear-factor cross-check of a witness: does (xi . x + x_{m+1}) divide
/// the invariant polynomial? Exact below the symbolic cap, probabilistic
/// sampling on the hyperplane beyond it.
struct OracleResult {
    enum class Mode { Exact, Probabilistic, Skipped };
    bool divisible = false;
    Mode mode = Mode::Skipped;
};

inline const char* oracle_mode_tag(OracleResult::Mode m) {
    switch (m) {
        case OracleResult::Mode::Exact: return "exact";
        case OracleResult::Mode::Probabilistic: return "probabilistic";
        case OracleResult::Mode::Skipped: return "skipped";
    }
    return "?";
}

/// Largest symbolic size the decision pipeline will compute exactly; the
/// memoized expansion stays fast up to here, and the probabilistic sampler
/// takes over beyond it.
inline constexpr int kExactOracleBound = 12;

inline OracleResult hyperplane_oracle(const Representation& rep, const CoordVec& xi, int trials,
                                      int symbolic_cap = kDefaultSymbolicCap,
                                      unsigned seed = 12345) {
    const int m = rep.dim();
    const int sz = rep.mat_size();
    OracleResult res;
    if (sz <= symbolic_cap) {
        // Minor expansion multiplies large minors only by linear entries,
        // which keeps the intermediates small on these structured matrices.
        MultiPoly phi = invariant_poly(rep, DetStrategy::MinorExpansion, symbolic_cap);
        MultiPoly repl(sz);
        for (int i = 0; i < m; ++i)
            if (!xi[i].is_zero()) repl += MultiPoly::variable(sz, i, -xi[i]);
        res.divisible = phi.substitute(sz - 1, repl).is_zero();
        res.mode = OracleResult::Mode::Exact;
        return res;
    }
    if (trials <= 0) return res;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    res.mode = OracleResult::Mode::Probabilistic;
    res.divisible = true;
    for (int t = 0; t < trials; ++t) {
        CoordVec v(sz);
        Rational last;
        for (int i = 0; i < m; ++i) {
            v[i] = Rational(num(rng), den(rng));
            last -= xi[i] * v[i];
        }
        v[sz - 1] = last;
        MatR p(sz, sz);
        for (int a = 0; a < m; ++a) {
            const MatR& f = rep.mat(a);
            for (int r = 0; r < sz; ++r) {
                Rational acc;
                for (int s = 0; s < sz; ++s)
                    if (!f(r, s).is_zero() && !v[s].is_zero()) acc += f(r, s) * v[s];
                p(r, a) = acc;
            }
        }
        for (int r = 0; r < sz; ++r) p(r, sz - 1) = v[r];
        if (!rational_det(p).is_zero()) {
            res.divisible = false;
            break;
        }
    }
    return res;
}

struct DecideOptions {
    int symbolic_cap = kDefaultSymbolicCap;
    int branch_depth = 8;
    bool reverse_branches = false;
    int oracle_trials = 5;
    unsigned seed = 12345;
};

/// Full decision record for one (field, n, subset, structure) instance.
struct DecisionReport {
    Field field;
    int n = 0;
    SimpleRootSubset subset{2, {}};
    Structure structure = Structure::Parabolic;
    int dim = 0;
    FlatnessVerdict verdict{FlatnessVerdict::Kind::Unknown, {}, std::nullopt, {}, ""};
    bool autoparallel = false;
    bool homomorphism = false;
    OracleResult::Mode oracle_mode = OracleResult::Mode::Skipped;
    bool oracle_consistent = true;
    std::string dynkin;
};

/// Decide whether the projective class of the induced connection on the
/// parabolic or solvable subalgebra contains a flat affine connection:
/// build, check autoparallelity, induce, try the recipe witnesses, then the
/// propagation solver, then cross-check by the invariant-factor oracle.
inline DecisionReport decide(const Connection& canonical, const SimpleRootSubset& subset,
                             Structure structure, const DecideOptions& opts = {}) {
    auto model = canonical.carrier().model_ptr();
    DecisionReport rep;
    rep.field = model->field();
    rep.n = model->n();
    rep.subset = subset;
    rep.structure = structure;
    rep.dynkin = dynkin_render(subset.n, subset);

    Subalgebra sub = structure == Structure::Parabolic ? parabolic(model, subset)
                                                       : solvable_part(model, subset);
    rep.dim = sub.dim();
    rep.autoparallel = is_autoparallel(canonical, sub);
    if (!rep.autoparallel) throw NotAutoparallel("construction is unexpectedly not autoparallel");

    Connection induced = induced_connection(canonical, sub);
    CurvaturePack pack(induced);
    Representation frep = build_rep_symmetric(induced, pack);
    rep.homomorphism = verify_homomorphism(frep);

    std::vector<CoordVec> candidates = candidate_witnesses(structure, subset, sub);
    FlatnessVerdict verdict{FlatnessVerdict::Kind::Unknown, {}, std::nullopt, {}, "unprocessed"};
    bool decided = false;
    for (const CoordVec& xi : candidates) {
        if (verify_witness(induced, pack, xi)) {
            verdict = {FlatnessVerdict::Kind::Flat, xi, projective_change(induced, xi), {}, ""};
            decided = true;
            break;
        }
    }
    if (!decided) {
        QuadraticSystem sys = build_condition_system(induced, pack);
        verdict = solve(sys, induced, pack, {opts.branch_depth, opts.reverse_branches});
    }

    // Invariant-polynomial cross-check.
    const int oracle_cap = std::min(opts.symbolic_cap, kExactOracleBound);
    if (verdict.is_flat()) {
        OracleResult oracle =
            hyperplane_oracle(frep, verdict.witness, opts.oracle_trials, oracle_cap, opts.seed);
        rep.oracle_mode = oracle.mode;
        if (oracle.mode != OracleResult::Mode::Skipped) rep.oracle_consistent = oracle.divisible;
    } else if (verdict.is_not_flat() && sub.dim() + 1 <= oracle_cap) {
        // No candidate hyperplane may divide the invariant of a NotFlat case.
        rep.oracle_mode = OracleResult::Mode::Exact;
        for (const CoordVec& xi : candidates) {
            OracleResult oracle = hyperplane_oracle(frep, xi, 0, oracle_cap, opts.seed);
            if (oracle.divisible) rep.oracle_consistent = false;
        }
    } else {
        rep.oracle_mode = OracleResult::Mode::Skipped;
    }
    rep.verdict = std::move(verdict);
    return rep;
}

} // namespace pflat
