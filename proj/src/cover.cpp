#include "dualcover/cover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace dualcover {

/* ----------------------------- MonodromyRep ----------------------------- */

bool MonodromyRep::product_is_identity() const {
    Perm p(static_cast<std::size_t>(sheets));
    for (const auto& g : images) p = p * g;
    return p.is_identity();
}

bool MonodromyRep::simply_ramified() const {
    for (const auto& g : images)
        if (!g.is_transposition()) return false;
    return true;
}

bool MonodromyRep::transitive() const {
    return perms_transitive(images, static_cast<std::size_t>(sheets));
}

void MonodromyRep::validate() const {
    if (sheets < 1) throw precondition_error("rep: sheets must be >= 1");
    for (const auto& g : images)
        if (g.size() != static_cast<std::size_t>(sheets))
            throw precondition_error("rep: image size mismatch");
    if (!product_is_identity())
        throw precondition_error("rep: product of meridian images is not the identity");
}

namespace {

std::vector<Perm> all_perms(int k) {
    std::vector<int> base(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) base[static_cast<std::size_t>(i)] = i;
    std::vector<Perm> out;
    std::sort(base.begin(), base.end());
    do {
        out.push_back(Perm(base));
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::vector<std::vector<int>> rep_key(const MonodromyRep& r) {
    std::vector<std::vector<int>> key;
    for (const auto& g : r.images) key.push_back(g.images());
    return key;
}

}  // namespace

MonodromyRep MonodromyRep::canonical() const {
    auto perms = all_perms(sheets);
    std::optional<std::vector<std::vector<int>>> best;
    MonodromyRep best_rep;
    for (const auto& g : perms) {
        MonodromyRep cand;
        cand.sheets = sheets;
        Perm gi = g.inverse();
        for (const auto& im : images) cand.images.push_back(gi * im * g);
        auto key = rep_key(cand);
        if (!best || key < *best) {
            best = key;
            best_rep = cand;
        }
    }
    return best_rep;
}

bool MonodromyRep::operator<(const MonodromyRep& o) const {
    if (sheets != o.sheets) return sheets < o.sheets;
    return rep_key(*this) < rep_key(o);
}

std::string rep_to_text(const MonodromyRep& rep) {
    std::string out = std::to_string(rep.sheets) + " sheets:";
    for (const auto& g : rep.images) out += " " + g.cycle_string();
    return out;
}

/* ------------------------- relations and classes ------------------------ */

Perm evaluate_word(const FreeWord& w, const MonodromyRep& rep) {
    Perm p(static_cast<std::size_t>(rep.sheets));
    for (int g : w) {
        const Perm& im = rep.images[static_cast<std::size_t>(std::abs(g) - 1)];
        p = p * (g > 0 ? im : im.inverse());
    }
    return p;
}

bool check_extension(const MonodromyRep& rep, const BraidMonodromyFactorization& fact) {
    if (static_cast<int>(rep.images.size()) != fact.strands)
        throw precondition_error("check_extension: meridian count mismatch");
    for (const auto& f : fact.factors)
        for (int j = 1; j <= fact.strands; ++j) {
            FreeWord w = braid_action_on_meridian(f.word, j);
            if (!(evaluate_word(w, rep) == rep.images[static_cast<std::size_t>(j - 1)]))
                return false;
        }
    return true;
}

std::pair<FreeWord, FreeWord> local_meridian_pair(const BraidMonodromyFactorization& fact,
                                                  std::size_t i) {
    if (i >= fact.factors.size()) throw precondition_error("local_meridian_pair: index");
    const BraidFactor& f = fact.factors[i];
    if (f.kind == LocalKind::Tangency)
        throw precondition_error("local_meridian_pair: tangency factor has a single meridian");
    return {braid_action_on_meridian(f.stem, f.pos + 1),
            braid_action_on_meridian(f.stem, f.pos + 2)};
}

PointClass classify_branch_point(const MonodromyRep& rep,
                                 const BraidMonodromyFactorization& fact, std::size_t i) {
    auto [uw, vw] = local_meridian_pair(fact, i);
    Perm U = evaluate_word(uw, rep);
    Perm V = evaluate_word(vw, rep);
    if (!U.is_transposition() || !V.is_transposition())
        throw integrity_error("classify_branch_point: meridian image is not a transposition");
    const BraidFactor& f = fact.factors[i];
    if (U == V) return PointClass::Bad;
    auto [a, b] = U.moved_pair();
    auto [c, d] = V.moved_pair();
    bool disjoint = a != c && a != d && b != c && b != d;
    if (f.kind == LocalKind::NodeLine) {
        if (disjoint) return PointClass::Good;
        throw integrity_error(
            "classify_branch_point: node meridians neither equal nor disjoint");
    }
    // cusp: braid-related transpositions are equal or non-commuting
    if (!disjoint) return PointClass::Good;
    throw integrity_error("classify_branch_point: cusp meridians commute without being equal");
}

/* ----------------------------- cover context ---------------------------- */

namespace {

std::array<Rat, 3> cross3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rat det3(const std::array<Rat, 3>& a, const std::array<Rat, 3>& b,
         const std::array<Rat, 3>& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
}

}  // namespace

CoverContext make_cover_context(const PlaneCurve& C, std::uint64_t seed) {
    if (C.plane != Plane::source)
        throw precondition_error("make_cover_context: expected a source-plane curve");
    CoverContext ctx;
    ctx.C = C;
    ctx.source_degree = C.degree;

    SolveOptions so;
    so.seed = seed;
    auto source_sings = singular_points(C, so);
    ctx.source_nodes = 0;
    bool all_nodes = true;
    for (const auto& s : source_sings) {
        if (s.kind == SingKind::Node)
            ++ctx.source_nodes;
        else
            all_nodes = false;
    }
    ctx.Cstar = dual_curve(C);
    ctx.dual_sings = singular_points(ctx.Cstar, so);
    bool dual_ok = true;
    for (const auto& s : ctx.dual_sings) dual_ok = dual_ok && s.kind != SingKind::Other;
    ctx.genericity = all_nodes && dual_ok;

    ctx.fact = braid_monodromy(ctx.Cstar, seed, &ctx.dual_sings);

    // the projection point: the dual pencil's basepoint fiber line is p-perp
    std::array<Rat, 3> mprime;
    for (std::size_t i = 0; i < 3; ++i)
        mprime[i] = ctx.fact.frame.axis_a[i] + ctx.fact.frame.basepoint * ctx.fact.frame.axis_b[i];
    ctx.projection_point = cross3(ctx.fact.frame.center, mprime);
    {
        std::vector<Rat> p(ctx.projection_point.begin(), ctx.projection_point.end());
        if (C.defining.eval(p) == 0)
            throw integrity_error("make_cover_context: projection point lies on the curve");
    }

    // source pencil through p, parameterized so its branch parameters are
    // exactly the punctures of the dual-pencil basepoint fiber
    Rng rng(seed ^ 0x70c0ffeeULL);
    std::uniform_int_distribution<long> d(-7, 7);
    const int degc = C.degree;
    bool built = false;
    std::string last = "no attempt";
    for (int attempt = 0; attempt < 20 && !built; ++attempt) {
        std::array<Rat, 3> e = {Rat(d(rng)), Rat(d(rng)), Rat(d(rng))};
        if (e[0] == 0 && e[1] == 0 && e[2] == 0) continue;
        PencilFrame sf;
        sf.center = ctx.projection_point;
        sf.axis_a = cross3(mprime, e);
        sf.axis_b = cross3(ctx.fact.frame.center, e);
        sf.basepoint = Rat(0);
        sf.seed = seed;
        if (det3(sf.center, sf.axis_a, sf.axis_b) == 0) {
            last = "degenerate auxiliary point";
            continue;
        }
        BranchData bd;
        try {
            bd = branch_values(C, sf);
        } catch (const error&) {
            last = "source branch certification failed";
            continue;
        }
        if (bd.delta.degree_in("t") != degc * (degc - 1)) {
            last = "source discriminant degree drop";
            continue;
        }
        // exactness anchor: the multiplicity-1 part of the source
        // discriminant is the dual fiber polynomial at the basepoint
        Polynomial mult1(std::vector<std::string>{"t"});
        mult1 = Polynomial::constant(1, bd.delta.vars());
        int obstacles = 0;
        bool mult_ok = true;
        for (const auto& [p, m] : squarefree_decomposition(bd.delta)) {
            if (m == 1)
                mult1 = mult1 * p;
            else if (m == 2)
                obstacles += p.degree_in("t");
            else
                mult_ok = false;
        }
        if (!mult_ok || obstacles != ctx.source_nodes) {
            last = "source pencil hits a special line";
            continue;
        }
        Polynomial dual_fiber = pencil_fiber(ctx.Cstar, ctx.fact.frame, ctx.fact.frame.basepoint);
        auto uni_coeffs = [](const Polynomial& p, const std::string& var) {
            Polynomial q = p.normalized();
            auto cs = q.coeffs_in(q.var_index(var).value());
            std::vector<Rat> out;
            for (auto& c : cs) out.push_back(c.is_zero() ? Rat(0) : c.constant_value());
            return out;
        };
        if (uni_coeffs(mult1, "t") != uni_coeffs(dual_fiber, "s")) {
            last = "puncture polynomial mismatch";
            continue;
        }
        ctx.node_obstacles.clear();
        for (const auto& bp : bd.points)
            if (bp.multiplicity == 2) ctx.node_obstacles.push_back(bp.value.value);
        ctx.source_frame = sf;
        built = true;
    }
    if (!built) throw certification_error("make_cover_context: " + last);

    ctx.meridians =
        lasso_system(ctx.fact.punctures, ctx.fact.proj_angle, seed, ctx.node_obstacles);
    return ctx;
}

MonodromyRep projection_monodromy(const CoverContext& ctx) {
    Polynomial g = pencil_restriction(ctx.C, ctx.source_frame);
    std::complex<double> base = ctx.meridians.base;
    auto roots = fiber_roots_at(g, base, ctx.fact.seed);
    std::complex<double> rot = std::polar(1.0, -ctx.fact.proj_angle);
    std::sort(roots.begin(), roots.end(), [&](std::complex<double> a, std::complex<double> b) {
        std::complex<double> wa = a * rot, wb = b * rot;
        if (wa.real() != wb.real()) return wa.real() < wb.real();
        return wa.imag() < wb.imag();
    });
    TrackOptions topt;
    topt.proj_angle = ctx.fact.proj_angle;
    MonodromyRep rep;
    rep.sheets = ctx.C.degree;
    for (std::size_t k = 0; k < ctx.meridians.targets.size(); ++k) {
        TrackedStrands ts = track_path(g, ctx.meridians.petal(k), roots, topt);
        // closed loop: configuration returns to itself
        double minsep = 1e300;
        for (std::size_t i = 0; i < roots.size(); ++i)
            for (std::size_t j = i + 1; j < roots.size(); ++j)
                minsep = std::min(minsep, std::abs(roots[i] - roots[j]));
        for (std::size_t i = 0; i < ts.end.size(); ++i) {
            int p = ts.end_positions(static_cast<int>(i));
            if (std::abs(ts.end[i] - roots[static_cast<std::size_t>(p)]) > 0.3 * minsep)
                throw integrity_error("projection_monodromy: meridian did not close up");
        }
        rep.images.push_back(ts.end_positions);
    }
    if (!rep.product_is_identity())
        throw integrity_error("projection_monodromy: meridian product is not the identity");
    if (!rep.simply_ramified())
        throw integrity_error("projection_monodromy: non-simple ramification (frame not generic)");
    if (!rep.transitive())
        throw integrity_error("projection_monodromy: intransitive image (reducible curve?)");
    return rep;
}

/* -------------------------------- verdict ------------------------------- */

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::NotExtendable: return "not-extendable";
        case Outcome::ExtendsSingularTotalSpace: return "extends-with-singular-total-space";
        case Outcome::EquivalentToProjection: return "equivalent-to-projection";
        default: return "excluded-case";
    }
}

ExtendabilityVerdict verdict(const MonodromyRep& rep, const BraidMonodromyFactorization& fact,
                             const VerdictMeta& meta) {
    if (!meta.genericity)
        throw precondition_error("verdict: curve is not general enough; refusing");
    if (meta.deg_c <= 2) throw precondition_error("verdict: theorem requires degree > 2");
    rep.validate();
    if (!rep.simply_ramified())
        throw precondition_error("verdict: representation is not simply ramified");
    if (!rep.transitive()) throw precondition_error("verdict: representation is not transitive");
    for (const auto& g : rep.images)
        if (g.is_identity())
            throw precondition_error("verdict: a meridian acts trivially (partial branch locus)");

    ExtendabilityVerdict out;
    out.factors_through_plane = check_extension(rep, fact);
    if (!out.factors_through_plane) {
        out.outcome = Outcome::NotExtendable;
        out.notes.push_back("zariski-van-kampen relations violated");
        return out;
    }
    bool all_good = true;
    for (std::size_t i = 0; i < fact.factors.size(); ++i) {
        if (fact.factors[i].kind == LocalKind::Tangency) continue;
        PointClass cls = classify_branch_point(rep, fact, i);
        out.points.push_back(
            {i, fact.factors[i].branch_value, fact.factors[i].kind, cls});
        all_good = all_good && cls == PointClass::Good;
    }
    if (meta.deg_c == 3 && meta.node_count == 0 && rep.sheets == 4) {
        out.outcome = Outcome::ExcludedCase;
        out.notes.push_back("smooth cubic with four sheets: criterion does not apply");
        return out;
    }
    if (all_good) {
        out.outcome = Outcome::EquivalentToProjection;
    } else {
        out.outcome = Outcome::ExtendsSingularTotalSpace;
        for (const auto& p : out.points)
            if (p.cls == PointClass::Bad)
                out.notes.push_back(std::string(p.kind == LocalKind::NodeLine
                                                    ? "bad node (A1 point upstairs)"
                                                    : "bad cusp (A2 point upstairs)"));
    }
    return out;
}

/* ------------------------------- rep search ------------------------------ */

std::vector<MonodromyRep> rep_search(const BraidMonodromyFactorization& fact, int sheets,
                                     const RepSearchOptions& opts) {
    if (sheets < 2 || sheets > opts.max_sheets)
        throw precondition_error("rep_search: sheet count outside configured bound");
    const int m = fact.strands;
    const int k = sheets;
    std::vector<Perm> trans;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            trans.push_back(Perm::transposition(static_cast<std::size_t>(k), a, b));

    // precompute relation words: evaluate(beta(x_j)) must equal image(x_j)
    std::vector<std::pair<int, FreeWord>> rel;
    for (const auto& f : fact.factors)
        for (int j = 1; j <= m; ++j) rel.push_back({j, braid_action_on_meridian(f.word, j)});

    std::vector<MonodromyRep> found;
    std::vector<Perm> chosen;
    std::uint64_t nodes = 0;

    auto cycles_count = [&](const Perm& p) {
        int c = 0;
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            ++c;
            int j = i;
            while (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                j = p(j);
            }
        }
        return c;
    };

    std::function<void(const Perm&, int)> go = [&](const Perm& prod, int depth) {
        if (++nodes > opts.budget)
            throw precondition_error("rep_search: search-space bound exceeded");
        int remaining = m - depth;
        int need = k - cycles_count(prod);  // transpositions to return to identity
        if (need > remaining || ((remaining - need) & 1)) return;
        if (depth == m) {
            if (!prod.is_identity()) return;
            MonodromyRep rep;
            rep.sheets = k;
            rep.images = chosen;
            if (!rep.transitive()) return;
            for (const auto& [j, w] : rel)
                if (!(evaluate_word(w, rep) == rep.images[static_cast<std::size_t>(j - 1)]))
                    return;
            found.push_back(rep.canonical());
            return;
        }
        for (const auto& t : trans) {
            chosen.push_back(t);
            go(prod * t, depth + 1);
            chosen.pop_back();
        }
    };
    go(Perm(static_cast<std::size_t>(k)), 0);

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace dualcover
