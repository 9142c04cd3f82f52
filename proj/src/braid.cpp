#include "dualcover/braid.hpp"

#include <algorithm>
#include <cmath>

namespace dualcover {

namespace {

std::vector<int> reduce_letters(std::vector<int> in) {
    std::vector<int> out;
    for (int l : in) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

}  // namespace

BraidWord make_word(int strands, std::vector<int> letters) {
    for (int l : letters)
        if (l == 0 || std::abs(l) >= strands)
            throw precondition_error("braid letter index out of range");
    return {strands, reduce_letters(std::move(letters))};
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) throw precondition_error("braid strand mismatch");
    std::vector<int> l = a.letters;
    l.insert(l.end(), b.letters.begin(), b.letters.end());
    return {a.strands, reduce_letters(std::move(l))};
}

BraidWord inverse_word(const BraidWord& a) {
    std::vector<int> l;
    for (auto it = a.letters.rbegin(); it != a.letters.rend(); ++it) l.push_back(-*it);
    return {a.strands, std::move(l)};
}

Perm braid_permutation(const BraidWord& w) {
    Perm p(static_cast<std::size_t>(w.strands));
    for (int l : w.letters) {
        int i = std::abs(l) - 1;
        p = p * Perm::transposition(static_cast<std::size_t>(w.strands), i, i + 1);
    }
    return p;
}

int exponent_sum(const BraidWord& w) {
    int s = 0;
    for (int l : w.letters) s += l > 0 ? 1 : -1;
    return s;
}

FreeWord free_reduce(FreeWord w) { return reduce_letters(std::move(w)); }

FreeWord free_concat(const FreeWord& a, const FreeWord& b) {
    FreeWord l = a;
    l.insert(l.end(), b.begin(), b.end());
    return reduce_letters(std::move(l));
}

FreeWord free_inverse(const FreeWord& a) {
    FreeWord l;
    for (auto it = a.rbegin(); it != a.rend(); ++it) l.push_back(-*it);
    return l;
}

namespace {

/* One Artin generator acting on a reduced free word. sigma_i (ccw half
 * twist of strands i, i+1, 1-based): x_i -> x_i x_{i+1} x_i^{-1},
 * x_{i+1} -> x_i. The inverse: x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^{-1}
 * x_i x_{i+1}. */
FreeWord apply_letter(const FreeWord& w, int letter) {
    int i = std::abs(letter);
    FreeWord out;
    for (int g : w) {
        int a = std::abs(g);
        bool pos = g > 0;
        auto push = [&](std::initializer_list<int> gs) {
            if (pos)
                for (int x : gs) out.push_back(x);
            else
                for (auto it = std::rbegin(gs); it != std::rend(gs); ++it) out.push_back(-*it);
        };
        if (letter > 0) {
            if (a == i)
                push({i, i + 1, -i});
            else if (a == i + 1)
                push({i});
            else
                push({a});
        } else {
            if (a == i)
                push({i + 1});
            else if (a == i + 1)
                push({-(i + 1), i, i + 1});
            else
                push({a});
        }
    }
    return reduce_letters(std::move(out));
}

}  // namespace

FreeWord braid_action_on_meridian(const BraidWord& braid, int j) {
    if (j < 1 || j > braid.strands)
        throw precondition_error("braid_action_on_meridian: generator index out of range");
    FreeWord w = {j};
    for (int l : braid.letters) w = apply_letter(w, l);
    return w;
}

std::uint64_t braid_action_hash(const BraidWord& w) {
    std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(w.strands);
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int j = 1; j <= w.strands; ++j) {
        FreeWord img = braid_action_on_meridian(w, j);
        mix(0xabcdULL);
        for (int g : img) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(g) + (1 << 20)));
    }
    return h;
}

bool braid_equivalent(const BraidWord& a, const BraidWord& b) {
    if (a.strands != b.strands) return false;
    if (exponent_sum(a) != exponent_sum(b)) return false;
    if (!(braid_permutation(a) == braid_permutation(b))) return false;
    return braid_action_hash(a) == braid_action_hash(b);
}

std::string local_kind_name(LocalKind k) {
    switch (k) {
        case LocalKind::Tangency: return "tangency";
        case LocalKind::NodeLine: return "node-line";
        default: return "cusp-line";
    }
}

BraidWord crossings_to_braid(const TrackedStrands& ts, int strands) {
    std::vector<int> letters;
    for (const auto& c : ts.crossings) letters.push_back(c.sign * (c.pos + 1));
    return make_word(strands, std::move(letters));
}

LocalKind local_braid_kind(const BraidFactor& f) {
    int e = exponent_sum(f.word);
    Perm p = braid_permutation(f.word);
    if (e == 1 && p.is_transposition()) return LocalKind::Tangency;
    if (e == 2 && p.is_identity()) return LocalKind::NodeLine;
    if (e == 3 && p.is_transposition()) return LocalKind::CuspLine;
    throw integrity_error("local_braid_kind: factor is not a band power (exponent " +
                          std::to_string(e) + ")");
}

/* ---------------------------- braid monodromy --------------------------- */

namespace {
BraidMonodromyFactorization braid_monodromy_once(const PlaneCurve& Cstar, std::uint64_t seed,
                                                 const std::vector<SingularPoint>* sings_in);
}

BraidMonodromyFactorization braid_monodromy(const PlaneCurve& Cstar, std::uint64_t seed,
                                            const std::vector<SingularPoint>* sings_in) {
    // geometric-basis construction can fail for crowded configurations;
    // bounded deterministic retries over derived seeds
    std::string last;
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::uint64_t s = seed + 0x51ed0000ULL * static_cast<std::uint64_t>(attempt);
        try {
            return braid_monodromy_once(Cstar, s, sings_in);
        } catch (const integrity_error& e) {
            last = e.what();
        } catch (const certification_error& e) {
            last = e.what();
        }
    }
    throw certification_error("braid_monodromy: " + last);
}

namespace {
BraidMonodromyFactorization braid_monodromy_once(const PlaneCurve& Cstar, std::uint64_t seed,
                                                 const std::vector<SingularPoint>* sings_in) {
    std::vector<SingularPoint> sings_local;
    if (!sings_in) {
        SolveOptions so;
        so.seed = seed;
        sings_local = singular_points(Cstar, so);
        sings_in = &sings_local;
    }
    int nodes = 0, cusps = 0;
    for (const auto& s : *sings_in) {
        if (s.kind == SingKind::Node)
            ++nodes;
        else if (s.kind == SingKind::Cusp)
            ++cusps;
        else
            throw precondition_error(
                "braid_monodromy: curve has singularities beyond nodes and cusps");
    }
    const int m = Cstar.degree;
    const int klass = m * (m - 1) - 2 * nodes - 3 * cusps;
    if (klass <= 0) throw precondition_error("braid_monodromy: degenerate class");

    PencilFrame fr = make_frame(Cstar, seed, 20, std::array<int, 3>{klass, nodes, cusps});
    BranchData bd = branch_values(Cstar, fr);

    Rng rng(seed ^ 0xb4a1d);
    std::uniform_real_distribution<double> ang(0.03, 1.2);
    double phi = ang(rng);

    // every special line must match a singular point when its multiplicity
    // says node or cusp; tolerance scaled by the certificates
    for (const auto& bp : bd.points) {
        if (bp.multiplicity == 1) continue;
        std::complex<double> t = bp.value.value;
        bool matched = false;
        for (const auto& s : *sings_in) {
            if ((bp.multiplicity == 2) != (s.kind == SingKind::Node)) continue;
            // line through center at parameter t: det(center, A + t B, p)
            std::complex<double> det = 0;
            std::array<std::complex<double>, 3> c, ab;
            for (std::size_t i = 0; i < 3; ++i) {
                c[i] = to_double(fr.center[i]);
                ab[i] = to_double(fr.axis_a[i]) + t * to_double(fr.axis_b[i]);
            }
            const auto& p = s.location.h;
            det = c[0] * (ab[1] * p[2] - ab[2] * p[1]) - c[1] * (ab[0] * p[2] - ab[2] * p[0]) +
                  c[2] * (ab[0] * p[1] - ab[1] * p[0]);
            double scale = 0;
            for (std::size_t i = 0; i < 3; ++i)
                scale = std::max({scale, std::abs(c[i]), std::abs(ab[i])});
            if (std::abs(det) < 1e-6 * scale * scale * scale) {
                matched = true;
                break;
            }
        }
        if (!matched)
            throw integrity_error(
                "braid_monodromy: branch multiplicity does not match curve geometry");
    }

    std::vector<std::complex<double>> targets;
    for (const auto& bp : bd.points) targets.push_back(bp.value.value);
    std::complex<double> base(to_double(fr.basepoint), 0.0);
    LoopSystem sys = loop_system(targets, base, seed);

    Polynomial rest = pencil_restriction(Cstar, fr);
    TrackOptions topt;
    topt.proj_angle = phi;
    std::vector<std::complex<double>> start = basepoint_fiber_roots(Cstar, fr, phi);

    BraidMonodromyFactorization fact;
    fact.strands = m;
    fact.frame = fr;
    fact.proj_angle = phi;
    fact.punctures = start;
    fact.seed = seed;

    for (std::size_t k = 0; k < sys.targets.size(); ++k) {
        const BranchPoint& bp = bd.points[sys.source_index[k]];
        const int e = bp.multiplicity;
        BraidFactor f;
        f.branch_value = sys.targets[k];
        f.multiplicity = e;
        bool built = false;
        double radius = sys.radii[k];
        PathSpec stem = sys.stems[k];
        for (int shrink = 0; shrink < 5 && !built; ++shrink) {
            // circle of the current radius; stem extended radially inward
            std::complex<double> z = sys.targets[k];
            std::complex<double> dir = (stem.vertices.front() - z);
            // entry direction: along the original entry radial line
            std::complex<double> entry0 = sys.stems[k].vertices.back();
            std::complex<double> rad = (entry0 - z) / std::abs(entry0 - z);
            std::complex<double> entry = z + radius * rad;
            PathSpec stem_k = sys.stems[k];
            if (shrink > 0) stem_k.vertices.push_back(entry);
            PathSpec circle;
            const int nseg = 24;
            double phase0 = std::arg(entry - z);
            for (int a2 = 0; a2 <= nseg; ++a2)
                circle.vertices.push_back(z + std::polar(radius, phase0 + 2 * M_PI * a2 / nseg));
            circle.vertices.back() = entry;
            (void)dir;
            try {
                TrackedStrands ts_stem = track_path(rest, stem_k, start, topt);
                TrackedStrands ts_circle = track_path(rest, circle, ts_stem.end, topt);
                BraidWord A = crossings_to_braid(ts_stem, m);
                BraidWord L = crossings_to_braid(ts_circle, m);
                // the local word must be a clean positive band power
                bool clean = static_cast<int>(L.letters.size()) == e;
                int pos = clean && !L.letters.empty() ? L.letters[0] : 0;
                for (int l : L.letters) clean = clean && l == pos && l > 0;
                if (!clean) {
                    radius /= 2;
                    continue;
                }
                f.stem = A;
                f.pos = pos - 1;
                f.exp = e;
                f.word = concat(concat(A, L), inverse_word(A));
                f.kind = local_braid_kind(f);
                built = true;
            } catch (const certification_error&) {
                radius /= 2;
            }
        }
        if (!built)
            throw certification_error("braid_monodromy: could not resolve the local braid at a "
                                      "branch value");
        // cross-validation: tracking-derived exponent vs discriminant kind
        LocalKind geo = bp.multiplicity == 1   ? LocalKind::Tangency
                        : bp.multiplicity == 2 ? LocalKind::NodeLine
                                               : LocalKind::CuspLine;
        if (geo != f.kind)
            throw integrity_error("braid_monodromy: tracked kind disagrees with geometry");
        fact.factors.push_back(std::move(f));
    }
    check_full_twist(fact);
    return fact;
}
}  // namespace

void check_full_twist(const BraidMonodromyFactorization& fact) {
    int total = 0;
    Perm prod(static_cast<std::size_t>(fact.strands));
    for (const auto& f : fact.factors) {
        total += exponent_sum(f.word);
        prod = prod * braid_permutation(f.word);
    }
    if (total != fact.strands * (fact.strands - 1))
        throw integrity_error("full twist: exponent sum " + std::to_string(total) + " != " +
                              std::to_string(fact.strands * (fact.strands - 1)));
    if (!prod.is_identity())
        throw integrity_error("full twist: nontrivial product permutation");
}

BraidMonodromyFactorization hurwitz_move(const BraidMonodromyFactorization& fact, std::size_t i) {
    if (i + 1 >= fact.factors.size())
        throw precondition_error("hurwitz_move: index out of range");
    BraidMonodromyFactorization out = fact;
    const BraidFactor& a = fact.factors[i];
    const BraidFactor& b = fact.factors[i + 1];
    BraidFactor conj = b;
    conj.word = concat(concat(a.word, b.word), inverse_word(a.word));
    conj.stem = concat(a.word, b.stem);
    out.factors[i] = std::move(conj);
    out.factors[i + 1] = a;
    return out;
}

}  // namespace dualcover
