#include "beauville/structure.hpp"

#include <set>

namespace bvl {

std::string family_name(Family f) {
    switch (f) {
        case Family::PSL2: return "PSL2";
        case Family::SL2: return "SL2";
        case Family::Sz: return "Sz";
    }
    return "?";
}

Family family_from_name(const std::string& s) {
    if (s == "PSL2" || s == "psl2" || s == "L2" || s == "l2") return Family::PSL2;
    if (s == "SL2" || s == "sl2") return Family::SL2;
    if (s == "Sz" || s == "sz" || s == "SZ") return Family::Sz;
    throw std::invalid_argument("unknown group family: " + s);
}

Effort effort_from_name(const std::string& s) {
    if (s == "fast") return Effort::fast;
    if (s == "exhaustive") return Effort::exhaustive;
    throw std::invalid_argument("unknown effort: " + s);
}

std::string effort_name(Effort e) { return e == Effort::fast ? "fast" : "exhaustive"; }

std::string cond3_method_name(Cond3Method m) {
    switch (m) {
        case Cond3Method::gcd: return "gcd";
        case Cond3Method::trace: return "trace";
        case Cond3Method::exhaustive: return "exhaustive";
        case Cond3Method::undecided: return "undecided";
    }
    return "?";
}

std::string sr_status_name(SRStatus s) {
    switch (s) {
        case SRStatus::witness_found: return "witness";
        case SRStatus::none_family_searched: return "none found (family searched)";
        case SRStatus::none_full_aut: return "none (search covered Aut(G))";
        case SRStatus::skipped: return "skipped";
    }
    return "?";
}

TripleT<GroupElement> make_triple(const GroupElement& x, const GroupElement& y) {
    return make_triple(x, y, (x * y).inverse());
}

TripleT<GroupElement> make_triple(const GroupElement& x, const GroupElement& y,
                                  const GroupElement& z) {
    TripleT<GroupElement> t{x, y, z, {}};
    t.type = {element_order(x), element_order(y), element_order(z)};
    return t;
}

// ---------------------------------------------------------------------------
// condition (3) shortcuts

namespace {
std::uint64_t type_product(const std::array<std::uint64_t, 3>& t) { return t[0] * t[1] * t[2]; }

/// Traces of all non-identity powers, canonicalized up to sign for PSL2
/// (conjugate elements have equal traces, so disjoint sets prove (3)).
std::set<std::uint64_t> power_trace_set(const TripleT<GroupElement>& t) {
    std::set<std::uint64_t> out;
    for (const GroupElement* g : t.elems()) {
        MatMode mode = g->mode();
        GroupElement cur = *g;
        while (!cur.is_identity()) {
            FieldElement tr = cur.canonical().trace();
            std::uint64_t key = tr.index();
            if (mode == MatMode::PSL2 || mode == MatMode::PGL2)
                key = std::min(key, (-tr).index());
            out.insert(key);
            cur = cur * *g;
        }
    }
    return out;
}

bool disjoint(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
    for (std::uint64_t v : a)
        if (b.count(v)) return false;
    return true;
}
}  // namespace

// ---------------------------------------------------------------------------
// strongly-real search

namespace {
GroupElement apply_aut(const Mat2& conj, unsigned frob, const GroupElement& g) {
    Mat2 m = g.matrix().frobenius_map(frob);
    return {conj * m * conj.inverse(), g.mode()};
}

bool inverts_pair(const Mat2& conj, unsigned frob, const TripleT<GroupElement>& t) {
    return apply_aut(conj, frob, t.x) == t.x.inverse() &&
           apply_aut(conj, frob, t.y) == t.y.inverse();
}

void check_is_automorphism(const Mat2& conj, unsigned frob, const Psl2Structure& s) {
    const GroupElement* gens[4] = {&s.t1.x, &s.t1.y, &s.t2.x, &s.t2.y};
    for (const GroupElement* a : gens) {
        GroupElement img = apply_aut(conj, frob, *a);
        if (!(img.canonical().det() == s.field->one()))
            throw std::logic_error("automorphism left the group");
        for (const GroupElement* b : gens) {
            GroupElement lhs = apply_aut(conj, frob, *a * *b);
            if (!(lhs == apply_aut(conj, frob, *a) * apply_aut(conj, frob, *b)))
                throw std::logic_error("automorphism candidate is not multiplicative");
        }
    }
}

std::vector<std::vector<std::uint64_t>> mat2_entries(const Mat2& m) {
    return {{m.a().index(), m.b().index()}, {m.c().index(), m.d().index()}};
}
}  // namespace

std::optional<SRWitness> strongly_real_check_psl2(const Psl2Structure& s, Effort effort,
                                                  SRStatus& status) {
    const Field& F = *s.field;
    std::uint64_t q = F.q();
    unsigned e = F.e();
    bool full_gl2 = effort == Effort::exhaustive && q <= 13;

    std::vector<Mat2> candidates = standard_involutors(F);
    if (full_gl2) {
        std::set<std::string> have;
        for (const Mat2& m : candidates) have.insert(m.key());
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b)
                for (std::uint64_t c = 0; c < q; ++c)
                    for (std::uint64_t d = 0; d < q; ++d) {
                        Mat2 m(F.element(a), F.element(b), F.element(c), F.element(d));
                        if (m.det().is_zero()) continue;
                        if (have.count(m.key())) continue;
                        candidates.push_back(m);
                    }
    }

    for (const Mat2& M : candidates) {
        for (unsigned j = 0; j < e; ++j) {
            for (unsigned r1 = 0; r1 < 3; ++r1) {
                if (!inverts_pair(M, j, s.t1.rotated(r1))) continue;
                for (unsigned r2 = 0; r2 < 3; ++r2) {
                    if (!inverts_pair(M, j, s.t2.rotated(r2))) continue;
                    check_is_automorphism(M, j, s);
                    status = SRStatus::witness_found;
                    return SRWitness{mat2_entries(M), j, r1, r2, std::nullopt};
                }
            }
        }
    }

    // Two automorphisms differing by an inner one: conj(M) and conj(M') with
    // the image of M'M^{-1} inner, i.e. det(M'M^{-1}) a square.
    if (effort == Effort::exhaustive && target_group_order(s.mode(), q) <= 10'000) {
        for (unsigned j = 0; j < e; ++j) {
            std::vector<std::pair<const Mat2*, unsigned>> first, second;
            for (const Mat2& M : candidates) {
                for (unsigned r = 0; r < 3; ++r) {
                    if (inverts_pair(M, j, s.t1.rotated(r))) first.emplace_back(&M, r);
                    if (inverts_pair(M, j, s.t2.rotated(r))) second.emplace_back(&M, r);
                }
            }
            for (auto& [M1, r1] : first)
                for (auto& [M2, r2] : second)
                    if (is_square((*M2 * M1->inverse()).det())) {
                        status = SRStatus::witness_found;
                        return SRWitness{mat2_entries(*M1), j, r1, r2, mat2_entries(*M2)};
                    }
        }
    }

    status = full_gl2 ? SRStatus::none_full_aut : SRStatus::none_family_searched;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// verification

VerificationReport verify_psl2(const Psl2Structure& s, Effort effort, bool check_strongly_real) {
    const Field& F = *s.field;
    MatMode mode = s.mode();
    if (mode != MatMode::PSL2 && mode != MatMode::SL2)
        throw std::invalid_argument("structure mode must be PSL2 or SL2");
    std::uint64_t target = target_group_order(mode, F.q());

    VerificationReport rep;
    rep.types = {s.t1.type, s.t2.type};
    rep.cond1 = {(s.t1.x * s.t1.y * s.t1.z).is_identity(),
                 (s.t2.x * s.t2.y * s.t2.z).is_identity()};
    rep.cond2 = {is_hyperbolic(s.t1.type[0], s.t1.type[1], s.t1.type[2]),
                 is_hyperbolic(s.t2.type[0], s.t2.type[1], s.t2.type[2])};

    const TripleT<GroupElement>* ts[2] = {&s.t1, &s.t2};

    if (effort == Effort::fast) {
        for (int i = 0; i < 2; ++i)
            rep.generation[i] = generates_ladder({ts[i]->x, ts[i]->y, ts[i]->z});
        if (gcd_u64(type_product(s.t1.type), type_product(s.t2.type)) == 1) {
            rep.cond3 = true;
            rep.cond3_method = Cond3Method::gcd;
        } else if (disjoint(power_trace_set(s.t1), power_trace_set(s.t2))) {
            rep.cond3 = true;
            rep.cond3_method = Cond3Method::trace;
        } else {
            rep.cond3 = false;
            rep.cond3_method = Cond3Method::undecided;
        }
    } else {
        GroupElement id(Mat2::identity(F), mode);
        auto G1 = FiniteGroup<GroupElement>::closure(id, {s.t1.x, s.t1.y}, target + 1);
        std::optional<FiniteGroup<GroupElement>> ambient;
        rep.generation[0] = G1.order() == target ? GenVerdict::proven : GenVerdict::disproven;
        if (G1.order() == target) {
            ambient.emplace(std::move(G1));
        } else {
            auto gens = sl2_standard_generators(F, mode);
            gens.push_back(s.t1.x);
            gens.push_back(s.t1.y);
            gens.push_back(s.t2.x);
            gens.push_back(s.t2.y);
            ambient.emplace(FiniteGroup<GroupElement>::closure(id, gens, target + 1));
            if (ambient->order() != target) throw std::logic_error("ambient closure is not the full group");
        }
        auto sub2 = ambient->subgroup({s.t2.x, s.t2.y}, target);
        rep.generation[1] =
            (sub2 && sub2->size() == target) ? GenVerdict::proven : GenVerdict::disproven;

        // the ladder must not contradict closure on decided verdicts
        for (int i = 0; i < 2; ++i) {
            GenVerdict lad = generates_ladder({ts[i]->x, ts[i]->y, ts[i]->z});
            if ((lad == GenVerdict::proven && rep.generation[i] == GenVerdict::disproven) ||
                (lad == GenVerdict::disproven && rep.generation[i] == GenVerdict::proven))
                throw std::logic_error("ladder contradicts closure on generation");
        }

        rep.cond3 = condition3(*ambient, std::array<GroupElement, 3>{s.t1.x, s.t1.y, s.t1.z},
                               std::array<GroupElement, 3>{s.t2.x, s.t2.y, s.t2.z});
        rep.cond3_method = Cond3Method::exhaustive;
        rep.ambient_order = ambient->order();
    }

    if (check_strongly_real) {
        rep.witness = strongly_real_check_psl2(s, effort, rep.sr_status);
    }
    return rep;
}

}  // namespace bvl
