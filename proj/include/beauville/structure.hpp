#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "beauville/grouptool.hpp"

namespace bvl {

enum class Family { PSL2, SL2, Sz };
std::string family_name(Family f);
Family family_from_name(const std::string& s);

struct GroupDesc {
    Family family;
    std::uint64_t q;
};

/// A triple (x, y, z) with x y z = 1 and its type (the element orders in the
/// ambient mode).  The stored type is computed from the elements at
/// construction time, never trusted from outside.
template <GroupOps E>
struct TripleT {
    E x, y, z;
    std::array<std::uint64_t, 3> type{};

    TripleT<E> rotated(unsigned r) const {
        switch (r % 3) {
            case 1: return {y, z, x, {type[1], type[2], type[0]}};
            case 2: return {z, x, y, {type[2], type[0], type[1]}};
            default: return *this;
        }
    }
    std::array<const E*, 3> elems() const { return {&x, &y, &z}; }
};

TripleT<GroupElement> make_triple(const GroupElement& x, const GroupElement& y);
TripleT<GroupElement> make_triple(const GroupElement& x, const GroupElement& y,
                                  const GroupElement& z);

/// An unmixed Beauville structure candidate: two triples in one group.
struct Psl2Structure {
    GroupDesc desc;
    std::shared_ptr<const Field> field;  // keeps the elements' field alive
    TripleT<GroupElement> t1, t2;
    MatMode mode() const { return t1.x.mode(); }
};

/// Exact rational hyperbolicity test: 1/l + 1/m + 1/n < 1.
inline bool is_hyperbolic(std::uint64_t l, std::uint64_t m, std::uint64_t n) {
    return is_hyperbolic_type(l, m, n);
}

enum class Effort { fast, exhaustive };
Effort effort_from_name(const std::string& s);
std::string effort_name(Effort e);

enum class Cond3Method { gcd, trace, exhaustive, undecided };
std::string cond3_method_name(Cond3Method m);

enum class SRStatus {
    witness_found,
    none_family_searched,  ///< candidate family exhausted, not a proof of absence
    none_full_aut,         ///< the searched family provably covers Aut(G)
    skipped
};
std::string sr_status_name(SRStatus s);

/// Witness that a structure is strongly real: the automorphism
/// g -> C phi^j(g) C^{-1} inverts x and y of both rotated triples.
/// Matrices are stored as row-major element indices so the report stays
/// independent of the matrix dimension (2x2 here, 4x4 for Sz).
struct SRWitness {
    std::vector<std::vector<std::uint64_t>> conjugator;
    unsigned frobenius_power = 0;
    unsigned rot1 = 0, rot2 = 0;
    /// Present when the witness uses two automorphisms differing by an inner
    /// one: the second triple is inverted by conj(inner_twist) o phi^j.
    std::optional<std::vector<std::vector<std::uint64_t>>> inner_twist;
};

struct VerificationReport {
    std::array<bool, 2> cond1{false, false};
    std::array<bool, 2> cond2{false, false};
    std::array<GenVerdict, 2> generation{GenVerdict::unknown, GenVerdict::unknown};
    bool cond3 = false;
    Cond3Method cond3_method = Cond3Method::undecided;
    std::array<std::array<std::uint64_t, 3>, 2> types{};
    SRStatus sr_status = SRStatus::skipped;
    std::optional<SRWitness> witness;
    std::uint64_t ambient_order = 0;  ///< enumerated group order (exhaustive only)

    bool pass() const {
        return cond1[0] && cond1[1] && cond2[0] && cond2[1] &&
               generation[0] == GenVerdict::proven && generation[1] == GenVerdict::proven &&
               cond3;
    }
};

/// Runs the three conditions plus generation certificates on a (P)SL2
/// structure.  Fast effort uses the maximal-subgroup ladder and the
/// gcd/trace condition-(3) shortcuts; exhaustive effort enumerates the group
/// and decides everything unconditionally (the shortcuts are still computed
/// and cross-checked).  Verdicts from the two efforts never contradict on
/// decided fields.
VerificationReport verify_psl2(const Psl2Structure& s, Effort effort,
                               bool check_strongly_real = true);

/// Searches for a strongly-real witness over conjugation candidates from
/// standard_involutors (all of GL2 as well when q <= 13 and effort is
/// exhaustive) composed with Frobenius powers, over the 3x3 independent
/// cyclic rotations of the two triples.  Witness selection is the
/// lexicographically least (conjugator key, frobenius power, rotations).
/// For q <= 13 at exhaustive effort the search covers Aut(G), so absence is
/// a proof; otherwise absence only says the family was searched.
std::optional<SRWitness> strongly_real_check_psl2(const Psl2Structure& s, Effort effort,
                                                  SRStatus& status);

}  // namespace bvl
