#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "beauville/structure.hpp"

namespace bvl {

/// All intermediate values a construction commits to, for provenance output
/// and for pinning them in tests: the torus parameters c (and d where c is
/// derived from it), the second-triple entries x, w, y, z, the square-class
/// discriminants s = -(c^2+c+1) and tq = c^2-c+1, and the first-triple
/// traces a, b.  `branch` names which construction path fired.
struct RecipeChoice {
    std::string branch;
    std::optional<FieldElement> c, d, x, w, y, z, s, tq, a, b;
};

/// First triple: X1 = [[0,1],[-1,a]], Y1 = [[b,-1],[1,0]], Z1 = (X1 Y1)^{-1}
/// = [[1,0],[b-a,1]].  Trace selection by mode:
///  - PSL2, odd q: a from a root of exact order q+1 (so the image has order
///    (q+1)/2) and b = -a; type ((q+1)/2, (q+1)/2, p).
///  - SL2, q = 1 mod 4: a, b the two least traces of roots of exact odd
///    order (q+1)/2, giving an all-odd triple; type ((q+1)/2, (q+1)/2, p).
///  - SL2, q = 3 mod 4: a from a root of order q+1, b = -a; type (q+1,q+1,p).
///  - even q: a, b the two least traces of roots of order q+1;
///    type (q+1, q+1, 2).
/// q = 11 in SL2 mode returns the pinned companion-form triple of type
/// (12,12,12).  Requires q > 5.
TripleT<GroupElement> triple_T1(const std::shared_ptr<const Field>& F, MatMode mode,
                                RecipeChoice* choice = nullptr);

/// Second triple without the strong-reality constraint: X2 = diag(c, c^{-1})
/// with c primitive (or of order (q-1)/2 if that is odd), Y2 = [[x,1],[xw-1,w]]
/// where x + w = c + c^{-1} and tr Z2 = tr X2.  Defined for q = 8 and q >= 13;
/// q = 11 returns the pinned triple of projective type (5,5,5).
TripleT<GroupElement> triple_T2(const std::shared_ptr<const Field>& F, MatMode mode,
                                RecipeChoice* choice = nullptr);

struct RecipeResult {
    Psl2Structure structure;
    RecipeChoice choice;
};

/// Strongly real structure on L2(q) for q > 5: T1 as above, T2 of the form
/// X2 = diag(c, c^{-1}), Y2 = [[x,y],[-y,w]] with y^2 = 1 - xw, walking the
/// branch ladder: even q / s non-square (under x+w = cx+c^{-1}w = c+c^{-1})
/// / tq non-square (under cx+c^{-1}w = -c-c^{-1}) / c replaced by c^2.
/// q in {7, 9, 11} return the pinned structures.
RecipeResult strongly_real_structure_psl2(const std::shared_ptr<const Field>& F);

/// Strongly real structure on SL2(q) for q > 5.  Even q coincides with the
/// projective construction.  Odd q: one triple is all-odd (T1 built from
/// roots of order (q+1)/2 when q = 1 mod 4, T2 built on c = -d of odd order
/// (q-1)/2 when q = 3 mod 4), so the structure descends faithfully; the
/// branch for q = 3 mod 4 imposes x+w / cx+c^{-1}w equal to (tau, tau),
/// (c^2+c^{-2}, c^2+c^{-2}) or (c^3+c^{-3}, tau) according to which of
/// d^2-d+1, d^4-d^3+d^2-d+1 is a non-square.  q in {7, 9, 11} are pinned.
RecipeResult structure_sl2(const std::shared_ptr<const Field>& F);

struct Table1Row {
    std::uint64_t q;      // prime, q = 3 mod 4
    std::uint64_t g;      // smallest primitive root
    std::uint64_t i;      // least exponent with d = g^i primitive and r square
    std::uint64_t d;
    std::uint64_t d_inv;
    std::uint64_t r;      // d - 1 + d^{-1}, a nonzero square
};

/// Least primitive-root power d = g^i (i ascending over units mod q-1) with
/// r = d - 1 + d^{-1} a nonzero square mod q.  Requires prime q = 3 mod 4,
/// q >= 11; throws if no exponent works (not observed; would refute the
/// search premise).
Table1Row table1_row(std::uint64_t q);

/// A named worked example pinned from the source text, with its field, the
/// full structure it belongs to, and every intermediate value the text
/// states.  Keys: 3A, 3B, 3C, 5A, 5B, q7, q9, q11-sl2.
struct GoldenFixture {
    std::string name;
    std::shared_ptr<const Field> field;
    Psl2Structure structure;
    std::optional<Mat2> involutor;  // the q = 9 conjugator [[0,1],[t+1,0]]
    RecipeChoice expected;
    std::array<std::array<std::uint64_t, 3>, 2> expected_types;
};

const std::vector<GoldenFixture>& golden_fixtures();
const GoldenFixture& golden_fixture(const std::string& name);

}  // namespace bvl
