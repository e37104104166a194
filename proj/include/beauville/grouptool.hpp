#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "beauville/psl2.hpp"

namespace bvl {

/// Element interface for the generic engine: multiplication, inversion,
/// identity detection and a canonical byte key.
template <class E>
concept GroupOps = requires(const E& a, const E& b) {
    { a * b } -> std::convertible_to<E>;
    { a.inverse() } -> std::convertible_to<E>;
    { a.key() } -> std::convertible_to<std::string>;
    { a.is_identity() } -> std::convertible_to<bool>;
};

constexpr std::size_t kDefaultClosureBound = 2'000'000;

struct ClosureOverflow : std::runtime_error {
    std::size_t partial_count;
    explicit ClosureOverflow(std::size_t n)
        : std::runtime_error("closure bound exceeded after " + std::to_string(n) + " elements"),
          partial_count(n) {}
};

/// An enumerated finite group: the breadth-first product closure of its
/// generators.  Element indexing is deterministic (insertion order under the
/// given generator order), so identical generator lists give identical
/// indexings.  Immutable after construction and safe to share across threads.
template <GroupOps E>
class FiniteGroup {
public:
    static FiniteGroup closure(const E& identity, const std::vector<E>& generators,
                               std::size_t bound = kDefaultClosureBound) {
        FiniteGroup G;
        G.generators_ = generators;
        G.push(identity);
        for (std::size_t i = 0; i < G.elems_.size(); ++i) {
            for (const E& g : generators) {
                E prod = G.elems_[i] * g;
                if (G.index_.find(prod.key()) == G.index_.end()) {
                    if (G.elems_.size() >= bound) throw ClosureOverflow(G.elems_.size());
                    G.push(prod);
                }
            }
        }
        return G;
    }

    /// Rebuilds a group from cached canonical keys (see write_group_cache).
    static FiniteGroup from_keys(const std::vector<std::string>& keys,
                                 const std::function<E(const std::string&)>& decode,
                                 std::vector<E> generators = {}) {
        FiniteGroup G;
        G.generators_ = std::move(generators);
        for (const auto& k : keys) G.push(decode(k));
        return G;
    }

    std::size_t order() const { return elems_.size(); }
    const E& at(std::uint32_t i) const { return elems_[i]; }
    const std::vector<E>& elements() const { return elems_; }
    const std::vector<E>& generators() const { return generators_; }

    std::optional<std::uint32_t> find(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::uint32_t> find(const E& e) const { return find(e.key()); }
    bool contains(const E& e) const { return find(e).has_value(); }

    std::uint32_t identity_index() const { return 0; }

    /// Order of an element by iterated multiplication (bounded by |G|).
    std::uint64_t element_order(const E& g) const {
        E cur = g;
        for (std::uint64_t n = 1; n <= elems_.size(); ++n) {
            if (cur.is_identity()) return n;
            cur = cur * g;
        }
        throw std::logic_error("element order exceeds group order");
    }

    /// {h g h^-1 : h in G} as ascending element indices.
    std::vector<std::uint32_t> conjugacy_class(const E& g) const {
        if (!contains(g)) throw std::invalid_argument("element not in group");
        std::vector<bool> seen(elems_.size(), false);
        std::vector<std::uint32_t> out;
        for (const E& h : elems_) {
            E c = h * g * h.inverse();
            auto idx = find(c);
            if (!idx) throw std::logic_error("conjugate escaped the group");
            if (!seen[*idx]) {
                seen[*idx] = true;
                out.push_back(*idx);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::uint32_t> centralizer(const E& g) const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 0; i < elems_.size(); ++i)
            if ((elems_[i] * g).key() == (g * elems_[i]).key()) out.push_back(i);
        return out;
    }

    /// Indices of the subgroup generated by the given elements, or nullopt if
    /// it exceeds bound (used as a cheap proper-subgroup test).
    std::optional<std::vector<std::uint32_t>> subgroup(const std::vector<E>& gens,
                                                       std::size_t bound) const {
        std::vector<std::uint32_t> idxs;
        std::unordered_set<std::uint32_t> seen;
        auto push = [&](const E& e) -> bool {
            auto i = find(e);
            if (!i) throw std::invalid_argument("generator not in group");
            if (seen.insert(*i).second) idxs.push_back(*i);
            return true;
        };
        E id = gens.empty() ? elems_[0] : gens[0] * gens[0].inverse();
        push(id);
        for (const E& g : gens) push(g);
        for (std::size_t i = 0; i < idxs.size(); ++i) {
            for (const E& g : gens) {
                E prod = elems_[idxs[i]] * g;
                if (idxs.size() > bound) return std::nullopt;
                push(prod);
            }
        }
        std::sort(idxs.begin(), idxs.end());
        return idxs;
    }

    bool generated_by(const std::vector<E>& gens) const {
        auto sub = subgroup(gens, elems_.size());
        return sub && sub->size() == elems_.size();
    }

private:
    FiniteGroup() = default;
    void push(const E& e) {
        index_.emplace(e.key(), static_cast<std::uint32_t>(elems_.size()));
        elems_.push_back(e);
    }
    std::vector<E> elems_;
    std::vector<E> generators_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// ---------------------------------------------------------------------
/// Sigma sets and condition (3)

/// All conjugates of all powers of x, y and z, as element indices of G
/// (always contains the identity).
template <GroupOps E>
std::unordered_set<std::uint32_t> sigma_set(const FiniteGroup<E>& G, const E& x, const E& y,
                                            const E& z) {
    std::unordered_set<std::uint32_t> out;
    out.insert(G.identity_index());
    std::unordered_set<std::string> power_seen;
    for (const E* g : {&x, &y, &z}) {
        E cur = *g;
        while (!cur.is_identity()) {
            if (power_seen.insert(cur.key()).second)
                for (std::uint32_t i : G.conjugacy_class(cur)) out.insert(i);
            cur = cur * *g;
        }
    }
    return out;
}

/// Trivial-intersection test between two sigma sets.  The coprime-order
/// shortcut (gcd of the two order products = 1) is sufficient on its own;
/// whenever the exhaustive intersection is also computed the two answers are
/// compared and a disagreement throws.
template <GroupOps E>
bool condition3(const FiniteGroup<E>& G, const std::array<E, 3>& t1, const std::array<E, 3>& t2) {
    std::uint64_t prod1 = 1, prod2 = 1;
    for (auto& e : t1) prod1 *= G.element_order(e);
    for (auto& e : t2) prod2 *= G.element_order(e);
    bool shortcut = gcd_u64(prod1, prod2) == 1;

    auto s1 = sigma_set(G, t1[0], t1[1], t1[2]);
    auto s2 = sigma_set(G, t2[0], t2[1], t2[2]);
    std::size_t common = 0;
    for (std::uint32_t i : s1)
        if (s2.count(i)) ++common;
    bool exhaustive = common == 1;  // the identity
    if (shortcut && !exhaustive) throw std::logic_error("gcd shortcut contradicts sigma sets");
    return exhaustive;
}

/// ---------------------------------------------------------------------
/// Frobenius-style triple counting

/// Exact number of (x, y, z) in X x Y x Z with xyz = 1, counted directly:
/// the product xy is tested for membership of Z^{-1} by canonical key.
/// This is the ground-truth oracle for character-formula counts.
template <GroupOps E>
std::uint64_t frobenius_count(const FiniteGroup<E>& G, const std::vector<std::uint32_t>& X,
                              const std::vector<std::uint32_t>& Y,
                              const std::vector<std::uint32_t>& Z) {
    std::unordered_set<std::string> zinv;
    for (std::uint32_t zi : Z) zinv.insert(G.at(zi).inverse().key());
    std::uint64_t n = 0;
    for (std::uint32_t xi : X)
        for (std::uint32_t yi : Y)
            if (zinv.count((G.at(xi) * G.at(yi)).key())) ++n;
    return n;
}

/// ---------------------------------------------------------------------
/// Riemann-Hurwitz genus

/// Genus of the quotient curve attached to a triple of type (l, m, n) on a
/// group of the given order: 2g - 2 = |G| (1 - 1/l - 1/m - 1/n).
/// Throws if that quantity is not an even integer.
std::int64_t genus(std::uint64_t group_order, std::uint64_t l, std::uint64_t m, std::uint64_t n);

/// ---------------------------------------------------------------------
/// Exhaustive structure search for small groups

template <GroupOps E>
struct FoundTriple {
    std::array<E, 3> elems;
    std::array<std::uint64_t, 3> type;
};

template <GroupOps E>
struct FoundStructure {
    FoundTriple<E> t1, t2;
};

bool is_hyperbolic_type(std::uint64_t l, std::uint64_t m, std::uint64_t n);

/// Enumerates hyperbolic generating triples up to conjugacy (x over class
/// representatives, y up to the centralizer action, z derived), then scans
/// all pairs for trivially intersecting sigma sets.  Returns the first
/// structure in that deterministic order, or nullopt as a certificate that
/// none exists.  Feasible for |G| <= 10^4 (throws above).
template <GroupOps E>
std::optional<FoundStructure<E>> exhaustive_beauville_search(const FiniteGroup<E>& G) {
    if (G.order() > 10'000) throw std::invalid_argument("group too large for exhaustive search");
    const std::size_t n = G.order();

    std::vector<std::uint64_t> ord(n);
    for (std::uint32_t i = 0; i < n; ++i) ord[i] = G.element_order(G.at(i));

    // conjugacy class representatives
    std::vector<std::uint32_t> class_rep;
    {
        std::vector<bool> seen(n, false);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (seen[i]) continue;
            class_rep.push_back(i);
            for (std::uint32_t j : G.conjugacy_class(G.at(i))) seen[j] = true;
        }
    }

    std::vector<FoundTriple<E>> triples;
    std::vector<std::unordered_set<std::uint32_t>> sigmas;
    for (std::uint32_t xi : class_rep) {
        if (xi == G.identity_index()) continue;
        const E& x = G.at(xi);
        std::vector<std::uint32_t> cent = G.centralizer(x);
        std::vector<bool> done(n, false);
        for (std::uint32_t yi = 0; yi < n; ++yi) {
            if (done[yi]) continue;
            for (std::uint32_t ci : cent) {  // orbit of y under C(x)
                const E& h = G.at(ci);
                auto idx = G.find(h * G.at(yi) * h.inverse());
                done[*idx] = true;
            }
            const E& y = G.at(yi);
            E z = (x * y).inverse();
            auto zi = G.find(z);
            std::array<std::uint64_t, 3> type{ord[xi], ord[yi], ord[*zi]};
            if (!is_hyperbolic_type(type[0], type[1], type[2])) continue;
            if (!G.generated_by({x, y})) continue;
            triples.push_back({{x, y, z}, type});
            sigmas.push_back(sigma_set(G, x, y, z));
        }
    }

    for (std::size_t i = 0; i < triples.size(); ++i) {
        for (std::size_t j = i + 1; j < triples.size(); ++j) {
            std::size_t common = 0;
            for (std::uint32_t k : sigmas[i])
                if (sigmas[j].count(k)) ++common;
            if (common == 1) return FoundStructure<E>{triples[i], triples[j]};
        }
    }
    return std::nullopt;
}

/// ---------------------------------------------------------------------
/// Group-dump cache ("BFG1"): versioned header, little-endian u64 count,
/// then length-prefixed canonical keys.

void write_group_cache(const std::string& path, const std::vector<std::string>& keys);
std::optional<std::vector<std::string>> read_group_cache(const std::string& path);

template <GroupOps E>
void write_group_cache(const std::string& path, const FiniteGroup<E>& G) {
    std::vector<std::string> keys;
    keys.reserve(G.order());
    for (const E& e : G.elements()) keys.push_back(e.key());
    write_group_cache(path, keys);
}

/// ---------------------------------------------------------------------
/// Small concrete element types used by the searches

/// a^i b^j in the metacyclic group of order p^3 with a^{p^2} = b^p = 1 and
/// b^{-1} a b = a^{p+1}.
class MetacyclicElement {
public:
    MetacyclicElement(std::uint64_t p, std::uint64_t i, std::uint64_t j)
        : p_(p), i_(i % (p * p)), j_(j % p) {}
    std::uint64_t p() const { return p_; }
    std::uint64_t i() const { return i_; }
    std::uint64_t j() const { return j_; }
    MetacyclicElement operator*(const MetacyclicElement& o) const;
    MetacyclicElement inverse() const;
    bool is_identity() const { return i_ == 0 && j_ == 0; }
    std::string key() const;

private:
    std::uint64_t p_, i_, j_;
};

/// (i, j) in C_n x C_n, written additively.
class AbelianPairElement {
public:
    AbelianPairElement(std::uint64_t n, std::uint64_t i, std::uint64_t j)
        : n_(n), i_(i % n), j_(j % n) {}
    std::uint64_t i() const { return i_; }
    std::uint64_t j() const { return j_; }
    AbelianPairElement operator*(const AbelianPairElement& o) const {
        return {n_, i_ + o.i_, j_ + o.j_};
    }
    AbelianPairElement inverse() const { return {n_, n_ - i_, n_ - j_}; }
    bool is_identity() const { return i_ == 0 && j_ == 0; }
    std::string key() const;

private:
    std::uint64_t n_, i_, j_;
};

FiniteGroup<MetacyclicElement> metacyclic_group(std::uint64_t p);
FiniteGroup<AbelianPairElement> abelian_pp_group(std::uint64_t n);

/// ---------------------------------------------------------------------
/// Generation certificates for SL2/PSL2 over F_q

enum class GenVerdict { proven, disproven, unknown };
std::string gen_verdict_name(GenVerdict v);

/// Decides whether the given elements generate the full (P)SL2(q) without
/// enumerating it, by eliminating every maximal-subgroup type:
///  - a common fixed point on P^1(GF(q^2)) disproves generation outright;
///  - point stabilizers die with the common-fixed-point check;
///  - dihedral normalizers die unless every generator preserves the fixed
///    pair of some generator of order > 2 (in which case: disproven);
///  - subfield (P)(G)L2(r) subgroups die by element-order divisibility;
///  - A4/S4/A5 die as soon as some generator has order > 5.
/// Anything not eliminated yields `unknown`.
GenVerdict generates_ladder(const std::vector<GroupElement>& gens);

/// Ladder first, then closure when the target group fits the bound.
/// Closure and ladder can never contradict (tested); closure decides.
GenVerdict generates(const std::vector<GroupElement>& gens,
                     std::size_t closure_bound = kDefaultClosureBound);

/// q(q^2-1)/k for PSL2, q(q^2-1) for SL2.
std::uint64_t target_group_order(MatMode mode, std::uint64_t q);

/// Standard generator list (elementary matrices over a basis) of SL2(q) /
/// PSL2(q), convenient for building the full group by closure.
std::vector<GroupElement> sl2_standard_generators(const Field& F, MatMode mode);

}  // namespace bvl
