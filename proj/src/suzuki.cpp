#include "beauville/suzuki.hpp"

#include <cstdlib>
#include <filesystem>

namespace bvl {

SzContext make_sz_context(unsigned e) {
    if (e < 3 || e % 2 == 0) throw std::invalid_argument("Sz(q) needs odd e >= 3");
    SzContext ctx;
    ctx.e = e;
    ctx.m = (e - 1) / 2;
    ctx.q = checked_pow(2, e);
    ctx.r = checked_pow(2, ctx.m + 1);
    ctx.field = make_field(2, e);
    return ctx;
}

// ---------------------------------------------------------------------------
// Mat4

Mat4 Mat4::identity(const Field& F) {
    Mat4 m(&F);
    for (unsigned i = 0; i < 4; ++i) m.set(i, i, 1);
    return m;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    const Field& F = *f_;
    Mat4 out(f_);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
            std::uint64_t acc = 0;
            for (unsigned k = 0; k < 4; ++k) acc = F.add(acc, F.mul(v_[4 * i + k], o.v_[4 * k + j]));
            out.v_[4 * i + j] = acc;
        }
    return out;
}

Mat4 Mat4::inverse() const {
    const Field& F = *f_;
    std::array<std::uint64_t, 32> m{};  // [A | I]
    for (unsigned i = 0; i < 4; ++i) {
        for (unsigned j = 0; j < 4; ++j) m[8 * i + j] = v_[4 * i + j];
        m[8 * i + 4 + i] = 1;
    }
    for (unsigned col = 0; col < 4; ++col) {
        unsigned piv = col;
        while (piv < 4 && m[8 * piv + col] == 0) ++piv;
        if (piv == 4) throw std::invalid_argument("singular matrix");
        if (piv != col)
            for (unsigned j = 0; j < 8; ++j) std::swap(m[8 * piv + j], m[8 * col + j]);
        std::uint64_t inv = F.inv(m[8 * col + col]);
        for (unsigned j = 0; j < 8; ++j) m[8 * col + j] = F.mul(m[8 * col + j], inv);
        for (unsigned r = 0; r < 4; ++r) {
            if (r == col || m[8 * r + col] == 0) continue;
            std::uint64_t f = m[8 * r + col];
            for (unsigned j = 0; j < 8; ++j)
                m[8 * r + j] = F.sub(m[8 * r + j], F.mul(f, m[8 * col + j]));
        }
    }
    Mat4 out(f_);
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) out.v_[4 * i + j] = m[8 * i + 4 + j];
    return out;
}

Mat4 Mat4::frobenius_map() const {
    Mat4 out(f_);
    for (unsigned i = 0; i < 16; ++i) out.v_[i] = f_->mul(v_[i], v_[i]);
    return out;
}

bool Mat4::is_identity() const {
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            if (v_[4 * i + j] != (i == j ? 1u : 0u)) return false;
    return true;
}

std::string Mat4::key() const {
    std::string out;
    out.reserve(16 * f_->key_width());
    for (std::uint64_t x : v_) f_->append_key(out, x);
    return out;
}

std::string Mat4::str() const {
    std::string out = "[";
    for (unsigned i = 0; i < 4; ++i) {
        out += i ? ",[" : "[";
        for (unsigned j = 0; j < 4; ++j) {
            if (j) out += ",";
            out += f_->element(v_[4 * i + j]).str();
        }
        out += "]";
    }
    return out + "]";
}

// ---------------------------------------------------------------------------
// generators

namespace {
FieldElement twist(const SzContext& ctx, const FieldElement& x) {
    return x.pow(checked_pow(2, ctx.m + 1));
}
}

Mat4 sz_unipotent(const SzContext& ctx, const FieldElement& a, const FieldElement& b) {
    const Field& F = *ctx.field;
    FieldElement at = twist(ctx, a);
    FieldElement a_t1 = at * a;            // a^{theta+1}
    FieldElement a_t2 = a_t1 * a;          // a^{theta+2}
    Mat4 m(&F);
    m.set(0, 0, 1);
    m.set(1, 0, a.index());
    m.set(1, 1, 1);
    m.set(2, 0, b.index());
    m.set(2, 1, at.index());
    m.set(2, 2, 1);
    m.set(3, 0, (a_t2 + a * b + twist(ctx, b)).index());
    m.set(3, 1, (a_t1 + b).index());
    m.set(3, 2, a.index());
    m.set(3, 3, 1);
    return m;
}

Mat4 sz_torus(const SzContext& ctx, const FieldElement& lambda) {
    const Field& F = *ctx.field;
    std::uint64_t k = checked_pow(2, ctx.m);
    Mat4 m(&F);
    m.set(0, 0, lambda.pow(k + 1).index());
    m.set(1, 1, lambda.pow(k).index());
    m.set(2, 2, lambda.pow(k).inverse().index());
    m.set(3, 3, lambda.pow(k + 1).inverse().index());
    return m;
}

Mat4 sz_weyl(const SzContext& ctx) {
    Mat4 m(ctx.field.get());
    for (unsigned i = 0; i < 4; ++i) m.set(i, 3 - i, 1);
    return m;
}

std::vector<SzElement> sz_generators(const SzContext& ctx) {
    const Field& F = *ctx.field;
    return {SzElement(sz_unipotent(ctx, F.one(), F.zero())),
            SzElement(sz_torus(ctx, smallest_primitive_root(F))),
            SzElement(sz_weyl(ctx))};
}

FiniteGroup<SzElement> sz_group(const SzContext& ctx, std::size_t bound) {
    auto gens = sz_generators(ctx);
    SzElement id(Mat4::identity(*ctx.field));

    const char* cache_dir = std::getenv("BEAUVILLE_CACHE_DIR");
    std::string cache_path;
    if (cache_dir && *cache_dir) {
        cache_path = std::string(cache_dir) + "/sz" + std::to_string(ctx.q) + ".bfg";
        if (auto keys = read_group_cache(cache_path)) {
            const Field* Fp = ctx.field.get();
            unsigned w = Fp->key_width();
            auto decode = [Fp, w](const std::string& k) {
                if (k.size() != 16 * w) throw std::runtime_error("bad cache key size");
                Mat4 m(Fp);
                for (unsigned idx = 0; idx < 16; ++idx) {
                    std::uint64_t v = 0;
                    for (unsigned b = w; b-- > 0;)
                        v = (v << 8) | static_cast<unsigned char>(k[idx * w + b]);
                    m.set(idx / 4, idx % 4, v);
                }
                return SzElement(m);
            };
            auto G = FiniteGroup<SzElement>::from_keys(*keys, decode, gens);
            std::uint64_t expect = ctx.q * ctx.q * (ctx.q * ctx.q + 1) * (ctx.q - 1);
            if (G.order() == expect) return G;
        }
    }

    auto G = FiniteGroup<SzElement>::closure(id, gens, bound);
    if (!cache_path.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cache_dir, ec);
        if (!ec) write_group_cache(cache_path, G);
    }
    return G;
}

// ---------------------------------------------------------------------------
// order data

SuzukiOrderData suzuki_order_data(unsigned e) {
    if (e < 3 || e % 2 == 0) throw std::invalid_argument("Sz(q) needs odd e >= 3");
    SuzukiOrderData d;
    d.e = e;
    d.q = checked_pow(2, e);
    d.r = checked_pow(2, (e - 1) / 2 + 1);
    d.q_minus_1 = d.q - 1;
    d.q_plus_r_plus_1 = d.q + d.r + 1;
    d.q_minus_r_plus_1 = d.q - d.r + 1;
    d.n = gcd_u64(d.q_plus_r_plus_1, 5) == 1 ? d.q_plus_r_plus_1 : d.q_minus_r_plus_1;
    if (gcd_u64(d.n, 5) != 1) throw std::logic_error("neither torus order is coprime to 5");
    d.group_order = d.q * d.q * (d.q * d.q + 1) * (d.q - 1);
    return d;
}

ReeOrderData ree_order_data(unsigned e) {
    if (e < 3 || e % 2 == 0) throw std::invalid_argument("R(q) needs odd e >= 3");
    ReeOrderData d;
    d.e = e;
    d.q = checked_pow(3, e);
    d.r = checked_pow(3, (e + 1) / 2);  // r^2 = 3q
    d.n_plus = d.q + 1 + d.r;
    d.n_minus = d.q + 1 - d.r;
    if (d.n_plus * d.n_minus != d.q * d.q - d.q + 1)
        throw std::logic_error("torus factorization identity failed");
    // canonical choice: the smaller candidate coprime to 7
    if (gcd_u64(d.n_minus, 7) == 1)
        d.n = d.n_minus;
    else if (gcd_u64(d.n_plus, 7) == 1)
        d.n = d.n_plus;
    else
        throw std::runtime_error("neither torus order is coprime to 7");
    d.t2_first = (d.q - 1) / 2;
    d.t1_type = {2, 3, 7};
    d.group_order = d.q * d.q * d.q * (d.q * d.q * d.q + 1) * (d.q - 1);
    return d;
}

// ---------------------------------------------------------------------------
// structure search and verification

namespace {
std::uint64_t sz_order(const FiniteGroup<SzElement>& G, const SzElement& g) {
    return G.element_order(g);
}

TripleT<SzElement> sz_make_triple(const FiniteGroup<SzElement>& G, const SzElement& x,
                                  const SzElement& y) {
    SzElement z = (x * y).inverse();
    return {x, y, z, {sz_order(G, x), sz_order(G, y), sz_order(G, z)}};
}

/// Least (x, y) in element-index order with the requested orders, z-order,
/// and full generation.
TripleT<SzElement> find_triple(const FiniteGroup<SzElement>& G, std::uint64_t ox, std::uint64_t oy,
                               std::uint64_t oz) {
    std::vector<std::uint32_t> xs, ys;
    for (std::uint32_t i = 0; i < G.order(); ++i) {
        std::uint64_t o = sz_order(G, G.at(i));
        if (o == ox) xs.push_back(i);
        if (o == oy) ys.push_back(i);
    }
    for (std::uint32_t xi : xs) {
        for (std::uint32_t yi : ys) {
            const SzElement& x = G.at(xi);
            const SzElement& y = G.at(yi);
            SzElement z = (x * y).inverse();
            if (sz_order(G, z) != oz) continue;
            auto sub = G.subgroup({x, y}, G.order());
            if (sub && sub->size() == G.order()) return sz_make_triple(G, x, y);
        }
    }
    throw std::runtime_error("no generating triple of the requested type found");
}
}  // namespace

SzStructure sz_find_structure(const SzContext& ctx, const FiniteGroup<SzElement>& G) {
    if (ctx.e != 3) throw std::invalid_argument("structure search is feasible at e = 3 only");
    auto data = suzuki_order_data(ctx.e);
    SzStructure s{ctx, find_triple(G, 2, 4, 5), find_triple(G, data.q_minus_1, data.n, data.n)};
    return s;
}

bool sz_element_invertible_by_aut(const FiniteGroup<SzElement>& G, unsigned e,
                                  const SzElement& g) {
    SzElement target = g.inverse();
    SzElement phi = g;
    for (unsigned j = 0; j < e; ++j) {
        // is phi^j(g) conjugate to g^{-1}?  h phi h^{-1} = t  <=>  h phi = t h
        for (const SzElement& h : G.elements())
            if (h * phi == target * h) return true;
        phi = phi.frobenius();
    }
    return false;
}

VerificationReport verify_sz(const SzStructure& s, const FiniteGroup<SzElement>& G) {
    VerificationReport rep;
    rep.types = {s.t1.type, s.t2.type};
    rep.cond1 = {(s.t1.x * s.t1.y * s.t1.z).is_identity(),
                 (s.t2.x * s.t2.y * s.t2.z).is_identity()};
    rep.cond2 = {is_hyperbolic(s.t1.type[0], s.t1.type[1], s.t1.type[2]),
                 is_hyperbolic(s.t2.type[0], s.t2.type[1], s.t2.type[2])};
    for (int i = 0; i < 2; ++i) {
        const auto& t = i == 0 ? s.t1 : s.t2;
        auto sub = G.subgroup({t.x, t.y}, G.order());
        rep.generation[i] =
            (sub && sub->size() == G.order()) ? GenVerdict::proven : GenVerdict::disproven;
    }
    rep.cond3 = condition3(G, std::array<SzElement, 3>{s.t1.x, s.t1.y, s.t1.z},
                           std::array<SzElement, 3>{s.t2.x, s.t2.y, s.t2.z});
    rep.cond3_method = Cond3Method::exhaustive;
    rep.ambient_order = G.order();

    // strongly-real search over all of Aut(Sz(q)): conjugation by each group
    // element composed with each field automorphism, on each rotation pair.
    // M phi(g) M^{-1} = g^{-1} is tested as M phi(g) = g^{-1} M.
    unsigned e = s.ctx.e;
    rep.sr_status = SRStatus::none_full_aut;
    struct Pair {
        SzElement phi_x, phi_y, inv_x, inv_y;
    };
    std::vector<std::array<Pair, 3>> pre1(e), pre2(e);
    for (unsigned j = 0; j < e; ++j) {
        for (unsigned r = 0; r < 3; ++r) {
            auto t1r = s.t1.rotated(r), t2r = s.t2.rotated(r);
            Pair p1{t1r.x, t1r.y, t1r.x.inverse(), t1r.y.inverse()};
            Pair p2{t2r.x, t2r.y, t2r.x.inverse(), t2r.y.inverse()};
            for (unsigned k = 0; k < j; ++k) {
                p1.phi_x = p1.phi_x.frobenius();
                p1.phi_y = p1.phi_y.frobenius();
                p2.phi_x = p2.phi_x.frobenius();
                p2.phi_y = p2.phi_y.frobenius();
            }
            pre1[j][r] = p1;
            pre2[j][r] = p2;
        }
    }
    for (std::uint32_t mi = 0; mi < G.order() && rep.sr_status != SRStatus::witness_found; ++mi) {
        const SzElement& M = G.at(mi);
        for (unsigned j = 0; j < e && rep.sr_status != SRStatus::witness_found; ++j) {
            for (unsigned r1 = 0; r1 < 3 && rep.sr_status != SRStatus::witness_found; ++r1) {
                const Pair& p1 = pre1[j][r1];
                if (!(M * p1.phi_x == p1.inv_x * M)) continue;
                if (!(M * p1.phi_y == p1.inv_y * M)) continue;
                for (unsigned r2 = 0; r2 < 3; ++r2) {
                    const Pair& p2 = pre2[j][r2];
                    if (!(M * p2.phi_x == p2.inv_x * M)) continue;
                    if (!(M * p2.phi_y == p2.inv_y * M)) continue;
                    SRWitness w;
                    const Mat4& mm = M.matrix();
                    for (unsigned a = 0; a < 4; ++a) {
                        std::vector<std::uint64_t> row;
                        for (unsigned b = 0; b < 4; ++b) row.push_back(mm.at(a, b));
                        w.conjugator.push_back(row);
                    }
                    w.frobenius_power = j;
                    w.rot1 = r1;
                    w.rot2 = r2;
                    rep.witness = w;
                    rep.sr_status = SRStatus::witness_found;
                    break;
                }
            }
        }
    }
    return rep;
}

}  // namespace bvl
