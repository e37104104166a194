#include "beauville/json_io.hpp"

namespace bvl {

namespace {
void expect(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("schema violation: ") + what);
}
}

Json field_to_json(const Field& F) {
    return Json{{"p", F.p()}, {"e", F.e()}, {"modulus", F.modulus().coeffs()}};
}

std::shared_ptr<const Field> field_from_json(const Json& j) {
    expect(j.is_object() && j.contains("p") && j.contains("e"), "field needs p and e");
    std::uint64_t p = j.at("p").get<std::uint64_t>();
    unsigned e = j.at("e").get<unsigned>();
    std::optional<Polynomial> modulus;
    if (j.contains("modulus")) {
        auto coeffs = j.at("modulus").get<std::vector<std::uint64_t>>();
        modulus = Polynomial(p, coeffs);
    }
    return make_field(p, e, modulus);
}

Json element_to_json(const FieldElement& a) { return Json{{"coeffs", a.coeffs()}}; }

FieldElement element_from_json(const Json& j, const Field& F) {
    expect(j.is_object() && j.contains("coeffs"), "element needs coeffs");
    return F.element(j.at("coeffs").get<std::vector<std::uint64_t>>());
}

Json mat2_to_json(const Mat2& m, MatMode mode) {
    return Json{{"a", element_to_json(m.a())},
                {"b", element_to_json(m.b())},
                {"c", element_to_json(m.c())},
                {"d", element_to_json(m.d())},
                {"mode", mode_name(mode)}};
}

Mat2 mat2_from_json(const Json& j, const Field& F) {
    expect(j.is_object() && j.contains("a") && j.contains("b") && j.contains("c") &&
               j.contains("d"),
           "matrix needs entries a,b,c,d");
    return {element_from_json(j.at("a"), F), element_from_json(j.at("b"), F),
            element_from_json(j.at("c"), F), element_from_json(j.at("d"), F)};
}

Json mat4_to_json(const Mat4& m) {
    Json rows = Json::array();
    for (unsigned i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (unsigned jj = 0; jj < 4; ++jj)
            row.push_back(element_to_json(m.field().element(m.at(i, jj))));
        rows.push_back(row);
    }
    return Json{{"rows", rows}, {"mode", "Sz"}};
}

Mat4 mat4_from_json(const Json& j, const Field& F) {
    expect(j.is_object() && j.contains("rows"), "Sz matrix needs rows");
    const Json& rows = j.at("rows");
    expect(rows.is_array() && rows.size() == 4, "Sz matrix needs 4 rows");
    Mat4 m(&F);
    for (unsigned i = 0; i < 4; ++i) {
        expect(rows[i].is_array() && rows[i].size() == 4, "Sz matrix rows need 4 entries");
        for (unsigned k = 0; k < 4; ++k)
            m.set(i, k, element_from_json(rows[i][k], F).index());
    }
    return m;
}

Json structure_to_json(const Psl2Structure& s) {
    MatMode mode = s.mode();
    return Json{{"group",
                 Json{{"family", family_name(s.desc.family)},
                      {"q", s.desc.q},
                      {"field", field_to_json(*s.field)}}},
                {"t1",
                 Json{{"x", mat2_to_json(s.t1.x.matrix(), mode)},
                      {"y", mat2_to_json(s.t1.y.matrix(), mode)}}},
                {"t2",
                 Json{{"x", mat2_to_json(s.t2.x.matrix(), mode)},
                      {"y", mat2_to_json(s.t2.y.matrix(), mode)}}}};
}

Json structure_to_json(const SzStructure& s) {
    return Json{{"group",
                 Json{{"family", "Sz"},
                      {"q", s.ctx.q},
                      {"field", field_to_json(*s.ctx.field)}}},
                {"t1",
                 Json{{"x", mat4_to_json(s.t1.x.matrix())}, {"y", mat4_to_json(s.t1.y.matrix())}}},
                {"t2",
                 Json{{"x", mat4_to_json(s.t2.x.matrix())},
                      {"y", mat4_to_json(s.t2.y.matrix())}}}};
}

LoadedStructure structure_from_json(const Json& in) {
    const Json& j = in.is_object() && in.contains("structure") ? in.at("structure") : in;
    expect(j.is_object() && j.contains("group") && j.contains("t1") && j.contains("t2"),
           "structure needs group, t1, t2");
    const Json& g = j.at("group");
    expect(g.contains("family") && g.contains("q"), "group needs family and q");
    Family fam = family_from_name(g.at("family").get<std::string>());
    std::uint64_t q = g.at("q").get<std::uint64_t>();

    std::shared_ptr<const Field> F;
    if (g.contains("field")) {
        F = field_from_json(g.at("field"));
        expect(F->q() == q, "field does not match q");
    } else {
        F = make_field_q(q);
    }

    if (fam == Family::Sz) {
        std::uint64_t p = 0;
        unsigned e = 0;
        split_prime_power(q, p, e);
        expect(p == 2 && e % 2 == 1 && e >= 3, "Sz needs q = 2^e, odd e >= 3");
        SzContext ctx;
        ctx.e = e;
        ctx.m = (e - 1) / 2;
        ctx.q = q;
        ctx.r = checked_pow(2, ctx.m + 1);
        ctx.field = F;
        auto load_triple = [&](const Json& t) {
            SzElement x(mat4_from_json(t.at("x"), *F));
            SzElement y(mat4_from_json(t.at("y"), *F));
            SzElement z = (x * y).inverse();
            auto ord = [&](const SzElement& m) {
                SzElement cur = m;
                for (std::uint64_t n = 1; n <= 4 * q; ++n) {
                    if (cur.is_identity()) return n;
                    cur = cur * m;
                }
                throw std::invalid_argument("element order too large for Sz(q)");
            };
            return TripleT<SzElement>{x, y, z, {ord(x), ord(y), ord(z)}};
        };
        return SzStructure{ctx, load_triple(j.at("t1")), load_triple(j.at("t2"))};
    }

    MatMode mode = fam == Family::SL2 ? MatMode::SL2 : MatMode::PSL2;
    auto load_triple = [&](const Json& t) {
        GroupElement x(mat2_from_json(t.at("x"), *F), mode);
        GroupElement y(mat2_from_json(t.at("y"), *F), mode);
        return make_triple(x, y);
    };
    return Psl2Structure{GroupDesc{fam, q}, F, load_triple(j.at("t1")), load_triple(j.at("t2"))};
}

namespace {
Json witness_to_json(const SRWitness& w, const Field* F) {
    auto mat = [&](const std::vector<std::vector<std::uint64_t>>& rows) {
        Json out = Json::array();
        for (const auto& r : rows) {
            Json row = Json::array();
            for (std::uint64_t v : r)
                row.push_back(F ? element_to_json(F->element(v)) : Json(v));
            out.push_back(row);
        }
        return out;
    };
    Json j{{"conjugator", mat(w.conjugator)},
           {"frobenius_power", w.frobenius_power},
           {"rotations", Json::array({w.rot1, w.rot2})}};
    if (w.inner_twist) j["inner_twist"] = mat(*w.inner_twist);
    return j;
}
}  // namespace

Json report_to_json(const VerificationReport& rep, const Field* F) {
    Json j{{"cond1", rep.cond1},
           {"cond2", rep.cond2},
           {"generation",
            Json::array({gen_verdict_name(rep.generation[0]), gen_verdict_name(rep.generation[1])})},
           {"cond3", Json{{"holds", rep.cond3}, {"method", cond3_method_name(rep.cond3_method)}}},
           {"types", rep.types},
           {"strongly_real", Json{{"status", sr_status_name(rep.sr_status)}}},
           {"pass", rep.pass()}};
    if (rep.witness) j["strongly_real"]["witness"] = witness_to_json(*rep.witness, F);
    if (rep.ambient_order) j["ambient_order"] = rep.ambient_order;
    return j;
}

Json recipe_choice_to_json(const RecipeChoice& c) {
    Json j{{"branch", c.branch}};
    auto put = [&](const char* name, const std::optional<FieldElement>& v) {
        if (v) j[name] = element_to_json(*v);
    };
    put("c", c.c);
    put("d", c.d);
    put("x", c.x);
    put("w", c.w);
    put("y", c.y);
    put("z", c.z);
    put("s", c.s);
    put("t", c.tq);
    put("a", c.a);
    put("b", c.b);
    return j;
}

Json table1_row_to_json(const Table1Row& r) {
    return Json{{"q", r.q},     {"g", r.g},         {"i", r.i},
                {"d", r.d},     {"d_inv", r.d_inv}, {"r", r.r}};
}

Json suzuki_order_data_to_json(const SuzukiOrderData& d) {
    return Json{{"e", d.e},
                {"q", d.q},
                {"r", d.r},
                {"q_minus_1", d.q_minus_1},
                {"q_plus_r_plus_1", d.q_plus_r_plus_1},
                {"q_minus_r_plus_1", d.q_minus_r_plus_1},
                {"n", d.n},
                {"group_order", d.group_order}};
}

Json ree_order_data_to_json(const ReeOrderData& d) {
    return Json{{"e", d.e},
                {"q", d.q},
                {"r", d.r},
                {"n_plus", d.n_plus},
                {"n_minus", d.n_minus},
                {"n", d.n},
                {"t2_first_order", d.t2_first},
                {"t1_type", d.t1_type},
                {"group_order", d.group_order}};
}

Json proj_point_to_json(const ProjPoint& p) {
    if (p.infinite) return Json("inf");
    return element_to_json(p.x);
}

}  // namespace bvl
