#include "beauville/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "beauville/json_io.hpp"

namespace bvl {

namespace {

struct FieldOpts {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    unsigned e = 1;
    std::string modulus;

    std::shared_ptr<const Field> build() const {
        if (q) {
            std::uint64_t pp;
            unsigned ee;
            if (!split_prime_power(q, pp, ee))
                throw std::invalid_argument("q must be a prime power > 1");
            std::optional<Polynomial> m;
            if (!modulus.empty()) m = Polynomial::parse(pp, modulus);
            return make_field(pp, ee, m);
        }
        if (!p) throw std::invalid_argument("give --q or --p/--e");
        std::optional<Polynomial> m;
        if (!modulus.empty()) m = Polynomial::parse(p, modulus);
        return make_field(p, e, m);
    }
};

void add_field_opts(CLI::App* cmd, FieldOpts& fo) {
    cmd->add_option("--q", fo.q, "prime power q");
    cmd->add_option("--p", fo.p, "characteristic");
    cmd->add_option("--e", fo.e, "extension degree");
    cmd->add_option("--modulus", fo.modulus,
                    "modulus polynomial, e.g. \"t^3+t+1\" (default: smallest primitive)");
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
    if (format == "json") {
        out << j.dump(2) << "\n";
    } else {
        // human-oriented; not stability-guaranteed
        out << j.dump(2) << "\n";
    }
}

std::string report_text(const VerificationReport& rep) {
    std::string s;
    s += "cond1 (product 1):        " + std::string(rep.cond1[0] && rep.cond1[1] ? "ok" : "FAIL") + "\n";
    s += "cond2 (hyperbolic):       " + std::string(rep.cond2[0] && rep.cond2[1] ? "ok" : "FAIL") + "\n";
    s += "generation:               " + gen_verdict_name(rep.generation[0]) + " / " +
         gen_verdict_name(rep.generation[1]) + "\n";
    s += "cond3 (disjoint powers):  " + std::string(rep.cond3 ? "ok" : "FAIL") + " [" +
         cond3_method_name(rep.cond3_method) + "]\n";
    s += "strongly real:            " + sr_status_name(rep.sr_status) + "\n";
    s += std::string("verdict:                  ") + (rep.pass() ? "PASS" : "FAIL") + "\n";
    return s;
}

int cmd_field(const FieldOpts& fo, const std::string& format, std::ostream& out) {
    auto F = fo.build();
    Json j{{"field", field_to_json(*F)},
           {"q", F->q()},
           {"k", F->k()},
           {"smallest_primitive_root", element_to_json(smallest_primitive_root(*F))},
           {"primitive_root_count", euler_phi(F->q() - 1)}};
    emit(out, j, format);
    return 0;
}

int cmd_symbol(std::uint64_t p, const std::string& gtext, const std::string& ftext,
               const std::string& format, std::ostream& out) {
    Polynomial g = Polynomial::parse(p, gtext);
    Json j{{"p", p}, {"g", g.str()}};
    if (!ftext.empty()) {
        Polynomial f = Polynomial::parse(p, ftext);
        j["f"] = f.str();
        j["symbol"] = dedekind_symbol(g, f);
        j["kind"] = "dedekind";
    } else {
        if (g.degree() > 0) throw std::invalid_argument("legendre symbol needs a constant g");
        j["symbol"] = legendre(static_cast<std::int64_t>(g.coeff(0)), p);
        j["kind"] = "legendre";
    }
    emit(out, j, format);
    return 0;
}

int cmd_construct(const std::string& family, const FieldOpts& fo, const std::string& effort_s,
                  const std::string& format, const std::string& output, std::ostream& out) {
    auto F = fo.build();
    Family fam = family_from_name(family);
    if (fam == Family::Sz) throw std::invalid_argument("use the suzuki subcommand for Sz");
    RecipeResult r = fam == Family::SL2 ? structure_sl2(F) : strongly_real_structure_psl2(F);
    Effort effort = effort_from_name(effort_s);
    VerificationReport rep = verify_psl2(r.structure, effort);
    Json j{{"structure", structure_to_json(r.structure)},
           {"provenance", recipe_choice_to_json(r.choice)},
           {"verification", report_to_json(rep, F.get())}};
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::runtime_error("cannot write " + output);
        f << j.dump(2) << "\n";
    }
    if (format == "text") {
        out << family_name(fam) << "(" << F->q() << ") types (" << r.structure.t1.type[0] << ","
            << r.structure.t1.type[1] << "," << r.structure.t1.type[2] << ") / ("
            << r.structure.t2.type[0] << "," << r.structure.t2.type[1] << ","
            << r.structure.t2.type[2] << "), branch " << r.choice.branch << "\n"
            << report_text(rep);
    } else {
        emit(out, j, format);
    }
    return rep.pass() ? 0 : 1;
}

int cmd_verify(const std::string& input, const std::string& effort_s, const std::string& format,
               std::ostream& out) {
    Json in;
    {
        std::ifstream f(input);
        if (!f) throw std::invalid_argument("cannot read " + input);
        try {
            in = Json::parse(f);
        } catch (const Json::exception& ex) {
            throw std::invalid_argument(std::string("bad JSON: ") + ex.what());
        }
    }
    LoadedStructure ls = structure_from_json(in);
    Effort effort = effort_from_name(effort_s);
    VerificationReport rep;
    const Field* F = nullptr;
    if (std::holds_alternative<Psl2Structure>(ls)) {
        const auto& s = std::get<Psl2Structure>(ls);
        F = s.field.get();
        rep = verify_psl2(s, effort);
    } else {
        const auto& s = std::get<SzStructure>(ls);
        F = s.ctx.field.get();
        auto G = sz_group(s.ctx);
        rep = verify_sz(s, G);
    }
    if (format == "text")
        out << report_text(rep);
    else
        emit(out, report_to_json(rep, F), format);
    return rep.pass() ? 0 : 1;
}

struct NamedGroupResult {
    std::string name;
    std::uint64_t order;
    Json found;  // null when none
};

template <GroupOps E, class Render>
NamedGroupResult run_search(const std::string& name, const FiniteGroup<E>& G, Render render) {
    NamedGroupResult res{name, G.order(), Json()};
    auto hit = exhaustive_beauville_search(G);
    if (hit) {
        res.found = Json{{"t1", render(hit->t1)}, {"t2", render(hit->t2)}};
    }
    return res;
}

NamedGroupResult search_named_group(const std::string& group, std::uint64_t q, std::uint64_t p) {
    auto matrix_group = [&](MatMode mode, std::uint64_t qq) {
        auto F = make_field_q(qq);
        GroupElement id(Mat2::identity(*F), mode);
        auto G = FiniteGroup<GroupElement>::closure(id, sl2_standard_generators(*F, mode));
        std::string name = (mode == MatMode::PSL2 ? "L2(" : "SL2(") + std::to_string(qq) + ")";
        auto render = [mode](const FoundTriple<GroupElement>& t) {
            return Json{{"x", mat2_to_json(t.elems[0].matrix(), mode)},
                        {"y", mat2_to_json(t.elems[1].matrix(), mode)},
                        {"type", t.type}};
        };
        return run_search(name, G, render);
    };
    if (group == "a5") return matrix_group(MatMode::PSL2, 5);
    if (group == "l2" || group == "psl2") {
        if (!q) throw std::invalid_argument("--q required for l2");
        return matrix_group(MatMode::PSL2, q);
    }
    if (group == "sl2") {
        if (!q) throw std::invalid_argument("--q required for sl2");
        return matrix_group(MatMode::SL2, q);
    }
    if (group == "metacyclic") {
        if (!p) throw std::invalid_argument("--p required for metacyclic");
        auto G = metacyclic_group(p);
        auto render = [](const FoundTriple<MetacyclicElement>& t) {
            Json els = Json::array();
            for (auto& e : t.elems) els.push_back(Json{{"i", e.i()}, {"j", e.j()}});
            return Json{{"elements", els}, {"type", t.type}};
        };
        return run_search("metacyclic(" + std::to_string(p) + "^3)", G, render);
    }
    if (group == "cpcp") {
        if (!p) throw std::invalid_argument("--p required for cpcp");
        auto G = abelian_pp_group(p);
        auto render = [](const FoundTriple<AbelianPairElement>& t) {
            Json els = Json::array();
            for (auto& e : t.elems) els.push_back(Json{{"i", e.i()}, {"j", e.j()}});
            return Json{{"elements", els}, {"type", t.type}};
        };
        return run_search("C" + std::to_string(p) + "xC" + std::to_string(p), G, render);
    }
    throw std::invalid_argument("unknown group: " + group +
                                " (use a5, l2, sl2, metacyclic, cpcp)");
}

int cmd_search(const std::string& group, std::uint64_t q, std::uint64_t p, bool expect_none,
               const std::string& format, std::ostream& out) {
    NamedGroupResult res = search_named_group(group, q, p);
    bool found = !res.found.is_null();
    Json j{{"group", res.name},
           {"order", res.order},
           {"result", found ? "beauville-structure-found" : "no-beauville-structure"}};
    if (found) j["structure"] = res.found;
    if (expect_none) j["certificate"] = "exhaustive search over all hyperbolic generating triples";
    emit(out, j, format);
    if (expect_none) return found ? 1 : 0;
    return found ? 0 : 1;
}

int cmd_table1(std::uint64_t q, const std::string& format, std::ostream& out) {
    Json rows = Json::array();
    if (q) {
        rows.push_back(table1_row_to_json(table1_row(q)));
    } else {
        for (std::uint64_t qq = 11; qq <= 103; ++qq)
            if (is_prime(qq) && qq % 4 == 3) rows.push_back(table1_row_to_json(table1_row(qq)));
    }
    emit(out, Json{{"rows", rows}}, format);
    return 0;
}

int cmd_suzuki(unsigned e, bool order_data_only, bool ree, const std::string& format,
               const std::string& output, std::ostream& out) {
    if (ree) {
        emit(out, ree_order_data_to_json(ree_order_data(e)), format);
        return 0;
    }
    Json j{{"order_data", suzuki_order_data_to_json(suzuki_order_data(e))}};
    if (order_data_only || e != 3) {
        emit(out, j, format);
        return 0;
    }
    SzContext ctx = make_sz_context(e);
    auto G = sz_group(ctx);
    SzStructure s = sz_find_structure(ctx, G);
    VerificationReport rep = verify_sz(s, G);
    j["structure"] = structure_to_json(s);
    j["verification"] = report_to_json(rep, ctx.field.get());
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::runtime_error("cannot write " + output);
        f << Json{{"structure", j["structure"]}}.dump(2) << "\n";
    }
    emit(out, j, format);
    return rep.pass() ? 0 : 1;
}

int cmd_examples(const std::string& name, bool do_verify, const std::string& format,
                 std::ostream& out) {
    if (name.empty()) {
        Json list = Json::array();
        for (const auto& fx : golden_fixtures())
            list.push_back(Json{{"name", fx.name},
                                {"family", family_name(fx.structure.desc.family)},
                                {"q", fx.structure.desc.q},
                                {"types", fx.expected_types}});
        emit(out, Json{{"fixtures", list}}, format);
        return 0;
    }
    const GoldenFixture& fx = golden_fixture(name);
    Json j{{"name", fx.name},
           {"structure", structure_to_json(fx.structure)},
           {"expected", recipe_choice_to_json(fx.expected)},
           {"expected_types", fx.expected_types}};
    if (fx.involutor) j["involutor"] = mat2_to_json(*fx.involutor, MatMode::GL2);
    int rc = 0;
    if (do_verify) {
        VerificationReport rep = verify_psl2(fx.structure, Effort::exhaustive);
        j["verification"] = report_to_json(rep, fx.field.get());
        rc = rep.pass() ? 0 : 1;
    }
    emit(out, j, format);
    return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"construct, certify and serialize Beauville structures on L2(q), SL2(q) and Sz(q)"};
    app.require_subcommand(1);
    std::string format = "json";

    FieldOpts field_fo, construct_fo;
    std::string effort = "fast";
    std::string family, input, output, group, fixture_name, symbol_g, symbol_f;
    std::uint64_t table_q = 0, search_q = 0, search_p = 0, symbol_p = 0;
    unsigned sz_e = 3;
    bool order_data_only = false, ree = false, do_verify = false;

    CLI::App* c_field = app.add_subcommand("field", "describe GF(p^e)");
    add_field_opts(c_field, field_fo);

    CLI::App* c_symbol = app.add_subcommand("symbol", "Legendre / Dedekind quadratic symbols");
    c_symbol->add_option("--p", symbol_p, "odd prime")->required();
    c_symbol->add_option("--g", symbol_g, "numerator polynomial")->required();
    c_symbol->add_option("--f", symbol_f, "denominator polynomial (omit for Legendre)");

    CLI::App* c_construct = app.add_subcommand("construct", "build a Beauville structure");
    c_construct->add_option("--family", family, "psl2 or sl2")->required();
    add_field_opts(c_construct, construct_fo);
    c_construct->add_option("--effort", effort, "fast or exhaustive")
        ->check(CLI::IsMember({"fast", "exhaustive"}));
    c_construct->add_option("--output", output, "also write the document to a file");

    CLI::App* c_verify = app.add_subcommand("verify", "verify a structure file");
    c_verify->add_option("--input", input, "structure JSON file")->required();
    c_verify->add_option("--effort", effort, "fast or exhaustive")
        ->check(CLI::IsMember({"fast", "exhaustive"}));

    CLI::App* c_search = app.add_subcommand("search", "exhaustive structure search");
    c_search->add_option("--group", group, "a5, l2, sl2, metacyclic, cpcp")->required();
    c_search->add_option("--q", search_q, "prime power for l2/sl2");
    c_search->add_option("--p", search_p, "parameter for metacyclic/cpcp");

    CLI::App* c_negative = app.add_subcommand("negative", "certify that no structure exists");
    c_negative->add_option("--group", group, "a5, l2, sl2, metacyclic, cpcp")->required();
    c_negative->add_option("--q", search_q, "prime power for l2/sl2");
    c_negative->add_option("--p", search_p, "parameter for metacyclic/cpcp");

    CLI::App* c_table1 = app.add_subcommand("table1", "primitive roots d with d-1+d^{-1} square");
    c_table1->add_option("--q", table_q, "prime q = 3 mod 4 (default: all 11..103)");

    CLI::App* c_suzuki = app.add_subcommand("suzuki", "Sz(2^e) structure and order data");
    c_suzuki->add_option("--e", sz_e, "odd exponent >= 3 (structure search at e = 3)");
    c_suzuki->add_flag("--order-data", order_data_only, "emit torus order data only");
    c_suzuki->add_flag("--ree", ree, "emit R(3^e) order data instead");
    c_suzuki->add_option("--output", output, "also write the structure to a file");

    CLI::App* c_examples = app.add_subcommand("examples", "pinned worked examples");
    c_examples->add_option("--name", fixture_name, "3A, 3B, 3C, 5A, 5B, q7, q9, q11-sl2");
    c_examples->add_flag("--verify", do_verify, "run exhaustive verification");

    for (CLI::App* sub : {c_field, c_symbol, c_construct, c_verify, c_search, c_negative,
                          c_table1, c_suzuki, c_examples})
        sub->add_option("--format", format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));

    std::vector<std::string> argv_ordered = args;
    std::reverse(argv_ordered.begin(), argv_ordered.end());
    try {
        app.parse(argv_ordered);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (c_field->parsed()) return cmd_field(field_fo, format, out);
        if (c_symbol->parsed()) return cmd_symbol(symbol_p, symbol_g, symbol_f, format, out);
        if (c_construct->parsed())
            return cmd_construct(family, construct_fo, effort, format, output, out);
        if (c_verify->parsed()) return cmd_verify(input, effort, format, out);
        if (c_search->parsed()) return cmd_search(group, search_q, search_p, false, format, out);
        if (c_negative->parsed()) return cmd_search(group, search_q, search_p, true, format, out);
        if (c_table1->parsed()) return cmd_table1(table_q, format, out);
        if (c_suzuki->parsed())
            return cmd_suzuki(sz_e, order_data_only, ree, format, output, out);
        if (c_examples->parsed()) return cmd_examples(fixture_name, do_verify, format, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace bvl
