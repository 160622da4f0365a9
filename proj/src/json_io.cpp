#include "polyaut/json_io.hpp"

#include <algorithm>

#include "polyaut/parse.hpp"

namespace polyaut::jio {

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const char* where) {
    if (!obj.is_object()) fail(Err::InvalidInput, std::string(where) + ": expected a JSON object");
    for (const auto& [k, v] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (k == a) {
                ok = true;
                break;
            }
        if (!ok) fail(Err::InvalidInput, std::string(where) + ": unknown field \"" + k + "\"");
    }
}

namespace {

std::string need_string(const Json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j[key].is_string())
        fail(Err::InvalidInput, std::string(where) + ": missing string field \"" + key + "\"");
    return j[key].get<std::string>();
}

long need_int(const Json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(Err::InvalidInput, std::string(where) + ": missing integer field \"" + key + "\"");
    return j[key].get<long>();
}

const Json& need_obj(const Json& j, const char* key, const char* where) {
    if (!j.contains(key))
        fail(Err::InvalidInput, std::string(where) + ": missing field \"" + key + "\"");
    return j[key];
}

} // namespace

FieldSpec field_from_json(const Json& j) {
    check_keys(j, {"kind", "m", "param"}, "field");
    std::string kind = need_string(j, "kind", "field");
    if (kind == "rationals") return FieldSpec::rationals();
    if (kind == "cyclotomic") {
        long m = need_int(j, "m", "field");
        if (m < 1) fail(Err::InvalidInput, "field: cyclotomic index must be >= 1");
        return FieldSpec::cyclotomic(static_cast<unsigned long>(m));
    }
    if (kind == "rational_functions")
        return FieldSpec::rational_functions(need_string(j, "param", "field"));
    fail(Err::InvalidInput, "field: unknown kind \"" + kind + "\"");
}

Json field_to_json(const FieldSpec& f) {
    Json j;
    switch (f.kind()) {
        case FieldKind::Rationals: j["kind"] = "rationals"; break;
        case FieldKind::Cyclotomic:
            j["kind"] = "cyclotomic";
            j["m"] = f.cyclotomic_m();
            break;
        case FieldKind::RationalFunctions:
            j["kind"] = "rational_functions";
            j["param"] = f.param();
            break;
    }
    return j;
}

PolyRing ring_from_json(const Json& j) {
    check_keys(j, {"field", "vars", "order"}, "ring");
    FieldSpec field = field_from_json(need_obj(j, "field", "ring"));
    const Json& jv = need_obj(j, "vars", "ring");
    if (!jv.is_array()) fail(Err::InvalidInput, "ring: vars must be an array");
    std::vector<std::string> vars;
    for (const auto& v : jv) vars.push_back(v.get<std::string>());
    MonOrder order = MonOrder::Lex;
    if (j.contains("order")) {
        std::string o = j["order"].get<std::string>();
        if (o == "lex")
            order = MonOrder::Lex;
        else if (o == "degrevlex")
            order = MonOrder::DegRevLex;
        else
            fail(Err::InvalidInput, "ring: unknown order \"" + o + "\"");
    }
    return PolyRing(std::move(field), std::move(vars), order);
}

Json ring_to_json(const PolyRing& r) {
    Json j;
    j["field"] = field_to_json(r.field());
    j["vars"] = r.vars();
    j["order"] = r.order() == MonOrder::Lex ? "lex" : "degrevlex";
    return j;
}

namespace {

ElementaryFactor factor_from_json(const Json& j, const PolyRing& ring) {
    check_keys(j, {"affine", "elem", "perm"}, "word factor");
    if (j.size() != 1) fail(Err::InvalidInput, "word factor: exactly one of affine/elem/perm");
    if (j.contains("affine")) {
        const Json& a = j["affine"];
        check_keys(a, {"matrix", "shift"}, "affine factor");
        const Json& jm = need_obj(a, "matrix", "affine factor");
        std::size_t n = ring.nvars();
        Matrix mat(ring.field(), n, n);
        if (!jm.is_array() || jm.size() != n)
            fail(Err::InvalidInput, "affine factor: matrix must be n rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (!jm[i].is_array() || jm[i].size() != n)
                fail(Err::InvalidInput, "affine factor: matrix row size");
            for (std::size_t k = 0; k < n; ++k)
                mat.at(i, k) = parse_scalar(jm[i][k].get<std::string>(), ring.field());
        }
        std::vector<Scalar> shift(n, Scalar::zero(ring.field()));
        if (a.contains("shift")) {
            const Json& js = a["shift"];
            if (!js.is_array() || js.size() != n)
                fail(Err::InvalidInput, "affine factor: shift size");
            for (std::size_t i = 0; i < n; ++i)
                shift[i] = parse_scalar(js[i].get<std::string>(), ring.field());
        }
        return AffineFactor{std::move(mat), std::move(shift)};
    }
    if (j.contains("elem")) {
        const Json& e = j["elem"];
        check_keys(e, {"var", "p"}, "elementary factor");
        std::string var = need_string(e, "var", "elementary factor");
        auto idx = ring.var_index(var);
        if (!idx) fail(Err::InvalidInput, "elementary factor: unknown variable " + var);
        MultiPoly p = parse_poly(need_string(e, "p", "elementary factor"), ring);
        return ElemFactor{*idx, std::move(p)};
    }
    const Json& perm = j["perm"];
    if (!perm.is_array()) fail(Err::InvalidInput, "permutation factor: expected array");
    std::vector<std::size_t> pv;
    for (const auto& v : perm) pv.push_back(v.get<std::size_t>());
    return PermFactor{std::move(pv)};
}

Json factor_to_json(const ElementaryFactor& f, const PolyRing& ring) {
    Json j;
    if (const auto* a = std::get_if<AffineFactor>(&f)) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < a->mat.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < a->mat.cols(); ++k)
                row.push_back(a->mat.at(i, k).to_string());
            rows.push_back(std::move(row));
        }
        Json shift = Json::array();
        for (const auto& s : a->shift) shift.push_back(s.to_string());
        j["affine"] = Json{{"matrix", std::move(rows)}, {"shift", std::move(shift)}};
    } else if (const auto* e = std::get_if<ElemFactor>(&f)) {
        j["elem"] = Json{{"var", ring.vars()[e->var]}, {"p", e->p.to_string()}};
    } else {
        j["perm"] = std::get<PermFactor>(f).perm;
    }
    return j;
}

} // namespace

PolyMap map_from_json(const Json& j) {
    check_keys(j, {"ring", "coords", "word"}, "map");
    PolyRing ring = ring_from_json(need_obj(j, "ring", "map"));
    std::vector<ElementaryFactor> word;
    bool has_word = j.contains("word");
    if (has_word) {
        const Json& jw = j["word"];
        if (!jw.is_array()) fail(Err::InvalidInput, "map: word must be an array");
        for (const auto& f : jw) word.push_back(factor_from_json(f, ring));
    }
    if (j.contains("coords")) {
        const Json& jc = j["coords"];
        if (!jc.is_array() || jc.size() != ring.nvars())
            fail(Err::ArityMismatch, "map: coords must list one polynomial per variable");
        std::vector<MultiPoly> coords;
        for (const auto& c : jc) coords.push_back(parse_poly(c.get<std::string>(), ring));
        if (has_word) return PolyMap::from_coords_with_word(ring, std::move(coords), std::move(word));
        return PolyMap(ring, std::move(coords));
    }
    if (!has_word) fail(Err::InvalidInput, "map: needs coords or word");
    return PolyMap::from_word(ring, std::move(word));
}

Json map_to_json(const PolyMap& m) {
    Json j;
    j["ring"] = ring_to_json(m.ring());
    Json coords = Json::array();
    for (const auto& c : m.coords()) coords.push_back(c.to_string());
    j["coords"] = std::move(coords);
    if (m.has_word()) {
        Json w = Json::array();
        for (const auto& f : m.word()) w.push_back(factor_to_json(f, m.ring()));
        j["word"] = std::move(w);
    }
    return j;
}

Derivation derivation_from_json(const Json& j) {
    check_keys(j, {"ring", "images"}, "derivation");
    PolyRing ring = ring_from_json(need_obj(j, "ring", "derivation"));
    const Json& ji = need_obj(j, "images", "derivation");
    if (!ji.is_array() || ji.size() != ring.nvars())
        fail(Err::ArityMismatch, "derivation: one image per variable");
    std::vector<MultiPoly> images;
    for (const auto& s : ji) images.push_back(parse_poly(s.get<std::string>(), ring));
    return Derivation(ring, std::move(images));
}

Json derivation_to_json(const Derivation& d) {
    Json j;
    j["ring"] = ring_to_json(d.ring());
    Json imgs = Json::array();
    for (const auto& g : d.images()) imgs.push_back(g.to_string());
    j["images"] = std::move(imgs);
    return j;
}

ParametricMap pmap_from_json(const Json& j) {
    check_keys(j, {"ring", "param", "kind", "denom_power", "coords"}, "parametric map");
    PolyRing base = ring_from_json(need_obj(j, "ring", "parametric map"));
    std::string param = need_string(j, "param", "parametric map");
    std::string kind = need_string(j, "kind", "parametric map");
    FlowKind fk;
    if (kind == "additive")
        fk = FlowKind::Additive;
    else if (kind == "multiplicative")
        fk = FlowKind::Multiplicative;
    else
        fail(Err::InvalidInput, "parametric map: unknown kind \"" + kind + "\"");
    long denom = j.contains("denom_power") ? need_int(j, "denom_power", "parametric map") : 0;
    PolyRing ext = base.extended({param});
    const Json& jc = need_obj(j, "coords", "parametric map");
    if (!jc.is_array() || jc.size() != base.nvars())
        fail(Err::ArityMismatch, "parametric map: one coordinate per base variable");
    std::vector<MultiPoly> coords;
    for (const auto& c : jc) coords.push_back(parse_poly(c.get<std::string>(), ext));
    return ParametricMap(base, param, fk, std::move(coords), denom);
}

Json pmap_to_json(const ParametricMap& p) {
    Json j;
    j["ring"] = ring_to_json(p.base_ring());
    j["param"] = p.param();
    j["kind"] = p.kind() == FlowKind::Additive ? "additive" : "multiplicative";
    j["denom_power"] = p.denom_power();
    Json coords = Json::array();
    for (const auto& c : p.coords()) coords.push_back(c.to_string());
    j["coords"] = std::move(coords);
    return j;
}

Ideal ideal_from_json(const Json& j) {
    check_keys(j, {"ring", "generators"}, "ideal");
    PolyRing ring = ring_from_json(need_obj(j, "ring", "ideal"));
    const Json& jg = need_obj(j, "generators", "ideal");
    if (!jg.is_array()) fail(Err::InvalidInput, "ideal: generators must be an array");
    std::vector<MultiPoly> gens;
    for (const auto& g : jg) gens.push_back(parse_poly(g.get<std::string>(), ring));
    return Ideal(ring, std::move(gens));
}

Json ideal_to_json(const Ideal& i) {
    Json j;
    j["ring"] = ring_to_json(i.ring);
    Json gens = Json::array();
    for (const auto& g : i.gens) gens.push_back(g.to_string());
    j["generators"] = std::move(gens);
    return j;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k).to_string());
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

Json witness_to_json(const RationalWitness& w) {
    if (w.den.is_constant() && w.den.constant_value().is_one()) return w.num.to_string();
    return w.num.to_string() + "/(" + w.den.to_string() + ")";
}

Json form_to_json(const NormalForm& f) {
    Json j;
    if (const auto* p1 = std::get_if<NormalFormPhi1>(&f)) {
        j["kind"] = "Phi1";
        j["n"] = p1->n;
        j["m"] = p1->m;
        j["a"] = p1->a.to_string();
        j["b"] = p1->b.to_string();
    } else {
        const auto& p2 = std::get<NormalFormPhi2>(f);
        j["kind"] = "Phi2";
        j["a"] = p2.a.to_string();
        j["b"] = p2.b.to_string();
        j["p"] = p2.p.to_string();
    }
    return j;
}

} // namespace

Json report_to_json(const ClassificationReport& r) {
    Json j;
    Json verdict;
    switch (r.verdict) {
        case ClassificationReport::Verdict::NEquals:
            verdict["kind"] = "n_equals";
            verdict["n"] = r.n;
            break;
        case ClassificationReport::Verdict::NAtMost:
            verdict["kind"] = "n_at_most";
            verdict["n"] = r.n;
            break;
        case ClassificationReport::Verdict::Inconclusive: verdict["kind"] = "inconclusive"; break;
    }
    j["verdict"] = std::move(verdict);
    j["matched_form"] = r.matched_form ? form_to_json(*r.matched_form) : Json(nullptr);
    Json ws = Json::array();
    for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
    j["witnesses"] = std::move(ws);
    Json ev;
    switch (r.evidence.order_status) {
        case Evidence::OrderStatus::Found:
            ev["order"] = r.evidence.order_found;
            break;
        case Evidence::OrderStatus::NoneUpToBound:
            ev["order"] = nullptr;
            break;
        case Evidence::OrderStatus::BudgetStopped:
            ev["order"] = "budget_stopped";
            break;
    }
    ev["order_bound"] = r.evidence.order_bound;
    ev["order_checked_up_to"] = r.evidence.order_checked_up_to;
    ev["invariant_degree_bound"] = r.evidence.invariant_degree_bound;
    ev["invariant_search_completed"] = r.evidence.invariant_search_completed;
    ev["invariant_found"] = r.evidence.invariant_found;
    if (r.evidence.fixpoint) {
        Json p = Json::array();
        for (const auto& s : *r.evidence.fixpoint) p.push_back(s.to_string());
        ev["fixpoint"] = std::move(p);
        ev["fixpoint_unique"] = r.evidence.fixpoint_unique;
        ev["differential_unipotent"] = r.evidence.differential_unipotent;
    }
    ev["map_is_identity"] = r.evidence.map_is_identity;
    ev["trail"] = r.evidence.trail;
    j["evidence"] = std::move(ev);
    return j;
}

Json pm_report_to_json(const PoloniMoserReport& r) {
    Json j;
    j["degree_bound"] = r.degree_bound;
    j["ideal_equality"] = r.ideal_equality;
    j["unique_fixpoint"] = r.unique_fixpoint_ok;
    j["jacobian"] = matrix_to_json(r.jacobian);
    j["jacobian_convention"] =
        "rows are (dPsi_i/dv_j) for v = (y, z); the source displays the transpose";
    j["unipotent"] = r.unipotent;
    j["nonidentity_differential"] = r.nonidentity_differential;
    Json bases;
    for (const auto& [d, basis] : r.invariant_bases) {
        Json b = Json::array();
        for (const auto& f : basis) b.push_back(f.to_string());
        bases[std::to_string(d)] = std::move(b);
    }
    j["invariant_bases"] = std::move(bases);
    j["invariants_match_expected"] = r.invariants_match_expected;
    j["phi_jacobian_det"] = r.phi_jacobian_det.to_string();
    j["scope"] = "degree-bounded invariant statement; the full invariant-field claim is not "
                 "desk-checkable";
    j["conclusion"] = r.conclusion;
    return j;
}

Budget budget_from_json(const Json& j, Budget base) {
    check_keys(j, {"max_terms", "max_gb_terms", "max_pairs", "max_elim_ops"}, "budgets");
    if (j.contains("max_terms")) base.max_terms = j["max_terms"].get<std::size_t>();
    if (j.contains("max_gb_terms")) base.max_gb_terms = j["max_gb_terms"].get<std::size_t>();
    if (j.contains("max_pairs")) base.max_pairs = j["max_pairs"].get<std::size_t>();
    if (j.contains("max_elim_ops")) base.max_elim_ops = j["max_elim_ops"].get<std::uint64_t>();
    return base;
}

int exit_code_for(Err code) {
    switch (code) {
        case Err::BudgetExceeded: return 3;
        case Err::InternalError:
        case Err::SingularSystem: return 4;
        default: return 2;
    }
}

Json error_to_json(const AlgebraError& e) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Json err;
    err["code"] = err_name(e.code());
    err["message"] = e.what();
    j["error"] = std::move(err);
    return j;
}

namespace {

Scalar scalar_for_map(const Json& inputs, const char* key, const PolyMap& f, const char* where) {
    return parse_scalar(need_string(inputs, key, where), f.ring().field());
}

} // namespace

CommandResult run_command(const std::string& command, const Json& inputs) {
    Json result;
    int exit_code = 0;

    if (command == "compose") {
        check_keys(inputs, {"f", "g"}, "compose");
        PolyMap f = map_from_json(need_obj(inputs, "f", "compose"));
        PolyMap g = map_from_json(need_obj(inputs, "g", "compose"));
        result["map"] = map_to_json(compose(f, g));
    } else if (command == "invert") {
        check_keys(inputs, {"f"}, "invert");
        result["map"] = map_to_json(invert(map_from_json(need_obj(inputs, "f", "invert"))));
    } else if (command == "iterate-degrees") {
        check_keys(inputs, {"f", "n"}, "iterate-degrees");
        PolyMap f = map_from_json(need_obj(inputs, "f", "iterate-degrees"));
        long n = need_int(inputs, "n", "iterate-degrees");
        if (n < 1) fail(Err::InvalidInput, "iterate-degrees: n must be >= 1");
        result["degrees"] = iterate_degrees(f, static_cast<unsigned>(n));
    } else if (command == "order") {
        check_keys(inputs, {"f", "bound"}, "order");
        PolyMap f = map_from_json(need_obj(inputs, "f", "order"));
        long bound = inputs.contains("bound") ? need_int(inputs, "bound", "order") : 64;
        auto ord = order_up_to(f, static_cast<unsigned long>(bound));
        result["order"] = ord ? Json(*ord) : Json(nullptr);
    } else if (command == "exp") {
        check_keys(inputs, {"derivation", "bound"}, "exp");
        Derivation d = derivation_from_json(need_obj(inputs, "derivation", "exp"));
        unsigned bound =
            inputs.contains("bound") ? static_cast<unsigned>(need_int(inputs, "bound", "exp")) : 256;
        result["flow"] = pmap_to_json(exp_flow(d, bound));
    } else if (command == "log") {
        check_keys(inputs, {"f", "bound"}, "log");
        PolyMap f = map_from_json(need_obj(inputs, "f", "log"));
        unsigned bound =
            inputs.contains("bound") ? static_cast<unsigned>(need_int(inputs, "bound", "log")) : 64;
        result["derivation"] = derivation_to_json(log_unipotent(f, bound));
    } else if (command == "psi-degree") {
        check_keys(inputs, {"derivation", "poly"}, "psi-degree");
        Derivation d = derivation_from_json(need_obj(inputs, "derivation", "psi-degree"));
        MultiPoly f = parse_poly(need_string(inputs, "poly", "psi-degree"), d.ring());
        long deg = psi_degree(d, f);
        result["degree"] = deg < 0 ? Json(nullptr) : Json(deg);
    } else if (command == "weight-split") {
        check_keys(inputs, {"f", "a", "poly", "range"}, "weight-split");
        PolyMap f = map_from_json(need_obj(inputs, "f", "weight-split"));
        Scalar a = scalar_for_map(inputs, "a", f, "weight-split");
        MultiPoly p = parse_poly(need_string(inputs, "poly", "weight-split"), f.ring());
        const Json& range = need_obj(inputs, "range", "weight-split");
        if (!range.is_array() || range.size() != 2)
            fail(Err::InvalidInput, "weight-split: range must be [r, s]");
        WeightDecomposition wd =
            weight_split(f, a, p, range[0].get<long>(), range[1].get<long>());
        Json comps;
        for (std::size_t k = 0; k < wd.weights.size(); ++k)
            comps[std::to_string(wd.weights[k])] = wd.components[k].to_string();
        result["components"] = std::move(comps);
    } else if (command == "build-flow") {
        check_keys(inputs, {"f", "a"}, "build-flow");
        PolyMap f = map_from_json(need_obj(inputs, "f", "build-flow"));
        Scalar a = scalar_for_map(inputs, "a", f, "build-flow");
        result["flow"] = pmap_to_json(build_gm_flow(f, a));
    } else if (command == "decompose") {
        check_keys(inputs, {"f", "flow", "r", "h"}, "decompose");
        PolyMap f = map_from_json(need_obj(inputs, "f", "decompose"));
        ParametricMap psi = pmap_from_json(need_obj(inputs, "flow", "decompose"));
        long r = need_int(inputs, "r", "decompose");
        if (r < 1) fail(Err::InvalidInput, "decompose: r must be a positive integer");
        const Json& jh = need_obj(inputs, "h", "decompose");
        check_keys(jh, {"kind", "value"}, "decompose.h");
        std::string kind = need_string(jh, "kind", "decompose.h");
        GroupElementSpec h{kind == "additive" ? GroupElementSpec::Kind::Additive
                                              : GroupElementSpec::Kind::Multiplicative,
                           parse_scalar(need_string(jh, "value", "decompose.h"),
                                        f.ring().field())};
        if (kind != "additive" && kind != "multiplicative")
            fail(Err::InvalidInput, "decompose: h.kind must be additive or multiplicative");
        FinitePartResult res = finite_part_decompose(f, psi, static_cast<unsigned long>(r), h);
        result["delta"] = map_to_json(res.delta);
        result["b"] = res.b.to_string();
        result["delta_order"] = res.delta_order;
        result["r"] = r;
    } else if (command == "gb") {
        check_keys(inputs, {"ideal", "order"}, "gb");
        Ideal ideal = ideal_from_json(need_obj(inputs, "ideal", "gb"));
        MonOrder order = MonOrder::Lex;
        if (inputs.contains("order") && inputs["order"].get<std::string>() == "degrevlex")
            order = MonOrder::DegRevLex;
        GroebnerBasis gb = buchberger(ideal, order);
        Json basis = Json::array();
        for (const auto& g : gb.basis()) basis.push_back(g.to_string());
        result["basis"] = std::move(basis);
        result["order"] = order == MonOrder::Lex ? "lex" : "degrevlex";
    } else if (command == "reduce") {
        check_keys(inputs, {"ideal", "order", "poly"}, "reduce");
        Ideal ideal = ideal_from_json(need_obj(inputs, "ideal", "reduce"));
        MonOrder order = MonOrder::Lex;
        if (inputs.contains("order") && inputs["order"].get<std::string>() == "degrevlex")
            order = MonOrder::DegRevLex;
        MultiPoly f = parse_poly(need_string(inputs, "poly", "reduce"), ideal.ring);
        result["normal_form"] = reduce(f, buchberger(ideal, order)).to_string();
    } else if (command == "fixpoints") {
        check_keys(inputs, {"f"}, "fixpoints");
        PolyMap f = map_from_json(need_obj(inputs, "f", "fixpoints"));
        result["ideal"] = ideal_to_json(fixpoint_ideal(f));
    } else if (command == "unique-fixpoint") {
        check_keys(inputs, {"f", "point"}, "unique-fixpoint");
        PolyMap f = map_from_json(need_obj(inputs, "f", "unique-fixpoint"));
        const Json& jp = need_obj(inputs, "point", "unique-fixpoint");
        if (!jp.is_array() || jp.size() != f.ring().nvars())
            fail(Err::ArityMismatch, "unique-fixpoint: point arity");
        std::vector<Scalar> p;
        for (const auto& s : jp)
            p.push_back(parse_scalar(s.get<std::string>(), f.ring().field()));
        result["unique"] = unique_fixpoint(f, p);
    } else if (command == "invariants") {
        check_keys(inputs, {"f", "degree_bound"}, "invariants");
        PolyMap f = map_from_json(need_obj(inputs, "f", "invariants"));
        long d = inputs.contains("degree_bound") ? need_int(inputs, "degree_bound", "invariants") : 8;
        if (d < 0) fail(Err::InvalidInput, "invariants: degree bound must be >= 0");
        Json basis = Json::array();
        for (const auto& g : invariant_basis(f, static_cast<unsigned>(d)))
            basis.push_back(g.to_string());
        result["basis"] = std::move(basis);
    } else if (command == "classify") {
        check_keys(inputs, {"f", "order_bound", "invariant_degree_bound"}, "classify");
        PolyMap f = map_from_json(need_obj(inputs, "f", "classify"));
        ClassifyOptions opts;
        if (inputs.contains("order_bound"))
            opts.order_bound = static_cast<unsigned long>(need_int(inputs, "order_bound", "classify"));
        if (inputs.contains("invariant_degree_bound"))
            opts.invariant_degree_bound =
                static_cast<unsigned>(need_int(inputs, "invariant_degree_bound", "classify"));
        ClassificationReport rep = classify_plane(f, opts);
        result = report_to_json(rep);
        if (rep.verdict == ClassificationReport::Verdict::Inconclusive) exit_code = 3;
    } else if (command == "poloni-moser") {
        check_keys(inputs, {"degree_bound"}, "poloni-moser");
        long d = inputs.contains("degree_bound") ? need_int(inputs, "degree_bound", "poloni-moser") : 6;
        if (d < 1) fail(Err::InvalidInput, "poloni-moser: degree bound must be >= 1");
        result = pm_report_to_json(run_poloni_moser(static_cast<unsigned>(d)));
    } else if (command == "verify-conjugacy") {
        check_keys(inputs, {"h", "a", "b"}, "verify-conjugacy");
        PolyMap h = map_from_json(need_obj(inputs, "h", "verify-conjugacy"));
        PolyMap a = map_from_json(need_obj(inputs, "a", "verify-conjugacy"));
        PolyMap b = map_from_json(need_obj(inputs, "b", "verify-conjugacy"));
        result["conjugate"] = verify_conjugacy(h, a, b);
    } else {
        fail(Err::InvalidInput, "unknown command \"" + command + "\"");
    }

    Json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = command;
    out["result"] = std::move(result);
    return CommandResult{std::move(out), exit_code};
}

CommandResult run_jobspec(const Json& job) {
    check_keys(job, {"schema_version", "command", "inputs", "budgets"}, "jobspec");
    if (job.contains("schema_version")) {
        std::string v = job["schema_version"].is_string()
                            ? job["schema_version"].get<std::string>()
                            : job["schema_version"].dump();
        if (v != kSchemaVersion)
            fail(Err::InvalidInput, "unsupported schema version " + v);
    }
    std::string command = need_string(job, "command", "jobspec");
    Json inputs = job.contains("inputs") ? job["inputs"] : Json::object();
    Budget budget = current_budget();
    if (job.contains("budgets")) budget = budget_from_json(job["budgets"], budget);
    BudgetScope scope(budget);
    return run_command(command, inputs);
}

} // namespace polyaut::jio
