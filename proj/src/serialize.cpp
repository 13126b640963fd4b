#include "ultrachase/serialize.hpp"

namespace ultrachase {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

std::uint64_t need_uint(const Json& j, const char* key, const std::string& where) {
    const Json& v = need(j, key, where);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ParseError(where + ": field '" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

Rational parse_rational_at(const std::string& text, const std::string& where) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

Json to_json(const NormValue& v) {
    if (v.is_zero()) return Json{{"zero", true}};
    return Json{{"exp", to_string(v.exponent())}};
}

NormValue norm_value_from_json(const Json& j, const std::string& where) {
    if (j.is_object() && j.contains("zero")) {
        if (j.at("zero").is_boolean() && j.at("zero").get<bool>()) return NormValue::zero();
        throw ParseError(where + ": field 'zero' must be true when present");
    }
    return NormValue::pos(parse_rational_at(need_string(j, "exp", where), where));
}

Json to_json(const Scalar& s) {
    Json j = Json::array();
    for (const auto& t : s.terms()) j.push_back(Json::array({to_string(t.q), to_string(t.c)}));
    return j;
}

Scalar scalar_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": scalar must be an array of [q,c] pairs");
    std::vector<Scalar::Term> terms;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const Json& pair = j.at(k);
        if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_string() ||
            !pair.at(1).is_string()) {
            throw ParseError(where + "[" + std::to_string(k) + "]: term must be [\"q\",\"c\"]");
        }
        terms.push_back(Scalar::Term{
            parse_rational_at(pair.at(0).get<std::string>(), where + ".q"),
            parse_rational_at(pair.at(1).get<std::string>(), where + ".c")});
    }
    return Scalar::from_terms(std::move(terms));
}

Json to_json(const WeightFamily& w) {
    Json j;
    j["kind"] = w.index_set().is_finite() ? "finite" : "omega";
    Json exps = Json::array();
    const Index prefix =
        w.index_set().is_finite() ? w.index_set().size : w.stabilized_from();
    for (Index i = 0; i < prefix; ++i) exps.push_back(to_string(w.weight(i).exponent()));
    j["weight_exps"] = std::move(exps);
    if (!w.index_set().is_finite()) {
        j["tail_weight_exp"] = to_string(w.weight(w.stabilized_from()).exponent());
    }
    return j;
}

WeightFamily weight_family_from_json(const Json& j, const std::string& where) {
    const std::string kind = need_string(j, "kind", where);
    const Json& exps = need(j, "weight_exps", where);
    if (!exps.is_array()) throw ParseError(where + ": 'weight_exps' must be an array");
    std::vector<NormValue> weights;
    for (std::size_t k = 0; k < exps.size(); ++k) {
        if (!exps.at(k).is_string()) {
            throw ParseError(where + ".weight_exps[" + std::to_string(k) + "]: must be a string");
        }
        weights.push_back(NormValue::pos(
            parse_rational_at(exps.at(k).get<std::string>(), where + ".weight_exps")));
    }
    if (kind == "finite") return WeightFamily::finite(std::move(weights));
    if (kind == "omega") {
        NormValue tail = NormValue::pos(
            parse_rational_at(need_string(j, "tail_weight_exp", where), where + ".tail_weight_exp"));
        return WeightFamily::omega(std::move(weights), std::move(tail));
    }
    throw ParseError(where + ": 'kind' must be \"finite\" or \"omega\"");
}

Json entries_to_json(const PVector& x) {
    Json j = Json::array();
    for (const auto& [i, v] : x.entries()) {
        j.push_back(Json{{"i", i}, {"value", to_json(v)}});
    }
    return j;
}

PVector pvector_from_json(const WeightFamily& space, const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": vector entries must be an array");
    std::map<Index, Scalar> entries;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        const Json& e = j.at(k);
        entries[static_cast<Index>(need_uint(e, "i", at))] =
            scalar_from_json(need(e, "value", at), at + ".value");
    }
    return PVector(space, std::move(entries));
}

Json to_json(const OperatorDesc& f) {
    Json j;
    j["domain"] = to_json(f.domain());
    j["codomain"] = to_json(f.codomain());
    Json sparse = Json::array();
    for (const auto& [ji, a] : f.sparse()) {
        sparse.push_back(Json{{"j", ji.first}, {"i", ji.second}, {"value", to_json(a)}});
    }
    j["sparse"] = std::move(sparse);
    Json tails = Json::array();
    for (const auto& [row, tail] : f.row_tails()) {
        tails.push_back(Json{{"j", row},
                             {"i_start", tail.i_start},
                             {"lead", to_json(tail.lead)},
                             {"ratio_exp", to_string(tail.ratio_exp)}});
    }
    j["row_tails"] = std::move(tails);
    if (f.diag_tail()) {
        j["diag_tail"] = Json{{"j_start", f.diag_tail()->j_start},
                              {"lead", to_json(f.diag_tail()->lead)},
                              {"ratio_exp", to_string(f.diag_tail()->ratio_exp)}};
    }
    if (f.zero_flagged()) j["zero"] = true;
    return j;
}

OperatorDesc operator_from_json(const Json& j, const std::string& where) {
    WeightFamily dom = weight_family_from_json(need(j, "domain", where), where + ".domain");
    WeightFamily cod = weight_family_from_json(need(j, "codomain", where), where + ".codomain");
    if (j.contains("zero") && j.at("zero").is_boolean() && j.at("zero").get<bool>()) {
        return OperatorDesc::zero(std::move(dom), std::move(cod));
    }
    OperatorDesc f(std::move(dom), std::move(cod));
    if (j.contains("sparse")) {
        const Json& sparse = j.at("sparse");
        if (!sparse.is_array()) throw ParseError(where + ".sparse: must be an array");
        for (std::size_t k = 0; k < sparse.size(); ++k) {
            const std::string at = where + ".sparse[" + std::to_string(k) + "]";
            const Json& e = sparse.at(k);
            f.add_sparse(static_cast<Index>(need_uint(e, "j", at)),
                         static_cast<Index>(need_uint(e, "i", at)),
                         scalar_from_json(need(e, "value", at), at + ".value"));
        }
    }
    if (j.contains("row_tails")) {
        const Json& tails = j.at("row_tails");
        if (!tails.is_array()) throw ParseError(where + ".row_tails: must be an array");
        for (std::size_t k = 0; k < tails.size(); ++k) {
            const std::string at = where + ".row_tails[" + std::to_string(k) + "]";
            const Json& e = tails.at(k);
            f.set_row_tail(
                static_cast<Index>(need_uint(e, "j", at)),
                RowTail{static_cast<Index>(need_uint(e, "i_start", at)),
                        scalar_from_json(need(e, "lead", at), at + ".lead"),
                        parse_rational_at(need_string(e, "ratio_exp", at), at + ".ratio_exp")});
        }
    }
    if (j.contains("diag_tail") && !j.at("diag_tail").is_null()) {
        const std::string at = where + ".diag_tail";
        const Json& e = j.at("diag_tail");
        f.set_diag_tail(
            DiagTail{static_cast<Index>(need_uint(e, "j_start", at)),
                     scalar_from_json(need(e, "lead", at), at + ".lead"),
                     parse_rational_at(need_string(e, "ratio_exp", at), at + ".ratio_exp")});
    }
    return f;
}

Json to_json(const IndexSetOf& s) {
    Json j = Json::array();
    for (Index i : s) j.push_back(i);
    return j;
}

IndexSetOf index_set_of_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": must be an array of indices");
    IndexSetOf out;
    for (const auto& e : j) {
        if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0)) {
            throw ParseError(where + ": indices must be non-negative integers");
        }
        out.insert(e.get<Index>());
    }
    return out;
}

Json to_json(const Witness& w) {
    return Json{{"r_prime", to_json(w.r_prime)},
                {"i0", to_json(w.i0)},
                {"j0", to_json(w.j0)},
                {"certified", w.certified}};
}

Json to_json(const UltraWitness& w) {
    Json u0 = Json::array();
    for (Index i : w.u0.points()) u0.push_back(Json{{"principal", i}});
    return Json{{"r_prime", to_json(w.r_prime)},
                {"u0", std::move(u0)},
                {"j0", to_json(w.j0)},
                {"certified", w.certified}};
}

Json to_json(const Transcript& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps) {
        steps.push_back(Json{{"n", s.step},
                             {"j", s.j},
                             {"x", entries_to_json(s.x)},
                             {"r_prime_next", to_json(s.r_prime_next)},
                             {"blocked", to_json(s.j_blocked)}});
    }
    Json outcome;
    if (const auto* c = std::get_if<TranscriptCertified>(&t.outcome)) {
        outcome = Json{{"kind", "certified"},
                       {"at_step", c->at_step},
                       {"witness", to_json(c->witness)}};
    } else {
        outcome = Json{{"kind", "exhausted"},
                       {"max_steps", std::get<TranscriptExhausted>(t.outcome).max_steps}};
    }
    return Json{{"r", to_json(t.r)},
                {"r_prime0", to_json(t.r_prime0)},
                {"steps", std::move(steps)},
                {"outcome", std::move(outcome)}};
}

Json to_json(const TranscriptReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        checks.push_back(std::move(e));
    }
    return Json{{"all_pass", r.all_pass()}, {"checks", std::move(checks)}};
}

Json mask_to_json(Mask m) {
    Json j = Json::array();
    for (int b = 0; b < kMaxGround; ++b) {
        if (m & (1u << b)) j.push_back(b);
    }
    return j;
}

} // namespace ultrachase
