#include "ultraspec/io.hpp"

#include <set>

#include "ultraspec/errors.hpp"

namespace ultraspec {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw validation_error("config field '" + where + "': " + what);
}

void need_object(const Json& j, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
}

/** Reject unknown keys so misspellings never silently change a run. */
void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    need_object(j, where);
    for (const auto& item : j.items())
        if (!allowed.count(item.key())) bad(where, "unknown key '" + item.key() + "'");
}

const Json& field_at(const Json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) bad(where, "missing key '" + key + "'");
    return *it;
}

std::string get_string(const Json& j, const std::string& key, const std::string& where) {
    const Json& v = field_at(j, key, where);
    if (!v.is_string()) bad(where + "." + key, "expected a string literal");
    return v.get<std::string>();
}

long get_integer(const Json& j, const std::string& key, const std::string& where, long fallback,
                 bool required = false) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (required) bad(where, "missing key '" + key + "'");
        return fallback;
    }
    if (!it->is_number_integer()) bad(where + "." + key, "expected an integer");
    return it->get<long>();
}

QuadScalar get_scalar(const Json& j, const std::string& key, const FieldSpec& f,
                      const std::string& where) {
    return parse_scalar(get_string(j, key, where), f);
}

Exponent get_exponent(const Json& j, const std::string& key, const std::string& where) {
    return parse_exponent(get_string(j, key, where));
}

Disk closed_disk_from(const Json& j, const FieldSpec& f, const std::string& where) {
    check_keys(j, {"center", "radius_exp"}, where);
    return Disk{get_scalar(j, "center", f, where), get_exponent(j, "radius_exp", where),
                DiskKind::Closed};
}

OpenDisk open_disk_from(const Json& j, const FieldSpec& f, const std::string& where) {
    check_keys(j, {"center", "radius_exp"}, where);
    return OpenDisk{get_scalar(j, "center", f, where), get_exponent(j, "radius_exp", where)};
}

PointT23 t23_from(const Json& j, const FieldSpec& f, const std::string& where) {
    check_keys(j, {"center", "radius_exp"}, where);
    return PointT23{get_scalar(j, "center", f, where), get_exponent(j, "radius_exp", where)};
}

ConnectedDomain connected_from(const Json& j, const FieldSpec& f, const std::string& where) {
    need_object(j, where);
    std::string kind = get_string(j, "kind", where);
    if (kind == "disk") {
        check_keys(j, {"kind", "center", "radius_exp"}, where);
        return DomainDisk{Disk{get_scalar(j, "center", f, where),
                               get_exponent(j, "radius_exp", where), DiskKind::Closed}};
    }
    if (kind == "affinoid") {
        check_keys(j, {"kind", "outer", "holes"}, where);
        DomainAffinoid a;
        a.outer = closed_disk_from(field_at(j, "outer", where), f, where + ".outer");
        const Json& holes = field_at(j, "holes", where);
        if (!holes.is_array()) bad(where + ".holes", "expected an array");
        for (std::size_t i = 0; i < holes.size(); ++i)
            a.holes.push_back(open_disk_from(holes[i], f,
                                             where + ".holes[" + std::to_string(i) + "]"));
        return a;
    }
    bad(where + ".kind", "expected 'disk' or 'affinoid', got '" + kind + "'");
}

}  // namespace

FieldSpec field_from_json(const Json& j) {
    std::string mode = get_string(j, "mode", "field");
    if (mode == "p-adic") {
        check_keys(j, {"mode", "p"}, "field");
        long p = get_integer(j, "p", "field", 0, true);
        if (p < 2) bad("field.p", "expected a prime >= 2");
        return FieldSpec::padic(static_cast<unsigned long>(p));
    }
    check_keys(j, {"mode"}, "field");
    if (mode == "equal-char-zero") return FieldSpec::equal_char_zero();
    if (mode == "trivial") return FieldSpec::trivial();
    bad("field.mode", "expected 'p-adic', 'equal-char-zero' or 'trivial', got '" + mode + "'");
}

DomainSpec domain_from_json(const Json& j, const FieldSpec& f) {
    need_object(j, "domain");
    std::string kind = get_string(j, "kind", "domain");
    DomainSpec dom;
    if (kind == "disk" || kind == "affinoid") {
        ConnectedDomain c = connected_from(j, f, "domain");
        if (std::holds_alternative<DomainDisk>(c)) dom = std::get<DomainDisk>(c);
        else dom = std::get<DomainAffinoid>(c);
    } else if (kind == "union") {
        check_keys(j, {"kind", "components"}, "domain");
        const Json& comp = field_at(j, "components", "domain");
        if (!comp.is_array()) bad("domain.components", "expected an array");
        DomainUnion u;
        for (std::size_t i = 0; i < comp.size(); ++i)
            u.components.push_back(connected_from(comp[i], f,
                                                  "domain.components[" + std::to_string(i) + "]"));
        dom = u;
    } else if (kind == "point") {
        std::string type = get_string(j, "type", "domain");
        if (type == "t23") {
            check_keys(j, {"kind", "type", "center", "radius_exp"}, "domain");
            dom = DomainPoint{PointT23{get_scalar(j, "center", f, "domain"),
                                       get_exponent(j, "radius_exp", "domain")}};
        } else if (type == "t4") {
            check_keys(j, {"kind", "type", "family", "declared_radius_exp"}, "domain");
            PointT4 x;
            const Json& fam = field_at(j, "family", "domain");
            if (!fam.is_array()) bad("domain.family", "expected an array");
            for (std::size_t i = 0; i < fam.size(); ++i)
                x.family.push_back(t23_from(fam[i], f,
                                            "domain.family[" + std::to_string(i) + "]"));
            x.declared_radius_exp = get_exponent(j, "declared_radius_exp", "domain");
            dom = DomainPoint{x};
        } else {
            bad("domain.type", "expected 't23' or 't4', got '" + type + "'");
        }
    } else {
        bad("domain.kind",
            "expected 'disk', 'affinoid', 'union' or 'point', got '" + kind + "'");
    }
    validate_domain(dom, f);
    return dom;
}

ModuleInput module_from_json(const Json& j, const FieldSpec& f) {
    need_object(j, "module");
    std::string kind = get_string(j, "kind", "module");
    if (kind == "matrix") {
        check_keys(j, {"kind", "entries"}, "module");
        const Json& rows = field_at(j, "entries", "module");
        if (!rows.is_array()) bad("module.entries", "expected an array of rows");
        QMatrix g;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string where = "module.entries[" + std::to_string(i) + "]";
            if (!rows[i].is_array()) bad(where, "expected an array of scalar literals");
            std::vector<QuadScalar> row;
            for (const Json& cell : rows[i]) {
                if (!cell.is_string()) bad(where, "expected a scalar literal string");
                row.push_back(parse_scalar(cell.get<std::string>(), f));
            }
            g.push_back(std::move(row));
        }
        check_square(g);
        return ModuleInput{g};
    }
    if (kind == "diffpoly") {
        check_keys(j, {"kind", "coeffs"}, "module");
        const Json& coeffs = field_at(j, "coeffs", "module");
        if (!coeffs.is_array() || coeffs.empty())
            bad("module.coeffs", "expected a nonempty array of scalar literals");
        DiffPoly p;
        for (const Json& cell : coeffs) {
            if (!cell.is_string()) bad("module.coeffs", "expected a scalar literal string");
            p.g.push_back(parse_scalar(cell.get<std::string>(), f));
        }
        return ModuleInput{p};
    }
    bad("module.kind", "expected 'matrix' or 'diffpoly', got '" + kind + "'");
}

Json field_to_json(const FieldSpec& f) {
    Json j;
    switch (f.mode) {
        case FieldMode::PAdic:
            j["mode"] = "p-adic";
            j["p"] = f.p;
            break;
        case FieldMode::EqualCharZero: j["mode"] = "equal-char-zero"; break;
        case FieldMode::Trivial: j["mode"] = "trivial"; break;
    }
    return j;
}

namespace {

Json closed_disk_json(const Disk& d, const FieldSpec& f) {
    Json j;
    j["center"] = format_scalar(d.center, f);
    j["radius_exp"] = format_exponent(d.radius_exp);
    return j;
}

Json connected_to_json(const ConnectedDomain& c, const FieldSpec& f) {
    Json j;
    if (std::holds_alternative<DomainDisk>(c)) {
        const Disk& d = std::get<DomainDisk>(c).disk;
        j["kind"] = "disk";
        j["center"] = format_scalar(d.center, f);
        j["radius_exp"] = format_exponent(d.radius_exp);
        return j;
    }
    const DomainAffinoid& a = std::get<DomainAffinoid>(c);
    j["kind"] = "affinoid";
    j["outer"] = closed_disk_json(a.outer, f);
    j["holes"] = Json::array();
    for (const OpenDisk& h : a.holes) {
        Json hj;
        hj["center"] = format_scalar(h.center, f);
        hj["radius_exp"] = format_exponent(h.radius_exp);
        j["holes"].push_back(hj);
    }
    return j;
}

}  // namespace

Json domain_to_json(const DomainSpec& d, const FieldSpec& f) {
    if (std::holds_alternative<DomainDisk>(d))
        return connected_to_json(std::get<DomainDisk>(d), f);
    if (std::holds_alternative<DomainAffinoid>(d))
        return connected_to_json(std::get<DomainAffinoid>(d), f);
    if (std::holds_alternative<DomainUnion>(d)) {
        Json j;
        j["kind"] = "union";
        j["components"] = Json::array();
        for (const ConnectedDomain& c : std::get<DomainUnion>(d).components)
            j["components"].push_back(connected_to_json(c, f));
        return j;
    }
    const BerkPoint& x = std::get<DomainPoint>(d).x;
    Json j;
    j["kind"] = "point";
    if (std::holds_alternative<PointT23>(x)) {
        const PointT23& p = std::get<PointT23>(x);
        j["type"] = "t23";
        j["center"] = format_scalar(p.center, f);
        j["radius_exp"] = format_exponent(p.radius_exp);
        return j;
    }
    const PointT4& p = std::get<PointT4>(x);
    j["type"] = "t4";
    j["family"] = Json::array();
    for (const PointT23& w : p.family) {
        Json wj;
        wj["center"] = format_scalar(w.center, f);
        wj["radius_exp"] = format_exponent(w.radius_exp);
        j["family"].push_back(wj);
    }
    j["declared_radius_exp"] = format_exponent(p.declared_radius_exp);
    return j;
}

Json module_to_json(const ModuleInput& m, const FieldSpec& f) {
    Json j;
    if (std::holds_alternative<QMatrix>(m)) {
        j["kind"] = "matrix";
        j["entries"] = Json::array();
        for (const auto& row : std::get<QMatrix>(m)) {
            Json rj = Json::array();
            for (const QuadScalar& s : row) rj.push_back(format_scalar(s, f));
            j["entries"].push_back(rj);
        }
        return j;
    }
    j["kind"] = "diffpoly";
    j["coeffs"] = Json::array();
    for (const QuadScalar& s : std::get<DiffPoly>(m).g) j["coeffs"].push_back(format_scalar(s, f));
    return j;
}

Json disk_to_json(const Disk& d, const FieldSpec& f) {
    Json j = closed_disk_json(d, f);
    j["kind"] = d.kind == DiskKind::Closed ? "closed" : "closure-open";
    return j;
}

Json spectrum_to_json(const Spectrum& s, const FieldSpec& f) {
    Json j;
    j["disks"] = Json::array();
    for (const Disk& d : s.disks) j["disks"].push_back(disk_to_json(d, f));
    j["components"] = Json::array();
    for (const auto& comp : s.components) j["components"].push_back(comp);
    return j;
}

Json spectrum_report_to_json(const SpectrumReport& r, const FieldSpec& f) {
    Json j;
    j["case"] = r.case_tag;
    j["spectrum"] = spectrum_to_json(r.spectrum, f);
    j["enclosing_radius_exp"] = format_exponent(r.enclosing_radius_exp);
    j["eigenvalues"] = Json::array();
    for (const auto& [value, mult] : r.eigenvalues) {
        Json e;
        e["value"] = format_scalar(value, f);
        e["multiplicity"] = mult;
        j["eigenvalues"].push_back(e);
    }
    j["flags"] = Json::array();
    if (r.valuation_only) j["flags"].push_back("valuation-only");
    if (r.mixed_kind) j["flags"].push_back("mixed-kind");
    j["unresolved"] = Json::array();
    for (const UnresolvedInfo& u : r.unresolved) {
        Json uj;
        uj["factor"] = Json::array();
        for (const QuadScalar& c : u.factor.c) uj["factor"].push_back(format_scalar(c, f));
        uj["multiplicity"] = u.multiplicity;
        uj["slopes"] = Json::array();
        for (const auto& [val, mult] : u.slopes) {
            Json sj;
            sj["valuation"] = format_rat(val);
            sj["multiplicity"] = mult;
            uj["slopes"].push_back(sj);
        }
        j["unresolved"].push_back(uj);
    }
    return j;
}

RunConfig parse_config(const Json& j) {
    check_keys(j, {"schema", "field", "domain", "module", "command"}, "config");
    std::string schema = get_string(j, "schema", "config");
    if (schema != "ultraspec/1")
        bad("config.schema", "expected 'ultraspec/1', got '" + schema + "'");

    RunConfig cfg;
    cfg.field = field_from_json(field_at(j, "field", "config"));
    cfg.domain = domain_from_json(field_at(j, "domain", "config"), cfg.field);
    cfg.module = module_from_json(field_at(j, "module", "config"), cfg.field);

    const Json& cmd = field_at(j, "command", "config");
    need_object(cmd, "command");
    cfg.command = get_string(cmd, "name", "command");
    if (cfg.command == "spectrum" || cfg.command == "compare") {
        check_keys(cmd, {"name"}, "command");
    } else if (cfg.command == "oracle") {
        check_keys(cmd, {"name", "probes", "a", "n", "depth", "levels", "rho", "seed"},
                   "command");
        const Json& probes = field_at(cmd, "probes", "command");
        if (!probes.is_array() || probes.empty())
            bad("command.probes", "expected a nonempty array of probe names");
        for (const Json& p : probes) {
            if (!p.is_string()) bad("command.probes", "expected probe name strings");
            cfg.probes.push_back(p.get<std::string>());
        }
        cfg.params = cmd;
    } else if (cfg.command == "vary") {
        check_keys(cmd, {"name", "segment", "y", "margins", "witness"}, "command");
        const Json& seg = field_at(cmd, "segment", "command");
        check_keys(seg, {"center", "rho_low", "rho_high", "grid"}, "command.segment");
        cfg.segment.center = get_scalar(seg, "center", cfg.field, "command.segment");
        cfg.segment.rho_low = get_exponent(seg, "rho_low", "command.segment");
        cfg.segment.rho_high = get_exponent(seg, "rho_high", "command.segment");
        const Json& grid = field_at(seg, "grid", "command.segment");
        if (!grid.is_array()) bad("command.segment.grid", "expected an array");
        for (const Json& g : grid) {
            if (!g.is_string()) bad("command.segment.grid", "expected exponent literal strings");
            cfg.segment.grid.push_back(parse_exponent(g.get<std::string>()));
        }
        if (cmd.contains("y")) {
            cfg.has_focus = true;
            cfg.focus_rho = get_exponent(cmd, "y", "command");
        }
        if (cmd.contains("margins")) {
            const Json& margins = *cmd.find("margins");
            if (!margins.is_array() || margins.empty())
                bad("command.margins", "expected a nonempty array of rational literals");
            for (const Json& m : margins) {
                if (!m.is_string()) bad("command.margins", "expected rational literal strings");
                cfg.margins.push_back(parse_rat(m.get<std::string>()));
            }
        } else {
            cfg.margins = {make_rat(1, 4), make_rat(1, 2), Rat(1)};
        }
        if (cmd.contains("witness")) {
            const Json& w = *cmd.find("witness");
            if (!w.is_boolean()) bad("command.witness", "expected a boolean");
            cfg.witness = w.get<bool>();
        }
        validate_segment(cfg.segment, cfg.field);
    } else {
        bad("command.name",
            "expected 'spectrum', 'compare', 'oracle' or 'vary', got '" + cfg.command + "'");
    }
    return cfg;
}

}  // namespace ultraspec
