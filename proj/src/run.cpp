#include <optional>

#include "ultraspec/errors.hpp"
#include "ultraspec/io.hpp"
#include "ultraspec/oracle.hpp"

namespace ultraspec {

namespace {

SpectrumReport module_report(const ModuleInput& m, const DomainSpec& dom, const FieldSpec& f) {
    return std::visit([&](const auto& mod) { return module_spectrum(mod, dom, f); }, m);
}

std::string exp_str(const Exponent& e) { return format_exponent(e); }

Json exponent_list(const std::vector<Exponent>& exps) {
    Json j = Json::array();
    for (const Exponent& e : exps) j.push_back(exp_str(e));
    return j;
}

QuadScalar probe_scalar(const Json& params, const FieldSpec& f) {
    auto it = params.find("a");
    if (it == params.end() || !it->is_string())
        throw validation_error("command.a: this probe needs a scalar literal");
    return parse_scalar(it->get<std::string>(), f);
}

long probe_int(const Json& params, const char* key, long fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    if (!it->is_number_integer())
        throw validation_error(std::string("command.") + key + ": expected an integer");
    return it->get<long>();
}

/** The exact final ladder gap: 1/((p-1) p^K) in p-adic mode, 0 otherwise. */
Exponent expected_gap(const FieldSpec& f, long K) {
    if (f.mode != FieldMode::PAdic) return Exponent(0L);
    Int pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), f.p, static_cast<unsigned long>(K));
    return Exponent(make_rat(Int(1), Int(f.p - 1) * pk));
}

Json run_probe(const std::string& name, const RunConfig& cfg) {
    const FieldSpec& f = cfg.field;
    Json doc;
    doc["probe"] = name;
    doc["inputs"] = Json::object();
    if (name == "ladder") {
        long K = probe_int(cfg.params, "levels", 5);
        doc["inputs"]["levels"] = K;
        SpectralEstimate est = spectral_norm_estimate(cfg.domain, f, static_cast<int>(K));
        std::vector<Exponent> exps;
        for (const auto& [n, e] : est.per_n) exps.push_back(e);
        doc["exponents"] = exponent_list(exps);
        doc["limit_exp"] = exp_str(est.limit_exp);
        doc["gap"] = exp_str(est.gap);
        if (!est.monotone || cmp(est.gap, expected_gap(f, K)) != 0)
            throw mismatch_error("norm ladder disagrees with the spectral radius law");
        doc["verdict"] = "agree";
    } else if (name == "kernel") {
        QuadScalar a = probe_scalar(cfg.params, f);
        doc["inputs"]["a"] = format_scalar(a, f);
        bool inside = kernel_witness(a, cfg.domain, f);
        Spectrum s = derivation_spectrum(cfg.domain, f);
        if (inside && !spectrum_contains(s, BerkPoint{PointT1{a}}, f))
            throw mismatch_error("kernel witness claims a point outside the spectrum");
        if (!inside && !separation(a, s, f).has_value() &&
            cmp(valuation(a, f), enclosing_radius(s, f)) > 0)
            throw mismatch_error("kernel witness misses a strictly interior point");
        doc["exponents"] = Json::array();
        doc["verdict"] = inside ? "inside" : "outside";
    } else if (name == "resolvent") {
        QuadScalar a = probe_scalar(cfg.params, f);
        long N = probe_int(cfg.params, "depth", 256);
        doc["inputs"]["a"] = format_scalar(a, f);
        doc["inputs"]["depth"] = N;
        ResolventProbe probe = annulus_resolvent_probe(a, cfg.domain, f, N);
        doc["exponents"] = exponent_list(probe.tail);
        if (!probe.agree())
            throw mismatch_error("resolvent series contradicts the closed-form spectrum");
        doc["verdict"] = probe.skipped ? "inside" : (probe.diverges ? "inside" : "outside");
    } else if (name == "radius") {
        QuadScalar a = probe_scalar(cfg.params, f);
        long N = probe_int(cfg.params, "depth", 16);
        long K = probe_int(cfg.params, "levels", 24);
        doc["inputs"]["a"] = format_scalar(a, f);
        doc["inputs"]["depth"] = N;
        doc["inputs"]["levels"] = K;
        ResolventRadius r = resolvent_radius_probe(a, cfg.domain, f, N, static_cast<int>(K));
        doc["exponents"] = exponent_list(r.power_exps);
        doc["estimate"] = exp_str(r.estimate);
        doc["separation_exp"] = exp_str(r.separation_exp);
        if (!r.within_tolerance)
            throw mismatch_error("resolvent growth misestimates the distance to the spectrum");
        doc["verdict"] = "within-tolerance";
    } else if (name == "divergence") {
        long L = probe_int(cfg.params, "levels", 6);
        Exponent rho(0L);
        if (auto it = cfg.params.find("rho"); it != cfg.params.end()) {
            if (!it->is_string())
                throw validation_error("command.rho: expected an exponent literal");
            rho = parse_exponent(it->get<std::string>());
        }
        doc["inputs"]["rho"] = exp_str(rho);
        doc["inputs"]["levels"] = L;
        std::vector<Exponent> exps = divergence_witness(f, rho, static_cast<int>(L));
        doc["exponents"] = exponent_list(exps);
        for (std::size_t l = 0; l < exps.size(); ++l)
            if (cmp(exps[l], Exponent(make_rat(-static_cast<long>(l), 2))) != 0)
                throw mismatch_error("boundary solution fails to grow at the predicted rate");
        doc["verdict"] = "unbounded";
    } else if (name == "type4") {
        const DomainPoint* pt = std::get_if<DomainPoint>(&cfg.domain);
        if (!pt || !std::holds_alternative<PointT4>(pt->x))
            throw validation_error("the type4 probe needs a type-4 point domain");
        QuadScalar a = probe_scalar(cfg.params, f);
        long N = probe_int(cfg.params, "depth", 8);
        long seed = probe_int(cfg.params, "seed", 1);
        doc["inputs"]["a"] = format_scalar(a, f);
        doc["inputs"]["depth"] = N;
        doc["inputs"]["seed"] = seed;
        Type4Report r = type4_bound_check(std::get<PointT4>(pt->x), a, f, static_cast<int>(N),
                                          static_cast<unsigned long>(seed));
        doc["exponents"] = exponent_list(r.ratio_exps);
        doc["min_ratio"] = exp_str(r.min_ratio);
        if (!r.bound_holds)
            throw mismatch_error("solution norm exceeds the radius bound at a family witness");
        doc["verdict"] = "bounded";
    } else {
        throw validation_error("command.probes: unknown probe '" + name + "'");
    }
    return doc;
}

Json sample_to_json(const SegmentSample& s, const FieldSpec& f) {
    Json j;
    j["rho"] = exp_str(s.rho);
    j["type"] = s.type_tag;
    j["spectrum"] = spectrum_to_json(s.spectrum, f);
    j["flags"] = Json::array();
    if (s.type_tag == 3) j["flags"].push_back("irrational-radius");
    return j;
}

Json segment_to_json(const SegmentSpec& seg, const FieldSpec& f) {
    Json j;
    j["center"] = format_scalar(seg.center, f);
    j["rho_low"] = exp_str(seg.rho_low);
    j["rho_high"] = exp_str(seg.rho_high);
    j["grid"] = Json::array();
    for (const Exponent& g : seg.grid) j["grid"].push_back(exp_str(g));
    return j;
}

RunResult dispatch(const RunConfig& cfg, const RunOptions& options) {
    const FieldSpec& f = cfg.field;
    RunResult res;
    Json& doc = res.document;
    doc["schema"] = "ultraspec/1";
    doc["command"] = cfg.command;
    doc["field"] = field_to_json(f);
    doc["domain"] = domain_to_json(cfg.domain, f);
    doc["module"] = module_to_json(cfg.module, f);

    if (cfg.command == "spectrum") {
        SpectrumReport report = module_report(cfg.module, cfg.domain, f);
        doc.update(spectrum_report_to_json(report, f));
        if (options.render == "ascii") res.rendering = render_dendrogram(report.spectrum, f);
        if (options.render == "svg") res.rendering = render_svg(report.spectrum, f);
    } else if (cfg.command == "compare") {
        const DiffPoly* poly = std::get_if<DiffPoly>(&cfg.module);
        if (!poly)
            throw validation_error(
                "compare needs a differential-polynomial module; matrices have no "
                "commutative operator spectrum");
        ComparisonReport report = spectra_report(*poly, cfg.domain, f);
        doc["module_spectrum"] = spectrum_report_to_json(report.module_report, f);
        Json op;
        op["spectrum"] = spectrum_to_json(report.operator_spectrum, f);
        op["enclosing_radius_exp"] = exp_str(report.operator_enclosing_exp);
        doc["operator_spectrum"] = op;
        doc["verdict"] = verdict_string(report.verdict);
        if (options.render == "ascii")
            res.rendering = render_dendrogram(report.module_report.spectrum, f);
        if (options.render == "svg") res.rendering = render_svg(report.module_report.spectrum, f);
    } else if (cfg.command == "oracle") {
        std::vector<std::string> probes =
            options.probe_override.empty() ? cfg.probes : options.probe_override;
        doc["probes"] = Json::array();
        for (const std::string& name : probes) doc["probes"].push_back(run_probe(name, cfg));
    } else {  // "vary" (parse_config admits nothing else)
        SegmentSpec seg = cfg.segment;
        if (options.grid_override > 0) {
            seg.grid.clear();
            long n = options.grid_override;
            if (cmp(seg.rho_low, seg.rho_high) == 0) {
                seg.grid.push_back(seg.rho_low);
            } else {
                for (long k = 0; k <= n; ++k)
                    seg.grid.push_back(seg.rho_low +
                                       (seg.rho_high - seg.rho_low) * make_rat(k, n));
            }
            validate_segment(seg, f);
        }
        std::vector<SegmentSample> samples = sample_segment(cfg.module, seg, f);
        doc["segment"] = segment_to_json(seg, f);
        doc["samples"] = Json::array();
        for (const SegmentSample& s : samples) doc["samples"].push_back(sample_to_json(s, f));
        if (cfg.has_focus) {
            DomainSpec pt = DomainPoint{PointT23{seg.center, cfg.focus_rho}};
            SpectrumReport at_y = module_report(cfg.module, pt, f);
            Json cont;
            cont["y"] = exp_str(cfg.focus_rho);
            cont["thresholds"] = Json::array();
            for (const Rat& margin : cfg.margins) {
                Neighborhood n = margin_neighborhood(at_y.spectrum, margin, f);
                auto threshold = left_continuity_threshold(cfg.module, seg, cfg.focus_rho, n, f);
                Json t;
                t["margin"] = format_rat(margin);
                t["threshold"] = threshold ? exp_str(*threshold) : "none";
                cont["thresholds"].push_back(t);
            }
            doc["continuity"] = cont;
        }
        if (cfg.witness) {
            if (!cfg.has_focus)
                throw validation_error("command.witness: the witness needs a focus exponent y");
            DiscontinuityReport w = discontinuity_witness(cfg.module, cfg.focus_rho, f);
            Json wj;
            wj["witness"] = format_scalar(w.witness, f);
            wj["boundary_exp"] = exp_str(w.boundary_exp);
            wj["witness_in_spectrum"] = w.witness_in_spectrum;
            wj["sample_rhos"] = exponent_list(w.sample_rhos);
            wj["separations"] = exponent_list(w.separations);
            wj["separation_constant"] = w.separation_constant;
            wj["never_enters"] = w.never_enters;
            doc["discontinuity"] = wj;
        }
        if (options.render == "ascii") res.rendering = render_dendrogram(samples, f);
        if (options.render == "svg") res.rendering = render_svg(samples, f);
    }
    return res;
}

Json error_document(const char* kind, const std::string& message) {
    Json doc;
    doc["schema"] = "ultraspec/1";
    doc["error"] = Json::object();
    doc["error"]["kind"] = kind;
    doc["error"]["message"] = message;
    return doc;
}

}  // namespace

RunResult run(const Json& config, const RunOptions& options) {
    RunResult res;
    try {
        res = dispatch(parse_config(config), options);
    } catch (const mismatch_error& e) {
        res.exit_code = 3;
        res.document = error_document("mismatch", e.what());
        res.rendering.clear();
    } catch (const validation_error& e) {
        res.exit_code = 2;
        res.document = error_document("validation", e.what());
        res.rendering.clear();
    } catch (const unsupported_error& e) {
        res.exit_code = 2;
        res.document = error_document("unsupported", e.what());
        res.rendering.clear();
    } catch (const Json::exception& e) {
        res.exit_code = 2;
        res.document = error_document("validation", e.what());
        res.rendering.clear();
    }
    return res;
}

}  // namespace ultraspec
