#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ultraspec/vary.hpp"

namespace ultraspec {

// Key-order-preserving JSON; every exact quantity travels as a literal
// string (rational or quadratic), never as a float.
using Json = nlohmann::ordered_json;

// --- strict config readers --------------------------------------------------

FieldSpec field_from_json(const Json& j);
DomainSpec domain_from_json(const Json& j, const FieldSpec& f);
ModuleInput module_from_json(const Json& j, const FieldSpec& f);

// --- document writers -------------------------------------------------------

Json field_to_json(const FieldSpec& f);
Json domain_to_json(const DomainSpec& d, const FieldSpec& f);
Json module_to_json(const ModuleInput& m, const FieldSpec& f);
Json disk_to_json(const Disk& d, const FieldSpec& f);
Json spectrum_to_json(const Spectrum& s, const FieldSpec& f);
Json spectrum_report_to_json(const SpectrumReport& r, const FieldSpec& f);

/**
 * One validated run configuration.  The JSON shape is
 *
 *   { "schema": "ultraspec/1",
 *     "field": {...}, "domain": {...}, "module": {...},
 *     "command": { "name": "spectrum" | "compare" | "oracle" | "vary", ... } }
 *
 * and unknown keys anywhere are rejected.  Command-specific keys live inside
 * the command object; see parse_config checks for the full set.
 */
struct RunConfig {
    FieldSpec field;
    DomainSpec domain;
    ModuleInput module;
    std::string command;                 // "spectrum", "compare", "oracle", "vary"
    std::vector<std::string> probes;     // oracle: which probes to run
    Json params;                         // oracle: probe inputs (scalar "a", depths...)
    SegmentSpec segment;                 // vary
    bool has_focus = false;              // vary: continuity checks requested at y
    Exponent focus_rho;                  // vary: the y of the continuity checks
    std::vector<Rat> margins;            // vary: margin exponents for neighborhoods
    bool witness = false;                // vary: run the discontinuity construction
};

RunConfig parse_config(const Json& j);

// --- renderers ---------------------------------------------------------------

/**
 * Deterministic monospace disk tree: one line per disk ("[ c=0 rexp=1
 * closed ]"; closure-of-open disks open with a parenthesis), singleton
 * components at the margin, multi-disk components indented under a shared
 * boundary header, in normal-form order.
 */
std::string render_dendrogram(const Spectrum& s, const FieldSpec& f);

/** The same tree for each vary sample, one block per grid exponent. */
std::string render_dendrogram(const std::vector<SegmentSample>& samples, const FieldSpec& f);

/**
 * Deterministic SVG, integer coordinates only: one circle per spectrum disk
 * on a common baseline, radii affine in the (log-scale) radius exponent,
 * sqrt(2) parts resolved through a fixed rational approximation.
 */
std::string render_svg(const Spectrum& s, const FieldSpec& f);

/** Strip chart for a vary sweep: one bar per sample, height from the
 *  enclosing radius exponent. */
std::string render_svg(const std::vector<SegmentSample>& samples, const FieldSpec& f);

// --- orchestration -----------------------------------------------------------

struct RunOptions {
    std::string render = "none";         // "ascii", "svg" or "none"
    std::vector<std::string> probe_override;  // replaces config probe list
    long grid_override = 0;              // vary: resample the interval at n+1 even steps
};

struct RunResult {
    int exit_code = 0;       // 0 ok, 2 validation/unsupported, 3 probe mismatch
    Json document;           // the result document (or {"error": ...} on failure)
    std::string rendering;   // per options.render, empty for "none"
};

/** Parse, dispatch and assemble the output document; never throws — every
 *  documented failure is folded into the exit code and error document. */
RunResult run(const Json& config, const RunOptions& options);

}  // namespace ultraspec
