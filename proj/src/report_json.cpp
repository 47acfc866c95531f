#include "banachlab/report_json.hpp"

#include <sstream>

namespace banachlab {

namespace {

json vec_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

json to_json(const Witness& w) {
    json j;
    j["x"] = vec_json(w.x);
    j["y"] = vec_json(w.y);
    if (w.f) j["f"] = vec_json(w.f->coords);
    j["value"] = w.value;
    return j;
}

json to_json(const ModulusEstimate& e) {
    json j;
    j["kind"] = to_string(e.kind);
    j["argument"] = e.argument;
    j["lo"] = e.lo;
    j["hi"] = e.hi;
    j["certified"] = e.certified;
    if (e.witness) j["witness"] = to_json(*e.witness);
    j["resolution"] = {{"angles", e.resolution.angles},
                       {"refine_iters", e.resolution.refine_iters},
                       {"method", e.resolution.method}};
    j["notes"] = e.notes;
    return j;
}

json to_json(const ModulusCurve& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["space"] = c.space_label;
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(to_json(p));
    j["points"] = pts;
    return j;
}

json to_json(const DualNormEstimate& e) {
    json j;
    j["lo"] = e.lo;
    j["hi"] = e.hi;
    j["certified"] = e.certified;
    j["witness"] = vec_json(e.witness);
    j["resolution"] = {{"angles", e.resolution.angles},
                       {"refine_iters", e.resolution.refine_iters},
                       {"method", e.resolution.method}};
    return j;
}

json to_json(const ClassificationReport& r) {
    json j;
    j["space"] = r.space_label;
    j["verdicts"] = {{"rotund", to_string(r.rotund)},
                     {"smooth", to_string(r.smooth)},
                     {"acs", to_string(r.acs)},
                     {"lau_condition", to_string(r.lau)}};
    j["tol"] = r.tol;
    j["certification_scales"] = {{"rotund_eps", r.rotund_cert_eps}, {"acs_eps", r.acs_cert_eps}};
    j["heuristic"] = r.heuristic;
    json w;
    if (r.rotund_witness) {
        w["rotund"] = {{"x", vec_json(r.rotund_witness->x)}, {"y", vec_json(r.rotund_witness->y)}};
    }
    if (r.smooth_witness) {
        w["smooth"] = {{"x", vec_json(r.smooth_witness->x)},
                       {"f1", vec_json(r.smooth_witness->f1.coords)},
                       {"f2", vec_json(r.smooth_witness->f2.coords)},
                       {"pairing_gap", r.smooth_witness->pairing_gap}};
    }
    if (r.acs_witness) {
        w["acs"] = {{"x", vec_json(r.acs_witness->x)},
                    {"y", vec_json(r.acs_witness->y)},
                    {"f", vec_json(r.acs_witness->f.coords)}};
    }
    if (r.lau_witness) {
        w["lau"] = {{"x", vec_json(r.lau_witness->x)},
                    {"y", vec_json(r.lau_witness->y)},
                    {"fx", vec_json(r.lau_witness->fx.coords)},
                    {"fy", vec_json(r.lau_witness->fy.coords)},
                    {"dual_sum_norm", r.lau_witness->dual_sum_norm}};
    }
    j["witnesses"] = w.is_null() ? json::object() : w;
    json segs = json::array();
    for (const auto& s : r.flat_segments) {
        segs.push_back({{"a", vec_json(s.a)},
                        {"b", vec_json(s.b)},
                        {"a_smooth", s.a_smooth},
                        {"b_smooth", s.b_smooth},
                        {"length", s.length}});
    }
    j["flat_segments"] = segs;
    j["notes"] = r.notes;
    return j;
}

json to_json(const InequalityReport& r) {
    json j;
    j["inequality"] = r.inequality_id;
    j["space"] = r.space_label;
    json pts = json::array();
    for (const auto& p : r.points) {
        pts.push_back({{"eps", p.eps},
                       {"tau", p.tau},
                       {"status", to_string(p.status)},
                       {"margin", p.margin},
                       {"detail", p.detail}});
    }
    j["points"] = pts;
    j["counts"] = {{"verified", r.count(CheckStatus::verified)},
                   {"inconclusive", r.count(CheckStatus::inconclusive)},
                   {"violated", r.count(CheckStatus::violated)},
                   {"vacuous", r.count(CheckStatus::vacuous)}};
    j["notes"] = r.notes;
    return j;
}

json to_json(const ReplayReport& r) {
    json j;
    j["example"] = r.example_id;
    j["n_max"] = r.n_max;
    json rows = json::array();
    for (const auto& row : r.rows) {
        json q;
        for (const auto& [k, v] : row.quantities) q[k] = v;
        rows.push_back({{"n", row.n}, {"quantities", q}});
    }
    j["rows"] = rows;
    json claims = json::array();
    for (const auto& c : r.claims) {
        const char* kind = c.kind == ReplayClaim::Kind::equality
                               ? "equality"
                               : (c.kind == ReplayClaim::Kind::limit ? "limit" : "bound");
        claims.push_back({{"name", c.name},
                          {"kind", kind},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"target", c.target},
                          {"gap", c.gap},
                          {"last_step", c.last_step},
                          {"monotone", c.monotone},
                          {"closed_form_gap", c.closed_form_gap}});
    }
    j["claims"] = claims;
    j["notes"] = r.notes;
    return j;
}

std::string curve_csv(const ModulusCurve& c) {
    std::ostringstream os;
    os.precision(17);
    os << "kind,arg,lo,hi,certified\n";
    for (const auto& p : c.points) {
        os << to_string(p.kind) << "," << p.argument << "," << p.lo << "," << p.hi << ","
           << (p.certified ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string replay_csv(const ReplayReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "example,n";
    if (!r.rows.empty()) {
        for (const auto& [k, v] : r.rows.front().quantities) os << "," << k;
    }
    os << "\n";
    for (const auto& row : r.rows) {
        os << row.example_id << "," << row.n;
        for (const auto& [k, v] : row.quantities) os << "," << v;
        os << "\n";
    }
    return os.str();
}

std::string summary_csv(const std::vector<InequalityReport>& reports) {
    std::ostringstream os;
    os.precision(17);
    os << "inequality,space,verified,inconclusive,violated,vacuous,min_margin\n";
    for (const auto& r : reports) {
        double min_margin = std::numeric_limits<double>::infinity();
        for (const auto& p : r.points) {
            if (p.status == CheckStatus::verified) min_margin = std::min(min_margin, p.margin);
        }
        os << r.inequality_id << "," << r.space_label << "," << r.count(CheckStatus::verified)
           << "," << r.count(CheckStatus::inconclusive) << "," << r.count(CheckStatus::violated)
           << "," << r.count(CheckStatus::vacuous) << ","
           << (std::isfinite(min_margin) ? min_margin : 0.0) << "\n";
    }
    return os.str();
}

json report_envelope(const std::string& command, const json& config, const json& result) {
    json j;
    j["tool"] = "banachlab";
    j["version"] = "0.1.0";
    j["command"] = command;
    j["config"] = config;
    j["result"] = result;
    return j;
}

bool validate_report_envelope(const json& envelope, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    for (const char* key : {"tool", "version", "command", "config", "result"}) {
        if (!envelope.contains(key)) return fail(std::string("missing key: ") + key);
    }
    if (!envelope["tool"].is_string() || !envelope["version"].is_string() ||
        !envelope["command"].is_string()) {
        return fail("tool/version/command must be strings");
    }
    if (!envelope["config"].is_object()) return fail("config must be an object");
    return true;
}

}  // namespace banachlab
