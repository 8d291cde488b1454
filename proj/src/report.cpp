#include "canon/report.hpp"

namespace canon {

Json form_json(const Form& f) {
    Json terms = Json::array();
    const auto& t = f.table();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (f.coeffs()[k].is_zero()) continue;
        Json e = Json::array();
        for (auto x : t[k]) e.push_back(static_cast<int>(x));
        terms.push_back(Json::array({e, f.coeffs()[k].value()}));
    }
    return terms;
}

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (Fp x : v) out.push_back(x.value());
    return out;
}

Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i)));
    return out;
}

Json certificate_json(const ConeCertificate& c) {
    Json j;
    j["constrained_dim"] = c.constrained_dim;
    j["pencils_used"] = c.pencils_used;
    j["pencils_skipped"] = c.pencils_skipped;
    j["solution_dim"] = c.solution_dim;
    j["curve_points_checked"] = c.curve_points_checked;
    j["vanishes_on_curve"] = c.vanishes_on_curve;
    j["singular_along_vertex"] = c.singular_along_vertex;
    j["oracle_applicable"] = c.oracle_applicable;
    j["oracle_checked"] = c.oracle_checked;
    j["oracle_true"] = c.oracle_true;
    j["oracle_disagreements"] = c.oracle_disagreements;
    j["holdout_pencil_match"] = c.holdout_pencil_match;
    j["passed"] = c.passed();
    return j;
}

Json cone_json(const QuarticCone& cone) {
    Json j;
    j["W"] = matrix_json(cone.net.W);
    Json vertex = Json::array();
    for (const auto& v : cone.net.vertex) vertex.push_back(vec_json(v));
    j["vertex"] = vertex;
    j["coeffs"] = form_json(cone.F);
    j["certificate"] = certificate_json(cone.certificate);
    return j;
}

Json span_json(const SpanAccumulator& span) {
    Json j;
    j["degree"] = span.degree();
    j["rank"] = span.rank();
    j["projective_dim"] = static_cast<long long>(span.rank()) - 1;
    j["saturated"] = span.saturated;
    j["samples_used"] = span.samples_used;
    Json traj = Json::array();
    for (const auto& b : span.trajectory) traj.push_back(Json::array({b.samples, b.rank}));
    j["trajectory"] = traj;
    Json prov = Json::array();
    for (const auto& p : span.provenance()) {
        Json e;
        e["kind"] = p.kind == Provenance::Kind::Net ? "net" : "square";
        e["sample"] = p.sample;
        if (p.kind == Provenance::Kind::Net) e["W"] = matrix_json(p.W);
        if (p.vertex_index >= 0) e["vertex_index"] = p.vertex_index;
        prov.push_back(e);
    }
    j["provenance"] = prov;
    j["skipped"] = span.skipped;
    return j;
}

Json probe_json(const BaseLocusReport& r) {
    auto cls = [](const ProbeClass& c) {
        Json j;
        j["probes"] = c.probes;
        j["candidates"] = c.candidates;
        return j;
    };
    Json j;
    j["curve_points"] = r.curve_points;
    j["curve_failures"] = r.curve_failures;
    j["random"] = cls(r.random);
    j["quadric"] = cls(r.quadric);
    j["vertex"] = cls(r.vertex);
    j["secant"] = cls(r.secant);
    Json cands = Json::array();
    for (const auto& x : r.candidates) cands.push_back(vec_json(x));
    j["violation_candidates"] = cands;
    j["passed"] = r.passed();
    return j;
}

}  // namespace canon
