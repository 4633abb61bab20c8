#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quadrics/classify.hpp"
#include "quadrics/ideal_file.hpp"

namespace quadrics {

using nlohmann::json;

// Which invariant families to compute.  The base stage is always run;
// the square stage stops at I^2, the powers stage walks the whole
// Hilbert-Samuel pipeline.  Corpus verification maps each expectation
// key to its stage so cheap fixtures stay cheap.
struct Stages {
    bool square = true;
    bool powers = true;
};

// Everything cmd_analyze computes.  Booleans never travel alone: each one
// sits next to the data that certifies it (or a screened/unverified flag).
struct InvariantReport {
    Stages stages;
    HilbertFunction hf;
    GeneratorProfile generators;
    int type = 0;
    int linear_socle_dim = 0;
    DeltaProfile delta;
    HilbertSamuelData hs;
    SallyData sally;
    FiberHilbert fiber;
    ReductionCertificate reduction;
    long long nu_square = 0;
    IdealEquality square_is_m4;
};

inline InvariantReport run_invariants(const IdealPtr& raw, const Options& opt,
                                      Stages stages = Stages{}) {
    IdealPtr I = detail::minimalized(raw);
    InvariantReport rep;
    rep.stages = stages;
    rep.hf = hilbert_function(I, opt);
    rep.generators = minimal_generators(I, opt);
    auto soc = socle_profile(I, opt);
    rep.type = soc.type;
    rep.linear_socle_dim = soc.linear_dim;
    if (!stages.square && !stages.powers) return rep;
    IdealPowers pows(I, opt);
    if (stages.square) {
        rep.delta = delta_profile(pows, opt);
        rep.nu_square = minimal_generators(pows.get(2), opt).total;
        rep.square_is_m4 = ideal_equals(
            pows.get(2), Ideal::maximal_power(I->nvars(), 4), opt);
    }
    if (stages.powers) {
        rep.hs = hilbert_samuel(pows, opt);
        rep.sally = sally_multiplicity(pows, opt, &rep.hs);
        rep.fiber = fiber_hilbert(pows, opt);
        rep.reduction = find_minimal_reduction(pows, rep.hs.e1, opt);
    }
    return rep;
}

// ---------------------------------------------------------------------
// JSON serialization.  Deterministic: keys are sorted, every rational is
// a string, and nothing time- or machine-dependent is emitted.

namespace detail {

inline json js(const Rational& q) { return to_string(q); }

inline json js(const Matrix& m) {
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& q : r) row.push_back(to_string(q));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json js(const std::vector<Polynomial>& ps,
               const std::vector<std::string>& names) {
    json out = json::array();
    for (const auto& p : ps) out.push_back(to_string(p, names));
    return out;
}

inline json js(const IdealEquality& eq, const std::vector<std::string>& names) {
    json out;
    switch (eq.status) {
        case IdealEquality::Status::equal: out["status"] = "equal"; break;
        case IdealEquality::Status::not_equal: out["status"] = "not_equal"; break;
        case IdealEquality::Status::inconclusive:
            out["status"] = "inconclusive";
            break;
    }
    out["screened"] = eq.screened;
    if (eq.degree >= 0) out["degree"] = eq.degree;
    if (eq.witness) out["witness"] = to_string(*eq.witness, names);
    if (!eq.note.empty()) out["note"] = eq.note;
    return out;
}

inline json js(const ReductionCertificate& c,
               const std::vector<std::string>& names) {
    json out;
    out["verified"] = c.verified;
    out["screened"] = c.screened;
    if (!c.note.empty()) out["note"] = c.note;
    if (!c.reduction.empty()) out["generators"] = js(c.reduction, names);
    if (c.verified) {
        out["r"] = c.r;
        out["lambda_seq"] = c.lambda_seq;
        out["lambda_sum"] = c.sum;
        out["e1"] = c.e1;
        out["huckaba_equality"] = c.huckaba_equality;
    }
    return out;
}

inline json js(const SignatureResult& s) {
    json out;
    out["canonical"] = {s.canonical.first, s.canonical.second};
    out["positive"] = s.positive;
    out["negative"] = s.negative;
    json diag = json::array();
    for (const auto& q : s.diagonal) diag.push_back(to_string(q));
    out["diagonal"] = std::move(diag);
    out["transform"] = js(s.transform);
    return out;
}

inline json header_json(const IdealFile& file, const Options& opt) {
    json out;
    out["schema"] = 1;
    out["name"] = file.name;
    if (!file.group.empty()) out["group"] = file.group;
    out["variables"] = file.variables;
    out["field"] = file.rational_field ? "Q"
                                       : "Fp:" + std::to_string(file.prime);
    out["generators"] = js(file.generators, file.variables);
    out["mode"] = opt.certified() ? "certified" : "screened";
    out["seed"] = opt.seed;
    if (!opt.certified()) out["prime"] = opt.screening_prime();
    return out;
}

}  // namespace detail

inline json report_json(const IdealFile& file, const InvariantReport& rep,
                        const Options& opt) {
    const auto& names = file.variables;
    json out = detail::header_json(file, opt);
    out["artinian"] = true;
    out["hilbert_function"] = {{"values", rep.hf.values},
                               {"colength", rep.hf.colength},
                               {"screened", rep.hf.screened}};
    json bydeg;
    for (auto [d, n] : rep.generators.by_degree) bydeg[std::to_string(d)] = n;
    out["minimal_generators"] = {{"total", rep.generators.total},
                                 {"by_degree", std::move(bydeg)},
                                 {"screened", rep.generators.screened}};
    out["cm_type"] = rep.type;
    out["gorenstein"] = {{"value", rep.type == 1}, {"cm_type", rep.type}};
    out["linear_socle"] = rep.linear_socle_dim;
    if (rep.stages.square) {
        json deltas = json::array();
        for (auto [t, v] : rep.delta.delta) deltas.push_back({t, v});
        out["syzygetic"] = {{"status", to_string(rep.delta.status)},
                            {"nu", rep.delta.nu},
                            {"delta", std::move(deltas)},
                            {"last_degree", rep.delta.last_degree},
                            {"screened", rep.delta.screened}};
        out["square"] = {
            {"minimal_generators", rep.nu_square},
            {"is_power_of_max_ideal", detail::js(rep.square_is_m4, names)}};
    }
    if (rep.stages.powers) {
        json coeffs = json::array();
        for (const auto& e : rep.hs.coefficients) coeffs.push_back(e.get_str());
        out["hilbert_samuel"] = {{"lengths", rep.hs.lengths},
                                 {"coefficients", std::move(coeffs)},
                                 {"e0", rep.hs.e0},
                                 {"e1", rep.hs.e1},
                                 {"stabilized_at", rep.hs.stabilized_at},
                                 {"screened", rep.hs.screened}};
        out["sally"] = {{"e0", rep.sally.e0},
                        {"e1", rep.sally.e1},
                        {"colength", rep.sally.colength},
                        {"s0", rep.sally.s0}};
        out["fiber"] = {{"values", rep.fiber.values},
                        {"screened", rep.fiber.screened}};
        out["reduction"] = detail::js(rep.reduction, names);
    }
    return out;
}

inline json classification_json(const IdealFile& file,
                                const ClassificationResult& res,
                                const Options& opt) {
    const auto& names = file.variables;
    json out = detail::header_json(file, opt);
    out["gorenstein"] = res.gorenstein;

    if (res.decomposition) {
        const auto& dec = *res.decomposition;
        json d;
        d["r"] = dec.r;
        d["type"] = dec.type;
        d["change"] = detail::js(dec.change.matrix());
        auto core_names = default_variable_names(dec.core->nvars());
        d["core_generators"] = detail::js(dec.core->generators(), core_names);
        d["core_signature"] = {dec.core_form.canonical.first,
                               dec.core_form.canonical.second};
        d["core_representative"] =
            detail::js(dec.core_form.representative, core_names);
        d["reassembly"] = detail::js(dec.reassembly, names);
        out["decomposition"] = std::move(d);
    }
    if (res.decomposition && res.decomposition->r == 0) {
        const auto& nf = res.decomposition->core_form;
        json g;
        g["bilinear_matrix"] = detail::js(nf.form.entries);
        g["socle_monomial"] = to_string(nf.form.socle_generator, names);
        g["signature"] = detail::js(nf.sig);
        g["plus_binomials"] = nf.plus_binomials;
        g["representative"] = detail::js(nf.representative, names);
        out["normal_form"] = std::move(g);
    }
    if (res.dual) {
        json d;
        d["inverse"] = detail::js(res.dual->inverse);
        d["dual_basis"] = detail::js(res.dual->dual_basis, names);
        d["generators"] = detail::js(res.dual->generators, names);
        d["equality"] = detail::js(res.dual->equality, names);
        out["dual_basis"] = std::move(d);
    }
    if (res.five) {
        const auto& f = *res.five;
        json v;
        v["gorenstein"] = f.gorenstein;
        v["type"] = f.type;
        v["hilbert_function"] = f.hf.values;
        v["syzygetic"] = to_string(f.syzygetic);
        v["square"] = {{"minimal_generators", f.nu_square},
                       {"is_power_of_max_ideal", f.square_is_m4}};
        v["e0"] = f.hs.e0;
        v["e1"] = f.hs.e1;
        v["s0"] = f.sally.s0;
        v["reduction"] = detail::js(f.reduction, names);
        if (f.orbit) {
            json o;
            o["orbit"] = std::string(1, f.orbit->orbit);
            if (f.orbit->orbit == 'B') {
                o["a"] = to_string(f.orbit->a);
                o["c"] = to_string(f.orbit->c);
            }
            o["normalized_over_Q"] = f.orbit->normalized_over_Q;
            o["change"] = detail::js(f.orbit->change.matrix());
            o["representative"] = detail::js(f.orbit->representative, names);
            o["canonical_reduction"] =
                detail::js(f.orbit->canonical_reduction, names);
            o["transcript"] = f.orbit->transcript;
            v["orbit"] = std::move(o);
        }
        out["five_quadrics"] = std::move(v);
    }
    if (res.four) {
        const auto& f = *res.four;
        json v;
        v["hilbert_function"] = f.hf.values;
        v["colength"] = f.hf.colength;
        v["syzygetic"] = to_string(f.syzygetic);
        v["e0"] = f.hs.e0;
        v["e1"] = f.hs.e1;
        v["s0"] = f.sally.s0;
        v["reduction"] = detail::js(f.reduction, names);
        v["branch"] = f.branch;
        if (f.reduction.r == 3) {
            v["u"] = f.u;
            v["v"] = f.v;
            v["sally_identity"] = f.sally_identity;
        }
        out["four_quadrics"] = std::move(v);
    }
    return out;
}

// Partial report for inputs whose quotient is not finite-dimensional.
inline json partial_report_json(const IdealFile& file, const Options& opt,
                                const std::string& error) {
    json out = detail::header_json(file, opt);
    out["artinian"] = false;
    out["error"] = error;
    return out;
}

// ---------------------------------------------------------------------
// Human-readable rendering.

namespace detail {

inline std::string join(const std::vector<long long>& v) {
    std::string out;
    for (auto x : v) out += (out.empty() ? "" : ", ") + std::to_string(x);
    return out;
}

}  // namespace detail

inline std::string report_text(const IdealFile& file,
                               const InvariantReport& rep,
                               const Options& opt) {
    const auto& names = file.variables;
    std::ostringstream os;
    os << "ideal " << file.name << " in " << file.nvars() << " variables ("
       << (opt.certified() ? "certified" : "screened") << ")\n";
    for (const auto& g : file.generators)
        os << "  " << to_string(g, names) << "\n";
    os << "hilbert function   " << detail::join(rep.hf.values)
       << "   colength " << rep.hf.colength << "\n";
    os << "minimal generators " << rep.generators.total << "\n";
    os << "cohen-macaulay type " << rep.type
       << (rep.type == 1 ? " (gorenstein)" : "") << ", linear socle "
       << rep.linear_socle_dim << "\n";
    os << "syzygetic          " << to_string(rep.delta.status) << " (delta:";
    for (auto [t, v] : rep.delta.delta) os << " " << t << "->" << v;
    os << ")\n";
    os << "multiplicities     e0 " << rep.hs.e0 << ", e1 " << rep.hs.e1
       << ", s0 " << rep.sally.s0 << "\n";
    os << "power lengths      " << detail::join(rep.hs.lengths) << "\n";
    os << "fiber hilbert      " << detail::join(rep.fiber.values) << "\n";
    os << "square             " << rep.nu_square << " minimal generators, "
       << "equals m^4: "
       << (bool(rep.square_is_m4)
               ? "yes"
               : rep.square_is_m4.status == IdealEquality::Status::not_equal
                     ? "no"
                     : "unverified")
       << "\n";
    if (rep.reduction.verified) {
        os << "reduction          r = " << rep.reduction.r << ", J = (";
        for (std::size_t i = 0; i < rep.reduction.reduction.size(); ++i)
            os << (i ? ", " : "") << to_string(rep.reduction.reduction[i], names);
        os << "), lambda " << detail::join(rep.reduction.lambda_seq)
           << ", sum " << rep.reduction.sum << (rep.reduction.huckaba_equality
                                                    ? " = e1 (huckaba equality)"
                                                    : " > e1")
           << "\n";
    } else {
        os << "reduction          unverified: " << rep.reduction.note << "\n";
    }
    return os.str();
}

inline std::string classification_text(const IdealFile& file,
                                       const ClassificationResult& res,
                                       const Options& opt) {
    (void)opt;
    std::ostringstream os;
    os << "ideal " << file.name << ": "
       << (res.four ? "almost complete intersection of quadrics"
                    : res.gorenstein ? "gorenstein, submaximal"
                                     : "submaximal, not gorenstein")
       << "\n";
    if (res.decomposition) {
        os << "decomposition      r = " << res.decomposition->r << ", type "
           << res.decomposition->type << ", core signature {"
           << res.decomposition->core_form.canonical.first << ","
           << res.decomposition->core_form.canonical.second << "}\n";
    }
    if (res.dual)
        os << "dual basis         regenerates the ideal\n";
    if (res.five) {
        const auto& f = *res.five;
        os << "five quadrics      " << to_string(f.syzygetic) << ", nu(I^2) "
           << f.nu_square << ", I^2 = m^4: " << (f.square_is_m4 ? "yes" : "no")
           << ", e1 " << f.hs.e1 << ", s0 " << f.sally.s0 << "\n";
        if (f.orbit) {
            os << "orbit              " << f.orbit->orbit;
            if (f.orbit->orbit == 'B')
                os << " (a, c) = (" << to_string(f.orbit->a) << ", "
                   << to_string(f.orbit->c) << ")";
            os << ", normalized over Q: "
               << (f.orbit->normalized_over_Q ? "yes" : "no") << "\n";
            for (const auto& t : f.orbit->transcript)
                os << "    " << t << "\n";
        }
        if (f.reduction.verified)
            os << "reduction          r = " << f.reduction.r
               << (f.reduction.huckaba_equality ? " (huckaba equality)" : "")
               << "\n";
    }
    if (res.four) {
        const auto& f = *res.four;
        os << f.branch << "\n";
        if (f.reduction.r == 3)
            os << "sally identity     e1 - e0 + colength = " << f.u << " + "
               << f.v << ": " << (f.sally_identity ? "verified" : "FAILED")
               << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------
// Flat expectation vocabulary used by corpus fixtures.  Every value is
// rendered to a canonical string so fixtures can state it literally.

inline std::map<std::string, std::string> expectation_values(
    const InvariantReport& rep, const ClassificationResult* cls) {
    std::map<std::string, std::string> out;
    auto yesno = [](bool b) { return b ? "yes" : "no"; };
    out["colength"] = std::to_string(rep.hf.colength);
    out["hf"] = [&] {
        std::string s;
        for (auto v : rep.hf.values) s += (s.empty() ? "" : ",") + std::to_string(v);
        return s;
    }();
    out["nu"] = std::to_string(rep.generators.total);
    out["type"] = std::to_string(rep.type);
    out["gorenstein"] = yesno(rep.type == 1);
    out["linear_socle"] = std::to_string(rep.linear_socle_dim);
    if (rep.stages.square) {
        out["syzygetic"] = to_string(rep.delta.status);
        out["nu_square"] = std::to_string(rep.nu_square);
        out["square_is_m4"] =
            rep.square_is_m4.status == IdealEquality::Status::equal
                ? "yes"
                : rep.square_is_m4.status == IdealEquality::Status::not_equal
                      ? "no"
                      : "unverified";
    }
    if (rep.stages.powers) {
        out["e0"] = std::to_string(rep.hs.e0);
        out["e1"] = std::to_string(rep.hs.e1);
        out["s0"] = std::to_string(rep.sally.s0);
        out["fiber"] = [&] {
            std::string s;
            for (auto v : rep.fiber.values)
                s += (s.empty() ? "" : ",") + std::to_string(v);
            return s;
        }();
        if (rep.reduction.verified) {
            out["reduction_r"] = std::to_string(rep.reduction.r);
            out["huckaba_sum"] = std::to_string(rep.reduction.sum);
            out["huckaba_equality"] = yesno(rep.reduction.huckaba_equality);
        } else {
            out["reduction_r"] = "unverified";
            out["huckaba_sum"] = "unverified";
            out["huckaba_equality"] = "unverified";
        }
    }
    if (!cls) return out;

    if (cls->decomposition) {
        out["decomposition_r"] = std::to_string(cls->decomposition->r);
        auto c = cls->decomposition->core_form.canonical;
        out["core_signature"] =
            std::to_string(c.first) + "," + std::to_string(c.second);
        if (cls->decomposition->r == 0) {
            out["signature"] = out["core_signature"];
            out["plus_binomials"] =
                std::to_string(cls->decomposition->core_form.plus_binomials);
        }
    }
    if (cls->dual)
        out["dual_regenerates"] =
            yesno(cls->dual->equality.status == IdealEquality::Status::equal);
    if (cls->five && cls->five->orbit) {
        out["orbit"] = std::string(1, cls->five->orbit->orbit);
        if (cls->five->orbit->orbit == 'B')
            out["orbit_c"] = to_string(cls->five->orbit->c);
        out["normalized_over_Q"] = yesno(cls->five->orbit->normalized_over_Q);
    }
    if (cls->four) {
        if (cls->four->reduction.r == 3) {
            out["u"] = std::to_string(cls->four->u);
            out["v"] = std::to_string(cls->four->v);
            out["sally_identity"] = yesno(cls->four->sally_identity);
        }
    }
    return out;
}

}  // namespace quadrics
