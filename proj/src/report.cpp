#include "curvlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace curvlab::report {

std::map<std::string, double*> Tolerances::index() {
    return {
        {"algebraic", &algebraic},
        {"basis_invariance", &basis_invariance},
        {"fd_gradient", &fd_gradient},
        {"fd_hessian", &fd_hessian},
        {"fd_wr_hessian", &fd_wr_hessian},
        {"root_boundary", &root_boundary},
        {"max_imag", &max_imag},
        {"garding_slack", &garding_slack},
        {"concavity_eig", &concavity_eig},
        {"quadratic_slack", &quadratic_slack},
        {"manifold", &manifold},
        {"tangency", &tangency},
        {"triangle", &triangle},
        {"fd_distance_hessian", &fd_distance_hessian},
        {"sphere_match", &sphere_match},
        {"curvature_relation", &curvature_relation},
        {"gauss_consistency", &gauss_consistency},
        {"sectional", &sectional},
        {"codazzi", &codazzi},
        {"commutation", &commutation},
        {"char_poly_match", &char_poly_match},
        {"laplace_fd", &laplace_fd},
        {"walter_rel", &walter_rel},
        {"gradient_identity", &gradient_identity},
        {"trace_identity", &trace_identity},
        {"eigen_gap", &eigen_gap},
        {"proof_chain_slack", &proof_chain_slack},
        {"tol_umb", &tol_umb},
        {"range_h", &range_h},
    };
}

std::map<std::string, double> Tolerances::as_map() const {
    std::map<std::string, double> out;
    for (auto& [k, p] : const_cast<Tolerances*>(this)->index()) out[k] = *p;
    return out;
}

void Tolerances::set(const std::string& key, double value) {
    auto idx = index();
    auto it = idx.find(key);
    if (it == idx.end()) {
        std::string known;
        for (auto& [k, p] : idx) known += (known.empty() ? "" : ", ") + k;
        throw std::invalid_argument("unknown tolerance '" + key + "'; known keys: " + known);
    }
    *it->second = value;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Skipped: return "SKIPPED";
    }
    return "FAIL";
}

VerificationRecord VerificationRecord::checked(std::string check_id, std::string location,
                                               double lhs, double rhs, double residual,
                                               double tolerance, std::string note) {
    VerificationRecord rec;
    rec.check_id = std::move(check_id);
    rec.location = std::move(location);
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.residual = residual;
    rec.tolerance = tolerance;
    rec.note = std::move(note);
    const bool finite = std::isfinite(lhs) && std::isfinite(rhs) && std::isfinite(residual);
    rec.verdict = (finite && std::abs(residual) <= tolerance) ? Verdict::Pass : Verdict::Fail;
    return rec;
}

VerificationRecord VerificationRecord::skipped(std::string check_id, std::string location,
                                               std::string note) {
    VerificationRecord rec;
    rec.check_id = std::move(check_id);
    rec.location = std::move(location);
    rec.verdict = Verdict::Skipped;
    rec.note = std::move(note);
    return rec;
}

Summary summarize(const std::vector<VerificationRecord>& records) {
    Summary s;
    for (const auto& r : records) {
        switch (r.verdict) {
            case Verdict::Pass: ++s.pass; break;
            case Verdict::Fail: ++s.fail; break;
            case Verdict::Skipped: ++s.skipped; break;
        }
        if (r.verdict == Verdict::Skipped) continue;
        double& m = s.max_abs_residual_per_check[r.check_id];
        if (std::isfinite(r.residual)) m = std::max(m, std::abs(r.residual));
    }
    return s;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) {
        if (std::isnan(v)) return "\"nan\"";
        return v > 0 ? "\"inf\"" : "\"-inf\"";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

void append_record(std::string& out, const VerificationRecord& r) {
    out += "{\"check_id\":\"" + json_escape(r.check_id) + "\"";
    out += ",\"location\":\"" + json_escape(r.location) + "\"";
    out += ",\"lhs\":" + json_number(r.lhs);
    out += ",\"rhs\":" + json_number(r.rhs);
    out += ",\"residual\":" + json_number(r.residual);
    out += ",\"tolerance\":" + json_number(r.tolerance);
    out += ",\"verdict\":\"" + to_string(r.verdict) + "\"";
    out += ",\"note\":\"" + json_escape(r.note) + "\"}";
}

} // namespace

std::string records_to_json(const std::vector<VerificationRecord>& records) {
    std::string out = "[";
    for (size_t i = 0; i < records.size(); ++i) {
        if (i) out += ",";
        out += "\n  ";
        append_record(out, records[i]);
    }
    out += "\n]";
    return out;
}

std::string report_to_json(const std::vector<VerificationRecord>& records,
                           const std::map<std::string, std::string>& meta,
                           const std::map<std::string, double>& tolerance_echo) {
    const Summary s = summarize(records);
    std::string out = "{\n\"meta\":{";
    bool first = true;
    for (auto& [k, v] : meta) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(k) + "\":\"" + json_escape(v) + "\"";
    }
    out += ",\"tolerances\":{";
    first = true;
    for (auto& [k, v] : tolerance_echo) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(k) + "\":" + json_number(v);
    }
    out += "}},\n\"summary\":{";
    out += "\"pass\":" + std::to_string(s.pass);
    out += ",\"fail\":" + std::to_string(s.fail);
    out += ",\"skipped\":" + std::to_string(s.skipped);
    out += ",\"max_abs_residual_per_check\":{";
    first = true;
    for (auto& [k, v] : s.max_abs_residual_per_check) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(k) + "\":" + json_number(v);
    }
    out += "}},\n\"records\":";
    out += records_to_json(records);
    out += "\n}\n";
    return out;
}

std::string records_to_csv(const std::vector<VerificationRecord>& records) {
    std::string out = "check_id,location,lhs,rhs,residual,tolerance,verdict\n";
    auto csv_field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        q += "\"";
        return q;
    };
    auto csv_num = [](double v) {
        if (!std::isfinite(v)) return std::string(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const auto& r : records) {
        out += csv_field(r.check_id) + "," + csv_field(r.location) + ",";
        out += csv_num(r.lhs) + "," + csv_num(r.rhs) + "," + csv_num(r.residual) + ",";
        out += csv_num(r.tolerance) + "," + to_string(r.verdict) + "\n";
    }
    return out;
}

} // namespace curvlab::report
