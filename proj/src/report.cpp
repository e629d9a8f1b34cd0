#include "lagcert/report.hpp"

#include <sstream>
#include <stdexcept>

#include "lagcert/config.hpp"

namespace lagcert {

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::map<std::string, std::string> witness_from(const std::vector<std::string>& toks,
                                                std::size_t first) {
    std::map<std::string, std::string> w;
    for (std::size_t i = first; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("report: witness token without '=': " + toks[i]);
        w[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
    }
    return w;
}

std::string witness_str(const std::map<std::string, std::string>& w) {
    std::string out;
    for (const auto& [k, v] : w) out += " " + k + "=" + v;
    return out;
}

void push_header(report_document& doc) {
    doc.rows.emplace_back("tool", std::string(tool_name) + " " + tool_version);
    doc.rows.emplace_back("config", global_config().hash());
}

}  // namespace

std::string emit(const report_document& doc) {
    std::string out = "%lagcert " + std::to_string(report_format_version) + " " + doc.kind + "\n";
    for (const auto& [key, value] : doc.rows) {
        out += key;
        if (!value.empty()) out += " " + value;
        out += "\n";
    }
    out += "end\n";
    return out;
}

report_document parse_report(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("report: empty document");
    std::istringstream head(line);
    std::string magic, kind;
    int version = 0;
    head >> magic >> version >> kind;
    if (magic != "%lagcert" || kind.empty())
        throw std::invalid_argument("report: bad envelope line: " + line);
    if (version != report_format_version)
        throw std::invalid_argument("report: unsupported format version " +
                                    std::to_string(version));
    report_document doc;
    doc.kind = kind;
    bool closed = false;
    while (std::getline(in, line)) {
        if (closed) {
            if (!line.empty()) throw std::invalid_argument("report: content after end");
            continue;
        }
        if (line == "end") {
            closed = true;
            continue;
        }
        auto sp = line.find(' ');
        if (sp == std::string::npos)
            doc.rows.emplace_back(line, "");
        else
            doc.rows.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    if (!closed) throw std::invalid_argument("report: missing end line");
    return doc;
}

const char* evidence_kind_name(evidence_kind k) {
    switch (k) {
        case evidence_kind::base_case: return "base_case";
        case evidence_kind::degree_divisibility: return "degree_divisibility";
        case evidence_kind::factor_degree_cap: return "factor_degree_cap";
        case evidence_kind::prev_prime_gap: return "prev_prime_gap";
        case evidence_kind::near_prime: return "near_prime";
        case evidence_kind::single_degree: return "single_degree";
        case evidence_kind::linear_roots: return "linear_roots";
        case evidence_kind::oracle_only: return "oracle_only";
    }
    return "unknown";
}

namespace {

evidence_kind evidence_kind_from(const std::string& s) {
    if (s == "base_case") return evidence_kind::base_case;
    if (s == "degree_divisibility") return evidence_kind::degree_divisibility;
    if (s == "factor_degree_cap") return evidence_kind::factor_degree_cap;
    if (s == "prev_prime_gap") return evidence_kind::prev_prime_gap;
    if (s == "near_prime") return evidence_kind::near_prime;
    if (s == "single_degree") return evidence_kind::single_degree;
    if (s == "linear_roots") return evidence_kind::linear_roots;
    if (s == "oracle_only") return evidence_kind::oracle_only;
    throw std::invalid_argument("report: unknown evidence kind " + s);
}

const char* status_name(certificate_status s) {
    switch (s) {
        case certificate_status::complete: return "complete";
        case certificate_status::residual: return "residual";
        case certificate_status::unsupported: return "unsupported";
    }
    return "unknown";
}

certificate_status status_from(const std::string& s) {
    if (s == "complete") return certificate_status::complete;
    if (s == "residual") return certificate_status::residual;
    if (s == "unsupported") return certificate_status::unsupported;
    throw std::invalid_argument("report: unknown status " + s);
}

}  // namespace

const char* outcome_name(galois_outcome o) {
    switch (o) {
        case galois_outcome::alternating: return "alternating";
        case galois_outcome::symmetric: return "symmetric";
        case galois_outcome::contains_alternating_only: return "contains_alternating_only";
        case galois_outcome::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

galois_outcome outcome_from(const std::string& s) {
    if (s == "alternating") return galois_outcome::alternating;
    if (s == "symmetric") return galois_outcome::symmetric;
    if (s == "contains_alternating_only") return galois_outcome::contains_alternating_only;
    if (s == "unknown") return galois_outcome::unknown;
    throw std::invalid_argument("report: unknown outcome " + s);
}

}  // namespace

report_document to_document(const exclusion_certificate& cert) {
    report_document doc;
    doc.kind = "certificate";
    push_header(doc);
    doc.rows.emplace_back("n", cert.n.get_str());
    doc.rows.emplace_back("r", cert.r.get_str());
    doc.rows.emplace_back("status", status_name(cert.status));
    for (const auto& ev : cert.evidence)
        doc.rows.emplace_back("evidence", std::string(evidence_kind_name(ev.kind)) + " " +
                                              ev.lo.get_str() + " " + ev.hi.get_str() +
                                              witness_str(ev.witness));
    for (const auto& d : cert.uncovered) doc.rows.emplace_back("uncovered", d.get_str());
    if (!cert.note.empty()) doc.rows.emplace_back("note", cert.note);
    return doc;
}

exclusion_certificate certificate_from(const report_document& doc) {
    if (doc.kind != "certificate")
        throw std::invalid_argument("report: expected a certificate document");
    exclusion_certificate cert;
    bool have_n = false, have_r = false, have_status = false;
    for (const auto& [key, value] : doc.rows) {
        if (key == "n") {
            cert.n = mpz_class(value);
            have_n = true;
        } else if (key == "r") {
            cert.r = mpz_class(value);
            have_r = true;
        } else if (key == "status") {
            cert.status = status_from(value);
            have_status = true;
        } else if (key == "evidence") {
            auto toks = split_tokens(value);
            if (toks.size() < 3) throw std::invalid_argument("report: short evidence row");
            degree_evidence ev;
            ev.kind = evidence_kind_from(toks[0]);
            ev.lo = mpz_class(toks[1]);
            ev.hi = mpz_class(toks[2]);
            ev.witness = witness_from(toks, 3);
            cert.evidence.push_back(std::move(ev));
        } else if (key == "uncovered") {
            cert.uncovered.emplace_back(value);
        } else if (key == "note") {
            cert.note = value;
        } else if (key != "tool" && key != "config") {
            throw std::invalid_argument("report: unknown certificate row " + key);
        }
    }
    if (!have_n || !have_r || !have_status)
        throw std::invalid_argument("report: certificate missing n, r or status");
    return cert;
}

report_document to_document(const galois_verdict_result& verdict) {
    report_document doc;
    doc.kind = "verdict";
    push_header(doc);
    doc.rows.emplace_back("n", verdict.n.get_str());
    doc.rows.emplace_back("r", verdict.r.get_str());
    doc.rows.emplace_back("outcome", outcome_name(verdict.outcome));
    if (verdict.square_advisory)
        doc.rows.emplace_back("advisory_square", *verdict.square_advisory ? "1" : "0");
    for (const auto& [name, witness] : verdict.trace)
        doc.rows.emplace_back("trace", name + witness_str(witness));
    if (!verdict.note.empty()) doc.rows.emplace_back("note", verdict.note);
    return doc;
}

galois_verdict_result verdict_from(const report_document& doc) {
    if (doc.kind != "verdict") throw std::invalid_argument("report: expected a verdict document");
    galois_verdict_result v;
    for (const auto& [key, value] : doc.rows) {
        if (key == "n") {
            v.n = mpz_class(value);
        } else if (key == "r") {
            v.r = mpz_class(value);
        } else if (key == "outcome") {
            v.outcome = outcome_from(value);
        } else if (key == "advisory_square") {
            v.square_advisory = value == "1";
        } else if (key == "trace") {
            auto toks = split_tokens(value);
            if (toks.empty()) throw std::invalid_argument("report: empty trace row");
            v.trace.emplace_back(toks[0], witness_from(toks, 1));
        } else if (key == "note") {
            v.note = value;
        } else if (key != "tool" && key != "config") {
            throw std::invalid_argument("report: unknown verdict row " + key);
        }
    }
    return v;
}

report_document fixture_document(const std::string& name,
                                 const std::vector<std::vector<std::string>>& rows) {
    report_document doc;
    doc.kind = "fixture";
    push_header(doc);
    doc.rows.emplace_back("name", name);
    for (const auto& row : rows) {
        std::string joined;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) joined += " ";
            joined += row[i];
        }
        doc.rows.emplace_back("row", joined);
    }
    return doc;
}

std::string scan_table(const scan_report& rep) {
    std::string out = std::string("# tool ") + tool_name + " " + tool_version + "\n" +
                      "# config " + global_config().hash() + "\n" + "r,hard_count,residual\n";
    for (const auto& row : rep.rows) {
        std::string degrees;
        for (std::size_t i = 0; i < row.residual.size(); ++i) {
            if (i) degrees += ";";
            degrees += row.residual[i].get_str();
        }
        out += std::to_string(row.r) + "," + std::to_string(row.hard_count) + "," + degrees + "\n";
    }
    out += "total_residual_pairs," + std::to_string(rep.residual_pairs.size()) + ",\n";
    out += std::string("all_residuals_eliminated,") +
           (rep.all_residuals_eliminated ? "yes" : "no") + ",\n";
    return out;
}

}  // namespace lagcert
