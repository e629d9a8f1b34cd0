#ifndef LAGCERT_REPORT_HPP
#define LAGCERT_REPORT_HPP

// Line-oriented report documents: "%lagcert 1 <kind>" envelope, one
// "key value" row per line, closed by "end". Emission is canonical (witness
// keys sorted, fixed row order), so equal objects produce identical bytes
// and every document round-trips exactly.

#include <string>
#include <utility>
#include <vector>

#include "lagcert/certify.hpp"
#include "lagcert/galois.hpp"

namespace lagcert {

struct report_document {
    std::string kind;  // certificate | verdict | fixture
    std::vector<std::pair<std::string, std::string>> rows;  // key, rest of line
};

std::string emit(const report_document& doc);
report_document parse_report(const std::string& text);  // throws invalid_argument

const char* evidence_kind_name(evidence_kind k);
const char* outcome_name(galois_outcome o);

report_document to_document(const exclusion_certificate& cert);
exclusion_certificate certificate_from(const report_document& doc);

report_document to_document(const galois_verdict_result& verdict);
galois_verdict_result verdict_from(const report_document& doc);

// Generic fixture table; each row is emitted as "row tok tok ...".
report_document fixture_document(const std::string& name,
                                 const std::vector<std::vector<std::string>>& rows);

// Comma-separated scan table: per-r rows, then the residual-pair rows and the
// elimination summary, all with a fixed column count.
std::string scan_table(const scan_report& rep);

}  // namespace lagcert

#endif
