#ifndef PERMBINOM_REPORT_HPP
#define PERMBINOM_REPORT_HPP

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "permbinom/closed_form.hpp"
#include "permbinom/hasse_weil.hpp"
#include "permbinom/theorems.hpp"

// Record builders shared by the command-line front end. Every record is a
// JSON object; CSV rows and the human form are rendered from it.
namespace permbinom::report {

using nlohmann::ordered_json;

ordered_json field_record(const Field& field, unsigned m, unsigned e);
ordered_json witness_record(const Field& field, const Witness& w);
// a is echoed both as an omega-exponent and as a coefficient list.
ordered_json verdict_record(const Field& field, const BinomialSpec& spec, const PermVerdict& v);
ordered_json claim_record(const ClaimReport& r, bool timing);
ordered_json cert_record(const Field& field, const PowerSumCert& cert);
ordered_json hw_record(const HWReport& h);

extern const std::vector<std::string> kFieldColumns;
extern const std::vector<std::string> kVerdictColumns;
extern const std::vector<std::string> kClaimColumns;
extern const std::vector<std::string> kHWColumns;

std::string csv_header(std::span<const std::string> columns);
// Missing keys and nulls become empty cells; nested values are written as
// compact JSON in a quoted cell.
std::string csv_row(const ordered_json& record, std::span<const std::string> columns);
// "key=value key=value ..." in record order.
std::string human_line(const ordered_json& record);

}  // namespace permbinom::report

#endif  // PERMBINOM_REPORT_HPP
