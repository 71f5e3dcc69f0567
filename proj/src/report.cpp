#include "permbinom/report.hpp"

#include <sstream>

namespace permbinom::report {

namespace {

struct WitnessVisitor {
  const Field& field;

  ordered_json operator()(const CollisionWitness& w) const {
    return {{"type", "collision"}, {"x1", field.format(w.x1)}, {"x2", field.format(w.x2)}};
  }
  ordered_json operator()(const SubgroupCollisionWitness& w) const {
    return {{"type", "subgroup_collision"}, {"z1", field.format(w.z1)}, {"z2", field.format(w.z2)}};
  }
  ordered_json operator()(const HermiteWitness& w) const {
    return {{"type", "power_sum"}, {"N", w.N}, {"value", field.format(w.value)}};
  }
  ordered_json operator()(const GcdWitness& w) const { return {{"type", "gcd"}, {"r", w.r}, {"gcd", w.gcd}}; }
  ordered_json operator()(const RootCountWitness& w) const { return {{"type", "root_count"}, {"roots", w.roots}}; }
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

const std::vector<std::string> kFieldColumns = {"p", "m", "e", "q", "n", "order", "modulus", "primitive",
                                                "subgroup_order", "group_factorization"};
const std::vector<std::string> kVerdictColumns = {"p", "m", "e", "r", "a_exp", "a", "method",
                                                  "is_pp", "conclusive", "rule", "witness"};
const std::vector<std::string> kClaimColumns = {"claim_id",       "p",
                                                "m",              "e",
                                                "cases_run",      "cases_agreeing",
                                                "cases_certified", "disagreements",
                                                "certificate_gap_count", "certificate_gaps",
                                                "conjecture",     "wall_time_ms"};
const std::vector<std::string> kHWColumns = {"q",           "e",
                                             "r",           "d",
                                             "applicable",  "gcd_branch",
                                             "bound_lower", "predicts_nonpp",
                                             "radicand_ok", "lambda_check",
                                             "concludes_nonpp", "a_exp",
                                             "confirmed"};

ordered_json field_record(const Field& field, unsigned m, unsigned e) {
  const u64 q = static_cast<u64>(checked_pow(field.characteristic(), m));
  ordered_json factors = ordered_json::array();
  for (auto [prime, mult] : factorize(field.order() - 1)) factors.push_back({prime, mult});
  return {{"p", field.characteristic()},
          {"m", m},
          {"e", e},
          {"q", q},
          {"n", field.degree()},
          {"order", field.order()},
          {"modulus", field.describe()},
          {"primitive", field.format(field.primitive())},
          {"subgroup_order", (field.order() - 1) / (q - 1)},
          {"group_factorization", factors}};
}

ordered_json witness_record(const Field& field, const Witness& w) { return std::visit(WitnessVisitor{field}, w); }

ordered_json verdict_record(const Field& field, const BinomialSpec& spec, const PermVerdict& v) {
  ordered_json rec = {{"p", spec.p},
                      {"m", spec.m},
                      {"e", spec.e},
                      {"r", spec.r},
                      {"a_exp", field.elem_log(spec.a)},
                      {"a", field.format(spec.a)},
                      {"method", to_string(v.method)},
                      {"is_pp", v.is_pp},
                      {"conclusive", v.conclusive},
                      {"rule", v.rule}};
  rec["witness"] = v.witness ? witness_record(field, *v.witness) : ordered_json(nullptr);
  return rec;
}

ordered_json claim_record(const ClaimReport& r, bool timing) {
  auto cases = [](const std::vector<Disagreement>& list) {
    ordered_json out = ordered_json::array();
    for (const auto& d : list) {
      out.push_back({{"r", d.r},
                     {"a_exp", d.a_exp},
                     {"predicted_pp", d.predicted_pp},
                     {"observed_pp", d.observed_pp},
                     {"note", d.note}});
    }
    return out;
  };
  ordered_json rec = {{"claim_id", to_string(r.claim)},
                      {"p", r.p},
                      {"m", r.m},
                      {"e", r.e},
                      {"cases_run", r.cases_run},
                      {"cases_agreeing", r.cases_agreeing},
                      {"cases_certified", r.cases_certified},
                      {"disagreements", cases(r.disagreements)},
                      {"certificate_gap_count", r.certificate_gap_count},
                      {"certificate_gaps", cases(r.certificate_gaps)}};
  if (r.conjecture) rec["conjecture"] = *r.conjecture;
  if (timing) rec["wall_time_ms"] = r.wall_time_ms;
  return rec;
}

ordered_json cert_record(const Field& field, const PowerSumCert& cert) {
  ordered_json rec = {{"N", cert.N}};
  if (cert.decomp) {
    rec["alpha"] = cert.decomp->alpha;
    rec["beta"] = cert.decomp->beta;
    rec["gamma"] = cert.decomp->gamma;
  }
  ordered_json sols = ordered_json::array();
  for (const auto& s : cert.solutions) sols.push_back({s.i, s.j, s.k});
  rec["solutions"] = sols;
  rec["n1_terms"] = cert.n1_terms;
  rec["value"] = field.format(cert.value_single);
  rec["direct_agrees"] = cert.value_direct ? ordered_json(*cert.value_direct == cert.value_single) : nullptr;
  rec["triple_agrees"] = cert.value_triple ? ordered_json(*cert.value_triple == cert.value_single) : nullptr;
  return rec;
}

ordered_json hw_record(const HWReport& h) {
  ordered_json rec = {{"q", h.q},
                      {"e", h.e},
                      {"r", h.r},
                      {"d", h.d},
                      {"applicable", h.applicable},
                      {"gcd_branch", h.gcd_branch},
                      {"gcd", h.gcd_r},
                      {"bound_lower", to_string(h.bound_lower)},
                      {"predicts_nonpp", h.predicts_nonpp},
                      {"radicand_ok", h.radicand_ok},
                      {"lambda_check", h.lambda_check},
                      {"concludes_nonpp", h.concludes_nonpp}};
  if (h.a_exp) rec["a_exp"] = *h.a_exp;
  if (h.confirmed) rec["confirmed"] = *h.confirmed;
  return rec;
}

std::string csv_header(std::span<const std::string> columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  return out;
}

std::string csv_row(const ordered_json& record, std::span<const std::string> columns) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    if (auto it = record.find(columns[i]); it != record.end()) out += csv_escape(cell_text(*it));
  }
  return out;
}

std::string human_line(const ordered_json& record) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : record.items()) {
    if (!first) out << ' ';
    first = false;
    out << key << '=' << cell_text(value);
  }
  return out.str();
}

}  // namespace permbinom::report
