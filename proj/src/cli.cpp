#include "permbinom/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <set>
#include <stdexcept>

#include "permbinom/parallel.hpp"
#include "permbinom/report.hpp"

namespace permbinom::cli {

namespace {

using report::ordered_json;

struct Options {
  u64 p = 0;
  unsigned m = 1;
  unsigned e = 3;
  std::optional<u64> r, r_min, r_max, a_exp, q;
  std::optional<std::string> a_coeffs;
  std::string method = "auto";
  std::string claim;
  std::string format = "json";
  u64 seed = 0;
  unsigned jobs = 1;
  std::size_t samples = 10;
  bool full_sweep = false;
  bool timing = false;
  bool confirm = false;
};

class Emitter {
 public:
  Emitter(std::ostream& out, std::string format, const std::vector<std::string>& columns)
      : out_(out), format_(std::move(format)), columns_(columns) {}

  void emit(const ordered_json& rec) {
    if (format_ == "json") {
      out_ << rec.dump() << '\n';
    } else if (format_ == "csv") {
      if (!header_done_) out_ << report::csv_header(columns_) << '\n';
      header_done_ = true;
      out_ << report::csv_row(rec, columns_) << '\n';
    } else {
      out_ << report::human_line(rec) << '\n';
    }
  }

 private:
  std::ostream& out_;
  std::string format_;
  const std::vector<std::string>& columns_;
  bool header_done_ = false;
};

BinomialSpec proto_spec(const Options& o) { return BinomialSpec{o.p, o.m, o.e, 1, Elem{1}}; }

Elem parse_a(const Field& field, const Options& o) {
  if (o.a_coeffs) {
    const Elem a = field.parse_elem(*o.a_coeffs);
    if (a.is_zero()) throw std::invalid_argument("a must be nonzero");
    return a;
  }
  if (!o.a_exp) throw std::invalid_argument("one of --a-exp or --a-coeffs is required");
  return field.elem_exp(static_cast<i128>(*o.a_exp));
}

void check_r(const Field& field, u64 r) {
  if (r < 1 || r > field.order() - 1) {
    throw std::invalid_argument("r = " + std::to_string(r) + " outside [1, " + std::to_string(field.order() - 1) + "]");
  }
}

PermVerdict run_method(const Field& field, const BinomialSpec& spec, const std::string& method) {
  if (method == "auto") return oracle_verdict(field, spec);
  if (method == "brute") return brute_force_is_pp(field, spec);
  if (method == "hermite") return hermite_is_pp(field, spec);
  if (method == "mu") return mu_d_is_pp(field, spec);
  if (method == "closed") return closed_form_is_pp(field, spec);
  throw std::invalid_argument("unknown method " + method);
}

struct CellResult {
  std::vector<ordered_json> records;
  std::vector<std::string> notes;
  bool disagreement = false;
};

// One (r, a) cell: a single method, or every method within its size cap for
// "all", where inconclusive closed-form results abstain.
CellResult evaluate_cell(const Field& field, const BinomialSpec& spec, const std::string& method) {
  CellResult res;
  if (method != "all") {
    res.records.push_back(report::verdict_record(field, spec, run_method(field, spec, method)));
    return res;
  }
  std::optional<bool> consensus;
  for (const char* name : {"brute", "hermite", "mu", "closed"}) {
    PermVerdict v;
    try {
      v = run_method(field, spec, name);
    } catch (const capacity_error& ex) {
      res.notes.push_back(std::string(name) + " skipped: " + ex.what());
      continue;
    }
    res.records.push_back(report::verdict_record(field, spec, v));
    if (!v.conclusive) continue;
    if (consensus && *consensus != v.is_pp) res.disagreement = true;
    consensus = v.is_pp;
  }
  return res;
}

int cmd_field(const Options& o, std::ostream& out) {
  const BinomialSpec proto = proto_spec(o);
  const Field field = field_for(proto, LogTables::off);
  Emitter em(out, o.format, report::kFieldColumns);
  em.emit(report::field_record(field, o.m, o.e));
  return kOk;
}

int cmd_test(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.r) throw std::invalid_argument("--r is required");
  BinomialSpec spec = proto_spec(o);
  const Field field = field_for(spec);
  check_r(field, *o.r);
  spec.r = *o.r;
  spec.a = parse_a(field, o);
  const CellResult res = evaluate_cell(field, spec, o.method);
  Emitter em(out, o.format, report::kVerdictColumns);
  for (const auto& rec : res.records) em.emit(rec);
  for (const auto& note : res.notes) err << note << '\n';
  if (res.disagreement) {
    err << "methods disagree for r = " << spec.r << '\n';
    return kDisagreement;
  }
  return kOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
  const BinomialSpec proto = proto_spec(o);
  const Field field = field_for(proto);
  const u64 r_lo = o.r ? *o.r : o.r_min.value_or(1);
  const u64 r_hi = o.r ? *o.r : o.r_max.value_or(proto.subgroup_order());
  std::vector<u64> rs;
  for (u64 r = r_lo; r <= r_hi; ++r) {
    check_r(field, r);
    rs.push_back(r);
  }
  std::vector<Elem> as;
  if (o.a_exp || o.a_coeffs) {
    as.push_back(parse_a(field, o));
  } else {
    DriverOptions d;
    d.a_samples = o.samples;
    d.full_sweep = o.full_sweep;
    d.seed = o.seed;
    for (u64 i : sample_a_exponents(field, proto, d)) as.push_back(field.elem_exp(i));
  }
  if (rs.empty() || as.empty()) return kOk;

  const auto cells = parallel_map(rs.size() * as.size(), o.jobs, [&](std::size_t idx) {
    BinomialSpec spec = proto;
    spec.r = rs[idx / as.size()];
    spec.a = as[idx % as.size()];
    return evaluate_cell(field, spec, o.method);
  });
  Emitter em(out, o.format, report::kVerdictColumns);
  bool disagreement = false;
  std::set<std::string> notes;
  for (const auto& cell : cells) {
    for (const auto& rec : cell.records) em.emit(rec);
    for (const auto& n : cell.notes) notes.insert(n);
    disagreement = disagreement || cell.disagreement;
  }
  for (const auto& n : notes) err << n << '\n';
  return disagreement ? kDisagreement : kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const auto id = parse_claim(o.claim);
  if (!id) throw std::invalid_argument("unknown claim '" + o.claim + "'");
  DriverOptions d;
  d.a_samples = o.samples;
  d.full_sweep = o.full_sweep;
  d.seed = o.seed;
  d.jobs = o.jobs;
  Emitter em(out, o.format, report::kClaimColumns);
  bool ok = true;
  for (const auto& rep : verify_claim(*id, o.p, o.m, d)) {
    em.emit(report::claim_record(rep, o.timing));
    if (!rep.ok()) {
      err << to_string(rep.claim) << ": " << rep.cases_run - rep.cases_agreeing << " disagreeing cases\n";
      ok = false;
    }
  }
  return ok ? kOk : kDisagreement;
}

int cmd_hw(const Options& o, std::ostream& out, std::ostream& err) {
  if (!prime_power(*o.q)) throw std::invalid_argument("q = " + std::to_string(*o.q) + " is not a prime power");
  std::vector<u64> rs;
  const u64 r_lo = o.r ? *o.r : o.r_min.value_or(1);
  const u64 r_hi = o.r ? *o.r : o.r_max.value_or(r_lo);
  for (u64 r = r_lo; r <= r_hi; ++r) rs.push_back(r);
  Emitter em(out, o.format, report::kHWColumns);
  if (!o.confirm) {
    for (u64 r : rs) em.emit(report::hw_record(hw_threshold(*o.q, o.e, r)));
    return kOk;
  }
  const Theorem2Scan scan = theorem2_scan(*o.q, o.e, rs, o.samples, o.seed, o.jobs);
  for (const auto& row : scan.rows) em.emit(report::hw_record(row));
  if (!scan.sound()) {
    err << "a predicted non-permutation was not confirmed\n";
    return kDisagreement;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.jobs = default_jobs();
  CLI::App app{"Permutation tests for x^r (x^(q-1) + a) over F_{q^e}", "permbinom"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "characteristic")->required();
    sub->add_option("--m", o.m, "q = p^m")->check(CLI::PositiveNumber);
    sub->add_option("--e", o.e, "field is F_{q^e}")->check(CLI::PositiveNumber);
  };
  auto add_r = [&](CLI::App* sub) {
    auto* r = sub->add_option("--r", o.r, "exponent r");
    sub->add_option("--r-min", o.r_min)->excludes(r);
    sub->add_option("--r-max", o.r_max)->excludes(r);
  };
  auto add_a = [&](CLI::App* sub) {
    auto* ex = sub->add_option("--a-exp", o.a_exp, "a = omega^i");
    sub->add_option("--a-coeffs", o.a_coeffs, "a as c0,c1,...")->excludes(ex);
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed);
    sub->add_option("--samples", o.samples, "number of sampled a");
    sub->add_flag("--full-sweep", o.full_sweep, "every admissible a");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  const std::vector<std::string> methods = {"auto", "brute", "hermite", "mu", "closed", "all"};

  auto* field = app.add_subcommand("field", "describe F_{q^e}");
  add_field(field);
  add_format(field);

  auto* test = app.add_subcommand("test", "test a single binomial");
  add_field(test);
  add_r(test);
  add_a(test);
  add_format(test);
  test->add_option("--method", o.method)->check(CLI::IsMember(methods));
  test->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);

  auto* scan = app.add_subcommand("scan", "test a grid of (r, a)");
  add_field(scan);
  add_r(scan);
  add_a(scan);
  add_format(scan);
  add_sampling(scan);
  scan->add_option("--method", o.method)->check(CLI::IsMember(methods));

  auto* verify = app.add_subcommand("verify", "check a classification claim against the oracle");
  verify->add_option("--claim", o.claim)->required();
  verify->add_option("--p", o.p)->required();
  verify->add_option("--m", o.m)->check(CLI::PositiveNumber);
  add_format(verify);
  add_sampling(verify);
  verify->add_flag("--timing", o.timing, "include wall_time_ms");

  auto* hw = app.add_subcommand("hw", "point-count bound for the curve of f");
  hw->add_option("--q", o.q)->required();
  hw->add_option("--e", o.e)->check(CLI::PositiveNumber);
  add_r(hw);
  add_format(hw);
  add_sampling(hw);
  hw->add_flag("--confirm", o.confirm, "confirm predictions with the subgroup criterion");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*field) return cmd_field(o, out);
    if (*test) return cmd_test(o, out, err);
    if (*scan) return cmd_scan(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    if (*hw) return cmd_hw(o, out, err);
  } catch (const capacity_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kInputError;
  } catch (const std::domain_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kInputError;
  } catch (const std::overflow_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace permbinom::cli
