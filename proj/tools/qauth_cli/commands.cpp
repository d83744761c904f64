#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

#include "qauth/adversary.hpp"
#include "qauth/errors.hpp"
#include "qauth/protocols.hpp"
#include "report.hpp"

namespace qauth::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json header(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  return j;
}

void stamp(ordered_json& j, const Options& opts) {
  if (!opts.deterministic) j["timestamp"] = utc_timestamp();
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string rational_text(const ledger::Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

protocols::Params params_from(const Options& opts) {
  protocols::Params p;
  p.n = opts.n;
  p.m = opts.m;
  p.s = opts.s;
  p.k = opts.k;
  return p;
}

adversary::AdversaryKind adversary_from(const std::string& name, const protocols::ProtocolSpec& spec) {
  if (name == "none") return adversary::None{};
  if (name == "intercept") return adversary::make_intercept(adversary::UniformRandomBasis{});
  if (name == "substitute") {
    // Zeng-Guo sends no qubits; its substitution target is the classical claim.
    if (spec.id == "zeng_guo") return adversary::make_substitution(adversary::RewriteClassical{});
    return adversary::make_substitution(adversary::FlipQubit{0});
  }
  if (name == "impersonate") {
    if (spec.kind == ledger::AuthKind::DataOrigin)
      throw UnsupportedError(spec.id + " authenticates data origin; impersonation applies to identity protocols");
    return adversary::make_impersonation();
  }
  throw ArgumentError("unknown adversary '" + name + "' (none, intercept, substitute, impersonate)");
}

void check_format(const Options& opts) {
  if (opts.format != "text" && opts.format != "json")
    throw ArgumentError("unknown format '" + opts.format + "' (text, json)");
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string pad(const std::string& s, std::size_t width) {
  // Display width: count UTF-8 code points, not bytes.
  std::size_t cols = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++cols;
  return s + std::string(width > cols ? width - cols : 0, ' ');
}

std::string aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::size_t cols = 0;
      for (unsigned char c : r[i])
        if ((c & 0xC0) != 0x80) ++cols;
      if (widths.size() <= i) widths.push_back(0);
      widths[i] = std::max(widths[i], cols);
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) line += i + 1 == r.size() ? r[i] : pad(r[i], widths[i] + 2);
    out += "  " + line + "\n";
  }
  return out;
}

}  // namespace

void apply_config(Options& opts, const json& config, const std::vector<std::string>& given) {
  if (!config.is_object()) throw ArgumentError("config file must hold a JSON object");
  auto is_given = [&](const std::string& key) { return std::find(given.begin(), given.end(), key) != given.end(); };
  static const std::set<std::string> known = {"n",         "m",      "s",           "k", "trials", "seed",
                                              "adversary", "format", "deterministic"};
  for (const auto& [key, value] : config.items()) {
    if (!known.contains(key)) throw ArgumentError("unknown config key '" + key + "'");
    if (is_given(key)) continue;
    try {
      if (key == "adversary") {
        opts.adversary = value.get<std::string>();
      } else if (key == "format") {
        opts.format = value.get<std::string>();
      } else if (key == "deterministic") {
        opts.deterministic = value.get<bool>();
      } else {
        if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
          throw ArgumentError("config key '" + key + "' must be a non-negative integer");
        const auto v = value.get<std::uint64_t>();
        if (key == "n") opts.n = v;
        if (key == "m") opts.m = v;
        if (key == "s") opts.s = v;
        if (key == "k") opts.k = v;
        if (key == "trials") opts.trials = v;
        if (key == "seed") opts.seed = v;
      }
    } catch (const json::exception&) {
      throw ArgumentError("config key '" + key + "' has the wrong type");
    }
  }
}

CommandResult cmd_run(const std::string& id, const Options& opts) {
  check_format(opts);
  const auto& spec = protocols::find(id);
  if (!spec.simulable)
    throw UnsupportedError(spec.id + " is accounting-only and cannot be executed; use `analyze " + spec.id +
                           "` for its declared complexity");
  const auto adv = adversary_from(opts.adversary, spec);
  const auto params = params_from(opts);
  const auto result = protocols::run(id, params, opts.seed, adv);

  Report r;
  r.protocol = spec.id;
  r.kind = kind_label(spec.kind);
  r.params = {opts.n, opts.m, opts.s, opts.k, opts.trials, opts.seed};
  r.adversary = adversary::describe(adv);
  r.tally = result.tally;
  const auto model = ledger::classify(result.tally);
  r.model = std::string(ledger::to_string(model));
  r.classification_flagged = ledger::classification_flagged(result.tally);
  r.cost = ledger::communication_cost(result.tally, model);
  r.expression = ledger::notation(model, spec.declared_complexity, spec.kind, !adversary::is_none(adv));
  r.outcome.accepted = result.outcome.accepted;
  r.outcome.eavesdrop_detected = result.outcome.eavesdrop_detected;
  r.outcome.success = result.outcome.success();
  if (spec.kind == ledger::AuthKind::DataOrigin) {
    r.outcome.sent_message = bits_text(result.outcome.sent_message);
    r.outcome.recovered_message = bits_text(result.outcome.recovered_message);
  }
  r.outcome.session_key = result.outcome.session_key;

  if (opts.trials > 0) {
    Rates rates;
    if (adversary::is_impersonation(adv)) {
      rates.impersonation_acceptance =
          to_rate(adversary::impersonation_acceptance(id, params, opts.trials, opts.seed));
    } else {
      rates.detection = to_rate(adversary::detection_rate(id, params, adv, opts.trials, opts.seed));
      const auto cost = adversary::adversarial_cost(id, params, adv, opts.trials, opts.seed);
      rates.adversarial_cost =
          CostSummary{cost.per_run.render(), cost.restarts, cost.capped_episodes, to_rate(cost.failure), cost.notation};
    }
    r.rates = rates;
  }
  if (!opts.deterministic) r.timestamp = utc_timestamp();

  CommandResult out;
  out.exit_code = result.outcome.success() ? kOk : kRejected;
  out.output = opts.format == "json" ? dump(to_json(r)) : render_text(r);
  return out;
}

CommandResult cmd_analyze(const std::string& id, const Options& opts) {
  check_format(opts);
  const auto analysis = protocols::analyze(id, params_from(opts));
  const auto& spec = *analysis.spec;

  ordered_json j = header("analyze");
  j["protocol"] = spec.id;
  j["kind"] = kind_label(spec.kind);
  j["simulable"] = spec.simulable;
  j["citation"] = spec.citation;
  j["declared"] = {{"model", ledger::to_string(spec.declared_model)},
                   {"expression", spec.declared_complexity.render()},
                   {"bound", ledger::to_string(spec.declared_complexity.bound)},
                   {"notation", ledger::notation(spec.declared_model, spec.declared_complexity, spec.kind, false)}};
  if (analysis.fit) {
    const auto& fit = *analysis.fit;
    ordered_json obs = ordered_json::array();
    for (const auto& [p, cost] : fit.observations) obs.push_back({{"n", p.n}, {"m", p.m}, {"cost", cost}});
    ordered_json grid = ordered_json::array();
    for (const auto& p : protocols::analysis_grid()) grid.push_back({{"n", p.n}, {"m", p.m}});
    ordered_json holdout = ordered_json::array();
    for (const auto& p : protocols::analysis_holdout()) holdout.push_back({{"n", p.n}, {"m", p.m}});
    j["fitted"] = {{"model", ledger::to_string(fit.model)},
                   {"expression", fit.expr.render()},
                   {"coefficients",
                    {{"n", rational_text(fit.expr.coeff_n)},
                     {"m", rational_text(fit.expr.coeff_m)},
                     {"constant", rational_text(fit.expr.constant)}}},
                   {"notation", ledger::notation(fit.model, fit.expr, spec.kind, false)},
                   {"grid", grid},
                   {"holdout", holdout},
                   {"observations", obs}};
    j["agreement"] = *analysis.agreement;
    j["model_agreement"] = *analysis.model_agreement;
  }
  stamp(j, opts);

  CommandResult out;
  if (opts.format == "json") {
    out.output = dump(j);
    return out;
  }
  std::vector<std::vector<std::string>> rows = {
      {"protocol", spec.id + " (" + kind_label(spec.kind) + ")"},
      {"simulable", yes_no(spec.simulable)},
      {"declared", j["declared"]["notation"].get<std::string>() + "  [" +
                       j["declared"]["bound"].get<std::string>() + "]"},
  };
  if (analysis.fit) {
    rows.push_back({"fitted", j["fitted"]["notation"].get<std::string>()});
    std::string obs;
    for (const auto& o : j["fitted"]["observations"])
      obs += "(" + o["n"].dump() + "," + o["m"].dump() + ")=" + o["cost"].dump() + " ";
    rows.push_back({"observations", obs.substr(0, obs.size() - 1)});
    rows.push_back({"agreement", yes_no(*analysis.agreement)});
    rows.push_back({"model_agreement", yes_no(*analysis.model_agreement)});
  } else {
    rows.push_back({"fitted", "n/a (accounting-only entry)"});
  }
  if (j.contains("timestamp")) rows.push_back({"timestamp", j["timestamp"].get<std::string>()});
  out.output = aligned(rows);
  return out;
}

CommandResult cmd_compare(const std::vector<std::string>& ids, const Options& opts) {
  check_format(opts);
  if (ids.size() < 2) throw ArgumentError("compare needs at least two protocol ids");
  std::vector<ledger::CompareEntry> entries;
  std::set<std::string> seen;
  for (const auto& id : ids) {
    const auto& spec = protocols::find(id);
    if (!seen.insert(spec.id).second) throw ArgumentError("protocol '" + id + "' listed twice");
    entries.push_back({spec.id, spec.declared_model, spec.declared_complexity});
  }
  const auto cmp = ledger::compare(entries);

  ordered_json j = header("compare");
  j["protocols"] = ids;
  j["reference"] = {{"n", cmp.reference().n}, {"m", cmp.reference().m}};
  ordered_json groups = ordered_json::array();
  for (const auto& g : cmp.groups()) {
    ordered_json entries_j = ordered_json::array();
    for (const auto& e : g.entries) {
      const auto& spec = protocols::find(e.id);
      entries_j.push_back({{"id", e.id},
                           {"expression", e.expr.render()},
                           {"notation", ledger::notation(g.model, e.expr, spec.kind, false)},
                           {"bound", ledger::to_string(e.expr.bound)},
                           {"reference_value", rational_text(e.reference_value)},
                           {"rank", e.rank}});
    }
    ordered_json rel = ordered_json::array();
    for (const auto& r : g.relations) {
      ordered_json rj = {{"first", r.first}, {"second", r.second}, {"relation", ledger::to_string(r.relation)}};
      if (r.condition) rj["condition"] = *r.condition;
      if (r.at_reference) rj["at_reference"] = *r.at_reference;
      rel.push_back(rj);
    }
    groups.push_back({{"model", ledger::to_string(g.model)}, {"entries", entries_j}, {"relations", rel}});
  }
  j["groups"] = groups;
  ordered_json cross = ordered_json::array();
  for (std::size_t a = 0; a < cmp.groups().size(); ++a)
    for (std::size_t b = a + 1; b < cmp.groups().size(); ++b)
      for (const auto& ea : cmp.groups()[a].entries)
        for (const auto& eb : cmp.groups()[b].entries)
          cross.push_back({{"first", ea.id},
                           {"second", eb.id},
                           {"relation", "not comparable"},
                           {"reason", std::string("classified under different models (") +
                                          std::string(ledger::to_string(cmp.groups()[a].model)) + ", " +
                                          std::string(ledger::to_string(cmp.groups()[b].model)) + ")"}});
  j["cross_group"] = cross;
  stamp(j, opts);

  CommandResult out;
  if (opts.format == "json") {
    out.output = dump(j);
    return out;
  }
  std::ostringstream os;
  os << "reference size n=" << cmp.reference().n << " m=" << cmp.reference().m << "\n";
  for (const auto& g : j["groups"]) {
    os << "\n[" << g["model"].get<std::string>() << "]\n";
    std::vector<std::vector<std::string>> rows = {{"rank", "protocol", "complexity", "at reference"}};
    for (const auto& e : g["entries"])
      rows.push_back({e["rank"].dump(), e["id"].get<std::string>(), e["notation"].get<std::string>(),
                      e["reference_value"].get<std::string>()});
    os << aligned(rows);
    for (const auto& r : g["relations"]) {
      const auto first = r["first"].get<std::string>();
      const auto second = r["second"].get<std::string>();
      const auto rel = r["relation"].get<std::string>();
      os << "  " << first << " vs " << second << ": ";
      if (rel == "equivalent") {
        os << "tied (equivalent complexity)";
      } else if (rel == "conditional") {
        os << "conditional, " << first << " is smaller when " << r["condition"].get<std::string>();
      } else if (rel == "less") {
        os << first << " is smaller";
      } else if (rel == "greater") {
        os << second << " is smaller";
      } else {
        os << "not comparable (exact vs lower bound)";
      }
      os << "\n";
    }
  }
  if (!j["cross_group"].empty()) {
    os << "\nnot comparable across models:\n";
    for (const auto& c : j["cross_group"])
      os << "  " << c["first"].get<std::string>() << " / " << c["second"].get<std::string>() << ": "
         << c["reason"].get<std::string>() << "\n";
  }
  if (j.contains("timestamp")) os << "\ntimestamp " << j["timestamp"].get<std::string>() << "\n";
  out.output = os.str();
  return out;
}

CommandResult cmd_table(const Options& opts) {
  check_format(opts);
  ordered_json j = header("table");
  ordered_json rows = ordered_json::array();
  for (const auto& spec : protocols::registry()) {
    ordered_json row = {{"id", spec.id},
                        {"kind", kind_label(spec.kind)},
                        {"model", ledger::to_string(spec.declared_model)},
                        {"complexity", spec.declared_complexity.render()},
                        {"notation", ledger::notation(spec.declared_model, spec.declared_complexity, spec.kind, false)},
                        {"bound", ledger::to_string(spec.declared_complexity.bound)},
                        {"simulable", spec.simulable}};
    if (spec.simulable) {
      const auto a = protocols::analyze(spec.id);
      row["verified"] = *a.agreement && *a.model_agreement;
    } else {
      row["verified"] = nullptr;
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  stamp(j, opts);

  CommandResult out;
  if (opts.format == "json") {
    out.output = dump(j);
    return out;
  }
  std::vector<std::vector<std::string>> text = {{"id", "kind", "model", "complexity", "simulable", "verified"}};
  for (const auto& r : j["rows"])
    text.push_back({r["id"].get<std::string>(), r["kind"].get<std::string>(), r["model"].get<std::string>(),
                    r["notation"].get<std::string>(), yes_no(r["simulable"].get<bool>()),
                    r["verified"].is_null() ? "n/a" : yes_no(r["verified"].get<bool>())});
  out.output = aligned(text);
  if (j.contains("timestamp")) out.output += "\n  timestamp " + j["timestamp"].get<std::string>() + "\n";
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UnsupportedError*>(&e) != nullptr) return kUnsupported;
  return kUsage;
}

}  // namespace qauth::cli
