#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace qauth::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json rate_json(const Rate& r) {
  return {{"point", r.point}, {"lo", r.lo}, {"hi", r.hi}, {"hits", r.hits}, {"trials", r.trials}, {"seed", r.seed}};
}

Rate rate_from(const json& j) {
  return {j.at("point").get<double>(),      j.at("lo").get<double>(),          j.at("hi").get<double>(),
          j.at("hits").get<std::size_t>(), j.at("trials").get<std::size_t>(), j.at("seed").get<std::uint64_t>()};
}

// Same digits as the JSON serializer, so both formats agree.
std::string num(double d) { return json(d).dump(); }

std::string percent(const Rate& r) {
  return num(r.point) + " [" + num(r.lo) + ", " + num(r.hi) + "] (" + std::to_string(r.hits) + "/" +
         std::to_string(r.trials) + ")";
}

}  // namespace

Rate to_rate(const adversary::RateEstimate& r) { return {r.point, r.lo, r.hi, r.hits, r.trials, r.seed}; }

std::string bits_text(const Bits& bits) {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string kind_label(ledger::AuthKind kind) { return kind == ledger::AuthKind::DataOrigin ? "f_D" : "f_I"; }

ordered_json to_json(const Report& r) {
  ordered_json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["command"] = "run";
  j["protocol"] = r.protocol;
  j["kind"] = r.kind;
  j["params"] = {{"n", r.params.n}, {"m", r.params.m},           {"s", r.params.s},
                 {"k", r.params.k}, {"trials", r.params.trials}, {"seed", r.params.seed}};
  j["adversary"] = r.adversary;
  j["tally"] = {{"qubits_sent", r.tally.qubits_sent},
                {"classical_bits_sent", r.tally.classical_bits_sent},
                {"ebits_prior", r.tally.ebits_prior},
                {"ebits_in_protocol", r.tally.ebits_in_protocol}};
  j["model"] = r.model;
  j["classification_flagged"] = r.classification_flagged;
  j["cost"] = r.cost;
  j["expression"] = r.expression;

  ordered_json o;
  o["accepted"] = r.outcome.accepted;
  o["eavesdrop_detected"] = r.outcome.eavesdrop_detected;
  o["success"] = r.outcome.success;
  if (r.outcome.sent_message) o["sent_message"] = *r.outcome.sent_message;
  if (r.outcome.recovered_message) o["recovered_message"] = *r.outcome.recovered_message;
  if (r.outcome.session_key) o["session_key"] = *r.outcome.session_key;
  j["outcome"] = o;

  if (r.rates) {
    ordered_json rates = ordered_json::object();
    if (r.rates->detection) rates["detection"] = rate_json(*r.rates->detection);
    if (r.rates->impersonation_acceptance)
      rates["impersonation_acceptance"] = rate_json(*r.rates->impersonation_acceptance);
    if (const auto& c = r.rates->adversarial_cost) {
      rates["adversarial_cost"] = {{"per_run", c->per_run},
                                   {"restarts", c->restarts},
                                   {"capped_episodes", c->capped_episodes},
                                   {"failure", rate_json(c->failure)},
                                   {"notation", c->notation}};
    }
    j["rates"] = rates;
  }
  if (r.timestamp) j["timestamp"] = *r.timestamp;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.protocol = j.at("protocol").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  const auto& p = j.at("params");
  r.params = {p.at("n").get<std::size_t>(), p.at("m").get<std::size_t>(),      p.at("s").get<std::size_t>(),
              p.at("k").get<std::size_t>(), p.at("trials").get<std::size_t>(), p.at("seed").get<std::uint64_t>()};
  r.adversary = j.at("adversary").get<std::string>();
  const auto& t = j.at("tally");
  r.tally.qubits_sent = t.at("qubits_sent").get<std::size_t>();
  r.tally.classical_bits_sent = t.at("classical_bits_sent").get<std::size_t>();
  r.tally.ebits_prior = t.at("ebits_prior").get<std::size_t>();
  r.tally.ebits_in_protocol = t.at("ebits_in_protocol").get<std::size_t>();
  r.model = j.at("model").get<std::string>();
  r.classification_flagged = j.at("classification_flagged").get<bool>();
  r.cost = j.at("cost").get<std::size_t>();
  r.expression = j.at("expression").get<std::string>();

  const auto& o = j.at("outcome");
  r.outcome.accepted = o.at("accepted").get<bool>();
  r.outcome.eavesdrop_detected = o.at("eavesdrop_detected").get<bool>();
  r.outcome.success = o.at("success").get<bool>();
  if (o.contains("sent_message")) r.outcome.sent_message = o["sent_message"].get<std::string>();
  if (o.contains("recovered_message")) r.outcome.recovered_message = o["recovered_message"].get<std::string>();
  if (o.contains("session_key")) r.outcome.session_key = o["session_key"].get<std::vector<double>>();

  if (j.contains("rates")) {
    const auto& rj = j["rates"];
    Rates rates;
    if (rj.contains("detection")) rates.detection = rate_from(rj["detection"]);
    if (rj.contains("impersonation_acceptance")) rates.impersonation_acceptance = rate_from(rj["impersonation_acceptance"]);
    if (rj.contains("adversarial_cost")) {
      const auto& c = rj["adversarial_cost"];
      rates.adversarial_cost = CostSummary{c.at("per_run").get<std::string>(), c.at("restarts").get<double>(),
                                           c.at("capped_episodes").get<std::size_t>(), rate_from(c.at("failure")),
                                           c.at("notation").get<std::string>()};
    }
    r.rates = rates;
  }
  if (j.contains("timestamp")) r.timestamp = j["timestamp"].get<std::string>();
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  auto row = [&](const char* label, const std::string& value) {
    os << std::left << std::setw(20) << label << value << "\n";
  };
  row("protocol", r.protocol + " (" + r.kind + ")");
  {
    std::ostringstream p;
    p << "n=" << r.params.n << " m=" << r.params.m << " s=" << r.params.s << " k=" << r.params.k
      << " trials=" << r.params.trials << " seed=" << r.params.seed;
    row("params", p.str());
  }
  row("adversary", r.adversary);
  {
    std::ostringstream t;
    t << "qubits_sent=" << r.tally.qubits_sent << " classical_bits_sent=" << r.tally.classical_bits_sent
      << " ebits_prior=" << r.tally.ebits_prior << " ebits_in_protocol=" << r.tally.ebits_in_protocol;
    row("tally", t.str());
  }
  row("model", r.model + (r.classification_flagged ? " (flagged: qubits and bits without entanglement)" : ""));
  row("cost", std::to_string(r.cost));
  row("expression", r.expression);
  row("accepted", r.outcome.accepted ? "true" : "false");
  row("eavesdrop_detected", r.outcome.eavesdrop_detected ? "true" : "false");
  if (r.outcome.sent_message) row("sent_message", *r.outcome.sent_message);
  if (r.outcome.recovered_message) row("recovered_message", *r.outcome.recovered_message);
  if (r.outcome.session_key) {
    std::string k;
    for (std::size_t i = 0; i < r.outcome.session_key->size(); ++i) k += (i ? " " : "") + num((*r.outcome.session_key)[i]);
    row("session_key", k);
  }
  if (r.rates) {
    if (r.rates->detection) row("detection_rate", percent(*r.rates->detection));
    if (r.rates->impersonation_acceptance) row("impersonation_accept", percent(*r.rates->impersonation_acceptance));
    if (const auto& c = r.rates->adversarial_cost) {
      row("failure_rate", percent(c->failure));
      row("restarts", num(c->restarts) + (c->capped_episodes ? " (" + std::to_string(c->capped_episodes) + " capped)" : ""));
      row("adversarial_cost", c->notation);
    }
  }
  if (r.timestamp) row("timestamp", *r.timestamp);
  return os.str();
}

}  // namespace qauth::cli
