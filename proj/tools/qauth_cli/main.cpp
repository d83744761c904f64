#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "report.hpp"
#include "qauth/errors.hpp"

namespace {

using qauth::cli::Options;

struct Flags {
  std::vector<CLI::Option*> options;
  std::string config;
};

void add_flags(CLI::App* cmd, Options& o, Flags& f, bool simulation) {
  if (simulation) {
    f.options.push_back(cmd->add_option("--n", o.n, "identity key / round count"));
    f.options.push_back(cmd->add_option("--m", o.m, "message length in bits"));
    f.options.push_back(cmd->add_option("--s", o.s, "zeng_guo security parameter"));
    f.options.push_back(cmd->add_option("--k", o.k, "zhang_li_guo pair budget (0: k = n)"));
    f.options.push_back(cmd->add_option("--trials", o.trials, "Monte Carlo trials for rate estimates (0: none)"));
    f.options.push_back(cmd->add_option("--seed", o.seed, "master seed"));
    f.options.push_back(cmd->add_option("--adversary", o.adversary, "none, intercept, substitute, impersonate")
                            ->check(CLI::IsMember({"none", "intercept", "substitute", "impersonate"})));
  }
  f.options.push_back(
      cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"})));
  f.options.push_back(cmd->add_flag("--deterministic", o.deterministic, "omit the timestamp"));
  cmd->add_option("--config", f.config, "JSON file with defaults for the flags above");
}

std::vector<std::string> given_keys(const Flags& f) {
  std::vector<std::string> keys;
  for (const auto* opt : f.options)
    if (opt->count() > 0) keys.push_back(opt->get_single_name());
  return keys;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Communication complexity ledger and simulator for quantum authentication protocols"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qauth::cli::kToolVersion));

  Options opts;
  Flags flags;
  std::string id;
  std::vector<std::string> ids;

  auto* run = app.add_subcommand("run", "execute one protocol run (and optional Monte Carlo estimates)");
  run->add_option("protocol", id, "protocol id")->required();
  add_flags(run, opts, flags, true);

  auto* analyze = app.add_subcommand("analyze", "fit the communication complexity over a size grid");
  analyze->add_option("protocol", id, "protocol id")->required();
  add_flags(analyze, opts, flags, true);

  auto* compare = app.add_subcommand("compare", "group protocols by model and rank within each group");
  compare->add_option("protocols", ids, "two or more protocol ids");
  add_flags(compare, opts, flags, false);

  auto* table = app.add_subcommand("table", "summary of all registered protocols");
  add_flags(table, opts, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qauth::cli::kUsage;
  }

  try {
    if (!flags.config.empty()) {
      std::ifstream in(flags.config);
      if (!in) throw qauth::ArgumentError("cannot read config file '" + flags.config + "'");
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw qauth::ArgumentError("config file is not valid JSON: " + std::string(e.what()));
      }
      qauth::cli::apply_config(opts, config, given_keys(flags));
    }

    qauth::cli::CommandResult result;
    if (run->parsed()) {
      result = qauth::cli::cmd_run(id, opts);
    } else if (analyze->parsed()) {
      result = qauth::cli::cmd_analyze(id, opts);
    } else if (compare->parsed()) {
      result = qauth::cli::cmd_compare(ids, opts);
    } else {
      result = qauth::cli::cmd_table(opts);
    }
    std::cout << result.output;
    return result.exit_code;
  } catch (const qauth::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qauth::cli::exit_code_for(e);
  }
}
