#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pda/bounds.hpp"
#include "pda/caching_sim.hpp"
#include "pda/constructions.hpp"
#include "pda/core.hpp"
#include "pda/families.hpp"
#include "pda/search.hpp"
#include "pda/text_format.hpp"

// The `pda` command line. Everything goes through run() so tests can drive it
// in-process with string streams.
//
// Exit codes: 0 success, 1 operation error or failed verify/certify/decode,
// 2 usage error.

namespace pda::cli {

namespace detail {

class Inputs {
 public:
  explicit Inputs(std::istream& in) : in_(in) {}

  // "-" is standard input and may be named once per invocation.
  RawPda raw(const std::string& path) {
    if (path == "-") {
      if (stdin_used_) throw PreconditionError("standard input ('-') can only be read once");
      stdin_used_ = true;
      return parse_raw(in_);
    }
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open '" + path + "'");
    return parse_raw(f);
  }

  Pda pda(const std::string& path) {
    RawPda r = raw(path);
    Pda p = Pda::from_grid(std::move(r.grid));
    if (p.params() != r.header) {
      std::ostringstream os;
      os << path << ": header declares " << r.header << " but the array has " << p.params();
      throw VerificationError(os.str());
    }
    return p;
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

inline std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

inline std::string cells_str(const std::vector<Cell>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? " " : "") + pda::detail::cell_str(cells[i]);
  return out;
}

inline std::string params_str(const Params& p) {
  return "K=" + std::to_string(p.k) + " F=" + std::to_string(p.f) + " Z=" + std::to_string(p.z) +
         " S=" + std::to_string(p.s);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Placement delivery arrays: construct, verify, bound, search, certify, simulate.", "pda"};
  app.require_subcommand(1, 1);

  bool machine = false;
  bool all_pairs = false;
  std::optional<std::int64_t> k, t, m, kappa, n, big_k, big_f, big_z, big_s, max_s;
  std::optional<std::uint64_t> node_budget;
  std::int64_t files = 0;
  std::size_t packet_bytes = 64;
  std::string demands = "all";
  std::uint64_t seed = 0;
  std::string family;
  std::string input;
  std::vector<std::string> input_list;
  std::vector<std::size_t> columns;
  std::string witness_path;

  auto machine_flag = [&](CLI::App* sub) { sub->add_flag("--machine", machine, "line-oriented key=value output"); };
  auto kfz = [&](CLI::App* sub) {
    sub->add_option("--K", big_k, "number of users (columns)")->required();
    sub->add_option("--F", big_f, "subpacketization (rows)")->required();
    sub->add_option("--Z", big_z, "stars per column")->required();
  };
  auto one_input = [&](CLI::App* sub) { sub->add_option("input", input, "PDA file, '-' for stdin")->required(); };

  CLI::App* construct = app.add_subcommand("construct", "build a named family; 'construct list' prints the index");
  construct->add_option("family", family, "family id or 'list'")->required();
  construct->add_option("--k", k, "family key k");
  construct->add_option("--t", t, "family key t");
  construct->add_option("--m", m, "family key m (copies)");
  construct->add_option("--kappa", kappa, "family key kappa (deleted columns)");
  construct->add_option("--n", n, "family key n");
  construct->add_option("--K", big_k, "family key K (users)");
  construct->add_option("--F", big_f, "family key F (rows)");
  machine_flag(construct);

  CLI::App* verify_cmd = app.add_subcommand("verify", "check C1, C2 and the code range");
  one_input(verify_cmd);
  verify_cmd->add_flag("--all", all_pairs, "list every offending pair");
  machine_flag(verify_cmd);

  CLI::App* transpose_cmd = app.add_subcommand("transpose", "swap rows and columns (needs equal row star counts)");
  one_input(transpose_cmd);

  CLI::App* concat_cmd = app.add_subcommand("concat", "side by side, codes offset per part");
  concat_cmd->add_option("inputs", input_list, "PDA files")->required();

  CLI::App* blockdiag_cmd = app.add_subcommand("blockdiag", "block diagonal with shared codes, stars off the blocks");
  blockdiag_cmd->add_option("inputs", input_list, "PDA files")->required();

  CLI::App* delete_cmd = app.add_subcommand("delete-cols", "drop columns by index, or the last --kappa columns");
  one_input(delete_cmd);
  delete_cmd->add_option("columns", columns, "0-based column indices");
  delete_cmd->add_option("--kappa", kappa, "drop this many trailing columns");

  CLI::App* bound_cmd = app.add_subcommand("bound", "best lower bound on S(K,F,Z)");
  kfz(bound_cmd);
  machine_flag(bound_cmd);

  CLI::App* search_cmd = app.add_subcommand("search", "exhaustive search: existence with --S, else the minimum S");
  kfz(search_cmd);
  search_cmd->add_option("--S", big_s, "decide whether a (K,F,Z,S) array exists");
  search_cmd->add_option("--max-s", max_s, "stop the minimum search above this S");
  search_cmd->add_option("--node-budget", node_budget, "explored-node limit per existence query");
  machine_flag(search_cmd);

  CLI::App* certify_cmd = app.add_subcommand("certify", "prove optimality by bound or by exhaustive search");
  one_input(certify_cmd);
  certify_cmd->add_option("witness", witness_path, "where to write a smaller array if one is found");
  certify_cmd->add_option("--node-budget", node_budget, "explored-node limit");
  machine_flag(certify_cmd);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "run placement, delivery and decoding");
  one_input(simulate_cmd);
  simulate_cmd->add_option("--files", files, "library size N (default K)");
  simulate_cmd->add_option("--packet-bytes", packet_bytes, "bytes per packet")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--demands", demands, "'all' or a sample count");
  simulate_cmd->add_option("--seed", seed, "seed for file contents and demand sampling");
  machine_flag(simulate_cmd);

  CLI::App* print_cmd = app.add_subcommand("print", "parameters, rate and memory of an array");
  one_input(print_cmd);
  machine_flag(print_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto parsed = app.get_subcommands();
    err << (parsed.empty() ? app.help() : parsed.front()->help());
    return 2;
  }

  detail::Inputs inputs(in);
  try {
    if (construct->parsed()) {
      if (family == "list") {
        for (const auto& f : families()) {
          std::string keys;
          for (const auto& key : f.keys) keys += (keys.empty() ? "" : ",") + key;
          if (machine)
            out << "family=" << f.id << " keys=" << keys << " params=" << f.params << " provenance=" << f.provenance
                << "\n";
          else
            out << f.id << "\n  keys: " << (keys.empty() ? "-" : keys) << "\n  (K,F,Z,S): " << f.params << "\n  "
                << f.provenance << "\n";
        }
        return 0;
      }
      FamilySpec spec{family, {}};
      const std::pair<const char*, const std::optional<std::int64_t>*> flags[] = {
          {"k", &k}, {"t", &t}, {"m", &m}, {"kappa", &kappa}, {"n", &n}, {"K", &big_k}, {"F", &big_f}};
      for (const auto& [key, v] : flags)
        if (*v) spec.bind[key] = **v;
      if (const FamilyInfo* info = find_family(family))
        spec.id = info->id;
      else
        throw PreconditionError("unknown family '" + family + "' (see 'construct list')");
      const Pda p = build(spec);
      const Params claimed = claimed_params(spec);
      if (p.params() != claimed)
        throw VerificationError(spec.str() + " built " + detail::params_str(p.params()) + " but claims " +
                                detail::params_str(claimed));
      out << serialize(p);
      return 0;
    }

    if (verify_cmd->parsed()) {
      const RawPda raw = inputs.raw(input);
      const VerificationReport report = verify(raw.grid, {all_pairs, true, true});
      std::optional<std::string> header_problem;
      if (report.valid()) {
        const Pda p = Pda::from_grid(raw.grid);
        if (p.params() != raw.header)
          header_problem = "header declares " + detail::params_str(raw.header) + " but the array has " +
                           detail::params_str(p.params());
        else if (machine)
          out << "valid=true\nK=" << p.k() << "\nF=" << p.f() << "\nZ=" << p.z() << "\nS=" << p.s() << "\n";
        else
          out << "valid " << detail::params_str(p.params()) << "\n";
        if (!header_problem) return 0;
      }
      const std::size_t count = report.violations.size() + (header_problem ? 1 : 0);
      if (machine) {
        out << "valid=false\nviolations=" << count << "\n";
        for (const auto& v : report.violations)
          out << "violation=" << to_string(v.rule) << " cells=" << detail::cells_str(v.cells) << "\n";
        if (header_problem) out << "violation=header\n";
      } else {
        out << "invalid: " << count << (count == 1 ? " violation" : " violations") << "\n";
        for (const auto& v : report.violations)
          out << "  " << to_string(v.rule) << " at " << detail::cells_str(v.cells) << ": " << v.message << "\n";
        if (header_problem) out << "  header: " << *header_problem << "\n";
      }
      return 1;
    }

    if (transpose_cmd->parsed()) {
      out << serialize(transpose(inputs.pda(input)));
      return 0;
    }

    if (concat_cmd->parsed() || blockdiag_cmd->parsed()) {
      std::vector<Pda> parts;
      for (const auto& path : input_list) parts.push_back(inputs.pda(path));
      out << serialize(concat_cmd->parsed() ? hconcat(parts) : block_diagonal(parts));
      return 0;
    }

    if (delete_cmd->parsed()) {
      const Pda p = inputs.pda(input);
      if (kappa && !columns.empty()) throw PreconditionError("give column indices or --kappa, not both");
      if (kappa) {
        if (*kappa < 0) throw PreconditionError("--kappa must be nonnegative");
        out << serialize(delete_last_columns(p, static_cast<std::size_t>(*kappa)));
      } else {
        out << serialize(delete_columns(p, std::set<std::size_t>(columns.begin(), columns.end())));
      }
      return 0;
    }

    if (bound_cmd->parsed()) {
      const BoundReport b = best_lower_bound(*big_k, *big_f, *big_z);
      if (machine) {
        out << "lower=" << b.value << "\nsource=" << to_string(b.source) << "\nterms=" << detail::join(b.terms)
            << "\n";
        for (const auto& step : b.chain) out << "chain=" << step << "\n";
      } else {
        out << "lower=" << b.value << " source=" << to_string(b.source) << "\n";
        for (const auto& step : b.chain) out << "  " << step << "\n";
      }
      return 0;
    }

    if (search_cmd->parsed()) {
      if (big_s && max_s) throw PreconditionError("--S and --max-s are exclusive");
      if (big_s) {
        const SearchResult r = exists_pda({*big_k, *big_f, *big_z, *big_s, node_budget, true});
        if (machine)
          out << "status=" << to_string(r.status) << "\nnodes=" << r.nodes << "\n";
        else
          out << to_string(r.status) << " (" << *big_k << "," << *big_f << "," << *big_z << "," << *big_s
              << ") nodes=" << r.nodes << "\n";
        if (r.witness) out << serialize(*r.witness);
        return r.status == SearchStatus::budget_exceeded ? 1 : 0;
      }
      MinSearchOptions opts;
      opts.node_budget = node_budget;
      opts.max_s = max_s;
      const MinSearchResult r = exhaustive_min_s(*big_k, *big_f, *big_z, opts);
      if (machine) {
        out << "decided=" << (r.decided ? "true" : "false") << "\n";
        if (r.decided) out << "min_s=" << r.s << "\n";
        out << "lower=" << r.lower << "\nupper=" << r.upper << "\nnodes=" << r.nodes << "\n";
      } else if (r.decided) {
        out << "min-s=" << r.s << " nodes=" << r.nodes << "\n";
      } else {
        out << "undecided lower=" << r.lower << " upper=" << r.upper << " nodes=" << r.nodes << "\n";
      }
      if (r.witness) out << serialize(*r.witness);
      return r.decided ? 0 : 1;
    }

    if (certify_cmd->parsed()) {
      const Pda p = inputs.pda(input);
      CertifyOptions opts;
      if (node_budget) opts.node_budget = node_budget;
      const Certificate c = certify_optimal(p, opts);
      const char* verdict = c.optimal() ? "optimal" : c.kind == CertificateKind::improvable ? "not-optimal" : "unknown";
      std::optional<std::string> written;
      if (c.witness && !witness_path.empty()) {
        std::ofstream f(witness_path);
        if (!f) throw PreconditionError("cannot write '" + witness_path + "'");
        f << serialize(*c.witness);
        written = witness_path;
      }
      if (machine) {
        out << "status=" << verdict << "\nkind=" << to_string(c.kind) << "\nlower=" << c.lower.value
            << "\nsource=" << to_string(c.lower.source) << "\nachieved=" << c.achieved << "\nnodes=" << c.nodes
            << "\n";
        for (const auto& step : c.lower.chain) out << "chain=" << step << "\n";
        if (written) out << "witness=" << *written << "\n";
      } else {
        out << verdict << " kind=" << to_string(c.kind) << " lower=" << c.lower.value << " achieved=" << c.achieved
            << "\n";
        out << "  bound source: " << to_string(c.lower.source) << "\n";
        for (const auto& step : c.lower.chain) out << "  " << step << "\n";
        if (c.kind == CertificateKind::search_exhaustive || c.kind == CertificateKind::improvable)
          out << "  search nodes: " << c.nodes << "\n";
        if (written) out << "  witness: " << *written << "\n";
        else if (c.witness) out << "  a " << detail::params_str(c.witness->params()) << " array exists\n";
      }
      return c.optimal() ? 0 : 1;
    }

    if (simulate_cmd->parsed()) {
      const Pda p = inputs.pda(input);
      DemandMode mode;
      if (demands != "all") {
        std::int64_t count = 0;
        if (!pda::detail::parse_uint(demands, count) || count < 1)
          throw PreconditionError("--demands takes 'all' or a positive count");
        mode = DemandMode::sample(count, seed);
      }
      const SimReport r = simulate(p, files > 0 ? files : p.k(), mode, packet_bytes, seed);
      if (machine) {
        out << r.to_text();
      } else {
        out << "(K,F,Z,S)=(" << p.k() << "," << p.f() << "," << p.z() << "," << p.s() << ") files=" << r.num_files
            << " demands=" << r.demand_mode << "\n";
        out << "decoded " << r.decode_successes << "/" << r.demands_run << " demand vectors\n";
        out << "load " << r.load_packets << " packets per delivery, uncoded baseline " << r.baseline_packets
            << ", rate " << r.rate.str() << "\n";
        if (!r.first_failure.empty()) out << "first failure: " << r.first_failure << "\n";
      }
      return r.all_decoded() ? 0 : 1;
    }

    if (print_cmd->parsed()) {
      const Pda p = inputs.pda(input);
      const RateMemory rm = rate_and_memory(p);
      if (machine) {
        out << "K=" << p.k() << "\nF=" << p.f() << "\nZ=" << p.z() << "\nS=" << p.s()
            << "\nmemory_ratio=" << rm.memory_ratio.str() << "\nrate=" << rm.rate.str() << "\n";
      } else {
        out << "(K,F,Z,S) = (" << p.k() << "," << p.f() << "," << p.z() << "," << p.s() << ")\n";
        out << "M/N = " << rm.memory_ratio.str() << ", R = " << rm.rate.str() << "\n";
        out << format_rows(p.grid());
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace pda::cli
