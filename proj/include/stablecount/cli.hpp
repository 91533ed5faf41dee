// Copyright 2026 The stablecount Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it with string streams.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stablecount/attribute_models.hpp"
#include "stablecount/core_types.hpp"
#include "stablecount/counting.hpp"
#include "stablecount/error.hpp"
#include "stablecount/gale_shapley.hpp"
#include "stablecount/reductions.hpp"
#include "stablecount/rotations.hpp"

namespace stablecount::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kUsageError = 2, kVerifyFailed = 3 };

/// Kind of text input, from its first token.
enum class InputKind { Instance, Spec, Graph, Unknown };

inline InputKind detect_kind(const std::string& content) {
  std::istringstream in(content);
  std::string raw;
  while (std::getline(in, raw)) {
    const auto toks = text::tokens(text::strip_comment(raw));
    if (toks.empty()) continue;
    if (toks[0] == "n") return InputKind::Instance;
    if (toks[0] == "model") return InputKind::Spec;
    if (toks[0] == "bis") return InputKind::Graph;
    return InputKind::Unknown;
  }
  return InputKind::Unknown;
}

/// Precision cap from STABLECOUNT_MAX_BITS, if set.
inline CertifyOptions certify_options_from_env() {
  CertifyOptions opt;
  if (const char* v = std::getenv("STABLECOUNT_MAX_BITS")) {
    auto bits = text::parse_int(v);
    if (!bits || *bits < static_cast<int>(opt.start_bits)) {
      throw InvalidInput(std::string("STABLECOUNT_MAX_BITS must be an integer >= ") +
                         std::to_string(opt.start_bits));
    }
    opt.max_bits = *bits;
  }
  return opt;
}

namespace detail {

struct Options {
  std::string input = "-";
  std::string side = "men";
  std::string model = "lists";
  std::string tau;
  bool dot = false;
  std::size_t limit = 1000;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot read '" + path + "'");
    buf << f.rdbuf();
  }
  return buf.str();
}

inline ReductionModel model_of(const std::string& s) {
  auto m = parse_reduction_model(s);
  if (!m) throw InvalidInput("unknown model '" + s + "'");
  return *m;
}

// Instance from an instance file, a geometric spec, or a graph (through the
// chosen reduction).
inline Instance load_instance(const std::string& content, const Options& o) {
  switch (detect_kind(content)) {
    case InputKind::Instance:
      return parse_instance(content);
    case InputKind::Spec: {
      auto spec = parse_geometric_spec(content);
      return instance_from_spec(spec, certify_options_from_env());
    }
    case InputKind::Graph: {
      auto g = parse_bipartite_graph(content);
      if (!o.tau.empty()) {
        if (model_of(o.model) != ReductionModel::Lists) {
          throw InvalidInput("--tau applies to --model lists only");
        }
        return gen_partial_lists(g, parse_permutation(o.tau));
      }
      return reduction_instance(g, model_of(o.model), {},
                                certify_options_from_env());
    }
    case InputKind::Unknown:
      break;
  }
  throw ParseError(1, "unrecognised input: expected 'n', 'model' or 'bis' header");
}

inline std::string verify_one(const std::string& content, ReductionModel model,
                              bool& ok) {
  std::ostringstream out;
  try {
    const auto g = parse_bipartite_graph(content);
    const auto report = verify_reduction(g, model, {}, certify_options_from_env());
    write_report(out, report);
    ok = report.all_ok();
  } catch (const Error& e) {
    out << "error: " << e.what() << '\n';
    ok = false;
  }
  return out.str();
}

// Every *.bis file in `dir`, by name, checked by a pool of workers.
inline int verify_directory(const std::filesystem::path& dir,
                            ReductionModel model, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".bis") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> reports(files.size());
  std::vector<char> passed(files.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::ifstream f(files[i]);
      std::ostringstream buf;
      buf << f.rdbuf();
      bool ok = false;
      reports[i] = verify_one(buf.str(), model, ok);
      passed[i] = ok;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(
      std::thread::hardware_concurrency(), static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  int failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    out << "== " << files[i].filename().string() << '\n' << reports[i];
    failed += !passed[i];
  }
  out << "files: " << files.size() << "  failed: " << failed << '\n';
  return failed ? kVerifyFailed : kOk;
}

}  // namespace detail

/// Runs one subcommand. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in,
               std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable matching counting and #BIS reductions", "stablecount"};
  app.require_subcommand(1, 1);
  detail::Options o;

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "input file, or - for standard input")
        ->required();
  };
  auto* solve = app.add_subcommand("solve", "proposer-optimal stable matching");
  solve->add_option("--side", o.side, "proposing side")
      ->check(CLI::IsMember({"men", "women"}));
  auto* blocking = app.add_subcommand(
      "blocking", "blocking pairs of the 'pair' lines that follow an instance");
  auto* rotations = app.add_subcommand("rotations", "all rotations, in discovery order");
  auto* poset = app.add_subcommand("poset", "rotation poset (cover relation)");
  poset->add_flag("--dot", o.dot, "Graphviz output");
  auto* count = app.add_subcommand("count", "number of stable matchings");
  auto* enumerate = app.add_subcommand("enumerate", "list stable matchings");
  enumerate->add_option("--limit", o.limit, "print at most this many");
  auto* count1d = app.add_subcommand(
      "count-1d", "stable matchings of a 'model dot 1 <n>' spec");
  auto* isets = app.add_subcommand("isets", "independent sets of a bipartite graph");
  auto* gen = app.add_subcommand("gen", "stable matching instance or spec for a graph");
  auto* verify = app.add_subcommand(
      "verify", "check the reduction on a graph file or a directory of them");
  for (auto* sub : {solve, blocking, rotations, poset, count, enumerate, count1d,
                    isets, gen, verify}) {
    input(sub);
  }
  for (auto* sub : {rotations, poset, count, enumerate, gen, verify}) {
    sub->add_option("--model", o.model, "reduction route for graph input")
        ->check(CLI::IsMember({"lists", "attr3", "euclid2"}));
  }
  for (auto* sub : {rotations, poset, count, enumerate, gen}) {
    sub->add_option("--tau", o.tau, "b-block order for --model lists, e.g. 3,1,2");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (verify->parsed() && o.input != "-" &&
        std::filesystem::is_directory(o.input)) {
      return detail::verify_directory(o.input, detail::model_of(o.model), out);
    }
    const std::string content = detail::read_input(o.input, in);

    if (solve->parsed()) {
      const Instance inst = detail::load_instance(content, o);
      write_matching(out, propose_optimal(inst, o.side == "men"
                                                    ? Side::MenPropose
                                                    : Side::WomenPropose));
    } else if (blocking->parsed()) {
      const Instance inst = parse_instance(content);
      std::istringstream pairs(content);
      const auto m = parse_matching(pairs, inst.size());
      if (!m) throw InvalidInput("no 'pair' lines after the instance");
      const auto bp = blocking_pairs(inst, *m);
      for (auto [man, woman] : bp) out << "blocking " << man << ' ' << woman << '\n';
      out << "total " << bp.size() << '\n';
    } else if (rotations->parsed()) {
      write_rotations(out, find_all_rotations(detail::load_instance(content, o),
                                              {}, false).rotations);
    } else if (poset->parsed()) {
      const RotationPoset p = rotation_poset(detail::load_instance(content, o));
      if (o.dot) {
        write_dot(out, p);
      } else {
        write_rotations(out, p.rotations);
        for (auto [a, b] : hasse_diagram(p)) {
          out << "cover " << a + 1 << ' ' << b + 1 << '\n';
        }
      }
    } else if (count->parsed()) {
      out << count_stable_matchings(detail::load_instance(content, o)).get_str()
          << '\n';
    } else if (enumerate->parsed()) {
      std::size_t shown = 0;
      const Count total = for_each_stable_matching(
          detail::load_instance(content, o), [&](const Matching& m) {
            if (shown == o.limit) return false;
            out << "matching " << ++shown << '\n';
            write_matching(out, m);
            return true;
          });
      out << "total " << total.get_str() << '\n';
    } else if (count1d->parsed()) {
      if (detect_kind(content) != InputKind::Spec) {
        throw InvalidInput("count-1d expects a 'model dot 1 <n>' spec");
      }
      out << count_1attribute(one_attribute_from_spec(parse_geometric_spec(content)))
                 .get_str()
          << '\n';
    } else if (isets->parsed()) {
      out << count_independent_sets(parse_bipartite_graph(content)).get_str()
          << '\n';
    } else if (gen->parsed()) {
      const auto g = parse_bipartite_graph(content);
      const ReductionModel model = detail::model_of(o.model);
      if (!o.tau.empty() && model != ReductionModel::Lists) {
        throw InvalidInput("--tau applies to --model lists only");
      }
      switch (model) {
        case ReductionModel::Lists:
          write_instance(out, o.tau.empty()
                                  ? gen_partial_lists(g)
                                  : gen_partial_lists(g, parse_permutation(o.tau)));
          break;
        case ReductionModel::Attr3:
          write_geometric_spec(out, gen_3attribute(g));
          break;
        case ReductionModel::Euclid2:
          write_geometric_spec(out, gen_2euclidean(g));
          break;
      }
    } else if (verify->parsed()) {
      bool ok = false;
      out << detail::verify_one(content, detail::model_of(o.model), ok);
      return ok ? kOk : kVerifyFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kOk;
}

}  // namespace stablecount::cli
