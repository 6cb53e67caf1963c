// dcm: exact computations with CM types of dihedral type.
//
// Subcommands map onto the library one-to-one: classify (type orbits),
// decompose (A_S^0 in irreducible coordinates), ledger (Z-ledger of A_S^0
// against the closed theorem forms), reflex (type stabilizer), average
// (fixed-size averages), verify (the named check suite), atoms (Z-atom and
// alias glossary). All arithmetic is exact; JSON output is byte-stable for
// fixed inputs. Exit codes: 0 ok, 1 verification failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dcm/dcm.hpp"

namespace {

using dcm::ojson;

unsigned default_workers() {
  if (const char* env = std::getenv("DCM_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
  }
  return 1;
}

std::string join_labels(const dcm::FiniteGroup& G, const std::vector<dcm::gidx>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += G.label(v[i]);
  }
  return out;
}

void table_ledger(const std::string& head, const dcm::ZLedger& l) {
  std::cout << head << "\n";
  if (l.coeff.empty()) {
    std::cout << "  (empty)\n";
    return;
  }
  for (const auto& [atom, c] : l.coeff)
    std::cout << "  " << std::left << std::setw(14) << atom.str() << " " << c.str() << "\n";
}

void table_classfn(const dcm::FiniteGroup& G, const dcm::ClassFunction& f) {
  std::cout << "  " << std::left << std::setw(12) << "class" << std::setw(6) << "size"
            << "value\n";
  for (unsigned c = 0; c < G.num_classes(); ++c)
    std::cout << "  " << std::left << std::setw(12) << G.label(G.class_rep(c))
              << std::setw(6) << G.class_size(c) << f.val[c].str() << "\n";
}

struct Output {
  std::string command;
  ojson params = ojson::object();
  ojson result;
  ojson verdicts;  // null unless used
  bool has_verdicts = false;
};

void emit_json(const Output& o, bool timing, long long wall_ms) {
  ojson doc;
  doc["command"] = o.command;
  doc["params"] = o.params;
  doc["result"] = o.result;
  if (o.has_verdicts) doc["verdicts"] = o.verdicts;
  if (timing) doc["wall_ms"] = wall_ms;
  std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact class functions and L-function ledgers for dihedral CM types"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  bool timing = false;
  unsigned workers = default_workers();
  std::uint64_t seed = 0;
  app.add_option("--format", format, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--timing", timing, "include wall-clock milliseconds in JSON output");
  app.add_option("--parallel", workers, "worker threads for subset sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for sampled sweeps (n > 10)");

  unsigned n = 0, r = 0;
  std::string set_str, suite = "all";

  auto add_n = [&](CLI::App* sc) {
    sc->add_option("--n", n, "order of the rotation subgroup (3..200)")
        ->required()
        ->check(CLI::Range(3u, 200u));
  };

  CLI::App* cmd_classify = app.add_subcommand("classify", "orbits of CM types under G^c");
  add_n(cmd_classify);
  cmd_classify->add_option("--r", r, "size of the defining subset")->required();

  CLI::App* cmd_decompose =
      app.add_subcommand("decompose", "A_S^0 in irreducible coordinates");
  add_n(cmd_decompose);
  cmd_decompose->add_option("--set", set_str, "subset of 0..n-1, comma separated")
      ->required();

  CLI::App* cmd_ledger =
      app.add_subcommand("ledger", "Z-ledger of A_S^0 against the theorem forms");
  add_n(cmd_ledger);
  cmd_ledger->add_option("--set", set_str, "subset of 0..n-1, comma separated")->required();

  CLI::App* cmd_reflex =
      app.add_subcommand("reflex", "stabilizer of a CM type, with the subgroup case");
  add_n(cmd_reflex);
  cmd_reflex->add_option("--set", set_str, "subset of 0..n-1, comma separated")->required();

  CLI::App* cmd_average = app.add_subcommand("average", "average of A_S^0 over |S| = r");
  add_n(cmd_average);
  cmd_average->add_option("--r", r, "subset size (1..n)")->required();

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the verification suite");
  add_n(cmd_verify);
  cmd_verify->add_option("--suite", suite, "all, or comma-separated check names");

  CLI::App* cmd_atoms = app.add_subcommand("atoms", "Z-atoms and alias expansions");
  add_n(cmd_atoms);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  int rc = 0;
  Output out;
  bool table = (format == "table");

  try {
    if (*cmd_classify) {
      out.command = "classify";
      if (r > n) throw std::invalid_argument("--r must be at most n");
      auto ctx = dcm::build_dihedral_cm(n);
      auto rep = dcm::orbit_classify(ctx, r);
      out.params["n"] = n;
      out.params["r"] = r;
      out.result = dcm::json_orbit_report(rep);
      if (table) {
        std::cout << "classify n=" << n << " r=" << r << ": " << rep.orbits.size()
                  << " orbit(s)\n";
        std::cout << "  " << std::left << std::setw(20) << "rep" << std::setw(8) << "size";
        if (2 * r == n) std::cout << "rho_glued";
        std::cout << "\n";
        for (const auto& o : rep.orbits) {
          std::cout << "  " << std::left << std::setw(20) << dcm::subset_str(o.rep)
                    << std::setw(8) << o.size;
          if (2 * r == n) std::cout << (o.rho_glued ? "yes" : "no");
          std::cout << "\n";
        }
      }
    } else if (*cmd_decompose) {
      out.command = "decompose";
      auto ctx = dcm::build_dihedral_cm(n);
      dcm::Subset S = dcm::parse_subset(n, set_str);
      auto a0 = dcm::a_s0_oracle(ctx, S);
      auto coords = dcm::decompose(ctx, a0);
      auto cnt = dcm::a_counts(n, S);
      out.params["n"] = n;
      out.params["set"] = dcm::subset_str(S);
      out.result["counts"] = dcm::json_counts(cnt);
      out.result["is_H00"] = dcm::is_H00(ctx, a0);
      out.result["class_function"] = dcm::json_classfn(ctx.Gc, a0);
      out.result["decomposition"] = dcm::json_decomposition(coords);
      if (table) {
        std::cout << "A_S^0 for n=" << n << " S={" << dcm::subset_str(S) << "}\n";
        table_classfn(ctx.Gc, a0);
        std::cout << "decomposition:\n";
        for (const auto& [name, c] : coords)
          std::cout << "  " << std::left << std::setw(14) << name << " " << c.str() << "\n";
      }
    } else if (*cmd_ledger) {
      out.command = "ledger";
      auto ctx = dcm::build_dihedral_cm(n);
      dcm::Subset S = dcm::parse_subset(n, set_str);
      dcm::ZVerdict v = dcm::verify_z_theorem(ctx, S);
      out.params["n"] = n;
      out.params["set"] = dcm::subset_str(S);
      out.result = dcm::json_zverdict(v);
      if (!v.certified_pass) rc = 1;
      if (table) {
        table_ledger("oracle:", v.oracle);
        table_ledger(std::string("published (") + (v.published_pass ? "pass" : "FAIL") + "):",
                     v.published);
        table_ledger(std::string("certified (") + (v.certified_pass ? "pass" : "FAIL") + "):",
                     v.certified);
        if (!v.published_pass)
          table_ledger("delta published - oracle:", v.delta_published);
      }
    } else if (*cmd_reflex) {
      out.command = "reflex";
      auto ctx = dcm::build_dihedral_cm(n);
      dcm::Subset S = dcm::parse_subset(n, set_str);
      auto stab = dcm::reflex_stabilizer(ctx, S);
      out.params["n"] = n;
      out.params["set"] = dcm::subset_str(S);
      out.result = dcm::json_stabilizer(ctx.Gc, stab);
      bool has_prop = (S.size() == 2 && S[0] == 0);
      if (has_prop) {
        auto prop = dcm::reflex_proposition_case(ctx, S[1]);
        bool match = (prop.subgroup == stab.elements);
        bool proper = !match;
        if (proper)
          for (dcm::gidx g : prop.subgroup)
            if (!std::binary_search(stab.elements.begin(), stab.elements.end(), g)) {
              proper = false;
              break;
            }
        ojson p;
        p["case"] = prop.case_id;
        p["order"] = prop.subgroup.size();
        ojson gens = ojson::array();
        for (dcm::gidx g : prop.subgroup) gens.push_back(ctx.Gc.label(g));
        p["elements"] = std::move(gens);
        p["matches_stabilizer"] = match;
        if (!match) p["proper_subgroup_of_stabilizer"] = proper;
        out.result["proposition"] = std::move(p);
      }
      if (table) {
        std::cout << "stabilizer of S={" << dcm::subset_str(S) << "} in G^c, n=" << n << "\n";
        std::cout << "  order: " << stab.order << "\n";
        std::cout << "  generators: " << join_labels(ctx.Gc, stab.generators) << "\n";
        std::cout << "  elements: " << join_labels(ctx.Gc, stab.elements) << "\n";
        if (has_prop && out.result.contains("proposition")) {
          const auto& p = out.result["proposition"];
          std::cout << "  proposition case " << p["case"] << ": order " << p["order"]
                    << (p["matches_stabilizer"].get<bool>() ? " (matches stabilizer)"
                                                            : " (proper subgroup)")
                    << "\n";
        }
      }
    } else if (*cmd_average) {
      out.command = "average";
      if (r < 1 || r > n) throw std::invalid_argument("--r must lie in 1..n");
      auto ctx = dcm::build_dihedral_cm(n);
      auto oracle = dcm::average_a0(ctx, r, dcm::AverageMode::oracle);
      auto closed = dcm::average_a0(ctx, r, dcm::AverageMode::closed);
      bool match = (oracle == closed);
      out.params["n"] = n;
      out.params["r"] = r;
      out.result["match"] = match;
      out.result["average"] = dcm::json_classfn(ctx.Gc, closed);
      if (!match) {
        out.result["oracle"] = dcm::json_classfn(ctx.Gc, oracle);
        rc = 1;
      }
      if (table) {
        std::cout << "average of A_S^0 over |S|=" << r << ", n=" << n
                  << (match ? " (oracle agrees)" : " (ORACLE MISMATCH)") << "\n";
        table_classfn(ctx.Gc, closed);
      }
    } else if (*cmd_verify) {
      out.command = "verify";
      auto ctx = dcm::build_dihedral_cm(n);
      auto checks = dcm::run_verify_suite(ctx, suite, seed, workers);
      if (checks.empty()) throw std::invalid_argument("--suite matched no checks");
      unsigned failures = 0;
      ojson verd = ojson::array();
      for (const auto& c : checks) {
        if (!c.pass) ++failures;
        ojson row;
        row["name"] = c.name;
        row["pass"] = c.pass;
        row["detail"] = c.detail;
        verd.push_back(std::move(row));
      }
      out.params["n"] = n;
      out.params["suite"] = suite;
      out.params["seed"] = seed;
      out.result["checks"] = checks.size();
      out.result["failures"] = failures;
      out.result["all_pass"] = (failures == 0);
      out.verdicts = std::move(verd);
      out.has_verdicts = true;
      if (failures != 0) rc = 1;
      if (table) {
        for (const auto& c : checks)
          std::cout << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.name
                    << " " << c.detail << "\n";
        std::cout << (failures == 0 ? "all checks passed" : "FAILURES: ")
                  << (failures == 0 ? "" : std::to_string(failures)) << "\n";
      }
    } else if (*cmd_atoms) {
      out.command = "atoms";
      auto ctx = dcm::build_dihedral_cm(n);
      out.params["n"] = n;
      ojson names = ojson::array();
      for (const auto& c : dcm::gc_char_table(ctx)) names.push_back(c.name);
      out.result["atoms"] = std::move(names);
      ojson aliases = ojson::object();
      auto tablev = dcm::alias_table(ctx);
      for (const auto& [name, l] : tablev) aliases[name] = dcm::json_ledger(l);
      out.result["aliases"] = std::move(aliases);
      if (table) {
        std::cout << "atoms (irreducible characters of G^c), n=" << n << ":\n";
        for (const auto& a : out.result["atoms"])
          std::cout << "  " << a.get<std::string>() << "\n";
        for (const auto& [name, l] : tablev) table_ledger(name + ":", l);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  if (!table) {
    emit_json(out, timing, wall_ms);
  } else {
    std::cout << "elapsed_ms: " << wall_ms << "\n";
  }
  return rc;
}
