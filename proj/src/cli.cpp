#include "qgrass/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qgrass/cache.hpp"
#include "qgrass/verify.hpp"

namespace qgrass::cli {

namespace {

using nlohmann::ordered_json;

void require_prime_power(long q) {
  if (!Field::is_prime_power(q))
    throw CLI::ValidationError("q", std::to_string(q) + " is not a prime power");
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("QGRASS_CACHE_DIR")) return env;
  return ".qgrass-cache";
}

void emit(std::ostream& out, bool json, const ordered_json& doc, const std::string& human) {
  if (json)
    out << doc.dump() << "\n";
  else
    out << human;
}

std::string family_text(const Family& fam) {
  std::ostringstream os;
  fam.write(os);
  return os.str();
}

void write_family_files(const std::string& parent, const std::string& dirname,
                        const std::vector<Family>& fams) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(parent) / dirname;
  fs::create_directories(dir);
  for (std::size_t i = 0; i < fams.size(); ++i) {
    std::ostringstream name;
    name << "max-" << std::setw(4) << std::setfill('0') << i + 1 << ".family";
    std::ofstream out(dir / name.str());
    fams[i].write(out);
  }
}

Family read_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open family file " + path);
  return Family::read(in);
}

std::string param_dir(const std::string& prefix, const SearchProblem& pb) {
  std::ostringstream os;
  os << prefix << "-q" << pb.q << "-n" << pb.n << "-k" << pb.k << "-t" << pb.t;
  return os.str();
}

struct LemmaSummary {
  uint64_t checked = 0;
  uint64_t violations = 0;
  std::vector<CheckReport> violating;
};

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact arithmetic, constructions and exhaustive verdicts for almost "
               "t-intersecting families of subspaces over GF(q)"};
  app.require_subcommand(1);

  bool json = false;
  app.add_flag("--json", json, "machine-readable output (single JSON document on stdout)");
  std::string cache_dir = default_cache_dir();
  app.add_option("--cache-dir", cache_dir,
                 "cache directory for Grassmannians and conflict matrices (QGRASS_CACHE_DIR)");
  int threads = 0;
  app.add_option("--threads", threads, "worker cap for searches, 0 = available parallelism");

  // ---- formula commands
  long fn = 0, fk = 0, ft = 0, fx = 0, fq = 0, fa = 0, fb = 0, fbp = 0, fi = 0, fip = 0;
  CLI::App* qbinom = app.add_subcommand("qbinom", "Gaussian binomial [n k]_q");
  qbinom->add_option("n", fn)->required();
  qbinom->add_option("k", fk)->required();
  qbinom->add_option("q", fq)->required();

  CLI::App* fval = app.add_subcommand("fval", "f(n,k,t,x) over GF(q)");
  CLI::App* gval = app.add_subcommand("gval", "g(n,k,t,x) over GF(q)");
  for (CLI::App* cmd : {fval, gval}) {
    cmd->add_option("n", fn)->required();
    cmd->add_option("k", fk)->required();
    cmd->add_option("t", ft)->required();
    cmd->add_option("x", fx)->required();
    cmd->add_option("q", fq)->required();
  }
  CLI::App* hval = app.add_subcommand("hval", "h(n,k,t) over GF(q)");
  hval->add_option("n", fn)->required();
  hval->add_option("k", fk)->required();
  hval->add_option("t", ft)->required();
  hval->add_option("q", fq)->required();

  CLI::App* count = app.add_subcommand("count", "profile count q^{(a-i)((b-i)-(b'-i'))}[..][..]");
  count->add_option("n", fn)->required();
  count->add_option("a", fa)->required();
  count->add_option("b", fb)->required();
  count->add_option("bp", fbp)->required();
  count->add_option("i", fi)->required();
  count->add_option("ip", fip)->required();
  count->add_option("q", fq)->required();

  // ---- subspace commands
  CLI::App* enumerate = app.add_subcommand("enumerate", "all k-subspaces of GF(q)^n");
  enumerate->add_option("n", fn)->required();
  enumerate->add_option("k", fk)->required();
  enumerate->add_option("q", fq)->required();

  std::string form;
  CLI::App* construct = app.add_subcommand(
      "construct", "star|H|G with canonical witnesses: star/H take q n k t, G takes q n t");
  construct->add_option("form", form)->required()->check(CLI::IsMember({"star", "H", "G"}));
  std::vector<long> cparams;
  construct->add_option("params", cparams, "q n k t (star, H) or q n t (G)")->expected(3, 4);

  std::string file;
  CLI::App* checkfam = app.add_subcommand("check-family", "classify a family file");
  checkfam->add_option("file", file)->required();
  checkfam->add_option("t", ft)->required();

  CLI::App* taucmd = app.add_subcommand("tau", "t-covering number of a family file");
  taucmd->add_option("file", file)->required();
  taucmd->add_option("t", ft)->required();

  // ---- search & verify
  std::string mode_str, anchor_str = "none", out_dir = ".", grid_spec = "all", which;
  uint64_t budget_nodes = SearchLimits{}.max_nodes;
  double budget_seconds = SearchLimits{}.max_seconds;
  std::size_t max_vertices = SearchLimits{}.max_vertices;
  CLI::App* search = app.add_subcommand(
      "search", "exact optimum: intersecting | almost | almost-not-intersecting");
  search->add_option("mode", mode_str)->required();
  search->add_option("q", fq)->required();
  search->add_option("n", fn)->required();
  search->add_option("k", fk)->required();
  search->add_option("t", ft)->required();
  search->add_option("--anchor", anchor_str, "none | badpair")
      ->check(CLI::IsMember({"none", "badpair"}));
  search->add_option("--out-dir", out_dir, "parent directory for maximum-family files");
  search->add_option("--nodes", budget_nodes, "node budget");
  search->add_option("--seconds", budget_seconds, "wall-clock budget");
  search->add_option("--max-vertices", max_vertices, "adjacency guard");

  std::string report_file;
  CLI::App* lemmas = app.add_subcommand("verify-lemmas",
                                        "inequality grids; spec = all or comma list of "
                                        "L21i,L21ii,L21iii,L21iv,L22i,L22ii,L23,L24,L26");
  lemmas->add_option("spec", grid_spec);
  std::vector<long> grid_qs = {2, 3, 4, 5};
  long grid_nmax = 40, grid_tmax = 4;
  lemmas->add_option("--qs", grid_qs, "field orders");
  lemmas->add_option("--n-max", grid_nmax);
  lemmas->add_option("--t-max", grid_tmax);
  lemmas->add_option("--report-file", report_file, "write every CheckReport as JSONL here");

  bool advisory = false;
  CLI::App* verify = app.add_subcommand("verify-theorem", "main | nontrivial at (q,n,k,t)");
  verify->add_option("which", which)->required()->check(CLI::IsMember({"main", "nontrivial"}));
  verify->add_option("q", fq)->required();
  verify->add_option("n", fn)->required();
  verify->add_option("k", fk)->required();
  verify->add_option("t", ft)->required();
  verify->add_flag("--advisory", advisory, "run even when the hypotheses fail, flagged");
  verify->add_option("--out-dir", out_dir, "parent directory for maximum-family files");
  verify->add_option("--nodes", budget_nodes, "node budget");
  verify->add_option("--seconds", budget_seconds, "wall-clock budget");
  verify->add_option("--max-vertices", max_vertices, "adjacency guard");

  long trials = 10000;
  uint64_t seed = 0;
  CLI::App* rigid = app.add_subcommand("check-rigidity",
                                       "seeded random rigidity instances over GF(q)^n");
  CLI::App* modular = app.add_subcommand("check-modular",
                                         "seeded random modular-decomposition instances");
  for (CLI::App* cmd : {rigid, modular}) {
    cmd->add_option("q", fq)->required();
    cmd->add_option("n", fn)->required();
    cmd->add_option("--trials", trials);
    cmd->add_option("--seed", seed);
  }

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    std::vector<const char*> argv;
    argv.push_back("qgrass");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*qbinom || *fval || *gval || *hval || *count) {
      require_prime_power(fq);
      QInt v;
      std::string op;
      if (*qbinom) {
        v = gauss_binom(fn, fk, fq);
        op = "qbinom";
      } else if (*fval) {
        v = f_value(fn, fk, ft, fx, fq);
        op = "fval";
      } else if (*gval) {
        v = g_value(fn, fk, ft, fx, fq);
        op = "gval";
      } else if (*hval) {
        v = h_value(fn, fk, ft, fq);
        op = "hval";
      } else {
        v = profile_count(fn, fa, fb, fbp, fi, fip, fq);
        op = "count";
      }
      ordered_json doc{{"op", op}, {"value", v.str()}};
      emit(out, json, doc, v.str() + "\n");
      return 0;
    }

    if (*enumerate) {
      require_prime_power(fq);
      const Field& f = Field::of(static_cast<int>(fq));
      SubspaceStream stream =
          load_or_enumerate_grassmannian(cache_dir, f, static_cast<int>(fn), static_cast<int>(fk));
      if (json) {
        ordered_json doc;
        doc["op"] = "enumerate";
        doc["q"] = fq;
        doc["n"] = fn;
        doc["k"] = fk;
        doc["count"] = stream.size();
        auto arr = ordered_json::array();
        for (const Subspace& s : stream) arr.push_back(s.to_string());
        doc["subspaces"] = arr;
        out << doc.dump() << "\n";
      } else {
        out << "q=" << fq << " n=" << fn << " k=" << fk << "\n";
        for (const Subspace& s : stream) out << s.to_string() << "\n";
      }
      return 0;
    }

    if (*construct) {
      if (form == "G" ? cparams.size() != 3 : cparams.size() != 4)
        throw CLI::ValidationError("params", "star/H take q n k t, G takes q n t");
      require_prime_power(cparams[0]);
      const Field& f = Field::of(static_cast<int>(cparams[0]));
      int cn = static_cast<int>(cparams[1]);
      Family fam = [&]() {
        if (form == "star") {
          return build_star(canonical_star_center(f, cn, static_cast<int>(cparams[3])),
                            static_cast<int>(cparams[2]));
        } else if (form == "H") {
          HInputs hi = canonical_H_inputs(f, cn, static_cast<int>(cparams[2]),
                                          static_cast<int>(cparams[3]));
          return build_H(hi.u1, hi.u2, hi.e);
        }
        GInputs gi = canonical_G_inputs(f, cn, static_cast<int>(cparams[2]));
        return build_G(gi.u1, gi.u2, gi.u3, gi.u4);
      }();
      if (json) {
        ordered_json doc;
        doc["op"] = "construct";
        doc["form"] = form;
        doc["size"] = fam.size();
        auto arr = ordered_json::array();
        for (const Subspace& s : fam) arr.push_back(s.to_string());
        doc["members"] = arr;
        out << doc.dump() << "\n";
      } else {
        out << family_text(fam);
      }
      return 0;
    }

    if (*checkfam) {
      Family fam = read_family_file(file);
      auto [cm, fc] = classify(fam, static_cast<int>(ft));
      Recognition rec = recognize(fam, static_cast<int>(ft));
      if (json) {
        ordered_json doc;
        doc["op"] = "check-family";
        doc["size"] = fam.size();
        doc["t"] = ft;
        doc["verdict"] = verdict_name(fc.verdict);
        auto pairs = ordered_json::array();
        for (auto [i, j] : fc.bad_pairs) pairs.push_back({i, j});
        doc["bad_pairs"] = pairs;
        doc["max_conflict_degree"] = cm.max_degree;
        doc["recognition"] = rec.to_json();
        out << doc.dump() << "\n";
      } else {
        out << "members=" << fam.size() << " verdict=" << verdict_name(fc.verdict)
            << " bad_pairs=" << fc.bad_pairs.size() << " form=" << form_name(rec.tag) << "\n";
        for (auto [i, j] : fc.bad_pairs)
          out << "  bad pair: " << fam[i].to_string() << "  ~  " << fam[j].to_string() << "\n";
      }
      return 0;
    }

    if (*taucmd) {
      Family fam = read_family_file(file);
      TauResult tr = tau(fam, static_cast<int>(ft));
      if (json) {
        ordered_json doc;
        doc["op"] = "tau";
        doc["t"] = ft;
        doc["tau"] = tr.tau;
        auto arr = ordered_json::array();
        for (const Subspace& s : tr.min_covers) arr.push_back(s.to_string());
        doc["min_covers"] = arr;
        out << doc.dump() << "\n";
      } else {
        out << "tau=" << tr.tau << " min_covers=" << tr.min_covers.size() << "\n";
        for (const Subspace& s : tr.min_covers) out << "  " << s.to_string() << "\n";
      }
      return 0;
    }

    if (*search) {
      auto mode = mode_from_name(mode_str);
      if (!mode) throw CLI::ValidationError("mode", "unknown search mode " + mode_str);
      require_prime_power(fq);
      SearchProblem pb;
      pb.q = static_cast<int>(fq);
      pb.n = static_cast<int>(fn);
      pb.k = static_cast<int>(fk);
      pb.t = static_cast<int>(ft);
      pb.mode = *mode;
      pb.anchoring = anchor_str == "badpair" ? Anchoring::FixBadPair : Anchoring::None;
      pb.limits.max_nodes = budget_nodes;
      pb.limits.max_seconds = budget_seconds;
      pb.limits.max_vertices = max_vertices;
      pb.limits.threads = threads;
      pb.cache_dir = cache_dir;
      SearchResult res = solve(pb);
      write_family_files(out_dir, param_dir("search-" + mode_str, pb), res.maximum_families);
      ordered_json doc;
      doc["op"] = "search";
      doc["mode"] = mode_name(pb.mode);
      doc["params"] = {{"q", pb.q}, {"n", pb.n}, {"k", pb.k}, {"t", pb.t}};
      doc["anchoring"] = anchor_str;
      doc.update(res.to_json(true));
      std::ostringstream human;
      human << "optimum=" << res.optimum << " maxima=" << res.maximum_families.size()
            << " proof_complete=" << (res.proof_complete ? "true" : "false")
            << " nodes=" << res.nodes_expanded << "\n";
      emit(out, json, doc, human.str());
      return res.proof_complete ? 0 : 3;
    }

    if (*lemmas) {
      std::vector<LemmaId> ids;
      if (grid_spec == "all") {
        ids = {LemmaId::L21i, LemmaId::L21ii, LemmaId::L21iii, LemmaId::L21iv, LemmaId::L22i,
               LemmaId::L22ii, LemmaId::L23,  LemmaId::L24,    LemmaId::L26};
      } else {
        std::istringstream ss(grid_spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          auto id = lemma_from_name(tok);
          if (!id) throw CLI::ValidationError("spec", "unknown lemma id " + tok);
          ids.push_back(*id);
        }
      }
      LemmaGrid grid;
      grid.qs = grid_qs;
      grid.n_max = grid_nmax;
      grid.t_max = grid_tmax;
      std::ofstream report;
      if (!report_file.empty()) report.open(report_file);
      uint64_t total_viol = 0;
      ordered_json per_lemma = ordered_json::array();
      std::ostringstream human;
      for (LemmaId id : ids) {
        LemmaSummary sum;
        sweep_lemma(id, grid, [&](const CheckReport& r) {
          ++sum.checked;
          if (!r.holds) {
            ++sum.violations;
            if (sum.violating.size() < 32) sum.violating.push_back(r);
          }
          if (report.is_open()) report << r.to_json().dump() << "\n";
        });
        total_viol += sum.violations;
        ordered_json lj;
        lj["lemma"] = lemma_name(id);
        lj["checked"] = sum.checked;
        lj["violations"] = sum.violations;
        if (!sum.violating.empty()) {
          auto arr = ordered_json::array();
          for (const auto& r : sum.violating) arr.push_back(r.to_json());
          lj["violating"] = arr;
        }
        per_lemma.push_back(lj);
        human << lemma_name(id) << ": checked=" << sum.checked
              << " violations=" << sum.violations << "\n";
      }
      ordered_json doc;
      doc["op"] = "verify-lemmas";
      doc["lemmas"] = per_lemma;
      doc["total_violations"] = total_viol;
      emit(out, json, doc, human.str());
      return total_viol == 0 ? 0 : 1;
    }

    if (*verify) {
      require_prime_power(fq);
      SearchLimits limits;
      limits.max_nodes = budget_nodes;
      limits.max_seconds = budget_seconds;
      limits.max_vertices = max_vertices;
      limits.threads = threads;
      VerdictReport rep = which == "main"
                              ? verify_theorem_main(fq, fn, fk, ft, limits, cache_dir, advisory)
                              : verify_theorem_nontrivial(fq, fn, fk, ft, limits, cache_dir,
                                                          advisory);
      if (!rep.hypothesis_ok && !advisory) {
        err << "HypothesisViolation: " << rep.hypothesis_note << " (pass --advisory to run anyway)"
            << "\n";
        return 2;
      }
      if (rep.ran_search) {
        SearchProblem pb;
        pb.q = static_cast<int>(fq);
        pb.n = static_cast<int>(fn);
        pb.k = static_cast<int>(fk);
        pb.t = static_cast<int>(ft);
        write_family_files(out_dir, param_dir("verify-" + which, pb), rep.maxima);
      }
      std::ostringstream human;
      human << "theorem=" << which << " predicted=" << rep.predicted_size.str()
            << " found=" << rep.found_size
            << " proof_complete=" << (rep.proof_complete ? "true" : "false")
            << " structures_match=" << (rep.structures_match ? "true" : "false") << " forms=[";
      for (std::size_t i = 0; i < rep.forms_found.size(); ++i)
        human << (i ? "," : "") << rep.forms_found[i];
      human << "]\n";
      emit(out, json, rep.to_json(), human.str());
      if (!rep.proof_complete) return 3;
      if (!rep.hypothesis_ok) return 0;  // advisory run: the report is the product
      return rep.structures_match ? 0 : 1;
    }

    if (*rigid || *modular) {
      require_prime_power(fq);
      const Field& f = Field::of(static_cast<int>(fq));
      std::mt19937_64 rng(seed);
      long failures = 0;
      for (long i = 0; i < trials; ++i) {
        bool ok;
        if (*rigid) {
          RigidityInstance inst = sample_rigidity_instance(rng, f, static_cast<int>(fn));
          ok = rigidity_check(inst.u1, inst.u2, inst.u3, inst.x1, inst.x2, inst.x3);
        } else {
          ModularInstance inst = sample_modular_instance(rng, f, static_cast<int>(fn));
          ok = modular_check(inst.u1, inst.u2, inst.u3, inst.u4);
        }
        if (!ok) ++failures;
      }
      ordered_json doc;
      doc["op"] = *rigid ? "check-rigidity" : "check-modular";
      doc["q"] = fq;
      doc["n"] = fn;
      doc["trials"] = trials;
      doc["seed"] = seed;
      doc["failures"] = failures;
      std::ostringstream human;
      human << "trials=" << trials << " failures=" << failures << "\n";
      emit(out, json, doc, human.str());
      return failures == 0 ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace qgrass::cli
