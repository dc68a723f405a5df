// Command-line pipeline: parse a finite group, build its p-local structure
// (fusion system, centric linking system), construct the normaliser
// decompositions and verify them through mod-p homology of truncated nerves.
//
// Verbs:  info | decompose --theorem A|B | selftest
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plfg/catengine.hpp"
#include "plfg/corpus.hpp"
#include "plfg/decomposition.hpp"
#include "plfg/fusion.hpp"
#include "plfg/groupcore.hpp"
#include "plfg/io.hpp"
#include "plfg/linking.hpp"
#include "plfg/subdivision.hpp"

using namespace plfg;

namespace {

struct Options {
  int p = 2;
  std::string group_path;
  std::string collection = "centric";
  std::string eab = "all";
  int dim = 4;
  long budget = 5'000'000;
  std::string report_path;
  std::string cache_dir = ".plfg-cache";
  bool strict = false;
  bool dwyer = false;
  bool thomason = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Names the pipeline stage in budget errors.
template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SimplexBudgetExceeded& e) {
    throw SimplexBudgetExceeded(std::string(stage) + ": " + e.what());
  }
}

Json subgroup_json(const Subgroup& P) {
  Json j;
  j["order"] = P.order();
  j["elements"] = P.elems;
  return j;
}

Json collection_json(const FusionSystem& F, const Collection& C,
                     bool with_radical) {
  Json j;
  j["size"] = C.members.size();
  Json classes = Json::array();
  for (const auto& cls : f_conjugacy_classes(F, C.members)) {
    Json c;
    c["representative"] = subgroup_json(cls.front());
    c["members"] = cls.size();
    if (with_radical) c["radical"] = is_radical(F, cls.front());
    classes.push_back(std::move(c));
  }
  j["classes"] = std::move(classes);
  return j;
}

std::vector<Subgroup> parse_subgroup_file(const FiniteGroup& G,
                                          const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open subgroup file: " + path);
  std::vector<Subgroup> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::vector<int> gens;
    int v;
    while (ss >> v) {
      if (v < 0 || v >= G.order())
        throw ParseError(lineno, "generator index " + std::to_string(v) +
                                     " out of range 0.." +
                                     std::to_string(G.order() - 1));
      gens.push_back(v);
    }
    if (!gens.empty()) out.push_back(subgroup_generated_by(G, gens));
  }
  if (out.empty()) throw InputError("subgroup file has no subgroups: " + path);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open group file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Collection build_c(const FusionSystem& F, const std::string& spec) {
  if (spec == "centric") return build_collection(F, CollectionKind::Centric);
  if (spec == "centric-radical")
    return build_collection(F, CollectionKind::CentricRadical);
  if (!spec.empty() && spec[0] == '@') {
    auto subs = parse_subgroup_file(F.group(), spec.substr(1));
    Collection C = build_collection(F, CollectionKind::Custom, subs);
    for (const auto& P : C.members)
      if (!is_centric(F, P))
        throw InputError("custom collection member of order " +
                         std::to_string(P.order()) + " is not centric");
    return C;
  }
  throw InputError("unknown collection spec: " + spec);
}

Collection build_e(const FusionSystem& F, const Collection& C,
                   const std::string& spec) {
  if (spec == "all") return build_collection(F, CollectionKind::ElementaryAbelian);
  if (spec == "omega") {
    std::vector<Subgroup> seeds;
    for (const auto& P : C.members) {
      Subgroup E = omega_p(center(P), F.prime());
      if (E.order() > 1) seeds.push_back(E);
    }
    return build_collection(F, CollectionKind::Custom, seeds);
  }
  if (!spec.empty() && spec[0] == '@') {
    auto subs = parse_subgroup_file(F.group(), spec.substr(1));
    Collection E = build_collection(F, CollectionKind::Custom, subs);
    for (const auto& P : E.members)
      if (P.order() == 1 || !is_elementary_abelian(P, F.prime()))
        throw InputError(
            "custom elementary-abelian collection member of order " +
            std::to_string(P.order()) + " is not a nontrivial elementary "
            "abelian p-group");
    return E;
  }
  throw InputError("unknown elementary-abelian spec: " + spec);
}

Json config_json(const Options& o, const std::string& theorem = {}) {
  Json j;
  j["p"] = o.p;
  j["group"] = o.group_path;
  j["collection"] = o.collection;
  if (!theorem.empty()) {
    j["theorem"] = theorem;
    j["eab"] = o.eab;
    j["dim"] = o.dim;
  }
  j["budget"] = o.budget;
  j["strict"] = o.strict;
  return j;
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void emit(const Json& rep, const Options& o) {
  if (!o.report_path.empty()) write_report(rep, o.report_path);
}

// ---------------------------------------------------------------------------

int cmd_info(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.group_path);
  std::string key = content_hash(text + "|p=" + std::to_string(o.p) + "|" +
                                 o.collection + "|info|v" +
                                 std::to_string(kReportFormatVersion));
  ReportCache cache(o.cache_dir);
  Json rep;
  bool hit = false;
  if (auto cached = cache.load(key)) {
    rep = *cached;
    hit = true;
  } else {
    FiniteGroup G = parse_group_text(text, o.strict);
    if (!is_prime(o.p)) throw InputError("p must be prime");
    FusionSystem F(G, o.p);
    rep = new_report("info");
    rep["config"] = config_json(o);
    rep["group_order"] = G.order();
    rep["sylow"] = subgroup_json(F.sylow_subgroup());
    rep["subgroups_of_sylow"] = F.subgroups_of_s().size();
    Collection C = build_c(F, o.collection);
    rep["collection"] = collection_json(F, C, true);
    auto chains = enumerate_chains(C);
    rep["chains"] = chains.size();
    if (chains.empty()) {
      rep["chain_classes"] = 0;
    } else {
      BarSubdivision bar = conj_classes_of_chains(F, chains);
      rep["chain_classes"] = bar.classes.size();
      Json cc = Json::array();
      for (const auto& cls : bar.classes) {
        Json c;
        Json entries = Json::array();
        for (const auto& P : cls.representative.entries)
          entries.push_back(P.order());
        c["representative_orders"] = std::move(entries);
        c["members"] = cls.members.size();
        cc.push_back(std::move(c));
      }
      rep["chain_class_table"] = std::move(cc);
    }
    cache.store(key, rep);
  }
  Json out = rep;
  out["cache"] = hit ? "hit" : "miss";
  out["timing"] = Json{{"total_ms", ms_since(t0)}};
  std::cout << "info: |G|=" << out["group_order"] << " |S|="
            << out["sylow"]["order"] << " collection size "
            << out["collection"]["size"] << " in "
            << out["collection"]["classes"].size() << " classes; "
            << out["chains"] << " chains in " << out["chain_classes"]
            << " classes (cache " << (hit ? "hit" : "miss") << ")\n";
  emit(out, o);
  return 0;
}

int cmd_decompose(const Options& o, const std::string& theorem) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(o.group_path);
  FiniteGroup G = parse_group_text(text, o.strict);
  if (!is_prime(o.p)) throw InputError("p must be prime");
  if (G.order() % o.p != 0)
    throw InputError("p does not divide the group order; nothing to decompose");
  if (o.dim < 1) throw InputError("--dim must be at least 1");

  FusionSystem F(G, o.p);
  Collection C = build_c(F, o.collection);
  if (C.members.empty()) throw InputError("the collection is empty");
  LinkingSystem L(F, C);

  Json rep = new_report("decompose");
  rep["config"] = config_json(o, theorem);
  rep["group_order"] = G.order();
  rep["sylow"] = subgroup_json(F.sylow_subgroup());
  rep["collection"] = collection_json(F, C, true);
  rep["trusted_degrees"] = "0.." + std::to_string(o.dim - 1);

  SaturationReport sat = check_saturation(F);
  AxiomReport ax = verify_axioms(L);
  rep["saturation_ok"] = sat.ok;
  rep["axioms_ok"] = ax.ok();
  if (!sat.ok || !ax.ok()) {
    rep["timing"] = Json{{"total_ms", ms_since(t0)}};
    emit(rep, o);
    std::cout << "decompose: FAILED (axiom checks)\n";
    return 1;
  }

  DecompositionDiagram D;
  CatDiagram value_for_thomason;
  if (theorem == "A") {
    NormaliserDecompositionA N = with_stage(
        "subgroup-chain diagram construction",
        [&] { return theorem_a_diagram(L, o.budget); });
    rep["chain_classes"] = N.proj.class_rep.size();
    D = N.D;
  } else {
    Collection E = build_e(F, C, o.eab);
    rep["elementary_abelian_collection"] = collection_json(F, E, false);
    NormaliserDecompositionB N = with_stage(
        "elementary-abelian diagram construction",
        [&] { return theorem_b_diagram(L, E, o.budget); });
    rep["chain_classes"] = N.proj.class_rep.size();
    D = N.D;
  }

  DecompositionReport v = with_stage("homology verification", [&] {
    return verify_decomposition(D, o.dim, o.p, o.budget);
  });
  rep["betti_source"] = v.betti_source;
  rep["betti_target"] = v.betti_target;
  rep["iso_by_degree"] = v.induced.iso;
  rep["reduced_via_skeleton_certificate"] = v.reduced;
  rep["all_iso"] = v.all_iso();

  if (o.dwyer) {
    DwyerReport dw = dwyer_comparison(L, true);
    Json classes = Json::array();
    for (const auto& c : dw.classes) {
      Json j;
      Json orders = Json::array();
      for (const auto& P : c.rep.entries) orders.push_back(P.order());
      j["chain_orders"] = std::move(orders);
      j["transporter_aut_order"] = c.aut_t_order;
      j["linking_aut_order"] = c.aut_l_order;
      j["kernel_order"] = c.kernel_order;
      j["kernel_p_prime"] = c.kernel_p_prime;
      j["surjective"] = c.surjective;
      j["homology_checked"] = c.homology_checked;
      if (c.homology_checked) {
        j["h_transporter"] = c.h_t;
        j["h_linking"] = c.h_l;
        j["homology_agree"] = c.homology_agree;
      }
      classes.push_back(std::move(j));
    }
    rep["dwyer"] = Json{{"ok", dw.ok}, {"classes", std::move(classes)}};
  }

  if (o.thomason) {
    int dt = std::min(o.dim, 3);
    try {
      TwoWayHomology tw = hocolim_homology_two_ways(D.value, dt, o.p, o.budget);
      rep["thomason"] = Json{{"agree", tw.agree()},
                             {"via_translation", tw.via_grothendieck},
                             {"via_diagonal", tw.via_diagonal}};
    } catch (const SimplexBudgetExceeded& e) {
      rep["thomason"] = Json{{"skipped_budget", std::string(e.what())}};
    }
  }

  // The cache never short-circuits verification: a stored prior run is only
  // used to cross-check that the fresh result is byte-identical.
  std::string key = content_hash(
      text + "|p=" + std::to_string(o.p) + "|" + o.collection + "|" + o.eab +
      "|decompose" + theorem + "|d=" + std::to_string(o.dim) + "|b=" +
      std::to_string(o.budget) + (o.dwyer ? "|dw" : "") +
      (o.thomason ? "|th" : "") + "|v" + std::to_string(kReportFormatVersion));
  ReportCache cache(o.cache_dir);
  Json core = without_timing(rep);
  if (auto cached = cache.load(key)) {
    if (without_timing(*cached) != core) {
      std::cerr << "decompose: cached report for this configuration differs "
                   "from the fresh result; treating as verification failure\n";
      rep["cache"] = "mismatch";
      rep["timing"] = Json{{"total_ms", ms_since(t0)}};
      emit(rep, o);
      return 1;
    }
    rep["cache"] = "verified";
  } else {
    cache.store(key, core);
    rep["cache"] = "stored";
  }

  rep["timing"] = Json{{"total_ms", ms_since(t0)}};
  emit(rep, o);
  std::cout << "decompose " << theorem << ": betti(source)=" << rep["betti_source"]
            << " betti(target)=" << rep["betti_target"] << " all_iso="
            << (v.all_iso() ? "true" : "false")
            << (v.reduced ? " (skeleton certificate)" : "") << "\n";
  return v.all_iso() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// selftest

// fusion-morphism table with selected element maps removed, to confirm the
// saturation checker notices
class DroppingView : public FusionView {
 public:
  DroppingView(const FusionSystem& base,
               std::function<bool(const Subgroup&, const Subgroup&,
                                  const ElemMap&)>
                   drop)
      : base_(base), drop_(std::move(drop)) {}
  const FiniteGroup& group() const override { return base_.group(); }
  int prime() const override { return base_.prime(); }
  const Subgroup& sylow_subgroup() const override {
    return base_.sylow_subgroup();
  }
  std::vector<ElemMap> hom_maps(const Subgroup& P,
                                const Subgroup& Q) const override {
    std::vector<ElemMap> out;
    for (auto& m : base_.hom_maps(P, Q))
      if (!drop_(P, Q, m)) out.push_back(m);
    return out;
  }

 private:
  const FusionSystem& base_;
  std::function<bool(const Subgroup&, const Subgroup&, const ElemMap&)> drop_;
};

CatPtr discrete_cat(int n) {
  auto c = std::make_shared<FinCategory>();
  for (int i = 0; i < n; ++i) c->add_identity(c->add_object());
  c->finalize();
  return c;
}

FinFunctor discrete_functor(CatPtr src, CatPtr dst, std::vector<int> omap) {
  std::vector<int> mmap(src->num_morphisms());
  for (int m = 0; m < src->num_morphisms(); ++m)
    mmap[m] = dst->identity_of(omap[src->src(m)]);
  return FinFunctor(src, dst, std::move(omap), std::move(mmap));
}

bool linking_row(const FiniteGroup& G, int p) {
  FusionSystem F(G, p);
  if (!check_saturation(F).ok) return false;
  Collection C = build_collection(F, CollectionKind::Centric);
  if (C.members.empty()) return false;
  LinkingSystem L(F, C);
  if (!verify_axioms(L).ok()) return false;
  if (!check_iota_coherence(L)) return false;
  for (const auto& P : L.objects())
    for (const auto& Q : L.objects())
      if (L.hom(P, Q).size() !=
          F.hom(P, Q).size() * center(P).elems.size())
        return false;
  return true;
}

bool mutation_fusion_row() {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  // the normal Klein four: order 4, normal in G
  Subgroup V;
  for (const auto& P : F.subgroups_of_s())
    if (P.order() == 4 && normalizer(G, P).order() == G.order() &&
        is_elementary_abelian(P, 2))
      V = P;
  ElemMap victim;
  for (const auto& phi : F.hom(V, V))
    if (G.element_order(phi.rep) == 3) {
      victim = elem_map_of(G, V, phi.rep);
      break;
    }
  if (victim.empty()) return false;
  DroppingView mut(F, [&](const Subgroup& P, const Subgroup& Q,
                          const ElemMap& m) {
    return P == V && Q == V && m == victim;
  });
  return !check_saturation(mut).ok;
}

bool mutation_linking_row() {
  auto G = corpus::s4();
  FusionSystem F(G, 2);
  LinkingSystem L(F, build_collection(F, CollectionKind::Centric));
  Subgroup V;
  for (const auto& P : L.objects())
    if (P.order() == 4 && normalizer(G, P).order() == G.order()) V = P;
  int dz = L.mor_index(L.delta(V, V, V.elems[1]));
  const auto& cat = *L.category();
  int zV = L.obj_index(V);
  int f = -1, other = -1;
  for (int cand : cat.hom(zV, zV)) {
    int comp = cat.compose(cand, dz);
    for (int oth : cat.hom(zV, zV))
      if (oth != comp) {
        f = cand;
        other = oth;
        break;
      }
    if (f >= 0) break;
  }
  if (f < 0) return false;
  FinCategory mutated = cat;
  mutated.corrupt_compose(f, dz, other);
  return !verify_axioms(L, mutated).ok();
}

bool thomason_row() {
  std::mt19937 rng(20260823);
  for (int trial = 0; trial < 5; ++trial) {
    auto c = std::make_shared<FinCategory>();
    for (int i = 0; i < 4; ++i) c->add_identity(c->add_object());
    std::vector<std::pair<int, int>> arrows;
    for (int s = 0; s < 2; ++s)
      for (int t = 2; t < 4; ++t)
        if (rng() % 2) {
          c->add_morphism(s, t);
          arrows.emplace_back(s, t);
        }
    c->finalize();
    CatDiagram U;
    U.base = c;
    std::vector<int> sizes(4);
    for (int i = 0; i < 4; ++i) {
      sizes[i] = 1 + static_cast<int>(rng() % 3);
      U.value.push_back(discrete_cat(sizes[i]));
    }
    for (int i = 0; i < 4; ++i)
      U.action.push_back(FinFunctor::identity(U.value[i]));
    for (auto [s, t] : arrows) {
      std::vector<int> omap(sizes[s]);
      for (int& v : omap) v = static_cast<int>(rng() % sizes[t]);
      U.action.push_back(discrete_functor(U.value[s], U.value[t], omap));
    }
    if (!hocolim_homology_two_ways(U, 3, 2).agree()) return false;
  }
  return true;
}

int cmd_selftest(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  struct Row {
    std::string name;
    std::function<bool()> run;
  };
  std::vector<std::pair<std::string, FiniteGroup>> corpus2 = {
      {"C_2", corpus::c2()},   {"S_3", corpus::s3()},
      {"D_8", corpus::d8()},   {"Q_8", corpus::q8()},
      {"A_4", corpus::a4()},   {"S_4", corpus::s4()},
      {"S_3xC_3", corpus::s3_x_c3()}};
  std::vector<Row> rows;
  for (auto& [name, G] : corpus2) {
    const FiniteGroup* g = &G;
    rows.push_back({"saturation+linking " + name + " p=2",
                    [g] { return linking_row(*g, 2); }});
  }
  rows.push_back({"saturation+linking A_4 p=3",
                  [] { return linking_row(corpus::a4(), 3); }});
  rows.push_back({"mutation detector: fusion table", mutation_fusion_row});
  rows.push_back({"mutation detector: linking composition",
                  mutation_linking_row});
  rows.push_back({"two-way hocolim homology on random diagrams",
                  thomason_row});

  Json rep = new_report("selftest");
  Json matrix = Json::array();
  bool all = true;
  for (auto& r : rows) {
    bool ok = false;
    try {
      ok = r.run();
    } catch (const std::exception& e) {
      std::cout << "  [exception] " << r.name << ": " << e.what() << "\n";
    }
    all = all && ok;
    std::cout << (ok ? "PASS " : "FAIL ") << r.name << "\n";
    matrix.push_back(Json{{"check", r.name}, {"ok", ok}});
  }
  rep["checks"] = std::move(matrix);
  rep["all_ok"] = all;
  rep["timing"] = Json{{"total_ms", ms_since(t0)}};
  emit(rep, o);
  std::cout << (all ? "selftest: all checks passed\n"
                    : "selftest: FAILURES present\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-local finite group decompositions of finite groups"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    cmd->add_option("--p", o.p, "prime");
    auto* g = cmd->add_option("--group", o.group_path, "group input file");
    if (needs_group) g->required();
    cmd->add_option("--collection", o.collection,
                    "centric | centric-radical | @file");
    cmd->add_option("--dim", o.dim, "nerve truncation dimension");
    cmd->add_option("--budget", o.budget, "simplex budget");
    cmd->add_option("--report", o.report_path, "full report output path");
    cmd->add_option("--cache-dir", o.cache_dir, "intermediate cache directory");
    cmd->add_flag("--strict", o.strict, "exhaustive input validation");
  };

  auto* info = app.add_subcommand("info", "structure summary, no homology");
  add_common(info, true);

  auto* dec = app.add_subcommand("decompose",
                                 "build and verify a normaliser decomposition");
  add_common(dec, true);
  std::string theorem;
  dec->add_option("--theorem", theorem, "A (subgroup chains) or B (elementary abelians)")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  dec->add_option("--eab", o.eab, "all | omega | @file (theorem B collection)");
  dec->add_flag("--dwyer-homology", o.dwyer,
                "include the transporter comparison with group homology");
  dec->add_flag("--thomason", o.thomason,
                "cross-check hocolim homology two ways");

  auto* self = app.add_subcommand("selftest", "run the built-in check matrix");
  add_common(self, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) return cmd_info(o);
    if (*dec) return cmd_decompose(o, theorem);
    return cmd_selftest(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidGroupTable& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CollectionTooSmall& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SimplexBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const ClosureExceedsCap& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const SubgroupCountExceedsCap& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }
}
