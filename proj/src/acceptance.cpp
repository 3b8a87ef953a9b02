#include "klrfold/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "klrfold/crystal.hpp"
#include "klrfold/errors.hpp"
#include "klrfold/falgebra.hpp"
#include "klrfold/groth.hpp"
#include "klrfold/modcat.hpp"

namespace klrfold {

namespace {

const char* kNames[] = {
    "one-colour pairing (P(u),P(u)) = 1/(1-q^4) to precision 40",
    "q-binomial identity for P(j)^(m) P(j)^(n)",
    "dimension concordance: Gram rank = product formula = crystal count",
    "KLR engine: relation suite and associativity",
    "crystal certification of folded C2 to height 4",
    "iota triangularity to height 3",
    "Mackey class identity",
    "duality functoriality and D^2 = id",
    "canonical-type axioms and leading coefficients",
    "orthonormality of projectives and simples",
};

FoldedDatum load(const AcceptanceOptions& opt, const std::string& file) {
  LoadedDatum d = load_datum_file(opt.data_dir + "/" + file);
  return fold(d.datum, d.aut);
}

std::string wstr(const Weight& nu) {
  std::string s = "(";
  for (size_t k = 0; k < nu.size(); ++k) s += (k ? "," : "") + std::to_string(nu[k]);
  return s + ")";
}

struct Collector {
  std::vector<std::string> failures;
  long checked = 0;
  void fail(const std::string& s) { failures.push_back(s); }
  template <class R>
  void absorb(const std::string& where, const R& r) {
    for (const auto& f : r.failures) fail(where + ": " + f);
  }
  bool ok() const { return failures.empty(); }
  std::string summary(const std::string& good) const {
    if (ok()) return good;
    std::string s = std::to_string(failures.size()) + " failure(s): ";
    for (size_t k = 0; k < failures.size() && k < 4; ++k) s += (k ? "; " : "") + failures[k];
    if (failures.size() > 4) s += "; ...";
    return s;
  }
};

CriterionResult c1(const AcceptanceOptions& opt) {
  CriterionResult r;
  FoldedDatum fd = load(opt, "a3.json");
  ModCat mc(fd);
  auto t0 = std::chrono::steady_clock::now();
  PairingReport p = pair_proj_proj(mc, {0}, {0}, opt.pairing_precision);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int uu = fd.folded.dot[0][0];
  LaurentScalar want;
  for (int k = 0; k <= opt.pairing_precision; k += uu) want += LaurentScalar::qpow(k);
  bool value = p.value == SeriesScalar::from_laurent(want, opt.pairing_precision);
  r.pass = value && p.stable && secs < 60.0 && uu == 4;
  std::ostringstream os;
  os << "u.u=" << uu << ", trunc " << p.trunc << "/" << p.trunc_check << (p.stable ? " stable" : " UNSTABLE")
     << (value ? ", value exact" : ", value " + p.value.str()) << ", " << secs << "s";
  r.detail = os.str();
  return r;
}

CriterionResult c2(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  {
    ModCat mc(load(opt, "a3.json"));
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
      IdentityReport i = qbinomial_identity_check(mc, 0, m, n);
      ++c.checked;
      if (!i.ok) c.fail("C2 u: " + i.detail);
    }
  }
  {
    FoldedDatum fd = load(opt, "d4.json");
    int shortj = 0;
    for (int j = 0; j < fd.folded.size(); ++j)
      if (fd.folded.dot[j][j] < fd.folded.dot[shortj][shortj]) shortj = j;
    ModCat mc(fd);
    IdentityReport i = qbinomial_identity_check(mc, shortj, 1, 1);
    ++c.checked;
    if (!i.ok) c.fail("G2 short: " + i.detail);
  }
  r.pass = c.ok();
  r.detail = c.summary("C2 u (1,1),(1,2),(2,2) and G2 short (1,1) exact");
  return r;
}

CriterionResult c3(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  std::ostringstream os;
  for (const char* file : {"a2-trivial.json", "a3.json", "d4.json"}) {
    FoldedDatum fd = load(opt, file);
    FAlgebra f(fd.folded);
    for (int h = 0; h <= opt.dims_height; ++h)
      for (const Weight& nu : weights_of_height(fd.folded.size(), h)) {
        ++c.checked;
        if (f.dim_f(nu) != graded_dim_f(fd.folded, nu)) c.fail(std::string(file) + " Gram rank at " + wstr(nu));
      }
    ModCat mc(fd);
    ModuleCrystal m = generate_crystal_simples(mc, opt.crystal_height);
    auto counts = m.counts();
    int bad = 0, good_to = -1;
    for (int h = 0; h <= opt.crystal_height; ++h) {
      int bad_here = 0;
      for (const Weight& nu : weights_of_height(fd.folded.size(), h)) {
        ++c.checked;
        if (counts[nu] != graded_dim_f(fd.folded, nu)) {
          ++bad_here;
          std::string why = std::count(m.incomplete.begin(), m.incomplete.end(), nu) ? ", induced module over the dimension cap" : "";
          c.fail(std::string(file) + " crystal count at " + wstr(nu) + ": " + std::to_string(counts[nu]) + " vs " +
                 std::to_string(graded_dim_f(fd.folded, nu)) + why);
        }
      }
      if (bad_here == 0 && good_to == h - 1) good_to = h;
      bad += bad_here;
    }
    os << file << ": " << m.v.size() << " vertices, counts exact to height " << good_to
       << (bad ? " (" + std::to_string(bad) + " weights short)" : "") << "; ";
  }
  r.pass = c.ok();
  r.detail = os.str() + c.summary("all counts equal");
  return r;
}

CriterionResult c4(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  long triples = 0;
  for (const char* file : {"a3.json", "d4.json"}) {
    LoadedDatum d = load_datum_file(opt.data_dir + "/" + file);
    KLRAlgebra alg(d.datum, d.aut);
    for (int h = 1; h <= 4; ++h)
      for (const Weight& nu : weights_of_height(d.datum.size(), h)) {
        RelationReport rr = alg.relation_suite(nu);
        c.checked += rr.checked;
        c.absorb(std::string(file) + " relations " + wstr(nu), rr);
      }
    // Associativity on the height-3 and height-4 weights, enough triples overall.
    std::vector<Weight> ws;
    for (int h = 3; h <= 4; ++h)
      for (const Weight& nu : weights_of_height(d.datum.size(), h)) ws.push_back(nu);
    const int per = (opt.associativity_triples + static_cast<int>(ws.size()) - 1) / static_cast<int>(ws.size());
    unsigned seed = 1;
    for (const Weight& nu : ws) {
      RelationReport ar = alg.associativity(nu, per, seed++);
      triples += ar.checked;
      c.absorb(std::string(file) + " associativity " + wstr(nu), ar);
    }
  }
  std::ostringstream os;
  os << c.checked << " relation instances, " << triples << " associativity triples";
  r.pass = c.ok() && triples >= 2L * opt.associativity_triples;
  r.detail = c.summary(os.str());
  return r;
}

CriterionResult c5(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  FoldedDatum fd = load(opt, "a3.json");
  ModCat mc(fd);
  ModuleCrystal m = generate_crystal_simples(mc, 4);
  if (!m.complete()) c.fail("crystal incomplete");
  CrystalGraph g = crystal_from_modules(m, fd);
  const std::pair<const char*, CrystalReport (*)(const CrystalGraph&)> checks[] = {
      {"axioms", &crystal_axioms_check},      {"criterion", &criterion_check}, {"efcommute", &efcommute_check},
      {"e*-power commutation", &estar_power_commute_check},      {"local sl2", &local_sl2_check_all}};
  for (const auto& [name, fn] : checks) {
    CrystalReport cr = fn(g);
    c.checked += cr.checked;
    if (cr.checked == 0) c.fail(std::string(name) + ": nothing checked");
    c.absorb(name, cr);
  }
  std::ostringstream os;
  os << g.size() << " vertices, " << c.checked << " instances";
  r.pass = c.ok();
  r.detail = c.summary(os.str());
  return r;
}

CriterionResult c6(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  ModCat mc(load(opt, "a3.json"));
  SimpleTable t = simple_table(mc, 3);
  for (int h = 0; h <= 3; ++h)
    for (const Weight& nu : weights_of_height(2, h)) {
      TriangularityReport tr = iota_triangularity(t, nu);
      ++c.checked;
      c.absorb(wstr(nu), tr);
      if (!tr.ok && tr.failures.empty()) c.fail(wstr(nu) + ": not unitriangular");
    }
  r.pass = c.ok();
  r.detail = c.summary(std::to_string(c.checked) + " weights unitriangular");
  return r;
}

CriterionResult c7(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  ModCat mc(load(opt, "a3.json"));
  SimpleTable t = simple_table(mc, 2);
  long terms = 0, orbits = 0, pairs = 0;
  for (int b1 = 0; b1 < t.size(); ++b1)
    for (int b2 = 0; b2 < t.size(); ++b2) {
      const Weight &l1 = t.dual[b1].nu, &l2 = t.dual[b2].nu;
      Weight tot = {l1[0] + l2[0], l1[1] + l2[1]};
      for (int a = 0; a <= tot[0]; ++a)
        for (int b = 0; b <= tot[1]; ++b) {
          Weight m1 = {a, b}, m2 = {tot[0] - a, tot[1] - b};
          if (height(m1) > 2 || height(m2) > 2) continue;
          MackeyReport mr = mackey_check(mc, l1, l2, m1, m2, t.crystal.v[b1].mod, t.crystal.v[b2].mod);
          ++pairs;
          c.checked += mr.checked;
          terms += mr.terms;
          orbits += mr.traceless_orbits;
          c.absorb("L" + t.label[b1] + " o L" + t.label[b2] + " at " + wstr(m1) + wstr(m2), mr);
        }
    }
  std::ostringstream os;
  os << pairs << " decompositions, " << terms << " terms, " << orbits << " traceless orbits, " << c.checked
     << " word pairs";
  r.pass = c.ok() && orbits > 0;
  r.detail = c.summary(os.str());
  return r;
}

CriterionResult c8(const AcceptanceOptions& opt) {
  CriterionResult r;
  ModCat mc(load(opt, "a3.json"));
  SimpleTable t = simple_table(mc, 4);
  DualityReport d = duality_functoriality(mc, t, opt.duality_trunc);
  r.pass = d.ok();
  Collector c;
  c.absorb("duality", d);
  r.detail = c.summary(std::to_string(d.checked) + " checks; D(P o Q) = shift(DQ o DP, |P|.|Q|), D^2 = id on " +
                       std::to_string(t.size() - 1) + " simples");
  return r;
}

CriterionResult c9(const AcceptanceOptions& opt) {
  CriterionResult r;
  Collector c;
  FoldedDatum fd = load(opt, "a3.json");
  ModCat mc(fd);
  SimpleTable t3 = simple_table(mc, 3);
  FAlgebra f(fd.folded, -1);
  AxiomReport dual = f.dual_canonical_type_check(t3.dual, 3);
  c.absorb("dual canonical", dual);
  for (int dd : {2, 4, 6}) {
    CartanDatum one;
    one.labels = {"j"};
    one.dot = {{dd}};
    FAlgebra g(one);
    std::vector<FreeElement> basis;
    for (int n = 0; n <= 6; ++n) basis.push_back(g.divided_power(0, n));
    c.absorb("rank one j.j=" + std::to_string(dd), g.canonical_type_check(basis, 6));
  }
  SimpleTable t4 = simple_table(mc, 4);
  LeadingReport l = leading_coefficient_check(f, t4, 4);
  c.absorb("leading", l);
  std::ostringstream os;
  os << "B* six conditions, rank-1 canonical basis, " << l.checked << " leading coefficients";
  r.pass = c.ok() && l.checked > 0;
  r.detail = c.summary(os.str());
  return r;
}

CriterionResult c10(const AcceptanceOptions& opt) {
  CriterionResult r;
  ModCat mc(load(opt, "a3.json"));
  SimpleTable t = simple_table(mc, 3);
  OrthonormalityReport o = orthonormality(t, 3);
  Collector c;
  c.absorb("orthonormality", o);
  r.pass = o.ok() && o.checked > 0;
  r.detail = c.summary(std::to_string(o.checked) + " pairs <[P_b],[L_b']> = delta");
  return r;
}

}  // namespace

int acceptance_count() { return 10; }

std::string acceptance_name(int id) {
  if (id < 1 || id > acceptance_count()) throw DomainError("no such criterion");
  return kNames[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  static CriterionResult (*const fns[])(const AcceptanceOptions&) = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  CriterionResult r;
  auto t0 = std::chrono::steady_clock::now();
  try {
    r = fns[id - 1](opt);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = acceptance_name(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& report) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int k = 1; k <= acceptance_count(); ++k) todo.push_back(k);
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id, opt));
    if (report) report(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + " -- " + r.detail +
         " (" + buf + ")";
}

}  // namespace klrfold
