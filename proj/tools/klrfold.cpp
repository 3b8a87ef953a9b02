// Batch driver: fold, dims, gram, pairings, crystal, verify.
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "klrfold/acceptance.hpp"
#include "klrfold/crystal.hpp"
#include "klrfold/errors.hpp"
#include "klrfold/falgebra.hpp"
#include "klrfold/groth.hpp"
#include "klrfold/modcat.hpp"

#ifndef KLRFOLD_DATA_DIR
#define KLRFOLD_DATA_DIR "data"
#endif

using namespace klrfold;
using json = nlohmann::ordered_json;

namespace {

struct Config {
  std::string input;
  int prec = 40;
  int height = 4;
  std::string out;
  std::string dot;
  std::string suite = "all";
  std::string weight;
  std::string data_dir = KLRFOLD_DATA_DIR;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FoldedDatum load(const Config& c) {
  if (c.input.empty()) throw UsageError("--input is required");
  std::ifstream probe(c.input);
  if (!probe) throw UsageError("cannot read " + c.input);
  LoadedDatum d = load_datum_file(c.input);
  return fold(d.datum, d.aut);
}

/// Orbit names u, v, w, ... in orbit order.
std::vector<std::string> orbit_names(const FoldedDatum& fd) {
  static const char* letters[] = {"u", "v", "w", "x", "y", "z"};
  std::vector<std::string> n;
  for (int j = 0; j < fd.folded.size(); ++j) n.push_back(j < 6 ? letters[j] : "j" + std::to_string(j));
  return n;
}

std::string wname(const Weight& nu, const std::vector<std::string>& names) {
  std::string s;
  for (size_t j = 0; j < nu.size(); ++j) {
    if (!nu[j]) continue;
    if (!s.empty()) s += "+";
    if (nu[j] > 1) s += std::to_string(nu[j]);
    s += names[j];
  }
  return s.empty() ? "0" : s;
}

std::string compact(std::string s) {
  std::erase(s, ' ');
  return s;
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

json series_json(const SeriesScalar& s) {
  json j = json::object();
  const LaurentScalar t = s.truncated();
  for (const auto& [e, v] : t.terms()) {
    LaurentScalar one;
    one.add_term(0, v);
    j[std::to_string(e)] = compact(one.str());
  }
  return j;
}

Weight parse_weight(const std::string& s, int rank) {
  Weight nu;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      nu.push_back(std::stoi(tok));
    } catch (...) {
      throw UsageError("bad --weight " + s);
    }
  }
  if (static_cast<int>(nu.size()) != rank) throw UsageError("--weight needs " + std::to_string(rank) + " entries");
  for (int x : nu)
    if (x < 0) throw UsageError("--weight entries must be nonnegative");
  return nu;
}

int cmd_fold(const Config& c) {
  FoldedDatum fd = load(c);
  auto names = orbit_names(fd);
  std::ostringstream os;
  os << "J = {";
  for (size_t j = 0; j < names.size(); ++j) os << (j ? "," : "") << names[j];
  os << "}\n";
  for (int j = 0; j < fd.folded.size(); ++j) {
    os << names[j] << " = orbit {";
    for (size_t k = 0; k < fd.orbits[j].size(); ++k) os << (k ? "," : "") << fd.base.labels[fd.orbits[j][k]];
    os << "}, " << names[j] << "." << names[j] << " = " << fd.folded.dot[j][j] << ", d = " << fd.folded.d(j) << "\n";
  }
  os << "Cartan rows";
  for (int i = 0; i < fd.folded.size(); ++i) {
    os << (i ? "," : " ") << "(";
    for (int j = 0; j < fd.folded.size(); ++j) os << (j ? "," : "") << fd.folded.c(i, j);
    os << ")";
  }
  os << "\nn = " << fd.n() << "\n";
  emit(c, os.str());
  return 0;
}

int cmd_dims(const Config& c) {
  FoldedDatum fd = load(c);
  auto names = orbit_names(fd);
  FAlgebra f(fd.folded);
  std::ostringstream os;
  os << "weight,dim_free,gram_rank,product_formula\n";
  bool ok = true;
  for (int h = 0; h <= c.height; ++h)
    for (const Weight& nu : weights_of_height(fd.folded.size(), h)) {
      GramData g = f.gram(nu);
      long formula = graded_dim_f(fd.folded, nu);
      ok = ok && g.rank == formula;
      os << wname(nu, names) << "," << g.dim_free() << "," << g.rank << "," << formula << "\n";
    }
  emit(c, os.str());
  std::cerr << "dims: " << (ok ? "PASS" : "FAIL") << " (height " << c.height << ")\n";
  return ok ? 0 : 1;
}

int cmd_gram(const Config& c) {
  FoldedDatum fd = load(c);
  auto names = orbit_names(fd);
  FAlgebra f(fd.folded);
  std::vector<Weight> ws;
  if (!c.weight.empty()) {
    ws.push_back(parse_weight(c.weight, fd.folded.size()));
  } else {
    for (int h = 1; h <= c.height; ++h)
      for (const Weight& nu : weights_of_height(fd.folded.size(), h)) ws.push_back(nu);
  }
  std::ostringstream os;
  for (const Weight& nu : ws) {
    GramData g = f.gram(nu);
    os << "# weight " << wname(nu, names) << ", rank " << g.rank << ", kernel " << g.kernel.size() << "\n";
    os << f.gram_csv(g, names);
    for (const FreeElement& k : g.kernel) os << "# kernel: " << k.str(names) << "\n";
  }
  emit(c, os.str());
  return 0;
}

int cmd_pairings(const Config& c) {
  FoldedDatum fd = load(c);
  auto names = orbit_names(fd);
  ModCat mc(fd);
  bool ok = true;
  json rep = json::array();
  std::ostringstream os;
  for (int j = 0; j < fd.folded.size(); ++j) {
    PairingReport p = pair_proj_proj(mc, {j}, {j}, c.prec);
    LaurentScalar want;
    const int jj = fd.folded.dot[j][j];
    for (int k = 0; k <= c.prec; k += jj) want += LaurentScalar::qpow(k);
    bool pass = p.stable && p.value == SeriesScalar::from_laurent(want, c.prec);
    ok = ok && pass;
    os << "(P(" << names[j] << "),P(" << names[j] << ")) = " << compact(p.value.truncated().str()) << " + O(q^"
       << c.prec + 1 << ") " << (pass ? "PASS" : "FAIL") << "\n";
    rep.push_back({{"check", "one-colour pairing"},
                   {"orbit", names[j]},
                   {"precision", c.prec},
                   {"trunc", p.trunc},
                   {"trunc_check", p.trunc_check},
                   {"stable", p.stable},
                   {"series", series_json(p.value)},
                   {"pass", pass}});
  }
  for (int j = 0; j < fd.folded.size(); ++j) {
    std::vector<std::pair<int, int>> mn = {{1, 1}};
    if (fd.orbits[j].size() <= 2) mn.push_back({1, 2});
    for (auto [m, n] : mn) {
      IdentityReport r = qbinomial_identity_check(mc, j, m, n);
      ok = ok && r.ok;
      os << "P(" << names[j] << ")^(" << m << ") P(" << names[j] << ")^(" << n << "): " << r.detail << " "
         << (r.ok ? "PASS" : "FAIL") << "\n";
      rep.push_back({{"check", "q-binomial"}, {"orbit", names[j]}, {"m", m}, {"n", n}, {"detail", r.detail}, {"pass", r.ok}});
    }
  }
  std::cout << os.str();
  if (!c.out.empty()) emit(c, rep.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_crystal(const Config& c) {
  FoldedDatum fd = load(c);
  auto names = orbit_names(fd);
  ModCat mc(fd);
  ModuleCrystal m = generate_crystal_simples(mc, c.height);
  CrystalGraph g = crystal_from_modules(m, fd);
  std::vector<int> seq = round_robin(g.rank, g.rank * (c.height + 1));
  if (!c.dot.empty()) {
    std::ofstream f(c.dot);
    if (!f) throw UsageError("cannot write " + c.dot);
    f << to_dot(g, seq, names);
  }
  bool ok = m.complete();
  std::ostringstream os;
  os << "vertices: " << g.size() << "\n";
  for (const auto& [nu, k] : m.counts()) {
    long want = graded_dim_f(fd.folded, nu);
    os << "  " << wname(nu, names) << ": " << k << (k == want ? "" : " (expected " + std::to_string(want) + ")") << "\n";
    ok = ok && k == want;
  }
  for (const Weight& nu : m.incomplete) os << "incomplete at " << wname(nu, names) << " (dimension cap)\n";
  CrystalReport ax = crystal_axioms_check(g);
  CrystalReport cr = criterion_check(g);
  os << "axioms: " << (ax.ok() ? "PASS" : "FAIL") << " (" << ax.checked << " instances)\n";
  for (const auto& s : ax.failures) os << "  " << s << "\n";
  os << "criterion: " << (cr.ok() ? "PASS" : "FAIL") << " (height " << c.height << ")\n";
  for (const auto& s : cr.failures) os << "  " << s << "\n";
  os << "iota injective: " << (iota_injective(g, seq) ? "yes" : "no") << "\n";
  ok = ok && ax.ok() && cr.ok();
  emit(c, os.str());
  return ok ? 0 : 1;
}

int cmd_verify(const Config& c) {
  AcceptanceOptions opt;
  opt.data_dir = c.data_dir;
  opt.pairing_precision = c.prec;
  std::vector<int> ids;
  if (c.suite != "all") {
    std::stringstream ss(c.suite);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int id = 0;
      try {
        id = std::stoi(tok);
      } catch (...) {
        throw UsageError("bad --suite " + c.suite);
      }
      if (id < 1 || id > acceptance_count()) throw UsageError("no criterion " + tok);
      ids.push_back(id);
    }
  }
  json rep = json::array();
  bool ok = true;
  run_acceptance(ids, opt, [&](const CriterionResult& r) {
    ok = ok && r.pass;
    std::cout << format_result(r) << std::endl;
    rep.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  });
  if (!c.out.empty()) emit(c, rep.dump(2) + "\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for folded KLR algebras"};
  app.require_subcommand(1);
  Config c;
  auto add_common = [&](CLI::App* s, bool input) {
    if (input) s->add_option("--input", c.input, "datum JSON file")->required();
    s->add_option("--out", c.out, "output file");
  };
  auto* fold_cmd = app.add_subcommand("fold", "print the folded Cartan datum");
  add_common(fold_cmd, true);
  auto* dims_cmd = app.add_subcommand("dims", "free dimension, Gram rank and product formula per weight");
  add_common(dims_cmd, true);
  dims_cmd->add_option("--height", c.height, "height cap")->check(CLI::PositiveNumber);
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrices as CSV with kernels");
  add_common(gram_cmd, true);
  gram_cmd->add_option("--height", c.height, "height cap")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--weight", c.weight, "single weight, e.g. 2,1");
  auto* pair_cmd = app.add_subcommand("pairings", "projective pairings and q-binomial checks");
  add_common(pair_cmd, true);
  pair_cmd->add_option("--prec", c.prec, "series precision")->check(CLI::PositiveNumber);
  auto* crys_cmd = app.add_subcommand("crystal", "generate the module crystal and check the criterion");
  add_common(crys_cmd, true);
  crys_cmd->add_option("--height", c.height, "height cap")->check(CLI::PositiveNumber);
  crys_cmd->add_option("--dot", c.dot, "write the crystal graph as DOT");
  auto* ver_cmd = app.add_subcommand("verify", "run the acceptance suite");
  add_common(ver_cmd, false);
  ver_cmd->add_option("--suite", c.suite, "criteria, e.g. 1,2,6 (default all)");
  ver_cmd->add_option("--prec", c.prec, "precision for criterion 1")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--data", c.data_dir, "directory with the bundled data files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*fold_cmd) return cmd_fold(c);
    if (*dims_cmd) return cmd_dims(c);
    if (*gram_cmd) return cmd_gram(c);
    if (*pair_cmd) return cmd_pairings(c);
    if (*crys_cmd) return cmd_crystal(c);
    if (*ver_cmd) return cmd_verify(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
