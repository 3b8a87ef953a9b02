#include <algorithm>
#include <numeric>

#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"

namespace klrfold {

int CrystalVertex::height() const { return std::accumulate(nu.begin(), nu.end(), 0); }

std::vector<int> ModuleCrystal::at_weight(const Weight& nu) const {
  std::vector<int> out;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i].nu == nu) out.push_back(static_cast<int>(i));
  return out;
}

std::map<Weight, int> ModuleCrystal::counts() const {
  std::map<Weight, int> out;
  for (const auto& x : v) ++out[x.nu];
  return out;
}

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

ModuleCrystal generate_crystal_simples(ModCat& mc, int max_height, long dim_cap) {
  if (max_height < 0) throw DomainError("height must be nonnegative");
  const FoldedDatum& fd = mc.folded();
  const int r = static_cast<int>(fd.orbits.size());
  ModuleCrystal g;
  g.rank = r;
  g.max_height = max_height;
  g.dim_cap = dim_cap;

  auto add_vertex = [&](Module m, Weight nu) {
    CrystalVertex x;
    x.ch = mc.character(m);
    x.nu = std::move(nu);
    for (int j = 0; j < r; ++j) {
      x.eps.push_back(mc.epsilon(m, j, false));
      x.eps_star.push_back(mc.epsilon(m, j, true));
    }
    x.mod = std::move(m);
    g.v.push_back(std::move(x));
    g.f.emplace_back(r, ModuleCrystal::kBeyond);
    g.f_star.emplace_back(r, ModuleCrystal::kBeyond);
    return static_cast<int>(g.v.size()) - 1;
  };
  auto twisted = [&](int i) -> const std::map<std::vector<int>, LaurentScalar>& {
    CrystalVertex& x = g.v[i];
    if (x.twisted.empty() && x.height() > 0) x.twisted = mc.twisted_character(x.mod);
    return x.twisted;
  };

  add_vertex(mc.unit(), Weight(r, 0));
  std::vector<int> frontier{0};
  for (int h = 0; h < max_height; ++h) {
    std::vector<int> next;
    for (int src : frontier)
      for (int j = 0; j < r; ++j)
        for (int star = 0; star < 2; ++star) {
          auto set = [&](int val) { (star ? g.f_star : g.f)[src][j] = val; };
          Weight nu = g.v[src].nu;
          ++nu[j];
          const int t = static_cast<int>(fd.orbits[j].size());
          const int m = g.v[src].mod.m;
          long induced = binom(m + t, t) * factorial(t) * g.v[src].mod.dim();
          if (induced > dim_cap) {
            set(ModuleCrystal::kSkipped);
            if (std::find(g.incomplete.begin(), g.incomplete.end(), nu) == g.incomplete.end()) g.incomplete.push_back(nu);
            continue;
          }
          Module fm = mc.f_op(g.v[src].mod, j, star != 0);
          Character ch = mc.character(fm);
          int found = -1;
          std::map<std::vector<int>, LaurentScalar> tw;
          for (int c : next) {
            if (g.v[c].ch != ch) continue;
            if (tw.empty()) tw = mc.twisted_character(fm);
            if (twisted(c) != tw) continue;
            found = c;
            break;
          }
          if (found >= 0) {
            const Module& other = g.v[found].mod;
            if (fm.dim() <= mc.dense_cap && other.dim() <= mc.dense_cap) {
              ++g.iso_checks;
              if (!mc.isomorphic(fm, other)) throw ValidationError("character identification contradicted by isomorphism test");
            }
            set(found);
            continue;
          }
          int id = add_vertex(std::move(fm), nu);
          if (!tw.empty()) g.v[id].twisted = std::move(tw);
          set(id);
          next.push_back(id);
        }
    frontier = std::move(next);
  }
  std::sort(g.incomplete.begin(), g.incomplete.end());
  return g;
}

}  // namespace klrfold
