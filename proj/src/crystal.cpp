#include "klrfold/crystal.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "klrfold/errors.hpp"
#include "klrfold/modcat.hpp"

namespace klrfold {

namespace {

constexpr int kNone = CrystalGraph::kNone;

std::string vname(const CrystalGraph& g, int b) { return g.label.empty() || g.label[b].empty() ? "#" + std::to_string(b) : g.label[b]; }

}  // namespace

int CrystalGraph::height(int b) const { return std::accumulate(nu[b].begin(), nu[b].end(), 0); }

int CrystalGraph::pairing(int b, int i) const {
  int v = base_pairing.empty() ? 0 : base_pairing[i];
  for (int j = 0; j < rank; ++j) v -= cartan[i][j] * nu[b][j];
  return v;
}

void CrystalGraph::invert_edges() {
  e.assign(size(), std::vector<int>(rank, kNone));
  e_star.assign(size(), std::vector<int>(rank, kNone));
  for (int b = 0; b < size(); ++b)
    for (int i = 0; i < rank; ++i) {
      if (f[b][i] != kNone && e[f[b][i]][i] == kNone) e[f[b][i]][i] = b;
      if (f_star[b][i] != kNone && e_star[f_star[b][i]][i] == kNone) e_star[f_star[b][i]][i] = b;
    }
}

// ---------------------------------------------------------------- B_t

bool bt_valid(const BtElement& x, int t) {
  if (x.a < 0 || x.b < 0 || x.c < 0 || t < 0) return false;
  if (x.a + x.b + x.c == t) return true;
  // Second branch; a + b >= t keeps exactly the part generated from (0,0,t).
  return x.c == 0 && std::abs(x.a - x.b) <= t && (t - std::abs(x.a - x.b)) % 2 == 0 && x.a + x.b >= t;
}

bool bt_apply(BtOp op, const BtElement& x, int t, BtElement& out) {
  switch (op) {
    case BtOp::f:
      out = x.c > 0 ? BtElement{x.a + 1, x.b, x.c - 1} : BtElement{x.a + 1, x.b + 1, 0};
      return true;
    case BtOp::f_star:
      out = x.c > 0 ? BtElement{x.a, x.b + 1, x.c - 1} : BtElement{x.a + 1, x.b + 1, 0};
      return true;
    case BtOp::e:
      if (x.a == 0) return false;
      out = x.a + x.b + x.c == t ? BtElement{x.a - 1, x.b, x.c + 1} : BtElement{x.a - 1, x.b - 1, 0};
      return true;
    case BtOp::e_star:
      if (x.b == 0) return false;
      out = x.a + x.b + x.c == t ? BtElement{x.a, x.b - 1, x.c + 1} : BtElement{x.a - 1, x.b - 1, 0};
      return true;
  }
  return false;
}

int bt_eps(const BtElement& x) { return x.a; }
int bt_eps_star(const BtElement& x) { return x.b; }
int bt_depth(const BtElement& x, int t) { return (x.a + x.b + t - x.c) / 2; }

CrystalGraph bt_graph(int t, int max_depth) {
  if (t < 0 || max_depth < 0) throw DomainError("B_t needs t, depth >= 0");
  std::vector<BtElement> elems;
  const int lim = 2 * max_depth + t;
  for (int a = 0; a <= lim; ++a)
    for (int b = 0; b <= lim; ++b)
      for (int c = 0; c <= t; ++c) {
        BtElement x{a, b, c};
        if (bt_valid(x, t) && bt_depth(x, t) <= max_depth) elems.push_back(x);
      }
  std::sort(elems.begin(), elems.end(), [&](const BtElement& x, const BtElement& y) {
    return std::make_pair(bt_depth(x, t), x) < std::make_pair(bt_depth(y, t), y);
  });
  std::map<BtElement, int> idx;
  for (size_t k = 0; k < elems.size(); ++k) idx[elems[k]] = static_cast<int>(k);
  CrystalGraph g;
  g.rank = 1;
  g.cartan = {{2}};
  g.base_pairing = {t};
  g.max_height = max_depth;
  const int n = static_cast<int>(elems.size());
  g.f.assign(n, {kNone});
  g.f_star = g.e = g.e_star = g.f;
  for (int k = 0; k < n; ++k) {
    const BtElement& x = elems[k];
    std::ostringstream os;
    os << "(" << x.a << "," << x.b << "," << x.c << ")";
    g.label.push_back(os.str());
    g.nu.push_back({bt_depth(x, t)});
    g.eps.push_back({bt_eps(x)});
    g.eps_star.push_back({bt_eps_star(x)});
    auto link = [&](BtOp op, std::vector<std::vector<int>>& edges) {
      BtElement y;
      if (bt_apply(op, x, t, y) && idx.count(y)) edges[k][0] = idx[y];
    };
    if (bt_depth(x, t) < max_depth) {
      link(BtOp::f, g.f);
      link(BtOp::f_star, g.f_star);
    }
    link(BtOp::e, g.e);
    link(BtOp::e_star, g.e_star);
  }
  return g;
}

// ---------------------------------------------------------------- conversion

CrystalGraph crystal_from_modules(const ModuleCrystal& mc, const FoldedDatum& fd) {
  CrystalGraph g;
  g.rank = mc.rank;
  g.cartan.assign(g.rank, std::vector<int>(g.rank));
  for (int i = 0; i < g.rank; ++i)
    for (int j = 0; j < g.rank; ++j) g.cartan[i][j] = fd.folded.c(i, j);
  g.base_pairing.assign(g.rank, 0);
  g.max_height = mc.max_height;
  for (size_t b = 0; b < mc.v.size(); ++b) {
    g.label.push_back("");
    g.nu.push_back(mc.v[b].nu);
    g.eps.push_back(mc.v[b].eps);
    g.eps_star.push_back(mc.v[b].eps_star);
    auto conv = [](std::vector<int> row) {
      for (auto& x : row)
        if (x < 0) x = kNone;
      return row;
    };
    g.f.push_back(conv(mc.f[b]));
    g.f_star.push_back(conv(mc.f_star[b]));
  }
  g.invert_edges();
  return g;
}

// ---------------------------------------------------------------- checks

namespace {

void reachable_one(const CrystalGraph& g, bool star, CrystalReport& r) {
  const auto& F = star ? g.f_star : g.f;
  const char* tag = star ? "*" : "";
  // every vertex reachable from b0 by f
  std::vector<bool> seen(g.size(), false);
  std::queue<int> q;
  if (g.size()) {
    seen[0] = true;
    q.push(0);
  }
  while (!q.empty()) {
    int b = q.front();
    q.pop();
    for (int i = 0; i < g.rank; ++i)
      if (int x = F[b][i]; x != kNone && !seen[x]) {
        seen[x] = true;
        q.push(x);
      }
  }
  for (int b = 0; b < g.size(); ++b)
    if (!seen[b]) r.fail("highest weight" + std::string(tag) + ": " + vname(g, b) + " not reachable from b0");
}

void axioms_one(const CrystalGraph& g, bool star, CrystalReport& r) {
  const auto& F = star ? g.f_star : g.f;
  const auto& E = star ? g.e_star : g.e;
  const auto& EPS = star ? g.eps_star : g.eps;
  const char* tag = star ? "*" : "";
  auto phi = [&](int b, int i) { return EPS[b][i] + g.pairing(b, i); };
  for (int b = 0; b < g.size(); ++b)
    for (int i = 0; i < g.rank; ++i) {
      ++r.checked;
      if (int x = E[b][i]; x != kNone) {
        Weight w = g.nu[b];
        --w[i];
        if (g.nu[x] != w) r.fail("axiom 2" + std::string(tag) + ": weight of e_" + std::to_string(i) + vname(g, b));
        if (EPS[x][i] != EPS[b][i] - 1) r.fail("axiom 2" + std::string(tag) + ": eps of e_" + std::to_string(i) + vname(g, b));
        if (phi(x, i) != phi(b, i) + 1) r.fail("axiom 2" + std::string(tag) + ": phi of e_" + std::to_string(i) + vname(g, b));
        if (g.f_defined(x) && F[x][i] != b) r.fail("axiom 4" + std::string(tag) + ": f_" + std::to_string(i) + " e_" + std::to_string(i) + vname(g, b) + " != b");
      }
      if (int x = F[b][i]; x != kNone) {
        Weight w = g.nu[b];
        ++w[i];
        if (g.nu[x] != w) r.fail("axiom 3" + std::string(tag) + ": weight of f_" + std::to_string(i) + vname(g, b));
        if (EPS[x][i] != EPS[b][i] + 1) r.fail("axiom 3" + std::string(tag) + ": eps of f_" + std::to_string(i) + vname(g, b));
        if (phi(x, i) != phi(b, i) - 1) r.fail("axiom 3" + std::string(tag) + ": phi of f_" + std::to_string(i) + vname(g, b));
        if (E[x][i] != b) r.fail("axiom 4" + std::string(tag) + ": e_" + std::to_string(i) + " f_" + std::to_string(i) + vname(g, b) + " != b");
      }
      // highest weight: eps_i(b) = max{n : e_i^n b != 0}
      int n = 0;
      for (int x = E[b][i]; x != kNone; x = E[x][i]) ++n;
      if (n != EPS[b][i]) r.fail("highest weight" + std::string(tag) + ": eps_" + std::to_string(i) + vname(g, b) + " is not the e-string length");
    }
}

}  // namespace

CrystalReport crystal_axioms_check(const CrystalGraph& g) {
  CrystalReport r;
  axioms_one(g, false, r);
  axioms_one(g, true, r);
  return r;
}

CrystalReport criterion_check(const CrystalGraph& g) {
  CrystalReport r = crystal_axioms_check(g);
  if (g.size() == 0) {
    r.fail("empty graph");
    return r;
  }
  reachable_one(g, false, r);
  reachable_one(g, true, r);
  for (int i = 0; i < g.rank; ++i)
    if (g.nu[0][i] != 0 || (!g.base_pairing.empty() && g.base_pairing[i] != 0)) r.fail("b0 does not have weight 0");
  for (int b = 0; b < g.size(); ++b) {
    const bool one = g.f_defined(b);
    const bool two = g.height(b) + 2 <= g.max_height;
    for (int i = 0; i < g.rank; ++i) {
      ++r.checked;
      const std::string at = " at " + vname(g, b) + ", i=" + std::to_string(i);
      if (one && (g.f[b][i] == kNone || g.f_star[b][i] == kNone)) r.fail("(1) f or f* vanishes" + at);
      for (int j = 0; j < g.rank; ++j) {
        if (j == i || !two) continue;
        int fs = g.f_star[b][j], ff = g.f[b][i];
        if (fs == kNone || ff == kNone) continue;
        if (g.f[fs][i] != g.f_star[ff][j]) r.fail("(2) f_i f*_j != f*_j f_i" + at + ", j=" + std::to_string(j));
      }
      const int t = g.sl2_t(b, i);
      if (t < 0) r.fail("(3) eps + eps* + <wt, alpha^vee> < 0" + at);
      if (t == 0 && one && g.f[b][i] != g.f_star[b][i]) r.fail("(4) f != f*" + at);
      if (t >= 1 && one) {
        if (g.f[b][i] != kNone && g.eps_star[g.f[b][i]][i] != g.eps_star[b][i]) r.fail("(5) eps*(f b) != eps*(b)" + at);
        if (g.f_star[b][i] != kNone && g.eps[g.f_star[b][i]][i] != g.eps[b][i]) r.fail("(5) eps(f* b) != eps(b)" + at);
      }
      if (t >= 2 && two) {
        int a = g.f_star[b][i], c = g.f[b][i];
        if (a != kNone && c != kNone && g.f[a][i] != g.f_star[c][i]) r.fail("(6) f f* != f* f" + at);
      }
    }
  }
  return r;
}

CrystalReport efcommute_check(const CrystalGraph& g) {
  CrystalReport r;
  for (int b = 0; b < g.size(); ++b) {
    if (!g.f_defined(b)) continue;
    for (int i = 0; i < g.rank; ++i)
      for (int j = 0; j < g.rank; ++j) {
        ++r.checked;
        int fs = g.f_star[b][j];
        if (fs == kNone) {
          r.fail("f*_" + std::to_string(j) + " missing at " + vname(g, b));
          continue;
        }
        int lhs = g.e[fs][i];
        int eb = g.e[b][i];
        int rhs = eb == kNone ? kNone : g.f_star[eb][j];
        if (lhs != rhs && lhs != b)
          r.fail("e_" + std::to_string(i) + " f*_" + std::to_string(j) + vname(g, b) + " is neither f* e b nor b");
      }
  }
  return r;
}

CrystalReport estar_power_commute_check(const CrystalGraph& g) {
  CrystalReport r;
  auto power = [&](int b, int i, int c) {
    for (int k = 0; k < c && b != kNone; ++k) b = g.e_star[b][i];
    return b;
  };
  for (int b = 0; b < g.size(); ++b) {
    if (!g.f_defined(b)) continue;
    for (int i = 0; i < g.rank; ++i) {
      int fb = g.f[b][i];
      if (fb == kNone) continue;
      const int c = g.eps_star[b][i];
      if (g.eps_star[fb][i] != c) continue;
      ++r.checked;
      int lhs = power(fb, i, c);
      int low = power(b, i, c);
      int rhs = low == kNone ? kNone : g.f[low][i];
      if (lhs != rhs) r.fail("e*^c f b != f e*^c b at " + vname(g, b) + ", i=" + std::to_string(i));
    }
  }
  return r;
}

CrystalReport local_sl2_check(const CrystalGraph& g, int b, int j) {
  CrystalReport r;
  std::set<int> closure{b};
  std::vector<int> stack{b};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto* edges : {&g.f, &g.f_star, &g.e, &g.e_star}) {
      int y = (*edges)[x][j];
      if (y != kNone && closure.insert(y).second) stack.push_back(y);
    }
  }
  std::vector<int> tops;
  for (int x : closure)
    if (g.eps[x][j] == 0 && g.eps_star[x][j] == 0) tops.push_back(x);
  if (tops.size() != 1) {
    r.fail("closure of " + vname(g, b) + " has " + std::to_string(tops.size()) + " vertices with eps = eps* = 0");
    return r;
  }
  const int x0 = tops[0];
  const int t = g.sl2_t(x0, j);
  const int depth = g.max_height - g.height(x0);
  std::map<BtElement, int> image;
  auto triple = [&](int x) { return BtElement{g.eps[x][j], g.eps_star[x][j], g.sl2_t(x, j)}; };
  for (int x : closure) {
    ++r.checked;
    BtElement tx = triple(x);
    const std::string at = " at " + vname(g, x) + " (j=" + std::to_string(j) + ", t=" + std::to_string(t) + ")";
    if (!bt_valid(tx, t)) {
      r.fail("triple not in B_t" + at);
      continue;
    }
    if (bt_depth(tx, t) != g.height(x) - g.height(x0)) r.fail("depth mismatch" + at);
    if (!image.emplace(tx, x).second) r.fail("two vertices with the same triple" + at);
    const std::pair<BtOp, const std::vector<std::vector<int>>*> ops[] = {
        {BtOp::f, &g.f}, {BtOp::f_star, &g.f_star}, {BtOp::e, &g.e}, {BtOp::e_star, &g.e_star}};
    for (auto [op, edges] : ops) {
      bool is_f = op == BtOp::f || op == BtOp::f_star;
      if (is_f && !g.f_defined(x)) continue;
      BtElement ty;
      bool nz = bt_apply(op, tx, t, ty);
      int y = (*edges)[x][j];
      if (nz != (y != kNone)) {
        r.fail("edge presence differs from B_t" + at);
        continue;
      }
      if (nz && triple(y) != ty) r.fail("edge target differs from B_t" + at);
    }
  }
  CrystalGraph bt = bt_graph(t, std::max(depth, 0));
  if (bt.size() != static_cast<int>(closure.size()))
    r.fail("closure of " + vname(g, b) + " has " + std::to_string(closure.size()) + " vertices, truncated B_" + std::to_string(t) +
           " has " + std::to_string(bt.size()));
  return r;
}

CrystalReport local_sl2_check_all(const CrystalGraph& g) {
  CrystalReport r;
  for (int b = 0; b < g.size(); ++b)
    for (int j = 0; j < g.rank; ++j) {
      CrystalReport one = local_sl2_check(g, b, j);
      r.checked += one.checked;
      for (auto& f : one.failures) r.fail(f);
    }
  return r;
}

// ---------------------------------------------------------------- iota strings

std::vector<int> round_robin(int rank, int length) {
  std::vector<int> s(length);
  for (int k = 0; k < length; ++k) s[k] = k % rank;
  return s;
}

std::vector<int> iota_string(const CrystalGraph& g, int b, const std::vector<int>& jseq) {
  std::vector<int> out;
  for (int j : jseq) {
    if (b == 0) break;
    int c = g.eps[b][j];
    out.push_back(c);
    for (int k = 0; k < c; ++k) {
      b = g.e[b][j];
      if (b == kNone) throw DomainError("missing e-edge while computing an iota string");
    }
  }
  if (b != 0) throw DomainError("orbit sequence too short to reach the highest weight element");
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string iota_str(const std::vector<int>& c) {
  std::string s = "(";
  for (size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
  return s + (c.empty() ? "0,...)" : ",0,...)");
}

bool iota_injective(const CrystalGraph& g, const std::vector<int>& jseq) {
  std::set<std::vector<int>> seen;
  for (int b = 0; b < g.size(); ++b)
    if (!seen.insert(iota_string(g, b, jseq)).second) return false;
  return true;
}

std::string to_dot(const CrystalGraph& g, const std::vector<int>& jseq, const std::vector<std::string>& names) {
  static const char* colours[] = {"blue", "red", "darkgreen", "orange", "purple"};
  std::ostringstream os;
  os << "digraph crystal {\n  rankdir=TB;\n";
  for (int b = 0; b < g.size(); ++b) {
    os << "  v" << b << " [label=\"" << iota_str(iota_string(g, b, jseq)) << "\\nnu=(";
    for (int j = 0; j < g.rank; ++j) os << (j ? "," : "") << g.nu[b][j];
    os << ")\"];\n";
  }
  for (int b = 0; b < g.size(); ++b)
    for (int j = 0; j < g.rank; ++j) {
      const char* col = colours[j % 5];
      std::string nm = j < static_cast<int>(names.size()) ? names[j] : std::to_string(j);
      if (g.f[b][j] != kNone) os << "  v" << b << " -> v" << g.f[b][j] << " [color=" << col << ", label=\"" << nm << "\"];\n";
      if (g.f_star[b][j] != kNone)
        os << "  v" << b << " -> v" << g.f_star[b][j] << " [color=" << col << ", style=dashed, label=\"" << nm << "*\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace klrfold
