#include "klrfold/cartan.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "json.hpp"
#include "klrfold/errors.hpp"

namespace klrfold {

int CartanDatum::pair(const Weight& a, const Weight& b) const {
  int s = 0;
  for (int i = 0; i < size(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < size(); ++j) s += a[i] * b[j] * dot[i][j];
  }
  return s;
}

int CartanDatum::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw DomainError("unknown vertex label '" + label + "'");
  return static_cast<int>(it - labels.begin());
}

CartanDatum CartanDatum::simply_laced(const std::vector<std::string>& labels,
                                      const std::vector<std::pair<int, int>>& edges) {
  CartanDatum d;
  d.labels = labels;
  int n = static_cast<int>(labels.size());
  d.dot.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) d.dot[i][i] = 2;
  for (auto [a, b] : edges) d.dot[a][b] = d.dot[b][a] = -1;
  return d;
}

CartanDatum CartanDatum::type_A(int rank) {
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < rank; ++i) {
    labels.push_back(std::to_string(i + 1));
    if (i > 0) edges.emplace_back(i - 1, i);
  }
  return simply_laced(labels, edges);
}

CartanDatum CartanDatum::type_D4() {
  return simply_laced({"1", "2", "3", "4"}, {{0, 1}, {1, 2}, {1, 3}});
}

int DiagramAut::order() const {
  int n = static_cast<int>(perm.size());
  int ord = 1;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int k = i; !seen[k]; k = perm[k]) {
      seen[k] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

int DiagramAut::inverse(int i) const {
  return static_cast<int>(std::find(perm.begin(), perm.end(), i) - perm.begin());
}

DiagramAut DiagramAut::identity(int n) {
  DiagramAut a;
  a.perm.resize(n);
  std::iota(a.perm.begin(), a.perm.end(), 0);
  return a;
}

ValidationReport validate(const CartanDatum& d) {
  ValidationReport r;
  int n = d.size();
  if (static_cast<int>(d.dot.size()) != n) {
    r.failures.push_back("dot matrix has wrong number of rows");
    return r;
  }
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(d.dot[i].size()) != n) {
      r.failures.push_back("dot matrix row " + std::to_string(i) + " has wrong length");
      return r;
    }
  std::set<std::string> uniq(d.labels.begin(), d.labels.end());
  if (static_cast<int>(uniq.size()) != n) r.failures.push_back("duplicate vertex labels");
  for (int i = 0; i < n; ++i) {
    int ii = d.dot[i][i];
    if (ii <= 0 || ii % 2 != 0)
      r.failures.push_back("i.i must be a positive even integer at " + d.labels[i]);
    for (int j = 0; j < n; ++j) {
      if (d.dot[i][j] != d.dot[j][i])
        r.failures.push_back("form not symmetric at (" + d.labels[i] + "," + d.labels[j] + ")");
      if (i != j && ii > 0 && ii % 2 == 0) {
        int v = 2 * d.dot[i][j];
        if (v > 0 || v % ii != 0)
          r.failures.push_back("2(i.j)/(i.i) not a nonpositive integer at (" + d.labels[i] + "," +
                               d.labels[j] + ")");
      }
    }
  }
  return r;
}

ValidationReport validate(const CartanDatum& d, const DiagramAut& a) {
  ValidationReport r = validate(d);
  if (!r.ok()) return r;
  int n = d.size();
  if (static_cast<int>(a.perm.size()) != n) {
    r.failures.push_back("automorphism has wrong length");
    return r;
  }
  std::vector<int> sorted(a.perm);
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i) {
      r.failures.push_back("automorphism is not a permutation");
      return r;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d.dot[a(i)][a(j)] != d.dot[i][j])
        r.failures.push_back("automorphism does not preserve i.j at (" + d.labels[i] + "," +
                             d.labels[j] + ")");
  for (int i = 0; i < n; ++i)
    for (int k = a(i); k != i; k = a(k))
      if (d.dot[i][k] != 0)
        r.failures.push_back("orbit not orthogonal: " + d.labels[i] + "." + d.labels[k] + " = " +
                             std::to_string(d.dot[i][k]));
  return r;
}

Weight FoldedDatum::lift(const Weight& nu_j) const {
  Weight w(base.size(), 0);
  for (size_t j = 0; j < orbits.size(); ++j)
    for (int i : orbits[j]) w[i] += nu_j[j];
  return w;
}

Weight FoldedDatum::descend(const Weight& nu_i) const {
  Weight w(orbits.size(), 0);
  for (size_t j = 0; j < orbits.size(); ++j) {
    w[j] = nu_i[orbits[j][0]];
    for (int i : orbits[j])
      if (nu_i[i] != w[j]) throw DomainError("weight is not a-stable");
  }
  return w;
}

FoldedDatum fold(const CartanDatum& datum, const DiagramAut& aut) {
  ValidationReport rep = validate(datum, aut);
  if (!rep.ok()) throw ValidationError("invalid datum: " + rep.failures.front());
  FoldedDatum f;
  f.base = datum;
  f.aut = aut;
  int n = datum.size();
  f.orbit_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (f.orbit_of[i] >= 0) continue;
    std::vector<int> orb;
    for (int k = i; f.orbit_of[k] < 0; k = aut(k)) {
      f.orbit_of[k] = static_cast<int>(f.orbits.size());
      orb.push_back(k);
    }
    std::sort(orb.begin(), orb.end());
    f.orbits.push_back(orb);
  }
  int m = static_cast<int>(f.orbits.size());
  f.folded.dot.assign(m, std::vector<int>(m, 0));
  for (int j = 0; j < m; ++j) {
    if (f.orbits[j].size() == 1) {
      f.folded.labels.push_back(datum.labels[f.orbits[j][0]]);
    } else {
      std::string lab = "(";
      for (size_t k = 0; k < f.orbits[j].size(); ++k)
        lab += (k ? "," : "") + datum.labels[f.orbits[j][k]];
      f.folded.labels.push_back(lab + ")");
    }
    for (int k = 0; k < m; ++k)
      for (int a : f.orbits[j])
        for (int b : f.orbits[k]) f.folded.dot[j][k] += datum.dot[a][b];
  }
  ValidationReport frep = validate(f.folded);
  if (!frep.ok()) throw ValidationError("folded datum invalid: " + frep.failures.front());
  return f;
}

LoadedDatum load_datum_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.contains("I") || !j.contains("dot"))
    throw ValidationError("datum JSON needs keys \"I\" and \"dot\"");
  LoadedDatum out;
  try {
    for (const auto& l : j["I"])
      out.datum.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    out.datum.dot = j["dot"].get<std::vector<std::vector<int>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad datum JSON: ") + e.what());
  }
  int n = out.datum.size();
  if (!j.contains("aut") || j["aut"].is_null()) {
    out.aut = DiagramAut::identity(n);
  } else {
    for (const auto& x : j["aut"]) {
      if (x.is_string()) out.aut.perm.push_back(out.datum.index_of(x.get<std::string>()));
      else if (x.is_number_integer()) {
        // integer entries are labels when the labels are the integers 1..n
        std::string s = std::to_string(x.get<int>());
        auto it = std::find(out.datum.labels.begin(), out.datum.labels.end(), s);
        if (it != out.datum.labels.end())
          out.aut.perm.push_back(static_cast<int>(it - out.datum.labels.begin()));
        else
          out.aut.perm.push_back(x.get<int>());
      } else {
        throw ValidationError("aut entries must be labels or integers");
      }
    }
  }
  return out;
}

LoadedDatum load_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_datum_json(ss.str());
}

int height(const Weight& nu) { return std::accumulate(nu.begin(), nu.end(), 0); }

Weight content(const Seq& s, int nverts) {
  Weight w(nverts, 0);
  for (int i : s) ++w[i];
  return w;
}

std::vector<Seq> seq_enumerate(const Weight& nu, int limit) {
  if (height(nu) > limit) throw SizeError("sequence enumeration beyond height limit");
  Seq s;
  for (size_t i = 0; i < nu.size(); ++i)
    for (int k = 0; k < nu[i]; ++k) s.push_back(static_cast<int>(i));
  std::vector<Seq> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

bool is_finite_type(const CartanDatum& d) {
  int n = d.size();
  // Bareiss elimination; leading principal minors must all be positive.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = d.dot[i][j];
  mpz_class prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return true;
}

std::vector<Root> positive_roots(const CartanDatum& d, int height_bound) {
  if (!is_finite_type(d)) throw UnsupportedTypeError("positive roots requested for a non-finite type");
  int n = d.size();
  std::set<Weight> roots;
  std::vector<Weight> queue;
  for (int i = 0; i < n; ++i) {
    Weight w(n, 0);
    w[i] = 1;
    roots.insert(w);
    queue.push_back(w);
  }
  while (!queue.empty()) {
    Weight b = queue.back();
    queue.pop_back();
    for (int j = 0; j < n; ++j) {
      int pj = 0;
      for (int i = 0; i < n; ++i) pj += b[i] * d.dot[i][j];
      int coef = 2 * pj / d.dot[j][j];
      Weight r = b;
      r[j] -= coef;
      if (r[j] < 0) continue;  // only the simple root itself maps to a negative root
      if (roots.insert(r).second) queue.push_back(r);
    }
  }
  std::vector<Root> out;
  for (const auto& r : roots)
    if (height(r) <= height_bound) out.push_back({r, 1});
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    int ha = height(a.alpha), hb = height(b.alpha);
    if (ha != hb) return ha < hb;
    return a.alpha > b.alpha;
  });
  return out;
}

long graded_dim_f(const CartanDatum& d, const Weight& nu) {
  std::vector<Root> roots = positive_roots(d, height(nu));
  // Coefficient of t^nu in prod (1 - t^alpha)^{-1}; table over the box below nu.
  int n = d.size();
  std::vector<int> stride(n + 1, 1);
  for (int i = 0; i < n; ++i) stride[i + 1] = stride[i] * (nu[i] + 1);
  std::vector<long> table(stride[n], 0);
  table[0] = 1;
  for (const Root& r : roots) {
    bool fits = true;
    for (int i = 0; i < n; ++i) fits &= r.alpha[i] <= nu[i];
    if (!fits) continue;
    int shift = 0;
    for (int i = 0; i < n; ++i) shift += r.alpha[i] * stride[i];
    for (int idx = 0; idx < stride[n]; ++idx) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = (idx / stride[i]) % (nu[i] + 1) >= r.alpha[i];
      if (ok) table[idx] += table[idx - shift];
    }
  }
  return table[stride[n] - 1];
}

std::vector<Weight> weights_of_height(int nverts, int h) {
  std::vector<Weight> out;
  Weight w(nverts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nverts - 1) {
      w[i] = left;
      out.push_back(w);
      return;
    }
    for (int k = left; k >= 0; --k) {
      w[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (nverts > 0) rec(0, h);
  return out;
}

std::string weight_str(const CartanDatum& d, const Weight& nu) {
  std::string s;
  for (int i = 0; i < d.size(); ++i) {
    if (nu[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (nu[i] != 1) s += std::to_string(nu[i]);
    s += d.labels[i];
  }
  return s.empty() ? "0" : s;
}

std::string seq_str(const CartanDatum& d, const Seq& s) {
  std::string out;
  for (size_t k = 0; k < s.size(); ++k) out += (k ? " " : "") + d.labels[s[k]];
  return out;
}

}  // namespace klrfold
