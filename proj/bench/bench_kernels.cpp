// Times the serial reference kernels against the OpenMP variants.
#include <chrono>
#include <cstdio>
#include <random>

#include "klrfold/linalg.hpp"

using namespace klrfold;
using namespace klrfold::linalg;

namespace {

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  std::mt19937_64 g(1);
  const int n = 600;
  Dense d(n, n);
  for (auto& x : d.a) x = g() % Fp::modulus();
  Sparse s;
  s.rows = 200000;
  for (int c = 0; c < 200000; ++c) s.push_column({{static_cast<std::uint32_t>(g() % 200000), 3}, {static_cast<std::uint32_t>(c), 1}});
  Vec v(200000, 5);
  for (Exec e : {Exec::serial, Exec::parallel}) {
    const char* name = e == Exec::serial ? "serial" : "parallel";
    Dense a = d;
    std::printf("%-8s rref %dx%d: %.3fs\n", name, n, n, seconds([&] { rref(a, e); }));
    std::printf("%-8s multiply %dx%d: %.3fs\n", name, n, n, seconds([&] { multiply(d, d, e); }));
    std::printf("%-8s sparse apply 200000: %.3fs\n", name, seconds([&] { for (int i = 0; i < 10; ++i) apply(s, v, e); }));
  }
}
