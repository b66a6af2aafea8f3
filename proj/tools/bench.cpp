// Wall-clock comparison of the serial reference kernels against their
// OpenMP-partitioned twins on fixed workloads.

#include <chrono>
#include <cstdio>

#include "adl/dvr_oracle.hpp"
#include "adl/newton.hpp"

using namespace adl;

namespace {

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");
  std::printf("threads available: %d\n", hardware_threads());

  {
    auto f = get_field(2, 2);
    LaurentMatrix b = superbasic_block(f, 2, 1);
    size_t ns = 0, np = 0;
    double ts = time_ms([&] { ns = adlv_enumerate(2, {2, -1}, b, 3, 16, 500000000, Exec::serial).classes.size(); });
    double tp = time_ms([&] { np = adlv_enumerate(2, {2, -1}, b, 3, 16, 500000000, Exec::parallel).classes.size(); });
    if (ns != np) {
      std::printf("adlv results differ between modes!\n");
      return 1;
    }
    row("adlv window scan (GL_2, w=3, F_4)", ts, tp);
  }
  {
    auto f = get_field(2, 1);
    LaurentMatrix b = block_diag({superbasic_block(f, 2, 1), superbasic_block(f, 1, 0)});
    size_t ns = 0, np = 0;
    double ts = time_ms([&] { ns = adlv_enumerate(3, {1, 0, 0}, b, 2, 16, 500000000, Exec::serial).classes.size(); });
    double tp = time_ms([&] { np = adlv_enumerate(3, {1, 0, 0}, b, 2, 16, 500000000, Exec::parallel).classes.size(); });
    if (ns != np) {
      std::printf("adlv results differ between modes!\n");
      return 1;
    }
    row("adlv window scan (GL_3, w=2, F_2)", ts, tp);
  }
  {
    auto rd = build_root_datum("C", 3, "sc");
    std::vector<int> perm{0, 1, 2};
    SigmaAction id = validate_sigma(*rd, perm);
    double ts, tp;
    size_t ns, np;
    {
      PmuCache cache;
      ts = time_ms([&] { ns = converse_scan(rd, id, {}, Rat(5), cache, 5000000, Exec::serial).nu_checked; });
    }
    {
      PmuCache cache;
      tp = time_ms([&] { np = converse_scan(rd, id, {}, Rat(5), cache, 5000000, Exec::parallel).nu_checked; });
    }
    if (ns != np) {
      std::printf("scan results differ between modes!\n");
      return 1;
    }
    row("converse scan (C_3, height 5)", ts, tp);
  }
  {
    auto rd = build_root_datum("D", 4, "sc");
    Vec mu{2, 1, 1, 0};
    double ts, tp;
    size_t ns, np;
    ts = time_ms([&] { ns = enumerate_Pmu(rd, mu, 5000000, Exec::serial).elements.size(); });
    tp = time_ms([&] { np = enumerate_Pmu(rd, mu, 5000000, Exec::parallel).elements.size(); });
    if (ns != np) {
      std::printf("P_mu results differ between modes!\n");
      return 1;
    }
    row("P_mu enumeration (D_4)", ts, tp);
  }
  return 0;
}
