// Compares the serial and OpenMP execution of the sweep drivers: the grid
// mean-time trials and the worst-case placement search. Both paths must agree
// byte for byte; the table reports wall time and speedup.

#include <chrono>
#include <cstdio>
#include <string>

#include "relcomm/adversary.hpp"
#include "relcomm/experiment.hpp"
#include "relcomm/parallel.hpp"
#include "relcomm/scenarios.hpp"

using namespace relcomm;

namespace {

double seconds(std::chrono::steady_clock::time_point begin) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
}

template <typename Fn>
double timed(Fn&& fn) {
  const auto begin = std::chrono::steady_clock::now();
  fn();
  return seconds(begin);
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-24s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   identical %s\n", name,
              serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t runs = 400;
  if (argc > 1) runs = std::stoul(argv[1]);
  const int threads = hardware_threads();
  std::printf("threads available: %d\n", threads);

  {
    MeantimeSpec spec;
    spec.scenario.kind = ScenarioSpec::Kind::grid;
    spec.scenario.grid.steps = 3000;
    spec.runs = runs;
    spec.ks = {0, 1, 2};
    std::string serial_csv, parallel_csv;
    spec.threads = 1;
    const double t_serial = timed([&] { serial_csv = cmd_meantime_csv(spec); });
    spec.threads = threads;
    const double t_parallel = timed([&] { parallel_csv = cmd_meantime_csv(spec); });
    report("grid meantime", t_serial, t_parallel, serial_csv == parallel_csv);
  }

  {
    const TimeVaryingGraph g = grid_walk({6, 8, 600, 7, TickRate(1)});
    const NodeId p = g.nodes()[0], q = g.nodes()[1];
    WorstCaseOptions opts;
    std::string serial_text, parallel_text;
    opts.threads = 1;
    const double t_serial = timed(
        [&] { serial_text = worst_case_placement(g, p, q, 2, ProtocolMode::noncrypto, opts).text(g); });
    opts.threads = threads;
    const double t_parallel = timed(
        [&] { parallel_text = worst_case_placement(g, p, q, 2, ProtocolMode::noncrypto, opts).text(g); });
    report("placement search", t_serial, t_parallel, serial_text == parallel_text);
  }

  return 0;
}
