// Command-line front end. Talks to the engine only through the C interface.

#include <gcdpst/gcdpst.h>

#include <cstdio>
#include <iostream>
#include <memory>
#include <numbers>
#include <string>

#include "CLI11.hpp"

namespace {

struct CliFailure {
  gcdpst_status status;
};

void check(gcdpst_status status) {
  if (status != GCDPST_OK) throw CliFailure{status};
}

int exit_code(gcdpst_status status) {
  switch (status) {
    case GCDPST_OK: return 0;
    case GCDPST_PARSE_ERROR:
    case GCDPST_INVALID_ARGUMENT:
    case GCDPST_PRECONDITION: return 2;
    case GCDPST_RESOURCE_CAP: return 3;
    default: return 1;
  }
}

struct StringDeleter {
  void operator()(char* s) const { gcdpst_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct RingDeleter {
  void operator()(gcdpst_ring* r) const { gcdpst_ring_free(r); }
};
struct GraphDeleter {
  void operator()(gcdpst_graph* g) const { gcdpst_graph_free(g); }
};
using RingHandle = std::unique_ptr<gcdpst_ring, RingDeleter>;
using GraphHandle = std::unique_ptr<gcdpst_graph, GraphDeleter>;

RingHandle open_ring(const std::string& text, std::uint32_t cap) {
  gcdpst_ring* r = nullptr;
  check(gcdpst_ring_new(text.c_str(), cap, &r));
  return RingHandle(r);
}

GraphHandle open_graph(const gcdpst_ring* ring, const std::string& divisors) {
  gcdpst_graph* g = nullptr;
  check(gcdpst_graph_new(ring, divisors.c_str(), &g));
  return GraphHandle(g);
}

template <class F>
void emit(F&& call) {
  char* out = nullptr;
  check(call(&out));
  OwnedString owned(out);
  std::fputs(owned.get(), stdout);
  std::size_t n = std::char_traits<char>::length(owned.get());
  if (n == 0 || owned.get()[n - 1] != '\n') std::fputc('\n', stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and perfect state transfer on gcd-graphs over finite commutative rings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gcdpst_version()));

  std::uint32_t order_cap = 0;
  app.add_option("--order-cap", order_cap, "Largest ring order accepted (default 65536)");

  std::string ring_text, divisors, target;
  bool json = false, table = false, verify = false;

  auto* describe = app.add_subcommand("describe-ring", "Ring encoding, psi, ideals and local factors as JSON");
  describe->add_option("--ring", ring_text, "Ring expression")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue of every element and the characteristic polynomial");
  spectrum->add_option("--ring", ring_text, "Ring expression")->required();
  spectrum->add_option("--divisors", divisors, "Comma-separated ideal generators, R for the unit ideal")->required();
  auto* json_flag = spectrum->add_flag("--json", json, "JSON output (default)");
  spectrum->add_flag("--table", table, "Plain-text table")->excludes(json_flag);

  auto* pst = app.add_subcommand("pst", "Decide perfect state transfer from vertex 0");
  pst->add_option("--ring", ring_text, "Ring expression")->required();
  pst->add_option("--divisors", divisors, "Comma-separated ideal generators, R for the unit ideal")->required();
  pst->add_option("--target", target, "Fixed partner of 0 (default: search all candidates)");
  pst->add_flag("--verify", verify, "Also check the reported times with the numeric walk amplitude");

  std::uint64_t q = 0;
  std::string poly;
  auto* unitary = app.add_subcommand("unitary", "Classify transfer on the unitary graph");
  auto* unitary_ring = unitary->add_option("--ring", ring_text, "Ring expression");
  auto* unitary_q = unitary->add_option("--q", q, "Field order for F_q[x]/(f)");
  unitary->add_option("--poly", poly, "Monic f in the variable x")->needs(unitary_q);
  unitary_q->excludes(unitary_ring);

  std::uint32_t max_divisors = 3, jobs = 1;
  std::uint64_t subset_cap = 0;
  auto* scan = app.add_subcommand("scan", "Enumerate divisor sets of a local ring with residue field F_2 (JSON lines)");
  scan->add_option("--ring", ring_text, "Ring expression")->required();
  scan->add_option("--max-divisors", max_divisors, "Largest divisor set size")->check(CLI::PositiveNumber);
  scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_option("--cap", subset_cap, "Largest number of divisor sets (default 1048576)");

  auto* golden = app.add_subcommand("verify-golden", "Run the built-in reference checks");
  golden->add_flag("--json", json, "JSON report");

  double step = std::numbers::pi / 1024;
  std::uint32_t steps = 4096;
  auto* sweep = app.add_subcommand("sweep", "Walk amplitude F(t)_{0,s} on a time grid (CSV)");
  sweep->add_option("--ring", ring_text, "Ring expression")->required();
  sweep->add_option("--divisors", divisors, "Comma-separated ideal generators")->required();
  sweep->add_option("--target", target, "Element s")->required();
  sweep->add_option("--step", step, "Grid step in radians (default pi/1024)");
  sweep->add_option("--steps", steps, "Number of steps");

  auto* edges = app.add_subcommand("edges", "Edge list as CSV of element indices");
  edges->add_option("--ring", ring_text, "Ring expression")->required();
  edges->add_option("--divisors", divisors, "Comma-separated ideal generators")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*describe) {
      RingHandle ring = open_ring(ring_text, order_cap);
      emit([&](char** out) { return gcdpst_ring_describe(ring.get(), out); });
    } else if (*spectrum) {
      RingHandle ring = open_ring(ring_text, order_cap);
      GraphHandle graph = open_graph(ring.get(), divisors);
      if (table) emit([&](char** out) { return gcdpst_graph_spectrum_table(graph.get(), out); });
      else emit([&](char** out) { return gcdpst_graph_spectrum(graph.get(), out); });
    } else if (*pst) {
      RingHandle ring = open_ring(ring_text, order_cap);
      GraphHandle graph = open_graph(ring.get(), divisors);
      const char* t = pst->count("--target") ? target.c_str() : nullptr;
      emit([&](char** out) { return gcdpst_graph_pst(graph.get(), t, verify ? 1 : 0, out); });
    } else if (*unitary) {
      if (unitary->count("--q")) {
        if (poly.empty()) {
          std::cerr << "error: --poly is required with --q\n";
          return 2;
        }
        emit([&](char** out) { return gcdpst_unitary_poly(q, poly.c_str(), out); });
      } else {
        if (ring_text.empty()) {
          std::cerr << "error: give --ring or --q with --poly\n";
          return 2;
        }
        RingHandle ring = open_ring(ring_text, order_cap);
        emit([&](char** out) { return gcdpst_ring_unitary(ring.get(), out); });
      }
    } else if (*scan) {
      RingHandle ring = open_ring(ring_text, order_cap);
      emit([&](char** out) { return gcdpst_ring_scan(ring.get(), max_divisors, subset_cap, jobs, out); });
    } else if (*golden) {
      int passed = 0;
      char* js = nullptr;
      char* text = nullptr;
      check(gcdpst_verify_golden(1, &passed, &js, &text));
      OwnedString js_owned(js), text_owned(text);
      std::fputs(json ? js : text, stdout);
      if (json) std::fputc('\n', stdout);
      return passed ? 0 : 1;
    } else if (*sweep) {
      RingHandle ring = open_ring(ring_text, order_cap);
      GraphHandle graph = open_graph(ring.get(), divisors);
      emit([&](char** out) { return gcdpst_graph_amplitude_csv(graph.get(), target.c_str(), step, steps, out); });
    } else if (*edges) {
      RingHandle ring = open_ring(ring_text, order_cap);
      GraphHandle graph = open_graph(ring.get(), divisors);
      emit([&](char** out) { return gcdpst_graph_edges_csv(graph.get(), out); });
    }
  } catch (const CliFailure& f) {
    std::cerr << "error (" << gcdpst_status_string(f.status) << "): " << gcdpst_last_error() << '\n';
    return exit_code(f.status);
  }
  return 0;
}
