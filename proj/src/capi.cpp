#include "gcdpst/gcdpst.h"

#include <cstring>
#include <iomanip>
#include <sstream>
#include <string>

#include "duality.hpp"
#include "error.hpp"
#include "gcd_graph.hpp"
#include "golden.hpp"
#include "ideal.hpp"
#include "numtheory.hpp"
#include "oracle.hpp"
#include "pst_engine.hpp"
#include "ring.hpp"
#include "spectra.hpp"

using namespace gcdpst;

struct gcdpst_ring {
  RingPtr ring;
};

struct gcdpst_graph {
  RingPtr ring;
  GcdGraph graph;
  Functional psi;
  Spectrum spectrum;
};

namespace {

thread_local std::string last_error;

template <class F>
gcdpst_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GCDPST_OK;
  } catch (const ParseError& e) {
    last_error = e.what();
    return GCDPST_PARSE_ERROR;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return GCDPST_INVALID_ARGUMENT;
  } catch (const PreconditionError& e) {
    last_error = e.what();
    return GCDPST_PRECONDITION;
  } catch (const ResourceCapError& e) {
    last_error = e.what();
    return GCDPST_RESOURCE_CAP;
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return GCDPST_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GCDPST_RESOURCE_CAP;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GCDPST_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be null");
}

std::string dump(const nlohmann::json& j) { return j.dump(2); }

Element parse_target(const Ring& R, const char* text) {
  Element s = R.parse_element(text);
  if (s == 0) throw InvalidArgument("target must be nonzero");
  return s;
}

nlohmann::json describe(const Ring& R) {
  nlohmann::json out = R.to_json();
  Functional psi = build_psi(R);
  out["psi"] = psi.to_json();
  out["local_factors"] = to_json(R, local_decomposition(R));
  out["jacobson_radical_size"] = jacobson_radical(R).size();
  if (R.order() <= 4096) {
    nlohmann::json ideals = nlohmann::json::array();
    for (const Ideal& I : nonzero_principal_ideals(R)) ideals.push_back(to_json(R, I));
    out["principal_ideals"] = ideals;
  }
  if (is_local(R)) {
    LocalFactorization dec = local_decomposition(R);
    if (dec.factors.front().residue_is_f2) {
      Element e = minimal_element(R);
      out["minimal_element"] = R.format(e);
      out["half_property"] = check_half_property(R, psi);
      nlohmann::json isoc = nlohmann::json::array();
      for (const Ideal& I : isoc2(R)) isoc.push_back(R.format(*I.generator));
      out["isoc2"] = isoc;
    }
  }
  return out;
}

std::string spectrum_table(const Ring& R, const Spectrum& spec) {
  nlohmann::json j = to_json(R, spec);
  std::ostringstream os;
  os << "lambda  mult  elements\n";
  for (const auto& g : j["groups"]) {
    os << std::setw(6) << g["eigenvalue"].get<std::int64_t>() << "  " << std::setw(4)
       << g["multiplicity"].get<std::size_t>() << "  ";
    bool first = true;
    for (const auto& e : g["elements"]) {
      os << (first ? "" : ", ") << e.get<std::string>();
      first = false;
    }
    os << '\n';
  }
  os << "characteristic polynomial: " << factored_char_poly(spec) << '\n';
  os << "expanded: " << char_poly(spec).to_string() << '\n';
  return os.str();
}

}  // namespace

extern "C" {

const char* gcdpst_version(void) { return "1.0.0"; }

const char* gcdpst_status_string(gcdpst_status status) {
  switch (status) {
    case GCDPST_OK: return "ok";
    case GCDPST_PARSE_ERROR: return "parse error";
    case GCDPST_INVALID_ARGUMENT: return "invalid argument";
    case GCDPST_PRECONDITION: return "precondition violated";
    case GCDPST_RESOURCE_CAP: return "resource cap exceeded";
    case GCDPST_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gcdpst_last_error(void) { return last_error.c_str(); }

void gcdpst_string_free(char* s) { delete[] s; }

gcdpst_status gcdpst_ring_new(const char* text, uint32_t order_cap, gcdpst_ring** out) {
  return guarded([&] {
    require(text, "ring text");
    require(out, "out");
    RingOptions options;
    if (order_cap != 0) options.order_cap = order_cap;
    *out = new gcdpst_ring{build_ring(std::string_view(text), options)};
  });
}

void gcdpst_ring_free(gcdpst_ring* ring) { delete ring; }

uint32_t gcdpst_ring_order(const gcdpst_ring* ring) { return ring ? ring->ring->order() : 0; }

gcdpst_status gcdpst_ring_describe(const gcdpst_ring* ring, char** json_out) {
  return guarded([&] {
    require(ring, "ring");
    require(json_out, "json_out");
    *json_out = copy_out(dump(describe(*ring->ring)));
  });
}

gcdpst_status gcdpst_ring_unitary(const gcdpst_ring* ring, char** json_out) {
  return guarded([&] {
    require(ring, "ring");
    require(json_out, "json_out");
    const Ring& R = *ring->ring;
    UnitaryClassification c = classify_unitary(R);
    GcdGraph G = unitary_graph(ring->ring);
    PstVerdict v = has_pst(G);
    if (c.pst != v.exists || (v.exists && c.target != v.target))
      throw InternalError("unitary classification disagrees with the solver");
    nlohmann::json out = to_json(c, R);
    out["ring"] = R.description();
    out["components"] = connected_components(G).count;
    out["solver"] = to_json(R, v);
    *json_out = copy_out(dump(out));
  });
}

gcdpst_status gcdpst_ring_scan(const gcdpst_ring* ring, uint32_t max_divisors, uint64_t subset_cap, uint32_t jobs,
                               char** jsonl_out) {
  return guarded([&] {
    require(ring, "ring");
    require(jsonl_out, "jsonl_out");
    ScanOptions options;
    options.max_divisors = max_divisors;
    if (subset_cap != 0) options.subset_cap = subset_cap;
    options.jobs = jobs == 0 ? 1 : jobs;
    ScanReport report = scan_divisor_sets(ring->ring, options);
    std::string out;
    for (const auto& row : report.rows) out += to_json(*ring->ring, row).dump() + '\n';
    nlohmann::json summary = {{"summary",
                               {{"ring", ring->ring->description()},
                                {"divisor_sets", report.rows.size()},
                                {"odd_parity", report.odd},
                                {"pst", report.pst},
                                {"counterexamples", report.counterexamples},
                                {"fast_path_disagreements", report.disagreements}}}};
    out += summary.dump() + '\n';
    *jsonl_out = copy_out(out);
  });
}

gcdpst_status gcdpst_graph_new(const gcdpst_ring* ring, const char* divisors, gcdpst_graph** out) {
  return guarded([&] {
    require(ring, "ring");
    require(divisors, "divisors");
    require(out, "out");
    GcdGraph G(ring->ring, make_divisor_set(*ring->ring, std::string_view(divisors)));
    Functional psi = build_psi(*ring->ring);
    Spectrum spec = compute_spectrum(G, psi);
    *out = new gcdpst_graph{ring->ring, std::move(G), std::move(psi), std::move(spec)};
  });
}

void gcdpst_graph_free(gcdpst_graph* graph) { delete graph; }

gcdpst_status gcdpst_graph_describe(const gcdpst_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph, "graph");
    require(json_out, "json_out");
    *json_out = copy_out(dump(to_json(graph->graph)));
  });
}

gcdpst_status gcdpst_graph_spectrum(const gcdpst_graph* graph, char** json_out) {
  return guarded([&] {
    require(graph, "graph");
    require(json_out, "json_out");
    nlohmann::json out = to_json(*graph->ring, graph->spectrum);
    out["divisors"] = to_json(graph->graph)["divisors"];
    *json_out = copy_out(dump(out));
  });
}

gcdpst_status gcdpst_graph_spectrum_table(const gcdpst_graph* graph, char** text_out) {
  return guarded([&] {
    require(graph, "graph");
    require(text_out, "text_out");
    *text_out = copy_out(spectrum_table(*graph->ring, graph->spectrum));
  });
}

gcdpst_status gcdpst_graph_pst(const gcdpst_graph* graph, const char* target, int verify, char** json_out) {
  return guarded([&] {
    require(graph, "graph");
    require(json_out, "json_out");
    const Ring& R = *graph->ring;
    PstVerdict v = target ? solve_pst(graph->graph, parse_target(R, target), graph->spectrum, graph->psi)
                          : has_pst(graph->graph, graph->spectrum, graph->psi);
    nlohmann::json out = to_json(R, v);
    out["ring"] = R.description();
    out["divisors"] = to_json(graph->graph)["divisors"];
    if (verify && v.exists) {
      VerdictCheck check = verify_verdict(graph->graph, graph->spectrum, graph->psi, v);
      out["oracle"] = {{"ok", check.ok},
                       {"modulus_at_time", check.modulus_at_time},
                       {"modulus_at_next", check.modulus_at_next},
                       {"next_time_radians", check.next_time}};
    }
    *json_out = copy_out(dump(out));
  });
}

gcdpst_status gcdpst_graph_amplitude_csv(const gcdpst_graph* graph, const char* target, double step, uint32_t steps,
                                         char** csv_out) {
  return guarded([&] {
    require(graph, "graph");
    require(target, "target");
    require(csv_out, "csv_out");
    if (!(step > 0)) throw InvalidArgument("step must be positive");
    Element s = graph->ring->parse_element(target);
    *csv_out = copy_out(sweep_csv(amplitude_sweep(*graph->ring, graph->spectrum, graph->psi, s, step, steps)));
  });
}

gcdpst_status gcdpst_graph_edges_csv(const gcdpst_graph* graph, char** csv_out) {
  return guarded([&] {
    require(graph, "graph");
    require(csv_out, "csv_out");
    *csv_out = copy_out(edge_list_csv(graph->graph));
  });
}

gcdpst_status gcdpst_unitary_poly(uint64_t q, const char* f, char** json_out) {
  return guarded([&] {
    require(f, "f");
    require(json_out, "json_out");
    auto pp = prime_power(q);
    if (!pp) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    PolyQuotientExpr carrier{ZnExpr{pp->first, true}, "x", {0, 1}, false};
    ElementExpr e = parse_element(f, RingExpr{carrier});
    std::vector<std::int64_t> coeffs;
    for (const auto& [exps, c] : e.terms) {
      if (coeffs.size() <= exps[0]) coeffs.resize(exps[0] + 1, 0);
      coeffs[exps[0]] = c;
    }
    polymod::trim(coeffs);
    PolyClassification c = classify_unitary_poly(q, coeffs);
    *json_out = copy_out(dump({{"q", q},
                               {"f", f},
                               {"pst", c.pst},
                               {"a", c.a},
                               {"b", c.b},
                               {"explanation", c.explanation}}));
  });
}

gcdpst_status gcdpst_verify_golden(int trivial_ring_moebius, int* all_passed, char** json_out, char** text_out) {
  return guarded([&] {
    ArithmeticConventions conventions;
    conventions.trivial_ring_moebius = trivial_ring_moebius;
    GoldenReport report = run_golden_suite(conventions);
    if (all_passed) *all_passed = report.all_passed() ? 1 : 0;
    if (json_out) *json_out = copy_out(dump(to_json(report)));
    if (text_out) *text_out = copy_out(to_text(report));
  });
}

}  // extern "C"
