#include "pg/cli.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "pg/chain_complex.hpp"
#include "pg/io.hpp"
#include "pg/pachner.hpp"
#include "pg/weights.hpp"

namespace pg::cli {

int worker_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("PG_THREADS");
  if (!env || !*env) return static_cast<int>(hw);
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) throw Error(ErrorCode::ParseError, "PG_THREADS must be a positive integer");
  return static_cast<int>(std::min<long>(n, hw));
}

void run_ordered(int n, int threads, const std::function<TrialResult(int)>& job,
                 const std::function<void(const TrialResult&)>& sink) {
  if (n <= 0) return;
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) sink(job(i));
    return;
  }
  std::vector<std::optional<TrialResult>> results(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::mutex mu;
  std::condition_variable ready;
  int next = 0;
  bool stop = false;

  auto worker = [&] {
    for (;;) {
      int i;
      {
        std::lock_guard lock(mu);
        if (stop || next >= n) return;
        i = next++;
      }
      std::optional<TrialResult> r;
      std::exception_ptr e;
      try {
        r = job(i);
      } catch (...) {
        e = std::current_exception();
      }
      std::lock_guard lock(mu);
      results[static_cast<std::size_t>(i)] = std::move(r);
      errors[static_cast<std::size_t>(i)] = e;
      if (e) stop = true;
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);

  std::exception_ptr failure;
  for (int i = 0; i < n && !failure; ++i) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return results[static_cast<std::size_t>(i)] || errors[static_cast<std::size_t>(i)]; });
    if (errors[static_cast<std::size_t>(i)]) {
      failure = errors[static_cast<std::size_t>(i)];
      break;
    }
    TrialResult r = std::move(*results[static_cast<std::size_t>(i)]);
    lock.unlock();
    sink(r);
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kMinVerifyPrime = 10000;

long long elapsed_since(Clock::time_point t0, bool timing) {
  if (!timing) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

Rng trial_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  return Rng(seq);
}

FieldTag resolve_field(const RunConfig& cfg, const TriangulationInput& in) {
  if (cfg.field_given) return cfg.field;
  return in.field.value_or(cfg.field);
}

template <FieldScalar S>
VertexCoordinates<S> coordinates_for(const TriangulationInput& in, const FieldTag& tag, std::uint64_t seed) {
  if (!in.zeta.empty()) return parse_coordinates<S>(in, tag);
  return random_coordinates<S>(in.tri, tag, seed);
}

template <FieldScalar S>
std::map<Simplex, S> random_tet_chain(const std::vector<Simplex>& tets, Rng& rng, const FieldTag& tag) {
  std::map<Simplex, S> c;
  for (const auto& t : tets) c.emplace(t, random_scalar<S>(rng, tag));
  return c;
}

template <FieldScalar S>
XChain<S> random_xchain(const Triangulation& tri, Rng& rng, const FieldTag& tag) {
  XChain<S> x;
  for (const auto& u : tri.simplices)
    for (int v : u) x.set(u, v, random_scalar<S>(rng, tag));
  return x;
}

int summarize(std::ostream& out, const std::string& what, int trials, int passed) {
  Json j{{"summary", what}, {"trials", trials}, {"passed", passed}, {"failed", trials - passed}};
  out << j.dump() << '\n';
  return passed == trials ? kPass : kViolation;
}

// --- verify ----------------------------------------------------------------

template <FieldScalar S>
TrialResult complex_trial(const TriangulationInput& in, const FieldTag& tag, std::uint64_t seed, bool g_side,
                          bool timing) {
  const auto t0 = Clock::now();
  const auto zeta = coordinates_for<S>(in, tag, seed);
  const FaceLattice lattice(in.tri);
  const auto maps = g_side ? g_complex(in.tri, lattice, zeta) : f_complex(in.tri, lattice, zeta);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k + 1 < maps.size(); ++k)
    nonzero += static_cast<std::size_t>(compose(maps[k + 1], maps[k]).nonzeros());
  ReportLine r{g_side ? "cg" : "cf", seed, tag.str(), nonzero == 0, nonzero, elapsed_since(t0, timing)};
  return {r.dump(), r.equal};
}

template <FieldScalar S>
TrialResult pachner_trial(const FieldTag& tag, std::uint64_t seed, bool deformed, bool timing) {
  const auto t0 = Clock::now();
  const auto zeta = random_coordinates<S>(builtin("pachner33_lhs"), tag, seed);
  ReportLine r;
  if (!deformed) {
    const auto rep = verify_33(zeta);
    r = {"33", seed, tag.str(), rep.equal, rep.residual.size(), 0};
  } else {
    Rng rng = trial_rng(seed);
    const auto rep = verify_d1(zeta, random_tet_chain<S>(pachner33_common_boundary(), rng, tag));
    const bool graded = graded_parts_vanish(rep) && degrees_within(rep.lhs_value, {0, 2, 4}) &&
                        degrees_within(rep.rhs_value, {0, 2, 4});
    r = {"d1", seed, tag.str(), rep.equal && graded, rep.residual.size(), 0};
    r.extra["graded"] = graded;
  }
  r.elapsed_ms = elapsed_since(t0, timing);
  return {r.dump(), r.equal};
}

template <FieldScalar S>
TrialResult theorem_b_trial(const FieldTag& tag, std::uint64_t seed, bool timing) {
  const auto t0 = Clock::now();
  const auto zeta = random_coordinates<S>(builtin("pachner33_lhs"), tag, seed);
  Rng rng = trial_rng(seed);
  bool ok = true;
  std::size_t residual = 0;
  for (const char* name : {"pachner33_lhs", "pachner33_rhs"}) {
    const auto side = make_move_side(builtin(name), zeta);
    const auto base = random_xchain<S>(side.cluster, rng, tag);
    const auto shifted = base + xchain_from_tet_chain(random_tet_chain<S>(side.inner_tets, rng, tag), side.cluster,
                                                      side.lattice, false);
    const auto diff = side_integral(side, &base) - side_integral(side, &shifted);
    residual += diff.size();
    ok = ok && diff.is_zero();
  }
  ReportLine r{"b", seed, tag.str(), ok, residual, elapsed_since(t0, timing)};
  return {r.dump(), r.equal};
}

template <FieldScalar S>
int verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& what = cfg.target;
  std::function<TrialResult(int)> job;
  int trials = cfg.trials;
  FieldTag tag = cfg.field;

  if (what == "f-complex" || what == "g-complex") {
    auto in = std::make_shared<TriangulationInput>(resolve_triangulation(cfg.tri.value_or("boundary_delta5")));
    tag = resolve_field(cfg, *in);
    if (!ScalarTraits<S>::accepts(tag)) throw Error(ErrorCode::InvalidField, "field mismatch");
    if (!in->zeta.empty()) trials = 1;
    const bool g = what == "g-complex";
    job = [=, &cfg](int i) { return complex_trial<S>(*in, tag, cfg.seed + static_cast<std::uint64_t>(i), g, cfg.timing); };
  } else if (what == "pachner33" || what == "theorem-d1") {
    if (cfg.deform == "random") throw Error(ErrorCode::ParseError, "--deform random is not defined for the 3-3 relation");
    const bool deformed = what == "theorem-d1" || cfg.deform == "boundary";
    job = [=, &cfg](int i) { return pachner_trial<S>(tag, cfg.seed + static_cast<std::uint64_t>(i), deformed, cfg.timing); };
  } else if (what == "theorem-b") {
    job = [=, &cfg](int i) { return theorem_b_trial<S>(tag, cfg.seed + static_cast<std::uint64_t>(i), cfg.timing); };
  } else {
    throw Error(ErrorCode::UnknownName, "unknown verification '" + what + "'");
  }

  int passed = 0;
  run_ordered(trials, cfg.threads, job, [&](const TrialResult& r) {
    out << r.line << '\n';
    if (r.pass) ++passed;
  });
  return summarize(out, what, trials, passed);
}

// --- homology --------------------------------------------------------------

template <FieldScalar S>
int homology(const RunConfig& cfg, std::ostream& out) {
  if (cfg.target != "f" && cfg.target != "g") throw Error(ErrorCode::UnknownName, "homology takes f or g");
  const auto in = resolve_triangulation(cfg.tri.value_or("boundary_delta5"));
  const auto tag = resolve_field(cfg, in);
  const auto zeta = coordinates_for<S>(in, tag, cfg.seed);
  const FaceLattice lattice(in.tri);
  auto maps = cfg.target == "g" ? g_complex(in.tri, lattice, zeta) : f_complex(in.tri, lattice, zeta);
  Json terms = Json::array({"V0", "V2", "V3", "V4", "V0*"});
  if (cfg.target == "g") terms = Json::array({"vertices", "tetrahedra", "U", "edges", "vertices^2"});
  const bool shc = cfg.target == "f" && lattice.inner_faces(0).empty();
  if (shc) {
    maps = {maps[1], maps[2]};
    terms = Json::array({"V2", "V3", "V4"});
  }
  const auto rep = homology_dims(maps);
  Json j{{"complex", cfg.target}, {"tri", cfg.tri.value_or("boundary_delta5")}, {"field", tag.str()},
         {"seed", cfg.seed},      {"terms", terms},                         {"dims", rep.dims},
         {"ranks", rep.ranks},    {"homology", rep.homology}};
  out << j.dump() << '\n';
  return kPass;
}

// --- export ----------------------------------------------------------------

template <FieldScalar S>
int export_all(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.out) throw Error(ErrorCode::ParseError, "export needs --out DIR");
  const auto in = resolve_triangulation(cfg.tri.value_or("pachner33_lhs"));
  const auto tag = resolve_field(cfg, in);
  const auto zeta = coordinates_for<S>(in, tag, cfg.seed);
  const FaceLattice lattice(in.tri);
  namespace fs = std::filesystem;
  const fs::path dir(*cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::ParseError, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::string> written;
  auto put = [&](const std::string& name, const Json& j) {
    write_text_file((dir / name).string(), j.dump(1) + "\n");
    written.push_back(name);
  };
  const bool inner_vertices = !lattice.inner_faces(0).empty();
  const auto f = f_complex(in.tri, lattice, zeta);
  if (inner_vertices) put("f2.json", matrix_to_json(f[0]));
  put("f3.json", matrix_to_json(f[1]));
  put("f4.json", matrix_to_json(f[2]));
  if (inner_vertices) {
    put("f5.json", matrix_to_json(f[3]));
  } else {
    const auto gauged = gauge_transform(f[1], f[2], zeta);
    put("f3_tilde.json", matrix_to_json(gauged.f3));
    put("f4_tilde.json", matrix_to_json(gauged.f4));
  }
  const auto g = g_complex(in.tri, lattice, zeta);
  for (int k = 0; k < 4; ++k) put("g" + std::to_string(k + 2) + ".json", matrix_to_json(g[static_cast<std::size_t>(k)]));

  Json zj = Json::object();
  for (int i = 1; i <= zeta.n_vertices(); ++i) zj[std::to_string(i)] = to_string(zeta(i));
  Json ws = Json::array();
  for (const auto& u : in.tri.simplices) {
    const auto v = v_rows(u, zeta);
    Json rows = Json::array();
    for (const auto& r : v.rows) rows.push_back(grassmann_to_json(r));
    ws.push_back(Json{{"simplex", simplex_to_json(u)},
                      {"epsilon", in.tri.epsilon_of(u)},
                      {"v_rows", rows},
                      {"weight", grassmann_to_json(weight(v, zeta))}});
  }
  put("weights.json", Json{{"field", tag.str()}, {"seed", cfg.seed}, {"zeta", zj}, {"weights", ws}});
  out << Json{{"export", dir.string()}, {"files", written}}.dump() << '\n';
  return kPass;
}

// --- explore24 -------------------------------------------------------------

template <FieldScalar S>
int explore24(const RunConfig& cfg, std::ostream& out) {
  const FieldTag tag = cfg.field;
  const Deform deform = cfg.deform == "boundary" ? Deform::Boundary
                        : cfg.deform == "random" ? Deform::Random
                                                 : Deform::None;
  auto job = [&](int i) {
    const auto t0 = Clock::now();
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const auto zeta = random_coordinates<S>(builtin("pachner24_lhs"), tag, seed);
    Rng rng = trial_rng(seed);
    const auto rep = explore_24(zeta, deform, rng);
    ReportLine r{"24", seed, tag.str(), rep.relation.equal, rep.relation.residual.size(), 0};
    r.extra["deform"] = cfg.deform;
    r.extra["lhs_terms"] = rep.relation.lhs_value.size();
    r.extra["rhs_terms"] = rep.relation.rhs_value.size();
    r.extra["proportional"] = rep.ratio.has_value();
    r.extra["ratio"] = rep.ratio ? Json(to_string(*rep.ratio)) : Json(nullptr);
    r.elapsed_ms = elapsed_since(t0, cfg.timing);
    return TrialResult{r.dump(), true};
  };
  run_ordered(cfg.trials, cfg.threads, job, [&](const TrialResult& r) { out << r.line << '\n'; });
  return kPass;
}

template <FieldScalar S>
int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "verify") return verify<S>(cfg, out);
  if (cfg.command == "homology") return homology<S>(cfg, out);
  if (cfg.command == "export") return export_all<S>(cfg, out);
  return explore24<S>(cfg, out);
}

/// Field the command will actually run in (a file may carry its own).
FieldTag effective_field(const RunConfig& cfg) {
  const bool reads_tri = cfg.command == "homology" || cfg.command == "export" ||
                         (cfg.command == "verify" && (cfg.target == "f-complex" || cfg.target == "g-complex"));
  if (cfg.field_given || !reads_tri) return cfg.field;
  const std::string fallback = cfg.command == "export" ? "pachner33_lhs" : "boundary_delta5";
  return resolve_field(cfg, resolve_triangulation(cfg.tri.value_or(fallback)));
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of the 3-3 Grassmann-Berezin relation and the exotic chain complexes"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string field_text;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tri", cfg.tri, "triangulation: built-in name or JSON file");
    sub->add_option("--field", field_text, "q or gf:P");
    sub->add_option("--seed", cfg.seed, "base seed; trial i uses seed + i");
    sub->add_option("--trials", cfg.trials, "number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--deform", cfg.deform, "none, boundary or random")
        ->check(CLI::IsMember({"none", "boundary", "random"}));
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_flag("--timing", cfg.timing, "report wall-clock milliseconds");
  };
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("what", cfg.target, "f-complex, g-complex, pachner33, theorem-d1 or theorem-b")
      ->required()
      ->check(CLI::IsMember({"f-complex", "g-complex", "pachner33", "theorem-d1", "theorem-b"}));
  common(verify_cmd);
  auto* homology_cmd = app.add_subcommand("homology", "dimensions, ranks and homology of a complex");
  homology_cmd->add_option("complex", cfg.target, "f or g")->required()->check(CLI::IsMember({"f", "g"}));
  common(homology_cmd);
  auto* export_cmd = app.add_subcommand("export", "write matrices and weights as JSON");
  common(export_cmd);
  auto* explore_cmd = app.add_subcommand("explore24", "report residuals of the candidate 2-4 relation");
  common(explore_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (!field_text.empty()) {
      cfg.field = FieldTag::parse(field_text);
      cfg.field_given = true;
    }
    cfg.threads = worker_count();
    const FieldTag tag = effective_field(cfg);
    if ((cfg.command == "verify" || cfg.command == "explore24") && tag.is_prime() && tag.p <= kMinVerifyPrime)
      throw Error(ErrorCode::FieldTooSmall, "randomized verification needs p > " + std::to_string(kMinVerifyPrime));
    return tag.is_prime() ? dispatch<ModP>(cfg, out) : dispatch<Rational>(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NotAComplex ? kViolation : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace pg::cli
