#include "spherik/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "spherik/criteria.hpp"
#include "spherik/hilbert.hpp"
#include "spherik/integration.hpp"
#include "spherik/report.hpp"
#include "spherik/search.hpp"

namespace spherik {

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string f_path;
  double tol = 1e-9;
  std::size_t m = 2;
  std::size_t budget = 2000;
  std::uint64_t seed = 1;
  long kmax = 30;
  std::string format = "text";
  bool timing = false;
};

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string index_list(const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? ", " : "") + std::to_string(idx[i]);
  return out + "}";
}

PLFunction require_f(const Options& o) {
  if (o.f_path.empty()) throw CLI::ValidationError("--f", o.command + " needs --f <pl.json>");
  if (!std::filesystem::exists(o.f_path)) {
    throw std::filesystem::filesystem_error("cannot open PL function", o.f_path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  }
  return load_pl_function(o.f_path);
}

void describe(const NormalizedModel& model, const FunctionalData& fd, Report& r) {
  r.values.emplace_back("rank", std::to_string(model.rank));
  r.values.emplace_back("positive_roots", std::to_string(model.positive_roots.size()));
  r.values.emplace_back("active_roots", index_list(model.active_roots));
  r.values.emplace_back("horospherical", is_horospherical(model) ? "true" : "false");
  r.values.emplace_back("fano", model.fano ? "true" : "false");
  r.values.emplace_back("chi", to_string(model.chi));
  std::string verts;
  for (const auto& q : model.polytope.vertices()) {
    verts += (verts.empty() ? "" : ", ") + to_string(model.to_ambient(q));
  }
  r.values.emplace_back("vertices", verts);
  r.values.emplace_back("P", fd.P.to_string());
  r.values.emplace_back("Q", fd.Q.to_string());
  r.values.emplace_back("a", to_string(fd.a));
  r.values.emplace_back("volume", to_string(model.polytope.volume()));
  r.values.emplace_back("vol_P", to_string(fd.vol_P));
  r.values.emplace_back("boundary_P", to_string(fd.boundary_P));
  r.values.emplace_back("int_Q", to_string(fd.int_Q));
  r.values.emplace_back("barycenter", to_string(weighted_barycenter(model, fd.P)));
  r.values.emplace_back("two_varpi_X", to_string(model.two_varpi_active));
}

void search_into(const NormalizedModel& model, const FunctionalData& fd, const Options& o,
                 Report& r) {
  SearchOptions so;
  so.m = o.m;
  so.budget = o.budget;
  so.seed = o.seed;
  const SearchReport s = search_destabilizer(model, fd, so);
  Verdict v;
  v.criterion = "search";
  v.diagnostics = {{"m", std::to_string(s.m)},
                   {"seed", std::to_string(s.seed)},
                   {"budget", std::to_string(o.budget)},
                   {"evaluations", std::to_string(s.evaluations)},
                   {"best_value", to_string(s.best_value)},
                   {"best_normalized", to_string(s.best_normalized)},
                   {"best_nld", std::to_string(linearity_domains(model, s.best_f).nld)}};
  if (s.certificate()) {
    v.outcome = Outcome::kNotExists;
    v.witness = Witness{s.best_f, s.best_value};
    v.certificate = "search found f with exact L(f) < 0";
  } else {
    v.outcome = Outcome::kIndeterminate;
    v.certificate = "no destabilizer found";
  }
  attach_verdict(r, v);
  if (!s.certificate()) r.witness = s.best_f;
  for (double t : s.trace) r.trace.push_back(format_double(t));
  r.notes.push_back("search is non-conclusive in the EXISTS direction: no negative value is not a "
                    "stability proof");
}

int execute(const Options& o, Report& r) {
  if (!std::filesystem::exists(o.input)) {
    throw std::filesystem::filesystem_error("cannot open input", o.input,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  }
  const NormalizedModel model = normalize(load_spherical_data(o.input));
  const FunctionalData fd = functional_data(model);

  if (o.command == "describe") {
    describe(model, fd, r);
    return 0;
  }
  if (o.command == "check-fano") {
    attach_verdict(r, check_fano_KE(model, fd));
    return r.exit_code;
  }
  if (o.command == "check-csck") {
    if (model.rank == 1) {
      attach_verdict(r, check_rank_one(model, fd));
    } else if (model.rank == 2 && model.is_toric()) {
      ToricSurfaceOptions to;
      to.tol = o.tol;
      attach_verdict(r, check_toric_surface(model, fd, to));
    } else if (o.budget == 0) {
      throw NotApplicable("no effective criterion applies (rank " + std::to_string(model.rank) +
                          ", " + (model.is_toric() ? "toric" : "non-toric") +
                          ") and search is disabled by --budget 0");
    } else {
      search_into(model, fd, o, r);
    }
    return r.exit_code;
  }
  if (o.command == "eval-L") {
    const PLFunction f = require_f(o);
    const Rational value = eval_L(model, fd, f);
    r.values.emplace_back("L", to_string(value));
    r.values.emplace_back("nld", std::to_string(linearity_domains(model, f).nld));
    r.values.emplace_back("product", is_product_function(model, f) ? "true" : "false");
    r.values.emplace_back("a", to_string(fd.a));
    return 0;
  }
  if (o.command == "search") {
    if (o.budget == 0) throw CLI::ValidationError("--budget", "search needs a positive budget");
    search_into(model, fd, o, r);
    return r.exit_code;
  }
  // hilbert
  const PLFunction f = require_f(o);
  HilbertOptions ho;
  ho.k_max = o.kmax;
  const HilbertFit fit = hilbert_series_oracle(model, f, ho);
  const Rational value = eval_L(model, fd, f);
  r.values.emplace_back("k_max", std::to_string(fit.k_max));
  r.values.emplace_back("k_step", std::to_string(fit.step));
  r.values.emplace_back("samples", std::to_string(fit.samples.size()));
  r.values.emplace_back("F0", format_double(fit.F0));
  r.values.emplace_back("F1", format_double(fit.F1));
  r.values.emplace_back("residual", format_double(fit.residual));
  r.values.emplace_back("L", to_string(value));
  if (value != 0) {
    r.values.emplace_back("2*vol_P*F1/L", format_double(2 * fd.vol_P.get_d() * fit.F1 / value.get_d()));
  }
  for (const auto& s : fit.samples) {
    r.trace.push_back("k=" + std::to_string(s.k) + " d=" + s.d.get_str() + " w=" + s.w.get_str() +
                      " ratio=" + format_double(s.ratio));
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Existence of cscK and Kähler–Einstein metrics on polarized spherical varieties",
               "spherik"};
  app.add_option("command", o.command, "describe | check-fano | check-csck | eval-L | search | hilbert")
      ->required()
      ->check(CLI::IsMember({"describe", "check-fano", "check-csck", "eval-L", "search", "hilbert"}));
  app.add_option("input", o.input, "spherical data (JSON)")->required();
  app.add_option("--f", o.f_path, "PL function (JSON) for eval-L and hilbert");
  app.add_option("--tol", o.tol, "tolerance of the toric-surface search")->check(CLI::NonNegativeNumber);
  app.add_option("--m", o.m, "maximal number of pieces in search")->check(CLI::PositiveNumber);
  app.add_option("--budget", o.budget, "objective evaluations for search (0 disables it)");
  app.add_option("--seed", o.seed, "search seed");
  app.add_option("--kmax", o.kmax, "largest k for the Hilbert oracle")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", o.timing, "include wall-clock time in the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "spherik: usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  Report r;
  r.command = o.command;
  r.input = o.input;
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = execute(o, r);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "spherik: " << e.code().message() << ": " << e.path1().string() << "\n";
    return kExitNoInput;
  } catch (const CLI::ValidationError& e) {
    err << "spherik: usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "spherik: input error: " << e.what() << "\n";
    return kExitData;
  } catch (const GeometryError& e) {
    err << "spherik: input error: " << e.what() << "\n";
    return kExitData;
  } catch (const NotApplicable& e) {
    err << "spherik: not applicable: " << e.what() << "\n";
    return kExitNotApplicable;
  } catch (const std::invalid_argument& e) {
    err << "spherik: usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  r.exit_code = code;
  if (o.timing) {
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  out << emit_report(r, o.format == "json" ? Format::kJson : Format::kText);
  return code;
}

}  // namespace spherik
