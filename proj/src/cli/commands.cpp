#include "qdetect/cli/commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "qdetect/cli/problem_file.hpp"
#include "qdetect/errors.hpp"

namespace qdetect::cli {
namespace {

Json doubles(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) return false;
    for (const auto& e : row)
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) return false;
  }
  return true;
}

std::string format_entry(const Json& e) {
  char buf[64];
  const double re = e[0].get<double>();
  const double im = e[1].get<double>();
  std::snprintf(buf, sizeof buf, "%12.8f%+.8fi", re, im);
  return buf;
}

void print_pretty(const Json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const Json& v = it.value();
    if (is_matrix(v)) {
      out << indent << key << ":\n";
      for (const auto& row : v) {
        out << indent << "  ";
        for (const auto& e : row) out << ' ' << format_entry(e);
        out << '\n';
      }
    } else if (v.is_array() && !v.empty() && is_matrix(v.front())) {
      out << indent << key << ":\n";
      for (std::size_t k = 0; k < v.size(); ++k) {
        out << indent << "  [" << k << "]\n";
        for (const auto& row : v[k]) {
          out << indent << "    ";
          for (const auto& e : row) out << ' ' << format_entry(e);
          out << '\n';
        }
      }
    } else if (v.is_structured() && !(v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) {
                                         return x.is_primitive();
                                       }))) {
      out << indent << key << ":\n";
      print_pretty(v, indent + "  ", out);
    } else {
      out << indent << key << ": " << v.dump() << '\n';
    }
  }
}

Json problem_summary(const ProblemFile& p) {
  Json j;
  j["source"] = p.source;
  j["dim"] = p.dim;
  j["states"] = p.ensemble.size();
  j["form"] = p.symmetric() ? "group" : "explicit";
  if (p.symmetric()) {
    j["group_order"] = p.group->order();
    j["generators"] = p.generators.size();
  }
  if (p.second_group) j["second_group_order"] = p.second_group->order();
  return j;
}

// Shared error mapping for all commands.
int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const MaxIterationsError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.is_numerical() ? kExitNumerical : kExitInput;
  }
}

Json solution_json(const Ensemble& e, const Solution& s, double verify_tol) {
  Json j;
  j["form"] = s.diagnostics.form;
  j["p_correct"] = s.p_correct;
  j["error_probability"] = 1.0 - s.p_correct;
  j["trace_x"] = s.certificate.trace;
  j["duality_gap"] = s.duality_gap;
  j["iterations"] = s.iterations;
  Json u;
  u["real_unknowns"] = s.diagnostics.real_unknowns;
  u["constraint_blocks"] = s.diagnostics.constraint_blocks;
  u["full_real_unknowns"] = s.diagnostics.full_real_unknowns;
  u["full_constraint_blocks"] = s.diagnostics.full_constraint_blocks;
  j["unknowns"] = u;
  j["per_state_detection"] = doubles(per_state_detection(e, s.povm));
  j["verification"] = verification_json(verify_optimality(e, s.povm, s.certificate, verify_tol),
                                        verify_tol);
  j["operators"] = operators_to_json(s.povm.operators());
  j["certificate"] = matrix_to_json(s.certificate.x.matrix());
  return j;
}

}  // namespace

void print_report(const Json& report, bool pretty, std::ostream& out) {
  if (pretty)
    print_pretty(report, "", out);
  else
    out << report.dump(2) << '\n';
}

Json verification_json(const OptimalityVerification& v, double tol) {
  Json j;
  j["tolerance"] = tol;
  j["optimal"] = v.optimal();
  j["slacks_psd"] = v.slacks_psd;
  j["slack_min_eigenvalues"] = doubles(v.slack_min_eigenvalues);
  j["complementary"] = v.complementary;
  j["complementarity_residuals"] = doubles(v.complementarity_residuals);
  j["max_complementarity"] = v.max_complementarity;
  j["povm_valid"] = v.povm_valid;
  j["completeness_residual"] = v.completeness_residual;
  j["povm_min_eigenvalue"] = v.povm_min_eigenvalue;
  j["trace_x"] = v.trace_x;
  j["p_correct"] = v.p_correct;
  return j;
}

int cmd_lsm(const LsmOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemFile p = load_problem(opts.input);
        const Ensemble& e = p.ensemble;
        const LsmResult lsm = least_squares_measurement(e);
        const OptimalityReport report = check_square_root_condition(e, lsm, opts.cond_tol);

        Json j;
        j["command"] = "lsm";
        j["problem"] = problem_summary(p);
        j["p_correct"] = correct_detection_probability(e, lsm.povm);
        j["per_state_detection"] = doubles(per_state_detection(e, lsm.povm));
        Json cond;
        cond["holds"] = report.condition_holds;
        cond["alpha"] = report.alpha;
        cond["max_deviation"] = report.max_deviation;
        cond["deviations"] = doubles(report.deviations);
        cond["tolerance"] = opts.cond_tol;
        j["condition"] = cond;
        j["gram"] = matrix_to_json(lsm.gram.matrix());
        j["factor_gram"] = matrix_to_json(factor_gram(e).matrix());
        if (p.symmetric()) {
          j["generators"] = matrices_to_json(cgu_lsm_generators(p.cgu_spec()));
          if (p.second_group) {
            const auto phase = check_phase_commutation(*p.group, *p.second_group);
            Json pc;
            pc["commutes"] = phase.commutes;
            pc["all_phases_trivial"] = phase.all_phases_trivial;
            pc["max_residual"] = phase.max_residual;
            pc["phases"] = doubles(phase.phases);
            j["phase_commutation"] = pc;
            try {
              j["single_generator"] =
                  matrix_to_json(cgu_gu_lsm_single_generator(p.cgu_spec(), *p.second_group));
            } catch (const Error& ex) {
              j["single_generator"] = nullptr;
              j["single_generator_error"] = ex.what();
            }
          }
        }
        j["factors"] = matrices_to_json(lsm.factors);
        j["operators"] = operators_to_json(lsm.povm.operators());
        if (report.condition_holds) {
          const Certificate cert = make_certificate(e, certificate_from_condition(e, lsm, report));
          Json c;
          c["x"] = matrix_to_json(cert.x.matrix());
          c["verification"] =
              verification_json(verify_optimality(e, lsm.povm, cert, opts.verify_tol), opts.verify_tol);
          j["certificate"] = c;
        }
        if (opts.emit_povm) write_json_file(*opts.emit_povm, povm_file_json(lsm.povm));
        if (opts.emit_cert)
          write_json_file(*opts.emit_cert, certificate_file_json(matrix_sqrt(lsm.gram) * report.alpha));
        print_report(j, opts.pretty, out);
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_optimal(const OptimalOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemFile p = load_problem(opts.input);
        Reduction mode = opts.reduction;
        if (mode == Reduction::Auto)
          mode = !p.symmetric() ? Reduction::Full
                 : p.generators.size() == 1 ? Reduction::Gu
                                            : Reduction::Cgu;
        if ((mode == Reduction::Gu || mode == Reduction::Cgu) && !p.symmetric())
          throw InputError(p.source + ": --reduced gu/cgu needs group and generators");
        if (mode == Reduction::Gu && p.generators.size() != 1)
          throw InputError(p.source + ": generators: --reduced gu needs exactly one generator");
        try {
          opts.solver.validate();
        } catch (const Error& e) {
          throw InputError(std::string("solver options: ") + e.what());
        }

        const auto emit = [&](const Solution& s, const char* status) {
          Json j;
          j["command"] = "optimal";
          j["status"] = status;
          j["problem"] = problem_summary(p);
          const Json body = solution_json(p.ensemble, s, opts.verify_tol);
          for (const auto& [k, v] : body.items()) j[k] = v;
          if (opts.emit_povm) write_json_file(*opts.emit_povm, povm_file_json(s.povm));
          if (opts.emit_cert) write_json_file(*opts.emit_cert, certificate_file_json(s.certificate.x));
          print_report(j, opts.pretty, out);
        };

        try {
          Solution s = mode == Reduction::Full ? solve_optimal(p.ensemble, opts.solver)
                       : mode == Reduction::Gu
                           ? solve_gu({*p.group, p.generators.front()}, opts.solver)
                           : solve_cgu(p.cgu_spec(), opts.solver);
          emit(s, "converged");
          return static_cast<int>(kExitOk);
        } catch (const MaxIterationsError& e) {
          err << "error: " << e.what() << '\n';
          emit(e.best(), "max_iterations");
          return static_cast<int>(kExitNumerical);
        }
      },
      err);
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemFile p = load_problem(opts.input);
        const auto ops = read_povm_file(opts.povm);
        const HermitianMatrix x = read_certificate_file(opts.cert);
        if (ops.size() != p.ensemble.size()) {
          std::ostringstream msg;
          msg << opts.povm.string() << ": operators: expected " << p.ensemble.size()
              << " operators, got " << ops.size();
          throw InputError(msg.str());
        }
        if (ops.front().dim() != p.dim)
          throw InputError(opts.povm.string() + ": dim: does not match the problem dimension");
        if (x.dim() != p.dim)
          throw InputError(opts.cert.string() + ": dim: does not match the problem dimension");
        const Povm m = Povm::unchecked(ops);
        const auto v = verify_optimality(p.ensemble, m, make_certificate(p.ensemble, x), opts.tol);
        Json j;
        j["command"] = "verify";
        j["problem"] = problem_summary(p);
        j["verification"] = verification_json(v, opts.tol);
        print_report(j, opts.pretty, out);
        return static_cast<int>(v.optimal() ? kExitOk : kExitNotOptimal);
      },
      err);
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const ProblemFile p = load_problem(opts.input);
        Json j;
        j["command"] = "validate";
        j["valid"] = true;
        j["problem"] = problem_summary(p);
        print_report(j, opts.pretty, out);
        return static_cast<int>(kExitOk);
      },
      err);
}

void configure_logging() {
  auto logger = std::make_shared<spdlog::logger>(
      "qdetect", std::make_shared<spdlog::sinks::stderr_sink_mt>());
  logger->set_level(spdlog::level::warn);
  if (const char* env = std::getenv("QDETECT_LOG")) {
    const std::string level = env;
    if (level == "error")
      logger->set_level(spdlog::level::err);
    else if (level == "warn")
      logger->set_level(spdlog::level::warn);
    else if (level == "info")
      logger->set_level(spdlog::level::info);
    else if (level == "debug")
      logger->set_level(spdlog::level::debug);
    else
      logger->warn("QDETECT_LOG={} not recognised; using warn", level);
  }
  spdlog::set_default_logger(std::move(logger));
}

}  // namespace qdetect::cli
