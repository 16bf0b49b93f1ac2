#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qdetect/cli/commands.hpp"

using namespace qdetect::cli;

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Minimum-error quantum state discrimination"};
  app.require_subcommand(1);

  LsmOptions lsm;
  auto* lsm_cmd = app.add_subcommand("lsm", "Least-squares measurement and its optimality test");
  lsm_cmd->add_option("file", lsm.input, "Problem file")->required()->check(CLI::ExistingFile);
  lsm_cmd->add_flag("--pretty", lsm.pretty, "Human-readable output");
  lsm_cmd->add_option("--cond-tol", lsm.cond_tol, "Relative tolerance of the condition test");
  lsm_cmd->add_option("--verify-tol", lsm.verify_tol, "Tolerance of the certificate check");
  lsm_cmd->add_option("--emit-povm", lsm.emit_povm, "Write the measurement to this file");
  lsm_cmd->add_option("--emit-cert", lsm.emit_cert, "Write alpha W^(1/2) to this file");

  OptimalOptions opt;
  auto* opt_cmd = app.add_subcommand("optimal", "Minimum-error measurement by semidefinite programming");
  opt_cmd->add_option("file", opt.input, "Problem file")->required()->check(CLI::ExistingFile);
  opt_cmd->add_flag("--pretty", opt.pretty, "Human-readable output");
  const std::map<std::string, Reduction> reductions{
      {"auto", Reduction::Auto}, {"full", Reduction::Full}, {"gu", Reduction::Gu}, {"cgu", Reduction::Cgu}};
  opt_cmd->add_option("--reduced", opt.reduction, "auto, full, gu or cgu")
      ->transform(CLI::CheckedTransformer(reductions, CLI::ignore_case));
  opt_cmd->add_option("--gap-tol", opt.solver.gap_tol, "Duality gap tolerance");
  opt_cmd->add_option("--max-iters", opt.solver.max_iters, "Iteration limit");
  opt_cmd->add_flag("--parallel", opt.solver.parallel_kernels, "Assemble the Newton system with OpenMP");
  opt_cmd->add_option("--verify-tol", opt.verify_tol, "Tolerance of the optimality check");
  opt_cmd->add_option("--emit-povm", opt.emit_povm, "Write the measurement to this file");
  opt_cmd->add_option("--emit-cert", opt.emit_cert, "Write the certificate to this file");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check a measurement and certificate for optimality");
  ver_cmd->add_option("file", ver.input, "Problem file")->required()->check(CLI::ExistingFile);
  ver_cmd->add_option("--povm", ver.povm, "Measurement file")->required()->check(CLI::ExistingFile);
  ver_cmd->add_option("--cert", ver.cert, "Certificate file")->required()->check(CLI::ExistingFile);
  ver_cmd->add_option("--tol", ver.tol, "Tolerance");
  ver_cmd->add_flag("--pretty", ver.pretty, "Human-readable output");

  ValidateOptions val;
  auto* val_cmd = app.add_subcommand("validate", "Parse and validate a problem file");
  val_cmd->add_option("file", val.input, "Problem file")->required()->check(CLI::ExistingFile);
  val_cmd->add_flag("--pretty", val.pretty, "Human-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (*lsm_cmd) return cmd_lsm(lsm, std::cout, std::cerr);
  if (*opt_cmd) return cmd_optimal(opt, std::cout, std::cerr);
  if (*ver_cmd) return cmd_verify(ver, std::cout, std::cerr);
  return cmd_validate(val, std::cout, std::cerr);
}
