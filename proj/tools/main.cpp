#include <cstdio>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qgs/error.hpp"

using namespace qgs::cli;

namespace {

using Handler = std::function<Result(const Options&)>;

CLI::App* command(CLI::App& parent, const char* name, const char* help, Handler h, Handler& slot) {
  auto* sub = parent.add_subcommand(name, help);
  sub->callback([h, &slot] { slot = h; });
  return sub;
}

void graph_flag(CLI::App* c, Options& o) {
  c->add_option("-g,--graph", o.graph, "graph JSON file")->required();
}

void gamma_rho(CLI::App* c, Options& o) {
  c->add_option("--gamma", o.gamma, "density gamma in (0, 1]");
  c->add_option("--rho", o.rho, "interval length bound rho > 0");
}

void function_flags(CLI::App* c, Options& o) {
  c->add_option("--lambda-max", o.lambda_max, "largest eigenvalue to compute");
  c->add_option("--step", o.step, "scan step in k (0 = automatic)");
  c->add_option("--seed", o.seed, "seed for the random combination");
  c->add_option("--terms", o.terms, "number of eigenfunctions combined");
  c->add_option("--modes", o.mode_list, "explicit eigenpair indices (0-based)");
  c->add_option("--coefficients", o.coefficients, "JSON list of coefficients for --modes");
}

void certificate_flags(CLI::App* c, Options& o) {
  c->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  c->add_option("--cover", o.cover, "cover JSON file certifying (gamma, rho)");
  c->add_option("--grid", o.grid, "optimizer grid per edge");
  gamma_rho(c, o);
}

void constants_flags(CLI::App* c, Options& o) {
  auto mark = [&o](double) { o.constants.placeholder = false; };
  c->add_option_function<double>("--C1", [&o, mark](double v) { o.constants.c1 = v; mark(v); }, "universal constant C1");
  c->add_option_function<double>("--C2", [&o, mark](double v) { o.constants.c2 = v; mark(v); }, "universal constant C2");
  c->add_option_function<double>("--C3", [&o, mark](double v) { o.constants.c3 = v; mark(v); }, "universal constant C3");
  c->add_option_function<double>("--K1", [&o, mark](double v) { o.constants.k1 = v; mark(v); }, "universal constant K1");
  c->add_option_function<double>("--K2", [&o, mark](double v) { o.constants.k2 = v; mark(v); }, "universal constant K2");
  c->add_option_function<double>("--K3", [&o, mark](double v) { o.constants.k3 = v; mark(v); }, "universal constant K3");
  c->add_option_function<double>("--K4", [&o, mark](double v) { o.constants.k4 = v; mark(v); }, "universal constant K4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral inequalities and sampling sets on metric graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  Handler run;
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", o.output, "write to file instead of stdout");

  auto* spec = command(app, "spectrum", "eigenpairs up to --lambda-max", run_spectrum, run);
  graph_flag(spec, o);
  spec->add_option("--lambda-max", o.lambda_max, "largest eigenvalue");
  spec->add_option("--step", o.step, "scan step in k (0 = automatic)");
  spec->add_flag("--functions", o.with_functions, "include eigenfunction terms");

  auto* tors = command(app, "torsion", "torsion function and rigidity", run_torsion, run);
  graph_flag(tors, o);
  tors->add_option("--dirichlet", o.dirichlet, "Dirichlet vertex ids");

  auto* samp = app.add_subcommand("sampling", "sampling set analysis");
  samp->require_subcommand(1);
  auto* sv = command(*samp, "verify", "check a cover", run_sampling_verify, run);
  graph_flag(sv, o);
  sv->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  sv->add_option("--cover", o.cover, "cover JSON file certifying (gamma, rho)")->required();
  gamma_rho(sv, o);
  auto* sg = command(*samp, "gamma", "best gamma at given rho", run_sampling_gamma, run);
  graph_flag(sg, o);
  sg->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  sg->add_option("--rho", o.rho, "interval length bound rho > 0")->required();
  sg->add_option("--grid", o.grid, "optimizer grid per edge");
  auto* sr = command(*samp, "rho", "smallest rho at given gamma", run_sampling_rho, run);
  graph_flag(sr, o);
  sr->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  sr->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  sr->add_option("--grid", o.grid, "optimizer grid per edge");
  auto* sgap = command(*samp, "gaps", "gap structure and necessary condition", run_sampling_gaps, run);
  graph_flag(sgap, o);
  sgap->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  gamma_rho(sgap, o);

  auto* bnd = app.add_subcommand("bound", "evaluate constants");
  bnd->require_subcommand(1);
  auto* b21 = command(*bnd, "thm21", "eigenfunction sampling constant", run_bound_thm21, run);
  b21->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  b21->add_option("--rho", o.rho, "interval length bound rho > 0")->required();
  b21->add_option("--lambda", o.lambda, "spectral threshold lambda >= 0")->required();
  auto* b26 = command(*bnd, "thm26", "Bernstein-class sampling constant", run_bound_thm26, run);
  b26->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  b26->set_help_flag("--help", "Print this help message and exit");
  b26->add_option("--h", o.h, "Bernstein sum h >= 1")->required();
  auto* b72 = command(*bnd, "cor72", "k-th eigenvalue window constants", run_bound_cor72, run);
  graph_flag(b72, o);
  b72->add_option("--k", o.k, "eigenvalue index k >= 2")->required();
  b72->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  b72->add_option("--rho", o.rho, "interval length bound rho > 0")->required();
  auto* btr = command(*bnd, "trace", "heat trace bound", run_bound_trace, run);
  graph_flag(btr, o);
  btr->add_option("-s,--sampling", o.sampling, "sampling set JSON file");
  btr->add_option("--cover", o.cover, "cover JSON file certifying (gamma, rho)");
  btr->add_option("--grid", o.grid, "optimizer grid per edge");
  gamma_rho(btr, o);
  btr->add_option("--t", o.t, "time t > 0");
  btr->add_option("--lambda-max", o.lambda_max, "largest eigenvalue to compute");
  auto* bob = command(*bnd, "observability", "observability constant", run_bound_observability, run);
  bob->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  bob->add_option("--rho", o.rho, "interval length bound rho > 0")->required();
  bob->add_option("--T", o.T, "final time T > 0")->required();
  constants_flags(bob, o);
  auto* bto = command(*bnd, "torsion", "torsion function sampling constant", run_bound_torsion, run);
  graph_flag(bto, o);
  bto->add_option("--dirichlet", o.dirichlet, "Dirichlet vertex ids");
  bto->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  bto->add_option("--rho", o.rho, "interval length bound rho > 0")->required();

  auto* ver = app.add_subcommand("verify", "numerical checks");
  ver->require_subcommand(1);
  auto* vr = command(*ver, "ratio", "mass ratio against the eigenfunction constant", run_verify_ratio, run);
  graph_flag(vr, o);
  certificate_flags(vr, o);
  function_flags(vr, o);
  auto* vd = command(*ver, "derivative", "derivative mass ratio", run_verify_derivative, run);
  graph_flag(vd, o);
  certificate_flags(vd, o);
  function_flags(vd, o);
  auto* vc = command(*ver, "classify", "good/bad edge classification", run_verify_classify, run);
  graph_flag(vc, o);
  function_flags(vc, o);
  vc->add_option("--max-order", o.max_order, "largest derivative order checked");
  auto* vk = command(*ver, "kovrijkine", "polynomial remez-type inequality", run_verify_kovrijkine, run);
  vk->add_option("--coefficients", o.coefficients, "JSON list, phi(t) = sum c_j t^j")->required();
  vk->add_option("--set", o.set, "JSON [[a, b], ...] inside [0, 1]")->required();
  vk->add_option("--samples", o.samples, "sampling points for the sup bounds");
  auto* vl = command(*ver, "local", "single-edge local estimate", run_verify_local, run);
  vl->add_option("--function", o.function, "JSON term list")->required();
  vl->add_option("--length", o.length, "edge length");
  vl->add_option("--set", o.set, "JSON [[a, b], ...]")->required();
  auto* vo = command(*ver, "optimality", "cosine-power optimality example", run_verify_optimality, run);
  vo->add_option("--length", o.length, "edge length");
  vo->add_option("--lambda", o.lambda, "spectral threshold lambda >= 0")->required();
  vo->add_option("--gamma", o.gamma, "density gamma in (0, 1]")->required();
  auto* vob = command(*ver, "observability", "numerical observability constant", run_verify_observability, run);
  graph_flag(vob, o);
  vob->add_option("-s,--sampling", o.sampling, "sampling set JSON file")->required();
  vob->add_option("--T", o.T, "final time T > 0");
  vob->add_option("--modes", o.modes, "number of eigenmodes");
  vob->add_option("--rho", o.rho, "also evaluate the formula at this rho");
  vob->add_option("--grid", o.grid, "optimizer grid per edge");
  constants_flags(vob, o);
  auto* vt = command(*ver, "trace-ineq", "boundary trace inequality", run_verify_trace_ineq, run);
  graph_flag(vt, o);
  function_flags(vt, o);
  command(*ver, "lasso", "lasso example without a sampling set on the loop", run_verify_lasso, run);

  auto* aud = command(app, "audit", "randomized campaign", run_audit, run);
  aud->add_option("--graphs", o.audit_graphs, "number of random graphs");
  aud->add_option("--trials", o.audit_trials, "trials per graph");
  aud->add_option("--seed", o.seed, "random seed");
  aud->add_option("--lambda-max", o.audit_lambda_max, "largest eigenvalue to compute");
  aud->add_option("--grid", o.grid, "optimizer grid per edge");
  aud->add_flag("!--no-classify", o.audit_classify, "skip edge classification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    const Result r = run(o);
    emit(r, o.format, o.output);
    return r.exit_code;
  } catch (const qgs::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
