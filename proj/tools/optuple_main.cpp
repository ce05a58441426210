#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "optuple/io.hpp"

namespace {

using optuple::io::json;

struct CommonOpts {
  std::string file = "-";
  std::string out;
  double tol = -1.0;
  std::uint64_t seed = 0x5eed0117ull;
  int starts = 64;
  bool text = false;
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool takes_file) {
  if (takes_file)
    cmd->add_option("file", o.file, "instance file (JSON); '-' reads stdin")
        ->default_val("-");
  cmd->add_option("--out", o.out, "write the report to this path instead of stdout");
  cmd->add_option("--tol", o.tol, "decision tolerance override");
  cmd->add_option("--seed", o.seed, "master seed for the randomized searches");
  cmd->add_option("--starts", o.starts, "random starts per search");
  cmd->add_flag("--text", o.text, "human-readable output (default is JSON)");
  cmd->add_flag("--json", [](std::int64_t) {}, "machine output (default)");
  cmd->add_flag("--serial", o.serial, "disable OpenMP multi-starts");
}

optuple::SolveConfig make_config(const CommonOpts& o) {
  optuple::SolveConfig cfg;
  cfg.seed = o.seed;
  cfg.starts = o.starts;
  cfg.parallel = !o.serial;
  if (o.tol > 0.0) {
    cfg.tol_bj = o.tol;
    cfg.tol_cert = o.tol;
  }
  return cfg;
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw optuple::ParseError("/", "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& report, const CommonOpts& o) {
  const std::string body =
      o.text ? optuple::io::render_text(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.out);
    if (!out) throw optuple::ParseError("/", "cannot open output file: " + o.out);
    out << body;
  }
}

json envelope(const char* command, const CommonOpts& o, const optuple::SolveConfig& cfg) {
  json j;
  j["command"] = command;
  j["seed"] = o.seed;
  j["starts"] = o.starts;
  j["tolerances"] = {{"norm", cfg.tol_norm}, {"attain", cfg.tol_attain},
                     {"bj", cfg.tol_bj},     {"cert", cfg.tol_cert},
                     {"tie", cfg.tol_tie},   {"cluster", cfg.tol_cluster}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"joint p-operator norms, best approximations, Birkhoff-James "
               "orthogonality certificates and Gateaux derivatives for tuples "
               "of operators between finite-dimensional l_p spaces"};
  app.require_subcommand(1);

  CommonOpts norm_o, dist_o, bj_o, rho_o, smooth_o, check_o, gen_o;

  CLI::App* cmd_norm = app.add_subcommand("norm", "tuple/operator norm with witnesses");
  add_common(cmd_norm, norm_o, true);

  CLI::App* cmd_dist = app.add_subcommand("dist", "distance to the diagonal subspace");
  add_common(cmd_dist, dist_o, true);

  CLI::App* cmd_bj = app.add_subcommand("bj", "Birkhoff-James orthogonality decision");
  add_common(cmd_bj, bj_o, true);

  CLI::App* cmd_rho = app.add_subcommand("rho", "one-sided Gateaux derivatives");
  add_common(cmd_rho, rho_o, true);

  CLI::App* cmd_smooth = app.add_subcommand("smooth", "smoothness classification");
  add_common(cmd_smooth, smooth_o, true);

  CLI::App* cmd_check = app.add_subcommand("check", "run the theorem suite");
  add_common(cmd_check, check_o, false);
  bool suite = false;
  std::string theorem;
  int count = 6;
  cmd_check->add_flag("--suite", suite, "run every checker");
  cmd_check->add_option("--theorem", theorem, "run a single checker by id");
  cmd_check->add_option("--count", count, "generated instances per family");

  CLI::App* cmd_gen = app.add_subcommand("gen", "emit a generated instance file");
  add_common(cmd_gen, gen_o, false);
  std::string example = "golden";
  int gdim = 3, gd = 2;
  double gouter = 2.0, gdomain = 2.0;
  std::string gfield = "real";
  cmd_gen->add_option("--example", example, "a | b | golden")->default_val("golden");
  cmd_gen->add_option("--dim", gdim, "domain dimension");
  cmd_gen->add_option("--d", gd, "number of components");
  cmd_gen->add_option("--outer-p", gouter, "outer exponent (inf not supported here)");
  cmd_gen->add_option("--p", gdomain, "domain exponent (example b)");
  cmd_gen->add_option("--field", gfield, "real | complex");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_gen) {
      optuple::Field field;
      if (gfield == "real")
        field = optuple::Field::real;
      else if (gfield == "complex")
        field = optuple::Field::cplx;
      else
        throw optuple::ParseError("/field", "field must be \"real\" or \"complex\"");
      optuple::Instance inst = [&] {
        const auto outer = optuple::Exponent::from_value(gouter);
        if (example == "golden") return optuple::golden_counterexample();
        if (example == "a")
          return optuple::gen_example_a(gdim, gd, gen_o.seed, outer, field);
        if (example == "b")
          return optuple::gen_example_b(gdim, gd, gen_o.seed, outer, gdomain, field);
        throw optuple::ParseError("/example", "example must be a, b or golden");
      }();
      emit(optuple::io::instance_to_json(inst), gen_o);
      return 0;
    }

    if (*cmd_check) {
      optuple::SuiteOptions opt;
      opt.seed = check_o.seed;
      opt.count = count;
      opt.cfg = make_config(check_o);
      if (!theorem.empty()) opt.only_theorem = theorem;
      if (check_o.tol > 0.0) opt.tolerance_override = check_o.tol;
      (void)suite;  // --suite is the default behavior
      const optuple::SuiteSummary sum = optuple::run_suite(opt);
      json rep = envelope("check", check_o, opt.cfg);
      rep["suite"] = optuple::io::to_json(sum);
      emit(rep, check_o);
      return sum.violated > 0 ? 2 : 0;
    }

    CommonOpts* o = nullptr;
    const char* name = nullptr;
    if (*cmd_norm) { o = &norm_o; name = "norm"; }
    else if (*cmd_dist) { o = &dist_o; name = "dist"; }
    else if (*cmd_bj) { o = &bj_o; name = "bj"; }
    else if (*cmd_rho) { o = &rho_o; name = "rho"; }
    else { o = &smooth_o; name = "smooth"; }

    const optuple::SolveConfig cfg = make_config(*o);
    const optuple::Instance inst = optuple::io::parse_instance_text(read_all(o->file));
    json rep = envelope(name, *o, cfg);

    if (*cmd_norm) {
      rep["result"] = optuple::io::to_json(optuple::tuple_norm(inst.T, cfg));
      rep["attainment"] =
          optuple::io::to_json(optuple::attainment_set(inst.T, cfg));
      rep["joint_attainment"] =
          optuple::io::to_json(optuple::joint_attainment_check(inst.T, cfg));
    } else if (*cmd_dist) {
      if (inst.T.size() == 1)
        rep["result"] = optuple::io::to_json(
            optuple::distance_to_line(inst.T.component(0), inst.S.component(0), cfg));
      else
        rep["result"] = optuple::io::to_json(
            optuple::distance_to_diagonal_subspace(inst.T, inst.S, cfg));
    } else if (*cmd_bj) {
      rep["result"] = optuple::io::to_json(optuple::bj_orthogonal(inst.T, inst.S, cfg));
    } else if (*cmd_rho) {
      rep["difference_quotient"] =
          optuple::io::to_json(optuple::rho_operator(inst.T, inst.S, cfg));
      if (inst.T.outer_p().is_infinite())
        rep["component_formula"] =
            optuple::io::to_json(optuple::rho_tuple_infty_formula(inst.T, inst.S, cfg));
      else {
        const optuple::SandwichBounds sb =
            optuple::rho_sandwich_bounds(inst.T, inst.S, cfg);
        rep["sandwich"] = {{"lower", sb.lower},
                           {"upper", sb.upper},
                           {"hypothesis_ok", sb.hypothesis_ok},
                           {"weights", sb.weights}};
      }
    } else if (*cmd_smooth) {
      json comps = json::array();
      for (const auto& t : inst.T.components())
        comps.push_back(optuple::io::to_json(optuple::smoothness_of_operator(t, cfg)));
      rep["components"] = std::move(comps);
      rep["tuple"] = optuple::io::to_json(optuple::smoothness_of_operator(inst.T, cfg));
    }
    emit(rep, *o);
    return 0;
  } catch (const optuple::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
