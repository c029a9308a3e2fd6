#include "mpinv/cli/app.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <CLI11.hpp>

#include "mpinv/cli/fredholm.hpp"
#include "mpinv/cli/matrix_io.hpp"
#include "mpinv/cli/report.hpp"
#include "mpinv/decomp.hpp"
#include "mpinv/eigen.hpp"
#include "mpinv/error.hpp"
#include "mpinv/lstsq.hpp"
#include "mpinv/pinv.hpp"

namespace mpinv::cli {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string route = "auto";
  double rank_tol = 1e-10;
  double mu0 = 0.0;
  double mu_factor = 0.1;
  int mu_steps = 12;
  double tol = 1e-9;
  std::string in;
  std::string rhs;
  std::string candidate;
  std::string out;
  std::string format;
  std::string report = "text";
  int precision = 17;
  bool no_timing = false;
  std::size_t grid = 32;
  std::string kernel = "gaussian";
  std::string solution = "sine";
};

using Outputs = std::vector<std::pair<std::string, ComplexMatrix>>;

class Command {
 public:
  Command(std::string name, const Flags& flags) : name_(std::move(name)), flags_(flags) {}

  PinvOptions pinv_options() const {
    PinvOptions o;
    o.route = parse_route(flags_.route);
    o.rank_tol = flags_.rank_tol;
    o.mu.mu0 = flags_.mu0;
    o.mu.factor = flags_.mu_factor;
    o.mu.max_steps = flags_.mu_steps;
    o.accept_tol = flags_.tol;
    o.validate();
    return o;
  }

  DecompOptions decomp_options() const {
    if (!(flags_.rank_tol > 0.0)) throw std::invalid_argument("rank_tol must be positive");
    DecompOptions o;
    o.rank_tol = flags_.rank_tol;
    return o;
  }

  ComplexMatrix read(const std::string& path, const char* flag) const {
    if (path.empty()) throw std::invalid_argument(std::string(flag) + " is required");
    return read_matrix(path, format_for(path));
  }

  int execute(std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    report_.command = name_;
    report_.route_used = "none";
    Outputs outputs = dispatch();
    report_.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    const bool json = flags_.report == "json";
    if (!flags_.out.empty()) {
      for (const auto& [suffix, m] : outputs) {
        const fs::path path = output_path(suffix);
        write_matrix(m, path, format_for(path.string()), flags_.precision);
      }
    } else if (json) {
      for (const auto& [suffix, m] : outputs) {
        report_.result[suffix.empty() ? "matrix" : suffix] = nlohmann::ordered_json::parse(to_json(m));
      }
    } else {
      for (const auto& [suffix, m] : outputs) {
        out << (suffix.empty() ? "matrix" : suffix) << ":\n" << to_csv(m, flags_.precision) << '\n';
      }
    }
    if (json) {
      out << report_.to_json(!flags_.no_timing).dump(2) << '\n';
    } else {
      out << report_.to_text(!flags_.no_timing);
    }
    return status_;
  }

 private:
  Outputs dispatch() {
    if (name_ == "pinv") return run_pinv();
    if (name_ == "lstsq") return run_lstsq();
    if (name_ == "svd") return run_svd();
    if (name_ == "polar") return run_polar();
    if (name_ == "eig") return run_eig();
    if (name_ == "singular-values") return run_singular_values();
    if (name_ == "verify") return run_verify();
    return run_fredholm();
  }

  FileFormat format_for(const std::string& path) const {
    return flags_.format.empty() ? format_from_extension(path) : parse_format(flags_.format);
  }

  // "x.csv" with suffix "v" becomes "x.v.csv".
  fs::path output_path(const std::string& suffix) const {
    fs::path p(flags_.out);
    if (suffix.empty()) return p;
    const fs::path ext = p.extension();
    p.replace_extension();
    return p.string() + "." + suffix + ext.string();
  }

  void pinv_tolerances(const PinvOptions& o) {
    report_.tolerances = {{"rank_tol", o.rank_tol},     {"conv_tol", o.conv_tol},   {"accept_tol", o.accept_tol},
                          {"mu0", o.mu.mu0},             {"mu_factor", o.mu.factor}, {"mu_steps", static_cast<double>(o.mu.max_steps)},
                          {"cluster_tol", o.cluster_tol}, {"sep_tol", o.sep_tol},
                          {"max_amplification", o.max_amplification}};
  }

  PinvResult checked_pinv(const ComplexMatrix& a, const PinvOptions& o) {
    PinvResult r = mpinv::pinv(a, o);
    report_.route_used = std::string(to_string(r.route_used));
    report_.penrose_residuals = r.report;
    report_.result["passed"] = r.passed;
    if (!r.passed) status_ = kExitNumerical;
    return r;
  }

  Outputs run_pinv() {
    const PinvOptions o = pinv_options();
    pinv_tolerances(o);
    const ComplexMatrix a = read(flags_.in, "--in");
    PinvResult r = checked_pinv(a, o);
    return {{"", std::move(r.matrix)}};
  }

  Outputs run_lstsq() {
    const PinvOptions o = pinv_options();
    pinv_tolerances(o);
    const ComplexMatrix a = read(flags_.in, "--in");
    const ComplexMatrix y = read(flags_.rhs, "--rhs");
    if (y.rows() != a.rows()) {
      throw ShapeError("right-hand side has " + std::to_string(y.rows()) + " rows, A has " + std::to_string(a.rows()));
    }
    const PinvResult r = checked_pinv(a, o);
    LeastSquaresSolution sol = least_squares_from(a, r.matrix, y);
    const ComplexMatrix normal = matmul(adjoint(a), matmul(a, sol.x_min) - y);
    report_.result["residual_norm"] = sol.residual_norm;
    report_.result["exact"] = sol.exact;
    report_.result["normal_equation_residual"] = frobenius_norm(normal);
    return {{"", std::move(sol.x_min)}, {"kernel_projector", std::move(sol.kernel_projector)}};
  }

  Outputs run_svd() {
    const DecompOptions o = decomp_options();
    report_.tolerances = {{"rank_tol", o.rank_tol}, {"psd_tol", o.psd_tol}};
    const ComplexMatrix a = read(flags_.in, "--in");
    SvdFactors f = a.is_square() ? svd_square(a, o) : svd_rect(a, o);
    report_.result["embedded"] = f.shape.has_value();
    report_.result["singular_values"] = f.s;
    report_.result["reconstruction_error"] = distance(f.reconstruct(), a);
    ComplexMatrix s = f.s_matrix();
    return {{"v", std::move(f.v)}, {"s", std::move(s)}, {"w", std::move(f.w)}};
  }

  Outputs run_polar() {
    const DecompOptions o = decomp_options();
    report_.tolerances = {{"rank_tol", o.rank_tol}, {"psd_tol", o.psd_tol}};
    const ComplexMatrix a = read(flags_.in, "--in");
    PolarFactors f = polar(a, o);
    const ComplexMatrix uu = matmul(adjoint(f.unitary), f.unitary);
    report_.result["reconstruction_error"] = distance(matmul(f.unitary, f.psd_factor), a);
    report_.result["unitarity_defect"] = distance(uu, ComplexMatrix::identity(uu.rows()));
    return {{"unitary", std::move(f.unitary)}, {"psd", std::move(f.psd_factor)}};
  }

  Outputs run_eig() {
    const JacobiOptions o;
    report_.tolerances = {{"tol", o.tol}, {"hermitian_tol", o.hermitian_tol}, {"max_sweeps", static_cast<double>(o.max_sweeps)}};
    const ComplexMatrix h = read(flags_.in, "--in");
    HermitianEigen e = hermitian_eig(h, o);
    const ComplexMatrix rebuilt = matmul(matmul(e.vectors, ComplexMatrix::diagonal(e.eigenvalues)), adjoint(e.vectors));
    report_.result["eigenvalues"] = e.eigenvalues;
    report_.result["reconstruction_error"] = distance(rebuilt, h);
    return {{"values", column_of(e.eigenvalues)}, {"vectors", std::move(e.vectors)}};
  }

  Outputs run_singular_values() {
    const JacobiOptions o;
    report_.tolerances = {{"tol", o.tol}};
    const ComplexMatrix a = read(flags_.in, "--in");
    const std::vector<double> s = singular_values(a, o);
    report_.result["singular_values"] = s;
    return {{"", column_of(s)}};
  }

  Outputs run_verify() {
    report_.tolerances = {{"accept_tol", flags_.tol}};
    const ComplexMatrix a = read(flags_.in, "--in");
    const ComplexMatrix b = read(flags_.candidate, "--candidate");
    const PenroseReport p = verify_penrose(a, b);
    report_.penrose_residuals = p;
    report_.result["passes"] = p.passes(flags_.tol);
    return {};
  }

  Outputs run_fredholm() {
    FredholmOptions o;
    o.kernel = parse_kernel(flags_.kernel);
    o.solution = parse_solution(flags_.solution);
    o.grid_n = flags_.grid;
    o.pinv = pinv_options();
    pinv_tolerances(o.pinv);
    FredholmResult r = fredholm_demo(o);
    report_.route_used = "tikhonov";
    auto steps = nlohmann::ordered_json::array();
    bool monotone = true;
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const FredholmStep& s = r.steps[k];
      steps.push_back({{"mu", s.mu}, {"error", s.error}, {"residual", s.residual}});
      if (k > 0 && s.residual > r.steps[k - 1].residual) monotone = false;
    }
    report_.result["grid_n"] = o.grid_n;
    report_.result["kernel"] = flags_.kernel;
    report_.result["solution"] = flags_.solution;
    report_.result["steps"] = std::move(steps);
    report_.result["final_error"] = r.steps.back().error;
    report_.result["final_residual"] = r.steps.back().residual;
    report_.result["residual_monotone"] = monotone;
    return {{"", std::move(r.solution)}};
  }

  static ComplexMatrix column_of(const std::vector<double>& values) {
    ComplexMatrix c(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) c(i, 0) = values[i];
    return c;
  }

  std::string name_;
  const Flags& flags_;
  RunReport report_;
  int status_ = kExitOk;
};

void add_pinv_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--route", f.route, "auto, spectral, polynomial, tikhonov, svd or fullrank")
      ->check(CLI::IsMember({"auto", "spectral", "polynomial", "tikhonov", "svd", "fullrank"}));
  sub->add_option("--mu0", f.mu0, "first regularization parameter; 0 picks 1e-2 ||A||_F^2");
  sub->add_option("--mu-factor", f.mu_factor, "ratio between successive mu");
  sub->add_option("--mu-steps", f.mu_steps, "length of the mu schedule");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"Moore-Penrose pseudoinverse and friends for dense complex matrices", "mpinv"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--in", flags.in, "input matrix file");
    sub->add_option("--out", flags.out, "output file; multi-matrix commands add .name before the extension");
    sub->add_option("--format", flags.format, "csv or json; default from each file extension")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--report", flags.report, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--precision", flags.precision, "significant digits in csv output")->check(CLI::Range(1, 17));
    sub->add_option("--rank-tol", flags.rank_tol, "relative zero threshold for Gram eigenvalues");
    sub->add_option("--tol", flags.tol, "Penrose acceptance bound relative to the report scale");
    sub->add_flag("--no-timing", flags.no_timing, "leave timing_ms out of the report");
  };

  CLI::App* pinv_cmd = app.add_subcommand("pinv", "pseudoinverse of --in");
  common(pinv_cmd);
  add_pinv_flags(pinv_cmd, flags);

  CLI::App* lstsq_cmd = app.add_subcommand("lstsq", "minimum-norm least-squares solution of A x = y");
  common(lstsq_cmd);
  add_pinv_flags(lstsq_cmd, flags);
  lstsq_cmd->add_option("--rhs", flags.rhs, "right-hand side y, one column per system");

  common(app.add_subcommand("svd", "A = V S W^*, rectangular input through the square embedding"));
  common(app.add_subcommand("polar", "A = U |A| for square A"));
  common(app.add_subcommand("eig", "eigenvalues and eigenvectors of a Hermitian matrix"));
  common(app.add_subcommand("singular-values", "singular values, descending"));

  CLI::App* verify_cmd = app.add_subcommand("verify", "Penrose residuals of --candidate against --in");
  common(verify_cmd);
  verify_cmd->add_option("--candidate", flags.candidate, "claimed pseudoinverse");

  CLI::App* demo_cmd = app.add_subcommand("fredholm-demo", "Tikhonov recovery of a manufactured solution");
  common(demo_cmd);
  add_pinv_flags(demo_cmd, flags);
  demo_cmd->add_option("--grid", flags.grid, "grid points on [0, 1], at least 8");
  demo_cmd->add_option("--kernel", flags.kernel, "gaussian")->check(CLI::IsMember({"gaussian"}));
  demo_cmd->add_option("--solution", flags.solution, "sine or zero")->check(CLI::IsMember({"sine", "zero"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mpinv: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    Command cmd(name, flags);
    return cmd.execute(out);
  } catch (const ParseError& e) {
    err << "mpinv " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const ShapeError& e) {
    err << "mpinv " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const mpinv::Error& e) {
    err << "mpinv " << name << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "mpinv " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // I/O failures: unreadable input or unwritable output.
    err << "mpinv " << name << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace mpinv::cli
