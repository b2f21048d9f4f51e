#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "supergeom/document.hpp"
#include "supergeom/error.hpp"
#include "supergeom/io.hpp"
#include "supergeom/orthosymplectic.hpp"
#include "supergeom/reduction.hpp"
#include "supergeom/superfunction.hpp"
#include "supergeom/supermatrix.hpp"

namespace supergeom::cli {

namespace {

struct Options {
  double tol = 1e-9;
  std::string format = "text";
  std::optional<int> rank;
  std::optional<Dims> dims;
};

// Collects the human-readable report and the summary fields of one command.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  std::ostringstream& text() { return text_; }
  void field(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
  void field(const std::string& key, double value) { field(key, format_number(value)); }
  void field(const std::string& key, int value) { field(key, std::to_string(value)); }

  int finish(int status, const Options& options, std::ostream& out) const {
    if (options.format != "summary") out << text_.str();
    out << "RESULT: " << (status == kStatusOk ? "ok" : "fail") << " command=" << command_;
    for (const auto& [key, value] : fields_) out << " " << key << "=" << value;
    out << "\n";
    return status;
  }

 private:
  std::string command_;
  std::ostringstream text_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// A path that names a readable file is replaced by its contents; anything
// else is taken as an inline literal.
std::string load_operand(const std::string& operand) {
  std::ifstream in(operand);
  if (!in) return operand;
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot read file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_matrix_text(const std::string& text) {
  const std::string t = trim(text);
  return t.rfind("dims", 0) == 0 || t.rfind("rank", 0) == 0 || t.rfind("[", 0) == 0;
}

int require_rank(const Options& options) {
  if (!options.rank) throw ParseError(1, 1, "element literals need --rank");
  return *options.rank;
}

SuperMatrix load_matrix(const std::string& operand, const Options& options) {
  return parse_supermatrix(load_operand(operand), options.dims, options.rank);
}

std::string parity_name(MatrixParity p) {
  switch (p) {
    case MatrixParity::Even: return "even";
    case MatrixParity::Odd: return "odd";
    case MatrixParity::Mixed: return "mixed";
  }
  return "mixed";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::DimMismatch:
    case ErrorKind::RankMismatch:
    case ErrorKind::RankTooLarge:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DuplicateIndex:
    case ErrorKind::UnsortedIndex:
    case ErrorKind::InvalidNerve:
    case ErrorKind::UnknownChart:
    case ErrorKind::NerveMismatch:
      return true;
    default:
      return false;
  }
}

// Commands

int cmd_eval(const Options& o, const std::string& function, const std::string& point, std::ostream& out) {
  Report r("eval");
  const SuperFunction f = parse_superfunction(load_operand(function), o.dims, o.rank);
  const SuperVector q = parse_supervector(trim(load_operand(point)), f.rank());
  const GrassmannElement value = evaluate(f, q);
  r.text() << "F(q) = " << to_literal(value) << "\n";
  r.field("value", quoted(to_literal(value)));
  return r.finish(kStatusOk, o, out);
}

int cmd_mul(const Options& o, const std::string& lhs, const std::string& rhs, std::ostream& out) {
  Report r("mul");
  const std::string a = load_operand(lhs);
  const std::string b = load_operand(rhs);
  if (is_matrix_text(a) != is_matrix_text(b)) throw ParseError(1, 1, "operands must both be matrices or both elements");
  if (is_matrix_text(a)) {
    const SuperMatrix lhs_matrix = parse_supermatrix(a, o.dims, o.rank);
    const SuperMatrix rhs_matrix =
        parse_supermatrix(b, o.dims.value_or(lhs_matrix.dims()), o.rank.value_or(lhs_matrix.rank()));
    const SuperMatrix product = lhs_matrix * rhs_matrix;
    r.text() << to_literal(product);
    r.field("kind", std::string("matrix"));
    r.field("parity", parity_name(parity_of(product)));
  } else {
    const int rank = require_rank(o);
    const GrassmannElement product = parse_element(a, rank) * parse_element(b, rank);
    r.text() << to_literal(product) << "\n";
    r.field("kind", std::string("element"));
    r.field("value", quoted(to_literal(product)));
  }
  return r.finish(kStatusOk, o, out);
}

int cmd_inv(const Options& o, const std::string& operand, std::ostream& out) {
  Report r("inv");
  const std::string text = load_operand(operand);
  if (is_matrix_text(text)) {
    const SuperMatrix l = parse_supermatrix(text, o.dims, o.rank);
    if (!is_invertible(l)) {
      r.text() << "matrix is not invertible: its body is singular\n";
      r.field("reason", std::string("NotInvertible"));
      return r.finish(kStatusFail, o, out);
    }
    const SuperMatrix inverse = invert(l);
    const SuperMatrix identity = SuperMatrix::identity(l.dims(), l.rank());
    const double residual = std::max(max_deviation(l * inverse, identity), max_deviation(inverse * l, identity));
    r.text() << to_literal(inverse);
    r.field("kind", std::string("matrix"));
    r.field("residual", residual);
  } else {
    const GrassmannElement a = parse_element(text, require_rank(o));
    if (a.body() == 0.0) {
      r.text() << "element has zero body and no inverse\n";
      r.field("reason", std::string("ZeroBody"));
      return r.finish(kStatusFail, o, out);
    }
    const GrassmannElement inverse = a.inverse();
    r.text() << to_literal(inverse) << "\n";
    r.field("kind", std::string("element"));
    r.field("value", quoted(to_literal(inverse)));
  }
  return r.finish(kStatusOk, o, out);
}

int cmd_exp(const Options& o, const std::string& operand, std::ostream& out) {
  Report r("exp");
  const SuperMatrix result = exp(load_matrix(operand, o));
  r.text() << to_literal(result);
  r.field("parity", parity_name(parity_of(result)));
  return r.finish(kStatusOk, o, out);
}

int cmd_log(const Options& o, const std::string& operand, std::ostream& out) {
  Report r("log");
  const SuperMatrix l = load_matrix(operand, o);
  const SuperMatrix result = log(l);
  r.text() << to_literal(result);
  r.field("residual", max_deviation(exp(result), l));
  return r.finish(kStatusOk, o, out);
}

int cmd_osp_check(const Options& o, const std::string& operand, std::ostream& out) {
  Report r("osp-check");
  const SuperMatrix l = load_matrix(operand, o);
  const OmegaForm form = OmegaForm::for_dims(l.dims(), l.rank());
  if (parity_of(l) != MatrixParity::Even) {
    r.text() << "matrix is not even; OSp membership is undefined\n";
    r.field("reason", std::string("NotEven"));
    return r.finish(kStatusFail, o, out);
  }
  const OspReport report = osp_report(form, l, o.tol);
  r.text() << "max coefficient deviation of L^st G L from G per (row, col):\n";
  for (int a = 0; a < report.size; ++a) {
    for (int b = 0; b < report.size; ++b) {
      const bool worst = a == report.worst_row && b == report.worst_col;
      r.text() << (b ? "  " : "") << format_number(report.at(a, b)) << (worst ? "*" : "");
    }
    r.text() << "\n";
  }
  r.text() << "worst pair (" << report.worst_row + 1 << "," << report.worst_col + 1 << ") marked *\n";
  r.field("max_deviation", report.max_deviation);
  r.field("worst", "(" + std::to_string(report.worst_row + 1) + "," + std::to_string(report.worst_col + 1) + ")");
  return r.finish(report.ok ? kStatusOk : kStatusFail, o, out);
}

int cmd_cartan(const Options& o, const std::string& operand, int max_iter, std::ostream& out) {
  Report r("cartan");
  const SuperMatrix g = load_matrix(operand, o);
  const CartanFactors factors = cartan_factor(g, std::min(o.tol, 1e-10), max_iter);
  const double residual = max_deviation(exp(factors.f) * exp(factors.h), g);
  r.text() << "F =\n" << to_literal(factors.f) << "I =\n" << to_literal(factors.h);
  r.field("iterations", factors.iterations);
  r.field("residual", residual);
  return r.finish(residual <= o.tol ? kStatusOk : kStatusFail, o, out);
}

int cmd_cocycle_verify(const Options& o, const std::string& path, std::ostream& out) {
  Report r("cocycle-verify");
  const CocycleDocument doc = parse_cocycle_document(load_file(path));
  const CocycleReport report = verify_cocycle(doc.cocycle(), o.tol);
  r.text() << "charts: " << doc.nerve.charts().size() << ", overlaps: " << doc.nerve.overlaps().size()
           << ", triples: " << doc.nerve.triples().size() << "\n";
  for (const auto& v : report.violations) {
    r.text() << "violation " << to_string(v.kind) << " on (";
    for (std::size_t k = 0; k < v.charts.size(); ++k) r.text() << (k ? ", " : "") << v.charts[k];
    r.text() << ") deviation " << format_number(v.deviation) << "\n";
  }
  r.field("violations", static_cast<int>(report.violations.size()));
  r.field("max_deviation", report.max_deviation);
  return r.finish(report.valid() ? kStatusOk : kStatusFail, o, out);
}

void write_compatibility(Report& r, const CompatibilityReport& report) {
  for (const auto& ov : report.overlaps) {
    r.text() << "overlap (" << ov.from << ", " << ov.to << "): OSp deviation " << format_number(ov.deviation)
             << (ov.ok ? "" : "  NOT COMPATIBLE") << "\n";
  }
}

int cmd_reduce(const Options& o, const std::string& path, const std::string& output, std::ostream& out) {
  Report r("reduce");
  const CocycleDocument doc = parse_cocycle_document(load_file(path));
  const Cocycle cocycle = doc.cocycle();
  const CocycleReport valid = verify_cocycle(cocycle, o.tol);
  if (!valid.valid()) {
    r.text() << "input transitions do not form a cocycle\n";
    r.field("reason", std::string("InvalidCocycle"));
    r.field("violations", static_cast<int>(valid.violations.size()));
    return r.finish(kStatusFail, o, out);
  }
  const Section section = doc.section_data();
  const CompatibilityReport compat = check_compatibility(cocycle, section, o.tol);
  write_compatibility(r, compat);
  const int failed = static_cast<int>(
      std::count_if(compat.overlaps.begin(), compat.overlaps.end(), [](const auto& ov) { return !ov.ok; }));
  if (failed > 0) {
    r.field("reason", std::string("NotCompatible"));
    r.field("overlaps_failed", failed);
    r.field("max_deviation", compat.max_deviation());
    return r.finish(kStatusFail, o, out);
  }
  const ReductionData reduction = section_to_reduction(cocycle, section, o.tol);
  const std::string json = to_json(reduction_document(reduction, doc.rank, doc.dims));
  if (!output.empty()) {
    std::ofstream file(output);
    if (!file) throw Error(ErrorKind::Parse, "cannot write '" + output + "'");
    file << json;
    r.text() << "reduction written to " << output << "\n";
  } else {
    r.text() << json;
  }
  r.field("overlaps", static_cast<int>(compat.overlaps.size()));
  r.field("max_deviation", compat.max_deviation());
  return r.finish(kStatusOk, o, out);
}

int cmd_section_check(const Options& o, const std::string& path, const std::string& against, std::ostream& out) {
  Report r("section-check");
  const CocycleDocument doc = parse_cocycle_document(load_file(path));
  const Section section = doc.section_data();
  if (!against.empty()) {
    const CocycleDocument other = parse_cocycle_document(load_file(against));
    const bool equal = sections_equal(section, other.section_data(), o.tol);
    r.text() << (equal ? "sections agree as OSp cosets on every chart\n" : "sections differ as OSp cosets\n");
    r.field("equal", std::string(equal ? "true" : "false"));
    return r.finish(equal ? kStatusOk : kStatusFail, o, out);
  }
  const CompatibilityReport compat = check_compatibility(doc.cocycle(), section, o.tol);
  write_compatibility(r, compat);
  for (const auto& chart : doc.nerve.charts())
    r.text() << "supermetric Gram on " << chart << ":\n" << to_literal(supermetric_gram(section, chart));
  r.field("compatible", std::string(compat.compatible() ? "true" : "false"));
  r.field("max_deviation", compat.max_deviation());
  return r.finish(compat.compatible() ? kStatusOk : kStatusFail, o, out);
}

Options summary_options(Options options) {
  options.format = "summary";
  return options;
}

std::optional<Dims> parse_dims_flag(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError(1, 1, "--dims expects n,m");
  try {
    const int n = std::stoi(text.substr(0, comma));
    const int m = std::stoi(text.substr(comma + 1));
    if (n < 0 || m < 0) throw ParseError(1, 1, "--dims must be non-negative");
    return Dims{n, m};
  } catch (const std::logic_error&) {
    throw ParseError(1, 1, "--dims expects n,m");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grassmann-algebra supergeometry toolkit", "supergeom"};
  app.require_subcommand(1);
  app.fallthrough();

  Options options;
  int rank_flag = -1;
  std::string dims_flag;
  app.add_option("--tol", options.tol, "Verification tolerance (default 1e-9)");
  app.add_option("--format", options.format, "Output format")->check(CLI::IsMember({"text", "summary"}));
  app.add_option("--rank", rank_flag, "Grassmann rank N for literals without a header");
  app.add_option("--dims", dims_flag, "Supermatrix/superfunction dims n,m");

  std::string a;
  std::string b;
  std::string output;
  std::string against;
  int max_iter = 50;

  auto* eval = app.add_subcommand("eval", "Evaluate a superfunction at a point of B^{n,m}");
  eval->add_option("function", a, "Superfunction file or literal")->required();
  eval->add_option("point", b, "Supervector literal or file")->required();
  auto* mul = app.add_subcommand("mul", "Multiply two elements or two supermatrices");
  mul->add_option("lhs", a)->required();
  mul->add_option("rhs", b)->required();
  auto* inv = app.add_subcommand("inv", "Invert an element or a supermatrix");
  inv->add_option("operand", a)->required();
  auto* expc = app.add_subcommand("exp", "Supermatrix exponential");
  expc->add_option("matrix", a)->required();
  auto* logc = app.add_subcommand("log", "Supermatrix logarithm near the identity");
  logc->add_option("matrix", a)->required();
  auto* osp = app.add_subcommand("osp-check", "Test membership in OSp(n|m)");
  osp->add_option("matrix", a)->required();
  auto* cartan = app.add_subcommand("cartan", "Factor g = exp(F) exp(I)");
  cartan->add_option("matrix", a)->required();
  cartan->add_option("--max-iter", max_iter, "Iteration cap");
  auto* verify = app.add_subcommand("cocycle-verify", "Check the cocycle identities of a cocycle file");
  verify->add_option("file", a)->required();
  auto* reduce = app.add_subcommand("reduce", "Turn a section into an OSp reduction");
  reduce->add_option("file", a)->required();
  reduce->add_option("-o,--output", output, "Write the reduction file here");
  auto* section_check = app.add_subcommand("section-check", "Check a section, or compare two sections");
  section_check->add_option("file", a)->required();
  section_check->add_option("--against", against, "Second file whose section is compared");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kStatusInputError;
  }

  std::string command = "none";
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    if (!(options.tol > 0.0)) throw ParseError(1, 1, "--tol must be positive");
    if (rank_flag >= 0) options.rank = rank_flag;
    options.dims = parse_dims_flag(dims_flag);

    if (*eval) return cmd_eval(options, a, b, out);
    if (*mul) return cmd_mul(options, a, b, out);
    if (*inv) return cmd_inv(options, a, out);
    if (*expc) return cmd_exp(options, a, out);
    if (*logc) return cmd_log(options, a, out);
    if (*osp) return cmd_osp_check(options, a, out);
    if (*cartan) return cmd_cartan(options, a, max_iter, out);
    if (*verify) return cmd_cocycle_verify(options, a, out);
    if (*reduce) return cmd_reduce(options, a, output, out);
    if (*section_check) return cmd_section_check(options, a, against, out);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    Report r(command);
    r.field("reason", std::string("Parse"));
    r.field("line", e.line());
    r.field("column", e.column());
    return r.finish(kStatusInputError, summary_options(options), out);
  } catch (const Error& e) {
    const bool input = is_input_error(e.kind());
    err << (input ? "input error: " : "error: ") << e.what() << "\n";
    Report r(command);
    r.field("reason", std::string(to_string(e.kind())));
    return r.finish(input ? kStatusInputError : kStatusFail, summary_options(options), out);
  }
  return kStatusInputError;
}

}  // namespace supergeom::cli
