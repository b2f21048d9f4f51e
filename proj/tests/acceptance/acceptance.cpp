// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "supergeom/error.hpp"
#include "supergeom/orthosymplectic.hpp"
#include "supergeom/reduction.hpp"
#include "supergeom/superfunction.hpp"

using namespace supergeom;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates a worst-case deviation and the first failing case.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++cases_;
    if (!ok && first_failure_.empty()) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  void within(double deviation, double tol, const std::string& what) {
    worst_ = std::max(worst_, deviation);
    check(deviation <= tol, what + " deviation " + std::to_string(deviation));
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << "; " << cases_ << " checks";
    if (worst_ > 0) s << ", worst deviation " << worst_;
    if (!pass_) s << "; first failure: " << first_failure_;
    return {pass_, s.str()};
  }

 private:
  bool pass_ = true;
  long cases_ = 0;
  double worst_ = 0;
  std::string first_failure_;
};

GrassmannElement scalar(int rank, double v) { return GrassmannElement::scalar(rank, v); }

double fn_deviation(const SuperFunction& f, const SuperFunction& g) {
  double worst = 0;
  const SuperFunction d = f - g;
  for (const auto& [mono, poly] : d.coefficients())
    for (const auto& [deg, coeff] : poly.terms()) worst = std::max(worst, coeff.max_abs_coefficient());
  return worst;
}

Outcome grassmann_laws() {
  Tally t;
  for (int rank = 0; rank <= 4; ++rank) {
    const Mask count = Mask{1} << rank;
    auto mono = [rank](Mask m) { return GrassmannElement::monomial(rank, MultiIndex(m)); };
    for (Mask a = 0; a < count; ++a) {
      for (Mask b = 0; b < count; ++b) {
        const auto ab = mono(a) * mono(b);
        const double sign = (mask_parity(a) & mask_parity(b)) ? -1.0 : 1.0;
        t.check(ab == sign * (mono(b) * mono(a)), "graded commutativity of monomials");
        t.check(ab == oracle::multiply(mono(a), mono(b)), "monomial product vs swap oracle");
        for (Mask c = 0; c < count; ++c)
          t.check((ab * mono(c)) == (mono(a) * (mono(b) * mono(c))), "associativity of monomials");
      }
    }
  }
  gen::Random rng(1001);
  for (int k = 0; k < 1000; ++k) {
    const int rank = rng.integer(1, 8);
    const auto a = rng.element(rank);
    const auto b = rng.element(rank);
    const auto c = rng.element(rank);
    for (int p = 0; p <= 1; ++p) {
      for (int q = 0; q <= 1; ++q) {
        const auto ap = p ? a.odd_part() : a.even_part();
        const auto bq = q ? b.odd_part() : b.even_part();
        const double sign = (p & q) ? -1.0 : 1.0;
        t.within(max_deviation(ap * bq, sign * (bq * ap)), 1e-12, "graded commutativity");
      }
    }
    t.within(max_deviation((a * b) * c, a * (b * c)), 1e-12, "associativity");
    t.within(max_deviation(a * b, oracle::multiply(a, b)), 1e-12, "product vs swap oracle");
    const auto s = a.soul();
    t.check(s.pow(rank + 1).is_zero(), "soul^{N+1} = 0");
    t.within(std::abs((a * b).body() - a.body() * b.body()), 1e-12, "body homomorphism");
    t.check((a + b).norm() <= a.norm() + b.norm() + 1e-12, "norm subadditivity");
    t.check((a * b).norm() <= a.norm() * b.norm() + 1e-12, "norm submultiplicativity");
  }
  return t.outcome("exhaustive monomials N<=4, 1000 random sums N<=8");
}

Outcome invertibility() {
  Tally t;
  gen::Random rng(1002);
  int invertible = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = rng.integer(0, 3);
    const Dims dims{n, rng.integer(n == 0 ? 1 : 0, 3 - n)};
    const int rank = rng.integer(0, 3);
    SuperMatrix l = rng.matrix(dims, rank);
    if (k % 2 == 1) {
      // Make the body singular: last row's body becomes a multiple of the first.
      const int last = dims.total() - 1;
      const double factor = dims.total() == 1 ? 0.0 : rng.uniform(-2, 2);
      for (int c = 0; c < dims.total(); ++c) {
        const double body = dims.total() == 1 ? 0.0 : factor * l(0, c).body();
        l(last, c) = l(last, c) - scalar(rank, l(last, c).body()) + scalar(rank, body);
      }
    }
    const bool claimed = is_invertible(l);
    t.check(claimed == oracle::lifted_solvable(l), "is_invertible vs lifted system");
    if (!claimed) continue;
    ++invertible;
    const SuperMatrix inv = invert(l);
    const SuperMatrix id = SuperMatrix::identity(dims, rank);
    t.within(max_deviation(l * inv, id), 1e-10, "L L^-1");
    t.within(max_deviation(inv * l, id), 1e-10, "L^-1 L");
  }
  return t.outcome("200 matrices, " + std::to_string(invertible) + " invertible");
}

Outcome prolongation() {
  Tally t;
  gen::Random rng(1003);
  for (int k = 0; k < 200; ++k) {
    const int vars = rng.integer(1, 2);
    const int rank = rng.integer(0, 4);
    const auto f = rng.polynomial(vars, rank, 4, rng.integer(1, 5));
    const auto x = rng.even_vector({vars, 0}, rank);
    t.within(max_deviation(prolong_even(f, x), oracle::substitute(f, x.components())), 1e-12,
             "prolongation vs substitution");
  }
  return t.outcome("200 polynomials, degree<=4, n<=2, N<=4");
}

Outcome derivatives() {
  Tally t;
  gen::Random rng(1004);
  for (int k = 0; k < 150; ++k) {
    const Dims dims{rng.integer(1, 2), rng.integer(1, 3)};
    const int rank = dims.odd + rng.integer(0, 2);
    const int pf = rng.integer(0, 1);
    const int pg = rng.integer(0, 1);
    // even derivatives: any Λ-valued coefficients
    {
      const auto f = rng.superfunction(dims, rank, 0, pf, false);
      const auto g = rng.superfunction(dims, rank, 0, pg, false);
      for (int i = 1; i <= dims.even; ++i) {
        const auto lhs = even_derivative(f * g, i);
        const auto rhs = even_derivative(f, i) * g + f * even_derivative(g, i);
        t.within(fn_deviation(lhs, rhs), 1e-12, "even Leibniz");
      }
    }
    // odd derivatives: Λ₀-valued coefficients
    const auto f = rng.superfunction(dims, rank, 0, pf, true);
    const auto g = rng.superfunction(dims, rank, 0, pg, true);
    const double sign = pf ? -1.0 : 1.0;
    for (int j = 1; j <= dims.odd; ++j) {
      const auto lhs = odd_derivative(f * g, j);
      const auto rhs = odd_derivative(f, j) * g + sign * (f * odd_derivative(g, j));
      t.within(fn_deviation(lhs, rhs), 1e-12, "odd Leibniz");
      t.check(odd_derivative(odd_derivative(f, j), j).is_zero(), "odd derivative squares to zero");
      for (int i = 1; i <= dims.odd; ++i) {
        t.within(fn_deviation(odd_derivative(odd_derivative(f, i), j), -odd_derivative(odd_derivative(f, j), i)),
                 0, "odd derivatives anticommute");
      }
      for (int i = 1; i <= dims.even; ++i) {
        t.within(fn_deviation(even_derivative(odd_derivative(f, j), i), odd_derivative(even_derivative(f, i), j)),
                 0, "even and odd derivatives commute");
      }
    }
  }
  int refusals = 0;
  for (int rank = 0; rank <= 6; ++rank) {
    for (int rank_prime = 0; rank_prime <= rank; ++rank_prime) {
      for (int m = 1; m <= 4; ++m) {
        bool raised = false;
        try {
          odd_derivative(SuperFunction::odd_coordinate({1, m}, rank, 1, rank_prime), 1);
        } catch (const Error& e) {
          raised = e.kind() == ErrorKind::LambdaNotIso;
        }
        refusals += raised;
        t.check(raised == (rank - rank_prime < m), "LambdaNotIso iff N - N' < m");
      }
    }
  }
  return t.outcome("graded Leibniz, anticommutation, " + std::to_string(refusals) + " LambdaNotIso refusals");
}

Outcome exp_log() {
  Tally t;
  gen::Random rng(1005);
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (int rank = 0; rank <= 3; ++rank)
        t.check(exp(SuperMatrix::zero({n, m}, rank)) == SuperMatrix::identity({n, m}, rank), "exp(0) = I");
  for (int k = 0; k < 100; ++k) {
    const Dims dims{rng.integer(1, 2), rng.integer(0, 2)};
    const int rank = rng.integer(0, 4);
    const auto j = rng.with_norm(rng.matrix(dims, rank), rng.uniform(0.01, 0.5));
    t.within(max_deviation(log(exp(j)), j), 1e-9, "log(exp(J))");
    const auto l = SuperMatrix::identity(dims, rank) + rng.with_norm(rng.matrix(dims, rank), rng.uniform(0.01, 0.5));
    t.within(max_deviation(exp(log(l)), l), 1e-9, "exp(log(L))");
  }
  for (int k = 0; k < 50; ++k) {
    const Dims dims{rng.integer(0, 2), rng.integer(1, 2)};
    const int rank = rng.integer(1, 5);
    const auto j = rng.matrix(dims, rank, 2.0).soul();
    SuperMatrix power = SuperMatrix::identity(dims, rank);
    SuperMatrix series = power;
    double factorial = 1;
    for (int p = 1; p <= rank; ++p) {
      power = power * j;
      factorial *= p;
      series += (1.0 / factorial) * power;
    }
    t.check((power * j).is_zero(), "J^{N+1} = 0");
    t.within(max_deviation(exp(j), series), 1e-13, "nilpotent exp vs finite series");
  }
  return t.outcome("exp(0), 200 round trips at norm<=0.5, 50 nilpotent arguments");
}

Outcome osp() {
  Tally t;
  for (int n = 0; n <= 3; ++n) {
    for (int m = 0; m <= 2; ++m) {
      const OspBasis basis = osp_algebra_basis(n, m, 0);
      const int even = static_cast<int>(basis.even.size());
      const int odd = static_cast<int>(basis.odd.size());
      t.check(even == n * (n - 1) / 2 + m * (2 * m + 1) && odd == 2 * n * m, "rank closed form");
      t.check(even == oracle::osp_kernel_dimension(n, m, false) && odd == oracle::osp_kernel_dimension(n, m, true),
              "rank vs independent linear solve");
    }
  }
  gen::Random rng(1006);
  for (int k = 0; k < 200; ++k) {
    const int n = rng.integer(0, 2);
    const int m = rng.integer(n == 0 ? 1 : 0, 2);
    const int rank = rng.integer(0, 4);
    const OspBasis basis = osp_algebra_basis(n, m, rank);
    const OmegaForm form(n, m, rank);
    const auto a = exp(rng.osp_algebra(basis, rank, 0.4));
    const auto b = exp(rng.osp_algebra(basis, rank, 0.4));
    t.check(osp_report(form, a, 1e-9).ok, "exp of algebra element");
    t.check(osp_report(form, a * b, 1e-9).ok, "closure under product");
    t.check(osp_report(form, invert(a), 1e-9).ok, "closure under inverse");
    if (n > 0) {
      Eigen::VectorXd d = Eigen::VectorXd::Ones(n + 2 * m);
      d(0) = -1;
      const auto reflected = SuperMatrix::from_real(form.dims(), rank, d.asDiagonal().toDenseMatrix()) * a;
      t.check(osp_report(form, reflected * b, 1e-9).ok, "closure off the identity component");
    }
  }
  return t.outcome("ranks for n<=3, m<=2; 200 random group elements");
}

Outcome cartan() {
  Tally t;
  gen::Random rng(1007);
  int max_iterations = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(0, 2);
    const int m = rng.integer(n == 0 ? 1 : 0, 1);
    const int rank = rng.integer(0, 3);
    const CartanSplit split(n, m, rank);
    const Dims dims = split.form().dims();
    const auto f = rng.with_norm(split.project_f(rng.even_matrix(dims, rank)), rng.uniform(0.01, 0.2));
    const auto h = rng.with_norm(split.project_h(rng.even_matrix(dims, rank)), rng.uniform(0.01, 0.2));
    const auto factors = cartan_factor(exp(f) * exp(h));
    max_iterations = std::max(max_iterations, factors.iterations);
    t.within(max_deviation(factors.f, f), 1e-8, "recovered F");
    t.within(max_deviation(factors.h, h), 1e-8, "recovered I");

    const auto f2 = split.project_f(rng.even_matrix(dims, rank));
    const auto h2 = split.project_h(rng.even_matrix(dims, rank));
    t.within(split.project_f(graded_bracket(f, f2)).norm(), 1e-10, "[f, f] in h");
    t.within(split.project_h(graded_bracket(f, h2)).norm(), 1e-10, "[f, h] in f");
    t.within(split.project_f(graded_bracket(h, h2)).norm(), 1e-10, "[h, h] in h");
  }
  return t.outcome("100 forward syntheses, at most " + std::to_string(max_iterations) + " iterations");
}

SuperMatrix random_osp(gen::Random& rng, int n, int m, int rank) {
  const OspBasis basis = osp_algebra_basis(n, m, rank);
  SuperMatrix g = exp(rng.osp_algebra(basis, rank, 0.5));
  if (n > 0 && rng.coin()) {
    Eigen::VectorXd d = Eigen::VectorXd::Ones(n + 2 * m);
    d(0) = -1;
    g = SuperMatrix::from_real(g.dims(), rank, d.asDiagonal().toDenseMatrix()) * g;
  }
  return g;
}

SuperMatrix random_frame(gen::Random& rng, Dims dims, int rank) {
  return SuperMatrix::identity(dims, rank) + rng.with_norm(rng.even_matrix(dims, rank), rng.uniform(0.1, 0.8));
}

Outcome correspondence() {
  Tally t;
  gen::Random rng(1008);
  const Nerve nerve({"U", "V", "W"}, {{"U", "V"}, {"V", "W"}, {"U", "W"}}, {{"U", "V", "W"}});
  int compatible = 0;
  int rejected = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(0, 2);
    const int m = rng.integer(n == 0 ? 1 : 0, 1);
    const int rank = rng.integer(0, 2);
    const Dims dims{n, 2 * m};
    std::map<std::string, SuperMatrix> frames;
    for (const char* chart : {"U", "V", "W"}) frames[chart] = random_frame(rng, dims, rank);
    const auto k_uv = random_osp(rng, n, m, rank);
    const auto k_vw = random_osp(rng, n, m, rank);
    const auto k_uw = k_uv * k_vw;
    auto j = [&](const char* a, const char* b, const SuperMatrix& kk) {
      return invert(frames.at(a)) * kk * frames.at(b);
    };
    const Cocycle cocycle(nerve, {{{"U", "V"}, j("U", "V", k_uv)}, {{"V", "W"}, j("V", "W", k_vw)},
                                  {{"U", "W"}, j("U", "W", k_uw)}});
    t.check(verify_cocycle(cocycle, 1e-9).valid(), "constructed cocycle is valid");
    std::map<std::string, SuperMatrix> reps;
    for (const auto& [chart, h] : frames) reps[chart] = random_osp(rng, n, m, rank) * h;
    if (k % 2 == 0) {
      const Section section(nerve, reps);
      const ReductionData r = section_to_reduction(cocycle, section, 1e-9);
      t.check(verify_cocycle(r.cocycle(), 1e-9).valid(), "K satisfies the cocycle identities");
      const Section back = reduction_to_section(r);
      t.check(sections_equal(section, back, 1e-10), "section -> reduction -> section");
      t.check(sections_equal(back, Section(nerve, frames), 1e-10), "recovered the original coset");
      ++compatible;
    } else {
      Eigen::VectorXd d = Eigen::VectorXd::Ones(dims.total());
      d(rng.integer(0, dims.total() - 1)) = 1.5;
      reps["V"] = SuperMatrix::from_real(dims, rank, d.asDiagonal().toDenseMatrix()) * reps["V"];
      try {
        section_to_reduction(cocycle, Section(nerve, reps), 1e-9);
        t.check(false, "incompatible section accepted");
      } catch (const NotCompatibleError& e) {
        const auto& overlaps = e.report().overlaps;
        t.check(overlaps.size() == 3, "one report entry per overlap");
        for (const auto& ov : overlaps) {
          const bool touches_v = ov.from == "V" || ov.to == "V";
          t.check(ov.ok != touches_v, "failing overlaps are exactly those meeting V");
          t.check(ov.ok == (ov.deviation <= 1e-9), "report flag matches deviation");
        }
        ++rejected;
      }
    }
  }

  // Classical case: O(2) in GL(2, R), sections from Riemannian metrics.
  for (int k = 0; k < 20; ++k) {
    const Dims dims{2, 0};
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(2, 2);
    const Eigen::MatrixXd g_u = a * a.transpose() + Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd j_uv = Eigen::MatrixXd::Identity(2, 2) + 0.5 * Eigen::MatrixXd::Random(2, 2);
    const Eigen::MatrixXd j_vw = Eigen::MatrixXd::Identity(2, 2) + 0.5 * Eigen::MatrixXd::Random(2, 2);
    const Eigen::MatrixXd g_v = j_uv.transpose() * g_u * j_uv;
    const Eigen::MatrixXd g_w = j_vw.transpose() * g_v * j_vw;
    const std::map<std::string, Eigen::MatrixXd> metric{{"U", g_u}, {"V", g_v}, {"W", g_w}};
    const Cocycle cocycle(nerve, {{{"U", "V"}, SuperMatrix::from_real(dims, 0, j_uv)},
                                  {{"V", "W"}, SuperMatrix::from_real(dims, 0, j_vw)},
                                  {{"U", "W"}, SuperMatrix::from_real(dims, 0, j_uv * j_vw)}});
    std::map<std::string, SuperMatrix> reps;
    for (const auto& [chart, g] : metric) reps[chart] = SuperMatrix::from_real(dims, 0, oracle::cholesky_frame(g));
    const Section section(nerve, reps);
    const ReductionData r = section_to_reduction(cocycle, section, 1e-9);
    for (const auto& [pair, kk] : r.osp_cocycle()) {
      const Eigen::MatrixXd body = kk.body();
      t.within((body.transpose() * body - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12,
               "classical K orthogonal");
    }
    const Section back = reduction_to_section(r);
    for (const auto& [chart, g] : metric)
      t.within((supermetric_gram(back, chart).body() - g).cwiseAbs().maxCoeff(), 1e-12, "metric recovered");
    // A metric that does not transform correctly is rejected.
    auto skewed = reps;
    skewed["W"] = 1.1 * skewed["W"];
    bool refused = false;
    try {
      section_to_reduction(cocycle, Section(nerve, skewed), 1e-9);
    } catch (const NotCompatibleError&) {
      refused = true;
    }
    t.check(refused, "classical inconsistent metric rejected");
  }
  return t.outcome(std::to_string(compatible) + " compatible round trips, " + std::to_string(rejected) +
                   " rejections, 20 classical O(2) cases");
}

Outcome supermetric() {
  Tally t;
  gen::Random rng(1009);
  const Nerve nerve({"U", "V"}, {{"U", "V"}});
  for (int k = 0; k < 100; ++k) {
    const int n = rng.integer(0, 2);
    const int m = rng.integer(n == 0 ? 1 : 0, 1);
    const int rank = rng.integer(0, 3);
    const Dims dims{n, 2 * m};
    const auto h_u = random_frame(rng, dims, rank);
    const auto o = random_osp(rng, n, m, rank);
    const Section a(nerve, {{"U", h_u}, {"V", h_u}});
    const Section b(nerve, {{"U", o * h_u}, {"V", h_u}});
    t.within(max_deviation(supermetric_gram(a, "U"), supermetric_gram(b, "U")), 1e-10, "coset invariance");

    const auto j = random_frame(rng, dims, rank);
    const auto kk = random_osp(rng, n, m, rank);
    const auto h_v = invert(kk) * h_u * j;
    const Section s(nerve, {{"U", h_u}, {"V", h_v}});
    const auto gram_u = supermetric_gram(s, "U");
    t.within(max_deviation(supermetric_gram(s, "V"), supertranspose(j) * gram_u * j), 1e-10, "J-congruence");
  }
  return t.outcome("100 coset moves and chart changes");
}

Outcome cli_examples() {
  Tally t;
  const std::string dir = SUPERGEOM_SAMPLES;
  struct Case {
    std::vector<std::string> args;
    int status;
    std::string line;
  };
  const std::vector<Case> cases{
      {{"--format", "summary", "osp-check", dir + "/identity_osp.txt"},
       0,
       "RESULT: ok command=osp-check max_deviation=0 worst=(1,1)\n"},
      {{"--format", "summary", "inv", dir + "/all_soul.txt"}, 1, "RESULT: fail command=inv reason=NotInvertible\n"},
      {{"--format", "summary", "reduce", dir + "/two_chart_cocycle.json"},
       0,
       "RESULT: ok command=reduce overlaps=1 max_deviation=0\n"},
  };
  for (const auto& c : cases) {
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run(c.args, out, err);
    t.check(status == c.status, c.args[2] + " status " + std::to_string(status));
    t.check(out.str() == c.line, c.args[2] + " printed " + out.str());
  }
  return t.outcome("osp-check, inv, reduce");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Grassmann laws", grassmann_laws},
      {2, "invertibility criterion", invertibility},
      {3, "Taylor prolongation", prolongation},
      {4, "derivatives", derivatives},
      {5, "exponential and logarithm", exp_log},
      {6, "orthosymplectic group", osp},
      {7, "Cartan factorization", cartan},
      {8, "section/reduction correspondence", correspondence},
      {9, "supermetric invariance", supermetric},
      {10, "CLI end-to-end", cli_examples},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool fast = seconds < 60;
  failures += !fast;
  std::printf("[%s] runtime %.2f s (limit 60 s)\n", fast ? "PASS" : "FAIL", seconds);
  return failures == 0 ? 0 : 1;
}
