// Command line front end. Exit codes: 0 success, 1 verification or
// admissibility failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qharness/commutation.hpp"
#include "qharness/generator.hpp"
#include "qharness/process.hpp"
#include "qharness/quadrature.hpp"

using namespace qh;
using json = nlohmann::json;
using R = Rational;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string eta, theta, tau, q, beta;
  std::string t = "1", s = "0", x = "0", f;
  int window = 12;
  int order = 12;
  double tol = 1e-8;
  std::string format = "json";
  std::string out;
  bool use_float = false;
};

R parse_opt(const std::string& name, const std::string& v, bool allow_float) {
  if (v.empty()) throw UsageError("missing required option --" + name);
  if (!allow_float && v.find('.') != std::string::npos)
    throw UsageError("--" + name + ": decimal input requires --float");
  try {
    return parse_rational(v);
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": cannot parse '" + v + "' as a rational");
  }
}

QHParams<R> params_of(const Opts& o) {
  return {parse_opt("eta", o.eta, o.use_float), parse_opt("theta", o.theta, o.use_float),
          parse_opt("tau", o.tau, o.use_float), parse_opt("q", o.q, o.use_float)};
}

Poly<R> poly_of(const Opts& o) {
  if (o.f.empty()) throw UsageError("missing required option --f");
  std::vector<R> cs;
  std::stringstream ss(o.f);
  std::string item;
  while (std::getline(ss, item, ',')) cs.push_back(parse_opt("f", item, o.use_float));
  return Poly<R>(std::move(cs));
}

void emit(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open output file " + o.out);
    f << text << "\n";
  }
}

std::string f17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json poly_json(const Poly<R>& p) {
  json a = json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(to_string(p.coeff(i)));
  return a;
}

json seq_json(const PolySeq<R>& X, int window) {
  json a = json::array();
  for (int k = 0; k < window && k < (int)X.coords.size(); ++k)
    a.push_back(poly_json(X.coords[k]));
  return a;
}

bool window_zero(const PolySeq<R>& X, int w) {
  if (X.validity < w) return false;
  for (int k = 0; k < w; ++k)
    if (!X.coords[k].is_zero()) return false;
  return true;
}

int cmd_verify(const Opts& o) {
  json rep{{"schema", 1}, {"command", "verify"}};
  json checks = json::array();
  bool ok = true;
  auto push = [&](const std::string& name, bool pass, int window) {
    checks.push_back({{"identity", name}, {"window", window}, {"exact", pass}});
    ok = ok && pass;
  };
  int W = o.window;
  if (W < 4) throw UsageError("--window must be at least 4");
  if (!o.eta.empty()) {
    QHParams<R> p = params_of(o);
    R t = parse_opt("t", o.t, o.use_float);
    int L = W + 4;
    PolySeq<R> H = solve_H(p, t, L);
    push("dual reconstruction routes agree", true, H.validity);
    push("q-commutation residual", window_zero(qcommutation_residual(H, p, t), W), W);
    push("H annihilates E - F D",
         window_zero(mul(H, seq_E<R>(L) - mul(seq_F<R>(L), seq_D<R>(L))), W), W);
    if (p.q == R(-1)) rep["note"] = "point-mass collapse regime";
  } else {
    if (o.q.empty()) throw UsageError("verify needs --q (and --beta or full parameters)");
    R q = parse_opt("q", o.q, o.use_float);
    R beta = o.beta.empty() ? R(1) : parse_opt("beta", o.beta, o.use_float);
    int L = W + 2;
    auto E = seq_E<R>(L);
    auto D = seq_D<R>(L);
    auto F = seq_F<R>(L);
    auto Dq = seq_Dq(q, L);
    auto W1 = seq_W(1, beta, q, L);
    auto W2 = seq_W(2, beta, q, L);
    auto W3 = seq_W(3, beta, q, L);
    auto W4 = seq_W(4, beta, q, L);
    push("D F = E", window_zero(mul(D, F) - E, W), W);
    push("Dq F = q F Dq + E", window_zero(mul(Dq, F) - scale(q, mul(F, Dq)) - E, W), W);
    push("Dq (E - F D) = 0", window_zero(mul(Dq, E - mul(F, D)), W), W);
    push("W1 Dq = Dq W2", window_zero(mul(W1, Dq) - mul(Dq, W2), W), W);
    push("Dq W1 = W4 Dq", window_zero(mul(Dq, W1) - mul(W4, Dq), W), W);
    push("Dq^2 W2 = W4 Dq^2",
         window_zero(mul(mul(Dq, Dq), W2) - mul(W4, mul(Dq, Dq)), W), W);
    push("W1 = W3 + beta Dq", window_zero(W1 - W3 - scale(beta, Dq), W), W);
    push("Dq F W3 = E + q W2 F Dq",
         window_zero(mul(mul(Dq, F), W3) - E - scale(q, mul(mul(W2, F), Dq)), W), W);
    push("W2 W3 = W1 (W2 - beta Dq)",
         window_zero(mul(W2, W3) - mul(W1, W2 - scale(beta, Dq)), W), W);
  }
  rep["checks"] = checks;
  rep["ok"] = ok;
  emit(o, rep.dump(2));
  return ok ? 0 : 1;
}

int cmd_solve(const Opts& o) {
  QHParams<R> p = params_of(o);
  R t = parse_opt("t", o.t, o.use_float);
  int W = o.window;
  if (W < 4) throw UsageError("--window must be at least 4");
  PolySeq<R> H = solve_H(p, t, W + 2);
  PolySeq<R> A = generator_element(H);
  json rep{{"schema", 1},
           {"command", "solve"},
           {"window", W},
           {"H", seq_json(H, W)},
           {"A", seq_json(A, W)},
           {"ok", true}};
  emit(o, rep.dump(2));
  return 0;
}

json measure_json(const NuMeasure& nu, int order) {
  json rep;
  switch (nu.favard.cls) {
    case FavardClass::PositiveDefinite:
      rep["favard"] = "positive-definite";
      break;
    case FavardClass::Truncated:
      rep["favard"] = "truncated";
      rep["support_size"] = nu.favard.index;
      break;
    default:
      rep["favard"] = "invalid";
  }
  rep["note"] = nu.note;
  if (nu.has_closed_form) {
    rep["family"] = nu.closed.family;
    rep["continuous_part"] = nu.closed.has_density;
    json atoms = json::array();
    for (auto& [x, m] : nu.closed.atoms) atoms.push_back({f17(x), f17(m)});
    rep["atoms"] = atoms;
    rep["mass"] = f17(nu.closed.total_mass(400));
  } else {
    rep["family"] = "quadrature-only";
  }
  QuadRule rule = nu.quadrature(order);
  json nodes = json::array(), weights = json::array();
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(f17(rule.nodes[i]));
    weights.push_back(f17(rule.weights[i]));
  }
  rep["quadrature"] = {{"order", (int)rule.nodes.size()}, {"nodes", nodes}, {"weights", weights}};
  return rep;
}

std::string rule_csv(const QuadRule& rule) {
  std::string s = "node,weight";
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += "\n" + f17(rule.nodes[i]) + "," + f17(rule.weights[i]);
  return s;
}

int cmd_measure(const Opts& o) {
  QHParams<R> p = params_of(o);
  R t = parse_opt("t", o.t, o.use_float);
  R x = parse_opt("x", o.x, o.use_float);
  NuMeasure nu = classify_nu(p, x, t);
  if (o.format == "csv") {
    emit(o, rule_csv(nu.quadrature(o.order)));
    return 0;
  }
  json rep = measure_json(nu, o.order);
  rep["schema"] = 1;
  rep["command"] = "measure";
  rep["ok"] = true;
  emit(o, rep.dump(2));
  return 0;
}

int cmd_generator(const Opts& o) {
  QHParams<R> p = params_of(o);
  R t = parse_opt("t", o.t, o.use_float);
  R x = parse_opt("x", o.x, o.use_float);
  Poly<R> f = poly_of(o);
  R via_moments = apply_generator_moments(p, x, t, f);
  PolySeq<R> A = generator_element(solve_H(p, t, std::max(6, f.degree() + 3)));
  R via_algebra = apply_generator_algebraic(A, f, x);
  bool ok = via_moments == via_algebra;
  json rep{{"schema", 1},
           {"command", "generator"},
           {"value", to_string(via_moments)},
           {"value_float", to_double(via_moments)},
           {"methods",
            {{"moments", to_string(via_moments)}, {"algebra", to_string(via_algebra)}}},
           {"ok", ok}};
  emit(o, rep.dump(2));
  return ok ? 0 : 1;
}

int cmd_transition(const Opts& o) {
  QHParams<R> p = params_of(o);
  require_admissible(p);
  R s = parse_opt("s", o.s, o.use_float);
  R t = parse_opt("t", o.t, o.use_float);
  R x = parse_opt("x", o.x, o.use_float);
  if (!(s < t)) throw std::domain_error("need s < t");
  int N = std::max(o.order, 2);
  JacobiMatrix<R> J = qh_transition_jacobi(p, x, s, t, N);
  auto rep_fav = favard_classify(J);
  if (rep_fav.cls == FavardClass::Invalid)
    throw std::domain_error("transition recurrence has a negative coefficient");
  int n = N;
  if (rep_fav.cls == FavardClass::Truncated) n = std::min(n, rep_fav.index);
  QuadRule rule = golub_welsch(J.cast<double>(), n, 1.0);
  if (o.format == "csv") {
    emit(o, rule_csv(rule));
    return 0;
  }
  auto mom = moments_from_jacobi(J, 2);
  json rep{{"schema", 1}, {"command", "transition"}, {"ok", true}};
  rep["m1"] = to_string(mom[1]);
  rep["m2"] = to_string(mom[2]);
  json nodes = json::array(), weights = json::array();
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(f17(rule.nodes[i]));
    weights.push_back(f17(rule.weights[i]));
  }
  rep["quadrature"] = {{"order", n}, {"nodes", nodes}, {"weights", weights}};
  if (std::abs(to_double(p.q)) < 1.0) {
    try {
      OrthMeasure m = qh_transition_measure(p.cast<double>(), to_double(x), to_double(s),
                                            to_double(t));
      rep["closed_form"] = {{"family", m.family},
                            {"mass", f17(m.total_mass(400))},
                            {"m1", f17(m.moment(1, 400))}};
    } catch (const std::exception& e) {
      rep["closed_form"] = {{"unavailable", e.what()}};
    }
  }
  emit(o, rep.dump(2));
  return 0;
}

int cmd_fdcheck(const Opts& o) {
  QHParams<R> p = params_of(o);
  require_admissible(p);
  R t = parse_opt("t", o.t, o.use_float);
  R x = parse_opt("x", o.x, o.use_float);
  Poly<R> f = poly_of(o);
  if (!(o.tol > 0 && o.tol <= 1e-2)) throw UsageError("--tol must lie in (0, 1e-2]");
  R exact = apply_generator_moments(p, x, t, f);
  json ladder = json::array();
  std::vector<double> errs;
  for (int k = 4; k <= 12; ++k) {
    R h = R(1) / R(1 << k);
    R v = finite_diff_generator(p, t, x, f, h);
    double err = std::abs(to_double(v - exact));
    errs.push_back(err);
    ladder.push_back({{"h", "1/" + std::to_string(1 << k)},
                      {"value", to_string(v)},
                      {"error", f17(err)}});
  }
  bool ok;
  double slope = 0.0;
  if (f.degree() <= 2) {
    ok = true;
    for (double e : errs) ok = ok && e == 0.0;
  } else {
    for (std::size_t i = 0; i + 1 < errs.size(); ++i)
      slope += std::log2(errs[i] / errs[i + 1]);
    slope /= errs.size() - 1;
    ok = slope > 0.8 && slope < 1.2 && errs.back() < o.tol * std::max(1.0, std::abs(to_double(exact)));
  }
  json rep{{"schema", 1},
           {"command", "fdcheck"},
           {"exact", to_string(exact)},
           {"ladder", ladder},
           {"ok", ok}};
  if (f.degree() > 2) rep["order_estimate"] = f17(slope);
  emit(o, rep.dump(2));
  return ok ? 0 : 1;
}

void add_common(CLI::App* c, Opts& o) {
  c->add_option("--eta", o.eta);
  c->add_option("--theta", o.theta);
  c->add_option("--tau", o.tau);
  c->add_option("--q", o.q);
  c->add_option("--t", o.t);
  c->add_option("--s", o.s);
  c->add_option("--x", o.x);
  c->add_option("--window", o.window);
  c->add_option("--order", o.order);
  c->add_option("--tol", o.tol);
  c->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--out", o.out);
  c->add_flag("--float", o.use_float);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic harness generator toolkit"};
  app.require_subcommand(1);
  Opts o;
  auto* verify = app.add_subcommand("verify", "check algebra or commutation identities");
  add_common(verify, o);
  verify->add_option("--beta", o.beta);
  auto* solve = app.add_subcommand("solve", "solve the commutation equation");
  add_common(solve, o);
  auto* measure = app.add_subcommand("measure", "classify the conditional law");
  add_common(measure, o);
  auto* generator = app.add_subcommand("generator", "apply the generator to a polynomial");
  add_common(generator, o);
  generator->add_option("--f", o.f);
  auto* transition = app.add_subcommand("transition", "transition law between two times");
  add_common(transition, o);
  auto* fdcheck = app.add_subcommand("fdcheck", "finite-difference ladder for the generator");
  add_common(fdcheck, o);
  fdcheck->add_option("--f", o.f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(o);
    if (solve->parsed()) return cmd_solve(o);
    if (measure->parsed()) return cmd_measure(o);
    if (generator->parsed()) return cmd_generator(o);
    if (transition->parsed()) return cmd_transition(o);
    if (fdcheck->parsed()) return cmd_fdcheck(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"schema", 1}, {"ok", false}, {"error", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
