#include "tropca/milp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tropca/csv.hpp"

namespace tropca {

namespace {

std::string dvar(int p, int k) {
  return "D" + std::to_string(p) + "_" + std::to_string(k);
}
std::string dprime(int i, int k) {
  return "dprime_" + std::to_string(i) + "_" + std::to_string(k);
}
std::string lam(int p, int i) {
  return "lam_" + std::to_string(p) + "_" + std::to_string(i);
}
std::string delta(int i) { return "Delta_" + std::to_string(i); }
std::string yvar(int p, int i, int k) {
  return "y_" + std::to_string(p) + "_" + std::to_string(i) + "_" +
         std::to_string(k);
}
std::string zvar(int p, int i, int k) {
  return "z_" + std::to_string(p) + "_" + std::to_string(i) + "_" +
         std::to_string(k);
}

}  // namespace

MilpModel build_model(std::span<const TropPoint> data) {
  const int n = static_cast<int>(data.size());
  if (n < 3) throw std::invalid_argument("build_model: need n >= 3");
  const int e = data[0].dim();
  for (const TropPoint& d : data)
    if (d.dim() != e)
      throw std::invalid_argument("build_model: dimension mismatch");

  MilpModel m;
  m.n = n;
  m.e = e;
  for (const TropPoint& d : data) m.data.push_back(d.coords());

  double lo = data[0][0], hi = data[0][0];
  for (const TropPoint& d : data)
    for (int k = 0; k < e; ++k) {
      lo = std::min(lo, d[k]);
      hi = std::max(hi, d[k]);
    }
  m.big_m = 4.0 * (hi - lo) + 1.0;

  // Variable order: Delta, dprime, lam, D, y, z.
  for (int i = 1; i <= n; ++i) m.var_order.push_back(delta(i));
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= e; ++k) m.var_order.push_back(dprime(i, k));
  for (int p = 1; p <= 3; ++p)
    for (int i = 1; i <= n; ++i) m.var_order.push_back(lam(p, i));
  for (int p = 1; p <= 3; ++p)
    for (int k = 1; k <= e; ++k) m.var_order.push_back(dvar(p, k));
  for (int p = 1; p <= 3; ++p)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= e; ++k) m.var_order.push_back(yvar(p, i, k));
  for (int p = 1; p <= 3; ++p)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= e; ++k) m.var_order.push_back(zvar(p, i, k));

  for (int i = 1; i <= n; ++i) m.objective[delta(i)] = 1.0;

  // Continuous variables other than Delta may be negative.
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= e; ++k) m.bounds[dprime(i, k)] = {true, false, 0.0};
  for (int p = 1; p <= 3; ++p)
    for (int i = 1; i <= n; ++i) m.bounds[lam(p, i)] = {true, false, 0.0};
  for (int p = 1; p <= 3; ++p) {
    m.bounds[dvar(p, 1)] = {false, true, 0.0};  // gauge: first coordinate 0
    for (int k = 2; k <= e; ++k) m.bounds[dvar(p, k)] = {true, false, 0.0};
  }
  for (int p = 1; p <= 3; ++p)
    for (int i = 1; i <= n; ++i)
      for (int k = 1; k <= e; ++k) {
        m.binaries.insert(yvar(p, i, k));
        m.binaries.insert(zvar(p, i, k));
      }

  auto add = [&](MilpConstraint c) { m.constraints.push_back(std::move(c)); };
  auto di = [&](int i, int k) { return m.data[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)]; };

  // |Delta| pairs: Delta_i + d'_i(k) - d'_i(l) >= d_i(k) - d_i(l), both signs.
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= e; ++k) {
      for (int l = k + 1; l <= e; ++l) {
        MilpConstraint c1;
        c1.name = "absp_" + std::to_string(i) + "_" + std::to_string(k) + "_" +
                  std::to_string(l);
        c1.coefs[delta(i)] = 1.0;
        c1.coefs[dprime(i, k)] += 1.0;
        c1.coefs[dprime(i, l)] += -1.0;
        c1.sense = 'G';
        c1.rhs = di(i, k) - di(i, l);
        add(c1);
        MilpConstraint c2;
        c2.name = "absm_" + std::to_string(i) + "_" + std::to_string(k) + "_" +
                  std::to_string(l);
        c2.coefs[delta(i)] = 1.0;
        c2.coefs[dprime(i, k)] += -1.0;
        c2.coefs[dprime(i, l)] += 1.0;
        c2.sense = 'G';
        c2.rhs = di(i, l) - di(i, k);
        add(c2);
      }
    }
  }

  // d'_i(k) >= lam_p_i + Dp_k and the big-M activation.
  for (int p = 1; p <= 3; ++p) {
    for (int i = 1; i <= n; ++i) {
      for (int k = 1; k <= e; ++k) {
        MilpConstraint lo_c;
        lo_c.name = "projlo_" + std::to_string(p) + "_" + std::to_string(i) +
                    "_" + std::to_string(k);
        lo_c.coefs[dprime(i, k)] = 1.0;
        lo_c.coefs[lam(p, i)] = -1.0;
        lo_c.coefs[dvar(p, k)] = -1.0;
        lo_c.sense = 'G';
        lo_c.rhs = 0.0;
        add(lo_c);
        MilpConstraint hi_c;
        hi_c.name = "projhi_" + std::to_string(p) + "_" + std::to_string(i) +
                    "_" + std::to_string(k);
        hi_c.coefs[dprime(i, k)] = 1.0;
        hi_c.coefs[lam(p, i)] = -1.0;
        hi_c.coefs[dvar(p, k)] = -1.0;
        hi_c.coefs[yvar(p, i, k)] = -m.big_m;
        hi_c.sense = 'L';
        hi_c.rhs = 0.0;
        add(hi_c);
      }
    }
  }
  // sum_p y_pik <= 2: at least one maximizer is tight per (i, k).
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= e; ++k) {
      MilpConstraint c;
      c.name = "ycard_" + std::to_string(i) + "_" + std::to_string(k);
      for (int p = 1; p <= 3; ++p) c.coefs[yvar(p, i, k)] = 1.0;
      c.sense = 'L';
      c.rhs = 2.0;
      add(c);
    }
  }

  // lam_p_i + Dp_k <= d_i(k) and the big-M activation of the minimum.
  for (int p = 1; p <= 3; ++p) {
    for (int i = 1; i <= n; ++i) {
      for (int k = 1; k <= e; ++k) {
        MilpConstraint lo_c;
        lo_c.name = "lamlo_" + std::to_string(p) + "_" + std::to_string(i) +
                    "_" + std::to_string(k);
        lo_c.coefs[lam(p, i)] = -1.0;
        lo_c.coefs[dvar(p, k)] = -1.0;
        lo_c.sense = 'G';
        lo_c.rhs = -di(i, k);
        add(lo_c);
        MilpConstraint hi_c;
        hi_c.name = "lamhi_" + std::to_string(p) + "_" + std::to_string(i) +
                    "_" + std::to_string(k);
        hi_c.coefs[lam(p, i)] = -1.0;
        hi_c.coefs[dvar(p, k)] = -1.0;
        hi_c.coefs[zvar(p, i, k)] = -m.big_m;
        hi_c.sense = 'L';
        hi_c.rhs = -di(i, k);
        add(hi_c);
      }
    }
  }
  // sum_k z_pik <= e-1: each lambda attains its defining minimum.
  for (int p = 1; p <= 3; ++p) {
    for (int i = 1; i <= n; ++i) {
      MilpConstraint c;
      c.name = "zcard_" + std::to_string(p) + "_" + std::to_string(i);
      for (int k = 1; k <= e; ++k) c.coefs[zvar(p, i, k)] = 1.0;
      c.sense = 'L';
      c.rhs = static_cast<double>(e - 1);
      add(c);
    }
  }

  return m;
}

namespace {

using VarPos = std::map<std::string, size_t>;

void emit_terms(std::ostream& os, const std::map<std::string, double>& coefs,
                const VarPos& pos) {
  // deterministic order: the model's variable order, stragglers after
  std::vector<std::pair<size_t, const std::pair<const std::string, double>*>> terms;
  terms.reserve(coefs.size());
  for (const auto& kv : coefs) {
    const auto it = pos.find(kv.first);
    terms.push_back({it == pos.end() ? pos.size() : it->second, &kv});
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  int on_line = 0;
  bool any = false;
  for (const auto& [rank, kv] : terms) {
    const double c = kv->second;
    if (c == 0.0) continue;
    if (on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
    if (!any) {
      if (c < 0.0) os << "- ";
    } else {
      os << (c < 0.0 ? " - " : " + ");
    }
    const double a = std::abs(c);
    if (a != 1.0) os << format_shortest(a) << ' ';
    os << kv->first;
    any = true;
    ++on_line;
  }
}

}  // namespace

void export_lp(const MilpModel& model, std::ostream& os) {
  VarPos pos;
  for (size_t i = 0; i < model.var_order.size(); ++i)
    pos[model.var_order[i]] = i;
  os << "Minimize\n obj: ";
  emit_terms(os, model.objective, pos);
  os << "\nSubject To\n";
  for (const MilpConstraint& c : model.constraints) {
    os << ' ' << c.name << ": ";
    emit_terms(os, c.coefs, pos);
    switch (c.sense) {
      case 'G': os << " >= "; break;
      case 'L': os << " <= "; break;
      default: os << " = "; break;
    }
    os << format_shortest(c.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const std::string& v : model.var_order) {
    const auto it = model.bounds.find(v);
    if (it == model.bounds.end()) continue;
    if (it->second.fixed)
      os << ' ' << v << " = " << format_shortest(it->second.value) << '\n';
    else if (it->second.free)
      os << ' ' << v << " free\n";
  }
  os << "Binary\n";
  for (const std::string& v : model.var_order)
    if (model.binaries.count(v)) os << ' ' << v << '\n';
  os << "End\n";
}

void export_lp_file(const MilpModel& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("export_lp_file: cannot open " + path);
  export_lp(model, os);
  if (!os.flush()) throw std::runtime_error("export_lp_file: write failed");
}

namespace {

struct LpTokenizer {
  explicit LpTokenizer(std::istream& is) {
    std::string line;
    while (std::getline(is, line)) {
      const size_t comment = line.find('\\');
      if (comment != std::string::npos) line.resize(comment);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        // split off comparison operators glued to terms
        tokens.push_back(tok);
      }
    }
  }
  std::vector<std::string> tokens;
  size_t pos = 0;

  bool done() const { return pos >= tokens.size(); }
  const std::string& peek() const { return tokens[pos]; }
  std::string next() { return tokens[pos++]; }
};

bool is_number(const std::string& s, double& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool ieq(const std::string& a, const char* b) {
  if (a.size() != std::string_view(b).size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  return true;
}

bool section_starts(LpTokenizer& t, std::vector<std::string>& out) {
  // recognizes: Minimize | Subject To | Bounds | Binary | Binaries | End
  if (t.done()) return false;
  const std::string& s = t.peek();
  if (ieq(s, "minimize") || ieq(s, "bounds") || ieq(s, "binary") ||
      ieq(s, "binaries") || ieq(s, "end")) {
    out = {t.next()};
    return true;
  }
  if (ieq(s, "subject")) {
    out = {t.next()};
    if (!t.done() && ieq(t.peek(), "to")) out.push_back(t.next());
    return true;
  }
  return false;
}

// Parse "name: a x1 + 2 x2 - x3 <sense> rhs" until a sense token; the
// terms may span multiple lines (the tokenizer already flattened them).
void parse_expression(LpTokenizer& t, std::map<std::string, double>& coefs,
                      char* sense, double* rhs) {
  double sign = 1.0;
  double pending_coef = 1.0;
  bool have_coef = false;
  while (!t.done()) {
    std::string tok = t.peek();
    if (tok == "<=" || tok == "=<" || tok == ">=" || tok == "=>" || tok == "=") {
      if (sense == nullptr)
        throw std::runtime_error("parse_lp: unexpected comparison");
      t.next();
      *sense = (tok[0] == '<' || tok == "=<") ? 'L'
               : (tok[0] == '>' || tok == "=>") ? 'G'
                                                : 'E';
      double v = 0.0;
      if (t.done() || !is_number(t.next(), v))
        throw std::runtime_error("parse_lp: missing rhs");
      *rhs = v;
      return;
    }
    if (tok == "+") {
      sign = 1.0;
      t.next();
      continue;
    }
    if (tok == "-") {
      sign = -1.0;
      t.next();
      continue;
    }
    double num = 0.0;
    if (is_number(tok, num)) {
      pending_coef = num;
      have_coef = true;
      t.next();
      continue;
    }
    // a variable name ends the pending term; section keywords end the expr
    std::vector<std::string> dummy;
    const size_t save = t.pos;
    if (section_starts(t, dummy)) {
      t.pos = save;
      if (sense != nullptr)
        throw std::runtime_error("parse_lp: constraint without comparison");
      return;
    }
    t.next();
    coefs[tok] += sign * (have_coef ? pending_coef : 1.0);
    sign = 1.0;
    pending_coef = 1.0;
    have_coef = false;
  }
  if (sense != nullptr)
    throw std::runtime_error("parse_lp: truncated constraint");
}

}  // namespace

MilpModel parse_lp(std::istream& is) {
  LpTokenizer t(is);
  MilpModel m;
  std::vector<std::string> kw;
  if (!section_starts(t, kw) || !ieq(kw[0], "minimize"))
    throw std::runtime_error("parse_lp: expected Minimize");

  // objective: optional "obj:" label
  {
    if (!t.done() && t.peek().ends_with(":")) {
      t.next();
    } else if (!t.done()) {
      const size_t save = t.pos;
      t.next();
      if (!t.done() && t.peek() == ":")
        t.next();
      else
        t.pos = save;
    }
    parse_expression(t, m.objective, nullptr, nullptr);
  }

  if (!section_starts(t, kw) || !ieq(kw[0], "subject"))
    throw std::runtime_error("parse_lp: expected Subject To");

  std::set<std::string> vars_seen;
  auto note_vars = [&](const std::map<std::string, double>& coefs) {
    for (const auto& [v, c] : coefs) {
      (void)c;
      vars_seen.insert(v);
    }
  };
  note_vars(m.objective);

  while (!t.done()) {
    const size_t save = t.pos;
    if (section_starts(t, kw)) {
      t.pos = save;
      break;
    }
    MilpConstraint c;
    std::string label = t.next();
    if (label.ends_with(":")) {
      c.name = label.substr(0, label.size() - 1);
    } else if (!t.done() && t.peek() == ":") {
      c.name = label;
      t.next();
    } else {
      t.pos = save;  // unnamed constraint
    }
    parse_expression(t, c.coefs, &c.sense, &c.rhs);
    note_vars(c.coefs);
    m.constraints.push_back(std::move(c));
  }

  while (section_starts(t, kw)) {
    if (ieq(kw[0], "end")) break;
    if (ieq(kw[0], "bounds")) {
      while (!t.done()) {
        const size_t save = t.pos;
        std::vector<std::string> kw2;
        if (section_starts(t, kw2)) {
          t.pos = save;
          break;
        }
        // forms: "v free" | "v = num" | "num <= v <= num"
        const std::string first = t.next();
        double num = 0.0;
        if (is_number(first, num)) {
          // two-sided form: num <= v <= num
          const std::string op = t.next();
          const std::string var = t.next();
          if (op != "<=" && op != "=<")
            throw std::runtime_error("parse_lp: bad bound line");
          MilpBound b;
          if (!t.done() && (t.peek() == "<=" || t.peek() == "=<")) {
            t.next();
            double hi = 0.0;
            if (!is_number(t.next(), hi))
              throw std::runtime_error("parse_lp: bad upper bound");
            if (num == hi) {
              b.fixed = true;
              b.value = num;
            } else {
              b.free = true;  // representable subset; generic ranges unused
            }
          }
          m.bounds[var] = b;
          vars_seen.insert(var);
          continue;
        }
        const std::string& var = first;
        vars_seen.insert(var);
        if (t.done()) throw std::runtime_error("parse_lp: truncated bound");
        const std::string what = t.next();
        if (ieq(what, "free")) {
          m.bounds[var] = {true, false, 0.0};
        } else if (what == "=") {
          double v = 0.0;
          if (!is_number(t.next(), v))
            throw std::runtime_error("parse_lp: bad fixed bound");
          m.bounds[var] = {false, true, v};
        } else {
          throw std::runtime_error("parse_lp: unsupported bound form");
        }
      }
    } else if (ieq(kw[0], "binary") || ieq(kw[0], "binaries")) {
      while (!t.done()) {
        const size_t save = t.pos;
        std::vector<std::string> kw2;
        if (section_starts(t, kw2)) {
          t.pos = save;
          break;
        }
        const std::string v = t.next();
        m.binaries.insert(v);
        vars_seen.insert(v);
      }
    } else {
      throw std::runtime_error("parse_lp: unexpected section " + kw[0]);
    }
  }

  m.var_order.assign(vars_seen.begin(), vars_seen.end());

  // Recover the instance shape from the variable names.
  int n = 0, e = 0;
  for (const std::string& v : vars_seen) {
    if (v.rfind("Delta_", 0) == 0) n = std::max(n, std::atoi(v.c_str() + 6));
    if (v.rfind("D1_", 0) == 0) e = std::max(e, std::atoi(v.c_str() + 3));
  }
  m.n = n;
  m.e = e;
  return m;
}

bool structurally_equal(const MilpModel& a, const MilpModel& b, double tol) {
  auto close = [&](double x, double y) { return std::abs(x - y) <= tol; };
  {
    std::set<std::string> va(a.var_order.begin(), a.var_order.end());
    std::set<std::string> vb(b.var_order.begin(), b.var_order.end());
    if (va != vb) return false;
  }
  if (a.objective.size() != b.objective.size()) return false;
  for (const auto& [v, c] : a.objective) {
    const auto it = b.objective.find(v);
    if (it == b.objective.end() || !close(c, it->second)) return false;
  }
  if (a.constraints.size() != b.constraints.size()) return false;
  for (size_t i = 0; i < a.constraints.size(); ++i) {
    const MilpConstraint& ca = a.constraints[i];
    const MilpConstraint& cb = b.constraints[i];
    if (ca.name != cb.name || ca.sense != cb.sense || !close(ca.rhs, cb.rhs))
      return false;
    if (ca.coefs.size() != cb.coefs.size()) return false;
    for (const auto& [v, c] : ca.coefs) {
      const auto it = cb.coefs.find(v);
      if (it == cb.coefs.end() || !close(c, it->second)) return false;
    }
  }
  // bounds: compare the effective bound of every variable
  std::set<std::string> all(a.var_order.begin(), a.var_order.end());
  for (const std::string& v : all) {
    const auto ia = a.bounds.find(v);
    const auto ib = b.bounds.find(v);
    const MilpBound ba = ia == a.bounds.end() ? MilpBound{} : ia->second;
    const MilpBound bb = ib == b.bounds.end() ? MilpBound{} : ib->second;
    if (ba.free != bb.free || ba.fixed != bb.fixed) return false;
    if (ba.fixed && !close(ba.value, bb.value)) return false;
  }
  return a.binaries == b.binaries;
}

CheckResult check_solution(const MilpModel& model,
                           const std::map<std::string, double>& assignment,
                           double tol) {
  CheckResult r;
  auto value = [&](const std::string& v) {
    const auto it = assignment.find(v);
    if (it == assignment.end())
      throw std::invalid_argument("check_solution: missing variable " + v);
    return it->second;
  };

  for (const std::string& v : model.var_order) {
    const double x = value(v);
    const auto it = model.bounds.find(v);
    const MilpBound b = it == model.bounds.end() ? MilpBound{} : it->second;
    if (b.fixed) {
      if (std::abs(x - b.value) > tol)
        r.violations.push_back("bound " + v + " = " + format_shortest(b.value));
    } else if (!b.free && x < -tol) {
      r.violations.push_back("bound " + v + " >= 0");
    }
    if (model.binaries.count(v)) {
      if (std::abs(x) > tol && std::abs(x - 1.0) > tol)
        r.violations.push_back("binary " + v);
    }
  }

  for (const MilpConstraint& c : model.constraints) {
    double lhs = 0.0;
    for (const auto& [v, coef] : c.coefs) lhs += coef * value(v);
    const bool ok = c.sense == 'G'   ? lhs >= c.rhs - tol
                    : c.sense == 'L' ? lhs <= c.rhs + tol
                                     : std::abs(lhs - c.rhs) <= tol;
    if (!ok) r.violations.push_back("constraint " + c.name);
  }

  r.objective = 0.0;
  for (const auto& [v, coef] : model.objective) r.objective += coef * value(v);
  r.feasible = r.violations.empty();
  return r;
}

std::map<std::string, double> assignment_from_polytope(const MilpModel& model,
                                                       const TropPolytope& p) {
  if (p.size() != 3)
    throw std::invalid_argument("assignment_from_polytope: need 3 vertices");
  if (p.dim() != model.e)
    throw std::invalid_argument("assignment_from_polytope: dimension mismatch");
  if (model.data.empty())
    throw std::invalid_argument("assignment_from_polytope: model has no data");
  const int n = model.n;
  const int e = model.e;

  std::map<std::string, double> a;
  std::vector<TropPoint> verts;
  for (int q = 0; q < 3; ++q)
    verts.push_back(p.vertices()[static_cast<size_t>(q)].normalized());
  for (int q = 1; q <= 3; ++q)
    for (int k = 1; k <= e; ++k)
      a[dvar(q, k)] = verts[static_cast<size_t>(q - 1)][k - 1];

  for (int i = 1; i <= n; ++i) {
    const std::vector<double>& d = model.data[static_cast<size_t>(i - 1)];
    std::vector<double> lambda(3, 0.0);
    for (int q = 0; q < 3; ++q) {
      double lo = d[0] - verts[static_cast<size_t>(q)][0];
      for (int k = 1; k < e; ++k)
        lo = std::min(lo, d[static_cast<size_t>(k)] - verts[static_cast<size_t>(q)][k]);
      lambda[static_cast<size_t>(q)] = lo;
      a[lam(q + 1, i)] = lo;
    }
    std::vector<double> proj(static_cast<size_t>(e), 0.0);
    for (int k = 0; k < e; ++k) {
      double hi = lambda[0] + verts[0][k];
      for (int q = 1; q < 3; ++q)
        hi = std::max(hi, lambda[static_cast<size_t>(q)] + verts[static_cast<size_t>(q)][k]);
      proj[static_cast<size_t>(k)] = hi;
      a[dprime(i, k + 1)] = hi;
    }
    // y = 0 on tight maximizers, z = 0 on tight minimizers
    for (int k = 0; k < e; ++k) {
      for (int q = 0; q < 3; ++q) {
        const double slack =
            proj[static_cast<size_t>(k)] - (lambda[static_cast<size_t>(q)] + verts[static_cast<size_t>(q)][k]);
        a[yvar(q + 1, i, k + 1)] = slack <= 1e-9 ? 0.0 : 1.0;
      }
    }
    for (int q = 0; q < 3; ++q) {
      for (int k = 0; k < e; ++k) {
        const double slack = d[static_cast<size_t>(k)] -
                             (lambda[static_cast<size_t>(q)] + verts[static_cast<size_t>(q)][k]);
        a[zvar(q + 1, i, k + 1)] = slack <= 1e-9 ? 0.0 : 1.0;
      }
    }
    const double dist = trop_distance(TropPoint(d), TropPoint(proj));
    a[delta(i)] = dist;
  }
  return a;
}

TropPolytope decode_polytope(const MilpModel& model,
                             const std::map<std::string, double>& assignment) {
  std::vector<TropPoint> verts;
  for (int q = 1; q <= 3; ++q) {
    std::vector<double> c(static_cast<size_t>(model.e), 0.0);
    for (int k = 1; k <= model.e; ++k) {
      const auto it = assignment.find(dvar(q, k));
      if (it == assignment.end())
        throw std::invalid_argument("decode_polytope: missing " + dvar(q, k));
      c[static_cast<size_t>(k - 1)] = it->second;
    }
    verts.emplace_back(std::move(c));
  }
  return TropPolytope(std::move(verts));
}

}  // namespace tropca
