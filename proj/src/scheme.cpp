#include "secant/scheme.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace secant {

int SchemeComponent::tangent_dim(const SegreVeronesePair& pair) const {
  if ((int)constraints.size() != pair.factor_count())
    throw std::invalid_argument("component has wrong number of factor constraints");
  int t = 0;
  for (int i = 0; i < pair.factor_count(); ++i) {
    int n = pair.factor_dims[i];
    switch (constraints[i]) {
      case Constraint::Full:
      case Constraint::OnHyperplane:
        t += n;
        break;
      case Constraint::Hyperplane:
        if (n < 1) throw std::invalid_argument("hyperplane constraint on a P0 factor");
        t += n - 1;
        break;
      case Constraint::FixedPoint:
        break;
    }
  }
  return t;
}

long long SchemeComponent::degree(const SegreVeronesePair& pair) const {
  if (multiplicity == 1) return 1;
  if (multiplicity == 2) return tangent_dim(pair) + 1;
  throw std::invalid_argument("multiplicity must be 1 or 2");
}

long long SchemeSpec::total_degree() const {
  long long d = 0;
  for (auto& c : components) d += c.degree(pair);
  return d;
}

static char constraint_code(Constraint c) {
  switch (c) {
    case Constraint::OnHyperplane: return 'O';
    case Constraint::Hyperplane: return 'H';
    case Constraint::FixedPoint: return 'E';
    default: return '\0';
  }
}

std::string SchemeSpec::descriptor() const {
  // Group consecutive components with the same shape.
  std::ostringstream os;
  bool first = true;
  size_t i = 0;
  while (i < components.size()) {
    size_t j = i;
    while (j < components.size() && components[j].multiplicity == components[i].multiplicity &&
           components[j].constraints == components[i].constraints)
      ++j;
    if (!first) os << " + ";
    first = false;
    os << (j - i) << '*' << components[i].multiplicity << "pt";
    for (size_t f = 0; f < components[i].constraints.size(); ++f)
      if (char code = constraint_code(components[i].constraints[f]))
        os << '@' << code << (f + 1);
    i = j;
  }
  return first ? "0" : os.str();
}

SchemeSpec make_scheme(const SegreVeronesePair& pair, const std::vector<ComponentGroup>& groups) {
  SchemeSpec s{pair, {}};
  for (auto& g : groups) {
    if (g.count < 0) throw std::invalid_argument("negative component count");
    if (g.multiplicity != 1 && g.multiplicity != 2)
      throw std::invalid_argument("multiplicity must be 1 or 2");
    SchemeComponent c;
    c.multiplicity = g.multiplicity;
    c.constraints = g.constraints.empty()
                        ? std::vector<Constraint>(pair.factor_count(), Constraint::Full)
                        : g.constraints;
    if ((int)c.constraints.size() != pair.factor_count())
      throw std::invalid_argument("constraint list does not match factor count");
    c.tangent_dim(pair);  // validates per-factor applicability
    for (long long k = 0; k < g.count; ++k) s.components.push_back(c);
  }
  return s;
}

SchemeSpec double_points(const SegreVeronesePair& pair, long long z) {
  if (z < 0) throw std::invalid_argument("negative point count");
  return make_scheme(pair, {{z, 2, {}}});
}

SchemeSpec parse_scheme(const SegreVeronesePair& pair, const std::string& text) {
  auto fail = [&]() -> SchemeSpec {
    throw std::invalid_argument("cannot parse scheme descriptor: " + text);
  };
  std::vector<ComponentGroup> groups;
  std::istringstream is(text);
  std::string term;
  bool any_term = false;
  while (std::getline(is, term, '+')) {
    // trim
    size_t a = term.find_first_not_of(" \t");
    size_t b = term.find_last_not_of(" \t");
    if (a == std::string::npos) return fail();
    term = term.substr(a, b - a + 1);
    any_term = true;
    if (term == "0") continue;
    ComponentGroup g;
    size_t pos = 0;
    auto read_int = [&](long long& out) {
      size_t start = pos;
      while (pos < term.size() && std::isdigit((unsigned char)term[pos])) ++pos;
      if (pos == start) return false;
      out = std::stoll(term.substr(start, pos - start));
      return true;
    };
    long long v = 0;
    if (!read_int(v)) return fail();
    if (pos < term.size() && term[pos] == '*') {
      g.count = v;
      ++pos;
      if (!read_int(v)) return fail();
    }
    g.multiplicity = (int)v;
    if (term.compare(pos, 2, "pt") != 0) return fail();
    pos += 2;
    g.constraints.assign(pair.factor_count(), Constraint::Full);
    while (pos < term.size() && term[pos] == '@') {
      ++pos;
      if (pos >= term.size()) return fail();
      Constraint c;
      switch (term[pos]) {
        case 'H': c = Constraint::Hyperplane; break;
        case 'O': c = Constraint::OnHyperplane; break;
        case 'E': c = Constraint::FixedPoint; break;
        default: return fail();
      }
      ++pos;
      long long f = 0;
      if (!read_int(f)) return fail();
      if (f < 1 || f > pair.factor_count()) return fail();
      g.constraints[f - 1] = c;
    }
    if (pos != term.size()) return fail();
    groups.push_back(g);
  }
  if (!any_term) return fail();
  return make_scheme(pair, groups);
}

DegreeSplit split_degree(const SchemeSpec& scheme, int divisor_factor) {
  const auto& pair = scheme.pair;
  if (divisor_factor < 0 || divisor_factor >= pair.factor_count())
    throw std::invalid_argument("divisor factor out of range");
  DegreeSplit out;
  for (auto& c : scheme.components) {
    long long deg = c.degree(pair);
    switch (c.constraints[divisor_factor]) {
      case Constraint::Full:  // support generic, misses the divisor
        out.residual += deg;
        break;
      case Constraint::OnHyperplane:
        if (c.multiplicity == 2) {
          // full double point with support on H: the simple point survives,
          // the trace is a double point of H
          out.residual += 1;
          out.trace += deg - 1;
        } else {
          out.trace += 1;
        }
        break;
      case Constraint::Hyperplane:
      case Constraint::FixedPoint:
        out.trace += deg;  // the whole component is a subscheme of H
        break;
    }
  }
  return out;
}

}  // namespace secant
