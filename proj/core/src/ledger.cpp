#include "qauth/ledger.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qauth/errors.hpp"

namespace qauth::ledger {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string coefficient_text(const Rational& c) {
  if (c == Rational(1)) return "";
  std::ostringstream os;
  if (c.denominator() == 1) {
    os << c.numerator();
  } else {
    os << "(" << c.numerator() << "/" << c.denominator() << ")";
  }
  return os.str();
}

std::string rational_text(const Rational& c) {
  std::ostringstream os;
  os << c.numerator();
  if (c.denominator() != 1) os << "/" << c.denominator();
  return os.str();
}

// Sum of non-negative terms; "0" when all vanish.
std::string render_terms(const Rational& n, const Rational& m, const Rational& c) {
  std::vector<std::string> terms;
  if (m != Rational(0)) terms.push_back(coefficient_text(m) + "m");
  if (n != Rational(0)) terms.push_back(coefficient_text(n) + "n");
  if (c != Rational(0)) terms.push_back(rational_text(c));
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

PairRelation relate(const CompareEntry& x, const CompareEntry& y, GridPoint ref) {
  PairRelation out{x.id, y.id, Relation::NotComparable, std::nullopt, std::nullopt};
  if (x.expr.bound != y.expr.bound) return out;
  const Rational dn = x.expr.coeff_n - y.expr.coeff_n;
  const Rational dm = x.expr.coeff_m - y.expr.coeff_m;
  const Rational dc = x.expr.constant - y.expr.constant;
  out.at_reference = sign(dn * ref.n + dm * ref.m + dc);
  if (dn == Rational(0) && dm == Rational(0) && dc == Rational(0)) {
    out.relation = Relation::Equivalent;
    return out;
  }
  const bool any_pos = dn > 0 || dm > 0 || dc > 0;
  const bool any_neg = dn < 0 || dm < 0 || dc < 0;
  if (!any_neg) {
    out.relation = Relation::Greater;
  } else if (!any_pos) {
    out.relation = Relation::Less;
  } else {
    // x < y  <=>  (positive part of the difference) < (negated negative part).
    auto pos = [](const Rational& r) { return r > 0 ? r : Rational(0); };
    auto neg = [](const Rational& r) { return r < 0 ? -r : Rational(0); };
    out.relation = Relation::Conditional;
    out.condition = render_terms(pos(dn), pos(dm), pos(dc)) + " < " + render_terms(neg(dn), neg(dm), neg(dc));
  }
  return out;
}

// Solves the augmented system rows = [coeffs... | rhs] by Gauss-Jordan
// elimination. Returns nullopt when inconsistent; throws when rank-deficient.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> rows, std::size_t unknowns,
                                                 std::string_view label) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < unknowns; ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col] == Rational(0)) ++pivot;
    if (pivot == rows.size())
      throw ArgumentError(std::string(label) + ": size grid cannot identify every coefficient");
    std::swap(rows[r], rows[pivot]);
    const Rational p = rows[r][col];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == Rational(0)) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = col; j <= unknowns; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][unknowns] != Rational(0)) return std::nullopt;
  std::vector<Rational> x(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) x[i] = rows[i][unknowns];
  return x;
}

}  // namespace

std::string_view to_string(ModelClass m) {
  switch (m) {
    case ModelClass::Yao: return "Yao";
    case ModelClass::CleveBuhrman: return "CleveBuhrman";
    case ModelClass::Hybrid: return "Hybrid";
  }
  return "?";
}

std::string_view to_string(BoundKind b) { return b == BoundKind::Exact ? "Exact" : "LowerBound"; }

std::string_view to_string(AuthKind k) { return k == AuthKind::DataOrigin ? "DataOrigin" : "Identity"; }

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "less";
    case Relation::Greater: return "greater";
    case Relation::Equivalent: return "equivalent";
    case Relation::Conditional: return "conditional";
    case Relation::NotComparable: return "not comparable";
  }
  return "?";
}

std::string ComplexityExpr::render() const {
  if (coeff_n < 0 || coeff_m < 0 || constant < 0) throw ArgumentError("complexity coefficients are non-negative");
  const std::string body = render_terms(coeff_n, coeff_m, constant);
  return bound == BoundKind::LowerBound ? "Ω(" + body + ")" : body;
}

ComplexityExpr exact(Rational n, Rational m, Rational c) { return {n, m, c, BoundKind::Exact}; }
ComplexityExpr lower_bound(Rational n, Rational m, Rational c) { return {n, m, c, BoundKind::LowerBound}; }

ResourceTally tally(std::span<const channel::ChannelEvent> events) {
  ResourceTally t;
  for (const auto& e : events) {
    std::visit(Overloaded{
                   [&](const channel::QuantumSend& q) { t.qubits_sent += q.count; },
                   [&](const channel::ClassicalSend& c) { t.classical_bits_sent += c.count; },
                   [&](const channel::EbitDistribution& d) {
                     if (d.phase == channel::EbitPhase::Prior) {
                       t.ebits_prior += d.count;
                     } else {
                       t.ebits_in_protocol += d.count;
                       t.qubits_sent += d.count;  // one transmitted half per pair
                     }
                   },
               },
               e.kind);
  }
  return t;
}

ModelClass classify(const ResourceTally& t) {
  if (t.empty()) throw UnclassifiableError("nothing was exchanged; the tally has no model");
  const bool ebits = t.ebits_prior + t.ebits_in_protocol > 0;
  const bool qubits = t.qubits_sent > 0;
  const bool classical = t.classical_bits_sent > 0;
  if (qubits && !classical && !ebits) return ModelClass::Yao;
  if (!qubits) return ModelClass::CleveBuhrman;
  return ModelClass::Hybrid;
}

bool classification_flagged(const ResourceTally& t) {
  return t.qubits_sent > 0 && t.classical_bits_sent > 0 && t.ebits_prior + t.ebits_in_protocol == 0;
}

std::size_t communication_cost(const ResourceTally& t, ModelClass model) {
  switch (model) {
    case ModelClass::Yao: return t.qubits_sent;
    case ModelClass::CleveBuhrman: return t.classical_bits_sent;
    case ModelClass::Hybrid: return t.qubits_sent + t.classical_bits_sent;
  }
  return 0;
}

FitResult fit_complexity(std::string_view label, std::span<const GridPoint> grid,
                         std::span<const GridPoint> holdout, const TallyRunner& runner) {
  std::vector<GridPoint> distinct;
  for (const auto& p : grid)
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(p);
  if (distinct.size() < 3) throw ArgumentError(std::string(label) + ": fitting needs at least 3 distinct sizes");

  std::set<long long> ns, ms;
  for (const auto& p : distinct) {
    ns.insert(p.n);
    ms.insert(p.m);
  }
  const bool uses_n = ns.size() > 1;
  const bool uses_m = ms.size() > 1;

  FitResult out{};
  std::optional<ModelClass> model;
  auto observe = [&](GridPoint p) {
    const ResourceTally t = runner(p);
    const ModelClass c = classify(t);
    if (model && *model != c)
      throw NonlinearityError(std::string(label) + ": model class changes across the size grid");
    model = c;
    const std::size_t cost = communication_cost(t, c);
    out.observations.emplace_back(p, cost);
    return cost;
  };

  std::vector<std::vector<Rational>> rows;
  for (const auto& p : distinct) {
    const auto cost = static_cast<long long>(observe(p));
    std::vector<Rational> row;
    if (uses_n) row.emplace_back(p.n);
    if (uses_m) row.emplace_back(p.m);
    row.emplace_back(1);
    row.emplace_back(cost);
    rows.push_back(std::move(row));
  }
  const std::size_t unknowns = rows.front().size() - 1;
  const auto x = solve_exact(rows, unknowns, label);
  if (!x) throw NonlinearityError(std::string(label) + ": counts are not affine in (n, m) over the grid");

  std::size_t i = 0;
  if (uses_n) out.expr.coeff_n = (*x)[i++];
  if (uses_m) out.expr.coeff_m = (*x)[i++];
  out.expr.constant = (*x)[i];
  out.expr.bound = BoundKind::Exact;
  out.model = *model;

  for (const auto& p : holdout) {
    const auto cost = static_cast<long long>(observe(p));
    if (out.expr.evaluate(p.n, p.m) != Rational(cost)) {
      std::ostringstream os;
      os << label << ": fitted " << out.expr.render() << " predicts " << rational_text(out.expr.evaluate(p.n, p.m))
         << " at (n=" << p.n << ", m=" << p.m << ") but the run exchanged " << cost;
      throw NonlinearityError(os.str());
    }
  }
  return out;
}

std::string notation(ModelClass model, const ComplexityExpr& expr, AuthKind kind, bool adversarial) {
  std::string symbol;
  switch (model) {
    case ModelClass::Yao: symbol = "Q"; break;
    case ModelClass::CleveBuhrman: symbol = "C*"; break;
    case ModelClass::Hybrid: symbol = "Q*"; break;
  }
  if (adversarial) symbol += "_E";
  symbol += kind == AuthKind::DataOrigin ? "(f_D)" : "(f_I)";
  return symbol + " = " + expr.render();
}

PairRelation Comparison::rank_between(std::string_view a, std::string_view b) const {
  const Group* ga = nullptr;
  const Group* gb = nullptr;
  const RankedEntry* ea = nullptr;
  const RankedEntry* eb = nullptr;
  for (const auto& g : groups_) {
    for (const auto& e : g.entries) {
      if (e.id == a) {
        ga = &g;
        ea = &e;
      }
      if (e.id == b) {
        gb = &g;
        eb = &e;
      }
    }
  }
  if (ea == nullptr || eb == nullptr) throw ArgumentError("rank query names an entry that was not compared");
  if (ga != gb)
    throw ComparisonError(std::string(a) + " (" + std::string(to_string(ga->model)) + ") and " + std::string(b) +
                          " (" + std::string(to_string(gb->model)) +
                          ") were classified under different models and cannot be ranked against each other");
  return relate({ea->id, ga->model, ea->expr}, {eb->id, gb->model, eb->expr}, reference_);
}

Comparison compare(std::span<const CompareEntry> entries, GridPoint reference) {
  if (entries.empty()) throw ArgumentError("nothing to compare");
  std::vector<Group> groups;
  for (ModelClass model : {ModelClass::Yao, ModelClass::CleveBuhrman, ModelClass::Hybrid}) {
    std::vector<CompareEntry> members;
    for (const auto& e : entries)
      if (e.model == model) members.push_back(e);
    if (members.empty()) continue;

    Group g{model, {}, {}};
    for (const auto& e : members)
      g.entries.push_back({e.id, e.expr, e.expr.evaluate(reference.n, reference.m), 0});
    // Exact and lower-bound expressions are ranked separately.
    for (BoundKind bound : {BoundKind::Exact, BoundKind::LowerBound}) {
      std::vector<RankedEntry*> same;
      for (auto& e : g.entries)
        if (e.expr.bound == bound) same.push_back(&e);
      std::stable_sort(same.begin(), same.end(),
                       [](const RankedEntry* x, const RankedEntry* y) { return x->reference_value < y->reference_value; });
      for (std::size_t i = 0; i < same.size(); ++i)
        same[i]->rank = (i > 0 && same[i]->reference_value == same[i - 1]->reference_value) ? same[i - 1]->rank : i + 1;
    }
    std::stable_sort(g.entries.begin(), g.entries.end(), [](const RankedEntry& x, const RankedEntry& y) {
      if (x.expr.bound != y.expr.bound) return x.expr.bound == BoundKind::Exact;
      return x.rank < y.rank;
    });
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) g.relations.push_back(relate(members[i], members[j], reference));
    groups.push_back(std::move(g));
  }
  return Comparison(reference, std::move(groups));
}

}  // namespace qauth::ledger
