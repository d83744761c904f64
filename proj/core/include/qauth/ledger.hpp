#pragma once

#include <boost/rational.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qauth/channel.hpp"

namespace qauth::ledger {

using Rational = boost::rational<long long>;

struct ResourceTally {
  std::size_t qubits_sent = 0;
  std::size_t classical_bits_sent = 0;
  std::size_t ebits_prior = 0;
  std::size_t ebits_in_protocol = 0;

  bool empty() const {
    return qubits_sent == 0 && classical_bits_sent == 0 && ebits_prior == 0 && ebits_in_protocol == 0;
  }
  bool operator==(const ResourceTally&) const = default;
};

enum class ModelClass { Yao, CleveBuhrman, Hybrid };
enum class BoundKind { Exact, LowerBound };
/// Data origin (f_D) or identity (f_I) authentication.
enum class AuthKind { DataOrigin, Identity };

std::string_view to_string(ModelClass m);
std::string_view to_string(BoundKind b);
std::string_view to_string(AuthKind k);

/// coeff_n * n + coeff_m * m + constant, exact or as an Omega lower bound.
struct ComplexityExpr {
  Rational coeff_n{0};
  Rational coeff_m{0};
  Rational constant{0};
  BoundKind bound = BoundKind::Exact;

  Rational evaluate(long long n, long long m) const { return coeff_n * n + coeff_m * m + constant; }
  /// Same coefficients, ignoring the bound kind.
  bool same_terms(const ComplexityExpr& other) const {
    return coeff_n == other.coeff_n && coeff_m == other.coeff_m && constant == other.constant;
  }
  bool operator==(const ComplexityExpr&) const = default;

  /// "3n", "m + n", "2n + 4", wrapped in Omega(...) for lower bounds.
  std::string render() const;
};

ComplexityExpr exact(Rational n, Rational m, Rational c = 0);
ComplexityExpr lower_bound(Rational n, Rational m, Rational c = 0);

ResourceTally tally(std::span<const channel::ChannelEvent> events);

/// Total over non-empty tallies; throws UnclassifiableError on an all-zero tally.
ModelClass classify(const ResourceTally& t);

/// True when qubits and classical bits flow without any entanglement: no
/// model names this resource mix, and classify() reports Hybrid for it.
bool classification_flagged(const ResourceTally& t);

/// The count a model charges: qubits (Yao), classical bits (Cleve-Buhrman),
/// or all further communication excluding entangled pairs (Hybrid).
std::size_t communication_cost(const ResourceTally& t, ModelClass model);

struct GridPoint {
  long long n = 0;
  long long m = 0;
  bool operator==(const GridPoint&) const = default;
};

using TallyRunner = std::function<ResourceTally(GridPoint)>;

struct FitResult {
  ComplexityExpr expr;
  ModelClass model;
  std::vector<std::pair<GridPoint, std::size_t>> observations;
};

/// Fits an exact affine expression in (n, m) to the model cost observed at
/// every grid point, then checks it reproduces each held-out point exactly.
/// Throws NonlinearityError when no affine expression fits, and
/// ArgumentError when the grid cannot identify the parameters it varies.
FitResult fit_complexity(std::string_view label, std::span<const GridPoint> grid,
                         std::span<const GridPoint> holdout, const TallyRunner& runner);

/// "Q(f_I) = 3n", "C*(f_I) = Omega(2n)", "Q*_E(f_D) = 2m".
std::string notation(ModelClass model, const ComplexityExpr& expr, AuthKind kind, bool adversarial);

struct CompareEntry {
  std::string id;
  ModelClass model;
  ComplexityExpr expr;
};

enum class Relation { Less, Greater, Equivalent, Conditional, NotComparable };
std::string_view to_string(Relation r);

/// How `first` relates to `second`. Conditional means the order depends on
/// (n, m): `first` is smaller exactly when `condition` holds.
struct PairRelation {
  std::string first;
  std::string second;
  Relation relation;
  std::optional<std::string> condition;
  /// Sign of first - second at the reference size (-1, 0, 1); absent when
  /// the pair is not comparable.
  std::optional<int> at_reference;
};

struct RankedEntry {
  std::string id;
  ComplexityExpr expr;
  Rational reference_value;
  /// 1-based competition rank among same-bound entries of the group.
  std::size_t rank;
};

struct Group {
  ModelClass model;
  std::vector<RankedEntry> entries;
  std::vector<PairRelation> relations;
};

class Comparison {
 public:
  Comparison(GridPoint reference, std::vector<Group> groups)
      : reference_(reference), groups_(std::move(groups)) {}

  GridPoint reference() const { return reference_; }
  const std::vector<Group>& groups() const { return groups_; }

  /// Relation between two entries of the same group; ComparisonError when
  /// they were classified under different models.
  PairRelation rank_between(std::string_view a, std::string_view b) const;

 private:
  GridPoint reference_;
  std::vector<Group> groups_;
};

inline constexpr GridPoint kReferenceSize{64, 64};

Comparison compare(std::span<const CompareEntry> entries, GridPoint reference = kReferenceSize);

}  // namespace qauth::ledger
