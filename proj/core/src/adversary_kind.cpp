#include "qauth/adversary_kind.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qauth/errors.hpp"

namespace qauth::adversary {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_filter(const std::optional<Party>& from) {
  if (from == Party::Eve) throw ArgumentError("adversary filter cannot name Eve as a sender");
}

std::string basis_name(const qsim::Basis& b) {
  return std::visit(Overloaded{
                        [](const qsim::basis::Computational&) { return std::string("computational"); },
                        [](const qsim::basis::Diagonal&) { return std::string("diagonal"); },
                        [](const qsim::basis::Rotated& r) {
                          std::ostringstream os;
                          os << "rotated(" << r.theta << ")";
                          return os.str();
                        },
                    },
                    b);
}

}  // namespace

void validate(const AdversaryKind& kind) {
  std::visit(Overloaded{
                 [](const None&) {},
                 [](const InterceptResend& a) {
                   check_filter(a.only_from);
                   if (const auto* f = std::get_if<FixedBasis>(&a.strategy))
                     if (!std::isfinite(qsim::basis_angle(f->basis)))
                       throw ArgumentError("intercept basis angle must be finite");
                 },
                 [](const Substitution& a) {
                   check_filter(a.only_from);
                   if (const auto* r = std::get_if<RewriteClassical>(&a.rule)) {
                     if (std::any_of(r->mask.begin(), r->mask.end(), [](auto b) { return b > 1; }))
                       throw ArgumentError("rewrite mask must contain only 0/1");
                     if (!r->mask.empty() &&
                         std::none_of(r->mask.begin(), r->mask.end(), [](auto b) { return b == 1; }))
                       throw ArgumentError("a fixed rewrite mask must flip at least one bit");
                   }
                 },
                 [](const Impersonation&) {},
             },
             kind);
}

AdversaryKind make_intercept(BasisStrategy strategy, std::optional<Party> only_from) {
  AdversaryKind k = InterceptResend{std::move(strategy), only_from};
  validate(k);
  return k;
}

AdversaryKind make_substitution(TamperRule rule, std::optional<Party> only_from) {
  AdversaryKind k = Substitution{std::move(rule), only_from};
  validate(k);
  return k;
}

AdversaryKind make_impersonation() { return Impersonation{}; }

std::string describe(const AdversaryKind& kind) {
  auto from = [](const std::optional<Party>& p) {
    return p ? std::string(" from ") + std::string(to_string(*p)) : std::string();
  };
  return std::visit(
      Overloaded{
          [](const None&) { return std::string("none"); },
          [&](const InterceptResend& a) {
            const std::string basis = std::visit(
                Overloaded{[](const FixedBasis& f) { return basis_name(f.basis); },
                           [](const UniformRandomBasis&) { return std::string("uniform-random"); }},
                a.strategy);
            return "intercept-resend(" + basis + ")" + from(a.only_from);
          },
          [&](const Substitution& a) {
            const std::string rule = std::visit(
                Overloaded{[](const FlipQubit& f) { return "flip-qubit(" + std::to_string(f.index) + ")"; },
                           [](const RewriteClassical& r) {
                             if (r.mask.empty()) return std::string("rewrite-classical(random)");
                             std::string m;
                             for (auto b : r.mask) m.push_back(b ? '1' : '0');
                             return "rewrite-classical(" + m + ")";
                           }},
                a.rule);
            return "substitution(" + rule + ")" + from(a.only_from);
          },
          [](const Impersonation&) { return std::string("impersonation(uniform-key-guess)"); },
      },
      kind);
}

}  // namespace qauth::adversary
