#pragma once

#include <string_view>

namespace qauth {

enum class Party { Alice, Bob, Eve, TrustedCenter };

constexpr std::string_view to_string(Party p) {
  switch (p) {
    case Party::Alice: return "Alice";
    case Party::Bob: return "Bob";
    case Party::Eve: return "Eve";
    case Party::TrustedCenter: return "TrustedCenter";
  }
  return "?";
}

}  // namespace qauth
