#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace weyl {

// (alpha, beta) indexes the normal-ordered word (a^dagger)^alpha a^beta.
struct MultiIndex {
  int alpha = 0;
  int beta = 0;

  constexpr MultiIndex() = default;
  constexpr MultiIndex(int a, int b) : alpha(a), beta(b) {
    if (a < 0 || b < 0) throw std::invalid_argument("multi-index entries must be non-negative");
  }

  constexpr int norm() const { return alpha + beta; }
  constexpr bool well_ordered() const { return alpha >= beta; }
  constexpr MultiIndex dagger() const { return {beta, alpha}; }

  friend constexpr auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend constexpr MultiIndex operator+(MultiIndex a, MultiIndex b) { return {a.alpha + b.alpha, a.beta + b.beta}; }
};

inline std::string to_string(const MultiIndex& g) {
  return "(" + std::to_string(g.alpha) + "," + std::to_string(g.beta) + ")";
}

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr Sign operator*(Sign a, Sign b) { return static_cast<int>(a) * static_cast<int>(b) > 0 ? Sign::Plus : Sign::Minus; }
constexpr Sign operator-(Sign a) { return a == Sign::Plus ? Sign::Minus : Sign::Plus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
inline const char* to_cstr(Sign s) { return s == Sign::Plus ? "+" : "-"; }

inline Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  throw std::invalid_argument("sign must be \"+\" or \"-\", got \"" + s + "\"");
}

// Basic maps.
constexpr int chi(MultiIndex g) { return g.alpha - g.beta; }
constexpr MultiIndex theta(MultiIndex g) { return g >= g.dagger() ? g : g.dagger(); }
constexpr Sign esign(MultiIndex g) { return g >= g.dagger() ? Sign::Plus : Sign::Minus; }
constexpr MultiIndex compose(MultiIndex a, MultiIndex b) { return {a.alpha * b.alpha, a.beta * b.beta}; }

constexpr MultiIndex iota1{1, 0};
constexpr MultiIndex iota2{0, 1};
constexpr MultiIndex tau{1, 1};

}  // namespace weyl
