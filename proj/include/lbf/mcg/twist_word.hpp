#pragma once

// Words over sphere twists and fibered boundary twists, with the single
// relation tau_boundary ~ tau_S0^2 ("monodromy substitution").

#include "lbf/core.hpp"

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace lbf::mcg {

class SubstitutionError : public Error {
 public:
  using Error::Error;
};

struct FiberDescriptor {
  std::string name = "DT*S^n";
  int n = 2;
  int chi = 2;
  std::vector<std::string> sphere_labels = {"S0"};

  static FiberDescriptor cotangent_sphere(int n) {
    return {"DT*S^" + std::to_string(n), n, 1 + (n % 2 == 0 ? 1 : -1), {"S0"}};
  }
  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

struct TwistGen {
  enum class Kind { sphere, boundary };
  Kind kind = Kind::sphere;
  std::string label = "S0";

  static TwistGen sphere(std::string label = "S0") { return {Kind::sphere, std::move(label)}; }
  static TwistGen boundary() { return {Kind::boundary, "d"}; }

  bool is_sphere() const { return kind == Kind::sphere; }
  bool is_boundary() const { return kind == Kind::boundary; }
  /// "S" or "D"; non-default sphere labels print as "S[label]".
  std::string str() const {
    if (is_boundary()) return "D";
    return label == "S0" ? "S" : "S[" + label + "]";
  }
  friend bool operator==(const TwistGen&, const TwistGen&) = default;
};

class TwistWord {
 public:
  TwistWord() = default;
  TwistWord(FiberDescriptor fiber, std::vector<TwistGen> letters) : fiber_(std::move(fiber)), letters_(std::move(letters)) {
    for (const auto& g : letters_) {
      if (!g.is_sphere()) continue;
      bool known = false;
      for (const auto& l : fiber_.sphere_labels) known = known || l == g.label;
      if (!known) throw ConfigError("twist label '" + g.label + "' not in the alphabet of " + fiber_.name);
    }
  }

  const FiberDescriptor& fiber() const { return fiber_; }
  const std::vector<TwistGen>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  const TwistGen& operator[](std::size_t i) const { return letters_[i]; }

  /// #sphere + 2 #boundary
  int weight() const {
    int w = 0;
    for (const auto& g : letters_) w += g.is_boundary() ? 2 : 1;
    return w;
  }

  int count_boundary() const {
    int c = 0;
    for (const auto& g : letters_) c += g.is_boundary();
    return c;
  }

  /// "D D S S"; the empty word prints as "".
  std::string str() const {
    std::string out;
    for (const auto& g : letters_) {
      if (!out.empty()) out += ' ';
      out += g.str();
    }
    return out;
  }

  friend bool operator==(const TwistWord&, const TwistWord&) = default;

 private:
  FiberDescriptor fiber_;
  std::vector<TwistGen> letters_;
};

enum class Direction { contract, expand };

inline const char* direction_name(Direction d) { return d == Direction::contract ? "contract" : "expand"; }

struct SubstitutionStep {
  std::size_t pos = 0;
  Direction direction = Direction::contract;
  TwistWord before, after;
  friend bool operator==(const SubstitutionStep&, const SubstitutionStep&) = default;
};

/// contract: (S0, S0) at pos, pos+1 -> D; expand: D at pos -> (S0, S0).
inline TwistWord substitute(const TwistWord& w, std::size_t pos, Direction dir) {
  auto mismatch = [&] {
    std::ostringstream os;
    os << "pattern mismatch: cannot " << direction_name(dir) << " at position " << pos << " of '" << w.str() << "'";
    return SubstitutionError(os.str());
  };
  std::vector<TwistGen> out(w.letters().begin(), w.letters().end());
  const auto s0 = TwistGen::sphere();
  if (dir == Direction::contract) {
    if (pos + 1 >= w.size() || !(w[pos] == s0) || !(w[pos + 1] == s0)) throw mismatch();
    out[pos] = TwistGen::boundary();
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
  } else {
    if (pos >= w.size() || !w[pos].is_boundary()) throw mismatch();
    out[pos] = s0;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos) + 1, s0);
  }
  return TwistWord(w.fiber(), std::move(out));
}

inline int weight(const TwistWord& w) { return w.weight(); }

/// d (d - 1)^n, the number of twists in the Theorem (AA) factorization.
inline std::uint64_t aa_count(std::uint64_t d, unsigned n) {
  if (d < 2) throw DomainError("aa_count: d >= 2 required");
  std::uint64_t out = d;
  for (unsigned i = 0; i < n; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / (d - 1)) throw DomainError("aa_count: overflow");
    out *= d - 1;
  }
  return out;
}

/// l boundary twists followed by k + 1 - 2l sphere twists.
inline TwistWord filling_word(int k, int n, int l) {
  if (l < 0 || 2 * l > k + 1) throw DomainError("filling_word: 0 <= 2l <= k + 1 required");
  std::vector<TwistGen> letters(static_cast<std::size_t>(l), TwistGen::boundary());
  letters.insert(letters.end(), static_cast<std::size_t>(k + 1 - 2 * l), TwistGen::sphere());
  return TwistWord(FiberDescriptor::cotangent_sphere(n), std::move(letters));
}

/// The (k+1)-tuple (S0, ..., S0) of the Milnor fiber.
inline TwistWord milnor_word(int k, int n = 2) {
  if (k < 1) throw DomainError("milnor_word: k >= 1 required");
  return filling_word(k, n, 0);
}

/// Words for l = 1..ceil(k/2) (and l = 0 first when include_zero).
inline std::vector<TwistWord> enumerate_fillings(int k, int n, bool include_zero = false) {
  if (k < 1) throw DomainError("enumerate_fillings: k >= 1 required");
  std::vector<TwistWord> out;
  for (int l = include_zero ? 0 : 1; 2 * l <= k + 1; ++l) out.push_back(filling_word(k, n, l));
  return out;
}

/// Greedy left-to-right chain of substitutions turning `from` into `to`.
inline std::vector<SubstitutionStep> substitution_chain(const TwistWord& from, const TwistWord& to) {
  if (!(from.fiber() == to.fiber())) throw SubstitutionError("not related: different fiber descriptors");
  if (from.weight() != to.weight()) {
    throw SubstitutionError("not related: weights " + std::to_string(from.weight()) + " and " +
                            std::to_string(to.weight()) + " differ");
  }
  std::vector<SubstitutionStep> steps;
  TwistWord cur = from;
  auto apply = [&](std::size_t pos, Direction dir) {
    TwistWord next = substitute(cur, pos, dir);
    steps.push_back({pos, dir, cur, next});
    cur = std::move(next);
  };
  std::size_t i = 0;
  while (!(cur == to)) {
    while (i < cur.size() && i < to.size() && cur[i] == to[i]) ++i;
    if (i >= cur.size() || i >= to.size()) throw SubstitutionError("not related: leftover letters");
    if (to[i].is_boundary()) {
      // cur[i] is a sphere twist; make cur[i+1] one too, then contract
      if (i + 1 >= cur.size()) throw SubstitutionError("not related: nothing to contract with");
      if (cur[i + 1].is_boundary()) apply(i + 1, Direction::expand);
      apply(i, Direction::contract);
    } else if (cur[i].is_boundary()) {
      apply(i, Direction::expand);
    } else {
      throw SubstitutionError("not related: sphere labels " + cur[i].label + " and " + to[i].label + " differ");
    }
  }
  return steps;
}

}  // namespace lbf::mcg
