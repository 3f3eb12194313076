#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avoidforge {

/// Sorted, duplicate-free set of 1-based variable indices; the XOR of those variables.
using LinearForm = std::vector<std::uint32_t>;

LinearForm xor_forms(const LinearForm& a, const LinearForm& b);
/// `x1+x3`, or `0` for the empty form.
std::string form_str(const LinearForm& f);
LinearForm parse_form(std::string_view text);

/// The equation form = rhs.
struct LinearLiteral {
  LinearForm form;
  std::uint8_t rhs = 0;

  auto operator<=>(const LinearLiteral&) const = default;
  bool operator==(const LinearLiteral&) const = default;
};

/// Disjunction of linear equations, kept sorted and duplicate-free. The false
/// literal 0=1 is dropped; the true literal 0=0 is kept and makes the clause a
/// tautology, as does a form present with both right-hand sides.
class LinearClause {
 public:
  LinearClause() = default;
  explicit LinearClause(std::vector<LinearLiteral> lits);

  const std::vector<LinearLiteral>& lits() const { return lits_; }
  bool empty() const { return lits_.empty(); }
  std::size_t width() const { return lits_.size(); }
  bool contains(const LinearLiteral& lit) const;
  bool tautological() const;

  /// `(x1+x3=0 | x2=1)`, `()` for the empty clause.
  std::string str() const;
  static LinearClause parse(std::string_view text);

  bool operator==(const LinearClause&) const = default;

 private:
  std::vector<LinearLiteral> lits_;
};

/// Reduced row echelon basis of an affine system over F2. No row contains
/// another row's pivot variable.
class Gf2Echelon {
 public:
  /// Adds an equation; returns false once the system became inconsistent.
  bool add(const LinearLiteral& eq);
  bool consistent() const { return consistent_; }
  /// The equation reduced against the basis.
  LinearLiteral reduce(LinearLiteral eq) const;
  /// True iff the system (assumed consistent) together with eq is inconsistent.
  bool contradicts(const LinearLiteral& eq) const;
  /// A solution with free variables 0; index 0 unused. Needs consistency.
  std::vector<std::uint8_t> solution(std::size_t num_vars) const;

 private:
  struct Row {
    std::uint32_t pivot;
    LinearLiteral eq;
  };
  std::vector<Row> rows_;
  bool consistent_ = true;
};

bool system_consistent(std::span<const LinearLiteral> eqs);

/// C |= D over F2: the negation of D is inconsistent, or every disjunct of C
/// contradicts it.
bool implies(const LinearClause& c, const LinearClause& d);
// True when the clause holds under every assignment.
bool valid(const LinearClause& d);

/// Truth value of the clause under a 1-based assignment (index 0 unused).
bool evaluate(const LinearClause& c, std::span<const std::uint8_t> assignment);

}  // namespace avoidforge
