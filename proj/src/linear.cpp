#include "avoidforge/linear.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "avoidforge/error.hpp"

namespace avoidforge {

LinearForm xor_forms(const LinearForm& a, const LinearForm& b) {
  LinearForm out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string form_str(const LinearForm& f) {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += '+';
    s += 'x' + std::to_string(f[i]);
  }
  return s;
}

LinearForm parse_form(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "0") return {};
  LinearForm f;
  while (!text.empty()) {
    auto plus = text.find('+');
    auto term = trim(text.substr(0, plus));
    std::uint32_t v = 0;
    if (term.size() < 2 || term[0] != 'x') throw Error(ErrorKind::SyntaxError, "bad variable '" + std::string(term) + "'");
    auto [ptr, ec] = std::from_chars(term.data() + 1, term.data() + term.size(), v);
    if (ec != std::errc() || ptr != term.data() + term.size() || v == 0)
      throw Error(ErrorKind::SyntaxError, "bad variable '" + std::string(term) + "'");
    f = xor_forms(f, {v});
    if (plus == std::string_view::npos) break;
    text.remove_prefix(plus + 1);
    if (trim(text).empty()) throw Error(ErrorKind::SyntaxError, "dangling '+'");
  }
  if (f.empty()) throw Error(ErrorKind::SyntaxError, "empty linear form");
  return f;
}

LinearClause::LinearClause(std::vector<LinearLiteral> lits) {
  for (auto& l : lits) {
    std::sort(l.form.begin(), l.form.end());
    // Cancel repeated variables pairwise.
    LinearForm f;
    for (std::size_t i = 0; i < l.form.size();) {
      std::size_t j = i;
      while (j < l.form.size() && l.form[j] == l.form[i]) ++j;
      if ((j - i) % 2) f.push_back(l.form[i]);
      i = j;
    }
    l.form = std::move(f);
  }
  std::erase_if(lits, [](const LinearLiteral& l) { return l.form.empty() && l.rhs == 1; });
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  lits_ = std::move(lits);
}

bool LinearClause::contains(const LinearLiteral& lit) const { return std::binary_search(lits_.begin(), lits_.end(), lit); }

bool LinearClause::tautological() const {
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (lits_[i].form.empty()) return true;  // 0=0
    if (i + 1 < lits_.size() && lits_[i].form == lits_[i + 1].form) return true;
  }
  return false;
}

std::string LinearClause::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (i) s += " | ";
    s += form_str(lits_[i].form) + "=" + std::to_string(lits_[i].rhs);
  }
  return s + ")";
}

LinearClause LinearClause::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error(ErrorKind::SyntaxError, "clause must be parenthesized");
  text = text.substr(1, text.size() - 2);
  std::vector<LinearLiteral> lits;
  bool blank = text.find_first_not_of(' ') == std::string_view::npos;
  while (!blank) {
    auto bar = text.find('|');
    auto lit = text.substr(0, bar);
    auto eq = lit.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "literal needs '='");
    auto rhs = lit.substr(eq + 1);
    while (!rhs.empty() && rhs.front() == ' ') rhs.remove_prefix(1);
    while (!rhs.empty() && rhs.back() == ' ') rhs.remove_suffix(1);
    if (rhs != "0" && rhs != "1") throw Error(ErrorKind::SyntaxError, "right-hand side must be 0 or 1");
    auto lhs = lit.substr(0, eq);
    auto lhs_trim = lhs.substr(lhs.find_first_not_of(' ') == std::string_view::npos ? lhs.size() : lhs.find_first_not_of(' '));
    while (!lhs_trim.empty() && lhs_trim.back() == ' ') lhs_trim.remove_suffix(1);
    LinearForm f = lhs_trim == "0" ? LinearForm{} : parse_form(lhs_trim);
    lits.push_back({std::move(f), static_cast<std::uint8_t>(rhs == "1")});
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return LinearClause(std::move(lits));
}

// ---------------------------------------------------------------------------

LinearLiteral Gf2Echelon::reduce(LinearLiteral eq) const {
  for (const auto& row : rows_)
    if (std::binary_search(eq.form.begin(), eq.form.end(), row.pivot)) {
      eq.form = xor_forms(eq.form, row.eq.form);
      eq.rhs ^= row.eq.rhs;
    }
  return eq;
}

bool Gf2Echelon::add(const LinearLiteral& eq) {
  if (!consistent_) return false;
  LinearLiteral r = reduce(eq);
  if (r.form.empty()) {
    if (r.rhs) consistent_ = false;
    return consistent_;
  }
  // Keep the basis fully reduced so a single pass of reduce() suffices.
  const auto pivot = r.form.front();
  for (auto& row : rows_)
    if (std::binary_search(row.eq.form.begin(), row.eq.form.end(), pivot)) {
      row.eq.form = xor_forms(row.eq.form, r.form);
      row.eq.rhs ^= r.rhs;
    }
  rows_.push_back({pivot, std::move(r)});
  return true;
}

bool Gf2Echelon::contradicts(const LinearLiteral& eq) const {
  auto r = reduce(eq);
  return r.form.empty() && r.rhs == 1;
}

std::vector<std::uint8_t> Gf2Echelon::solution(std::size_t num_vars) const {
  if (!consistent_) throw Error(ErrorKind::BadArgument, "inconsistent system has no solution");
  std::vector<std::uint8_t> x(num_vars + 1, 0);
  // Fully reduced: each pivot appears in one row only, so free variables at 0
  // give pivot = rhs.
  for (const auto& row : rows_) {
    if (row.eq.form.back() > num_vars) throw Error(ErrorKind::IndexOutOfRange, "variable beyond num_vars");
    x[row.pivot] = row.eq.rhs;
  }
  return x;
}

bool system_consistent(std::span<const LinearLiteral> eqs) {
  Gf2Echelon e;
  for (const auto& eq : eqs)
    if (!e.add(eq)) return false;
  return true;
}

bool implies(const LinearClause& c, const LinearClause& d) {
  Gf2Echelon neg;
  for (const auto& lit : d.lits())
    if (!neg.add({lit.form, static_cast<std::uint8_t>(lit.rhs ^ 1u)})) return true;
  for (const auto& lit : c.lits())
    if (!neg.contradicts(lit)) return false;
  return true;
}

bool valid(const LinearClause& d) {
  Gf2Echelon neg;
  for (const auto& lit : d.lits())
    if (!neg.add({lit.form, static_cast<std::uint8_t>(lit.rhs ^ 1u)})) return true;
  return false;
}

bool evaluate(const LinearClause& c, std::span<const std::uint8_t> assignment) {
  for (const auto& lit : c.lits()) {
    std::uint8_t v = 0;
    for (auto x : lit.form) {
      if (x >= assignment.size()) throw Error(ErrorKind::IndexOutOfRange, "variable beyond assignment");
      v ^= assignment[x];
    }
    if (v == lit.rhs) return true;
  }
  return false;
}

}  // namespace avoidforge
