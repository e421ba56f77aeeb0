#include "curvel2/poly_parse.hpp"

#include <algorithm>
#include <cctype>

#include "curvel2/errors.hpp"

namespace curvel2 {

SparsePoly sparse_add(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r = a;
  for (const auto& [e, c] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      r.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

SparsePoly sparse_scale(const SparsePoly& a, const mpq_class& c) {
  if (c == 0) return {};
  SparsePoly r = a;
  for (auto& [e, v] : r) v *= c;
  return r;
}

SparsePoly sparse_mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly r;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      mpq_class v = ca * cb;
      auto it = r.find(e);
      if (it == r.end()) {
        r.emplace(std::move(e), v);
      } else {
        it->second += v;
        if (it->second == 0) r.erase(it);
      }
    }
  }
  return r;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly constant(const mpq_class& c) const {
    if (c == 0) return {};
    return {{std::vector<int>(vars_.size(), 0), c}};
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  int exponent() {
    mpz_class e = integer();
    if (e > 10000) fail("exponent too large");
    return static_cast<int>(e.get_si());
  }

  SparsePoly expr() {
    SparsePoly acc;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (accept('+')) {
        sign = 1;
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        break;
      }
      SparsePoly t = term();
      acc = sparse_add(acc, sign < 0 ? sparse_scale(t, -1) : t);
      first = false;
    }
    return acc;
  }

  SparsePoly term() {
    SparsePoly acc = factor();
    while (accept('*')) acc = sparse_mul(acc, factor());
    return acc;
  }

  SparsePoly power(SparsePoly base) {
    if (!accept('^')) return base;
    int e = exponent();
    SparsePoly r = constant(1);
    for (int i = 0; i < e; ++i) r = sparse_mul(r, base);
    return r;
  }

  SparsePoly factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return power(inner);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q(integer());
      if (accept('/')) {
        mpz_class d = integer();
        if (d == 0) fail("zero denominator");
        q /= d;
      }
      q.canonicalize();
      return power(constant(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      std::vector<int> e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = 1;
      if (accept('^')) e[static_cast<std::size_t>(it - vars_.begin())] = exponent();
      return {{e, mpq_class(1)}};
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace

SparsePoly parse_polynomial(const std::string& text, const std::vector<std::string>& vars) {
  return Parser(text, vars).parse();
}

std::vector<std::string> variables_in(const std::string& text, const std::vector<std::string>& vars) {
  std::vector<std::string> found;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string name = text.substr(start, i - start);
      if (std::find(vars.begin(), vars.end(), name) != vars.end() &&
          std::find(found.begin(), found.end(), name) == found.end()) {
        found.push_back(name);
      }
    } else {
      ++i;
    }
  }
  std::vector<std::string> ordered;
  for (const auto& v : vars) {
    if (std::find(found.begin(), found.end(), v) != found.end()) ordered.push_back(v);
  }
  return ordered;
}

std::string format_polynomial(const SparsePoly& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::string out;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [e, c] = *it;
    mpq_class a = abs(c);
    std::string mon;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mon.empty()) mon += "*";
      mon += vars[i];
      if (e[i] > 1) mon += "^" + std::to_string(e[i]);
    }
    std::string t;
    if (mon.empty()) {
      t = a.get_str();
    } else if (a == 1) {
      t = mon;
    } else {
      t = a.get_str() + "*" + mon;
    }
    if (out.empty()) {
      out = c < 0 ? "-" + t : t;
    } else {
      out += c < 0 ? " - " + t : " + " + t;
    }
  }
  return out;
}

}  // namespace curvel2
