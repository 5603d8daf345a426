#include "alphad/parser.hpp"

#include "alphad/error.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace alphad {

namespace {

enum class Tok { Name, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int column = 1;
};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}
bool is_number_char(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.'; }

class Lexer {
 public:
  Lexer(std::string_view line, int line_no, int offset) : line_(line), line_no_(line_no), offset_(offset) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < line_.size() && (line_[i] == ' ' || line_[i] == '\t')) ++i;
      const int col = static_cast<int>(i) + 1 + offset_;
      if (i >= line_.size()) {
        out.push_back({Tok::End, "", col});
        return out;
      }
      const char c = line_[i];
      if (is_name_start(c)) {
        std::size_t j = i;
        while (j < line_.size() && is_name_char(line_[j])) ++j;
        out.push_back({Tok::Name, std::string(line_.substr(i, j - i)), col});
        i = j;
      } else if (is_number_char(c)) {
        std::size_t j = i;
        while (j < line_.size() && is_number_char(line_[j])) ++j;
        // A slash directly after a number continues a p/q fraction.
        std::size_t k = j;
        while (k < line_.size() && (line_[k] == ' ' || line_[k] == '\t')) ++k;
        if (k < line_.size() && line_[k] == '/') {
          std::size_t q = k + 1;
          while (q < line_.size() && (line_[q] == ' ' || line_[q] == '\t')) ++q;
          if (q < line_.size() && is_number_char(line_[q])) {
            std::size_t e = q;
            while (e < line_.size() && is_number_char(line_[e])) ++e;
            std::string text = std::string(line_.substr(i, j - i)) + "/" +
                               std::string(line_.substr(q, e - q));
            out.push_back({Tok::Number, text, col});
            i = e;
            continue;
          }
        }
        out.push_back({Tok::Number, std::string(line_.substr(i, j - i)), col});
        i = j;
      } else if (c == '=' || c == '+' || c == '*' || c == '/' || c == '<' || c == '>' || c == '-' ||
                 c == ':') {
        out.push_back({Tok::Symbol, std::string(1, c), col});
        ++i;
      } else {
        throw ParseError(line_no_, col, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  std::string_view line_;
  int line_no_;
  int offset_;
};

struct PendingBind {
  std::size_t target;
  std::size_t source;
  Rational factor;
  int line;
  int column;
};

class Parser {
 public:
  Problem parse(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    int last_line = 1;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (raw.find_first_not_of(" \t") != std::string_view::npos) {
        statement(raw, line_no);
        last_line = line_no;
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    if (!criteria_) throw ParseError(1, 1, "missing 'criteria:' declaration");
    if (prefs_.empty()) throw ParseError(last_line, 1, "no preferences given");

    ParamBinding binding;
    for (const auto& b : binds_) {
      if (b.target >= prefs_.size() || b.source >= prefs_.size()) {
        throw ParseError(b.line, b.column, "binding refers to a preference that does not exist");
      }
      binding.rules.push_back({b.target, b.source, b.factor});
    }
    if (core_) {
      for (std::size_t i : *core_) {
        if (i >= prefs_.size()) {
          throw ParseError(core_line_, core_column_, "core refers to a preference that does not exist");
        }
      }
      binding.core = core_;
    }
    try {
      return Problem(*criteria_, prefs_, binding);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(last_line, 1, e.what());
    }
  }

 private:
  void statement(std::string_view raw, int line_no) {
    const std::size_t start = raw.find_first_not_of(" \t");
    std::size_t colon = raw.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, static_cast<int>(start) + 1, "expected '<keyword>:'");
    }
    std::string_view keyword = raw.substr(start, colon - start);
    while (!keyword.empty() && (keyword.back() == ' ' || keyword.back() == '\t')) keyword.remove_suffix(1);
    line_ = line_no;
    toks_ = Lexer(raw.substr(colon + 1), line_no, static_cast<int>(colon) + 1).run();
    at_ = 0;
    if (keyword == "criteria") {
      criteria_statement(static_cast<int>(start) + 1);
    } else if (!criteria_) {
      throw ParseError(line_no, static_cast<int>(start) + 1, "'criteria:' must be the first statement");
    } else if (keyword == "pref") {
      pref_statement();
    } else if (keyword == "bind") {
      bind_statement();
    } else if (keyword == "core") {
      core_statement();
    } else {
      throw ParseError(line_no, static_cast<int>(start) + 1,
                       "unknown statement '" + std::string(keyword) + "'");
    }
  }

  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw ParseError(line_, t.column, message);
  }

  void expect_symbol(const char* sym) {
    const Token& t = next();
    if (t.kind != Tok::Symbol || t.text != sym) {
      fail(t, std::string("expected '") + sym + "'" + describe(t));
    }
  }

  void expect_end() {
    const Token& t = peek();
    if (t.kind != Tok::End) fail(t, "unexpected '" + t.text + "' after statement");
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? " at end of line" : ", found '" + t.text + "'";
  }

  std::size_t criterion() {
    const Token& t = next();
    if (t.kind != Tok::Name) fail(t, "expected a criterion name" + describe(t));
    auto idx = criteria_->find(t.text);
    if (!idx) fail(t, "unknown criterion '" + t.text + "'");
    return *idx;
  }

  Rational coefficient() {
    const Token& first = peek();
    bool negative = false;
    if (first.kind == Tok::Symbol && first.text == "-") {
      negative = true;
      next();
    }
    const Token& t = next();
    if (t.kind != Tok::Number) fail(t, "expected a coefficient" + describe(t));
    auto value = parse_rational(t.text);
    if (!value) fail(t, "malformed number '" + t.text + "'");
    if (negative || *value <= 0) fail(first, "non-positive coefficient");
    return *value;
  }

  void criteria_statement(int column) {
    if (criteria_) throw ParseError(line_, column, "duplicate 'criteria:' declaration");
    std::vector<std::string> names;
    std::set<std::string> seen;
    while (peek().kind != Tok::End) {
      const Token& t = next();
      if (t.kind != Tok::Name) fail(t, "expected a criterion name" + describe(t));
      if (!seen.insert(t.text).second) fail(t, "duplicate criterion '" + t.text + "'");
      names.push_back(t.text);
    }
    if (names.size() < 2) throw ParseError(line_, column, "at least two criteria are required");
    if (names.size() > kMaxDimension) {
      throw ParseError(line_, column, "at most " + std::to_string(kMaxDimension) + " criteria are supported");
    }
    criteria_.emplace(std::move(names));
  }

  struct Term {
    Rational coeff;
    std::vector<std::size_t> factors;
    Token where;
  };

  Term term() {
    Term t{Rational(1), {}, peek()};
    if (peek().kind == Tok::Number || (peek().kind == Tok::Symbol && peek().text == "-")) {
      t.coeff = coefficient();
    }
    t.factors.push_back(criterion());
    while (peek().kind == Tok::Symbol && peek().text == "*") {
      next();
      t.factors.push_back(criterion());
    }
    return t;
  }

  void pref_statement() {
    const Token subject_tok = peek();
    const std::size_t subject = criterion();
    const Token op = next();
    if (op.kind != Tok::Symbol) fail(op, "expected '=', '/', '<' or '>'" + describe(op));

    if (op.text == "<" || op.text == ">") {
      const Token rhs_tok = peek();
      const std::size_t rhs = criterion();
      if (rhs == subject) fail(rhs_tok, "inequality relates a criterion to itself");
      expect_end();
      prefs_.push_back(InequalityPreference{
          subject, rhs, op.text == "<" ? Relation::StrictLess : Relation::StrictGreater});
      return;
    }
    if (op.text == "/") {
      const Token den_tok = peek();
      const std::size_t den = criterion();
      if (den == subject) fail(den_tok, "ratio relates a criterion to itself");
      expect_symbol("=");
      Rational k = coefficient();
      expect_end();
      prefs_.push_back(canonicalize(RatioPreference{subject, den, k}));
      return;
    }
    if (op.text != "=") fail(op, "expected '=', '/', '<' or '>'" + describe(op));

    std::vector<Term> terms;
    terms.push_back(term());
    while (peek().kind == Tok::Symbol && peek().text == "+") {
      next();
      terms.push_back(term());
    }
    expect_end();

    for (const auto& t : terms) {
      for (std::size_t f : t.factors) {
        if (f == subject) fail(t.where, "criterion '" + criteria_->name(subject) + "' appears on both sides");
      }
    }
    const bool product = terms.size() == 1 && terms.front().factors.size() > 1;
    if (product) {
      MonomialPreference mono{subject, terms.front().coeff, {}};
      for (std::size_t f : terms.front().factors) ++mono.exponents[f];
      prefs_.push_back(std::move(mono));
      return;
    }
    LinearPreference lin{subject, {}};
    for (const auto& t : terms) {
      if (t.factors.size() > 1) fail(t.where, "sums of products are not supported");
      if (!lin.terms.emplace(t.factors.front(), t.coeff).second) {
        fail(t.where, "criterion '" + criteria_->name(t.factors.front()) + "' repeated on the right-hand side");
      }
    }
    (void)subject_tok;
    prefs_.push_back(std::move(lin));
  }

  std::size_t param_ref() {
    const Token& t = next();
    if (t.kind != Tok::Name || t.text.size() < 2 || t.text[0] != 'a' ||
        t.text.find_first_not_of("0123456789", 1) != std::string::npos) {
      fail(t, "expected a parameter name like 'a1'" + describe(t));
    }
    if (t.text.size() > 6) fail(t, "parameter number too large");
    const unsigned long idx = std::stoul(t.text.substr(1));
    if (idx == 0) fail(t, "parameter numbers start at 1");
    return idx - 1;
  }

  void bind_statement() {
    const Token target_tok = peek();
    const std::size_t target = param_ref();
    expect_symbol("=");
    Rational factor = coefficient();
    const std::size_t source = param_ref();
    expect_end();
    if (target == source) fail(target_tok, "parameter bound to itself");
    for (const auto& b : binds_) {
      if (b.target == target) fail(target_tok, "parameter a" + std::to_string(target + 1) + " bound twice");
    }
    binds_.push_back({target, source, factor, line_, target_tok.column});
  }

  void core_statement() {
    if (core_) fail(peek(), "duplicate 'core:' declaration");
    std::vector<std::size_t> core;
    core_line_ = line_;
    core_column_ = peek().column;
    while (peek().kind != Tok::End) {
      const Token& t = next();
      if (t.kind != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
        fail(t, "expected a preference number" + describe(t));
      }
      if (t.text.size() > 6) fail(t, "preference number too large");
      const unsigned long idx = std::stoul(t.text);
      if (idx == 0) fail(t, "preference numbers start at 1");
      core.push_back(idx - 1);
    }
    if (core.empty()) fail(peek(), "core must list at least one preference");
    core_ = std::move(core);
  }

  std::optional<CriteriaSet> criteria_;
  std::vector<Preference> prefs_;
  std::vector<PendingBind> binds_;
  std::optional<std::vector<std::size_t>> core_;
  int core_line_ = 0;
  int core_column_ = 0;

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int line_ = 0;
};

}  // namespace

Problem parse_problem(std::string_view text) { return Parser().parse(text); }

std::string format_preference(const Problem& problem, const Preference& pref) {
  const auto& names = problem.criteria();
  std::ostringstream out;
  const Preference canon = canonicalize(pref);
  if (const auto* lin = std::get_if<LinearPreference>(&canon)) {
    out << names.name(lin->subject) << " =";
    bool first = true;
    for (const auto& [j, a] : lin->terms) {
      out << (first ? " " : " + ") << to_string(a) << " " << names.name(j);
      first = false;
    }
  } else if (const auto* mono = std::get_if<MonomialPreference>(&canon)) {
    out << names.name(mono->subject) << " = " << to_string(mono->coefficient) << " ";
    bool first = true;
    for (const auto& [j, e] : mono->exponents) {
      for (unsigned k = 0; k < e; ++k) {
        out << (first ? "" : " * ") << names.name(j);
        first = false;
      }
    }
  } else if (const auto* ineq = std::get_if<InequalityPreference>(&canon)) {
    out << names.name(ineq->lhs) << (ineq->relation == Relation::StrictLess ? " < " : " > ")
        << names.name(ineq->rhs);
  }
  return out.str();
}

std::string format_problem(const Problem& problem) {
  std::ostringstream out;
  out << "criteria:";
  for (const auto& name : problem.criteria().names()) out << " " << name;
  out << "\n";
  for (const auto& pref : problem.preferences()) {
    out << "pref: " << format_preference(problem, pref) << "\n";
  }
  for (const auto& rule : problem.binding().rules) {
    out << "bind: a" << rule.target + 1 << " = " << to_string(rule.factor) << " a" << rule.source + 1 << "\n";
  }
  if (problem.binding().core) {
    out << "core:";
    for (std::size_t i : *problem.binding().core) out << " " << i + 1;
    out << "\n";
  }
  return out.str();
}

}  // namespace alphad
