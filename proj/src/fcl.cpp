#include "fuzzmap/fcl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "fuzzmap/error.hpp"

namespace fuzzmap {

namespace {

enum class Tok { kIdent, kNumber, kAssign, kColon, kSemicolon, kLParen, kRParen, kComma, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  auto skip_block = [&](std::string_view close) {
    const std::size_t open_line = line;
    i += 2;
    while (i < text.size() && text.substr(i, close.size()) != close) {
      if (text[i] == '\n') ++line;
      ++i;
    }
    if (i >= text.size()) throw ParseError(open_line, "unterminated comment");
    i += close.size();
  };

  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (text.substr(i, 2) == "//") {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (text.substr(i, 2) == "/*") {
      skip_block("*/");
    } else if (text.substr(i, 2) == "(*") {
      skip_block("*)");
    } else if (text.substr(i, 2) == ":=") {
      out.push_back({Tok::kAssign, ":=", line});
      i += 2;
    } else if (c == ':' || c == ';' || c == '(' || c == ')' || c == ',') {
      const Tok kind = c == ':'   ? Tok::kColon
                       : c == ';' ? Tok::kSemicolon
                       : c == '(' ? Tok::kLParen
                       : c == ')' ? Tok::kRParen
                                  : Tok::kComma;
      out.push_back({kind, std::string(1, c), line});
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::kIdent, std::string(text.substr(i, j - i)), line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.' ||
              text[j] == 'e' || text[j] == 'E' ||
              ((text[j] == '-' || text[j] == '+') && (text[j - 1] == 'e' || text[j - 1] == 'E')))) {
        ++j;
      }
      out.push_back({Tok::kNumber, std::string(text.substr(i, j - i)), line});
      i = j;
    } else {
      throw ParseError(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "end of input", line});
  return out;
}

struct RuleSite {
  FuzzyRule rule;
  std::size_t line;
};

struct TermSite {
  FuzzyTerm term;
  std::size_t line;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  FuzzySystem parse(std::size_t resolution) {
    FuzzySystemSpec spec;
    spec.resolution = resolution;
    std::vector<TermSite> inputs;
    std::vector<TermSite> outputs;
    std::vector<RuleSite> rules;
    bool have_input = false;
    bool have_output = false;
    bool have_ruleblock = false;

    expect_keyword("FUNCTION_BLOCK");
    spec.name = identifier("function block name");

    while (true) {
      const Token& t = peek();
      if (t.kind != Tok::kIdent) fail(t, "expected a section keyword");
      const std::string kw = upper(t.text);
      if (kw == "END_FUNCTION_BLOCK") {
        next();
        break;
      }
      if (kw == "VAR_INPUT" || kw == "VAR_OUTPUT") {
        next();
        const bool input = kw == "VAR_INPUT";
        while (!at_keyword("END_VAR")) {
          const Token& var = peek();
          std::string name = identifier("variable name");
          expect(Tok::kColon);
          if (upper(identifier("type")) != "REAL") fail(var, "only REAL variables are supported");
          expect(Tok::kSemicolon);
          bool& seen = input ? have_input : have_output;
          if (seen) {
            fail(var, std::string("exactly one ") + (input ? "input" : "output") +
                          " variable is supported");
          }
          seen = true;
          (input ? spec.input_variable : spec.output_variable) = std::move(name);
        }
        next();
      } else if (kw == "FUZZIFY") {
        next();
        check_variable(spec.input_variable, have_input, "input");
        while (!at_keyword("END_FUZZIFY")) inputs.push_back(term());
        next();
      } else if (kw == "DEFUZZIFY") {
        next();
        check_variable(spec.output_variable, have_output, "output");
        while (!at_keyword("END_DEFUZZIFY")) {
          const Token& item = peek();
          const std::string ikw = item.kind == Tok::kIdent ? upper(item.text) : "";
          if (ikw == "TERM") {
            outputs.push_back(term());
          } else if (ikw == "METHOD") {
            next();
            expect(Tok::kColon);
            const Token& m = peek();
            if (upper(identifier("method")) != "COG") fail(m, "only METHOD : COG is supported");
            expect(Tok::kSemicolon);
          } else if (ikw == "DEFAULT") {
            next();
            expect(Tok::kAssign);
            spec.default_value = number();
            expect(Tok::kSemicolon);
          } else {
            fail(item, "unknown keyword '" + item.text + "'");
          }
        }
        next();
      } else if (kw == "RULEBLOCK") {
        next();
        have_ruleblock = true;
        identifier("rule block name");
        while (!at_keyword("END_RULEBLOCK")) {
          const Token& item = peek();
          const std::string ikw = item.kind == Tok::kIdent ? upper(item.text) : "";
          if (ikw == "AND" || ikw == "ACT") {
            operator_setting("MIN");
          } else if (ikw == "ACCU") {
            operator_setting("MAX");
          } else if (ikw == "RULE") {
            rules.push_back(rule(spec.input_variable, spec.output_variable));
          } else {
            fail(item, "unknown keyword '" + item.text + "'");
          }
        }
        next();
      } else {
        fail(t, "unknown keyword '" + t.text + "'");
      }
    }
    if (peek().kind != Tok::kEnd) fail(peek(), "unexpected text after END_FUNCTION_BLOCK");
    if (!have_ruleblock) throw ParseError(peek().line, "missing RULEBLOCK");

    for (const auto* sites : {&inputs, &outputs}) {
      for (const auto& site : *sites) {
        try {
          site.term.shape.validate();
        } catch (const std::invalid_argument& e) {
          throw ParseError(site.line, std::string(e.what()) + " in term '" + site.term.name + "'");
        }
      }
    }
    for (const auto& site : rules) {
      if (!has_term(inputs, site.rule.antecedent)) {
        throw ParseError(site.line, "unresolved term '" + site.rule.antecedent + "'");
      }
      if (!has_term(outputs, site.rule.consequent)) {
        throw ParseError(site.line, "unresolved term '" + site.rule.consequent + "'");
      }
    }

    for (auto& s : inputs) spec.input_terms.push_back(std::move(s.term));
    for (auto& s : outputs) spec.output_terms.push_back(std::move(s.term));
    for (auto& s : rules) spec.rules.push_back(std::move(s.rule));
    try {
      return FuzzySystem(std::move(spec));
    } catch (const std::invalid_argument& e) {
      throw ParseError(peek().line, e.what());
    }
  }

 private:
  static bool has_term(const std::vector<TermSite>& terms, const std::string& name) {
    return std::any_of(terms.begin(), terms.end(),
                       [&](const TermSite& s) { return s.term.name == name; });
  }

  [[noreturn]] static void fail(const Token& t, const std::string& what) {
    throw ParseError(t.line, what + " (at '" + t.text + "')");
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }

  bool at_keyword(std::string_view kw) const {
    const Token& t = peek();
    if (t.kind == Tok::kEnd) fail(t, "expected " + std::string(kw));
    return t.kind == Tok::kIdent && upper(t.text) == kw;
  }

  void expect_keyword(std::string_view kw) {
    const Token& t = next();
    if (t.kind != Tok::kIdent || upper(t.text) != kw) fail(t, "expected " + std::string(kw));
  }

  void expect(Tok kind) {
    static constexpr const char* kNames[] = {"identifier", "number", "':='", "':'",
                                             "';'",        "'('",    "')'",  "','", "end"};
    const Token& t = next();
    if (t.kind != kind) fail(t, std::string("expected ") + kNames[static_cast<int>(kind)]);
  }

  std::string identifier(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::kIdent) fail(t, std::string("expected ") + what);
    return t.text;
  }

  double number() {
    const Token& t = next();
    if (t.kind != Tok::kNumber) fail(t, "expected a number");
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (*first == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(t, "malformed number");
    return value;
  }

  void check_variable(const std::string& declared, bool have, const char* role) {
    const Token& t = peek();
    const std::string name = identifier("variable name");
    if (!have || name != declared) fail(t, std::string("undeclared ") + role + " variable '" + name + "'");
  }

  TermSite term() {
    const Token& start = peek();
    if (start.kind != Tok::kIdent || upper(start.text) != "TERM") {
      fail(start, "unknown keyword '" + start.text + "'");
    }
    next();
    TermSite site{{identifier("term name"), {}}, start.line};
    expect(Tok::kAssign);
    while (peek().kind == Tok::kLParen) {
      next();
      const double x = number();
      expect(Tok::kComma);
      const double mu = number();
      expect(Tok::kRParen);
      site.term.shape.vertices.emplace_back(x, mu);
    }
    expect(Tok::kSemicolon);
    return site;
  }

  void operator_setting(std::string_view required) {
    const Token& key = next();
    expect(Tok::kColon);
    const Token& value = peek();
    if (upper(identifier("operator")) != required) {
      fail(value, upper(key.text) + " : " + value.text + " is not supported (only " +
                      std::string(required) + ")");
    }
    expect(Tok::kSemicolon);
  }

  RuleSite rule(const std::string& input, const std::string& output) {
    const Token& start = next();  // RULE
    const Token& label = next();
    if (label.kind != Tok::kNumber && label.kind != Tok::kIdent) fail(label, "expected rule label");
    expect(Tok::kColon);
    expect_keyword("IF");
    const Token& in_var = peek();
    if (identifier("input variable") != input) fail(in_var, "undeclared input variable");
    expect_keyword("IS");
    std::string antecedent = identifier("term name");
    expect_keyword("THEN");
    const Token& out_var = peek();
    if (identifier("output variable") != output) fail(out_var, "undeclared output variable");
    expect_keyword("IS");
    std::string consequent = identifier("term name");
    expect(Tok::kSemicolon);
    return {{std::move(antecedent), std::move(consequent)}, start.line};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_terms(std::ostringstream& out, const std::vector<FuzzyTerm>& terms) {
  for (const auto& t : terms) {
    out << "    TERM " << t.name << " :=";
    for (const auto& [x, mu] : t.shape.vertices) {
      out << " (" << format_number(x) << ", " << format_number(mu) << ")";
    }
    out << ";\n";
  }
}

}  // namespace

FuzzySystem parse_fcl(std::string_view text, std::size_t resolution) {
  return Parser(tokenize(text)).parse(resolution);
}

FuzzySystem load_fcl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_fcl(buffer.str());
}

std::string to_fcl(const FuzzySystem& system) {
  const FuzzySystemSpec& s = system.spec();
  std::ostringstream out;
  out << "FUNCTION_BLOCK " << s.name << "\n\n";
  out << "VAR_INPUT\n    " << s.input_variable << " : REAL;\nEND_VAR\n\n";
  out << "VAR_OUTPUT\n    " << s.output_variable << " : REAL;\nEND_VAR\n\n";
  out << "FUZZIFY " << s.input_variable << "\n";
  write_terms(out, s.input_terms);
  out << "END_FUZZIFY\n\n";
  out << "DEFUZZIFY " << s.output_variable << "\n";
  write_terms(out, s.output_terms);
  out << "    METHOD : COG;\n    DEFAULT := " << format_number(s.default_value) << ";\n";
  out << "END_DEFUZZIFY\n\n";
  out << "RULEBLOCK rules\n    AND : MIN;\n    ACT : MIN;\n    ACCU : MAX;\n";
  for (std::size_t i = 0; i < s.rules.size(); ++i) {
    out << "    RULE " << i + 1 << " : IF " << s.input_variable << " IS " << s.rules[i].antecedent
        << " THEN " << s.output_variable << " IS " << s.rules[i].consequent << ";\n";
  }
  out << "END_RULEBLOCK\n\nEND_FUNCTION_BLOCK\n";
  return out.str();
}

}  // namespace fuzzmap
