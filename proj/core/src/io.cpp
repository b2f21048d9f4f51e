#include "supergeom/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <system_error>
#include <vector>

namespace supergeom {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw Error(ErrorKind::Parse, "cannot format number");
  return std::string(buf, end);
}

namespace {

enum class Tok {
  Number,
  Ident,
  Plus,
  Minus,
  Star,
  Caret,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Pipe,
  Equals,
  End
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool accept(Tok kind) {
    if (current_.kind != kind) return false;
    advance();
    return true;
  }

  Token expect(Tok kind, const char* what) {
    if (current_.kind != kind) fail(current_, std::string("expected ") + what);
    return next();
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(at.line, at.column, message);
  }

 private:
  void advance() {
    skip_space();
    current_ = Token{};
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      return;
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        bump();
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
        if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
          while (pos_ < look) bump();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) bump();
        }
      }
      current_.kind = Tok::Number;
      current_.text = src_.substr(start, pos_ - start);
      auto [ptr, ec] = std::from_chars(current_.text.data(), current_.text.data() + current_.text.size(),
                                       current_.number);
      if (ec != std::errc() || ptr != current_.text.data() + current_.text.size())
        fail(current_, "malformed number '" + std::string(current_.text) + "'");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        bump();
      current_.kind = Tok::Ident;
      current_.text = src_.substr(start, pos_ - start);
      return;
    }
    bump();
    current_.text = src_.substr(start, 1);
    switch (c) {
      case '+': current_.kind = Tok::Plus; break;
      case '-': current_.kind = Tok::Minus; break;
      case '*': current_.kind = Tok::Star; break;
      case '^': current_.kind = Tok::Caret; break;
      case '(': current_.kind = Tok::LParen; break;
      case ')': current_.kind = Tok::RParen; break;
      case '[': current_.kind = Tok::LBracket; break;
      case ']': current_.kind = Tok::RBracket; break;
      case ',': current_.kind = Tok::Comma; break;
      case ':': current_.kind = Tok::Colon; break;
      case '|': current_.kind = Tok::Pipe; break;
      case '=': current_.kind = Tok::Equals; break;
      default: fail(current_, std::string("unexpected character '") + c + "'");
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  Token current_;
};

// Splits identifiers like "c12" into prefix letter and 1-based index.
std::optional<std::pair<char, int>> split_variable(std::string_view name) {
  if (name.size() < 2 || !std::isalpha(static_cast<unsigned char>(name[0]))) return std::nullopt;
  int index = 0;
  auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
  if (ec != std::errc() || ptr != name.data() + name.size()) return std::nullopt;
  return std::pair{name[0], index};
}

std::optional<int> as_integer(const Token& t) {
  if (t.kind != Tok::Number) return std::nullopt;
  for (char c : t.text)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return static_cast<int>(t.number);
}

int expect_integer(Lexer& lex, const char* what) {
  const Token t = lex.next();
  const auto v = as_integer(t);
  if (!v) Lexer::fail(t, std::string("expected ") + what);
  return *v;
}

// Recursive-descent parser for + - * ^ ( ) over a ring described by Sem.
template <class Sem>
class ExpressionParser {
 public:
  using Value = typename Sem::Value;

  ExpressionParser(Lexer& lex, const Sem& sem) : lex_(lex), sem_(sem) {}

  Value expression() {
    Value v = term();
    for (;;) {
      if (lex_.accept(Tok::Plus)) {
        v = v + term();
      } else if (lex_.accept(Tok::Minus)) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

 private:
  Value term() {
    Value v = power();
    while (lex_.accept(Tok::Star)) v = v * power();
    return v;
  }

  Value power() {
    Value v = primary();
    while (lex_.peek().kind == Tok::Caret) {
      lex_.next();
      if (const auto exponent = as_integer(lex_.peek())) {
        lex_.next();
        Value p = sem_.number(1.0);
        for (int k = 0; k < *exponent; ++k) p = p * v;
        v = p;
      } else {
        v = v * primary();
      }
    }
    return v;
  }

  Value primary() {
    const Token t = lex_.next();
    switch (t.kind) {
      case Tok::Number: return sem_.number(t.number);
      case Tok::Ident: return sem_.variable(t);
      case Tok::Minus: return -power();
      case Tok::Plus: return power();
      case Tok::LParen: {
        Value v = expression();
        lex_.expect(Tok::RParen, "')'");
        return v;
      }
      default: Lexer::fail(t, "expected a number, variable or '('");
    }
  }

  Lexer& lex_;
  const Sem& sem_;
};

struct ElementSemantics {
  using Value = GrassmannElement;
  int rank;

  Value number(double v) const { return GrassmannElement::scalar(rank, v); }
  Value variable(const Token& t) const {
    const auto var = split_variable(t.text);
    if (!var || var->first != 'c') Lexer::fail(t, "unknown symbol '" + std::string(t.text) + "'");
    if (var->second < 1 || var->second > rank)
      Lexer::fail(t, "generator '" + std::string(t.text) + "' exceeds rank " + std::to_string(rank));
    return GrassmannElement::generator(rank, var->second);
  }
};

struct FunctionSemantics {
  using Value = SuperFunction;
  Dims dims;
  int rank;
  int rank_prime;

  Value number(double v) const {
    return SuperFunction::constant(dims, GrassmannElement::scalar(rank, v), rank_prime);
  }
  Value variable(const Token& t) const {
    const auto var = split_variable(t.text);
    if (!var) Lexer::fail(t, "unknown symbol '" + std::string(t.text) + "'");
    const auto [letter, index] = *var;
    if (letter == 'c') {
      if (index < 1 || index > rank) Lexer::fail(t, "generator exceeds rank");
      return SuperFunction::constant(dims, GrassmannElement::generator(rank, index), rank_prime);
    }
    if (letter == 'z') {
      if (index < 1 || index > dims.even) Lexer::fail(t, "even coordinate out of range");
      return SuperFunction::even_coordinate(dims, rank, index, rank_prime);
    }
    if (letter == 'y') {
      if (index < 1 || index > dims.odd) Lexer::fail(t, "odd coordinate out of range");
      return SuperFunction::odd_coordinate(dims, rank, index, rank_prime);
    }
    Lexer::fail(t, "unknown symbol '" + std::string(t.text) + "'");
  }
};

GrassmannElement element_expression(Lexer& lex, int rank) {
  ElementSemantics sem{rank};
  return ExpressionParser<ElementSemantics>(lex, sem).expression();
}

void expect_end(Lexer& lex) {
  if (lex.peek().kind != Tok::End) Lexer::fail(lex.peek(), "unexpected trailing input");
}

struct Header {
  std::optional<Dims> dims;
  std::optional<int> rank;
  std::optional<int> rank_prime;
};

// key=value pairs: dims=(n|m) or dims=(n,m), rank=N, Nprime=N'.
Header parse_header(Lexer& lex) {
  Header h;
  auto is_key = [](const Token& t) {
    return t.kind == Tok::Ident && (t.text == "dims" || t.text == "rank" || t.text == "Nprime");
  };
  while (is_key(lex.peek())) {
    const Token key = lex.next();
    lex.expect(Tok::Equals, "'='");
    if (key.text == "dims") {
      lex.expect(Tok::LParen, "'('");
      const int n = expect_integer(lex, "even dimension");
      if (!lex.accept(Tok::Pipe) && !lex.accept(Tok::Comma)) Lexer::fail(lex.peek(), "expected '|' or ','");
      const int m = expect_integer(lex, "odd dimension");
      lex.expect(Tok::RParen, "')'");
      h.dims = Dims{n, m};
    } else if (key.text == "rank") {
      h.rank = expect_integer(lex, "rank");
    } else if (key.text == "Nprime") {
      h.rank_prime = expect_integer(lex, "Nprime");
    } else {
      Lexer::fail(key, "unknown header key '" + std::string(key.text) + "'");
    }
  }
  return h;
}

template <class T>
T merge(const std::optional<T>& from_header, const std::optional<T>& from_caller, const char* what) {
  if (from_header && from_caller && !(*from_header == *from_caller))
    throw ParseError(1, 1, std::string(what) + " in header disagrees with the requested value");
  if (from_header) return *from_header;
  if (from_caller) return *from_caller;
  throw ParseError(1, 1, std::string("missing ") + what);
}

std::string monomial_text(Mask mask, char letter, const char* separator) {
  std::string out;
  for (Mask m = mask; m; m &= m - 1) {
    if (!out.empty()) out += separator;
    out += letter + std::to_string(__builtin_ctz(m) + 1);
  }
  return out;
}

}  // namespace

std::string to_literal(const GrassmannElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mask, value] : a.terms()) {
    const bool negative = value < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const double magnitude = std::abs(value);
    if (mask == 0) {
      out += format_number(magnitude);
    } else {
      if (magnitude != 1.0) out += format_number(magnitude) + "*";
      out += monomial_text(mask, 'c', "^");
    }
  }
  return out;
}

GrassmannElement parse_element(std::string_view text, int rank) {
  if (rank < 0 || rank > kMaxRank) throw Error(ErrorKind::RankTooLarge, "rank out of range");
  Lexer lex(text);
  GrassmannElement out = element_expression(lex, rank);
  expect_end(lex);
  return out;
}

std::string to_literal(const SuperVector& v) {
  std::string out = "[";
  for (int k = 0; k < v.dims().total(); ++k) {
    if (k) out += ", ";
    out += to_literal(v[k]);
  }
  out += "] : B(" + std::to_string(v.dims().even) + "|" + std::to_string(v.dims().odd) + ") ";
  out += v.flavor() == Flavor::Even ? "even" : "full";
  return out;
}

SuperVector parse_supervector(std::string_view text, int rank) {
  Lexer lex(text);
  lex.expect(Tok::LBracket, "'['");
  std::vector<GrassmannElement> comps;
  if (!lex.accept(Tok::RBracket)) {
    do {
      comps.push_back(element_expression(lex, rank));
    } while (lex.accept(Tok::Comma));
    lex.expect(Tok::RBracket, "']'");
  }
  lex.expect(Tok::Colon, "':'");
  const Token b = lex.expect(Tok::Ident, "'B'");
  if (b.text != "B") Lexer::fail(b, "expected 'B'");
  lex.expect(Tok::LParen, "'('");
  const int n = expect_integer(lex, "even dimension");
  if (!lex.accept(Tok::Pipe) && !lex.accept(Tok::Comma)) Lexer::fail(lex.peek(), "expected '|'");
  const int m = expect_integer(lex, "odd dimension");
  const Token close = lex.expect(Tok::RParen, "')'");
  Flavor flavor = Flavor::Full;
  if (lex.peek().kind == Tok::Ident) {
    const Token tag = lex.next();
    if (tag.text == "even") {
      flavor = Flavor::Even;
    } else if (tag.text != "full") {
      Lexer::fail(tag, "flavor must be 'even' or 'full'");
    }
  }
  expect_end(lex);
  if (static_cast<int>(comps.size()) != n + m)
    Lexer::fail(close, "B(" + std::to_string(n) + "|" + std::to_string(m) + ") needs " +
                           std::to_string(n + m) + " components, got " + std::to_string(comps.size()));
  if (comps.empty()) return SuperVector::zero(Dims{n, m}, rank, flavor);
  try {
    return SuperVector(Dims{n, m}, std::move(comps), flavor);
  } catch (const Error& e) {
    Lexer::fail(close, e.what());
  }
}

std::string to_literal(const SuperMatrix& l) {
  std::string out = "dims=(" + std::to_string(l.dims().even) + "|" + std::to_string(l.dims().odd) +
                    ") rank=" + std::to_string(l.rank()) + "\n";
  for (int i = 0; i < l.size(); ++i) {
    out += "[";
    for (int j = 0; j < l.size(); ++j) {
      if (j) out += ", ";
      out += to_literal(l(i, j));
    }
    out += "]\n";
  }
  return out;
}

SuperMatrix parse_supermatrix(std::string_view text, std::optional<Dims> dims, std::optional<int> rank) {
  Lexer lex(text);
  const Header header = parse_header(lex);
  const Dims d = merge(header.dims, dims, "dims");
  const int r = merge(header.rank, rank, "rank");
  if (r < 0 || r > kMaxRank) throw ParseError(1, 1, "rank out of range");
  std::vector<GrassmannElement> entries;
  int rows = 0;
  while (lex.peek().kind == Tok::LBracket) {
    const Token open = lex.next();
    int cols = 0;
    if (!lex.accept(Tok::RBracket)) {
      do {
        entries.push_back(element_expression(lex, r));
        ++cols;
      } while (lex.accept(Tok::Comma));
      lex.expect(Tok::RBracket, "']'");
    }
    if (cols != d.total())
      Lexer::fail(open, "row has " + std::to_string(cols) + " entries, expected " + std::to_string(d.total()));
    ++rows;
  }
  if (lex.peek().kind != Tok::End) Lexer::fail(lex.peek(), "expected '[' to start a row");
  if (rows != d.total())
    Lexer::fail(lex.peek(), "matrix has " + std::to_string(rows) + " rows, expected " + std::to_string(d.total()));
  return SuperMatrix(d, r, std::move(entries));
}

std::string expression_literal(const SuperFunction& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const GrassmannElement one = GrassmannElement::scalar(f.rank(), 1.0);
  for (const auto& [monomial, poly] : f.coefficients()) {
    for (const auto& [degree, coeff] : poly.terms()) {
      std::string vars;
      for (std::size_t i = 0; i < degree.size(); ++i) {
        if (degree[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "z" + std::to_string(i + 1);
        if (degree[i] > 1) vars += "^" + std::to_string(degree[i]);
      }
      const std::string odd = monomial_text(monomial, 'y', "*");
      if (!odd.empty()) vars += (vars.empty() ? "" : "*") + odd;
      std::string term;
      if (vars.empty()) {
        term = "(" + to_literal(coeff) + ")";
      } else if (coeff == one) {
        term = vars;
      } else {
        term = "(" + to_literal(coeff) + ")*" + vars;
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
  }
  return out;
}

std::string to_literal(const SuperFunction& f) {
  return "dims=(" + std::to_string(f.dims().even) + "," + std::to_string(f.dims().odd) +
         ") rank=" + std::to_string(f.rank()) + " Nprime=" + std::to_string(f.rank_prime()) + "\n" +
         expression_literal(f) + "\n";
}

SuperFunction parse_superfunction(std::string_view text, std::optional<Dims> dims, std::optional<int> rank,
                                  std::optional<int> rank_prime) {
  Lexer lex(text);
  const Header header = parse_header(lex);
  const Dims d = merge(header.dims, dims, "dims");
  const int r = merge(header.rank, rank, "rank");
  const int rp = header.rank_prime.value_or(rank_prime.value_or(0));
  if (r < 0 || r > kMaxRank) throw ParseError(1, 1, "rank out of range");
  if (rp < 0 || rp > r) throw ParseError(1, 1, "Nprime must lie in [0, rank]");
  FunctionSemantics sem{d, r, rp};
  SuperFunction f = ExpressionParser<FunctionSemantics>(lex, sem).expression();
  expect_end(lex);
  return f;
}

}  // namespace supergeom
