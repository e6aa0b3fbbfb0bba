#pragma once

// Tokens for the polytope shell language. Sigils are optional ($P and P
// name the same variable). Newlines end statements unless they occur
// inside parentheses or brackets. A here-document `<<"."` takes the lines
// after the current one, up to a line holding only the terminator.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace latpoly::shell {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg, bool incomplete = false)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        incomplete_(incomplete) {}
  int line() const { return line_; }
  int column() const { return column_; }
  /// True when more input could complete the text (open brackets, strings, ...).
  bool incomplete() const { return incomplete_; }

 private:
  int line_, column_;
  bool incomplete_;
};

enum class Tok {
  Ident,
  Number,
  String,
  Punct,
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  int depth = 0;  // ( and [ nesting
  std::vector<std::pair<std::size_t, std::string>> heredocs;  // token index, terminator
  std::size_t skip_from = std::string::npos, skip_to = 0;

  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') ++line, col = 1;
      else ++col;
    }
  };
  auto push = [&](Tok k, std::string text, int l, int c) { out.push_back({k, std::move(text), l, c}); };

  // Reads the bodies of pending here-documents, which start after the newline at `nl`.
  auto read_heredocs = [&](std::size_t nl) {
    std::size_t pos = nl + 1;
    int body_line = line + 1;
    for (auto& [index, term] : heredocs) {
      std::string body;
      while (true) {
        if (pos >= src.size())
          throw ParseError(body_line, 1, "here-document without terminator line \"" + term + "\"", true);
        std::size_t end = src.find('\n', pos);
        std::string l = src.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        if (!l.empty() && l.back() == '\r') l.pop_back();
        pos = end == std::string::npos ? src.size() : end + 1;
        ++body_line;
        if (l == term) break;
        body += l + "\n";
      }
      out[index].text = body;
    }
    heredocs.clear();
    skip_from = nl + 1;
    skip_to = pos;
  };

  while (i < src.size()) {
    if (i == skip_from) {
      // jump over consumed here-document bodies, keeping line numbers right
      while (i < skip_to) advance();
      skip_from = std::string::npos;
      continue;
    }
    const char c = src[i];
    const int l = line, cl = col;
    if (c == '\n') {
      if (!heredocs.empty()) read_heredocs(i);
      if (depth == 0) push(Tok::Newline, "\n", l, cl);
      advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) num += src[i], advance();
      push(Tok::Number, num, l, cl);
      continue;
    }
    if (c == '$' || c == '_' || std::isalpha(static_cast<unsigned char>(c))) {
      if (c == '$') advance();
      if (i >= src.size() || !(src[i] == '_' || std::isalpha(static_cast<unsigned char>(src[i]))))
        throw ParseError(l, cl, "expected a name after '$'");
      std::string id;
      while (i < src.size()) {
        char d = src[i];
        if (d == '_' || std::isalnum(static_cast<unsigned char>(d))) {
          id += d;
          advance();
        } else if (d == ':' && i + 2 < src.size() && src[i + 1] == ':' &&
                   (src[i + 2] == '_' || std::isalpha(static_cast<unsigned char>(src[i + 2])))) {
          id += "::";
          advance(2);
        } else {
          break;
        }
      }
      push(Tok::Ident, id, l, cl);
      continue;
    }
    if (c == '"' || c == '\'') {
      const char q = c;
      advance();
      std::string s;
      while (true) {
        if (i >= src.size()) throw ParseError(l, cl, "unterminated string", true);
        char d = src[i];
        if (d == q) {
          advance();
          break;
        }
        if (d == '\\' && q == '"' && i + 1 < src.size()) {
          char e = src[i + 1];
          advance(2);
          switch (e) {
            case 'n': s += '\n'; break;
            case 't': s += '\t'; break;
            case '\\': s += '\\'; break;
            case '"': s += '"'; break;
            case '$': s += '$'; break;
            default: s += '\\', s += e;
          }
          continue;
        }
        s += d;
        advance();
      }
      push(Tok::String, s, l, cl);
      continue;
    }
    if (c == '<' && i + 2 < src.size() && src[i + 1] == '<' && (src[i + 2] == '"' || src[i + 2] == '\'')) {
      const char q = src[i + 2];
      std::size_t close = src.find(q, i + 3);
      std::size_t nl = src.find('\n', i);
      if (close == std::string::npos || (nl != std::string::npos && close > nl))
        throw ParseError(l, cl, "bad here-document terminator", close == std::string::npos);
      std::string term = src.substr(i + 3, close - i - 3);
      advance(close + 1 - i);
      heredocs.emplace_back(out.size(), term);
      push(Tok::String, "", l, cl);
      continue;
    }
    static const char* puncts[] = {"=>", "->", "..", "==", "!=", "<=", ">=", "&&", "||", "(", ")", "[", "]",
                                   "{",  "}",  ",",  ";",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "!", "."};
    bool matched = false;
    for (const char* p : puncts) {
      std::string ps(p);
      if (src.compare(i, ps.size(), ps) == 0) {
        if (ps == "(" || ps == "[") ++depth;
        if ((ps == ")" || ps == "]") && depth > 0) --depth;
        push(Tok::Punct, ps, l, cl);
        advance(ps.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(l, cl, std::string("unexpected character '") + c + "'");
  }
  if (!heredocs.empty()) throw ParseError(line, col, "here-document body missing", true);
  push(Tok::End, "", line, col);
  return out;
}

}  // namespace latpoly::shell
