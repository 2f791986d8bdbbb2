#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "txbasis/errors.hpp"

namespace txbasis {

enum class TokKind { Ident, Number, String, Punct, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SourceLoc loc;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case TokKind::End: return "end of input";
    case TokKind::String: return "string literal";
    default: return "'" + t.text + "'";
  }
}

/// Splits MiniSol text into tokens. Comments (// and /* */) are skipped.
inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  static const char* const kPuncts[] = {"=>", "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=",
                                        "++", "--", "{",  "}",  "(",  ")",  "[",  "]",  ";",  ",",
                                        ".",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%",  "!"};
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      SourceLoc start{line, col};
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) throw ParseError(start, "unterminated comment");
      advance(2);
      continue;
    }
    Token tok;
    tok.loc = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = TokKind::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        throw ParseError(tok.loc, "malformed number");
      tok.kind = TokKind::Number;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw ParseError(tok.loc, "unterminated string literal");
      tok.kind = TokKind::String;
      tok.text = std::string(src.substr(i + 1, j - i - 1));
      advance(j - i + 1);
    } else {
      bool matched = false;
      for (const char* p : kPuncts) {
        std::string_view pv(p);
        if (src.substr(i, pv.size()) == pv) {
          tok.kind = TokKind::Punct;
          tok.text = std::string(pv);
          advance(pv.size());
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(tok.loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{TokKind::End, "", {line, col}});
  return out;
}

}  // namespace txbasis
