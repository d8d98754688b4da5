#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heapconn/connection.hpp"
#include "heapconn/endo.hpp"
#include "heapconn/format.hpp"

namespace heapconn {

/// Parse failure with a source location.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

/// A parsed model: one ring, one bundle/algebroid, and named connections,
/// metrics, endomorphisms and sections.  Unassigned components are zero.
struct ModelFile {
  RingPtr ring;
  BundlePtr bundle;
  Algebroid algebroid;
  std::map<std::string, Connection> connections;
  std::map<std::string, Metric> metrics;
  std::map<std::string, ConnEndo> endos;
  std::map<std::string, Section> sections;

  const Connection& connection(const std::string& name) const {
    auto it = connections.find(name);
    if (it == connections.end()) throw std::invalid_argument("unknown connection: " + name);
    return it->second;
  }
  const Metric& metric(const std::string& name) const {
    auto it = metrics.find(name);
    if (it == metrics.end()) throw std::invalid_argument("unknown metric: " + name);
    return it->second;
  }
  const ConnEndo& endo(const std::string& name) const {
    auto it = endos.find(name);
    if (it == endos.end()) throw std::invalid_argument("unknown endo: " + name);
    return it->second;
  }
  const Section& section(const std::string& name) const {
    auto it = sections.find(name);
    if (it == sections.end()) throw std::invalid_argument("unknown section: " + name);
    return it->second;
  }

  friend bool operator==(const ModelFile& a, const ModelFile& b) {
    return same_ring(a.ring, b.ring) && same_bundle(a.bundle, b.bundle) &&
           a.algebroid.structure == b.algebroid.structure &&
           a.algebroid.anchor == b.algebroid.anchor && a.connections == b.connections &&
           a.endos == b.endos && a.sections == b.sections && metrics_equal(a, b);
  }

 private:
  static bool metrics_equal(const ModelFile& a, const ModelFile& b) {
    if (a.metrics.size() != b.metrics.size()) return false;
    for (const auto& [name, m] : a.metrics) {
      auto it = b.metrics.find(name);
      if (it == b.metrics.end() || m.g != it->second.g || m.g_inv != it->second.g_inv)
        return false;
    }
    return true;
  }
};

namespace dsl_detail {

enum class Tok {
  Ident,
  Number,   // integer literal (rationals are formed by '/' between numbers)
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Arrow,    // ->
  Equals,
  Plus,
  Minus,
  Star,
  Caret,
  Slash,
  Colon,
  Deriv,    // d/d<coord>, payload carries the coordinate name
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          num += src_[pos_];
          advance();
        }
        out.push_back({Tok::Number, num, line, col});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        // "d/d<name>" lexes as a derivation token
        if (c == 'd' && pos_ + 2 < src_.size() && src_[pos_ + 1] == '/' && src_[pos_ + 2] == 'd') {
          std::size_t p = pos_ + 3;
          if (p < src_.size() &&
              (std::isalpha(static_cast<unsigned char>(src_[p])) || src_[p] == '_')) {
            advance();  // d
            advance();  // /
            advance();  // d
            std::string name = lex_ident();
            out.push_back({Tok::Deriv, name, line, col});
            continue;
          }
        }
        out.push_back({Tok::Ident, lex_ident(), line, col});
        continue;
      }
      switch (c) {
        case '{': push(out, Tok::LBrace, "{", line, col); continue;
        case '}': push(out, Tok::RBrace, "}", line, col); continue;
        case '[': push(out, Tok::LBracket, "[", line, col); continue;
        case ']': push(out, Tok::RBracket, "]", line, col); continue;
        case '(': push(out, Tok::LParen, "(", line, col); continue;
        case ')': push(out, Tok::RParen, ")", line, col); continue;
        case ',': push(out, Tok::Comma, ",", line, col); continue;
        case '=': push(out, Tok::Equals, "=", line, col); continue;
        case '+': push(out, Tok::Plus, "+", line, col); continue;
        case '*': push(out, Tok::Star, "*", line, col); continue;
        case '^': push(out, Tok::Caret, "^", line, col); continue;
        case '/': push(out, Tok::Slash, "/", line, col); continue;
        case ':': push(out, Tok::Colon, ":", line, col); continue;
        case '-':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            advance();
            push(out, Tok::Arrow, "->", line, col);
          } else {
            push(out, Tok::Minus, "-", line, col);
          }
          continue;
        default:
          throw ParseError(line, col, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  void push(std::vector<Token>& out, Tok k, std::string t, int line, int col) {
    out.push_back({k, std::move(t), line, col});
    advance();
  }

  std::string lex_ident() {
    std::string name;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                  src_[pos_] == '_')) {
      name += src_[pos_];
      advance();
    }
    return name;
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance();
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ModelFile parse() {
    ModelFile model;
    std::vector<std::string> even_coords, odd_coords;
    bool have_ring = false, have_bundle = false;
    std::vector<std::string> basis_names;
    std::vector<Parity> basis_parities;
    struct Pending {
      std::vector<std::pair<Token, std::pair<std::string, std::size_t>>> anchors;  // name, tokpos
    };
    // First block must be the ring; the bundle must precede anything that
    // references basis sections.  Parse sequentially and build as we go.
    while (peek().kind != Tok::End) {
      Token head = expect(Tok::Ident, "block keyword");
      if (head.text == "ring") {
        if (have_ring) throw ParseError(head.line, head.column, "duplicate ring block");
        expect(Tok::LBrace, "'{'");
        parse_coords(even_coords, odd_coords);
        expect(Tok::RBrace, "'}'");
        model.ring = make_ring(even_coords, odd_coords);
        have_ring = true;
      } else if (head.text == "bundle") {
        if (!have_ring) throw ParseError(head.line, head.column, "bundle before ring");
        if (have_bundle) throw ParseError(head.line, head.column, "duplicate bundle block");
        parse_bundle(model);
        have_bundle = true;
      } else if (head.text == "connection") {
        require_bundle_decl(have_bundle, head);
        parse_connection(model);
      } else if (head.text == "metric") {
        require_bundle_decl(have_bundle, head);
        parse_metric(model);
      } else if (head.text == "endo") {
        require_bundle_decl(have_bundle, head);
        parse_endo(model);
      } else if (head.text == "section") {
        require_bundle_decl(have_bundle, head);
        Token name = expect(Tok::Ident, "section name");
        if (model.sections.count(name.text))
          throw ParseError(name.line, name.column, "duplicate section: " + name.text);
        expect(Tok::Equals, "'='");
        model.sections.emplace(name.text, parse_secexpr(model));
      } else {
        throw ParseError(head.line, head.column, "unknown block keyword: " + head.text);
      }
    }
    if (!have_ring) throw ParseError(1, 1, "model has no ring block");
    if (!have_bundle) throw ParseError(1, 1, "model has no bundle block");
    return model;
  }

 private:
  static void require_bundle_decl(bool have_bundle, const Token& head) {
    if (!have_bundle)
      throw ParseError(head.line, head.column, head.text + " block before bundle");
  }

  void parse_coords(std::vector<std::string>& even, std::vector<std::string>& odd) {
    while (peek().kind == Tok::Ident) {
      Token kw = next();
      if (kw.text != "even" && kw.text != "odd")
        throw ParseError(kw.line, kw.column, "expected 'even:' or 'odd:' coordinate list");
      expect(Tok::Colon, "':'");
      auto& dst = (kw.text == "even") ? even : odd;
      if (peek().kind != Tok::Ident)
        throw ParseError(peek().line, peek().column, "expected coordinate name");
      while (peek().kind == Tok::Ident &&
             !(peek().text == "even" || peek().text == "odd")) {
        dst.push_back(next().text);
      }
    }
  }

  void parse_bundle(ModelFile& model) {
    expect(Tok::LBrace, "'{'");
    Token basis_kw = expect(Tok::Ident, "'basis'");
    if (basis_kw.text != "basis")
      throw ParseError(basis_kw.line, basis_kw.column, "bundle block must start with 'basis'");
    std::vector<std::string> names;
    std::vector<Parity> parities;
    while (peek().kind == Tok::Ident && (peek().text == "even" || peek().text == "odd")) {
      Token kw = next();
      expect(Tok::Colon, "':'");
      Parity p = (kw.text == "odd") ? Parity::Odd : Parity::Even;
      if (peek().kind != Tok::Ident)
        throw ParseError(peek().line, peek().column, "expected basis name");
      while (peek().kind == Tok::Ident && !(peek().text == "even" || peek().text == "odd") &&
             !(peek().text == "anchor")) {
        // stop before anchor/bracket declarations
        if (peek().text == "anchor") break;
        names.push_back(next().text);
        parities.push_back(p);
        if (peek().kind != Tok::Ident) break;
      }
    }
    if (names.empty())
      throw ParseError(basis_kw.line, basis_kw.column, "bundle has no basis sections");
    try {
      model.bundle = std::make_shared<const BundleSignature>(model.ring, names, parities);
    } catch (const std::invalid_argument& e) {
      throw ParseError(basis_kw.line, basis_kw.column, e.what());
    }
    model.algebroid = Algebroid(model.bundle);

    std::vector<bool> anchor_seen(names.size(), false);
    std::vector<std::vector<bool>> bracket_seen(names.size(), std::vector<bool>(names.size()));
    bool any_bracket = false;
    while (peek().kind != Tok::RBrace) {
      if (peek().kind == Tok::Ident && peek().text == "anchor") {
        Token kw = next();
        Token base = expect(Tok::Ident, "basis name");
        std::size_t a = basis_index(model, base);
        if (anchor_seen[a])
          throw ParseError(base.line, base.column, "duplicate anchor for " + base.text);
        anchor_seen[a] = true;
        expect(Tok::Arrow, "'->'");
        Derivation d = parse_vexpr(model);
        if (!d.is_homogeneous(model.bundle->parity(a)))
          throw ParseError(kw.line, kw.column,
                           "anchor of " + base.text + " must be " +
                               parity_name(model.bundle->parity(a)));
        model.algebroid.anchor[a] = std::move(d);
      } else if (peek().kind == Tok::LBracket) {
        Token open = next();
        if (!any_bracket) {
          model.algebroid.init_zero_structure();
          any_bracket = true;
        }
        Token ta = expect(Tok::Ident, "basis name");
        std::size_t a = basis_index(model, ta);
        expect(Tok::Comma, "','");
        Token tb = expect(Tok::Ident, "basis name");
        std::size_t b = basis_index(model, tb);
        expect(Tok::RBracket, "']'");
        expect(Tok::Equals, "'='");
        Section value = parse_secexpr(model);
        const auto& B = *model.bundle;
        Parity want = B.parity(a) + B.parity(b);
        if (!value.is_zero() && !value.is_homogeneous(want))
          throw ParseError(open.line, open.column,
                           "bracket [" + ta.text + "," + tb.text + "] must be " +
                               parity_name(want));
        const int k = koszul(B.parity(a), B.parity(b));
        for (std::size_t c = 0; c < B.rank(); ++c) {
          SuperScalar mirrored = (k < 0) ? value.comps[c] : -value.comps[c];
          if (bracket_seen[a][b]) {
            if (!(model.algebroid.C(a, b, c) == value.comps[c]))
              throw ParseError(open.line, open.column,
                               "conflicting bracket declaration for [" + ta.text + "," +
                                   tb.text + "]");
          } else {
            model.algebroid.C(a, b, c) = value.comps[c];
          }
          if (a != b) {
            if (bracket_seen[b][a]) {
              if (!(model.algebroid.C(b, a, c) == mirrored))
                throw ParseError(open.line, open.column,
                                 "bracket conflicts with declared [" + tb.text + "," + ta.text +
                                     "] under graded antisymmetry");
            } else {
              model.algebroid.C(b, a, c) = mirrored;
            }
          } else if (k > 0 && !value.comps[c].is_zero()) {
            throw ParseError(open.line, open.column,
                             "[" + ta.text + "," + ta.text + "] must vanish for an even section");
          }
        }
        bracket_seen[a][b] = true;
        if (a != b) bracket_seen[b][a] = true;
      } else {
        throw ParseError(peek().line, peek().column,
                         "expected anchor declaration, bracket declaration or '}'");
      }
    }
    expect(Tok::RBrace, "'}'");
  }

  void parse_connection(ModelFile& model) {
    Token name = expect(Tok::Ident, "connection name");
    if (model.connections.count(name.text))
      throw ParseError(name.line, name.column, "duplicate connection: " + name.text);
    expect(Tok::LBrace, "'{'");
    Connection conn(model.bundle);
    std::vector<bool> seen(conn.gamma.size(), false);
    while (peek().kind != Tok::RBrace) {
      Token kw = expect(Tok::Ident, "'Gamma'");
      if (kw.text != "Gamma")
        throw ParseError(kw.line, kw.column, "expected Gamma declaration");
      expect(Tok::LBracket, "'['");
      Token ta = expect(Tok::Ident, "basis name");
      std::size_t a = basis_index(model, ta);
      expect(Tok::Comma, "','");
      Token tb = expect(Tok::Ident, "basis name");
      std::size_t b = basis_index(model, tb);
      expect(Tok::Arrow, "'->'");
      Token tc = expect(Tok::Ident, "basis name");
      std::size_t c = basis_index(model, tc);
      expect(Tok::RBracket, "']'");
      expect(Tok::Equals, "'='");
      SuperScalar value = parse_expr(model.ring);
      const auto& B = *model.bundle;
      std::size_t flat = (a * B.rank() + b) * B.rank() + c;
      if (seen[flat])
        throw ParseError(kw.line, kw.column, "duplicate Gamma declaration");
      seen[flat] = true;
      Parity want = B.parity(a) + B.parity(b) + B.parity(c);
      if (!value.is_homogeneous(want))
        throw ParseError(kw.line, kw.column,
                         "Gamma[" + ta.text + "," + tb.text + "->" + tc.text + "] must be " +
                             parity_name(want) + ", got " + value.str());
      conn.G(a, b, c) = std::move(value);
    }
    expect(Tok::RBrace, "'}'");
    model.connections.emplace(name.text, std::move(conn));
  }

  void parse_metric(ModelFile& model) {
    Token name = expect(Tok::Ident, "metric name");
    if (model.metrics.count(name.text))
      throw ParseError(name.line, name.column, "duplicate metric: " + name.text);
    Token open = expect(Tok::LBrace, "'{'");
    const RingPtr& ring = model.ring;
    if (ring->odd_count() != 0)
      throw ParseError(open.line, open.column, "metric requires a purely even chart");
    const std::size_t n = ring->even_count();
    std::vector<SuperScalar> g(n * n, SuperScalar::zero(ring));
    std::vector<SuperScalar> gi(n * n, SuperScalar::zero(ring));
    std::vector<bool> g_seen(n * n, false), gi_seen(n * n, false);
    while (peek().kind != Tok::RBrace) {
      Token kw = expect(Tok::Ident, "'g' or 'ginv'");
      bool inverse;
      if (kw.text == "g")
        inverse = false;
      else if (kw.text == "ginv")
        inverse = true;
      else
        throw ParseError(kw.line, kw.column, "expected 'g' or 'ginv' entry");
      expect(Tok::LBracket, "'['");
      Token ti = expect(Tok::Ident, "coordinate name");
      std::size_t i = coord_index(ring, ti);
      expect(Tok::Comma, "','");
      Token tj = expect(Tok::Ident, "coordinate name");
      std::size_t j = coord_index(ring, tj);
      expect(Tok::RBracket, "']'");
      expect(Tok::Equals, "'='");
      SuperScalar value = parse_expr(ring);
      auto& dst = inverse ? gi : g;
      auto& seen = inverse ? gi_seen : g_seen;
      if (seen[i * n + j])
        throw ParseError(kw.line, kw.column, "duplicate metric entry [" + ti.text + "," +
                                                 tj.text + "]");
      seen[i * n + j] = true;
      seen[j * n + i] = true;
      dst[i * n + j] = value;
      dst[j * n + i] = std::move(value);
    }
    expect(Tok::RBrace, "'}'");
    try {
      model.metrics.emplace(name.text, Metric(ring, std::move(g), std::move(gi)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(open.line, open.column, std::string("invalid metric: ") + e.what());
    }
  }

  void parse_endo(ModelFile& model) {
    Token name = expect(Tok::Ident, "endo name");
    if (model.endos.count(name.text))
      throw ParseError(name.line, name.column, "duplicate endo: " + name.text);
    Token open = expect(Tok::LBrace, "'{'");
    ConnEndo endo(model.bundle);
    const auto& B = *model.bundle;
    std::vector<bool> phi_seen(B.rank() * B.rank(), false);
    std::vector<bool> omega_seen(B.rank() * B.rank() * B.rank(), false);
    while (peek().kind != Tok::RBrace) {
      Token kw = expect(Tok::Ident, "'phi' or 'omega'");
      if (kw.text == "phi") {
        expect(Tok::LBracket, "'['");
        Token ta = expect(Tok::Ident, "basis name");
        std::size_t a = basis_index(model, ta);
        expect(Tok::Arrow, "'->'");
        Token tb = expect(Tok::Ident, "basis name");
        std::size_t b = basis_index(model, tb);
        expect(Tok::RBracket, "']'");
        expect(Tok::Equals, "'='");
        SuperScalar value = parse_expr(model.ring);
        if (phi_seen[a * B.rank() + b])
          throw ParseError(kw.line, kw.column, "duplicate phi entry");
        phi_seen[a * B.rank() + b] = true;
        if (!value.is_homogeneous(B.parity(a) + B.parity(b)))
          throw ParseError(kw.line, kw.column,
                           "phi[" + ta.text + "->" + tb.text + "] must be " +
                               parity_name(B.parity(a) + B.parity(b)));
        endo.phi_at(a, b) = std::move(value);
      } else if (kw.text == "omega") {
        expect(Tok::LBracket, "'['");
        Token ta = expect(Tok::Ident, "basis name");
        std::size_t a = basis_index(model, ta);
        expect(Tok::Comma, "','");
        Token tb = expect(Tok::Ident, "basis name");
        std::size_t b = basis_index(model, tb);
        expect(Tok::Arrow, "'->'");
        Token tc = expect(Tok::Ident, "basis name");
        std::size_t c = basis_index(model, tc);
        expect(Tok::RBracket, "']'");
        expect(Tok::Equals, "'='");
        SuperScalar value = parse_expr(model.ring);
        std::size_t flat = (a * B.rank() + b) * B.rank() + c;
        if (omega_seen[flat]) throw ParseError(kw.line, kw.column, "duplicate omega entry");
        omega_seen[flat] = true;
        Parity want = B.parity(a) + B.parity(b) + B.parity(c);
        if (!value.is_homogeneous(want))
          throw ParseError(kw.line, kw.column,
                           "omega[" + ta.text + "," + tb.text + "->" + tc.text + "] must be " +
                               parity_name(want));
        endo.omega.at(a, b, c) = std::move(value);
      } else {
        throw ParseError(kw.line, kw.column, "expected 'phi' or 'omega' entry");
      }
    }
    expect(Tok::RBrace, "'}'");
    if (!is_anchored(model.algebroid, endo))
      throw ParseError(open.line, open.column,
                       "endo " + name.text + " does not preserve the anchor");
    model.endos.emplace(name.text, std::move(endo));
  }

  // secexpr := 0 | signed sum of (expr '*')? basis-ident
  Section parse_secexpr(ModelFile& model) {
    Section out(model.bundle);
    bool negate = false;
    if (peek().kind == Tok::Minus) {
      next();
      negate = true;
    }
    if (peek().kind == Tok::Number && peek().text == "0" && !negate) {
      Token zero = next();
      if (peek().kind == Tok::Plus || peek().kind == Tok::Minus || peek().kind == Tok::Star)
        throw ParseError(zero.line, zero.column, "'0' must be the whole section expression");
      return out;
    }
    while (true) {
      Section term = parse_secterm(model);
      out = out + (negate ? -term : term);
      if (peek().kind == Tok::Plus) {
        next();
        negate = false;
      } else if (peek().kind == Tok::Minus) {
        next();
        negate = true;
      } else {
        return out;
      }
    }
  }

  Section parse_secterm(ModelFile& model) {
    // Either "expr * basis" or a bare basis name; distinguish by trying a
    // basis ident first.
    if (peek().kind == Tok::Ident) {
      std::size_t idx;
      if (model.bundle->find(peek().text, idx) && peek(1).kind != Tok::Star &&
          peek(1).kind != Tok::Caret) {
        next();
        return Section::basis(model.bundle, idx);
      }
      // A bare basis name followed by '*' is ambiguous with an expression
      // factor; require the coefficient-first form "expr * basis".
    }
    SuperScalar coef = parse_term(model.ring, /*stop_at_basis=*/&model);
    Token base = expect(Tok::Ident, "basis name");
    std::size_t idx = basis_index(model, base);
    return coef * Section::basis(model.bundle, idx);
  }

  // vexpr := 0 | signed sum of (expr '*')? d/d<coord>
  Derivation parse_vexpr(ModelFile& model) {
    Derivation out = Derivation::zero(model.ring);
    bool negate = false;
    if (peek().kind == Tok::Minus) {
      next();
      negate = true;
    }
    if (peek().kind == Tok::Number && peek().text == "0" && !negate) {
      next();
      return out;
    }
    while (true) {
      Derivation term = parse_vterm(model);
      out = out + (negate ? -term : term);
      if (peek().kind == Tok::Plus) {
        next();
        negate = false;
      } else if (peek().kind == Tok::Minus) {
        next();
        negate = true;
      } else {
        return out;
      }
    }
  }

  Derivation parse_vterm(ModelFile& model) {
    if (peek().kind == Tok::Deriv) {
      Token d = next();
      return make_coordinate_derivation(model.ring, d);
    }
    SuperScalar coef = parse_term(model.ring, nullptr, /*stop_at_deriv=*/true);
    Token star_or_d = peek();
    if (star_or_d.kind != Tok::Deriv)
      throw ParseError(star_or_d.line, star_or_d.column, "expected d/d<coordinate>");
    Token d = next();
    return coef * make_coordinate_derivation(model.ring, d);
  }

  static Derivation make_coordinate_derivation(const RingPtr& ring, const Token& d) {
    bool even;
    std::size_t idx;
    if (!ring->find(d.text, even, idx))
      throw ParseError(d.line, d.column, "unknown coordinate: " + d.text);
    return Derivation::coordinate(ring, d.text);
  }

  // expr := term (('+'|'-') term)*
  SuperScalar parse_expr(const RingPtr& ring) {
    SuperScalar out = parse_term(ring, nullptr);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      SuperScalar rhs = parse_term(ring, nullptr);
      out = minus ? out - rhs : out + rhs;
    }
    return out;
  }

  // term := factor ('*' factor)*.  When stop_at_basis is set, a factor that
  // names a basis section terminates the term (the caller consumes it); when
  // stop_at_deriv is set the same applies to d/d tokens.
  SuperScalar parse_term(const RingPtr& ring, const ModelFile* stop_at_basis,
                         bool stop_at_deriv = false) {
    SuperScalar out = parse_factor(ring);
    while (true) {
      if (peek().kind == Tok::Star) {
        const Token& after = peek(1);
        if (stop_at_basis && after.kind == Tok::Ident) {
          std::size_t idx;
          if (stop_at_basis->bundle->find(after.text, idx)) {
            next();  // consume '*'; caller reads the basis name
            return out;
          }
        }
        if (stop_at_deriv && after.kind == Tok::Deriv) {
          next();
          return out;
        }
        next();
        out *= parse_factor(ring);
      } else {
        return out;
      }
    }
  }

  // factor := primary ('^' INT)?
  SuperScalar parse_factor(const RingPtr& ring) {
    SuperScalar base = parse_primary(ring);
    if (peek().kind == Tok::Caret) {
      Token caret = next();
      Token e = expect(Tok::Number, "nonnegative integer exponent");
      (void)caret;
      unsigned long exp = std::stoul(e.text);
      SuperScalar out = SuperScalar::one(ring);
      for (unsigned long i = 0; i < exp; ++i) out *= base;
      return out;
    }
    return base;
  }

  // primary := RATIONAL | IDENT | '(' expr ')' | '-' factor
  SuperScalar parse_primary(const RingPtr& ring) {
    Token t = peek();
    if (t.kind == Tok::Minus) {
      next();
      return -parse_factor(ring);
    }
    if (t.kind == Tok::Number) {
      next();
      Rational value(boost::multiprecision::cpp_int(t.text));
      if (peek().kind == Tok::Slash) {
        next();
        Token den = expect(Tok::Number, "denominator");
        boost::multiprecision::cpp_int d(den.text);
        if (d == 0) throw ParseError(den.line, den.column, "zero denominator");
        value /= Rational(d);
      }
      return SuperScalar::constant(ring, value);
    }
    if (t.kind == Tok::Ident) {
      next();
      bool even;
      std::size_t idx;
      if (!ring->find(t.text, even, idx))
        throw ParseError(t.line, t.column, "unknown symbol: " + t.text);
      return SuperScalar::coordinate(ring, t.text);
    }
    if (t.kind == Tok::LParen) {
      next();
      SuperScalar inner = parse_expr(ring);
      expect(Tok::RParen, "')'");
      return inner;
    }
    throw ParseError(t.line, t.column, "expected expression, got '" + t.text + "'");
  }

  std::size_t basis_index(const ModelFile& model, const Token& t) {
    std::size_t idx;
    if (!model.bundle->find(t.text, idx))
      throw ParseError(t.line, t.column, "unknown basis section: " + t.text);
    return idx;
  }

  std::size_t coord_index(const RingPtr& ring, const Token& t) {
    bool even;
    std::size_t idx;
    if (!ring->find(t.text, even, idx) || !even)
      throw ParseError(t.line, t.column, "unknown even coordinate: " + t.text);
    return idx;
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token expect(Tok kind, const std::string& what) {
    Token t = peek();
    if (t.kind != kind)
      throw ParseError(t.line, t.column, "expected " + what + ", got '" +
                                             (t.kind == Tok::End ? "<end>" : t.text) + "'");
    return next();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace dsl_detail

inline ModelFile parse_model(std::string_view text) {
  dsl_detail::Lexer lexer(text);
  dsl_detail::Parser parser(lexer.run());
  return parser.parse();
}

/// Regenerates model text in canonical form; parse(emit(parse(t))) equals
/// parse(t).
inline std::string emit_model(const ModelFile& model) {
  std::string out;
  out += "ring {";
  if (!model.ring->even_names.empty()) {
    out += " even:";
    for (const auto& n : model.ring->even_names) out += " " + n;
  }
  if (!model.ring->odd_names.empty()) {
    out += " odd:";
    for (const auto& n : model.ring->odd_names) out += " " + n;
  }
  out += " }\n";

  const auto& B = *model.bundle;
  out += "bundle {\n  basis";
  bool any_even = false, any_odd = false;
  for (Parity p : B.basis_parities) (is_odd(p) ? any_odd : any_even) = true;
  if (any_even) {
    out += " even:";
    for (std::size_t a = 0; a < B.rank(); ++a)
      if (!is_odd(B.parity(a))) out += " " + B.basis_names[a];
  }
  if (any_odd) {
    out += " odd:";
    for (std::size_t a = 0; a < B.rank(); ++a)
      if (is_odd(B.parity(a))) out += " " + B.basis_names[a];
  }
  out += "\n";
  for (std::size_t a = 0; a < B.rank(); ++a) {
    const Derivation& d = model.algebroid.anchor[a];
    std::string expr;
    for (std::size_t i = 0; i < d.even_parts.size(); ++i)
      if (!d.even_parts[i].is_zero()) {
        if (!expr.empty()) expr += " + ";
        expr += "(" + d.even_parts[i].str() + ")*d/d" + B.ring->even_names[i];
      }
    for (std::size_t j = 0; j < d.odd_parts.size(); ++j)
      if (!d.odd_parts[j].is_zero()) {
        if (!expr.empty()) expr += " + ";
        expr += "(" + d.odd_parts[j].str() + ")*d/d" + B.ring->odd_names[j];
      }
    out += "  anchor " + B.basis_names[a] + " -> " + (expr.empty() ? "0" : expr) + "\n";
  }
  if (model.algebroid.has_bracket()) {
    for (std::size_t a = 0; a < B.rank(); ++a)
      for (std::size_t b = a; b < B.rank(); ++b) {
        Section s = model.algebroid.bracket_basis(a, b);
        out += "  [" + B.basis_names[a] + "," + B.basis_names[b] + "] = " + s.str() + "\n";
      }
  }
  out += "}\n";

  for (const auto& [name, conn] : model.connections) {
    out += "connection " + name + " {\n";
    for (const auto& [key, value] : component_lines(conn)) out += "  " + key + " = " + value + "\n";
    out += "}\n";
  }
  for (const auto& [name, m] : model.metrics) {
    out += "metric " + name + " {\n";
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (!m.at(i, j).is_zero())
          out += "  g[" + m.ring->even_names[i] + "," + m.ring->even_names[j] + "] = " +
                 m.at(i, j).str() + "\n";
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (!m.inv(i, j).is_zero())
          out += "  ginv[" + m.ring->even_names[i] + "," + m.ring->even_names[j] + "] = " +
                 m.inv(i, j).str() + "\n";
      }
    out += "}\n";
  }
  for (const auto& [name, e] : model.endos) {
    out += "endo " + name + " {\n";
    for (std::size_t a = 0; a < B.rank(); ++a)
      for (std::size_t b = 0; b < B.rank(); ++b)
        if (!e.phi_at(a, b).is_zero())
          out += "  phi[" + B.basis_names[a] + "->" + B.basis_names[b] + "] = " +
                 e.phi_at(a, b).str() + "\n";
    for (const auto& [key, value] : component_lines(e.omega, "omega"))
      out += "  " + key + " = " + value + "\n";
    out += "}\n";
  }
  for (const auto& [name, s] : model.sections)
    out += "section " + name + " = " + s.str() + "\n";
  return out;
}

}  // namespace heapconn
