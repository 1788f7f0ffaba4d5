#include "uag/term.hpp"

#include <algorithm>
#include <cctype>

#include "uag/error.hpp"

namespace uag {

  namespace {
    bool is_ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    bool is_ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    // x followed by a positive integer without leading zero.
    std::optional<std::size_t> variable_index(std::string_view name) {
      if (name.size() < 2 || name[0] != 'x' || name[1] == '0') {
        return std::nullopt;
      }
      std::size_t result = 0;
      for (char c : name.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          return std::nullopt;
        }
        result = 10 * result + static_cast<std::size_t>(c - '0');
      }
      return result;
    }

    bool valid_symbol_name(std::string_view name) {
      if (name.empty() || !is_ident_start(name[0])) {
        return false;
      }
      std::size_t end = name.size();
      while (end > 1 && name[end - 1] == '*') {
        --end;
      }
      for (std::size_t i = 1; i < end; ++i) {
        if (!is_ident_char(name[i])) {
          return false;
        }
      }
      return !variable_index(name.substr(0, end)).has_value();
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Signature
  ////////////////////////////////////////////////////////////////////////

  Signature::Signature(std::vector<Symbol> symbols)
      : _symbols(std::move(symbols)) {
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
      if (!valid_symbol_name(_symbols[i].name)) {
        throw InputError("invalid symbol name \"" + _symbols[i].name + "\"");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (_symbols[j].name == _symbols[i].name) {
          throw InputError("duplicate symbol name \"" + _symbols[i].name
                           + "\"");
        }
      }
    }
  }

  std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
      if (_symbols[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t Signature::max_arity() const noexcept {
    std::size_t result = 0;
    for (auto const& s : _symbols) {
      result = std::max(result, s.arity);
    }
    return result;
  }

  bool Signature::has_constants() const noexcept {
    return std::any_of(_symbols.begin(), _symbols.end(), [](auto const& s) {
      return s.arity == 0;
    });
  }

  Signature Signature::starred() const {
    std::vector<Symbol> result = _symbols;
    for (auto& s : result) {
      s.name += '*';
    }
    return Signature(std::move(result));
  }

  std::string Signature::to_string() const {
    std::string result;
    for (std::size_t i = 0; i < _symbols.size(); ++i) {
      if (i != 0) {
        result += ", ";
      }
      result += _symbols[i].name + "/" + std::to_string(_symbols[i].arity);
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Term
  ////////////////////////////////////////////////////////////////////////

  struct Term::Node {
    // var_index > 0 for variables, 0 for applications
    std::size_t       var_index = 0;
    std::size_t       symbol    = 0;
    std::vector<Term> args;
    std::size_t       depth   = 0;
    std::size_t       max_var = 0;
  };

  Term Term::var(std::size_t index) {
    if (index == 0) {
      throw InputError("variable indices start at 1");
    }
    auto node       = std::make_shared<Node>();
    node->var_index = index;
    node->max_var   = index;
    return Term(std::move(node));
  }

  Term Term::apply(Signature const&  sig,
                   std::size_t       symbol,
                   std::vector<Term> args) {
    if (symbol >= sig.size()) {
      throw InputError("symbol index " + std::to_string(symbol)
                       + " out of range");
    }
    if (args.size() != sig[symbol].arity) {
      throw InputError("arity mismatch for \"" + sig[symbol].name
                       + "\": expected " + std::to_string(sig[symbol].arity)
                       + " arguments, got " + std::to_string(args.size()));
    }
    auto node    = std::make_shared<Node>();
    node->symbol = symbol;
    node->depth  = 1;
    for (auto const& a : args) {
      node->depth   = std::max(node->depth, a.depth() + 1);
      node->max_var = std::max(node->max_var, a.max_var());
    }
    node->args = std::move(args);
    return Term(std::move(node));
  }

  Term Term::basic(Signature const& sig, std::size_t symbol) {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= sig[symbol].arity; ++i) {
      args.push_back(var(i));
    }
    return apply(sig, symbol, std::move(args));
  }

  bool Term::is_var() const noexcept {
    return _node->var_index != 0;
  }

  std::size_t Term::var_index() const {
    return _node->var_index;
  }

  std::size_t Term::symbol() const {
    return _node->symbol;
  }

  std::span<Term const> Term::args() const noexcept {
    return _node->args;
  }

  std::size_t Term::depth() const noexcept {
    return _node->depth;
  }

  std::size_t Term::max_var() const noexcept {
    return _node->max_var;
  }

  Term Term::with_args(std::vector<Term> args) const {
    if (is_var() || args.size() != _node->args.size()) {
      throw InputError("with_args: child count mismatch");
    }
    auto node    = std::make_shared<Node>();
    node->symbol = _node->symbol;
    node->depth  = 1;
    for (auto const& a : args) {
      node->depth   = std::max(node->depth, a.depth() + 1);
      node->max_var = std::max(node->max_var, a.max_var());
    }
    node->args = std::move(args);
    return Term(std::move(node));
  }

  std::string Term::to_string(Signature const& sig) const {
    if (is_var()) {
      return "x" + std::to_string(var_index());
    }
    std::string result = sig[symbol()].name + "(";
    for (std::size_t i = 0; i < args().size(); ++i) {
      if (i != 0) {
        result += ",";
      }
      result += args()[i].to_string(sig);
    }
    return result + ")";
  }

  bool Term::operator==(Term const& that) const {
    return (*this <=> that) == std::strong_ordering::equal;
  }

  std::strong_ordering Term::operator<=>(Term const& that) const {
    if (_node == that._node) {
      return std::strong_ordering::equal;
    }
    if (auto c = depth() <=> that.depth(); c != 0) {
      return c;
    }
    if (is_var() != that.is_var()) {
      // only possible at depth 0 vs ground constants, which differ in depth
      return is_var() ? std::strong_ordering::less
                      : std::strong_ordering::greater;
    }
    if (is_var()) {
      return var_index() <=> that.var_index();
    }
    if (auto c = symbol() <=> that.symbol(); c != 0) {
      return c;
    }
    return std::lexicographical_compare_three_way(args().begin(),
                                                  args().end(),
                                                  that.args().begin(),
                                                  that.args().end());
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace {
    class Lexer {
     public:
      explicit Lexer(std::string_view text) : _text(text) {}

      void skip_space() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          advance();
        }
      }

      bool at_end() {
        skip_space();
        return _pos == _text.size();
      }

      char peek() {
        skip_space();
        return _pos < _text.size() ? _text[_pos] : '\0';
      }

      bool accept(char c) {
        if (peek() == c) {
          advance();
          return true;
        }
        return false;
      }

      void expect(char c) {
        if (!accept(c)) {
          fail(std::string("expected '") + c + "'");
        }
      }

      std::string identifier() {
        skip_space();
        if (_pos == _text.size() || !is_ident_start(_text[_pos])) {
          fail("expected identifier");
        }
        std::size_t start = _pos;
        while (_pos < _text.size() && is_ident_char(_text[_pos])) {
          advance();
        }
        while (_pos < _text.size() && _text[_pos] == '*') {
          advance();
        }
        return std::string(_text.substr(start, _pos - start));
      }

      std::size_t number() {
        skip_space();
        if (_pos == _text.size()
            || !std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          fail("expected non-negative integer");
        }
        std::size_t result = 0;
        while (_pos < _text.size()
               && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          result = 10 * result + static_cast<std::size_t>(_text[_pos] - '0');
          advance();
        }
        return result;
      }

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, _line, _column);
      }

      std::size_t line() const noexcept {
        return _line;
      }
      std::size_t column() const noexcept {
        return _column;
      }

     private:
      void advance() {
        if (_text[_pos] == '\n') {
          ++_line;
          _column = 1;
        } else {
          ++_column;
        }
        ++_pos;
      }

      std::string_view _text;
      std::size_t      _pos    = 0;
      std::size_t      _line   = 1;
      std::size_t      _column = 1;
    };

    Term parse_term_impl(Lexer&           lex,
                         Signature const& sig,
                         std::size_t      num_vars) {
      lex.skip_space();
      std::size_t line = lex.line(), column = lex.column();
      std::string name = lex.identifier();
      if (lex.peek() != '(') {
        if (auto i = variable_index(name)) {
          if (*i > num_vars) {
            throw ParseError("variable " + name + " exceeds the "
                                 + std::to_string(num_vars)
                                 + " available variables",
                             line,
                             column);
          }
          return Term::var(*i);
        }
      }
      auto symbol = sig.find(name);
      if (!symbol) {
        throw ParseError("unknown symbol \"" + name + "\"", line, column);
      }
      std::vector<Term> args;
      if (lex.accept('(')) {
        if (!lex.accept(')')) {
          do {
            args.push_back(parse_term_impl(lex, sig, num_vars));
          } while (lex.accept(','));
          lex.expect(')');
        }
      }
      if (args.size() != sig[*symbol].arity) {
        throw ParseError("arity mismatch for \"" + name + "\": expected "
                             + std::to_string(sig[*symbol].arity)
                             + " arguments, got "
                             + std::to_string(args.size()),
                         line,
                         column);
      }
      return Term::apply(sig, *symbol, std::move(args));
    }
  }  // namespace

  Signature parse_signature(std::string_view text) {
    Lexer               lex(text);
    std::vector<Symbol> symbols;
    if (lex.at_end()) {
      return Signature();
    }
    do {
      lex.skip_space();
      std::size_t line = lex.line(), column = lex.column();
      std::string name = lex.identifier();
      lex.expect('/');
      std::size_t arity = lex.number();
      for (auto const& s : symbols) {
        if (s.name == name) {
          throw ParseError("duplicate symbol name \"" + name + "\"",
                           line,
                           column);
        }
      }
      if (!valid_symbol_name(name)) {
        throw ParseError("symbol name \"" + name
                             + "\" collides with the variable syntax",
                         line,
                         column);
      }
      symbols.push_back({std::move(name), arity});
    } while (lex.accept(','));
    if (!lex.at_end()) {
      lex.fail("unexpected trailing input");
    }
    return Signature(std::move(symbols));
  }

  Term parse_term(std::string_view text,
                  Signature const& sig,
                  std::size_t      num_vars) {
    Lexer lex(text);
    Term  result = parse_term_impl(lex, sig, num_vars);
    if (!lex.at_end()) {
      lex.fail("unexpected trailing input");
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Syntactic operations
  ////////////////////////////////////////////////////////////////////////

  bool next_tuple(std::vector<std::size_t>& idx, std::size_t bound) {
    for (std::size_t pos = idx.size(); pos-- > 0;) {
      if (++idx[pos] < bound) {
        return true;
      }
      idx[pos] = 0;
    }
    return false;
  }

  Term substitute(Term const& t, Assignment const& asg) {
    if (t.is_var()) {
      auto it = asg.find(t.var_index());
      if (it == asg.end()) {
        throw InputError("unmapped variable x"
                         + std::to_string(t.var_index()));
      }
      return it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const& a : t.args()) {
      args.push_back(substitute(a, asg));
    }
    return t.with_args(std::move(args));
  }

  Term substitute(Term const& t, std::span<Term const> images) {
    if (t.is_var()) {
      if (t.var_index() > images.size()) {
        throw InputError("unmapped variable x"
                         + std::to_string(t.var_index()));
      }
      return images[t.var_index() - 1];
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const& a : t.args()) {
      args.push_back(substitute(a, images));
    }
    return t.with_args(std::move(args));
  }

  std::set<std::size_t> term_vars(Term const& t) {
    std::set<std::size_t> result;
    std::vector<Term>     stack = {t};
    while (!stack.empty()) {
      Term u = stack.back();
      stack.pop_back();
      if (u.is_var()) {
        result.insert(u.var_index());
      } else {
        stack.insert(stack.end(), u.args().begin(), u.args().end());
      }
    }
    return result;
  }

  std::vector<Term> enumerate_terms(Signature const& sig,
                                    std::size_t      num_vars,
                                    std::size_t      max_depth,
                                    std::size_t      limit) {
    std::vector<Term> result;
    for (std::size_t i = 1; i <= num_vars; ++i) {
      result.push_back(Term::var(i));
    }
    // result is sorted; [level_start, result.size()) holds the terms of the
    // current maximum depth.
    std::size_t level_start = 0;
    for (std::size_t depth = 1; depth <= max_depth; ++depth) {
      std::size_t const prev = result.size();
      for (std::size_t w = 0; w < sig.size(); ++w) {
        std::size_t const arity = sig[w].arity;
        if (arity == 0) {
          if (depth == 1) {
            result.push_back(Term::apply(sig, w, {}));
          }
          continue;
        }
        if (prev == 0) {
          continue;
        }
        // Lexicographic order over [0, prev)^arity, restricted to tuples
        // containing at least one child of depth exactly depth - 1.
        std::vector<std::size_t> idx(arity, 0);
        do {
          bool fresh = std::any_of(idx.begin(), idx.end(), [&](auto i) {
            return i >= level_start;
          });
          if (!fresh) {
            continue;
          }
          std::vector<Term> args;
          for (auto i : idx) {
            args.push_back(result[i]);
          }
          result.push_back(Term::apply(sig, w, std::move(args)));
          if (result.size() > limit) {
            throw CapExceeded("term enumeration limit exceeded",
                              result.size());
          }
        } while (next_tuple(idx, prev));
      }
      level_start = prev;
    }
    return result;
  }

  Term replace_symbols(Term const&           t,
                       Signature const&      sig,
                       std::span<Term const> templates) {
    if (t.is_var()) {
      return t;
    }
    if (t.symbol() >= templates.size()) {
      throw InputError("no template for symbol \"" + sig[t.symbol()].name
                       + "\"");
    }
    Term const& tmpl = templates[t.symbol()];
    if (tmpl.max_var() > t.args().size()) {
      throw InputError("template for \"" + sig[t.symbol()].name
                       + "\" uses x" + std::to_string(tmpl.max_var())
                       + " but the arity is "
                       + std::to_string(t.args().size()));
    }
    std::vector<Term> children;
    children.reserve(t.args().size());
    for (auto const& a : t.args()) {
      children.push_back(replace_symbols(a, sig, templates));
    }
    return substitute(tmpl, children);
  }

  Term rename_symbols(Term const&                  t,
                      Signature const&             sig,
                      std::span<std::size_t const> mapping,
                      Signature const&             target) {
    if (t.is_var()) {
      return t;
    }
    if (t.symbol() >= mapping.size() || mapping[t.symbol()] >= target.size()) {
      throw InputError("no image for symbol \"" + sig[t.symbol()].name
                       + "\"");
    }
    std::vector<Term> args;
    for (auto const& a : t.args()) {
      args.push_back(rename_symbols(a, sig, mapping, target));
    }
    return Term::apply(target, mapping[t.symbol()], std::move(args));
  }

}  // namespace uag
