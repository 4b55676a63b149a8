// Recursive-descent reader for the OpenQASM 2.0 subset used as circuit input:
// header, include "qelib1.inc", qreg/creg, the supported gates, measure and
// barrier. Register arguments broadcast over the whole register.

#include "dasqa/circuit.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <unordered_map>

namespace dasqa {

QasmError::QasmError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::End;
      return t;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        t.text += advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      t.kind = Tok::Number;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.')) {
        t.text += advance();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        t.text += advance();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
          t.text += advance();
        }
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          t.text += advance();
        }
      }
      return t;
    }
    if (c == '"') {
      advance();
      t.kind = Tok::String;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
        t.text += advance();
      }
      if (pos_ >= src_.size() || src_[pos_] != '"') {
        throw QasmError("unterminated string", t.line, t.column);
      }
      advance();
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::Arrow;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view symbols = ";,[](){}+-*/^=";
    if (symbols.find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
      t.text = std::string(1, advance());
      return t;
    }
    throw QasmError(std::string("unexpected character '") + c + "'", t.line,
                    t.column);
  }

private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Register {
  int offset = 0;
  int size = 0;
};

// A qubit argument: either one bit or a whole register.
struct Argument {
  Register reg;
  std::optional<int> index;
  Token where;
};

const std::unordered_map<std::string, GateKind>& gate_table() {
  static const std::unordered_map<std::string, GateKind> table = {
      {"x", GateKind::X},   {"y", GateKind::Y},       {"z", GateKind::Z},
      {"h", GateKind::H},   {"s", GateKind::S},       {"t", GateKind::T},
      {"rz", GateKind::RZ}, {"cx", GateKind::CX},     {"CX", GateKind::CX},
      {"cz", GateKind::CZ}, {"swap", GateKind::SWAP},
  };
  return table;
}

class Parser {
public:
  explicit Parser(std::string_view src) : lexer_(src) { bump(); }

  QuantumCircuit parse() {
    if (peek_ident("OPENQASM")) {
      bump();
      const Token version = expect(Tok::Number, "version number");
      if (version.text.rfind("2", 0) != 0) {
        throw QasmError("unsupported OpenQASM version " + version.text,
                        version.line, version.column);
      }
      expect_symbol(";");
    }
    while (cur_.kind != Tok::End) {
      statement();
    }
    QuantumCircuit qc(num_qubits_, num_clbits_);
    for (auto& [gate, where] : pending_) {
      try {
        qc.add(std::move(gate));
      } catch (const CircuitError& e) {
        throw QasmError(e.what(), where.line, where.column);
      }
    }
    return qc;
  }

private:
  void bump() { cur_ = lexer_.next(); }

  [[nodiscard]] bool peek_ident(std::string_view name) const {
    return cur_.kind == Tok::Ident && cur_.text == name;
  }
  [[nodiscard]] bool peek_symbol(std::string_view s) const {
    return cur_.kind == Tok::Symbol && cur_.text == s;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw QasmError(message, cur_.line, cur_.column);
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) {
      fail("expected " + what +
           (cur_.kind == Tok::End ? " before end of input"
                                  : ", found '" + cur_.text + "'"));
    }
    Token t = cur_;
    bump();
    return t;
  }

  void expect_symbol(std::string_view s) {
    if (!peek_symbol(s)) {
      fail("expected '" + std::string(s) + "'" +
           (cur_.kind == Tok::End ? " before end of input"
                                  : ", found '" + cur_.text + "'"));
    }
    bump();
  }

  int expect_int(const std::string& what) {
    const Token t = expect(Tok::Number, what);
    if (t.text.find_first_not_of("0123456789") != std::string::npos) {
      throw QasmError("expected integer " + what + ", found '" + t.text + "'",
                      t.line, t.column);
    }
    return std::stoi(t.text);
  }

  void statement() {
    if (cur_.kind != Tok::Ident) {
      fail("expected statement, found '" + cur_.text + "'");
    }
    const Token head = cur_;
    if (head.text == "include") {
      bump();
      const Token file = expect(Tok::String, "include file name");
      if (file.text != "qelib1.inc") {
        throw QasmError("unsupported include \"" + file.text + "\"", file.line,
                        file.column);
      }
      expect_symbol(";");
    } else if (head.text == "qreg" || head.text == "creg") {
      bump();
      declare(head.text == "qreg");
    } else if (head.text == "measure") {
      bump();
      measure(head);
    } else if (head.text == "barrier") {
      bump();
      barrier(head);
    } else if (head.text == "gate" || head.text == "opaque" ||
               head.text == "if" || head.text == "reset") {
      fail("unsupported statement '" + head.text + "'");
    } else {
      gate(head);
    }
  }

  void declare(bool quantum) {
    const Token name = expect(Tok::Ident, "register name");
    expect_symbol("[");
    const int size = expect_int("register size");
    expect_symbol("]");
    expect_symbol(";");
    if (size <= 0) {
      throw QasmError("register '" + name.text + "' must have positive size",
                      name.line, name.column);
    }
    if (qregs_.contains(name.text) || cregs_.contains(name.text)) {
      throw QasmError("register '" + name.text + "' redeclared", name.line,
                      name.column);
    }
    if (quantum) {
      qregs_[name.text] = {num_qubits_, size};
      num_qubits_ += size;
    } else {
      cregs_[name.text] = {num_clbits_, size};
      num_clbits_ += size;
    }
  }

  Argument argument(bool quantum) {
    const Token name = expect(Tok::Ident, quantum ? "qubit argument" : "bit");
    auto& regs = quantum ? qregs_ : cregs_;
    const auto it = regs.find(name.text);
    if (it == regs.end()) {
      throw QasmError(std::string(quantum ? "undeclared qreg '"
                                          : "undeclared creg '") +
                          name.text + "'",
                      name.line, name.column);
    }
    Argument arg{it->second, std::nullopt, name};
    if (peek_symbol("[")) {
      bump();
      const Token idx = cur_;
      const int i = expect_int("index");
      expect_symbol("]");
      if (i >= arg.reg.size) {
        throw QasmError("index " + std::to_string(i) + " out of range for '" +
                            name.text + "[" + std::to_string(arg.reg.size) +
                            "]'",
                        idx.line, idx.column);
      }
      arg.index = i;
    }
    return arg;
  }

  std::vector<Argument> argument_list() {
    std::vector<Argument> args{argument(true)};
    while (peek_symbol(",")) {
      bump();
      args.push_back(argument(true));
    }
    return args;
  }

  // Expands register arguments; all register arguments must share a size.
  std::vector<std::vector<int>> broadcast(const std::vector<Argument>& args,
                                          const Token& where) const {
    int width = 1;
    bool has_register = false;
    for (const auto& a : args) {
      if (!a.index) {
        if (has_register && a.reg.size != width) {
          throw QasmError("register size mismatch in broadcast", where.line,
                          where.column);
        }
        width = a.reg.size;
        has_register = true;
      }
    }
    std::vector<std::vector<int>> out;
    for (int k = 0; k < width; ++k) {
      std::vector<int> qubits;
      for (const auto& a : args) {
        qubits.push_back(a.reg.offset + (a.index ? *a.index : k));
      }
      out.push_back(std::move(qubits));
    }
    return out;
  }

  void gate(const Token& head) {
    const auto& table = gate_table();
    const auto it = table.find(head.text);
    if (it == table.end()) {
      fail("unsupported gate '" + head.text + "'");
    }
    bump();
    const GateKind kind = it->second;
    double angle = 0.0;
    if (kind == GateKind::RZ) {
      expect_symbol("(");
      angle = expression();
      expect_symbol(")");
    } else if (peek_symbol("(")) {
      fail("gate '" + head.text + "' takes no parameters");
    }
    const auto args = argument_list();
    expect_symbol(";");
    if (args.size() != gate_arity(kind)) {
      throw QasmError("gate '" + head.text + "' expects " +
                          std::to_string(gate_arity(kind)) + " operand(s)",
                      head.line, head.column);
    }
    for (auto& qubits : broadcast(args, head)) {
      pending_.emplace_back(Gate{kind, std::move(qubits), angle}, head);
    }
  }

  void measure(const Token& head) {
    const Argument q = argument(true);
    if (cur_.kind != Tok::Arrow) {
      fail("expected '->' in measure");
    }
    bump();
    const Argument c = argument(false);
    expect_symbol(";");
    if (q.index.has_value() != c.index.has_value() ||
        (!q.index && q.reg.size != c.reg.size)) {
      throw QasmError("measure operands do not match", head.line, head.column);
    }
    const int width = q.index ? 1 : q.reg.size;
    for (int k = 0; k < width; ++k) {
      const int qi = q.reg.offset + (q.index ? *q.index : k);
      const int ci = c.reg.offset + (c.index ? *c.index : k);
      pending_.emplace_back(Gate::measure(qi, ci), head);
    }
  }

  void barrier(const Token& head) {
    const auto args = argument_list();
    expect_symbol(";");
    std::vector<int> qubits;
    for (const auto& a : args) {
      if (a.index) {
        qubits.push_back(a.reg.offset + *a.index);
      } else {
        for (int k = 0; k < a.reg.size; ++k) {
          qubits.push_back(a.reg.offset + k);
        }
      }
    }
    pending_.emplace_back(Gate{GateKind::BARRIER, std::move(qubits)}, head);
  }

  // expr := term (('+'|'-') term)*, term := factor (('*'|'/') factor)*,
  // factor := unary ('^' factor)?, unary := '-' unary | atom
  double expression() {
    double v = term();
    while (peek_symbol("+") || peek_symbol("-")) {
      const bool plus = cur_.text == "+";
      bump();
      v = plus ? v + term() : v - term();
    }
    return v;
  }

  double term() {
    double v = factor();
    while (peek_symbol("*") || peek_symbol("/")) {
      const bool mul = cur_.text == "*";
      bump();
      v = mul ? v * factor() : v / factor();
    }
    return v;
  }

  double factor() {
    const double base = unary();
    if (peek_symbol("^")) {
      bump();
      return std::pow(base, factor());
    }
    return base;
  }

  double unary() {
    if (peek_symbol("-")) {
      bump();
      return -unary();
    }
    if (peek_symbol("+")) {
      bump();
      return unary();
    }
    if (peek_symbol("(")) {
      bump();
      const double v = expression();
      expect_symbol(")");
      return v;
    }
    if (peek_ident("pi")) {
      bump();
      return std::numbers::pi;
    }
    const Token t = expect(Tok::Number, "number");
    try {
      std::size_t used = 0;
      const double v = std::stod(t.text, &used);
      if (used != t.text.size()) {
        throw std::invalid_argument(t.text);
      }
      return v;
    } catch (const std::exception&) {
      throw QasmError("malformed number '" + t.text + "'", t.line, t.column);
    }
  }

  Lexer lexer_;
  Token cur_;
  std::unordered_map<std::string, Register> qregs_;
  std::unordered_map<std::string, Register> cregs_;
  int num_qubits_ = 0;
  int num_clbits_ = 0;
  std::vector<std::pair<Gate, Token>> pending_;
};

} // namespace

QuantumCircuit parse_qasm(std::string_view source) {
  return Parser(source).parse();
}

} // namespace dasqa
