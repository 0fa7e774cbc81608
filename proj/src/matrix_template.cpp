#include "ptkit/matrix_template.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace ptkit {

namespace {

using Kind = Expression::Kind;
using Node = Expression::Node;
using NodePtr = Expression::NodePtr;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

// Parser recursion cap; the AST depth invariant (<= kMaxExpressionDepth) is
// checked after the parse so deeply right-nested input cannot blow the stack.
constexpr std::size_t kMaxParseRecursion = 256;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_reserved(const std::string& name) { return name == "i" || name == "sqrt"; }

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    Expression parse() {
        Expression e = parse_expr(0);
        skip_ws();
        if (pos_ < src_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
        if (e.empty()) throw ParseError("empty expression", 0);
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) {
            throw ParseError(std::string("expected '") + c + "' " + what, pos_);
        }
    }

    void guard(std::size_t depth) {
        if (depth > kMaxParseRecursion) {
            throw ParseError("expression nested too deeply", pos_);
        }
    }

    Expression parse_expr(std::size_t depth) {
        guard(depth);
        Expression lhs = parse_term(depth + 1);
        for (;;) {
            if (accept('+')) {
                lhs = Expression::add(std::move(lhs), parse_term(depth + 1));
            } else if (accept('-')) {
                lhs = Expression::sub(std::move(lhs), parse_term(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    Expression parse_term(std::size_t depth) {
        guard(depth);
        Expression lhs = parse_factor(depth + 1);
        for (;;) {
            if (accept('*')) {
                lhs = Expression::mul(std::move(lhs), parse_factor(depth + 1));
            } else if (accept('/')) {
                lhs = Expression::div(std::move(lhs), parse_factor(depth + 1));
            } else {
                return lhs;
            }
        }
    }

    Expression parse_factor(std::size_t depth) {
        guard(depth);
        if (accept('-')) {
            return Expression::negate(parse_factor(depth + 1));
        }
        return parse_primary(depth + 1);
    }

    Expression parse_primary(std::size_t depth) {
        guard(depth);
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError("unexpected end of expression", pos_);
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Expression::literal(parse_number());
        }
        if (c == '(') {
            ++pos_;
            Expression inner = parse_expr(depth + 1);
            expect(')', "to close parenthesized expression");
            return inner;
        }
        if (ident_start(c)) {
            const std::string name = parse_ident();
            if (name == "i") return Expression::imag_unit();
            if (name == "sqrt") {
                expect('(', "after sqrt");
                Expression arg = parse_expr(depth + 1);
                expect(')', "to close sqrt argument");
                return Expression::sqrt(std::move(arg));
            }
            return Expression::param(name);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    double parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' belongs to a following identifier, not this number
            }
        }
        const std::string text = src_.substr(start, pos_ - start);
        try {
            return std::stod(text);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + text + "'", start);
        }
    }

    std::string parse_ident() {
        const std::size_t start = pos_;
        ++pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
        return src_.substr(start, pos_ - start);
    }

    const std::string& src_;
    std::size_t pos_ = 0;
};

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub: return 1;
        case Kind::Mul:
        case Kind::Div: return 2;
        case Kind::Negate: return 3;
        default: return 4;
    }
}

std::string literal_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void render(const Node& n, std::string& out) {
    const int prec = precedence(n.kind);
    const auto child = [&](const Node& c, bool needs_parens) {
        if (needs_parens) out += '(';
        render(c, out);
        if (needs_parens) out += ')';
    };
    switch (n.kind) {
        case Kind::Literal: out += literal_text(n.literal); return;
        case Kind::ImagUnit: out += 'i'; return;
        case Kind::Param: out += n.param; return;
        case Kind::Sqrt:
            out += "sqrt(";
            render(*n.lhs, out);
            out += ')';
            return;
        case Kind::Negate:
            out += '-';
            child(*n.lhs, precedence(n.lhs->kind) < prec);
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div: {
            child(*n.lhs, precedence(n.lhs->kind) < prec);
            switch (n.kind) {
                case Kind::Add: out += " + "; break;
                case Kind::Sub: out += " - "; break;
                case Kind::Mul: out += " * "; break;
                default: out += " / "; break;
            }
            // Equal precedence on the right needs parentheses: the grammar is
            // left-associative, so "a + (b + c)" must not flatten.
            child(*n.rhs, precedence(n.rhs->kind) <= prec);
            return;
        }
    }
}

Complex eval_node(const Node& n, const std::map<std::string, double>& assignment) {
    switch (n.kind) {
        case Kind::Literal: return Complex(n.literal, 0.0);
        case Kind::ImagUnit: return Complex(0.0, 1.0);
        case Kind::Param: {
            const auto it = assignment.find(n.param);
            if (it == assignment.end()) {
                throw EvalError("missing parameter '" + n.param + "'");
            }
            return Complex(it->second, 0.0);
        }
        case Kind::Negate: return -eval_node(*n.lhs, assignment);
        case Kind::Add: return eval_node(*n.lhs, assignment) + eval_node(*n.rhs, assignment);
        case Kind::Sub: return eval_node(*n.lhs, assignment) - eval_node(*n.rhs, assignment);
        case Kind::Mul: return eval_node(*n.lhs, assignment) * eval_node(*n.rhs, assignment);
        case Kind::Div: {
            const Complex denom = eval_node(*n.rhs, assignment);
            if (std::abs(denom) == 0.0) throw EvalError("division by zero");
            return eval_node(*n.lhs, assignment) / denom;
        }
        case Kind::Sqrt: {
            Complex arg = eval_node(*n.lhs, assignment);
            if (arg.imag() == 0.0) arg = Complex(arg.real(), 0.0);  // pin the branch cut
            return std::sqrt(arg);
        }
    }
    throw EvalError("corrupt expression node");
}

}  // namespace

Expression Expression::literal(double v) {
    return Expression(make_node({Kind::Literal, v, {}, nullptr, nullptr}));
}
Expression Expression::imag_unit() {
    return Expression(make_node({Kind::ImagUnit, 0.0, {}, nullptr, nullptr}));
}
Expression Expression::param(std::string name) {
    return Expression(make_node({Kind::Param, 0.0, std::move(name), nullptr, nullptr}));
}
Expression Expression::negate(Expression e) {
    return Expression(make_node({Kind::Negate, 0.0, {}, e.root_, nullptr}));
}
Expression Expression::add(Expression l, Expression r) {
    return Expression(make_node({Kind::Add, 0.0, {}, l.root_, r.root_}));
}
Expression Expression::sub(Expression l, Expression r) {
    return Expression(make_node({Kind::Sub, 0.0, {}, l.root_, r.root_}));
}
Expression Expression::mul(Expression l, Expression r) {
    return Expression(make_node({Kind::Mul, 0.0, {}, l.root_, r.root_}));
}
Expression Expression::div(Expression l, Expression r) {
    return Expression(make_node({Kind::Div, 0.0, {}, l.root_, r.root_}));
}
Expression Expression::sqrt(Expression e) {
    return Expression(make_node({Kind::Sqrt, 0.0, {}, e.root_, nullptr}));
}

Expression parse_expression(const std::string& src) {
    Expression e = Parser(src).parse();
    if (expression_depth(e) > kMaxExpressionDepth) {
        throw ParseError("expression too deep (depth limit " +
                             std::to_string(kMaxExpressionDepth) + ")",
                         0);
    }
    return e;
}

Complex evaluate(const Expression& e, const std::map<std::string, double>& assignment) {
    if (e.empty()) throw EvalError("empty expression");
    return eval_node(e.root(), assignment);
}

std::string to_string(const Expression& e) {
    if (e.empty()) return {};
    std::string out;
    render(e.root(), out);
    return out;
}

bool structurally_equal(const Expression& a, const Expression& b) {
    struct Cmp {
        static bool eq(const Node* x, const Node* y) {
            if (x == y) return true;
            if (x == nullptr || y == nullptr) return false;
            if (x->kind != y->kind) return false;
            switch (x->kind) {
                case Kind::Literal: return x->literal == y->literal;
                case Kind::ImagUnit: return true;
                case Kind::Param: return x->param == y->param;
                default: return eq(x->lhs.get(), y->lhs.get()) && eq(x->rhs.get(), y->rhs.get());
            }
        }
    };
    const Node* ra = a.empty() ? nullptr : &a.root();
    const Node* rb = b.empty() ? nullptr : &b.root();
    return Cmp::eq(ra, rb);
}

std::size_t expression_depth(const Expression& e) {
    if (e.empty()) return 0;
    std::size_t max_depth = 0;
    std::vector<std::pair<const Node*, std::size_t>> stack{{&e.root(), 1}};
    while (!stack.empty()) {
        auto [node, depth] = stack.back();
        stack.pop_back();
        max_depth = std::max(max_depth, depth);
        if (node->lhs) stack.emplace_back(node->lhs.get(), depth + 1);
        if (node->rhs) stack.emplace_back(node->rhs.get(), depth + 1);
    }
    return max_depth;
}

std::vector<std::string> collect_parameters(const Expression& e) {
    std::vector<std::string> params;
    if (e.empty()) return params;
    std::vector<const Node*> stack{&e.root()};
    while (!stack.empty()) {
        const Node* node = stack.back();
        stack.pop_back();
        if (node->kind == Kind::Param &&
            std::find(params.begin(), params.end(), node->param) == params.end()) {
            params.push_back(node->param);
        }
        // push rhs first so lhs parameters are discovered first
        if (node->rhs) stack.push_back(node->rhs.get());
        if (node->lhs) stack.push_back(node->lhs.get());
    }
    return params;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool valid_identifier(const std::string& s) {
    if (s.empty() || !ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), ident_char);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + 1;
    }
}

// (1-based line number, content with comments stripped and whitespace trimmed)
std::vector<std::pair<std::size_t, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<std::size_t, std::string>> lines;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string content = trim(raw);
        if (!content.empty()) lines.emplace_back(line_no, content);
    }
    return lines;
}

std::string header_value(const std::pair<std::size_t, std::string>& line, const char* key) {
    const std::string prefix = std::string(key) + ":";
    if (line.second.rfind(prefix, 0) != 0) {
        throw TemplateFormatError(
            "line " + std::to_string(line.first) + ": expected '" + key + ": ...'", line.first);
    }
    return trim(line.second.substr(prefix.size()));
}

}  // namespace

HamiltonianTemplate parse_template(const std::string& text) {
    const auto lines = logical_lines(text);
    if (lines.size() < 3) {
        throw TemplateFormatError("template must declare name, params, and dim", 0);
    }

    HamiltonianTemplate t;
    t.name = header_value(lines[0], "name");
    if (t.name.empty()) {
        throw TemplateFormatError("line " + std::to_string(lines[0].first) + ": empty name",
                                  lines[0].first);
    }

    const std::string params_text = header_value(lines[1], "params");
    for (const std::string& piece : split(params_text, ',')) {
        const std::string p = trim(piece);
        if (!valid_identifier(p)) {
            throw TemplateFormatError("line " + std::to_string(lines[1].first) +
                                          ": invalid parameter name '" + p + "'",
                                      lines[1].first);
        }
        if (is_reserved(p)) {
            throw TemplateFormatError("line " + std::to_string(lines[1].first) + ": '" + p +
                                          "' is reserved and cannot be a parameter",
                                      lines[1].first);
        }
        if (std::find(t.params.begin(), t.params.end(), p) != t.params.end()) {
            throw TemplateFormatError("line " + std::to_string(lines[1].first) +
                                          ": duplicate parameter '" + p + "'",
                                      lines[1].first);
        }
        t.params.push_back(p);
    }

    const std::string dim_text = header_value(lines[2], "dim");
    std::size_t parsed_chars = 0;
    long dim_value = -1;
    try {
        dim_value = std::stol(dim_text, &parsed_chars);
    } catch (const std::exception&) {
        parsed_chars = 0;
    }
    if (parsed_chars != dim_text.size() || dim_value < 2 || dim_value > 8) {
        throw TemplateFormatError("line " + std::to_string(lines[2].first) +
                                      ": dim must be an integer between 2 and 8",
                                  lines[2].first);
    }
    t.dim = static_cast<std::size_t>(dim_value);

    const std::size_t expected_rows = t.dim;
    if (lines.size() < 3 + expected_rows) {
        throw TemplateFormatError("missing matrix rows: got " + std::to_string(lines.size() - 3) +
                                      ", expected " + std::to_string(expected_rows),
                                  lines.back().first);
    }
    if (lines.size() > 3 + expected_rows) {
        const auto& extra = lines[3 + expected_rows];
        throw TemplateFormatError(
            "line " + std::to_string(extra.first) + ": unexpected content after matrix rows",
            extra.first);
    }

    t.entries.reserve(t.dim * t.dim);
    for (std::size_t r = 0; r < expected_rows; ++r) {
        const auto& [line_no, content] = lines[3 + r];
        const std::vector<std::string> fields = split(content, '|');
        if (fields.size() != t.dim) {
            throw TemplateFormatError("line " + std::to_string(line_no) +
                                          ": non-square matrix: row has " +
                                          std::to_string(fields.size()) + " entries, expected " +
                                          std::to_string(t.dim),
                                      line_no);
        }
        for (std::size_t c = 0; c < t.dim; ++c) {
            Expression e;
            try {
                e = parse_expression(trim(fields[c]));
            } catch (const ParseError& pe) {
                throw TemplateFormatError("line " + std::to_string(line_no) + ", entry (" +
                                              std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                              "): " + pe.what() + " (offset " +
                                              std::to_string(pe.offset) + ")",
                                          line_no);
            }
            for (const std::string& used : collect_parameters(e)) {
                if (std::find(t.params.begin(), t.params.end(), used) == t.params.end()) {
                    throw TemplateFormatError("line " + std::to_string(line_no) +
                                                  ": undeclared parameter '" + used +
                                                  "' in entry (" + std::to_string(r + 1) + "," +
                                                  std::to_string(c + 1) + ")",
                                              line_no);
                }
            }
            t.entries.push_back(std::move(e));
        }
    }
    return t;
}

HamiltonianTemplate load_template_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open template file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_template(buf.str());
}

DenseMatrix instantiate(const HamiltonianTemplate& t,
                        const std::map<std::string, double>& assignment) {
    for (const std::string& p : t.params) {
        if (assignment.find(p) == assignment.end()) {
            throw EvalError("missing parameter '" + p + "'");
        }
    }
    std::vector<Complex> values;
    values.reserve(t.dim * t.dim);
    for (std::size_t r = 0; r < t.dim; ++r) {
        for (std::size_t c = 0; c < t.dim; ++c) {
            const std::string where =
                "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
            Complex v;
            try {
                v = evaluate(t.entries[r * t.dim + c], assignment);
            } catch (const EvalError& e) {
                throw EvalError(where + ": " + e.what());
            }
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw EvalError(where + ": non-finite value");
            }
            values.push_back(v);
        }
    }
    return DenseMatrix(t.dim, t.dim, std::move(values));
}

}  // namespace ptkit
