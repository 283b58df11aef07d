#include "expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "errors.hpp"

namespace kipp {

namespace {

struct Token {
    enum class Kind { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
        size_t start = i_;
        if (i_ >= text_.size()) {
            tok_ = {Token::Kind::End, "", start};
            return;
        }
        char c = text_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            tok_ = {Token::Kind::Int, text_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            tok_ = {Token::Kind::Ident, text_.substr(i_, j - i_), start};
            i_ = j;
            return;
        }
        ++i_;
        switch (c) {
            case '+': tok_ = {Token::Kind::Plus, "+", start}; return;
            case '-': tok_ = {Token::Kind::Minus, "-", start}; return;
            case '*': tok_ = {Token::Kind::Star, "*", start}; return;
            case '/': tok_ = {Token::Kind::Slash, "/", start}; return;
            case '^': tok_ = {Token::Kind::Caret, "^", start}; return;
            case '(': tok_ = {Token::Kind::LParen, "(", start}; return;
            case ')': tok_ = {Token::Kind::RParen, ")", start}; return;
            default: throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }

    const std::string& text_;
    size_t i_ = 0;
    Token tok_{Token::Kind::End, "", 0};
};

ExprPtr make(ExprNode::Kind k) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    return n;
}

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : lex_(text), vars_(vars) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End) throw ParseError("unexpected trailing input", t.pos);
        return e;
    }

private:
    ExprPtr expr() {
        ExprPtr lhs = term();
        while (lex_.peek().kind == Token::Kind::Plus || lex_.peek().kind == Token::Kind::Minus) {
            Token op = lex_.take();
            ExprPtr n = make(op.kind == Token::Kind::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub);
            n->lhs = std::move(lhs);
            n->rhs = term();
            lhs = std::move(n);
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        while (lex_.peek().kind == Token::Kind::Star || lex_.peek().kind == Token::Kind::Slash) {
            Token op = lex_.take();
            ExprPtr n = make(op.kind == Token::Kind::Star ? ExprNode::Kind::Mul : ExprNode::Kind::Div);
            n->lhs = std::move(lhs);
            n->rhs = factor();
            lhs = std::move(n);
        }
        return lhs;
    }

    ExprPtr factor() {
        if (lex_.peek().kind == Token::Kind::Minus) {
            lex_.take();
            ExprPtr n = make(ExprNode::Kind::Negate);
            n->lhs = factor();
            return n;
        }
        ExprPtr b = base();
        if (lex_.peek().kind == Token::Kind::Caret) {
            lex_.take();
            ExprPtr n = make(ExprNode::Kind::Pow);
            n->lhs = std::move(b);
            n->exponent = exponent_literal();
            return n;
        }
        return b;
    }

    // Integer exponent: [-]int or '(' [-]int ['/' int] ')'. A fractional
    // parenthesized exponent is rejected specifically.
    long exponent_literal() {
        bool paren = false;
        if (lex_.peek().kind == Token::Kind::LParen) {
            paren = true;
            lex_.take();
        }
        bool neg = false;
        if (lex_.peek().kind == Token::Kind::Minus) {
            neg = true;
            lex_.take();
        }
        Token t = lex_.peek();
        if (t.kind != Token::Kind::Int) throw ParseError("expected integer exponent", t.pos);
        lex_.take();
        long value = parse_long(t);
        if (paren) {
            if (lex_.peek().kind == Token::Kind::Slash) {
                Token slash = lex_.take();
                Token d = lex_.peek();
                if (d.kind != Token::Kind::Int) throw ParseError("expected integer exponent", d.pos);
                lex_.take();
                long den = parse_long(d);
                if (den == 0 || value % den != 0)
                    throw ParseError("non-integer exponent", slash.pos);
                value /= den;
            }
            expect(Token::Kind::RParen, "expected ')'");
        }
        return neg ? -value : value;
    }

    ExprPtr base() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Token::Kind::Int: {
                lex_.take();
                ExprPtr n = make(ExprNode::Kind::Literal);
                // rational := int ('/' int)? at the literal level
                if (lex_.peek().kind == Token::Kind::Slash) {
                    // Only consume the slash when an integer follows.
                    Lexer probe = lex_;
                    probe.take();
                    if (probe.peek().kind == Token::Kind::Int) {
                        lex_.take();
                        Token d = lex_.take();
                        if (BigInt(d.text).is_zero())
                            throw ParseError("zero denominator in rational literal", d.pos);
                        n->literal = Rational(BigInt(t.text), BigInt(d.text));
                        return n;
                    }
                }
                n->literal = Rational(BigInt(t.text));
                return n;
            }
            case Token::Kind::Ident: {
                lex_.take();
                if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end())
                    throw ParseError("unknown variable '" + t.text + "'", t.pos);
                ExprPtr n = make(ExprNode::Kind::Variable);
                n->name = t.text;
                return n;
            }
            case Token::Kind::LParen: {
                lex_.take();
                ExprPtr e = expr();
                expect(Token::Kind::RParen, "expected ')'");
                return e;
            }
            case Token::Kind::End: throw ParseError("unexpected end of input", t.pos);
            default: throw ParseError("unexpected token '" + t.text + "'", t.pos);
        }
    }

    void expect(Token::Kind k, const std::string& msg) {
        const Token& t = lex_.peek();
        if (t.kind != k) throw ParseError(msg, t.pos);
        lex_.take();
    }

    static long parse_long(const Token& t) {
        try {
            return std::stol(t.text);
        } catch (const std::exception&) {
            throw ParseError("exponent out of range", t.pos);
        }
    }

    Lexer lex_;
    const std::vector<std::string>& vars_;
};

int precedence(ExprNode::Kind k) {
    switch (k) {
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub: return 1;
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div: return 2;
        case ExprNode::Kind::Negate: return 3;
        case ExprNode::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_node(const ExprNode* n, std::ostringstream& os) {
    auto child = [&](const ExprNode* c, bool parens) {
        if (parens) os << "(";
        print_node(c, os);
        if (parens) os << ")";
    };
    switch (n->kind) {
        case ExprNode::Kind::Literal: os << n->literal.str(); break;
        case ExprNode::Kind::Variable: os << n->name; break;
        case ExprNode::Kind::Negate:
            os << "-";
            child(n->lhs.get(), precedence(n->lhs->kind) < precedence(ExprNode::Kind::Negate));
            break;
        case ExprNode::Kind::Add:
        case ExprNode::Kind::Sub:
            child(n->lhs.get(), precedence(n->lhs->kind) < 1);
            os << (n->kind == ExprNode::Kind::Add ? " + " : " - ");
            child(n->rhs.get(), precedence(n->rhs->kind) <= 1);
            break;
        case ExprNode::Kind::Mul:
        case ExprNode::Kind::Div:
            child(n->lhs.get(), precedence(n->lhs->kind) < 2);
            os << (n->kind == ExprNode::Kind::Mul ? "*" : "/");
            child(n->rhs.get(), precedence(n->rhs->kind) <= 2);
            break;
        case ExprNode::Kind::Pow:
            // A literal base keeps its own '/' out of the exponent's way.
            child(n->lhs.get(), precedence(n->lhs->kind) < 4 ||
                                    (n->lhs->kind == ExprNode::Kind::Literal &&
                                     !n->lhs->literal.is_integer()));
            os << "^";
            if (n->exponent < 0)
                os << "(" << n->exponent << ")";
            else
                os << n->exponent;
            break;
    }
}

RationalFunction fold(const ExprNode* n, const std::vector<std::string>& vars) {
    switch (n->kind) {
        case ExprNode::Kind::Literal: return RationalFunction(n->literal, vars);
        case ExprNode::Kind::Variable: return RationalFunction::variable(n->name, vars);
        case ExprNode::Kind::Negate: return -fold(n->lhs.get(), vars);
        case ExprNode::Kind::Add: return fold(n->lhs.get(), vars) + fold(n->rhs.get(), vars);
        case ExprNode::Kind::Sub: return fold(n->lhs.get(), vars) - fold(n->rhs.get(), vars);
        case ExprNode::Kind::Mul: return fold(n->lhs.get(), vars) * fold(n->rhs.get(), vars);
        case ExprNode::Kind::Div: {
            RationalFunction d = fold(n->rhs.get(), vars);
            if (d.is_zero()) throw Error("division by an identically zero expression");
            return fold(n->lhs.get(), vars) / d;
        }
        case ExprNode::Kind::Pow: {
            RationalFunction b = fold(n->lhs.get(), vars);
            if (b.is_zero() && n->exponent < 0)
                throw Error("negative power of an identically zero expression");
            return RationalFunction::pow(b, n->exponent);
        }
    }
    throw Error("corrupt expression tree");
}

}  // namespace

ExprAst parse_expression(const std::string& text, const std::vector<std::string>& variables) {
    if (text.empty() || text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw ParseError("empty expression", 0);
    Parser p(text, variables);
    return ExprAst{p.parse(), variables};
}

std::string print_expression(const ExprAst& ast) {
    std::ostringstream os;
    print_node(ast.root.get(), os);
    return os.str();
}

RationalFunction to_rational_function(const ExprAst& ast) {
    return fold(ast.root.get(), ast.variables);
}

}  // namespace kipp
