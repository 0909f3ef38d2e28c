#include "tracemon/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "tracemon/trace.hpp"

namespace tracemon {

Formula Formula::tt()
{
    static const Formula t{std::make_shared<const Node>(Node{Kind::True, {}, {}})};
    return t;
}

Formula Formula::negation(Formula f)
{
    return Formula{std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(f)}})};
}

Formula Formula::disjunction(Formula l, Formula r)
{
    return Formula{std::make_shared<const Node>(Node{Kind::Or, {}, {std::move(l), std::move(r)}})};
}

Formula Formula::next(std::string letter, Formula f)
{
    return Formula{std::make_shared<const Node>(Node{Kind::Next, std::move(letter), {std::move(f)}})};
}

Formula Formula::until(Formula l, Formula r)
{
    return Formula{std::make_shared<const Node>(Node{Kind::Until, {}, {std::move(l), std::move(r)}})};
}

Formula Formula::ff() { return negation(tt()); }

Formula Formula::conjunction(Formula l, Formula r)
{
    return negation(disjunction(negation(std::move(l)), negation(std::move(r))));
}

Formula Formula::eventually(Formula f) { return until(tt(), std::move(f)); }

Formula Formula::globally(Formula f) { return negation(until(tt(), negation(std::move(f)))); }

const Formula& Formula::operand() const
{
    if (kind() != Kind::Not && kind() != Kind::Next)
        throw std::logic_error("formula has no single operand");
    return node_->kids[0];
}

const Formula& Formula::left() const
{
    if (kind() != Kind::Or && kind() != Kind::Until)
        throw std::logic_error("formula is not binary");
    return node_->kids[0];
}

const Formula& Formula::right() const
{
    if (kind() != Kind::Or && kind() != Kind::Until)
        throw std::logic_error("formula is not binary");
    return node_->kids[1];
}

const std::string& Formula::letter() const
{
    if (kind() != Kind::Next)
        throw std::logic_error("formula is not a next formula");
    return node_->letter;
}

std::size_t Formula::size() const
{
    std::size_t n = 1;
    for (const auto& k : node_->kids)
        n += k.size();
    return n;
}

bool operator==(const Formula& a, const Formula& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.node_->letter != b.node_->letter)
        return false;
    return a.node_->kids == b.node_->kids;
}

FormulaSyntaxError::FormulaSyntaxError(const std::string& message, std::size_t position)
    : InputError("syntax error at position " + std::to_string(position) + ": " + message), position_(position)
{
}

namespace {

struct Token {
    enum class Type { Ident, LAngle, RAngle, LParen, RParen, Bang, Amp, Bar, End } type;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_start = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token::Type t;
        switch (c) {
        case '<': t = Token::Type::LAngle; break;
        case '>': t = Token::Type::RAngle; break;
        case '(': t = Token::Type::LParen; break;
        case ')': t = Token::Type::RParen; break;
        case '!': t = Token::Type::Bang; break;
        case '&': t = Token::Type::Amp; break;
        case '|': t = Token::Type::Bar; break;
        default:
            if (ident_start(c)) {
                const std::size_t start = i;
                while (i < s.size() && ident_char(s[i]))
                    ++i;
                out.push_back({Token::Type::Ident, std::string(s.substr(start, i - start)), start});
                continue;
            }
            throw FormulaSyntaxError(std::string("unexpected character '") + c + "'", i);
        }
        out.push_back({t, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::Type::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Formula parse()
    {
        if (peek().type == Token::Type::End)
            throw FormulaSyntaxError("empty formula", 0);
        Formula f = parse_or();
        if (peek().type != Token::Type::End)
            throw FormulaSyntaxError("unexpected '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool is_keyword(const Token& t, std::string_view kw) const { return t.type == Token::Type::Ident && t.text == kw; }

    Formula parse_or()
    {
        Formula f = parse_and();
        while (peek().type == Token::Type::Bar) {
            take();
            f = Formula::disjunction(f, parse_and());
        }
        return f;
    }

    Formula parse_and()
    {
        Formula f = parse_until();
        while (peek().type == Token::Type::Amp) {
            take();
            f = Formula::conjunction(f, parse_until());
        }
        return f;
    }

    Formula parse_until()
    {
        Formula l = parse_unary();
        if (is_keyword(peek(), "U")) {
            take();
            return Formula::until(l, parse_until());
        }
        return l;
    }

    Formula parse_unary()
    {
        const Token& t = peek();
        switch (t.type) {
        case Token::Type::Bang:
            take();
            return Formula::negation(parse_unary());
        case Token::Type::LAngle: {
            take();
            const Token& name = take();
            if (name.type != Token::Type::Ident)
                throw FormulaSyntaxError("expected letter name after '<'", name.pos);
            if (take().type != Token::Type::RAngle)
                throw FormulaSyntaxError("expected '>'", toks_[pos_ - 1].pos);
            return Formula::next(name.text, parse_unary());
        }
        case Token::Type::LParen: {
            take();
            Formula f = parse_or();
            if (peek().type != Token::Type::RParen)
                throw FormulaSyntaxError("expected ')'", peek().pos);
            take();
            return f;
        }
        case Token::Type::Ident:
            if (t.text == "tt") {
                take();
                return Formula::tt();
            }
            if (t.text == "ff") {
                take();
                return Formula::ff();
            }
            if (t.text == "F") {
                take();
                return Formula::eventually(parse_unary());
            }
            if (t.text == "G") {
                take();
                return Formula::globally(parse_unary());
            }
            throw FormulaSyntaxError("unexpected identifier '" + t.text + "'", t.pos);
        case Token::Type::End:
            throw FormulaSyntaxError("unexpected end of input", t.pos);
        default:
            throw FormulaSyntaxError("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

void collect_letters(const Formula& f, std::set<std::string>& out)
{
    switch (f.kind()) {
    case Formula::Kind::True:
        return;
    case Formula::Kind::Not:
        collect_letters(f.operand(), out);
        return;
    case Formula::Kind::Next:
        out.insert(f.letter());
        collect_letters(f.operand(), out);
        return;
    case Formula::Kind::Or:
    case Formula::Kind::Until:
        collect_letters(f.left(), out);
        collect_letters(f.right(), out);
        return;
    }
}

} // namespace

Formula parse_formula(std::string_view text)
{
    return Parser(tokenize(text)).parse();
}

std::string render(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
        return "tt";
    case Formula::Kind::Not:
        return "!" + render(f.operand());
    case Formula::Kind::Next:
        return "<" + f.letter() + ">" + render(f.operand());
    case Formula::Kind::Or:
        return "(" + render(f.left()) + " | " + render(f.right()) + ")";
    case Formula::Kind::Until:
        return "(" + render(f.left()) + " U " + render(f.right()) + ")";
    }
    return {};
}

std::vector<std::string> validate_letters(const Formula& f, const TraceAlphabet& alpha)
{
    std::set<std::string> used;
    collect_letters(f, used);
    std::vector<std::string> unknown;
    for (const auto& l : used)
        if (!alpha.find(l))
            unknown.push_back(l);
    return unknown;
}

void require_letters(const Formula& f, const TraceAlphabet& alpha)
{
    const auto unknown = validate_letters(f, alpha);
    if (!unknown.empty())
        throw InputError("unknown letter " + unknown.front());
}

std::size_t until_nesting_depth(const Formula& f)
{
    switch (f.kind()) {
    case Formula::Kind::True:
        return 0;
    case Formula::Kind::Not:
    case Formula::Kind::Next:
        return until_nesting_depth(f.operand());
    case Formula::Kind::Or:
        return std::max(until_nesting_depth(f.left()), until_nesting_depth(f.right()));
    case Formula::Kind::Until:
        return 1 + std::max(until_nesting_depth(f.left()), until_nesting_depth(f.right()));
    }
    return 0;
}

} // namespace tracemon
