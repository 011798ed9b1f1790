#include "piq/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace piq {

NcPoly NcPoly::variable(Variable i)
{
    if (i == 0)
        throw std::invalid_argument("variable indices start at 1");
    return monomial({i});
}

NcPoly NcPoly::constant(const Rational& c)
{
    return monomial({}, c);
}

NcPoly NcPoly::monomial(Word w, const Rational& c)
{
    NcPoly f;
    f.add_term(w, c);
    return f;
}

void NcPoly::add_term(const Word& w, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Rational NcPoly::coefficient(const Word& w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::set<Variable> NcPoly::variables() const
{
    std::set<Variable> out;
    for (const auto& [w, c] : terms_)
        out.insert(w.begin(), w.end());
    return out;
}

std::size_t NcPoly::degree() const
{
    return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

NcPoly& NcPoly::operator+=(const NcPoly& other)
{
    for (const auto& [w, c] : other.terms_)
        add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other)
{
    for (const auto& [w, c] : other.terms_)
        add_term(w, -c);
    return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b)
{
    NcPoly out;
    for (const auto& [u, c] : a.terms_)
        for (const auto& [v, d] : b.terms_) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_term(w, c * d);
        }
    return out;
}

NcPoly& NcPoly::operator*=(const NcPoly& other)
{
    return *this = *this * other;
}

NcPoly& NcPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms_)
        coeff *= c;
    return *this;
}

NcPoly NcPoly::operator-() const
{
    NcPoly out = *this;
    return out *= Rational(-1);
}

NcPoly standard_poly(int n)
{
    if (n < 1)
        throw std::invalid_argument("standard polynomial degree must be >= 1");
    if (n > 10)
        throw std::invalid_argument("St(" + std::to_string(n) +
                                    ") is too large to expand; evaluate it on Swan quivers instead");
    Word w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), Variable{1});
    NcPoly out;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                inversions += w[i] > w[j];
        out.add_term(w, inversions % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

NcPoly commutator(const NcPoly& f, const NcPoly& g)
{
    return f * g - g * f;
}

NcPoly u_poly(int n)
{
    if (n < 1)
        throw std::invalid_argument("u_n needs n >= 1");
    NcPoly out = NcPoly::constant(1);
    for (int i = 0; i < n; ++i) {
        auto a = static_cast<Variable>(2 * i + 1);
        out *= commutator(NcPoly::variable(a), NcPoly::variable(a + 1));
    }
    return out;
}

NcPoly shift_variables(const NcPoly& f, Variable offset)
{
    NcPoly out;
    for (const auto& [w, c] : f.terms()) {
        Word shifted = w;
        for (auto& v : shifted)
            v += offset;
        out.add_term(shifted, c);
    }
    return out;
}

NcPoly identify_variables(const NcPoly& f, Variable from, Variable to)
{
    NcPoly out;
    for (const auto& [w, c] : f.terms()) {
        Word renamed = w;
        std::replace(renamed.begin(), renamed.end(), from, to);
        out.add_term(renamed, c);
    }
    return out;
}

namespace {

bool linear_in(const NcPoly& f, const std::set<Variable>& vars)
{
    for (const auto& [w, c] : f.terms())
        for (Variable v : vars)
            if (std::count(w.begin(), w.end(), v) != 1)
                return false;
    return true;
}

}  // namespace

bool is_multilinear(const NcPoly& f)
{
    return linear_in(f, f.variables());
}

bool is_alternating_in(const NcPoly& f, const std::set<Variable>& vars)
{
    if (!linear_in(f, vars))
        throw std::invalid_argument("polynomial is not multilinear in the given variables");
    for (auto i = vars.begin(); i != vars.end(); ++i)
        for (auto j = std::next(i); j != vars.end(); ++j)
            if (!identify_variables(f, *j, *i).is_zero())
                return false;
    return true;
}

std::string to_string(const NcPoly& f)
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : f.terms()) {
        Rational mag = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        if (w.empty()) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1)
            out += mag.get_str() + "*";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i)
                out += '*';
            out += "x" + std::to_string(w[i]);
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    NcPoly parse()
    {
        NcPoly f = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    bool accept_word(std::string_view w)
    {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    unsigned long integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        if (pos_ - start > 9)
            fail("integer too large");
        return std::stoul(std::string(s_.substr(start, pos_ - start)));
    }

    NcPoly expr()
    {
        NcPoly f = term();
        while (true) {
            if (accept('+'))
                f += term();
            else if (accept('-'))
                f -= term();
            else
                return f;
        }
    }

    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        char c = s_[pos_];
        return c == 'x' || c == 'S' || c == 'u' || c == '(' || c == '[' || c == '*' ||
               std::isdigit(static_cast<unsigned char>(c));
    }

    NcPoly term()
    {
        bool negate = accept('-');
        NcPoly f = factor();
        while (starts_factor()) {
            accept('*');
            f *= factor();
        }
        return negate ? -f : f;
    }

    NcPoly factor()
    {
        NcPoly base = atom();
        if (accept('^')) {
            unsigned long k = integer();
            NcPoly out = NcPoly::constant(1);
            for (unsigned long i = 0; i < k; ++i)
                out *= base;
            return out;
        }
        return base;
    }

    NcPoly atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational num(static_cast<unsigned long>(integer()));
            if (accept('/')) {
                unsigned long den = integer();
                if (den == 0)
                    fail("zero denominator");
                num /= Rational(den);
            }
            return NcPoly::constant(num);
        }
        if (accept_word("St(")) {
            auto n = integer();
            expect(')');
            return standard_poly(static_cast<int>(n));
        }
        if (accept_word("u(")) {
            auto n = integer();
            expect(')');
            return u_poly(static_cast<int>(n));
        }
        if (accept('x')) {
            auto i = integer();
            if (i == 0)
                fail("variable indices start at 1");
            return NcPoly::variable(static_cast<Variable>(i));
        }
        if (accept('(')) {
            NcPoly f = expr();
            expect(')');
            return f;
        }
        if (accept('[')) {
            NcPoly f = expr();
            expect(',');
            NcPoly g = expr();
            expect(']');
            return commutator(f, g);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse_ncpoly(std::string_view text)
{
    return PolyParser(text).parse();
}

struct PolyEvaluator::Trie {
    struct Node {
        std::vector<std::pair<Variable, std::size_t>> children;
        Rational coefficient;
    };
    std::vector<Node> nodes{Node{}};
};

PolyEvaluator::PolyEvaluator(const NcPoly& f) : trie_(std::make_unique<Trie>())
{
    for (const auto& [w, c] : f.terms()) {
        std::size_t node = 0;
        for (Variable v : w) {
            arity_ = std::max(arity_, v);
            auto& children = trie_->nodes[node].children;
            auto it = std::find_if(children.begin(), children.end(), [&](const auto& e) { return e.first == v; });
            if (it != children.end()) {
                node = it->second;
                continue;
            }
            std::size_t child = trie_->nodes.size();
            trie_->nodes[node].children.emplace_back(v, child);
            trie_->nodes.emplace_back();
            node = child;
        }
        trie_->nodes[node].coefficient = c;
    }
}

PolyEvaluator::~PolyEvaluator() = default;
PolyEvaluator::PolyEvaluator(PolyEvaluator&&) noexcept = default;
PolyEvaluator& PolyEvaluator::operator=(PolyEvaluator&&) noexcept = default;

Element PolyEvaluator::operator()(const AlgebraHandle& algebra, std::span<const Element> args) const
{
    if (args.size() < arity_)
        throw std::invalid_argument("polynomial uses x" + std::to_string(arity_) + " but only " +
                                    std::to_string(args.size()) + " arguments were given");
    const auto& nodes = trie_->nodes;
    Element acc;
    if (nodes[0].coefficient != 0)
        acc = algebra.scale(algebra.unit(), nodes[0].coefficient);

    auto rec = [&](auto&& self, std::size_t node, const Element& running) -> void {
        for (const auto& [v, child] : nodes[node].children) {
            Element next = algebra.multiply(running, args[v - 1]);
            if (next.is_zero())
                continue;
            if (nodes[child].coefficient != 0)
                acc = algebra.add(acc, algebra.scale(next, nodes[child].coefficient));
            self(self, child, next);
        }
    };
    for (const auto& [v, child] : nodes[0].children) {
        const Element& first = args[v - 1];
        if (first.is_zero())
            continue;
        if (nodes[child].coefficient != 0)
            acc = algebra.add(acc, algebra.scale(first, nodes[child].coefficient));
        rec(rec, child, first);
    }
    return acc;
}

Element PolyEvaluator::operator()(const AlgebraHandle& algebra, std::span<const Path> args) const
{
    if (args.size() < arity_)
        throw std::invalid_argument("polynomial uses x" + std::to_string(arity_) + " but only " +
                                    std::to_string(args.size()) + " arguments were given");
    const auto& nodes = trie_->nodes;
    Element acc;
    if (nodes[0].coefficient != 0)
        acc = algebra.scale(algebra.unit(), nodes[0].coefficient);

    auto rec = [&](auto&& self, std::size_t node, const Path& running) -> void {
        for (const auto& [v, child] : nodes[node].children) {
            auto next = algebra.multiply(running, args[v - 1]);
            if (!next)
                continue;
            if (nodes[child].coefficient != 0)
                algebra.accumulate(acc, *next, nodes[child].coefficient);
            self(self, child, *next);
        }
    };
    for (const auto& [v, child] : nodes[0].children) {
        const Path& first = args[v - 1];
        if (nodes[child].coefficient != 0)
            algebra.accumulate(acc, first, nodes[child].coefficient);
        rec(rec, child, first);
    }
    return acc;
}

Element evaluate(const NcPoly& f, const AlgebraHandle& algebra, std::span<const Element> args)
{
    return PolyEvaluator(f)(algebra, args);
}

Element evaluate(const NcPoly& f, const AlgebraHandle& algebra, const std::map<Variable, Element>& assignment)
{
    Variable arity = 0;
    for (Variable v : f.variables())
        arity = std::max(arity, v);
    std::vector<Element> args(arity);
    for (Variable v : f.variables()) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw std::invalid_argument("no value assigned to x" + std::to_string(v));
        args[v - 1] = it->second;
    }
    return evaluate(f, algebra, args);
}

}  // namespace piq
