#include "piq/path_algebra.hpp"

#include <algorithm>

#include "rewriting.hpp"

namespace piq {

namespace {

bool is_prime(std::uint64_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

}  // namespace

Field Field::prime(std::uint64_t p)
{
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
        throw std::invalid_argument("field characteristic must be a prime below 2^31, got " + std::to_string(p));
    return Field(p);
}

std::string Field::name() const
{
    return p_ == 0 ? "Q" : "F_" + std::to_string(p_);
}

Rational Field::reduce(const Rational& x) const
{
    if (p_ == 0)
        return x;
    mpz_class p(static_cast<unsigned long>(p_));
    mpz_class num = x.get_num() % p;
    if (num < 0)
        num += p;
    mpz_class den = x.get_den() % p;
    if (den == 0)
        throw std::domain_error("denominator vanishes in " + name());
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    mpz_class r = (num * inv) % p;
    return Rational(r);
}

TruncationError::TruncationError(Path left, Path right, std::size_t length, std::size_t limit)
    : std::runtime_error("product of length " + std::to_string(length) + " exceeds truncation length " +
                         std::to_string(limit)),
      left_(std::move(left)), right_(std::move(right))
{
}

Rational Element::coefficient(const Path& p) const
{
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Path> Element::as_basis_path() const
{
    if (terms_.size() != 1 || terms_.begin()->second != 1)
        return std::nullopt;
    return terms_.begin()->first;
}

AlgebraHandle::AlgebraHandle(Quiver quiver, std::vector<Relation> relations, std::size_t truncation, Field field)
    : quiver_(std::move(quiver)), relations_(std::move(relations)), truncation_(truncation), field_(field)
{
    if (truncation_ == 0)
        throw std::invalid_argument("truncation length must be positive");
    check_relations();

    std::vector<detail::RewriteSystem::Rule> rules;
    for (const auto& r : relations_) {
        auto lhs = std::vector<Arrow>(r.lhs.arrows().begin(), r.lhs.arrows().end());
        if (r.kind == Relation::Kind::monomial) {
            rules.push_back({std::move(lhs), std::nullopt});
            continue;
        }
        auto rhs = std::vector<Arrow>(r.rhs->arrows().begin(), r.rhs->arrows().end());
        if (lhs < rhs)
            std::swap(lhs, rhs);
        rules.push_back({std::move(lhs), std::move(rhs)});
    }
    auto rs = std::make_shared<detail::RewriteSystem>(quiver_.arrow_count(), std::move(rules));
    if (rs->has_binomials()) {
        if (auto bad = rs->find_non_confluent(quiver_, std::min(truncation_, rs->overlap_window())))
            throw std::invalid_argument("relations do not define a confluent rewriting system: " + *bad);
    }
    rewriter_ = std::move(rs);
}

void AlgebraHandle::check_relations() const
{
    for (const auto& r : relations_) {
        if (r.lhs.length() < 2)
            throw std::invalid_argument("relation path " + to_string(r.lhs) + " must have length >= 2");
        if (r.kind == Relation::Kind::monomial)
            continue;
        if (!r.rhs)
            throw std::invalid_argument("binomial relation without right-hand side");
        const Path& p = r.lhs;
        const Path& q = *r.rhs;
        if (p.source() != q.source() || p.target() != q.target() || p.length() != q.length())
            throw std::invalid_argument("binomial relation " + to_string(p) + " = " + to_string(q) +
                                        " must relate parallel paths of equal length");
        if (p == q)
            throw std::invalid_argument("binomial relation " + to_string(p) + " = " + to_string(q) +
                                        " is trivial");
    }
}

std::optional<Path> AlgebraHandle::normal_form(const Path& p) const
{
    if (p.length() > truncation_)
        throw TruncationError(p, Path::lazy(p.target()), p.length(), truncation_);
    if (p.length() < 2 || rewriter_->empty())
        return p;
    auto reduced = rewriter_->reduce(std::vector<Arrow>(p.arrows().begin(), p.arrows().end()));
    if (!reduced)
        return std::nullopt;
    return Path(p.source(), p.target(), std::move(*reduced));
}

bool AlgebraHandle::is_basis_path(const Path& p) const
{
    if (p.length() > truncation_)
        return false;
    auto nf = normal_form(p);
    return nf && *nf == p;
}

std::optional<Path> AlgebraHandle::multiply(const Path& p, const Path& q) const
{
    if (p.target() != q.source())
        return std::nullopt;
    std::size_t len = p.length() + q.length();
    if (len > truncation_)
        throw TruncationError(p, q, len, truncation_);
    auto composed = compose(p, q);
    if (p.is_lazy() || q.is_lazy())
        return composed;
    return normal_form(*composed);
}

void AlgebraHandle::accumulate(Element& x, const Path& p, const Rational& c) const
{
    Rational value = field_.reduce(c);
    if (value == 0)
        return;
    auto [it, inserted] = x.terms_.try_emplace(p, value);
    if (!inserted) {
        it->second = field_.reduce(it->second + value);
        if (it->second == 0)
            x.terms_.erase(it);
    }
}

Element AlgebraHandle::multiply(const Element& x, const Element& y) const
{
    Element out;
    for (const auto& [p, a] : x.terms_)
        for (const auto& [q, b] : y.terms_)
            if (auto pq = multiply(p, q))
                accumulate(out, *pq, a * b);
    return out;
}

Element AlgebraHandle::add(const Element& x, const Element& y) const
{
    Element out = x;
    for (const auto& [p, c] : y.terms_)
        accumulate(out, p, c);
    return out;
}

Element AlgebraHandle::subtract(const Element& x, const Element& y) const
{
    Element out = x;
    for (const auto& [p, c] : y.terms_)
        accumulate(out, p, -c);
    return out;
}

Element AlgebraHandle::scale(const Element& x, const Rational& c) const
{
    Element out;
    for (const auto& [p, a] : x.terms_)
        accumulate(out, p, a * c);
    return out;
}

Element AlgebraHandle::basis_element(const Path& p) const
{
    if (!is_basis_path(p))
        throw std::invalid_argument(to_string(p) + " is not a basis path of the algebra");
    Element out;
    accumulate(out, p, 1);
    return out;
}

Element AlgebraHandle::unit() const
{
    Element out;
    for (Vertex v = 0; v < quiver_.vertex_count(); ++v)
        accumulate(out, Path::lazy(v), 1);
    return out;
}

void AlgebraHandle::dfs_basis(std::size_t max_len, std::vector<Path>& out, std::optional<Vertex> from) const
{
    struct Frame {
        std::vector<Arrow> word;
        Vertex source;
        Vertex target;
        int state;
    };
    std::vector<Frame> stack;
    for (Vertex v = 0; v < quiver_.vertex_count(); ++v) {
        if (from && *from != v)
            continue;
        out.push_back(Path::lazy(v));
        if (max_len > 0)
            stack.push_back({{}, v, v, rewriter_->start_state()});
    }
    // Irreducible words are closed under prefixes, so extending only
    // irreducible words reaches every basis path.
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        for (Arrow a : quiver_.out_arrows(f.target)) {
            int state = rewriter_->step(f.state, a);
            if (rewriter_->accepting(state))
                continue;
            Frame g{f.word, f.source, quiver_.target(a), state};
            g.word.push_back(a);
            out.push_back(Path(g.source, g.target, g.word));
            if (g.word.size() < max_len)
                stack.push_back(std::move(g));
        }
    }
}

std::vector<Path> AlgebraHandle::standard_basis(std::size_t max_len) const
{
    if (max_len > truncation_)
        throw std::invalid_argument("basis length " + std::to_string(max_len) + " exceeds truncation length " +
                                    std::to_string(truncation_));
    std::vector<Path> out;
    dfs_basis(max_len, out, std::nullopt);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Path> AlgebraHandle::graded_component(Vertex i, Vertex j, std::size_t d) const
{
    if (d > truncation_)
        throw std::invalid_argument("degree exceeds truncation length");
    if (i >= quiver_.vertex_count() || j >= quiver_.vertex_count())
        throw std::out_of_range("unknown vertex");
    std::vector<Path> all;
    dfs_basis(d, all, i);
    std::vector<Path> out;
    for (auto& p : all)
        if (p.length() == d && p.target() == j)
            out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    return out;
}

bool AlgebraHandle::basis_exhausted_at(std::size_t max_len) const
{
    // Works on automaton states only, so max_len + 1 may exceed L.
    struct Frame {
        Vertex target;
        int state;
        std::size_t length;
    };
    std::vector<Frame> stack;
    for (Vertex v = 0; v < quiver_.vertex_count(); ++v)
        stack.push_back({v, rewriter_->start_state(), 0});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.length == max_len + 1)
            return false;
        for (Arrow a : quiver_.out_arrows(f.target)) {
            int state = rewriter_->step(f.state, a);
            if (!rewriter_->accepting(state))
                stack.push_back({quiver_.target(a), state, f.length + 1});
        }
    }
    return true;
}

std::string AlgebraHandle::to_string(const Element& x) const
{
    if (x.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : x.terms_) {
        Rational mag = abs(c);
        bool negative = c < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (mag != 1)
            out += mag.get_str() + "*";
        out += to_string(p);
        first = false;
    }
    return out;
}

}  // namespace piq
