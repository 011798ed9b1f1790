#include "rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace piq::detail {

RewriteSystem::RewriteSystem(std::size_t alphabet, std::vector<Rule> rules)
    : alphabet_(std::max<std::size_t>(alphabet, 1)), rules_(std::move(rules))
{
    // trie
    std::vector<std::vector<int>> trie(1, std::vector<int>(alphabet_, -1));
    outputs_.assign(1, {});
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        int state = 0;
        for (Arrow a : rules_[r].lhs) {
            if (trie[state][a] == -1) {
                trie[state][a] = static_cast<int>(trie.size());
                trie.emplace_back(alphabet_, -1);
                outputs_.emplace_back();
            }
            state = trie[state][a];
        }
        outputs_[state].push_back(r);
    }

    // failure links, breadth first
    const std::size_t n = trie.size();
    std::vector<int> fail(n, 0);
    goto_.assign(n * alphabet_, 0);
    std::deque<int> queue;
    for (std::size_t a = 0; a < alphabet_; ++a) {
        int child = trie[0][a];
        if (child == -1) {
            goto_[a] = 0;
        } else {
            goto_[a] = static_cast<std::uint32_t>(child);
            fail[child] = 0;
            queue.push_back(child);
        }
    }
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        auto& out = outputs_[s];
        const auto& inherited = outputs_[fail[s]];
        out.insert(out.end(), inherited.begin(), inherited.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (std::size_t a = 0; a < alphabet_; ++a) {
            int child = trie[s][a];
            if (child == -1) {
                goto_[s * alphabet_ + a] = goto_[fail[s] * alphabet_ + a];
            } else {
                goto_[s * alphabet_ + a] = static_cast<std::uint32_t>(child);
                fail[child] = static_cast<int>(goto_[fail[s] * alphabet_ + a]);
                queue.push_back(child);
            }
        }
    }
}

bool RewriteSystem::has_binomials() const
{
    return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.rhs.has_value(); });
}

std::optional<RewriteSystem::Match> RewriteSystem::first_match(std::span<const Arrow> word) const
{
    int state = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        state = step(state, word[i]);
        if (!outputs_[state].empty()) {
            std::size_t r = outputs_[state].front();
            return Match{i + 1 - rules_[r].lhs.size(), r};
        }
    }
    return std::nullopt;
}

std::vector<RewriteSystem::Match> RewriteSystem::all_matches(std::span<const Arrow> word) const
{
    std::vector<Match> out;
    int state = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        state = step(state, word[i]);
        for (std::size_t r : outputs_[state])
            out.push_back({i + 1 - rules_[r].lhs.size(), r});
    }
    return out;
}

std::optional<std::vector<Arrow>> RewriteSystem::reduce(std::vector<Arrow> word) const
{
    while (auto m = first_match(word)) {
        const Rule& rule = rules_[m->rule];
        if (!rule.rhs)
            return std::nullopt;
        std::copy(rule.rhs->begin(), rule.rhs->end(), word.begin() + static_cast<std::ptrdiff_t>(m->begin));
    }
    return word;
}

std::size_t RewriteSystem::overlap_window() const
{
    std::size_t longest = 0;
    for (const auto& r : rules_)
        longest = std::max(longest, r.lhs.size());
    return longest == 0 ? 0 : 2 * longest - 1;
}

namespace {

using Word = std::vector<Arrow>;
// nullopt encodes the zero word.
using NormalForms = std::set<std::optional<Word>>;

class DescendantSearch {
public:
    explicit DescendantSearch(const RewriteSystem& rs) : rs_(rs) {}

    const NormalForms& of(const Word& w)
    {
        if (auto it = memo_.find(w); it != memo_.end())
            return it->second;
        NormalForms result;
        auto matches = rs_.all_matches(w);
        if (matches.empty()) {
            result.insert(w);
        } else {
            for (const auto& m : matches) {
                const auto& rule = rs_.rules()[m.rule];
                if (!rule.rhs) {
                    result.insert(std::nullopt);
                    continue;
                }
                Word next = w;
                std::copy(rule.rhs->begin(), rule.rhs->end(), next.begin() + static_cast<std::ptrdiff_t>(m.begin));
                const auto& sub = of(next);
                result.insert(sub.begin(), sub.end());
            }
        }
        return memo_.emplace(w, std::move(result)).first->second;
    }

private:
    const RewriteSystem& rs_;
    std::map<Word, NormalForms> memo_;
};

std::string describe(const Quiver& q, const std::optional<Word>& w)
{
    if (!w)
        return "0";
    return to_string(q, Path::from_arrows(q, *w));
}

}  // namespace

std::optional<std::string> RewriteSystem::find_non_confluent(const Quiver& q, std::size_t max_len) const
{
    DescendantSearch search(*this);
    std::vector<Word> frontier;
    for (Arrow a = 0; a < q.arrow_count(); ++a)
        frontier.push_back({a});
    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Word> next;
        for (const auto& w : frontier) {
            const auto& nf = search.of(w);
            if (nf.size() > 1) {
                auto it = nf.begin();
                auto first = describe(q, *it);
                auto second = describe(q, *std::next(it));
                return "path " + to_string(q, Path::from_arrows(q, w)) + " rewrites to both " + first +
                       " and " + second;
            }
            if (len == max_len)
                continue;
            for (Arrow a : q.out_arrows(q.target(w.back()))) {
                Word longer = w;
                longer.push_back(a);
                next.push_back(std::move(longer));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

}  // namespace piq::detail
