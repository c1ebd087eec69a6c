#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>

#include "hmt/algebra.hpp"
#include "hmt/oracle.hpp"
#include "hmt/quiver.hpp"

namespace hmt {

struct Step {
    std::size_t coordinate = 0;
    int dir = 1;  // +1: u (label increases), -1: v
    auto operator<=>(const Step&) const = default;
};

// A path in the cover: a source label and a sequence of facet crossings.
struct Word {
    Label source;
    std::vector<Step> steps;

    Label target() const;
    std::size_t length() const { return steps.size(); }
    Word then(const Word& after) const;  // this first, then after
    auto operator<=>(const Word&) const = default;
    std::string str() const;
};

struct RewriteElement {
    std::map<Word, Laurent> terms;
    bool non_terminating = false;

    void add(const Word& w, const Laurent& c);
    RewriteElement operator-(const RewriteElement& o) const;
    bool is_zero() const { return terms.empty(); }
};

struct RewriteOptions {
    bool use_a = true;  // two paths high -> low
    bool use_b = true;  // two paths low -> high
    bool use_c = true;  // the mixed paths between low + e_i and low + e_j
    std::size_t max_class = 20000;  // commutation class exploration budget per word
};

// Evaluates the relations of a quiver by oriented rewriting: backtracks
// v u and u v become (h_i - 1), and square relations move words inside
// their commutation class, whose lex-least member is the normal word.
class RewriteSystem {
public:
    // chars: n x r matrix whose rows are the facet characters; defaults to the quiver's deck matrix.
    explicit RewriteSystem(QuiverWithRelations q, RewriteOptions opt = {});
    RewriteSystem(QuiverWithRelations q, const IntMatrix& chars, RewriteOptions opt = {});

    const QuiverWithRelations& quiver() const { return q_; }
    std::size_t nvars() const { return chars_.cols(); }

    bool has_vertex(const Label& x) const;
    bool has_step(const Label& x, const Step& s) const;
    bool has_square(const Label& low, std::size_t i, std::size_t j, CommuteVariant v) const;
    bool valid(const Word& w) const;
    Laurent facet_unit(std::size_t i) const;

    RewriteElement reduce(const Word& w, std::size_t max_steps = 100000) const;
    RewriteElement reduce(const RewriteElement& e, std::size_t max_steps = 100000) const;
    // Reduce the difference; nullopt when the budget ran out.
    std::optional<bool> equal(const RewriteElement& a, const RewriteElement& b, std::size_t max_steps = 100000) const;

    // All valid words of length <= max_len starting at x.
    std::vector<Word> words_from(const Label& x, std::size_t max_len) const;

private:
    std::optional<std::size_t> vertex_of(const Label& x) const;
    bool reduce_into(const Word& w, const Laurent& c, RewriteElement& out, std::size_t& budget) const;

    QuiverWithRelations q_;
    IntMatrix chars_;
    RewriteOptions opt_;
    std::vector<int> signs_;
    IntMatrix deck_left_inverse_;
    std::map<Label, std::size_t> by_label_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_of_;  // (src vertex, coordinate)
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, CommuteVariant>> squares_;
    mutable std::mutex cache_mutex_;
    mutable std::map<Label, std::optional<std::size_t>> vertex_cache_;
};

RewriteElement word_element(const Word& w, const Laurent& c);

// Evaluate a rewrite element in the normal-form algebra.
NormalFormElement to_normal_form(const NormalFormAlgebra& alg, const RewriteElement& e);
std::vector<Label> word_labels(const Word& w);

// For all pairs of parallel words from each class representative with total
// length <= max_total: rewriting equality must agree with normal-form equality.
OracleReport compare_rewriting(std::shared_ptr<const CoverModel> m, std::size_t max_total, RewriteOptions opt = {});

}  // namespace hmt
