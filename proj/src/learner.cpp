#include "hitl/learner.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <boost/container/small_vector.hpp>

namespace hitl {

ContradictionError::ContradictionError(TestCase point)
    : Error("contradictory labels for input (" + input_to_string(point.input) + ") with output " +
            to_string(point.output)),
      point_(std::move(point)) {}

std::string_view to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::trivial_true: return "trivial-true";
    case Provenance::searched: return "searched";
    case Provenance::memorized_fallback: return "memorized-fallback";
  }
  return "searched";
}

Provenance parse_provenance(std::string_view text) {
  if (text == "trivial-true") return Provenance::trivial_true;
  if (text == "searched") return Provenance::searched;
  if (text == "memorized-fallback") return Provenance::memorized_fallback;
  throw ParseError("unknown provenance '" + std::string(text) + "'", 0);
}

bool is_consistent(const LraFormula& formula, std::span<const LabeledTest> suite) {
  return std::all_of(suite.begin(), suite.end(), [&](const LabeledTest& t) {
    return evaluate_formula(formula, t.test) == t.failing();
  });
}

LearnedOracle LearnedOracle::checked(LraFormula formula, std::span<const LabeledTest> suite,
                                     Provenance provenance) {
  if (!is_consistent(formula, suite))
    throw std::logic_error("oracle " + formula_to_text(formula) +
                           " is inconsistent with its training suite");
  return LearnedOracle(std::move(formula), suite.size(), provenance);
}

namespace {

// Bitset over the failing or passing points. Suites are small, so up to 128
// points live inline and copies stay allocation free.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : size_((n + 63) / 64) {
    if (size_ > small_.size()) big_.assign(size_, 0);
  }

  static Bits all(std::size_t n) {
    Bits b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  void set(std::size_t i) { data()[i >> 6] |= std::uint64_t{1} << (i & 63); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < size_; ++i) c += static_cast<std::size_t>(std::popcount(data()[i]));
    return c;
  }

  bool any() const {
    for (std::size_t i = 0; i < size_; ++i)
      if (data()[i] != 0) return true;
    return false;
  }

  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < size_; ++i) r.data()[i] &= o.data()[i];
    return r;
  }

  Bits operator|(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < size_; ++i) r.data()[i] |= o.data()[i];
    return r;
  }

  Bits without(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < size_; ++i) r.data()[i] &= ~o.data()[i];
    return r;
  }

  std::size_t size() const noexcept { return size_; }
  const std::uint64_t* data() const noexcept { return size_ > small_.size() ? big_.data() : small_.data(); }
  std::uint64_t* data() noexcept { return size_ > small_.size() ? big_.data() : small_.data(); }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.size_ == b.size_ && std::equal(a.data(), a.data() + a.size_, b.data());
  }

 private:
  std::size_t size_ = 0;
  std::array<std::uint64_t, 2> small_{};
  std::vector<std::uint64_t> big_;
};

std::size_t count_and(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    c += static_cast<std::size_t>(std::popcount(a.data()[i] & b.data()[i]));
  return c;
}

std::size_t count_and(const Bits& a, const Bits& b, const Bits& c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += static_cast<std::size_t>(std::popcount(a.data()[i] & b.data()[i] & c.data()[i]));
  return n;
}

struct PoolLiteral {
  std::size_t expression = 0;
  std::size_t bound = 0;  // index into the expression's sorted bounds
  Relation relation = Relation::eq;
  bool flipped = false;  // negated coefficients, i.e. >= or >
  Bits pos;
  Bits neg;
  int magnitude = 0;          // sum of |coefficient| including the constant
  std::int64_t tiebreak = 0;  // relation preference
};

struct Conjunction {
  std::vector<int> literals;
  Bits pos;
  Bits neg;
  std::size_t covered = 0;  // newly covered failing points
  std::size_t negatives = 0;
  int magnitude = 0;
  std::int64_t tiebreak = 0;
};

struct Cover {
  std::vector<Conjunction> terms;
  std::size_t literals = 0;
  int magnitude = 0;
  std::int64_t tiebreak = 0;

  auto key() const { return std::make_tuple(terms.size(), literals, magnitude, tiebreak); }
};

struct BudgetExhausted {};

using MaskKey = boost::container::small_vector<std::uint64_t, 4>;

struct WordsHash {
  std::size_t operator()(const MaskKey& words) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words) h = (h ^ w) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

// Among equally simple literals, prefer the one whose solution set is larger:
// a wider failure region sends more borderline tests to the human.
int relation_rank(Relation r, bool flipped) {
  switch (r) {
    case Relation::ne: return 0;
    case Relation::le: return flipped ? 2 : 1;
    case Relation::lt: return flipped ? 4 : 3;
    case Relation::eq: return 5;
  }
  return 5;
}

class Searcher {
 public:
  Searcher(std::vector<TestCase> failing, std::vector<TestCase> passing, std::size_t arity,
           const LearnerBudget& budget)
      : failing_(std::move(failing)),
        passing_(std::move(passing)),
        arity_(arity),
        budget_(budget),
        all_pos_(Bits::all(failing_.size())),
        all_neg_(Bits::all(passing_.size())) {
    build_pool();
  }

  std::optional<Cover> run() {
    std::optional<Cover> best;
    try {
      for (int h = 1; h <= budget_.max_literals; ++h) {
        auto c = cover(h);
        if (c && (!best || c->key() < best->key())) best = std::move(c);
        if (best && best->terms.size() == 1) break;
      }
    } catch (const BudgetExhausted&) {
    }
    return best;
  }

  LraFormula to_formula(const Cover& cover) const {
    std::vector<hitl::Term> terms;
    for (const auto& t : cover.terms) {
      std::vector<int> ids = t.literals;
      std::sort(ids.begin(), ids.end());
      hitl::Term term;
      for (int id : ids) term.push_back(materialize(pool_[static_cast<std::size_t>(id)]));
      terms.push_back(std::move(term));
    }
    return LraFormula::dnf(arity_, std::move(terms));
  }

 private:
  // Linear expressions with coefficients in {-1, 0, 1}: every variable on its
  // own, x_i - x_j for input pairs, and x_i - o.
  std::vector<std::vector<int>> expressions() const {
    std::vector<std::vector<int>> out;
    const std::size_t width = arity_ + 1;
    for (std::size_t i = 0; i < width; ++i) {
      std::vector<int> c(width, 0);
      c[i] = 1;
      out.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < arity_; ++i)
      for (std::size_t j = i + 1; j < arity_; ++j) {
        std::vector<int> c(width, 0);
        c[i] = 1;
        c[j] = -1;
        out.push_back(std::move(c));
      }
    for (std::size_t i = 0; i < arity_; ++i) {
      std::vector<int> c(width, 0);
      c[i] = 1;
      c[arity_] = -1;
      out.push_back(std::move(c));
    }
    return out;
  }

  static const Rational& slot(const TestCase& t, std::size_t i) {
    return i < t.input.size() ? t.input[i] : t.output;
  }

  static Rational apply(const std::vector<int>& coeffs, const TestCase& t) {
    Rational v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) v += coeffs[i] > 0 ? slot(t, i) : Rational(-slot(t, i));
    return v;
  }

  // Every value times the common denominator, when that fits comfortably in
  // 64 bits. Expressions add at most two slots, so no sum can overflow.
  bool prepare_scaled() {
    static const BigInt limit = BigInt(1) << 58;
    BigInt scale = 1;
    auto all_points = [&](auto&& fn) {
      for (const auto& t : failing_) fn(t);
      for (const auto& t : passing_) fn(t);
    };
    all_points([&](const TestCase& t) {
      for (std::size_t i = 0; i <= arity_; ++i)
        if (!is_integer(slot(t, i)))
          scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(slot(t, i)));
    });
    const bool unit = scale == 1;
    if (scale > limit) return false;
    bool fits = true;
    auto scaled_point = [&](const TestCase& t) {
      std::vector<std::int64_t> out;
      for (std::size_t i = 0; i <= arity_ && fits; ++i) {
        const Rational& v = slot(t, i);
        BigInt n = unit ? BigInt(boost::multiprecision::numerator(v))
                        : boost::multiprecision::numerator(v) *
                              (scale / boost::multiprecision::denominator(v));
        if (abs(n) > limit) fits = false;
        else out.push_back(n.convert_to<std::int64_t>());
      }
      return out;
    };
    for (const auto& t : failing_) scaled_pos_.push_back(scaled_point(t));
    for (const auto& t : passing_) scaled_neg_.push_back(scaled_point(t));
    if (!fits) {
      scaled_pos_.clear();
      scaled_neg_.clear();
      return false;
    }
    scale_ = scale.convert_to<std::int64_t>();
    return true;
  }

  template <class V, class Less>
  static void rank(const std::vector<V>& pos, const std::vector<V>& neg, std::vector<V> bounds,
                   Less less, std::vector<V>& sorted, std::vector<std::size_t>& pos_rank,
                   std::vector<std::size_t>& neg_rank) {
    bounds.insert(bounds.end(), pos.begin(), pos.end());
    bounds.insert(bounds.end(), neg.begin(), neg.end());
    std::sort(bounds.begin(), bounds.end(), less);
    bounds.erase(std::unique(bounds.begin(), bounds.end(),
                             [&](const V& a, const V& b) { return !less(a, b) && !less(b, a); }),
                 bounds.end());
    auto rank_of = [&](const V& v) {
      return static_cast<std::size_t>(std::lower_bound(bounds.begin(), bounds.end(), v, less) -
                                      bounds.begin());
    };
    for (const auto& v : pos) pos_rank.push_back(rank_of(v));
    for (const auto& v : neg) neg_rank.push_back(rank_of(v));
    sorted = std::move(bounds);
  }

  static int bound_magnitude(const Rational& b) {
    return static_cast<int>(std::ceil(std::min(1e6, std::abs(to_double(b)))));
  }

  void build_pool() {
    const bool scaled = prepare_scaled();
    const auto exprs = expressions();
    coefficients_ = exprs;
    bounds_.resize(exprs.size());
    scaled_bounds_.resize(exprs.size());
    std::unordered_map<MaskKey, std::size_t, WordsHash> by_mask;
    Bits pos(failing_.size()), neg(passing_.size());

    for (std::size_t e = 0; e < exprs.size(); ++e) {
      const auto& coeffs = exprs[e];
      std::vector<std::size_t> pos_rank, neg_rank;
      std::vector<int> magnitudes;
      if (scaled) {
        auto value = [&](const std::vector<std::int64_t>& p) {
          std::int64_t v = 0;
          for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * p[i];
          return v;
        };
        std::vector<std::int64_t> pos, neg, extra, sorted;
        for (const auto& p : scaled_pos_) pos.push_back(value(p));
        for (const auto& p : scaled_neg_) neg.push_back(value(p));
        for (auto c = budget_.small_constant_min; c <= budget_.small_constant_max; ++c)
          extra.push_back(c * scale_);
        rank(pos, neg, std::move(extra), std::less<>{}, sorted, pos_rank, neg_rank);
        scaled_bounds_[e] = sorted;
        for (auto b : sorted) {
          const std::uint64_t a = b < 0 ? static_cast<std::uint64_t>(-b) : static_cast<std::uint64_t>(b);
          const std::uint64_t s = static_cast<std::uint64_t>(scale_);
          magnitudes.push_back(static_cast<int>(std::min<std::uint64_t>(1'000'000, (a + s - 1) / s)));
        }
      } else {
        std::vector<Rational> pos, neg, extra;
        for (const auto& t : failing_) pos.push_back(apply(coeffs, t));
        for (const auto& t : passing_) neg.push_back(apply(coeffs, t));
        for (auto c = budget_.small_constant_min; c <= budget_.small_constant_max; ++c)
          extra.emplace_back(c);
        rank(pos, neg, std::move(extra), rational_less, bounds_[e], pos_rank, neg_rank);
        for (const auto& b : bounds_[e]) magnitudes.push_back(bound_magnitude(b));
      }

      int magnitude = 0;
      for (int c : coeffs) magnitude += c < 0 ? -c : c;

      // Points sitting exactly at each bound, then running unions from
      // either end give every relation's mask without rescanning points.
      const std::size_t nb = magnitudes.size();
      std::vector<Bits> eq_pos(nb, Bits(failing_.size())), eq_neg(nb, Bits(passing_.size()));
      for (std::size_t i = 0; i < pos_rank.size(); ++i) eq_pos[pos_rank[i]].set(i);
      for (std::size_t i = 0; i < neg_rank.size(); ++i) eq_neg[neg_rank[i]].set(i);
      std::vector<Bits> le_pos(nb + 1, Bits(failing_.size())), le_neg(nb + 1, Bits(passing_.size()));
      for (std::size_t k = 0; k < nb; ++k) {  // le_*[k + 1]: rank <= k
        le_pos[k + 1] = le_pos[k] | eq_pos[k];
        le_neg[k + 1] = le_neg[k] | eq_neg[k];
      }

      for (std::size_t k = 0; k < nb; ++k) {
        for (int shape = 0; shape < 6; ++shape) {
          Relation relation = Relation::eq;
          bool flipped = false;
          switch (shape) {
            case 0:  // = b
              pos = eq_pos[k];
              neg = eq_neg[k];
              break;
            case 1:  // <= b
              relation = Relation::le;
              pos = le_pos[k + 1];
              neg = le_neg[k + 1];
              break;
            case 2:  // >= b
              relation = Relation::le;
              flipped = true;
              pos = all_pos_.without(le_pos[k]);
              neg = all_neg_.without(le_neg[k]);
              break;
            case 3:  // < b
              relation = Relation::lt;
              pos = le_pos[k];
              neg = le_neg[k];
              break;
            case 4:  // > b
              relation = Relation::lt;
              flipped = true;
              pos = all_pos_.without(le_pos[k + 1]);
              neg = all_neg_.without(le_neg[k + 1]);
              break;
            default:  // != b
              relation = Relation::ne;
              pos = all_pos_.without(eq_pos[k]);
              neg = all_neg_.without(eq_neg[k]);
              break;
          }
          if (!pos.any() || neg == all_neg_) continue;

          // The bound is the constant term of the linear sum, so it counts
          // toward the magnitude like any other coefficient.
          PoolLiteral lit{e,
                          k,
                          relation,
                          flipped,
                          pos,
                          neg,
                          magnitude + magnitudes[k],
                          relation_rank(relation, flipped)};

          MaskKey key(lit.pos.data(), lit.pos.data() + lit.pos.size());
          key.insert(key.end(), lit.neg.data(), lit.neg.data() + lit.neg.size());
          auto [it, inserted] = by_mask.try_emplace(std::move(key), pool_.size());
          if (inserted) {
            pool_.push_back(std::move(lit));
          } else {
            PoolLiteral& existing = pool_[it->second];
            if (std::tie(lit.magnitude, lit.tiebreak) <
                std::tie(existing.magnitude, existing.tiebreak))
              existing = std::move(lit);
          }
        }
      }
    }
  }

  LinearLiteral materialize(const PoolLiteral& lit) const {
    const bool scaled = !scaled_bounds_[lit.expression].empty();
    std::vector<Rational> coeffs;
    for (int c : coefficients_[lit.expression]) coeffs.emplace_back(lit.flipped ? -c : c);
    const Rational b = scaled ? Rational(scaled_bounds_[lit.expression][lit.bound], scale_)
                              : bounds_[lit.expression][lit.bound];
    return LinearLiteral(std::move(coeffs), lit.flipped ? Rational(-b) : b, lit.relation);
  }

  void charge() {
    if (++evaluations_ > budget_.max_evaluations) throw BudgetExhausted{};
  }

  std::optional<Cover> cover(int max_literals) {
    Bits uncovered = all_pos_;
    Cover result;
    while (uncovered.any()) {
      if (static_cast<int>(result.terms.size()) == budget_.max_terms) return std::nullopt;
      auto term = best_term(uncovered, max_literals);
      if (!term) return std::nullopt;
      uncovered = uncovered.without(term->pos);
      result.literals += term->literals.size();
      result.magnitude += term->magnitude;
      result.tiebreak += term->tiebreak;
      result.terms.push_back(std::move(*term));
    }
    return result;
  }

  struct Extension {
    std::size_t parent;
    int literal;
    std::size_t covered;
    std::size_t negatives;
    int magnitude;
    std::int64_t tiebreak;

    auto key() const {
      return std::make_tuple(-static_cast<long long>(covered), negatives, magnitude, tiebreak,
                             parent, literal);
    }
  };

  Conjunction extend(const Conjunction& parent, const Extension& e) const {
    const PoolLiteral& lit = pool_[static_cast<std::size_t>(e.literal)];
    Conjunction t;
    t.literals = parent.literals;
    t.literals.push_back(e.literal);
    t.pos = parent.pos & lit.pos;
    t.neg = parent.neg & lit.neg;
    t.covered = e.covered;
    t.negatives = e.negatives;
    t.magnitude = e.magnitude;
    t.tiebreak = e.tiebreak;
    return t;
  }

  // Beam search for the conjunction that excludes every passing point and
  // covers the most still-uncovered failing points. The search is resumable:
  // the ladder over term lengths asks the same question with a growing depth
  // limit, so each uncovered set is searched once and deepened on demand.
  struct Search {
    Bits uncovered;
    std::size_t target = 0;
    std::vector<Conjunction> beam;
    std::optional<Conjunction> best;
    int depth = 0;
    bool finished = false;
  };

  std::optional<Conjunction> best_term(const Bits& uncovered, int max_literals) {
    auto it = std::find_if(searches_.begin(), searches_.end(),
                           [&](const Search& s) { return s.uncovered == uncovered; });
    if (it == searches_.end()) {
      Search s;
      s.uncovered = uncovered;
      s.target = uncovered.count();
      Conjunction root;
      root.pos = all_pos_;
      root.neg = all_neg_;
      root.covered = s.target;
      root.negatives = passing_.size();
      s.beam.push_back(std::move(root));
      searches_.push_back(std::move(s));
      it = std::prev(searches_.end());
    }
    Search& search = *it;
    while (!search.finished && search.depth < max_literals) deepen(search);
    return search.best;
  }

  void deepen(Search& search) {
    const Bits& uncovered = search.uncovered;
    std::optional<Conjunction>& best = search.best;
    const std::vector<Conjunction>& beam = search.beam;
    ++search.depth;

    std::vector<Extension> open;
    std::optional<Extension> complete;
    for (std::size_t si = 0; si < beam.size(); ++si) {
      const Conjunction& state = beam[si];
      for (std::size_t li = 0; li < pool_.size(); ++li) {
        charge();
        const PoolLiteral& lit = pool_[li];
        const std::size_t negatives = count_and(state.neg, lit.neg);
        if (negatives == state.negatives) continue;
        const std::size_t covered = count_and(state.pos, lit.pos, uncovered);
        if (covered == 0 || (best && covered <= best->covered)) continue;
        Extension e{si, static_cast<int>(li), covered, negatives,
                    state.magnitude + lit.magnitude, state.tiebreak + lit.tiebreak};
        if (negatives == 0) {
          if (!complete || e.key() < complete->key()) complete = e;
        } else {
          open.push_back(e);
        }
      }
    }
    if (complete) best = extend(beam[complete->parent], *complete);
    if ((best && best->covered == search.target) ||
        search.depth == budget_.max_literals) {
      search.finished = true;
      search.beam.clear();
      return;
    }

    if (best)
      std::erase_if(open, [&](const Extension& e) { return e.covered <= best->covered; });
    // Only the front of the ordering is ever consumed, so sort lazily.
    auto by_key = [](const Extension& a, const Extension& b) { return a.key() < b.key(); };
    std::size_t sorted = 0;
    std::vector<Conjunction> next;
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (static_cast<int>(next.size()) == budget_.beam_width) break;
      if (i == sorted) {
        sorted = std::min(open.size(), sorted + 4 * static_cast<std::size_t>(budget_.beam_width));
        std::partial_sort(open.begin() + static_cast<std::ptrdiff_t>(i),
                          open.begin() + static_cast<std::ptrdiff_t>(sorted), open.end(), by_key);
      }
      const Extension& e = open[i];
      Conjunction t = extend(beam[e.parent], e);
      const bool duplicate = std::any_of(next.begin(), next.end(), [&](const Conjunction& o) {
        return o.pos == t.pos && o.neg == t.neg;
      });
      if (!duplicate) next.push_back(std::move(t));
    }
    search.beam = std::move(next);
    if (search.beam.empty()) search.finished = true;
  }

  std::vector<TestCase> failing_;
  std::vector<TestCase> passing_;
  std::size_t arity_;
  LearnerBudget budget_;
  Bits all_pos_;
  Bits all_neg_;
  std::vector<PoolLiteral> pool_;
  std::vector<Search> searches_;
  std::vector<std::vector<int>> coefficients_;
  std::vector<std::vector<Rational>> bounds_;
  std::vector<std::vector<std::int64_t>> scaled_bounds_;
  std::vector<std::vector<std::int64_t>> scaled_pos_;
  std::vector<std::vector<std::int64_t>> scaled_neg_;
  std::int64_t scale_ = 1;
  std::int64_t evaluations_ = 0;
};

struct Partition {
  std::size_t arity = 0;
  std::vector<TestCase> failing;
  std::vector<TestCase> passing;
};

Partition partition(std::span<const LabeledTest> suite) {
  if (suite.empty()) throw StructuralError("cannot learn from an empty suite");
  Partition p;
  p.arity = suite.front().test.arity();
  for (const auto& t : suite)
    if (t.test.arity() != p.arity)
      throw StructuralError("suite mixes arities " + std::to_string(p.arity) + " and " +
                            std::to_string(t.test.arity()));
  struct PointHash {
    std::size_t operator()(const TestCase* t) const {
      std::size_t h = std::hash<Rational>{}(t->output);
      for (const auto& v : t->input) h = h * 31 + std::hash<Rational>{}(v);
      return h;
    }
  };
  struct PointEq {
    bool operator()(const TestCase* a, const TestCase* b) const { return *a == *b; }
  };
  std::unordered_map<const TestCase*, Verdict, PointHash, PointEq> seen;
  std::vector<bool> keep(suite.size(), true);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(&suite[i].test, suite[i].label.verdict);
    if (inserted) continue;
    if (it->second != suite[i].label.verdict) throw ContradictionError(suite[i].test);
    keep[i] = false;
  }
  for (std::size_t i = 0; i < suite.size(); ++i)
    if (keep[i]) (suite[i].failing() ? p.failing : p.passing).push_back(suite[i].test);
  if (p.failing.empty()) throw StructuralError("suite contains no failing test");
  return p;
}

LraFormula pin_points(std::size_t arity, const std::vector<TestCase>& points) {
  std::vector<hitl::Term> terms;
  for (const auto& t : points) {
    hitl::Term term;
    for (std::size_t i = 0; i <= arity; ++i) {
      std::vector<Rational> c(arity + 1);
      c[i] = 1;
      term.emplace_back(std::move(c), i == arity ? t.output : t.input[i], Relation::eq);
    }
    terms.push_back(std::move(term));
  }
  return LraFormula::dnf(arity, std::move(terms));
}

}  // namespace

LraFormula memorize_fallback(std::span<const LabeledTest> suite) {
  Partition p = partition(suite);
  return pin_points(p.arity, p.failing);
}

LearnedOracle smt_learn(std::span<const LabeledTest> suite, const LearnerBudget& budget) {
  budget.validate();
  Partition p = partition(suite);
  if (p.passing.empty())
    return LearnedOracle::checked(LraFormula::truth(p.arity), suite, Provenance::trivial_true);

  Searcher searcher(p.failing, p.passing, p.arity, budget);
  if (auto cover = searcher.run())
    return LearnedOracle::checked(searcher.to_formula(*cover), suite, Provenance::searched);
  return LearnedOracle::checked(pin_points(p.arity, p.failing), suite,
                                Provenance::memorized_fallback);
}

}  // namespace hitl
