#include "wpn/rackoff.hpp"

#include <cmath>
#include <random>
#include <unordered_set>

#include "wpn/reduce.hpp"
#include "wpn/semantics.hpp"

namespace wpn {

Tokens max_finite_effect(const Net& net) {
  Tokens r = 0;
  for (const auto& t : net.transitions)
    for (auto e : effect_of(t))
      if (!e.is_omega()) r = std::max<Tokens>(r, static_cast<Tokens>(std::llabs(e.value())));
  return r;
}

RackoffParams RackoffParams::make(Tokens R, std::size_t places, std::uint64_t c) {
  if (c == 0) throw Error("c must be at least 1");
  return {c, 3 * c, R, places};
}

RackoffParams RackoffParams::from_net(const Net& net, std::uint64_t c) {
  return make(max_finite_effect(net), net.place_count(), c);
}

namespace {

unsigned long exponent_of(const RackoffParams& p) {
  BigNat e = BigNat(p.c) * p.places * p.places * p.places;
  if (!e.fits_ulong_p()) throw BoundTooLarge("exponent out of range");
  return e.get_ui();
}

void check_bits(double bits, std::uint64_t max_bits) {
  if (bits > static_cast<double>(max_bits))
    throw BoundTooLarge("value needs about " + std::to_string(static_cast<long double>(bits)) + " bits");
}

}  // namespace

ThresholdTables threshold_sequences_upto(const RackoffParams& p, std::size_t last, std::uint64_t max_bits) {
  if (last > p.places) throw DomainExceeded("index beyond the number of places");
  const unsigned long e = exponent_of(p);
  const BigNat two_r = BigNat(2) * p.R;
  std::vector<double> est = ell_log2_estimates(p);
  ThresholdTables t;
  t.h1.push_back(1);
  t.h2.push_back(BigNat(p.R));
  check_bits(est[0], max_bits);
  BigNat ell0;
  mpz_pow_ui(ell0.get_mpz_t(), two_r.get_mpz_t(), e);
  t.ell.push_back(ell0);
  for (std::size_t i = 0; i < last; ++i) {
    check_bits(est[i + 1], max_bits);
    t.h1.push_back(two_r * t.ell[i]);
    t.h2.push_back(BigNat(p.R) * t.ell[i]);
    BigNat base = t.h1.back() * two_r, next;
    mpz_pow_ui(next.get_mpz_t(), base.get_mpz_t(), e);
    t.ell.push_back(next);
  }
  return t;
}

std::vector<double> ell_log2_estimates(const RackoffParams& p) {
  const double e = static_cast<double>(p.c) * std::pow(static_cast<double>(p.places), 3);
  const double lg = p.R == 0 ? 0.0 : std::log2(2.0 * static_cast<double>(p.R));
  std::vector<double> out{e * lg};
  for (std::size_t i = 0; i < p.places; ++i) out.push_back(e * (out.back() + 2 * lg));
  return out;
}

ThresholdTables threshold_sequences(const RackoffParams& params, std::uint64_t max_bits) {
  return threshold_sequences_upto(params, params.places, max_bits);
}

BigNat length_bound(const RackoffParams& params, std::uint64_t max_bits) {
  return threshold_sequences(params, max_bits).ell.back();
}

bool check_growth_bound(const RackoffParams& params, std::size_t i, std::uint64_t max_bits) {
  if (i > params.places) throw DomainExceeded("index beyond the number of places");
  ThresholdTables t = threshold_sequences_upto(params, i, max_bits);
  BigNat exp = 1;
  for (std::size_t j = 0; j <= i; ++j) exp *= BigNat(params.k) * params.places * params.places * params.places;
  if (!exp.fits_ulong_p()) throw BoundTooLarge("exponent out of range");
  if (params.R > 0) check_bits(exp.get_d() * std::log2(2.0 * static_cast<double>(params.R)), max_bits);
  BigNat rhs, two_r = BigNat(2) * params.R;
  mpz_pow_ui(rhs.get_mpz_t(), two_r.get_mpz_t(), exp.get_ui());
  return t.ell[i] <= rhs;
}

std::vector<std::int64_t> eff_abs(const Net& net, const std::set<PlaceId>& omega_places,
                                  const std::vector<TransitionId>& seq) {
  const std::size_t n = net.place_count();
  std::vector<std::int64_t> out(n, 0);
  for (TransitionId t : seq) {
    EffectVector e = effect_of(net.transitions.at(t));
    for (PlaceId p = 0; p < n; ++p) {
      if (omega_places.count(p)) {
        if (e[p].is_omega()) out[p] = 1;
      } else {
        if (e[p].is_omega()) throw Error("omega effect on place outside the given omega places");
        out[p] += e[p].value();
      }
    }
  }
  return out;
}

namespace {

class GuessSearch {
 public:
  GuessSearch(const Net& net, std::uint64_t bound) : net_(rem_input_omegas(net)), bound_(bound) {
    Tokens w = 0;
    for (const auto& t : net_.transitions)
      for (auto v : t.input)
        if (!v.is_omega()) w = std::max(w, v.value());
    max_in_ = w;
    concrete_ = std::max<Tokens>(1, max_finite_effect(net_)) * bound + w;
  }

  bool exhaustive(const OmegaMarking& m0) {
    std::vector<TransitionId> prefix;
    return prefix_dfs(m0, prefix);
  }

  bool randomized(const OmegaMarking& m0, std::uint64_t seed, std::size_t rounds) {
    std::mt19937_64 rng(seed);
    for (std::size_t r = 0; r < rounds; ++r) {
      std::vector<TransitionId> s1, s2;
      OmegaMarking m = m0;
      std::uint64_t len1 = rng() % bound_;
      if (!random_walk(m, len1, s1, rng)) continue;
      OmegaMarking start = concretize(m), cur = start;
      for (std::uint64_t i = 0; i + s1.size() < bound_; ++i) {
        std::vector<TransitionId> one;
        if (!random_walk(cur, 1, one, rng)) break;
        s2.push_back(one[0]);
        if (leq(start, cur)) {
          sigma1_ = s1;
          sigma2_ = s2;
          return true;
        }
      }
    }
    return false;
  }

  bool budget_hit() const { return steps_ > kMaxSteps; }
  const std::vector<TransitionId>& sigma1() const { return sigma1_; }
  const std::vector<TransitionId>& sigma2() const { return sigma2_; }
  Tokens concrete_value() const { return concrete_; }
  Tokens max_input() const { return max_in_; }

 private:
  static constexpr std::uint64_t kMaxSteps = 4'000'000;

  OmegaMarking concretize(const OmegaMarking& m) const {
    OmegaMarking r = m;
    for (auto& v : r.values)
      if (v.is_omega()) v = concrete_;
    return r;
  }

  bool random_walk(OmegaMarking& m, std::uint64_t len, std::vector<TransitionId>& seq, std::mt19937_64& rng) {
    for (std::uint64_t i = 0; i < len; ++i) {
      std::vector<TransitionId> en;
      for (TransitionId t = 0; t < net_.transitions.size(); ++t)
        if (enabled(m, net_.transitions[t])) en.push_back(t);
      if (en.empty()) return false;
      TransitionId t = en[rng() % en.size()];
      m = fire_omega(m, net_.transitions[t]);
      seq.push_back(t);
    }
    return true;
  }

  bool prefix_dfs(const OmegaMarking& m, std::vector<TransitionId>& prefix) {
    if (budget_hit()) return false;
    const std::uint64_t left = bound_ - prefix.size();
    if (!seen_prefix_.insert(key(m, left)).second) return false;
    std::vector<TransitionId> loop;
    OmegaMarking start = concretize(m);
    loop_seen_.clear();
    if (loop_dfs(start, start, loop, left)) {
      sigma1_ = prefix;
      sigma2_ = loop;
      return true;
    }
    if (left <= 1) return false;
    for (TransitionId t = 0; t < net_.transitions.size(); ++t) {
      if (!enabled(m, net_.transitions[t])) continue;
      prefix.push_back(t);
      if (prefix_dfs(fire_omega(m, net_.transitions[t]), prefix)) return true;
      prefix.pop_back();
    }
    return false;
  }

  bool loop_dfs(const OmegaMarking& start, const OmegaMarking& m, std::vector<TransitionId>& loop, std::uint64_t left) {
    if (++steps_ > kMaxSteps) return false;
    if (!loop.empty() && leq(start, m)) return true;
    if (left == 0 || !loop_seen_.insert(key(m, left)).second) return false;
    for (TransitionId t = 0; t < net_.transitions.size(); ++t) {
      if (!enabled(m, net_.transitions[t])) continue;
      loop.push_back(t);
      if (loop_dfs(start, fire_omega(m, net_.transitions[t]), loop, left - 1)) return true;
      loop.pop_back();
    }
    return false;
  }

  static std::string key(const OmegaMarking& m, std::uint64_t left) {
    std::string k = std::to_string(left);
    for (auto v : m.values) k += "," + to_string(v);
    return k;
  }

  Net net_;
  std::uint64_t bound_;
  Tokens max_in_ = 0;
  Tokens concrete_ = 1;
  std::uint64_t steps_ = 0;
  std::unordered_set<std::string> seen_prefix_, loop_seen_;
  std::vector<TransitionId> sigma1_, sigma2_;
};

// Concrete execution of sigma1 sigma2 in the original net: omega inputs take
// nothing, omega outputs produce enough to keep every later step enabled.
SelfCoveringExecution realize(const Net& net, const Marking& m0, const std::vector<TransitionId>& s1,
                              const std::vector<TransitionId>& s2, Tokens fill1, Tokens fill2) {
  SelfCoveringExecution w{{m0, {}}, s1.size()};
  Marking cur = m0;
  auto step = [&](TransitionId t, Tokens fill) {
    const Transition& tr = net.transitions[t];
    FiringChoices c;
    for (PlaceId p = 0; p < net.place_count(); ++p) {
      if (tr.input[p].is_omega()) c.omega_inputs[p] = 0;
      if (tr.output[p].is_omega()) c.omega_outputs[p] = fill;
    }
    cur = fire_concrete(cur, tr, c);
    w.run.steps.push_back({t, std::move(c), cur});
  };
  for (TransitionId t : s1) step(t, fill1);
  for (TransitionId t : s2) step(t, fill2);
  return w;
}

}  // namespace

Verdict bounded_self_covering_search(const Net& net, const Marking& m0, std::uint64_t bound, std::uint64_t seed) {
  if (bound == 0) throw BudgetZero("search budget must be positive");
  GuessSearch search(net, bound);
  OmegaMarking start(m0);
  bool found = search.exhaustive(start);
  if (!found && search.budget_hit()) found = search.randomized(start, seed, 20'000);
  if (!found) return Verdict::unknown("no self-covering execution within the search budget", bound);

  const Tokens w = search.max_input();
  const Tokens fill1 = search.concrete_value() + w * bound;
  const Tokens fill2 = w * bound;
  SelfCoveringExecution exec = realize(net, m0, search.sigma1(), search.sigma2(), fill1, fill2);
  if (!is_self_covering(net, exec)) throw Error("guessed self-covering execution failed concrete replay");
  Verdict v = Verdict::no("self-covering execution found by bounded guess-and-verify search");
  v.witness = std::move(exec);
  return v;
}

}  // namespace wpn
