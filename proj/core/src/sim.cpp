#include "frog/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "frog/errors.hpp"
#include "frog/parallel.hpp"

namespace frog {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng replication_rng(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

// ------------------------------------------------------------ InitMeasure

InitMeasure InitMeasure::poisson(double mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw OutOfRange("Poisson mean must be finite and nonnegative");
  return InitMeasure{Kind::kPoisson, mu};
}

InitMeasure InitMeasure::parse(const std::string& text) {
  if (text == "one") return one_per_site();
  if (text.rfind("poi:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double mu = std::stod(text.substr(4), &used);
      if (used == text.size() - 4) return poisson(mu);
    } catch (const std::logic_error&) {
    }
  }
  throw ParseError("initial measure must be 'one' or 'poi:MU', got '" + text + "'");
}

std::string InitMeasure::to_string() const {
  if (kind == Kind::kOnePerSite) return "one";
  std::string mu = std::to_string(mean);
  while (mu.size() > 1 && mu.back() == '0') mu.pop_back();
  if (mu.back() == '.') mu.pop_back();
  return "poi:" + mu;
}

void SimConfig::validate() const {
  if (depth < 1) throw InvalidArgument("depth must be at least 1");
  if (max_steps < 1) throw InvalidArgument("max_steps must be positive");
  if (replications < 1) throw InvalidArgument("replications must be positive");
  if (threads < 1) throw InvalidArgument("threads must be positive");
}

// ------------------------------------------------------------ star process

int sample_u(const DriftParams& params, double lambda, Rng& rng) {
  if (!(lambda >= 0.0)) throw OutOfRange("lambda must be nonnegative");
  const int d = params.d;
  const double p_star = params.p_star.to_double();
  const double p_hat = params.p_hat.to_double();
  std::bernoulli_distribution to_root_first(p_star);
  std::bernoulli_distribution to_root_later(p_hat);
  std::uniform_int_distribution<int> any_leaf(0, d - 1);
  std::uniform_int_distribution<int> other_leaf(0, d - 2);
  std::poisson_distribution<int> dormant(lambda);

  std::vector<char> visited(static_cast<std::size_t>(d), 0);
  std::vector<int> active_at_leaf;  // one entry per active particle, holding its leaf
  int u = 0;
  auto land = [&](int leaf) {
    if (visited[static_cast<std::size_t>(leaf)]) return;
    visited[static_cast<std::size_t>(leaf)] = 1;
    if (leaf == 0) return;  // v_1 holds no dormant particles
    ++u;
    const int woken = lambda > 0.0 ? dormant(rng) : 0;
    for (int i = 0; i < woken; ++i) active_at_leaf.push_back(leaf);
  };

  std::poisson_distribution<int> centre(1.0);
  const int n_centre = centre(rng);
  for (int i = 0; i < n_centre; ++i) {
    if (!to_root_first(rng)) land(any_leaf(rng));
  }
  const int n_first = lambda > 0.0 ? dormant(rng) : 0;
  for (int i = 0; i < n_first; ++i) active_at_leaf.push_back(0);
  while (!active_at_leaf.empty()) {
    const int from = active_at_leaf.back();
    active_at_leaf.pop_back();
    if (to_root_later(rng)) continue;
    int target = other_leaf(rng);
    if (target >= from) ++target;
    land(target);
  }
  return u;
}

std::vector<double> empirical_u_pmf(const DriftParams& params, double lambda, std::int64_t n,
                                    std::uint64_t seed, int threads) {
  if (n < 1) throw InvalidArgument("sample count must be positive");
  constexpr std::int64_t kBlock = 4096;
  const auto blocks = static_cast<std::size_t>((n + kBlock - 1) / kBlock);
  std::vector<std::vector<std::int64_t>> counts(blocks, std::vector<std::int64_t>(static_cast<std::size_t>(params.d), 0));
  parallel_for(blocks, threads, [&](std::size_t b) {
    Rng rng = replication_rng(seed, b);
    const std::int64_t count = std::min<std::int64_t>(kBlock, n - static_cast<std::int64_t>(b) * kBlock);
    for (std::int64_t i = 0; i < count; ++i) ++counts[b][static_cast<std::size_t>(sample_u(params, lambda, rng))];
  });
  std::vector<double> pmf(static_cast<std::size_t>(params.d), 0.0);
  for (const auto& block : counts) {
    for (std::size_t u = 0; u < block.size(); ++u) pmf[u] += static_cast<double>(block[u]);
  }
  for (double& v : pmf) v /= static_cast<double>(n);
  return pmf;
}

// ------------------------------------------------------------- lazy tree

namespace {

/// d-ary tree materialized on demand. Node 0 is the root.
class LazyTree {
 public:
  explicit LazyTree(int d) : d_(d) { nodes_.push_back(Node{-1, 0, -1, true}); }

  int parent(int v) const { return nodes_[static_cast<std::size_t>(v)].parent; }
  int depth(int v) const { return nodes_[static_cast<std::size_t>(v)].depth; }
  bool visited(int v) const { return nodes_[static_cast<std::size_t>(v)].visited; }
  void mark_visited(int v) { nodes_[static_cast<std::size_t>(v)].visited = true; }

  int child(int v, int i) {
    int slot = nodes_[static_cast<std::size_t>(v)].first_child;
    if (slot < 0) {
      slot = static_cast<int>(children_.size());
      children_.resize(children_.size() + static_cast<std::size_t>(d_), -1);
      nodes_[static_cast<std::size_t>(v)].first_child = slot;
    }
    int& c = children_[static_cast<std::size_t>(slot + i)];
    if (c < 0) {
      c = static_cast<int>(nodes_.size());
      nodes_.push_back(Node{v, depth(v) + 1, -1, false});
    }
    return c;
  }

 private:
  struct Node {
    int parent;
    int depth;
    int first_child;
    bool visited;
  };

  int d_;
  std::vector<Node> nodes_;
  std::vector<int> children_;
};

int sleeping_frogs(const InitMeasure& nu, Rng& rng) {
  if (nu.kind == InitMeasure::Kind::kOnePerSite) return 1;
  std::poisson_distribution<int> dist(nu.mean);
  return dist(rng);
}

struct RunOutcome {
  std::int64_t visits = 0;
  bool capped = false;
};

enum class Heading { kFresh, kRootward, kAway };

struct SfmFrog {
  int node;
  Heading heading;
};

RunOutcome run_sfm(int d, double p, const InitMeasure& nu, const SimConfig& cfg, Rng& rng) {
  const double p_star = p * (d - 1) / (d - (d + 1) * p);
  const double p_hat = p / (1.0 - p);
  std::bernoulli_distribution first_up(p_star);
  std::bernoulli_distribution keep_up(p_hat);
  std::uniform_int_distribution<int> pick_child(0, d - 1);

  LazyTree tree(d);
  RunOutcome out;
  std::deque<SfmFrog> frogs{{0, Heading::kAway}};
  while (!frogs.empty()) {
    SfmFrog f = frogs.front();
    frogs.pop_front();
    if (f.heading == Heading::kFresh) f.heading = first_up(rng) ? Heading::kRootward : Heading::kAway;
    for (std::int64_t steps = 0;; ++steps) {
      if (steps >= cfg.max_steps) {
        out.capped = true;
        break;
      }
      if (f.heading == Heading::kRootward) {
        f.node = tree.parent(f.node);
        if (f.node == 0) {
          ++out.visits;
          break;
        }
        if (!keep_up(rng)) f.heading = Heading::kAway;
        continue;
      }
      if (tree.depth(f.node) >= cfg.depth) break;  // leaves the truncated tree
      const int next = tree.child(f.node, pick_child(rng));
      if (tree.visited(next)) break;
      tree.mark_visited(next);
      const int woken = sleeping_frogs(nu, rng);
      for (int i = 0; i < woken; ++i) frogs.push_back({next, Heading::kFresh});
      f.node = next;
    }
  }
  return out;
}

RunOutcome run_fm(int d, double p, const InitMeasure& nu, const SimConfig& cfg, Rng& rng) {
  std::bernoulli_distribution up(p);
  std::uniform_int_distribution<int> pick_child(0, d - 1);
  LazyTree tree(d);
  RunOutcome out;
  std::vector<int> frogs{0};
  while (!frogs.empty()) {
    int v = frogs.back();
    frogs.pop_back();
    for (std::int64_t steps = 0;; ++steps) {
      if (steps >= cfg.max_steps) {
        out.capped = true;
        break;
      }
      if (v != 0 && up(rng)) {
        v = tree.parent(v);
      } else {
        if (tree.depth(v) >= cfg.depth) break;
        v = tree.child(v, pick_child(rng));
      }
      if (v == 0) {
        ++out.visits;
        continue;
      }
      if (!tree.visited(v)) {
        tree.mark_visited(v);
        const int woken = sleeping_frogs(nu, rng);
        for (int i = 0; i < woken; ++i) frogs.push_back(v);
      }
    }
  }
  return out;
}

template <typename Runner>
SimSummary simulate(const char* model, int d, double p, const InitMeasure& nu, const SimConfig& cfg,
                    Runner run) {
  cfg.validate();
  SimSummary s;
  s.model = model;
  s.d = d;
  s.p = p;
  s.nu = nu;
  s.cfg = cfg;
  const auto reps = static_cast<std::size_t>(cfg.replications);
  s.root_visits.assign(reps, 0);
  std::vector<char> capped(reps, 0);
  parallel_for(reps, cfg.threads, [&](std::size_t r) {
    Rng rng = replication_rng(cfg.seed, r);
    const RunOutcome o = run(d, p, nu, cfg, rng);
    s.root_visits[r] = o.visits;
    capped[r] = o.capped ? 1 : 0;
  });
  for (std::size_t r = 0; r < reps; ++r) {
    if (capped[r]) s.capped_replications.push_back(static_cast<int>(r));
  }
  summarize(s);
  return s;
}

}  // namespace

SimSummary simulate_sfm(int d, double p, const InitMeasure& nu, const SimConfig& cfg) {
  if (d < 2) throw OutOfRange("tree arity d must be at least 2");
  if (!(p > 0.0 && p < 0.5)) throw OutOfRange("the self-similar model needs 0 < p < 1/2");
  return simulate("sfm", d, p, nu, cfg, run_sfm);
}

SimSummary simulate_fm(int d, double p, const InitMeasure& nu, const SimConfig& cfg) {
  if (d < 2) throw OutOfRange("tree arity d must be at least 2");
  if (!(p > 0.0 && p < 1.0)) throw OutOfRange("the frog model needs 0 < p < 1");
  return simulate("fm", d, p, nu, cfg, run_fm);
}

// -------------------------------------------------------------- statistics

void summarize(SimSummary& s) {
  const auto n = static_cast<double>(s.root_visits.size());
  if (s.root_visits.empty()) return;
  double sum = 0.0;
  for (const auto v : s.root_visits) sum += static_cast<double>(v);
  s.mean = sum / n;
  double ss = 0.0;
  for (const auto v : s.root_visits) ss += (static_cast<double>(v) - s.mean) * (static_cast<double>(v) - s.mean);
  s.variance = n > 1 ? ss / (n - 1) : 0.0;
  const double half = 1.959963984540054 * std::sqrt(s.variance / n);
  s.ci95_low = s.mean - half;
  s.ci95_high = s.mean + half;
}

double tv_distance(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    total += std::abs(x - y);
  }
  return 0.5 * total;
}

double ks_one_sided(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double ca = 0.0, cb = 0.0, worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ca += i < a.size() ? a[i] : 0.0;
    cb += i < b.size() ? b[i] : 0.0;
    worst = std::max(worst, cb - ca);
  }
  return worst;
}

double ks_critical(std::int64_t n, std::int64_t m, double alpha) {
  if (n < 1 || m < 1 || !(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("bad KS parameters");
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return std::sqrt(-std::log(alpha) / 2.0 * (nn + mm) / (nn * mm));
}

}  // namespace frog
