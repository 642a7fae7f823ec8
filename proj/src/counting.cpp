#include "qflab/counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <thread>
#include <unordered_map>

namespace qflab {

namespace {

constexpr int kMaxComponents = 10;  // n (n + 1) / 2 for n <= 4
constexpr double kDenseEntryLimit = 5.0e8;

using Components = std::array<std::uint32_t, kMaxComponents>;
using Wide = unsigned __int128;

struct Contribution {
  Components c{};
  std::uint64_t weight = 1;
};

// Everything the enumerators need, reduced modulo q = p^t.
struct Reduced {
  std::uint64_t q = 0;
  int m = 0;
  int n = 0;
  int d = 0;  // independent entries of an n x n symmetric matrix
  std::vector<std::uint64_t> s;
  Components target{};
};

Reduced reduce(const CountJob& job) {
  Reduced r;
  r.q = integer_pow(job.p.value(), static_cast<unsigned>(job.t)).convert_to<std::uint64_t>();
  r.m = job.m();
  r.n = job.n();
  r.d = r.n * (r.n + 1) / 2;
  for (const auto& x : job.s) r.s.push_back(reduce_mod(x, r.q));
  int k = 0;
  for (int a = 0; a < r.n; ++a)
    for (int b = a; b < r.n; ++b) r.target[k++] = static_cast<std::uint32_t>(reduce_mod(job.T(a, b), r.q));
  return r;
}

// Gram contributions s * row row^t of every row vector in (Z/q)^n.
std::vector<Contribution> row_contributions(const Reduced& r, std::uint64_t s) {
  std::vector<Contribution> out;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(r.n), 0);
  while (true) {
    Contribution c;
    int k = 0;
    for (int a = 0; a < r.n; ++a)
      for (int b = a; b < r.n; ++b)
        c.c[k++] = static_cast<std::uint32_t>(static_cast<Wide>(s) * row[a] % r.q * row[b] % r.q);
    out.push_back(c);
    int i = 0;
    while (i < r.n && ++row[i] == r.q) row[i++] = 0;
    if (i == r.n) break;
  }
  return out;
}

// Merges equal contributions, summing their multiplicities.
std::vector<Contribution> compress(std::vector<Contribution> v) {
  std::sort(v.begin(), v.end(), [](const Contribution& x, const Contribution& y) { return x.c < y.c; });
  std::vector<Contribution> out;
  for (const auto& x : v) {
    if (!out.empty() && out.back().c == x.c) out.back().weight += x.weight;
    else out.push_back(x);
  }
  return out;
}

inline void add_into(Components& acc, const Components& x, int d, std::uint64_t q) {
  for (int k = 0; k < d; ++k) {
    std::uint64_t v = static_cast<std::uint64_t>(acc[k]) + x[k];
    acc[k] = static_cast<std::uint32_t>(v >= q ? v - q : v);
  }
}

inline Components difference(const Components& target, const Components& x, int d, std::uint64_t q) {
  Components out{};
  for (int k = 0; k < d; ++k) out[k] = static_cast<std::uint32_t>(target[k] >= x[k] ? target[k] - x[k] : target[k] + q - x[k]);
  return out;
}

inline std::uint64_t pack(const Components& c, int d, std::uint64_t q) {
  std::uint64_t key = 0;
  for (int k = d - 1; k >= 0; --k) key = key * q + c[k];
  return key;
}

inline std::string pack_bytes(const Components& c, int d) {
  std::string key(static_cast<std::size_t>(d) * sizeof(std::uint32_t), '\0');
  std::memcpy(key.data(), c.data(), key.size());
  return key;
}

// Visits every combination of one contribution per list, with accumulated sum
// and weight product.
template <typename Visit>
void enumerate_combinations(const std::vector<const std::vector<Contribution>*>& lists, std::size_t level,
                            const Components& partial, std::uint64_t weight, int d, std::uint64_t q,
                            Visit&& visit) {
  if (level == lists.size()) {
    visit(partial, weight);
    return;
  }
  for (const auto& c : *lists[level]) {
    Components next = partial;
    add_into(next, c.c, d, q);
    enumerate_combinations(lists, level + 1, next, weight * c.weight, d, q, visit);
  }
}

unsigned worker_count(const CountOptions& options) {
  unsigned n = options.threads ? options.threads : std::thread::hardware_concurrency();
  return std::max(1U, n);
}

Integer to_integer(Wide x) {
  Integer hi = static_cast<std::uint64_t>(x >> 64);
  Integer lo = static_cast<std::uint64_t>(x);
  return (hi << 64) + lo;
}

Integer count_naive(const Reduced& r) {
  std::vector<std::vector<Contribution>> rows;
  for (auto s : r.s) rows.push_back(row_contributions(r, s));
  std::vector<const std::vector<Contribution>*> lists;
  for (const auto& v : rows) lists.push_back(&v);
  Wide total = 0;
  enumerate_combinations(lists, 0, Components{}, 1, r.d, r.q, [&](const Components& sum, std::uint64_t) {
    bool ok = true;
    for (int k = 0; k < r.d && ok; ++k) ok = sum[k] == r.target[k];
    if (ok) ++total;
  });
  return to_integer(total);
}

// Streams the second half against a lookup, splitting the outermost list over workers.
template <typename Lookup>
Wide stream_half(const Reduced& r, const std::vector<const std::vector<Contribution>*>& lists, Lookup&& lookup,
                 unsigned workers) {
  const auto visit_leaf = [&](Wide& acc) {
    return [&r, &lookup, out = &acc](const Components& sum, std::uint64_t weight) {
      const std::uint64_t hits = lookup(difference(r.target, sum, r.d, r.q));
      if (hits) *out += static_cast<Wide>(hits) * weight;
    };
  };
  if (lists.empty()) {
    Wide acc = 0;
    visit_leaf(acc)(Components{}, 1);
    return acc;
  }
  const auto& outer = *lists.front();
  const std::vector<const std::vector<Contribution>*> inner(lists.begin() + 1, lists.end());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(outer.size()));
  std::vector<Wide> partial(workers, 0);
  const auto work = [&](unsigned w) {
    Wide acc = 0;
    auto leaf = visit_leaf(acc);
    for (std::size_t i = w; i < outer.size(); i += workers) {
      enumerate_combinations(inner, 0, outer[i].c, outer[i].weight, r.d, r.q, leaf);
    }
    partial[w] = acc;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  Wide total = 0;
  for (auto x : partial) total += x;
  return total;
}

template <typename CountT>
Wide mitm_dense(const Reduced& r, const std::vector<const std::vector<Contribution>*>& left,
                const std::vector<const std::vector<Contribution>*>& right, std::uint64_t key_space, unsigned workers) {
  std::vector<CountT> table(key_space, 0);
  enumerate_combinations(left, 0, Components{}, 1, r.d, r.q, [&](const Components& sum, std::uint64_t weight) {
    table[pack(sum, r.d, r.q)] += static_cast<CountT>(weight);
  });
  return stream_half(
      r, right, [&](const Components& need) -> std::uint64_t { return table[pack(need, r.d, r.q)]; }, workers);
}

Wide mitm_word_hash(const Reduced& r, const std::vector<const std::vector<Contribution>*>& left,
                    const std::vector<const std::vector<Contribution>*>& right, unsigned workers) {
  std::unordered_map<std::uint64_t, std::uint64_t> table;
  enumerate_combinations(left, 0, Components{}, 1, r.d, r.q, [&](const Components& sum, std::uint64_t weight) {
    table[pack(sum, r.d, r.q)] += weight;
  });
  return stream_half(
      r, right,
      [&](const Components& need) -> std::uint64_t {
        const auto it = table.find(pack(need, r.d, r.q));
        return it == table.end() ? 0 : it->second;
      },
      workers);
}

Wide mitm_byte_hash(const Reduced& r, const std::vector<const std::vector<Contribution>*>& left,
                    const std::vector<const std::vector<Contribution>*>& right, unsigned workers) {
  std::unordered_map<std::string, std::uint64_t> table;
  enumerate_combinations(left, 0, Components{}, 1, r.d, r.q, [&](const Components& sum, std::uint64_t weight) {
    table[pack_bytes(sum, r.d)] += weight;
  });
  return stream_half(
      r, right,
      [&](const Components& need) -> std::uint64_t {
        const auto it = table.find(pack_bytes(need, r.d));
        return it == table.end() ? 0 : it->second;
      },
      workers);
}

Integer count_mitm(const Reduced& r, unsigned workers) {
  // rows with equal diagonal entries share one compressed contribution list
  std::vector<std::pair<std::uint64_t, std::vector<Contribution>>> cache;
  std::vector<const std::vector<Contribution>*> lists;
  cache.reserve(r.s.size());
  for (auto s : r.s) {
    auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& e) { return e.first == s; });
    if (it == cache.end()) {
      cache.emplace_back(s, compress(row_contributions(r, s)));
      it = cache.end() - 1;
    }
    lists.push_back(&it->second);
  }
  const auto half = static_cast<std::size_t>(r.m / 2);
  const std::vector<const std::vector<Contribution>*> left(lists.begin(), lists.begin() + static_cast<long>(half));
  const std::vector<const std::vector<Contribution>*> right(lists.begin() + static_cast<long>(half), lists.end());

  const double key_space = std::pow(static_cast<double>(r.q), r.d);
  // left weights sum to q^{n * half}
  const double left_total = std::pow(static_cast<double>(r.q), static_cast<double>(r.n) * static_cast<double>(half));

  Wide total;
  if (key_space <= kDenseEntryLimit) {
    const auto size = static_cast<std::uint64_t>(key_space);
    total = left_total < 4.0e9 ? mitm_dense<std::uint32_t>(r, left, right, size, workers)
                               : mitm_dense<std::uint64_t>(r, left, right, size, workers);
  } else if (key_space < 1.8e19) {
    total = mitm_word_hash(r, left, right, workers);
  } else {
    total = mitm_byte_hash(r, left, right, workers);
  }
  return to_integer(total);
}

}  // namespace

Strategy parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::naive;
  if (name == "mitm") return Strategy::mitm;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(Strategy s) { return s == Strategy::naive ? "naive" : "mitm"; }

void CountJob::validate() const {
  require_symmetric(T);
  if (n() < 1 || n() > 4) throw std::invalid_argument("target rank must be between 1 and 4");
  if (m() < n()) throw std::invalid_argument("need at least as many rows as the target rank");
  if (t < 1) throw std::invalid_argument("modulus exponent t must be >= 1");
  for (const auto& x : s)
    if (!is_p_integral(x, p)) throw std::invalid_argument("diagonal entries must be p-integral");
  if (!is_p_integral(T, p)) throw std::invalid_argument("target must be p-integral");
  const double q = std::pow(static_cast<double>(p.value()), t);
  if (q >= 4.0e9) throw std::invalid_argument("p^t must fit in 32 bits");
}

double CountOptions::default_state_budget() {
  if (const char* env = std::getenv("QFLAB_STATE_BUDGET")) {
    try {
      const double v = std::stod(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 2.0e9;
}

BudgetExceeded::BudgetExceeded(double estimated, double budget)
    : std::runtime_error("enumeration of ~" + std::to_string(estimated) + " states exceeds budget " +
                         std::to_string(budget) + " (set QFLAB_STATE_BUDGET to raise it)"),
      estimated_(estimated),
      budget_(budget) {}

double estimated_states(const CountJob& job) {
  const double q = std::pow(static_cast<double>(job.p.value()), job.t);
  const double n = job.n();
  if (job.strategy == Strategy::naive) return std::pow(q, n * job.m());
  const int half = job.m() / 2;
  return std::pow(q, n * half) + std::pow(q, n * (job.m() - half));
}

Integer count_solutions(const CountJob& job, const CountOptions& options) {
  job.validate();
  const double cost = estimated_states(job);
  if (cost > options.state_budget) throw BudgetExceeded(cost, options.state_budget);
  const Reduced r = reduce(job);
  return job.strategy == Strategy::naive ? count_naive(r) : count_mitm(r, worker_count(options));
}

int normalization_exponent(int m, int n) { return m * n - n * (n + 1) / 2; }

DensityResult normalized_count(const CountJob& job, const CountOptions& options) {
  DensityResult out;
  out.raw_count = count_solutions(job, options);
  out.t_used = job.t;
  out.exponent = normalization_exponent(job.m(), job.n());
  out.value = Rational(out.raw_count) * rational_pow(Rational(job.p.value()), -job.t * out.exponent);
  out.table.emplace_back(job.t, out.value);
  return out;
}

NotStabilized::NotStabilized(std::vector<std::pair<int, Rational>> table)
    : std::runtime_error([&] {
        std::string msg = "density did not stabilize; partial table:";
        for (const auto& [t, v] : table) msg += " t=" + std::to_string(t) + ":" + qflab::to_string(v);
        return msg;
      }()),
      table_(std::move(table)) {}

DensityResult density_oracle(const std::vector<Rational>& s, const SymMat& T, OddPrime p,
                             const OracleOptions& options) {
  if (!is_nonsingular(T)) throw std::invalid_argument("density oracle requires nonsingular T");
  const int t_start = options.t_start.value_or(jordan_diagonalize(T, p).max_exponent() + 1);
  const int t_max = options.t_max.value_or(t_start + 2);

  std::vector<std::pair<int, Rational>> table;
  DensityResult last;
  int agreed_at = -1;
  for (int t = t_start; t <= t_max; ++t) {
    CountJob job{s, T, p, t, options.strategy};
    DensityResult r = normalized_count(job, options.count);
    table.emplace_back(t, r.value);
    const bool agrees = t > t_start && r.value == last.value;
    last = std::move(r);
    if (agreed_at >= 0) {
      if (!agrees) throw NotStabilized(table);
      break;  // confirmed
    }
    if (agrees) {
      agreed_at = t;
      if (!options.confirm) break;
    }
  }
  if (agreed_at < 0 || (options.confirm && table.back().first == agreed_at)) throw NotStabilized(table);
  last.stabilized = true;
  last.table = std::move(table);
  return last;
}

}  // namespace qflab
