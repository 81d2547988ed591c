#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmalib {

using u64 = std::uint64_t;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NormalityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when two independently computed routes disagree; always a bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

u64 checked_mul(u64 a, u64 b);
u64 checked_pow(u64 base, u64 exp);

// Prime-exponent map; empty means 1.
using Factorization = std::map<u64, unsigned>;

bool is_prime(u64 n);
Factorization factorize(u64 n);
void factorize_into(u64 n, Factorization &out);
u64 unfactor(const Factorization &f);
std::vector<u64> divisors_sorted(u64 n);
u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
u64 pow_mod(u64 base, u64 exp, u64 mod);
unsigned multiplicative_order(u64 k, u64 n);  // order of k in (Z/n)*, gcd(k,n)=1

// 128-bit content hash, used for element and coset dedup at scales where a
// 64-bit birthday collision would silently corrupt results.
struct Hash128 {
  u64 lo = 0, hi = 0;
  bool operator==(const Hash128 &o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const Hash128 &o) const {
    return hi != o.hi ? hi < o.hi : lo < o.lo;
  }
};

struct Hash128Hasher {
  std::size_t operator()(const Hash128 &h) const {
    return static_cast<std::size_t>(h.lo ^ (h.hi * 0x9e3779b97f4a7c15ULL));
  }
};

Hash128 hash_words(const std::uint32_t *data, std::size_t n);

// Search limits. All exhaustive paths are guarded by one of these and report
// Undecided instead of silently degrading.
struct CapConfig {
  u64 subgroup_cap = 5000;          // max |G| for full subgroup enumeration
  u64 element_cap = 2'000'000;      // max |G| for element streaming
  u64 index_cap = 200'000;          // max index for coset actions
  u64 backtrack_node_budget = 10'000'000;
  unsigned kmax = 6;                // Robinson component subset loop bound
  unsigned max_degree = 4096;       // realization degree bound
  u64 seed = 0;                     // sampling order only, never results
};

class Verdict {
 public:
  enum class State { Yes, No, Undecided };

  static Verdict yes(std::string witness = {}) {
    return Verdict(State::Yes, {}, std::move(witness));
  }
  static Verdict no(std::string reason = {}, std::string witness = {}) {
    return Verdict(State::No, std::move(reason), std::move(witness));
  }
  static Verdict undecided(std::string reason) {
    return Verdict(State::Undecided, std::move(reason), {});
  }
  static Verdict of(bool b, std::string reason_if_no = {}) {
    return b ? yes() : no(std::move(reason_if_no));
  }

  State state() const { return state_; }
  bool is_yes() const { return state_ == State::Yes; }
  bool is_no() const { return state_ == State::No; }
  bool decided() const { return state_ != State::Undecided; }
  const std::string &reason() const { return reason_; }
  const std::string &witness() const { return witness_; }

  bool agrees_with(const Verdict &o) const {
    return !decided() || !o.decided() || state_ == o.state_;
  }
  bool same_state(const Verdict &o) const { return state_ == o.state_; }

  // Conjunction: No dominates, then Undecided, then Yes.
  Verdict operator&&(const Verdict &o) const {
    if (is_no()) return *this;
    if (o.is_no()) return o;
    if (!decided()) return *this;
    if (!o.decided()) return o;
    return yes();
  }

  std::string str() const {
    switch (state_) {
      case State::Yes: return "yes";
      case State::No: return reason_.empty() ? "no" : "no(" + reason_ + ")";
      default: return "undecided(" + reason_ + ")";
    }
  }

 private:
  Verdict(State s, std::string reason, std::string witness)
      : state_(s), reason_(std::move(reason)), witness_(std::move(witness)) {}
  State state_;
  std::string reason_;
  std::string witness_;
};

inline const char *cap_exceeded = "capExceeded";

// Deterministic RNG wrapper; the seed only permutes internal sampling order.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed ^ 0x6a09e667f3bcc908ULL) {}
  u64 next() { return eng_(); }
  u64 below(u64 n) { return n <= 1 ? 0 : eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sigmalib
