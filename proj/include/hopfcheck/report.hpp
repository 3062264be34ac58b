#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hopfcheck/scalar.hpp"

namespace hopfcheck {

enum class Status { holds_exact, holds_sampled, fails };
enum class Expect { holds, fails };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::holds_exact: return "holds-exact";
    case Status::holds_sampled: return "holds-sampled";
    case Status::fails: return "fails";
  }
  return "?";
}

inline std::string_view to_string(Expect e) { return e == Expect::holds ? "holds" : "fails"; }

/// Inputs and both sides of a violated identity, as printed coefficients.
struct Witness {
  std::vector<std::vector<std::string>> inputs;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct LawReport {
  std::string law;
  std::string instance;
  Status status = Status::holds_exact;
  std::uint64_t samples = 0;
  std::optional<double> tolerance;
  double max_residual = 0.0;
  std::optional<Witness> witness;
  std::uint64_t seed = 0;
  double duration_ms = 0.0;
  Expect expected = Expect::holds;

  bool holds() const { return status != Status::fails; }
  /// Outcome agrees with the suite's built-in expectation.
  bool met() const { return holds() == (expected == Expect::holds); }
};

/// Result of checking one identity on one input tuple.
struct Check {
  double residual = 0.0;
  bool failed = false;
  std::optional<Witness> witness;
};

template <class S>
Witness make_witness(const std::vector<Vec<S>>& inputs, const Vec<S>& lhs, const Vec<S>& rhs) {
  Witness w;
  for (const auto& x : inputs) w.inputs.push_back(vec::to_strings(x));
  w.lhs = vec::to_strings(lhs);
  w.rhs = vec::to_strings(rhs);
  return w;
}

/// Compares two sides of an identity. Exact scalars must agree exactly;
/// floats must agree within `tolerance` in every coordinate.
template <class S, class Inputs>
Check check_equal(const Vec<S>& lhs, const Vec<S>& rhs, double tolerance, Inputs&& inputs) {
  Check c;
  c.residual = vec::max_abs_diff(lhs, rhs);
  if constexpr (ScalarTraits<S>::exact) {
    c.failed = !vec::exactly_equal(lhs, rhs);
  } else {
    c.failed = !(c.residual <= tolerance);
  }
  if (c.failed) c.witness = make_witness<S>(inputs(), lhs, rhs);
  return c;
}

/// Folds a second identity into an existing check (max residual, first failure wins).
inline void merge_check(Check& into, Check other) {
  into.residual = std::max(into.residual, other.residual);
  if (!into.failed && other.failed) {
    into.failed = true;
    into.witness = std::move(other.witness);
  }
}

struct SampleSummary {
  std::uint64_t count = 0;
  double max_residual = 0.0;
  std::optional<std::uint64_t> first_failure;
  std::optional<Witness> witness;

  void absorb(std::uint64_t index, Check c) {
    ++count;
    max_residual = std::max(max_residual, c.residual);
    if (c.failed && (!first_failure || index < *first_failure)) {
      first_failure = index;
      witness = std::move(c.witness);
    }
  }

  void merge(SampleSummary other) {
    count += other.count;
    max_residual = std::max(max_residual, other.max_residual);
    if (other.first_failure && (!first_failure || *other.first_failure < *first_failure)) {
      first_failure = other.first_failure;
      witness = std::move(other.witness);
    }
  }
};

inline unsigned default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Evaluates fn(i) for i in [0, count) over contiguous chunks on `workers`
/// threads. The merged summary is independent of the worker count: the
/// residual is a max and the reported witness is the lowest failing index.
template <class Fn>
SampleSummary run_samples(std::uint64_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    SampleSummary s;
    for (std::uint64_t i = 0; i < count; ++i) s.absorb(i, fn(i));
    return s;
  }
  const std::uint64_t chunks = std::min<std::uint64_t>(workers, count);
  std::vector<SampleSummary> parts(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::uint64_t w = 0; w < chunks; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t begin = count * w / chunks;
        const std::uint64_t end = count * (w + 1) / chunks;
        try {
          for (std::uint64_t i = begin; i < end; ++i) parts[w].absorb(i, fn(i));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SampleSummary total;
  for (auto& p : parts) total.merge(std::move(p));
  return total;
}

/// Shared knobs for every law check in a suite run.
struct SuiteOptions {
  Mode mode = Mode::exact;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  unsigned workers = 1;
};

/// Accumulates structured (enumerated) and sampled evidence for one law,
/// then produces its LawReport.
class LawRecorder {
 public:
  LawRecorder(std::string law, std::string instance, const SuiteOptions& opts,
              Expect expected = Expect::holds)
      : opts_(opts), start_(std::chrono::steady_clock::now()) {
    report_.law = std::move(law);
    report_.instance = std::move(instance);
    report_.seed = opts.seed;
    report_.expected = expected;
  }

  const SuiteOptions& options() const { return opts_; }
  const std::string& instance() const { return report_.instance; }
  bool failed() const { return witness_.has_value(); }

  void record(Check c) {
    ++structured_;
    report_.max_residual = std::max(report_.max_residual, c.residual);
    if (c.failed && !witness_) witness_ = c.witness ? std::move(c.witness) : Witness{};
  }

  /// Counts inputs that were checked and passed without materialising them.
  void record_passes(std::uint64_t n) { structured_ += n; }

  template <class Fn>
  void sample(std::uint64_t count, Fn&& fn) {
    auto s = run_samples(count, opts_.workers, std::forward<Fn>(fn));
    sampled_ += s.count;
    report_.max_residual = std::max(report_.max_residual, s.max_residual);
    if (s.first_failure && !witness_) witness_ = s.witness ? std::move(s.witness) : Witness{};
  }

  LawReport finish() && {
    report_.samples = structured_ + sampled_;
    if (witness_) {
      report_.status = Status::fails;
      report_.witness = std::move(witness_);
    } else {
      report_.status = opts_.mode == Mode::exact ? Status::holds_exact : Status::holds_sampled;
    }
    if (opts_.mode == Mode::floating) report_.tolerance = opts_.tolerance;
    report_.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  SuiteOptions opts_;
  std::chrono::steady_clock::time_point start_;
  LawReport report_;
  std::optional<Witness> witness_;
  std::uint64_t structured_ = 0;
  std::uint64_t sampled_ = 0;
};

/// Dispatches a mode-generic suite body on the matching scalar type.
template <class Fn>
decltype(auto) with_scalar(Mode mode, Fn&& fn) {
  if (mode == Mode::exact) return fn(Rational{});
  return fn(double{});
}

}  // namespace hopfcheck
