#include "galelab/gale.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace galelab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_boundary_length(std::size_t len) {
  // lengths 2^{n+1}-1: one less than a power of two, excluding the empty prefix
  return len > 0 && ((len + 1) & len) == 0;
}

class StatelessCursor final : public BetCursor {
public:
  StatelessCursor(std::function<Rational(const BitString&)> bet_one, BitString prefix)
      : bet_one_(std::move(bet_one)), prefix_(std::move(prefix)) {}

  Rational fraction_one() override { return bet_one_(prefix_); }
  void advance(int bit) override { prefix_.push_back(bit); }
  std::unique_ptr<BetCursor> clone() const override {
    return std::make_unique<StatelessCursor>(bet_one_, prefix_);
  }

private:
  std::function<Rational(const BitString&)> bet_one_;
  BitString prefix_;
};

void check_fraction(const Rational& pi_one) {
  if (pi_one < 0 || pi_one > 1)
    throw_error(ErrorKind::Contract, "betting fraction outside [0,1]: " + format_rational(pi_one));
}

std::string format_double(double v) {
  if (v == kNegInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

BettingStrategy::BettingStrategy(Rational s, CursorFactory make_cursor)
    : s_(std::move(s)), make_cursor_(std::move(make_cursor)) {
  if (s_ < 0) throw_error(ErrorKind::Domain, "rate s must be >= 0");
}

BettingStrategy BettingStrategy::from_function(Rational s,
                                               std::function<Rational(const BitString&)> bet_one) {
  auto factory = [bet_one = std::move(bet_one)]() -> std::unique_ptr<BetCursor> {
    return std::make_unique<StatelessCursor>(bet_one, BitString{});
  };
  return BettingStrategy(std::move(s), std::move(factory));
}

Rational BettingStrategy::fraction_one(const BitString& prefix) const {
  auto cur = cursor();
  for (std::size_t i = 0; i < prefix.size(); ++i) cur->advance(prefix[i]);
  Rational pi = cur->fraction_one();
  check_fraction(pi);
  return pi;
}

CapitalTrace::CapitalTrace(std::vector<TraceSample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw_error(ErrorKind::Domain, "empty capital trace");
  running_max_ = kNegInf;
  for (const auto& s : samples_) running_max_ = std::max(running_max_, s.log2_capital);
}

std::vector<TraceSample> CapitalTrace::boundary_samples() const {
  std::vector<TraceSample> out;
  for (const auto& s : samples_)
    if (s.is_block_boundary) out.push_back(s);
  return out;
}

std::string CapitalTrace::to_csv() const {
  std::string out = "prefix_len,log2_capital,is_block_boundary\n";
  for (const auto& s : samples_) {
    out += std::to_string(s.prefix_len);
    out += ',';
    out += format_double(s.log2_capital);
    out += ',';
    out += s.is_block_boundary ? '1' : '0';
    out += '\n';
  }
  return out;
}

ExtensionalGale::ExtensionalGale(Rational s, unsigned depth, std::vector<Rational> table)
    : s_(std::move(s)), depth_(depth), table_(std::move(table)) {
  if (s_ < 0) throw_error(ErrorKind::Domain, "rate s must be >= 0");
  if (depth_ > kMaxFreezeDepth) throw_error(ErrorKind::Budget, "extensional gale depth above 16");
}

std::size_t ExtensionalGale::node_index(const BitString& w) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) idx = 2 * idx + 1 + w[i];
  return idx;
}

const Rational& ExtensionalGale::martingale(const BitString& w) const {
  if (w.size() > depth_) throw_error(ErrorKind::Domain, "prefix deeper than gale table");
  const std::size_t idx = node_index(w);
  if (idx >= table_.size()) throw_error(ErrorKind::Incomplete, "gale table missing entry");
  return table_[idx];
}

double ExtensionalGale::log2_value(const BitString& w) const {
  const Rational& m = martingale(w);
  if (m == 0) return kNegInf;
  const double rate_term = (to_bigfloat(s_).convert_to<double>() - 1.0) * static_cast<double>(w.size());
  return rate_term + log2_rational(m);
}

CapitalTrace evaluate(const BettingStrategy& strategy, const BitString& bits, std::size_t budget) {
  if (bits.size() > budget)
    throw_error(ErrorKind::Budget, "prefix length " + std::to_string(bits.size()) +
                                       " exceeds evaluation budget " + std::to_string(budget));
  const double s = to_bigfloat(strategy.rate()).convert_to<double>();
  std::vector<TraceSample> samples;
  samples.reserve(bits.size() + 1);
  samples.push_back({0, 0.0, false});
  double logcap = 0.0;
  auto cur = strategy.cursor();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const Rational pi_one = cur->fraction_one();
    check_fraction(pi_one);
    if (logcap != kNegInf) {
      const Rational pi = bits[i] ? pi_one : Rational(1) - pi_one;
      logcap = (pi == 0) ? kNegInf : logcap + s + log2_rational(pi);
    }
    cur->advance(bits[i]);
    samples.push_back({i + 1, logcap, is_boundary_length(i + 1)});
  }
  return CapitalTrace(std::move(samples));
}

CapitalTrace evaluate_frozen(const ExtensionalGale& gale, const BitString& bits) {
  if (bits.size() > gale.depth())
    throw_error(ErrorKind::Budget, "prefix deeper than frozen table");
  std::vector<TraceSample> samples;
  samples.reserve(bits.size() + 1);
  for (std::size_t len = 0; len <= bits.size(); ++len)
    samples.push_back({len, gale.log2_value(bits.prefix(len)), is_boundary_length(len)});
  return CapitalTrace(std::move(samples));
}

namespace {

void freeze_node(BetCursor& cur, std::vector<Rational>& table, std::size_t idx, unsigned depth_left) {
  if (depth_left == 0) return;
  const Rational pi_one = cur.fraction_one();
  check_fraction(pi_one);
  const Rational& m = table[idx];
  table[2 * idx + 1] = 2 * (Rational(1) - pi_one) * m;
  table[2 * idx + 2] = 2 * pi_one * m;
  auto left = cur.clone();
  left->advance(0);
  freeze_node(*left, table, 2 * idx + 1, depth_left - 1);
  cur.advance(1);
  freeze_node(cur, table, 2 * idx + 2, depth_left - 1);
}

}  // namespace

ExtensionalGale freeze(const BettingStrategy& strategy, unsigned depth) {
  if (depth > kMaxFreezeDepth)
    throw_error(ErrorKind::Budget, "freeze depth " + std::to_string(depth) + " above 16");
  std::vector<Rational> table((std::size_t{2} << depth) - 1);
  table[0] = 1;
  auto cur = strategy.cursor();
  freeze_node(*cur, table, 0, depth);
  return ExtensionalGale(strategy.rate(), depth, std::move(table));
}

MartingaleReport verify_martingale_identity(const ExtensionalGale& gale) {
  const std::size_t expected = (std::size_t{2} << gale.depth()) - 1;
  if (gale.table_size() != expected)
    throw_error(ErrorKind::Incomplete, "gale table has " + std::to_string(gale.table_size()) +
                                           " entries, expected " + std::to_string(expected));
  // breadth-first over internal nodes so the first violation is the shallowest
  for (unsigned len = 0; len < gale.depth(); ++len) {
    const std::uint64_t count = std::uint64_t{1} << len;
    for (std::uint64_t i = 0; i < count; ++i) {
      const BitString w = BitString::from_index(len, i);
      BitString w0 = w, w1 = w;
      w0.push_back(0);
      w1.push_back(1);
      if (gale.martingale(w0) + gale.martingale(w1) != 2 * gale.martingale(w)) {
        return {false, w.to_string(),
                "martingale identity fails at prefix '" + w.to_string() + "'"};
      }
    }
  }
  return {true, "", "all " + std::to_string(expected) + " table entries consistent"};
}

double growth_exponent(const CapitalTrace& trace) {
  const auto slopes = boundary_slopes(trace);
  return slopes.back();
}

std::vector<double> boundary_slopes(const CapitalTrace& trace) {
  std::vector<double> out;
  for (const auto& s : trace.samples())
    if (s.is_block_boundary)
      out.push_back(s.log2_capital / static_cast<double>(s.prefix_len));
  if (out.size() < 2)
    throw_error(ErrorKind::Domain, "trace needs at least two block boundaries");
  return out;
}

}  // namespace galelab
