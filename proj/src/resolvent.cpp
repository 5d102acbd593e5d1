#include "collatz/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "collatz/operators.hpp"

namespace collatz {

PhiSpec PhiSpec::delta_at(std::int64_t j) {
  PhiSpec p;
  p.kind = Kind::DeltaAt;
  p.delta_point = j;
  p.growth_degree = 0;
  p.growth_constant = 1;
  p.label = "delta" + std::to_string(j);
  return p;
}

PhiSpec PhiSpec::identity() {
  PhiSpec p;
  p.kind = Kind::Identity;
  p.growth_degree = 1;
  p.growth_constant = 1;
  p.label = "identity";
  return p;
}

PhiSpec PhiSpec::from_function(std::function<Coefficient(const BigInt&)> fn, std::uint32_t l, Rational c,
                               std::string label) {
  if (c <= 0) throw std::invalid_argument("PhiSpec: growth constant must be positive");
  PhiSpec p;
  p.kind = Kind::Custom;
  p.custom = std::move(fn);
  p.growth_degree = l;
  p.growth_constant = std::move(c);
  p.label = std::move(label);
  return p;
}

Coefficient PhiSpec::operator()(const BigInt& n) const {
  switch (kind) {
    case Kind::DeltaAt:
      return n == delta_point ? Coefficient(1) : Coefficient(0);
    case Kind::Identity:
      return Coefficient(Rational(n));
    case Kind::Custom:
      return custom(n);
  }
  return Coefficient(0);
}

BiSeries build_resolvent(const PhiSpec& phi, Degree nz, Degree nw) {
  if (nz < 0 || nw < 0) throw std::invalid_argument("build_resolvent: negative watermark");
  BiSeries out(nz, nw);
  for (std::int64_t n = 0; n <= nz; ++n) {
    BigInt v(static_cast<long>(n));
    for (std::int64_t m = 0; m <= nw; ++m) {
      out.add_term(n, m, phi(v));
      v = collatz_step(v);
    }
  }
  return out;
}

SparseSeries build_resolvent_slice(const PhiSpec& phi, const Coefficient& w0, Degree nz, Degree nw) {
  if (nz < 0 || nw < 0) throw std::invalid_argument("build_resolvent_slice: negative watermark");
  SparseSeries out(nz);
  for (std::int64_t n = 0; n <= nz; ++n) {
    BigInt v(static_cast<long>(n));
    Coefficient sum(0);
    Coefficient wp(1);
    for (std::int64_t m = 0; m <= nw; ++m) {
      sum += phi(v) * wp;
      wp *= w0;
      v = collatz_step(v);
    }
    out.add_term(n, sum);
  }
  return out;
}

SparseSeries phi_hat(const PhiSpec& phi, Degree nz) {
  SparseSeries out(nz);
  for (std::int64_t n = 0; n <= nz; ++n) out.add_term(n, phi(BigInt(static_cast<long>(n))));
  return out;
}

VerificationReport check_resolvent_identity(const PhiSpec& phi, Degree nz, Degree nw,
                                            std::optional<SparseSeries> expected_phi_hat) {
  VerificationReport report;
  report.suite = "resolvent";
  ReportTimer timer(report);
  report.param("phi", phi.name());
  report.param("Nz", std::to_string(nz));
  report.param("Nw", std::to_string(nw));
  report.param("phi_hat", expected_phi_hat ? "supplied" : "from phi");
  if (output_degree(OperatorTag::F, nz) < 1) {
    throw WatermarkError("check_resolvent_identity: Nz too small for one application of F");
  }
  const BiSeries f = build_resolvent(phi, nz, nw);
  const SparseSeries hat = expected_phi_hat ? expected_phi_hat->truncated(nz) : phi_hat(phi, nz);

  auto tag = [](VerificationReport& sub, std::int64_t m) {
    for (auto& w : sub.witnesses) w.location = "w^" + std::to_string(m) + " " + w.location;
  };
  VerificationReport layer0;
  compare_series(layer0, hat, f.layer(0));
  tag(layer0, 0);
  report.absorb(layer0);

  SparseSeries previous = f.layer(0);
  for (std::int64_t m = 1; m <= nw; ++m) {
    const SparseSeries current = f.layer(m);
    VerificationReport row;
    compare_series(row, apply_F(previous), current);
    tag(row, m);
    report.absorb(row);
    previous = current;
  }
  report.note("layer 0 compared with phi^ on [0, Nz]; layer m+1 with F(layer m) on [0, " +
              std::to_string(output_degree(OperatorTag::F, nz)) + "]");
  report.finalize();
  return report;
}

VerificationReport check_delta_closed_form(std::int64_t n_max, std::optional<Degree> nw, std::uint64_t cap) {
  VerificationReport report;
  report.suite = "resolvent/ex1";
  ReportTimer timer(report);
  report.param("n_max", std::to_string(n_max));
  auto table = shared_stopping_table(n_max, cap);
  table->require_resolved(1, n_max);
  std::uint64_t max_sigma = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) max_sigma = std::max(max_sigma, table->value(n));
  const Degree w_degree = nw.value_or(static_cast<Degree>(max_sigma) + 2);
  report.param("Nw", std::to_string(w_degree));

  const BiSeries f = build_resolvent(PhiSpec::delta_at(1), n_max, w_degree);
  const SparseSeries one_minus_w2{{0, Coefficient(1)}, {2, Coefficient(-1)}};
  std::int64_t short_rows = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const std::uint64_t s = table->value(n);
    if (static_cast<Degree>(s) + 2 > w_degree) ++short_rows;
    SparseSeries expected(w_degree);
    expected.add_term(static_cast<std::int64_t>(s), Coefficient(1));
    VerificationReport row;
    compare_series(row, expected, multiply(one_minus_w2, f.slice(n)));
    for (auto& w : row.witnesses) w.location = "z^" + std::to_string(n) + " " + w.location;
    report.absorb(row);
  }
  if (short_rows > 0) {
    report.note(std::to_string(short_rows) + " rows have sigma(n) + 2 > Nw and are checked only up to Nw");
  }
  report.note("n = 0 excluded: T(0) = 0 never reaches 1");
  report.finalize();
  return report;
}

VerificationReport audit_growth(const PhiSpec& phi, std::int64_t n) {
  VerificationReport report;
  report.suite = "resolvent/growth";
  ReportTimer timer(report);
  report.param("phi", phi.name());
  report.param("l", std::to_string(phi.growth_degree));
  report.param("C", rational_to_string(phi.growth_constant));
  report.param("N", std::to_string(n));
  const Real c_sq(Rational(phi.growth_constant * phi.growth_constant));
  double max_ratio = 0.0;
  for (std::int64_t i = 0; i <= n; ++i) {
    const Coefficient value = phi(BigInt(static_cast<long>(i)));
    mpz_class base_pow;
    mpz_ui_pow_ui(base_pow.get_mpz_t(), static_cast<unsigned long>(i + 1), phi.growth_degree);
    const Real bound_sq = c_sq * Real(Rational(base_pow * base_pow));
    const Real mag_sq = value.norm_sq();
    const double ratio = std::sqrt(mag_sq.to_double()) / base_pow.get_d();
    max_ratio = std::max(max_ratio, ratio);
    if (mag_sq > bound_sq) {
      report.fail({"n=" + std::to_string(i), "|phi(n)| <= " + rational_to_string(phi.growth_constant) + "*" +
                                                 base_pow.get_str(),
                   value.to_string()});
    }
  }
  report.cover({0, n});
  report.param("max_ratio", std::to_string(max_ratio));
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

}  // namespace collatz
