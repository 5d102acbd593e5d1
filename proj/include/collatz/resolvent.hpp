#pragma once

// F^phi(z, w) = sum_{n, m >= 0} phi(T^m(n)) z^n w^m, formally (I - wF)^{-1} phi^.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "collatz/coefficient.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/report.hpp"
#include "collatz/series.hpp"

namespace collatz {

struct PhiSpec {
  enum class Kind { DeltaAt, Identity, Custom };

  Kind kind = Kind::DeltaAt;
  std::int64_t delta_point = 1;
  std::function<Coefficient(const BigInt&)> custom;
  /// Declared growth |phi(n)| <= C (n+1)^l.
  std::uint32_t growth_degree = 0;
  Rational growth_constant = Rational(1);
  std::string label = "delta1";

  static PhiSpec delta_at(std::int64_t j);
  /// phi(n) = n, declared with l = 1, C = 1.
  static PhiSpec identity();
  static PhiSpec from_function(std::function<Coefficient(const BigInt&)> fn, std::uint32_t l, Rational c,
                               std::string label = "custom");

  Coefficient operator()(const BigInt& n) const;
  std::string name() const { return label; }
};

/// Coefficients phi(T^m(n)) on the rectangle n <= nz, m <= nw.
BiSeries build_resolvent(const PhiSpec& phi, Degree nz, Degree nw);

/// sum_n (sum_{m <= nw} phi(T^m(n)) w0^m) z^n, watermark nz.
SparseSeries build_resolvent_slice(const PhiSpec& phi, const Coefficient& w0, Degree nz, Degree nw);

/// phi^ = sum_{n <= nz} phi(n) z^n.
SparseSeries phi_hat(const PhiSpec& phi, Degree nz);

/// F - w F_z F - phi^ = 0 on the authoritative rectangle, layer by layer:
/// layer 0 against phi^ and layer m+1 against F applied to layer m. When
/// expected_phi_hat is given it replaces the phi^ built from phi.
VerificationReport check_resolvent_identity(const PhiSpec& phi, Degree nz, Degree nw,
                                            std::optional<SparseSeries> expected_phi_hat = std::nullopt);

/// (1 - w^2) * (z^n-slice of F^{delta_1}) = w^{sigma(n)} for 1 <= n <= n_max.
/// Without nw the w-watermark is max sigma + 2 over the range.
VerificationReport check_delta_closed_form(std::int64_t n_max, std::optional<Degree> nw = std::nullopt,
                                           std::uint64_t cap = default_cap());

/// |phi(n)| <= C (n+1)^l for 0 <= n <= N; reports the largest ratio.
VerificationReport audit_growth(const PhiSpec& phi, std::int64_t n);

}  // namespace collatz
