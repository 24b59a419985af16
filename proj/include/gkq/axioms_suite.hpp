// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_AXIOMS_SUITE_HPP
#define GKQ_AXIOMS_SUITE_HPP

#include <array>
#include <cstdint>
#include <string>

namespace gkq {

/// closed: constant 3-form plus dB; nonclosed: x4 dx1^dx2^dx3; zero: H = 0.
enum class Twist { Closed, Nonclosed, Zero };
Twist parse_twist(const std::string& s);
const char* to_string(Twist t);

struct AxiomSuiteConfig {
  std::uint64_t seed = 0;
  Twist twist = Twist::Closed;
  int samples = 100;
  int curvature_samples = 50;
  int degree = 3;
  double axiom_tol = 1e-8;
  double curvature_tol = 1e-9;
};

struct AxiomSuiteReport {
  AxiomSuiteConfig config;
  std::array<double, 5> axioms{};  // max C1..C5
  double curvature = 0.0;          // max |<[[nX,nY]],nZ> - (H0 + dB)(X,Y,Z)|
  double b_transform = 0.0;        // max |[[e^B a, e^B b]]_H - e^B [[a, b]]_{H+dB}|
  double closed_kernel = 0.0;      // max |[[df, e]]|
  double open_kernel = 0.0;        // min |[[xi, e]]| over non-closed xi (must be > 0)
  bool pass = false;
};

AxiomSuiteReport run_axiom_suite(const AxiomSuiteConfig& config);
std::string summary(const AxiomSuiteReport& report);

}  // namespace gkq

#endif  // GKQ_AXIOMS_SUITE_HPP
