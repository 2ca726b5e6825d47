#pragma once

#include "randrk/stability.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace randrk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 20240517ULL;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses "1/8", "0.125", "-3" etc.; fractions are divided in double.
// Throws UsageError on malformed input.
double parse_real(const std::string& text);

// Renders h as "p-q" when it is a ratio of small integers (1/8 -> "1-8"),
// otherwise with 17 significant digits.
std::string fraction_tag(double h);

struct ProblemSpec {
  std::string id = "dahlquist";  // dahlquist | dahlquist-complex | stiff | holder | holder-point | zero
  double lambda = -2.0;
  double lambda_im = 0.0;
  double rho = 0.5;
  double c = 0.5;
  int terms = 14;

  bool operator==(const ProblemSpec&) const = default;
};

struct RunConfig {
  std::string command;  // integrate | converge | stability | stiff-demo

  ProblemSpec problem;
  std::string scheme = "s2";
  std::optional<double> a;
  std::optional<double> b;
  std::optional<long long> n;
  std::optional<std::string> h;
  std::optional<std::uint64_t> seed;
  std::optional<double> tau_fixed;

  // stage solver
  std::string solver = "picard";
  double tol = 1e-12;
  int max_iter = 100;
  bool lipschitz_guard = true;

  // converge
  std::size_t paths = 2000;
  double p = 2.0;
  int levels = 6;
  std::string h0 = "1/16";
  std::vector<std::string> h_list;
  std::optional<double> rate;

  // stability
  std::string mode = "region";
  std::string functional = "ms";
  stability::Rect window;
  int nx = 701;
  int ny = 801;
  double re = 0.0;
  double im = 0.0;
  bool svg = false;
  bool allow_empty = false;

  // stiff-demo
  std::vector<std::string> schemes;
  std::size_t expl_paths = 1;  // rand-expl-rk2 only reproduces the blow-up

  std::string out_dir = ".";
  std::string output;  // integrate: trajectory CSV path (default <out_dir>/trajectory.csv)

  bool operator==(const RunConfig&) const = default;
};

// Parses and validates; throws UsageError. Returns nullopt after printing
// help for --help (help text goes to `out`).
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

// Inverse of parse_args for the fields relevant to cfg.command.
std::vector<std::string> to_args(const RunConfig& cfg);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + execute with exit codes 0 / 1 (numerical) / 2 (usage).
// args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace randrk::cli
