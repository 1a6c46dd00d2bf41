// pseudofield: evaluate, solve and verify the shipped local n-pseudofields.
//
//   pseudofield check     --instance affine2 --samples 10000 --mode rational
//   pseudofield eval      --instance moebius3 --x 3 --tuple 2,0.5,-1
//   pseudofield solve     --instance semidirect --n 2 --from 2,0,0,1 --to 2,3,4,5
//   pseudofield roundtrip --instance moebius3 --report out.json
//
// Exit status: 0 on success, 1 when a check fails or a value is undefined,
// 2 on usage errors.

#include "pseudofield.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace {

using namespace pseudofield;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string instance;
  std::optional<int> n;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  double tol = kRelTolerance;
  std::string mode = "float";
  std::string x;
  std::string tuple;
  std::string from;
  std::string to;
  std::string report;
};

InstanceDescriptor descriptor(const Options& opt)
{
  auto kind = parse_instance_name(opt.instance);
  if (!kind)
    throw UsageError("unknown instance '" + opt.instance +
                     "' (expected affine2, moebius3, semidirect or mikhailichenko)");
  if (parameterized(*kind)) {
    if (!opt.n)
      throw UsageError(opt.instance + " needs --n");
    return {*kind, *opt.n};
  }
  if (opt.n)
    throw UsageError(opt.instance + " has a fixed degree; drop --n");
  return *kind == InstanceKind::Affine2 ? InstanceDescriptor::affine2() : InstanceDescriptor::moebius3();
}

template <typename S>
std::vector<S> parse_list(std::string_view text, std::string_view flag)
{
  std::vector<S> out;
  if (text.empty())
    throw UsageError("missing " + std::string(flag));
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto v = ScalarTraits<S>::parse(item);
    if (!v)
      throw UsageError("malformed coordinate '" + std::string(item) + "' in " + std::string(flag));
    out.push_back(*v);
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

template <typename S>
Tuple<S> parse_tuple(const PseudofieldInstance<S>& inst, std::string_view text, std::string_view flag)
{
  auto flat = parse_list<S>(text, flag);
  const std::size_t want = static_cast<std::size_t>(inst.n) * inst.dim;
  if (flat.size() != want)
    throw UsageError(std::string(flag) + " needs " + std::to_string(want) + " values (n = " +
                     std::to_string(inst.n) + ", dim = " + std::to_string(inst.dim) + ", row-major)");
  return unflatten<S>(flat, inst.dim);
}

template <typename S>
Element<S> parse_element(const PseudofieldInstance<S>& inst, std::string_view text, std::string_view flag)
{
  auto flat = parse_list<S>(text, flag);
  if (flat.size() != inst.dim)
    throw UsageError(std::string(flag) + " needs " + std::to_string(inst.dim) + " values");
  return Element<S>(std::move(flat));
}

int emit_report(const CheckReport& report, const Options& opt)
{
  const std::string json = serialize(report);
  if (opt.report.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(opt.report, std::ios::binary);
    if (!out)
      throw UsageError("cannot write report to '" + opt.report + "'");
    out << json;
    std::size_t failed = 0;
    for (const auto& e : report.checks)
      failed += report.entry_passes(e) ? 0 : 1;
    std::cout << report.instance << " n=" << report.n << " " << to_string(report.mode) << ": "
              << (report.pass() ? "pass" : "FAIL") << " (" << report.checks.size() - failed << "/"
              << report.checks.size() << " checks)\n";
  }
  return report.pass() ? 0 : kExitFail;
}

template <typename T>
int print_value(const Partial<T>& value)
{
  if (!value) {
    std::cerr << "undefined: " << to_string(value.reason()) << "\n";
    return kExitFail;
  }
  std::cout << to_string(*value) << "\n";
  return 0;
}

template <typename S>
int run(const Options& opt)
{
  const auto inst = make_instance<S>(descriptor(opt));
  SampleConfig cfg;
  cfg.seed = opt.seed;
  cfg.samples = opt.samples;
  cfg.tolerance = opt.tol;

  if (opt.command == "check") {
    auto report = check_pseudofield_axioms(inst, cfg);
    report.append(check_lemma_identities(inst, cfg));
    report.append(check_group_axioms(inst, cfg));
    report.append(check_sharp_transitivity(inst, cfg));
    if (inst.commutative)
      report.append(check_classical(inst, cfg));
    return emit_report(report, opt);
  }
  if (opt.command == "roundtrip")
    return emit_report(roundtrip_check(inst, cfg), opt);
  if (opt.command == "eval") {
    const auto x = parse_element(inst, opt.x, "--x");
    const auto ys = parse_tuple(inst, opt.tuple, "--tuple");
    return print_value(act(inst, x, ys));
  }
  const auto X = parse_tuple(inst, opt.from, "--from");
  const auto Y = parse_tuple(inst, opt.to, "--to");
  return print_value(solve_transitive(make_group_oracle(inst), X, Y));
}

} // namespace

int main(int argc, char** argv)
{
  Options opt;
  CLI::App app{"Local n-pseudofields and their locally sharply n-transitive groups"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--instance", opt.instance, "affine2 | moebius3 | semidirect | mikhailichenko")->required();
    sub->add_option("--n", opt.n, "degree (semidirect, mikhailichenko only)")->check(CLI::Range(2, 64));
    sub->add_option("--mode", opt.mode, "scalar backend")->check(CLI::IsMember({"float", "rational"}));
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option("--samples", opt.samples, "samples per check")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "sampling seed");
    sub->add_option("--tol", opt.tol, "float-mode relative tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--report", opt.report, "write the JSON report here instead of stdout");
  };

  auto* check = app.add_subcommand("check", "run all verification suites");
  common(check);
  sampling(check);
  auto* roundtrip = app.add_subcommand("roundtrip", "extract a pseudofield from the group action and compare");
  common(roundtrip);
  sampling(roundtrip);
  auto* eval = app.add_subcommand("eval", "print x . [ys]");
  common(eval);
  eval->add_option("--x", opt.x, "point, comma-separated coordinates")->required();
  eval->add_option("--tuple", opt.tuple, "n points, row-major")->required();
  auto* solve = app.add_subcommand("solve", "print the g with from . g = to");
  common(solve);
  solve->add_option("--from", opt.from, "n points, row-major")->required();
  solve->add_option("--to", opt.to, "n points, row-major")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  opt.command = app.get_subcommands().front()->get_name();

  try {
    return opt.mode == "rational" ? run<Rational>(opt) : run<double>(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
