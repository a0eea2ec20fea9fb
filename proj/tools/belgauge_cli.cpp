// belgauge command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 input error, 2 invariant or verification failure.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "belgauge/belgauge.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;

struct StateDeleter {
  void operator()(bg_state* s) const { bg_state_destroy(s); }
};
struct ConfigDeleter {
  void operator()(bg_config* c) const { bg_config_destroy(c); }
};
using StatePtr = std::unique_ptr<bg_state, StateDeleter>;
using ConfigPtr = std::unique_ptr<bg_config, ConfigDeleter>;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { bg_string_free(p); }
};

// Thrown to unwind with a given exit code after a diagnostic was printed.
struct ExitWith {
  int code;
};

void check(bg_status status) {
  if (status == BG_OK) return;
  std::cerr << "error: " << bg_status_name(status) << ": " << bg_last_error() << "\n";
  throw ExitWith{kExitInput};
}

struct Options {
  std::string input;
  std::vector<std::size_t> settings;
  std::vector<double> alpha;
  int family = 1;
  std::size_t cutoff = 0;
  std::uint64_t seed = 0;
  std::string format;
  std::string dilate = "left";
  std::size_t s = 2;
  std::size_t trials = 100;
  std::vector<std::string> tol;
};

ConfigPtr make_config(const Options& o) {
  bg_config* raw = nullptr;
  check(bg_config_create(&raw));
  ConfigPtr cfg(raw);
  check(bg_config_set_seed(cfg.get(), o.seed));
  if (!o.settings.empty()) check(bg_config_set_settings(cfg.get(), o.settings[0], o.settings[1]));
  check(bg_config_set_trials(cfg.get(), o.trials));
  for (const auto& item : o.tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --tol expects NAME=VALUE, got \"" << item << "\"\n";
      throw ExitWith{kExitInput};
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      std::cerr << "error: --tol value in \"" << item << "\" is not a number\n";
      throw ExitWith{kExitInput};
    }
    check(bg_config_set_tolerance(cfg.get(), item.substr(0, eq).c_str(), value));
  }
  return cfg;
}

StatePtr load_state(const Options& o) {
  if (o.input.empty()) {
    std::cerr << "error: --input is required\n";
    throw ExitWith{kExitInput};
  }
  bg_state* raw = nullptr;
  check(bg_state_load(o.input.c_str(), &raw));
  return StatePtr(raw);
}

void require_format(const Options& o, const char* allowed, const char* command) {
  if (!o.format.empty() && o.format != allowed) {
    std::cerr << "error: " << command << " supports --format " << allowed << " only\n";
    throw ExitWith{kExitInput};
  }
}

int run_analyze(const Options& o) {
  require_format(o, "json", "analyze");
  const ConfigPtr cfg = make_config(o);
  const StatePtr state = load_state(o);
  OwnedString out;
  int ok = 0;
  check(bg_analyze(state.get(), cfg.get(), &out.p, &ok));
  std::cout << out.p << "\n";
  return ok ? kExitOk : kExitInvariant;
}

int run_coherent_scan(const Options& o) {
  require_format(o, "csv", "coherent-scan");
  if (o.alpha.size() != 3) {
    std::cerr << "error: --alpha START STOP COUNT is required\n";
    throw ExitWith{kExitInput};
  }
  const double count = o.alpha[2];
  if (!(count >= 2) || count != static_cast<double>(static_cast<std::size_t>(count))) {
    std::cerr << "error: grid COUNT must be an integer >= 2\n";
    throw ExitWith{kExitInput};
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  check(bg_linspace(o.alpha[0], o.alpha[1], grid.size(), grid.data()));
  const ConfigPtr cfg = make_config(o);
  int ok = 0;
  auto print = [](const char* line, void*) {
    std::fputs(line, stdout);
    std::fputc('\n', stdout);
    std::fflush(stdout);
  };
  check(bg_coherent_scan(grid.data(), grid.size(), o.family, o.cutoff, cfg.get(), print,
                         nullptr, nullptr, &ok));
  return ok ? kExitOk : kExitInvariant;
}

int run_source_op(const Options& o) {
  require_format(o, "json", "source-op");
  if (o.dilate != "left" && o.dilate != "right") {
    std::cerr << "error: --dilate must be left or right\n";
    throw ExitWith{kExitInput};
  }
  const ConfigPtr cfg = make_config(o);
  const StatePtr state = load_state(o);
  OwnedString out;
  int pass = 0;
  check(bg_source_op(state.get(), cfg.get(), o.dilate == "left", o.s, &out.p, &pass));
  std::cout << out.p << "\n";
  return pass ? kExitOk : kExitInvariant;
}

int run_chsh(const Options& o) {
  require_format(o, "json", "chsh");
  const ConfigPtr cfg = make_config(o);
  const StatePtr state = load_state(o);
  OwnedString out;
  check(bg_chsh(state.get(), cfg.get(), &out.p));
  std::cout << out.p << "\n";
  return kExitOk;
}

int run_selftest(const Options& o) {
  require_format(o, "json", "selftest");
  const ConfigPtr cfg = make_config(o);
  OwnedString out;
  int all_pass = 0;
  check(bg_selftest(cfg.get(), o.format == "json", &out.p, &all_pass));
  std::cout << out.p;
  return all_pass ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"belgauge: Bell-violation bounds from Schmidt coefficients"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bg_version()));

  Options o;
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed")->capture_default_str(); };
  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", o.tol, "tolerance override NAME=VALUE (NAME may be 'all')");
  };
  auto add_input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "state file (JSON)")->required();
  };
  auto add_format = [&](CLI::App* c) { c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"})); };

  auto* analyze = app.add_subcommand("analyze", "bounds, CHSH bracket and entanglement relations");
  add_input(analyze);
  analyze->add_option("--settings", o.settings, "measurement settings S1 S2")->expected(2);
  add_seed(analyze);
  add_tol(analyze);
  add_format(analyze);

  auto* scan = app.add_subcommand("coherent-scan", "entangled coherent-state bound curve (CSV)");
  scan->add_option("--alpha", o.alpha, "grid START STOP COUNT")->expected(3)->required();
  scan->add_option("--family", o.family, "state family")->check(CLI::IsMember({1, 2}))->capture_default_str();
  scan->add_option("--cutoff", o.cutoff, "Fock cutoff (default: automatic)");
  add_seed(scan);
  add_tol(scan);
  add_format(scan);

  auto* srcop = app.add_subcommand("source-op", "build and verify a dilated source operator");
  add_input(srcop);
  srcop->add_option("--dilate", o.dilate, "dilated site")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
  srcop->add_option("--s", o.s, "number of slots")->capture_default_str();
  srcop->add_option("--trials", o.trials, "random operator pairs")->capture_default_str();
  add_seed(srcop);
  add_tol(srcop);
  add_format(srcop);

  auto* chsh = app.add_subcommand("chsh", "CHSH see-saw optimization");
  add_input(chsh);
  add_seed(chsh);
  add_format(chsh);

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  add_seed(selftest);
  add_tol(selftest);
  add_format(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) return run_analyze(o);
    if (*scan) return run_coherent_scan(o);
    if (*srcop) return run_source_op(o);
    if (*chsh) return run_chsh(o);
    if (*selftest) return run_selftest(o);
  } catch (const ExitWith& e) {
    return e.code;
  }
  return kExitInput;
}
