// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qes/cli.hpp"

namespace {

using qes::cli::RunConfig;

struct Raw {
  std::string family, format;
  int n_r = 0, kappa = 0, ell = 0;
  double a1 = 0, a2 = 0, a3 = 0;
};

struct Bound {
  CLI::Option* family = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* n_r = nullptr;
  CLI::Option* kappa = nullptr;
  CLI::Option* ell = nullptr;
  CLI::Option* a1 = nullptr;
  CLI::Option* a2 = nullptr;
  CLI::Option* a3 = nullptr;
};

const std::vector<std::string> kFamilies{"n2", "n3", "nonrel"};
const std::vector<std::string> kFormats{"json", "csv", "text"};

void add_format_output(CLI::App* sub, Raw& raw, Bound& b, RunConfig& cfg) {
  b.format = sub->add_option("--format", raw.format, "json, csv or text")
                 ->check(CLI::IsMember(kFormats));
  sub->add_option("-o,--output", cfg.output, "output file (default: stdout)");
}

void add_state(CLI::App* sub, Raw& raw, Bound& b, RunConfig& cfg) {
  b.family = sub->add_option("--family", raw.family, "n2, n3 or nonrel")
                 ->check(CLI::IsMember(kFamilies));
  b.n_r = sub->add_option("--nr", raw.n_r, "radial quantum number");
  b.kappa = sub->add_option("--kappa", raw.kappa, "spin-orbit quantum number (n2, n3)");
  b.ell = sub->add_option("--ell", raw.ell, "orbital quantum number (nonrel)");
  sub->add_option("--mu", cfg.mu, "fermion mass")->capture_default_str();
  b.a1 = sub->add_option("--a1", raw.a1, "potential coefficient a1");
  b.a2 = sub->add_option("--a2", raw.a2, "potential coefficient a2");
  b.a3 = sub->add_option("--a3", raw.a3, "potential coefficient a3 (n3)");
}

void add_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rmin", cfg.r_min, "smallest radius")->capture_default_str();
  sub->add_option("--rmax", cfg.r_max, "largest radius")->capture_default_str();
  sub->add_option("--points", cfg.points, "log-spaced grid points")->capture_default_str();
}

void collect(const Raw& raw, const Bound& b, RunConfig& cfg) {
  if (b.family && b.family->count()) cfg.family = qes::cli::parse_family(raw.family);
  if (b.format && b.format->count()) cfg.format = qes::cli::parse_format(raw.format);
  if (b.n_r && b.n_r->count()) cfg.n_r = raw.n_r;
  if (b.kappa && b.kappa->count()) cfg.kappa = raw.kappa;
  if (b.ell && b.ell->count()) cfg.ell = raw.ell;
  if (b.a1 && b.a1->count()) cfg.a1 = raw.a1;
  if (b.a2 && b.a2->count()) cfg.a2 = raw.a2;
  if (b.a3 && b.a3->count()) cfg.a3 = raw.a3;
}

int usage_error(const std::string& msg) {
  std::cerr << qes::cli::error_json("usage_error", msg).dump() << "\n";
  return qes::cli::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact bound states of fractional-power singular potentials"};
  app.require_subcommand(1);

  RunConfig cfg;
  Raw raw;
  Bound b;

  auto* solve = app.add_subcommand("solve", "solve one state and report diagnostics");
  add_state(solve, raw, b, cfg);
  add_format_output(solve, raw, b, cfg);

  auto* table = app.add_subcommand("table", "recompute a reference table");
  table->add_option("which,--which", cfg.which, "table1 or table2")
      ->check(CLI::IsMember({"table1", "table2"}));
  Bound tb;
  add_format_output(table, raw, tb, cfg);

  auto* wave = app.add_subcommand("wavefunction", "sample the normalized wavefunction");
  Bound wb;
  add_state(wave, raw, wb, cfg);
  add_grid(wave, cfg);
  add_format_output(wave, raw, wb, cfg);

  auto* pot = app.add_subcommand("potential", "sample the potential and effective potential");
  Bound pb;
  add_state(pot, raw, pb, cfg);
  add_grid(pot, cfg);
  add_format_output(pot, raw, pb, cfg);

  auto* expect = app.add_subcommand("expect", "expectation values, derivative and quadrature");
  Bound eb;
  add_state(expect, raw, eb, cfg);
  add_format_output(expect, raw, eb, cfg);

  auto* verify = app.add_subcommand("verify", "run the oracle suite and write the errata");
  verify->add_option("--input", cfg.input, "solve output to re-verify ('-' for stdin)");
  verify->add_option("--errata", cfg.errata_path, "errata markdown path")
      ->capture_default_str();
  Bound vb;
  add_format_output(verify, raw, vb, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  if (solve->parsed()) {
    cfg.command = qes::cli::Command::Solve;
    collect(raw, b, cfg);
  } else if (table->parsed()) {
    cfg.command = qes::cli::Command::Table;
    collect(raw, tb, cfg);
  } else if (wave->parsed()) {
    cfg.command = qes::cli::Command::Wavefunction;
    collect(raw, wb, cfg);
  } else if (pot->parsed()) {
    cfg.command = qes::cli::Command::Potential;
    collect(raw, pb, cfg);
  } else if (expect->parsed()) {
    cfg.command = qes::cli::Command::Expect;
    collect(raw, eb, cfg);
  } else {
    cfg.command = qes::cli::Command::Verify;
    collect(raw, vb, cfg);
  }

  try {
    cfg.threshold = qes::cli::threshold_from_env();
  } catch (const qes::Error& e) {
    return usage_error(e.what());
  }
  return qes::cli::run(cfg, std::cout, std::cerr, std::cin);
}
