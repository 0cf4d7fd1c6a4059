// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Erratum records and their markdown rendering.

#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace qes {

struct EvidenceTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Erratum {
  std::string id;       // stable slug
  std::string title;
  std::string printed;  // the relation or value as printed
  std::string derived;  // the relation or value that passes the oracles
  std::vector<std::string> evidence;
  EvidenceTable table;
};

/// %.{digits}g; NaN and infinities spelled out.
inline std::string fmt_num(double v, int digits = 10) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string render_errata_markdown(const std::vector<Erratum>& errata,
                                          double threshold) {
  std::ostringstream os;
  os << "# Errata\n\n";
  os << "Each entry compares a printed relation or value with the form that passes the "
        "residual oracles (relative threshold "
     << fmt_num(threshold, 3) << ", default grid of 2000 log-spaced points on [0.01, 50]).\n\n";
  for (const Erratum& e : errata) {
    os << "## " << e.id << "\n\n";
    os << e.title << "\n\n";
    os << "- Printed: " << e.printed << "\n";
    os << "- Derived: " << e.derived << "\n\n";
    if (!e.evidence.empty()) {
      os << "Evidence:\n\n";
      for (const auto& line : e.evidence) os << "- " << line << "\n";
      os << "\n";
    }
    if (!e.table.header.empty()) {
      os << "|";
      for (const auto& h : e.table.header) os << " " << h << " |";
      os << "\n|";
      for (std::size_t i = 0; i < e.table.header.size(); ++i) os << "---|";
      os << "\n";
      for (const auto& row : e.table.rows) {
        os << "|";
        for (const auto& c : row) os << " " << c << " |";
        os << "\n";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace qes
