#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

#include "couplingkit/coupling.hpp"
#include "couplingkit/distribution.hpp"
#include "couplingkit/multidim.hpp"
#include "couplingkit/qkd_report.hpp"
#include "couplingkit/transport.hpp"

namespace couplingkit::io {

// Insertion-ordered so serialized output is stable and diff-able.
using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// Canonical text form of a JSON document: 2-space indent, trailing newline.
std::string dump(const Json& j);

Rat parse_rat(const Json& j);
Json rat_json(const Rat& r);

// --- distributions --------------------------------------------------------
//   one-dim: {"alphabet": [...], "p": ["0.1", ...]}
//   two-dim: {"alphabet": [...], "matrix": [[...], ...]}
//            ("rows"/"cols" label lists may stand in for "alphabet")

using Distribution = std::variant<Pmf, Pmf2>;

/// Detects the shape from the keys present; files carrying both or neither
/// of "p" and "matrix" are rejected as ambiguous. Throws ParseError.
Distribution parse_distribution(const Json& j);
Distribution load_distribution(const std::filesystem::path& path);

Json to_json(const Pmf& p);
Json to_json(const Pmf2& p);

// --- couplings ------------------------------------------------------------
//   {"kind": "coupling", "alphabet": [...], "matrix": [[...], ...]}
//   {"kind": "coupling4", "alphabet": [...],
//    "blocks": [{"x1": a, "x2": b, "cells": [[j(a,b,y1,y2) for y2] for y1]}, ...]}

struct CouplingFile {
  Alphabet alphabet;
  RatMatrix matrix;  // N x N, or N^2 x N^2 flattened for four-index files
  bool four_index = false;
};

CouplingFile parse_coupling(const Json& j);
CouplingFile load_coupling(const std::filesystem::path& path);

Json to_json(const Coupling& c);
Json to_json(const Coupling4& c);
Json to_json(const LemmaAudit& a);
Json to_json(const MismatchComponents& m);
Json to_json(const DualCertificate& cert);
Json to_json(const EpsilonAuditReport& r);

// --- human-readable tables (decimal rendering is display only) -------------

std::string format_matrix(const Alphabet& alphabet, const RatMatrix& m, int places);
std::string format_coupling4(const Coupling4& c, int places);
std::string format_report(const EpsilonAuditReport& r, int places);

}  // namespace couplingkit::io
