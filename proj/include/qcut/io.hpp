#pragma once

#include <string>
#include <vector>

#include "qcut/cut_search.hpp"
#include "qcut/cutter.hpp"
#include "qcut/dd.hpp"

namespace qcut {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// JSON object with keys n_C, assignment, cut_edges, K, L (decimal string,
/// since L overflows 64 bits quickly), plus counts and no_cut_needed.
std::string cut_solution_to_json(const CutSolution& solution);
CutSolution cut_solution_from_json(const std::string& text);

/// Probability files: the 8-byte magic "QCUTPRB1" followed by raw
/// little-endian IEEE-754 doubles; the entry count is the remaining file
/// size over 8.
void save_probabilities(const std::string& path, const std::vector<double>& values);
std::vector<double> load_probabilities(const std::string& path);

/// Writes every physical variant of every subcircuit into `dir` as
/// sub<c>_v<v>.qc plus a manifest.json describing the solution, per-
/// subcircuit qubit roles, and the file list. Creates `dir` if needed.
void write_bundle(const std::string& dir, const Circuit& original, const CutPlan& plan);

/// Recursion-by-recursion trace of a dynamic-definition run.
std::string dd_result_to_json(const DdResult& result);

}  // namespace qcut
