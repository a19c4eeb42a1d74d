#pragma once

#include "degseq/tables.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

namespace degseq {

enum class Format { csv_matrix, json };
enum class TableKind { edge, directed, dyad };

using AnyTable = std::variant<EdgeCountTable, DirectedCountTable, DyadTable>;

/// Guess the format from a file name (".json" -> json, anything else csv).
Format format_from_path(const std::string& path);

/// CSV: n lines of n fields, "x" on the diagonal, upper triangle holds x_ij.
/// Lower-triangle cells may be blank; when present they must equal N_ij - x_ij.
/// With one trial per pair a fully symmetric 0/1 adjacency matrix is also accepted.
/// `trials` is the scalar N used for every pair when no per-pair trials are given;
/// JSON input may carry its own "trials" object or scalar, which wins.
EdgeCountTable parse_edge_table(std::istream& in, Format format, std::optional<int> trials = std::nullopt);
/// CSV counts with a companion CSV trials matrix (upper triangle used).
EdgeCountTable parse_edge_table(std::istream& counts, std::istream& trials_matrix);

/// All off-diagonal cells are counts x_ij >= 0.
DirectedCountTable parse_directed_table(std::istream& in, Format format);
/// 0/1 adjacency matrix of a directed graph; dyad (i,j) state = (x_ij, x_ji).
DyadTable parse_dyad_table(std::istream& in, Format format);
/// k x l 0/1 matrix (CSV) or {"responses": [[...], ...]} (JSON).
RaschTable parse_rasch_table(std::istream& in, Format format);

AnyTable parse_table(std::istream& in, Format format, TableKind kind, std::optional<int> trials = std::nullopt);

/// Full matrix with "x" on the diagonal and the derived lower triangle filled in.
std::string to_csv(const EdgeCountTable& t);
std::string to_csv(const DirectedCountTable& t);
std::string to_csv(const DyadTable& t);

}  // namespace degseq
