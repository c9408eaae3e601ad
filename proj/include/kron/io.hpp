#pragma once

// JSON serialization for pencils, invariant files, and completion files.
// All field scalars are encoded as exact decimal strings ("7", "-3/4",
// residues for prime fields) — never as floating-point numbers — so that
// serialize/parse round trips are bit-exact.  Structural sizes and
// multiplicities are plain JSON integers.

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kron/completion.hpp"
#include "kron/criteria.hpp"
#include "kron/errors.hpp"
#include "kron/field.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"
#include "kron/pencil.hpp"

namespace kron {

using json = nlohmann::json;

inline FieldSpec spec_of(const RationalField&) {
  return {FieldSpec::Kind::Rationals, 0};
}
inline FieldSpec spec_of(const PrimeField& f) {
  return {FieldSpec::Kind::Prime, f.modulus()};
}

/// Reads one scalar from a JSON value: a string in the field's exact
/// format, or (leniently) an integer literal.
template <field F>
typename F::value_type scalar_from_json(const F& fld, const json& j) {
  try {
    if (j.is_string()) return fld.parse(j.get<std::string>());
    if (j.is_number_integer()) return fld.from_int(j.get<std::int64_t>());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad scalar: ") + e.what());
  }
  throw ParseError("matrix entries must be strings or integers, got " +
                   std::string(j.type_name()));
}

/// Row-major nested arrays of exact entry strings.
template <field F>
json matrix_entries_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(m.field().to_string(m.at(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <field F>
Matrix<F> matrix_from_entries(const F& fld, std::size_t rows,
                              std::size_t cols, const json& j) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError("expected " + std::to_string(rows) +
                     " matrix rows, got " +
                     (j.is_array() ? std::to_string(j.size())
                                   : std::string(j.type_name())));
  }
  Matrix<F> m(fld, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != cols) {
      throw ParseError("matrix row " + std::to_string(i) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(i, c, scalar_from_json(fld, row[c]));
    }
  }
  return m;
}

/// Shaped matrix object {"rows": r, "cols": c, "entries": [[...]]} — used
/// where the shape is not implied by context (completion files), so that
/// zero-row and zero-column matrices survive round trips.
template <field F>
json matrix_to_json(const Matrix<F>& m) {
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", matrix_entries_json(m)}};
}

template <field F>
Matrix<F> matrix_from_json(const F& fld, const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries")) {
    throw ParseError("expected a matrix object with rows/cols/entries");
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw ParseError("matrix rows/cols must be nonnegative integers");
  }
  return matrix_from_entries(fld, j["rows"].get<std::size_t>(),
                             j["cols"].get<std::size_t>(), j["entries"]);
}

// ---- Pencil files ---------------------------------------------------------
// {"field": "Q" | "GF(p)", "rows": m, "cols": n,
//  "A": [[entry strings]], "B": [[entry strings]]}

/// The field named by a pencil (or completion) file, read before choosing
/// the arithmetic to instantiate.
inline FieldSpec field_of_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j["field"].is_string()) {
    throw ParseError("missing \"field\" key");
  }
  return parse_field_spec(j["field"].get<std::string>());
}

template <field F>
json pencil_to_json(const Pencil<F>& p) {
  return json{{"field", to_string(spec_of(p.field()))},
              {"rows", p.rows()},
              {"cols", p.cols()},
              {"A", matrix_entries_json(p.A)},
              {"B", matrix_entries_json(p.B)}};
}

template <field F>
Pencil<F> pencil_from_json(const F& fld, const json& j) {
  if (field_of_json(j) != spec_of(fld)) {
    throw ParseError("pencil file is over " +
                     j["field"].get<std::string>() + ", expected " +
                     to_string(spec_of(fld)));
  }
  for (const char* key : {"rows", "cols", "A", "B"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("missing \"") + key + "\" key");
    }
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw ParseError("pencil rows/cols must be nonnegative integers");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  return Pencil<F>(matrix_from_entries(fld, rows, cols, j["A"]),
                   matrix_from_entries(fld, rows, cols, j["B"]));
}

// ---- Invariant files ------------------------------------------------------
// {"kind": "preinjective" | "preprojective", "mult": [a0, a1, ...]}
// or, alternatively to "mult", "eps": [index list].

struct InvariantsFile {
  bool preinjective = true;
  PreinjInvariants inv;  // read as preprojective when !preinjective
};

inline InvariantsFile invariants_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ParseError("missing \"kind\" key");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "preinjective" && kind != "preprojective") {
    throw ParseError("kind must be \"preinjective\" or \"preprojective\"");
  }
  if (j.contains("mult") == j.contains("eps")) {
    throw ParseError("exactly one of \"mult\" or \"eps\" is required");
  }
  const auto read_list = [&](const char* key) {
    const json& arr = j[key];
    if (!arr.is_array()) {
      throw ParseError(std::string("\"") + key + "\" must be an array");
    }
    std::vector<long long> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
      if (!v.is_number_integer()) {
        throw ParseError(std::string("\"") + key +
                         "\" entries must be integers");
      }
      out.push_back(v.get<long long>());
    }
    return out;
  };
  try {
    if (j.contains("mult")) {
      return {kind == "preinjective", PreinjInvariants(read_list("mult"))};
    }
    return {kind == "preinjective",
            PreinjInvariants::from_epsilon_list(read_list("eps"))};
  } catch (const InvalidShape& e) {
    throw ParseError(e.what());
  }
}

inline json invariants_to_json(const PreinjInvariants& inv,
                               bool preinjective = true) {
  return json{{"kind", preinjective ? "preinjective" : "preprojective"},
              {"mult", inv.mult()}};
}

// ---- Completion files (schema "v1") ---------------------------------------
// {"schema": "v1", "field": ..., "A12": {...}, ..., "B22": {...},
//  "left": {...}, "right": {...},
//  "witness": {"linking_mult": [...], "b_seq": [...],
//              "alpha": a, "beta": b}}

template <field F>
json completion_to_json(const CompletionResult<F>& r) {
  return json{{"schema", "v1"},
              {"field", to_string(spec_of(r.left.field()))},
              {"A12", matrix_to_json(r.A12)},
              {"B12", matrix_to_json(r.B12)},
              {"A21", matrix_to_json(r.A21)},
              {"B21", matrix_to_json(r.B21)},
              {"A22", matrix_to_json(r.A22)},
              {"B22", matrix_to_json(r.B22)},
              {"left", matrix_to_json(r.left)},
              {"right", matrix_to_json(r.right)},
              {"witness", json{{"linking_mult", r.linking.linking.mult()},
                               {"b_seq", r.linking.b_seq},
                               {"alpha", r.linking.alpha},
                               {"beta", r.linking.beta}}}};
}

template <field F>
CompletionResult<F> completion_from_json(const F& fld, const json& j) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != "v1") {
    throw ParseError("expected a completion file with schema \"v1\"");
  }
  if (field_of_json(j) != spec_of(fld)) {
    throw ParseError("completion file is over " +
                     j["field"].get<std::string>() + ", expected " +
                     to_string(spec_of(fld)));
  }
  for (const char* key :
       {"A12", "B12", "A21", "B21", "A22", "B22", "left", "right",
        "witness"}) {
    if (!j.contains(key)) {
      throw ParseError(std::string("missing \"") + key + "\" key");
    }
  }
  const json& w = j["witness"];
  for (const char* key : {"linking_mult", "b_seq", "alpha", "beta"}) {
    if (!w.contains(key)) {
      throw ParseError(std::string("witness is missing \"") + key + "\"");
    }
  }
  SubfactorWitness witness;
  try {
    witness.linking =
        PreinjInvariants(w["linking_mult"].get<std::vector<long long>>());
    witness.b_seq = w["b_seq"].get<std::vector<long long>>();
    witness.alpha = w["alpha"].get<long long>();
    witness.beta = w["beta"].get<long long>();
  } catch (const InvalidShape& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad witness: ") + e.what());
  }
  return CompletionResult<F>{matrix_from_json(fld, j["A12"]),
                             matrix_from_json(fld, j["B12"]),
                             matrix_from_json(fld, j["A21"]),
                             matrix_from_json(fld, j["B21"]),
                             matrix_from_json(fld, j["A22"]),
                             matrix_from_json(fld, j["B22"]),
                             matrix_from_json(fld, j["left"]),
                             matrix_from_json(fld, j["right"]),
                             std::move(witness)};
}

// ---- Files ----------------------------------------------------------------

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw ParseError("failed writing " + path);
}

}  // namespace kron
