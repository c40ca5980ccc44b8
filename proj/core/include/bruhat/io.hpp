#pragma once

#include <string>

#include "bruhat/bruhat.hpp"
#include "bruhat/complexity.hpp"
#include "bruhat/etd.hpp"
#include "bruhat/ldu.hpp"
#include "bruhat/matrix.hpp"

/// Serialization of matrices and factorizations.
///
/// Two matrix formats are supported:
///   - text: a header line "R C" followed by R lines of C whitespace-
///     separated base-10 integers (optional leading '-'), any precision;
///   - JSON: {"rows": R, "cols": C, "entries": [[...]]} with entries given
///     as decimal strings or JSON integers.
///
/// Factorizations travel as a JSON document with a "method" discriminator
/// ("ldu", "etd", or "bruhat") and per-method fields; every number is a
/// decimal string (fractions as "num/den") so arbitrary precision survives
/// the wire, and absent fields are omitted rather than null. All renderers
/// are deterministic: stable field order, no environment-dependent content.
namespace bruhat {

/// Parses the text matrix format. Throws ParseError on malformed input
/// (bad header, non-integer tokens, missing or trailing entries).
Matrix<Int> parse_matrix_text(const std::string& text);

/// Renders the text matrix format; parse_matrix_text inverts it exactly.
std::string render_matrix_text(const Matrix<Int>& m);

/// Parses either matrix format, deciding by the first non-whitespace byte
/// ('{' selects JSON). Throws ParseError on malformed input.
Matrix<Int> parse_matrix(const std::string& text);

/// Renders the JSON matrix object with string entries.
std::string render_matrix_json(const Matrix<Int>& m);

/// Factor documents, one JSON object each:
///   ldu:    method, rank, L, U, D:{"denoms": [...]}, alphas
///   etd:    method, rank, P, Q, L, U, D:{"denoms": [...]}
///   bruhat: method, rank, V, U, D:{"scales": [...], "perm": [...]}
std::string ldu_document(const LduFactors& f);
std::string etd_document(const EtdFactors& f);
std::string bruhat_document(const BruhatFactors& f);

/// A parsed factor document; the member matching `method` is populated.
struct FactorsDocument {
  std::string method;
  int rank = 0;
  LduFactors ldu;        ///< when method == "ldu" (M and W stay empty)
  EtdFactors etd;        ///< when method == "etd"
  BruhatFactors bruhat;  ///< when method == "bruhat"
};

/// Parses any factor document produced by the renderers above. Throws
/// ParseError on malformed JSON, unknown method, or missing fields.
FactorsDocument parse_factors_document(const std::string& text);

/// One-line JSON rendering of an operation-count report; expected_t is
/// included only when requested (it is defined only for the power-of-two
/// recursive LDU).
std::string count_report_json(const CountReport& r, bool include_expected);

}  // namespace bruhat
