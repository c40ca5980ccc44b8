#include "bruhat/io.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bruhat {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

bool looks_like_integer(const std::string& s) {
  std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int_token(const std::string& s, const char* what) {
  if (!looks_like_integer(s))
    throw ParseError(std::string(what) + " must be a base-10 integer, got \"" +
                     s + "\"");
  return Int(s, 10);
}

Rat parse_rat_token(const std::string& s, const char* what) {
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int_token(s, what));
  if (s.find('/', slash + 1) != std::string::npos)
    throw ParseError(std::string(what) + " has more than one '/': \"" + s +
                     "\"");
  const Int num = parse_int_token(s.substr(0, slash), what);
  const Int den = parse_int_token(s.substr(slash + 1), what);
  if (den == 0)
    throw ParseError(std::string(what) + " has a zero denominator: \"" + s +
                     "\"");
  return Rat(num, den);
}

std::string rat_to_string(const Rat& v) {
  if (v.den() == 1) return v.num().get_str();
  return v.num().get_str() + "/" + v.den().get_str();
}

// Dimensions live in an int; cap them well below INT_MAX so row*col
// arithmetic cannot overflow before Matrix validates.
int parse_dimension(const Int& v, const char* what) {
  if (v < 0 || v > 1000000)
    throw ParseError(std::string(what) + " out of range: " + v.get_str());
  return static_cast<int>(v.get_si());
}

// --- JSON helpers ------------------------------------------------------------

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Matrix<Int> matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw ParseError(
        "JSON matrix must be an object with rows, cols and entries");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("JSON matrix rows/cols must be integers");
  const int rows = parse_dimension(Int(j["rows"].get<long>()), "rows");
  const int cols = parse_dimension(Int(j["cols"].get<long>()), "cols");
  const json& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != rows)
    throw ParseError("JSON matrix entries must hold one array per row");
  Matrix<Int> m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw ParseError("JSON matrix row " + std::to_string(i) +
                       " must hold exactly " + std::to_string(cols) +
                       " entries");
    for (int jx = 0; jx < cols; ++jx) {
      const json& cell = row[static_cast<std::size_t>(jx)];
      if (cell.is_string())
        m(i, jx) = parse_int_token(cell.get<std::string>(), "matrix entry");
      else if (cell.is_number_integer())
        m(i, jx) = Int(cell.get<long>());
      else
        throw ParseError("matrix entries must be integers or decimal strings");
    }
  }
  return m;
}

ordered_json matrix_to_json_obj(const Matrix<Int>& m) {
  ordered_json entries = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    entries.push_back(std::move(row));
  }
  ordered_json obj;
  obj["rows"] = m.rows();
  obj["cols"] = m.cols();
  obj["entries"] = std::move(entries);
  return obj;
}

ordered_json perm_to_json(const Permutation& p) {
  return ordered_json(p.images());
}

Permutation perm_from_json(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array of images");
  std::vector<int> images;
  images.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number_integer())
      throw ParseError(std::string(what) + " images must be integers");
    images.push_back(v.get<int>());
  }
  try {
    return Permutation(std::move(images));
  } catch (const DimensionMismatch&) {
    throw ParseError(std::string(what) + " images are not a permutation");
  }
}

std::vector<Int> ints_from_json(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array");
  std::vector<Int> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (v.is_string())
      out.push_back(parse_int_token(v.get<std::string>(), what));
    else if (v.is_number_integer())
      out.push_back(Int(v.get<long>()));
    else
      throw ParseError(std::string(what) +
                       " entries must be integers or decimal strings");
  }
  return out;
}

std::vector<Rat> rats_from_json(const json& j, const char* what) {
  if (!j.is_array())
    throw ParseError(std::string(what) + " must be an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_string())
      throw ParseError(std::string(what) +
                       " entries must be strings like \"num/den\"");
    out.push_back(parse_rat_token(v.get<std::string>(), what));
  }
  return out;
}

const json& field(const json& j, const char* name) {
  if (!j.contains(name))
    throw ParseError(std::string("factors document is missing \"") + name +
                     "\"");
  return j[name];
}

}  // namespace

// --- matrix text format -------------------------------------------------------

Matrix<Int> parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  auto next = [&in](const char* what) {
    std::string tok;
    if (!(in >> tok))
      throw ParseError(std::string("unexpected end of input while reading ") +
                       what);
    return tok;
  };
  const int rows =
      parse_dimension(parse_int_token(next("matrix header"), "matrix header"),
                      "row count");
  const int cols =
      parse_dimension(parse_int_token(next("matrix header"), "matrix header"),
                      "column count");
  Matrix<Int> m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = parse_int_token(next("matrix entries"), "matrix entry");
  std::string extra;
  if (in >> extra)
    throw ParseError("trailing content after matrix entries: \"" + extra +
                     "\"");
  return m;
}

std::string render_matrix_text(const Matrix<Int>& m) {
  std::ostringstream out;
  out << m.rows() << " " << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << " ";
      out << m(i, j).get_str();
    }
    out << "\n";
  }
  return out.str();
}

Matrix<Int> parse_matrix(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return matrix_from_json(parse_json_text(text));
    return parse_matrix_text(text);
  }
  throw ParseError("empty matrix input");
}

std::string render_matrix_json(const Matrix<Int>& m) {
  return matrix_to_json_obj(m).dump(2);
}

// --- factor documents ----------------------------------------------------------

std::string ldu_document(const LduFactors& f) {
  ordered_json doc;
  doc["method"] = "ldu";
  doc["rank"] = f.n;
  doc["L"] = matrix_to_json_obj(f.L);
  doc["U"] = matrix_to_json_obj(f.U);
  ordered_json denoms = ordered_json::array();
  for (const Rat& s : f.d_scales) {
    // D(t,t) is the scale itself; the document stores its reciprocal, which
    // is integral for factorizations produced here.
    const Rat inv(s.den(), s.num());
    if (inv.den() != 1)
      throw Error("diagonal scale reciprocal is not integral: " +
                  rat_to_string(s));
    denoms.push_back(inv.num().get_str());
  }
  doc["D"] = ordered_json{{"denoms", std::move(denoms)}};
  ordered_json alphas = ordered_json::array();
  for (const Int& a : f.alphas) alphas.push_back(a.get_str());
  doc["alphas"] = std::move(alphas);
  return doc.dump(2);
}

std::string etd_document(const EtdFactors& f) {
  ordered_json doc;
  doc["method"] = "etd";
  doc["rank"] = f.rank;
  doc["P"] = perm_to_json(f.P);
  doc["Q"] = perm_to_json(f.Q);
  doc["L"] = matrix_to_json_obj(f.L);
  doc["U"] = matrix_to_json_obj(f.U);
  ordered_json denoms = ordered_json::array();
  for (const Int& d : f.d_denoms) denoms.push_back(d.get_str());
  doc["D"] = ordered_json{{"denoms", std::move(denoms)}};
  return doc.dump(2);
}

std::string bruhat_document(const BruhatFactors& f) {
  ordered_json doc;
  doc["method"] = "bruhat";
  doc["rank"] = f.rank;
  doc["V"] = matrix_to_json_obj(f.V);
  doc["U"] = matrix_to_json_obj(f.U);
  ordered_json scales = ordered_json::array();
  for (const Rat& s : f.w_scales) scales.push_back(rat_to_string(s));
  ordered_json d;
  d["scales"] = std::move(scales);
  d["perm"] = perm_to_json(f.w_perm);
  doc["D"] = std::move(d);
  return doc.dump(2);
}

FactorsDocument parse_factors_document(const std::string& text) {
  const json j = parse_json_text(text);
  if (!j.is_object())
    throw ParseError("factors document must be a JSON object");
  FactorsDocument out;
  try {
    const json& method = field(j, "method");
    if (!method.is_string())
      throw ParseError("factors document method must be a string");
    out.method = method.get<std::string>();
    const json& rank = field(j, "rank");
    if (!rank.is_number_integer())
      throw ParseError("factors document rank must be an integer");
    out.rank = rank.get<int>();

    if (out.method == "ldu") {
      out.ldu.L = matrix_from_json(field(j, "L"));
      out.ldu.U = matrix_from_json(field(j, "U"));
      out.ldu.k = 0;
      out.ldu.n = out.ldu.L.rows();
      out.ldu.alpha_k = 1;
      out.ldu.alphas = ints_from_json(field(j, "alphas"), "alphas");
      const std::vector<Int> denoms =
          ints_from_json(field(field(j, "D"), "denoms"), "denoms");
      out.ldu.d_scales.reserve(denoms.size());
      for (const Int& d : denoms) {
        if (d == 0) throw ParseError("denoms entries must be nonzero");
        out.ldu.d_scales.emplace_back(Int(1), d);
      }
    } else if (out.method == "etd") {
      out.etd.P = perm_from_json(field(j, "P"), "P");
      out.etd.Q = perm_from_json(field(j, "Q"), "Q");
      out.etd.L = matrix_from_json(field(j, "L"));
      out.etd.U = matrix_from_json(field(j, "U"));
      out.etd.d_denoms = ints_from_json(field(field(j, "D"), "denoms"),
                                        "denoms");
      for (const Int& d : out.etd.d_denoms)
        if (d == 0) throw ParseError("denoms entries must be nonzero");
      out.etd.rank = out.rank;
    } else if (out.method == "bruhat") {
      out.bruhat.V = matrix_from_json(field(j, "V"));
      out.bruhat.U = matrix_from_json(field(j, "U"));
      const json& d = field(j, "D");
      out.bruhat.w_scales = rats_from_json(field(d, "scales"), "scales");
      out.bruhat.w_perm = perm_from_json(field(d, "perm"), "perm");
      out.bruhat.rank = out.rank;
    } else {
      throw ParseError("unknown factors document method \"" + out.method +
                       "\"");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed factors document: ") + e.what());
  }
  return out;
}

std::string count_report_json(const CountReport& r, bool include_expected) {
  ordered_json o;
  o["n"] = r.n;
  o["block_products"] = r.block_products;
  o["ring_muls_in_blocks"] = r.ring_muls_in_blocks;
  o["base_case_muls"] = r.base_case_muls;
  if (include_expected) o["expected_t"] = r.expected_t;
  return o.dump();
}

}  // namespace bruhat
