#include "bruhat/io.hpp"

#include <random>
#include <string>

#include "doctest.h"
#include "test_support.hpp"

using namespace bruhat;
using test_support::golden4;

TEST_SUITE("io") {

TEST_CASE("text matrix round-trip") {
  Matrix<Int> a{{1, -2}, {0, 0}};
  a(1, 0) = Int("-123456789012345678901234567890123456789");
  CHECK(parse_matrix_text(render_matrix_text(a)) == a);
  CHECK(render_matrix_text(Matrix<Int>{{7}}) == "1 1\n7\n");
  const Matrix<Int> b = parse_matrix_text("  2  3\n 1 2 3\n4 5 6 ");
  CHECK(b == Matrix<Int>{{1, 2, 3}, {4, 5, 6}});
}

TEST_CASE("text matrix parse errors") {
  CHECK_THROWS_AS(parse_matrix_text(""), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("2"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("2 x\n1 2\n3 4\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("-1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("2 2\n1 2 3\n"), ParseError);       // short
  CHECK_THROWS_AS(parse_matrix_text("2 2\n1 2\n3 4\n5\n"), ParseError); // long
  CHECK_THROWS_AS(parse_matrix_text("1 1\n2.5\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("1 1\n--2\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix_text("2000000 2000000\n"), ParseError);
}

TEST_CASE("json matrix round-trip and sniffing") {
  const Matrix<Int> a{{1, -2, 0}, {7, 9, -11}};
  const std::string doc = render_matrix_json(a);
  CHECK(parse_matrix(doc) == a);
  CHECK(parse_matrix("  \n " + doc) == a);  // sniffing skips whitespace
  CHECK(parse_matrix(render_matrix_text(a)) == a);
  // mixed integer and string entries are both accepted
  CHECK(parse_matrix(R"({"rows":1,"cols":2,"entries":[[4,"-5"]]})") ==
        Matrix<Int>{{4, -5}});
  CHECK_THROWS_AS(parse_matrix("{"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"rows":1,"cols":2})"), ParseError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows":1,"cols":2,"entries":[["1"]]})"), ParseError);
  CHECK_THROWS_AS(
      parse_matrix(R"({"rows":1,"cols":1,"entries":[["1.5"]]})"), ParseError);
}

TEST_CASE("ldu document round-trip") {
  OpCounter c;
  const Matrix<Int> a = golden4();
  const LduFactors f = ldu_full(a, c);
  const std::string doc = ldu_document(f);
  const FactorsDocument parsed = parse_factors_document(doc);
  CHECK(parsed.method == "ldu");
  CHECK(parsed.rank == 4);
  CHECK(parsed.ldu.L == f.L);
  CHECK(parsed.ldu.U == f.U);
  CHECK(parsed.ldu.alphas == f.alphas);
  CHECK(parsed.ldu.d_scales == f.d_scales);
  CHECK(reconstruct_ldu(parsed.ldu) == a);
  // documents are deterministic
  CHECK(ldu_document(f) == doc);
}

TEST_CASE("etd document round-trip") {
  OpCounter c;
  const Matrix<Int> a{{0, 0, 5, 2}, {1, 2, 0, -3}, {2, 4, 0, -6}};
  const EtdFactors f = etd(a, c);
  const FactorsDocument parsed = parse_factors_document(etd_document(f));
  CHECK(parsed.method == "etd");
  CHECK(parsed.rank == f.rank);
  CHECK(parsed.etd.P == f.P);
  CHECK(parsed.etd.Q == f.Q);
  CHECK(parsed.etd.L == f.L);
  CHECK(parsed.etd.U == f.U);
  CHECK(parsed.etd.d_denoms == f.d_denoms);
  CHECK(verify_etd(a, parsed.etd));
}

TEST_CASE("bruhat document round-trip") {
  OpCounter c;
  const Matrix<Int> a{{0, 1}, {2, 3}};
  const BruhatFactors f = bruhat_flip(a, c);
  const FactorsDocument parsed = parse_factors_document(bruhat_document(f));
  CHECK(parsed.method == "bruhat");
  CHECK(parsed.rank == 2);
  CHECK(parsed.bruhat.V == f.V);
  CHECK(parsed.bruhat.U == f.U);
  CHECK(parsed.bruhat.w_perm == f.w_perm);
  CHECK(parsed.bruhat.w_scales == f.w_scales);
  CHECK(verify_bruhat(a, parsed.bruhat));
}

TEST_CASE("document structure") {
  OpCounter c;
  const LduFactors f = ldu_full(Matrix<Int>{{2, 3}, {0, 1}}, c);
  const std::string doc = ldu_document(f);
  // decimal-string serialization and omitted-absent-fields policy
  CHECK(doc.find("\"denoms\"") != std::string::npos);
  CHECK(doc.find("\"alphas\"") != std::string::npos);
  CHECK(doc.find("null") == std::string::npos);
  CHECK(doc.find("\"P\"") == std::string::npos);   // no permutations for ldu
  CHECK(doc.find("\"scales\"") == std::string::npos);
  const std::string bdoc =
      bruhat_document(bruhat_flip(Matrix<Int>{{0, 1}, {2, 3}}, c));
  CHECK(bdoc.find("\"scales\"") != std::string::npos);
  CHECK(bdoc.find("\"perm\"") != std::string::npos);
  CHECK(bdoc.find("\"1/4\"") != std::string::npos);  // fraction as num/den
  CHECK(bdoc.find("\"denoms\"") == std::string::npos);
}

TEST_CASE("factor document parse errors") {
  CHECK_THROWS_AS(parse_factors_document("{"), ParseError);
  CHECK_THROWS_AS(parse_factors_document("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_factors_document(R"({"method":"qr","rank":0})"),
                  ParseError);
  CHECK_THROWS_AS(parse_factors_document(R"({"rank":0})"), ParseError);
  // ldu document with a zero denominator is rejected at parse time
  OpCounter c;
  const LduFactors f = ldu_full(Matrix<Int>{{2, 3}, {0, 1}}, c);
  std::string doc = ldu_document(f);
  const std::string needle = "\"4\"";
  doc.replace(doc.find(needle), needle.size(), "\"0\"");
  CHECK_THROWS_AS(parse_factors_document(doc), ParseError);
  // etd document with a non-bijective permutation is rejected
  const Matrix<Int> a{{1, 2}, {3, 4}};
  const EtdFactors e = etd(a, c);
  std::string edoc = etd_document(e);
  const std::string perm = "\"P\": [\n    0,\n    1\n  ]";
  REQUIRE(edoc.find(perm) != std::string::npos);
  edoc.replace(edoc.find(perm), perm.size(), "\"P\": [\n    0,\n    0\n  ]");
  CHECK_THROWS_AS(parse_factors_document(edoc), ParseError);
}

TEST_CASE("fraction strings") {
  OpCounter c;
  // scales parse back through the bruhat document: negative and unit
  // denominators included
  const Matrix<Int> a{{0, -1}, {2, 3}};
  const BruhatFactors f = bruhat_flip(a, c);
  const FactorsDocument parsed = parse_factors_document(bruhat_document(f));
  CHECK(parsed.bruhat.w_scales == f.w_scales);
}

TEST_CASE("count report rendering") {
  CountReport r;
  r.n = 4;
  r.block_products = 7;
  r.ring_muls_in_blocks = 56;
  r.base_case_muls = 14;
  r.expected_t = 70;
  CHECK(count_report_json(r, true) ==
        R"({"n":4,"block_products":7,"ring_muls_in_blocks":56,"base_case_muls":14,"expected_t":70})");
  CHECK(count_report_json(r, false) ==
        R"({"n":4,"block_products":7,"ring_muls_in_blocks":56,"base_case_muls":14})");
}

}  // TEST_SUITE
