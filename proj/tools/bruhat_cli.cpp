// Command-line front end for the exact decomposition library.
//
// Subcommands:
//   decompose  read a matrix, factor it, print a factors document
//   verify     check a factors document against a matrix
//   oracle     run brute-force minor identities over a matrix
//
// Exit codes: 0 success, 1 parse/usage error (including dimension
// mismatches), 2 vanishing pivot minor (the message names its order),
// 3 verification failure, 4 oracle identity violation.
//
// stdout carries only the result documents; diagnostics go to stderr.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bruhat/bruhat.hpp"
#include "bruhat/complexity.hpp"
#include "bruhat/etd.hpp"
#include "bruhat/io.hpp"
#include "bruhat/ldu.hpp"
#include "bruhat/minors.hpp"

namespace {

using namespace bruhat;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

std::string rat_str(const Rat& q) {
  std::string s = q.num().get_str();
  if (q.den() != 1) s += "/" + q.den().get_str();
  return s;
}

std::string images_str(const Permutation& p) {
  std::string s;
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(p(i));
  }
  return s;
}

std::string ldu_text(const LduFactors& f) {
  std::ostringstream out;
  out << "method ldu\nrank " << f.size() << "\nL\n"
      << render_matrix_text(f.L) << "U\n"
      << render_matrix_text(f.U) << "D.denoms";
  for (const Rat& s : f.d_scales) out << " " << rat_str(Rat(1) / s);
  out << "\nalphas";
  for (const Int& a : f.alphas) out << " " << a.get_str();
  out << "\n";
  return out.str();
}

std::string etd_text(const EtdFactors& f) {
  std::ostringstream out;
  out << "method etd\nrank " << f.rank << "\nP " << images_str(f.P) << "\nQ "
      << images_str(f.Q) << "\nL\n"
      << render_matrix_text(f.L) << "U\n"
      << render_matrix_text(f.U) << "D.denoms";
  for (const Int& d : f.d_denoms) out << " " << d.get_str();
  out << "\n";
  return out.str();
}

std::string bruhat_text(const BruhatFactors& f) {
  std::ostringstream out;
  out << "method bruhat\nrank " << f.rank << "\nV\n"
      << render_matrix_text(f.V) << "U\n"
      << render_matrix_text(f.U) << "D.scales";
  for (const Rat& s : f.w_scales) out << " " << rat_str(s);
  out << "\nD.perm " << images_str(f.w_perm) << "\n";
  return out.str();
}

struct DecomposeOptions {
  std::string method;
  std::string input = "-";
  std::string format = "json";
  bool verify = false;
  bool count_ops = false;
};

int cmd_decompose(const DecomposeOptions& opt) {
  const Matrix<Int> a = parse_matrix(read_input(opt.input));
  OpCounter counter;
  std::string document;
  bool ok = true;
  std::string why;
  if (opt.method == "ldu") {
    const LduFactors f = ldu_full(a, counter);
    document = opt.format == "json" ? ldu_document(f) + "\n" : ldu_text(f);
    if (opt.verify) {
      OpCounter scratch;
      const Matrix<Rat> prod = mat_mul(
          to_field(f.L),
          mat_mul(d_matrix(f), to_field(f.U), scratch), scratch);
      ok = prod == to_field(a);
      if (!ok) why = "L*D*U does not reconstruct the matrix";
    }
  } else if (opt.method == "etd") {
    const EtdFactors f = etd(a, counter);
    document = opt.format == "json" ? etd_document(f) + "\n" : etd_text(f);
    if (opt.verify) ok = verify_etd(a, f, &why);
  } else {
    BruhatFactors f;
    if (a.rows() == a.cols() && a.rows() > 0) {
      try {
        f = bruhat_flip(a, counter);
      } catch (const ZeroPivotMinor& e) {
        std::cerr << "direct path unavailable (" << e.what()
                  << "); using the general construction\n";
        f = bruhat_general(a, counter);
      }
    } else {
      f = bruhat_general(a, counter);
    }
    document =
        opt.format == "json" ? bruhat_document(f) + "\n" : bruhat_text(f);
    if (opt.verify) ok = verify_bruhat(a, f, &why);
  }
  std::cout << document;
  if (opt.count_ops) {
    CountReport report;
    report.n = a.rows();
    report.block_products = counter.block_product_count;
    report.ring_muls_in_blocks = counter.ring_muls_in_blocks;
    report.base_case_muls = counter.base_case_muls;
    const bool with_expected = opt.method == "ldu" && a.rows() >= 2 &&
                               is_power_of_two(a.rows());
    if (with_expected) report.expected_t = recurrence_t(a.rows());
    std::cout << count_report_json(report, with_expected) << "\n";
  }
  if (!ok) {
    std::cerr << "verification failed: " << why << "\n";
    return 3;
  }
  return 0;
}

int verify_ldu_document(const Matrix<Int>& a, const LduFactors& f,
                        std::string* why) {
  const int n = a.rows();
  if (a.cols() != n || f.L.rows() != n || f.L.cols() != n ||
      f.U.rows() != n || f.U.cols() != n)
    throw DimensionMismatch("factor shapes do not conform to the matrix");
  const auto fail = [&](const std::string& reason) {
    *why = reason;
    return 3;
  };
  if (static_cast<int>(f.alphas.size()) != n ||
      static_cast<int>(f.d_scales.size()) != n)
    return fail("pivot list length differs from the matrix size");
  if (!is_lower_triangular(f.L)) return fail("L is not lower triangular");
  if (!is_upper_triangular(f.U)) return fail("U is not upper triangular");
  Int prev(1);
  for (int t = 0; t < n; ++t) {
    const Int& at = f.alphas[static_cast<std::size_t>(t)];
    if (at == 0) return fail("zero pivot in the alpha chain");
    if (f.L(t, t) != at || f.U(t, t) != at)
      return fail("diagonal entries disagree with the alpha chain");
    if (f.d_scales[static_cast<std::size_t>(t)] != Rat(Int(1), prev * at))
      return fail("D is not the reciprocal of consecutive pivot products");
    prev = at;
  }
  OpCounter scratch;
  const Matrix<Rat> prod = mat_mul(
      to_field(f.L), mat_mul(d_matrix(f), to_field(f.U), scratch), scratch);
  if (!(prod == to_field(a)))
    return fail("L*D*U does not reconstruct the matrix");
  return 0;
}

int cmd_verify(const std::string& input, const std::string& factors_path) {
  const Matrix<Int> a = parse_matrix(read_input(input));
  const FactorsDocument doc = parse_factors_document(read_input(factors_path));
  std::string why;
  int code = 0;
  if (doc.method == "ldu") {
    code = verify_ldu_document(a, doc.ldu, &why);
  } else if (doc.method == "etd") {
    code = verify_etd(a, doc.etd, &why) ? 0 : 3;
  } else {
    code = verify_bruhat(a, doc.bruhat, &why) ? 0 : 3;
  }
  if (code != 0) {
    std::cerr << "verification failed: " << why << "\n";
    return code;
  }
  std::cout << "{\"method\": \"" << doc.method << "\", \"verified\": true}\n";
  return 0;
}

struct OracleOptions {
  std::string check;
  std::string input;
  unsigned seed = 0;
  int size = 5;
  int k = -1;
  int s = -1;
  bool k_set = false;
  bool s_set = false;
};

Matrix<Int> oracle_input(const OracleOptions& opt) {
  if (!opt.input.empty()) return parse_matrix(read_input(opt.input));
  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<int> entry(-9, 9);
  Matrix<Int> a(opt.size, opt.size);
  for (int i = 0; i < opt.size; ++i)
    for (int j = 0; j < opt.size; ++j) a(i, j) = Int(entry(rng));
  return a;
}

int oracle_report(const std::string& check, long long cases,
                  const std::string& witness) {
  if (witness.empty()) {
    std::cout << "{\"check\": \"" << check << "\", \"cases\": " << cases
              << ", \"ok\": true}\n";
    return 0;
  }
  std::cout << "{\"check\": \"" << check << "\", \"cases\": " << cases
            << ", \"ok\": false, \"witness\": \"" << witness << "\"}\n";
  std::cerr << "identity violated at " << witness << "\n";
  return 4;
}

int cmd_oracle(const OracleOptions& opt) {
  const Matrix<Int> a = oracle_input(opt);
  if (opt.check == "sylvester") {
    const int bound = std::min(a.rows(), a.cols());
    if (opt.k_set != opt.s_set)
      throw ParseError("provide both --k and --s or neither");
    if (opt.k_set) {
      if (opt.k < 0 || opt.k >= opt.s || opt.s > bound)
        throw ParseError("window parameters must satisfy 0 <= k < s <= " +
                         std::to_string(bound));
      if (!check_sylvester(a, opt.k, opt.s))
        return oracle_report(opt.check, 1,
                             "k=" + std::to_string(opt.k) +
                                 " s=" + std::to_string(opt.s));
      return oracle_report(opt.check, 1, "");
    }
    long long cases = 0;
    for (int k = 0; k < bound; ++k)
      for (int s = k + 1; s <= bound; ++s) {
        ++cases;
        if (!check_sylvester(a, k, s))
          return oracle_report(
              opt.check, cases,
              "k=" + std::to_string(k) + " s=" + std::to_string(s));
      }
    return oracle_report(opt.check, cases, "");
  }
  if (opt.check == "minors") {
    const int n = a.rows();
    if (a.cols() != n)
      throw DimensionMismatch("the minors cross-check needs a square matrix");
    OpCounter counter;
    const LduFactors f = ldu_full(a, counter);  // ZeroPivotMinor exits 2
    long long cases = 0;
    for (int t = 0; t < n; ++t) {
      ++cases;
      if (f.alphas[static_cast<std::size_t>(t)] != leading_minor(a, t + 1))
        return oracle_report(opt.check, cases,
                             "alpha order " + std::to_string(t + 1));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ++cases;
        if (f.L(i, j) != alpha_minor(a, MinorSpec{j + 1, i, j}))
          return oracle_report(opt.check, cases,
                               "L(" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
        ++cases;
        if (f.U(i, j) != alpha_minor(a, MinorSpec{i + 1, i, j}))
          return oracle_report(opt.check, cases,
                               "U(" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
      }
    return oracle_report(opt.check, cases, "");
  }
  // base-identity
  const int n = a.rows();
  if (a.cols() != n)
    throw DimensionMismatch("the base identity needs a square matrix");
  struct Combo {
    int i, j, k, s;
  };
  std::vector<Combo> combos;
  for (int k = 0; k < n; ++k)
    for (int s = k + 1; s <= n; ++s)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) combos.push_back({i, j, k, s});
  constexpr std::size_t kCap = 4096;
  if (combos.size() > kCap) {
    std::mt19937 rng(opt.seed);
    std::shuffle(combos.begin(), combos.end(), rng);
    combos.resize(kCap);
  }
  long long cases = 0;
  for (const Combo& c : combos) {
    ++cases;
    if (!check_base_minor_identity(a, c.i, c.j, c.k, c.s))
      return oracle_report(
          opt.check, cases,
          "i=" + std::to_string(c.i) + " j=" + std::to_string(c.j) +
              " k=" + std::to_string(c.k) + " s=" + std::to_string(c.s));
  }
  return oracle_report(opt.check, cases, "");
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ZeroPivotMinor& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact fraction-free matrix decompositions over the integers.\n"
      "Matrices are read as text (\"R C\" header, then R rows of C "
      "integers)\nor as JSON {rows, cols, entries}; pass --input - for "
      "stdin.\nExit codes: 0 ok, 1 parse/usage error, 2 vanishing pivot "
      "minor,\n3 verification failure, 4 oracle identity violation."};
  app.require_subcommand(1);

  DecomposeOptions dec;
  CLI::App* decompose = app.add_subcommand(
      "decompose", "Factor a matrix and print a factors document");
  decompose->add_option("--method", dec.method, "ldu, etd, or bruhat")
      ->required()
      ->check(CLI::IsMember({"ldu", "etd", "bruhat"}));
  decompose->add_option("--input", dec.input, "matrix file (- for stdin)");
  decompose->add_option("--format", dec.format, "output format")
      ->check(CLI::IsMember({"txt", "json"}));
  decompose->add_flag("--verify", dec.verify,
                      "re-check the factors against the input (exit 3 on "
                      "failure)");
  decompose->add_flag("--count-ops", dec.count_ops,
                      "append a one-line JSON operation-count report");

  std::string verify_input = "-";
  std::string verify_factors;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check a factors document against a matrix");
  verify->add_option("--input", verify_input, "matrix file (- for stdin)");
  verify->add_option("--factors", verify_factors, "factors document file")
      ->required();

  OracleOptions orc;
  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "Brute-force minor identities (sylvester, minors, base-identity).\n"
      "With no --input, a random matrix is drawn from --seed/--size.\n"
      "minors requires a fully generic square input (exit 2 otherwise).");
  oracle->add_option("--check", orc.check, "identity family to test")
      ->required()
      ->check(CLI::IsMember({"sylvester", "minors", "base-identity"}));
  oracle->add_option("--input", orc.input, "matrix file (- for stdin)");
  oracle->add_option("--seed", orc.seed,
                     "seed for the generated matrix / sweep subsampling");
  oracle->add_option("--size", orc.size, "size of the generated matrix")
      ->check(CLI::Range(1, 64));
  oracle->add_option("--k", orc.k, "window start (sylvester only)");
  oracle->add_option("--s", orc.s, "window end (sylvester only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  orc.k_set = oracle->count("--k") > 0;
  orc.s_set = oracle->count("--s") > 0;

  if (decompose->parsed()) return run_guarded([&] { return cmd_decompose(dec); });
  if (verify->parsed())
    return run_guarded([&] { return cmd_verify(verify_input, verify_factors); });
  return run_guarded([&] { return cmd_oracle(orc); });
}
