// endotrace command-line tool. Talks to the library only through the C API.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "endotrace/endotrace.h"

namespace {

enum Exit {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBadInput = 3,
  kNotEndomorphism = 4,
  kInconsistent = 5,
  kUnwritable = 6,
};

constexpr unsigned kMinBits = 8, kMaxBits = 40;

struct Failure {
  int code;
  std::string message;
};

using CurvePtr = std::unique_ptr<et_curve, decltype(&et_curve_free)>;
using ChainPtr = std::unique_ptr<et_chain, decltype(&et_chain_free)>;
using ResultPtr = std::unique_ptr<et_trace_result, decltype(&et_trace_result_free)>;

std::string take(char* s) {
  std::string out(s ? s : "");
  et_string_free(s);
  return out;
}

int exit_for(et_status st) {
  switch (st) {
    case ET_E_PARSE:
    case ET_E_SINGULAR_CURVE:
    case ET_E_UNDECIDED:
      return kBadInput;
    case ET_E_NOT_ENDOMORPHISM:
    case ET_E_BROKEN_CHAIN:
      return kNotEndomorphism;
    case ET_E_INCONSISTENT_RESIDUES:
    case ET_E_NO_MATCH:
      return kInconsistent;
    default:
      return kFailure;
  }
}

void check(et_status st, int code = -1) {
  if (st == ET_OK) return;
  throw Failure{code >= 0 ? code : exit_for(st), std::string(et_status_name(st)) + ": " + et_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kBadInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) throw Failure{kUnwritable, "cannot write " + path};
}

CurvePtr load_curve(const std::string& path) {
  et_curve* c = nullptr;
  check(et_curve_from_json(read_file(path).c_str(), &c), kBadInput);
  return CurvePtr(c, et_curve_free);
}

ChainPtr load_chain(const std::string& path) {
  et_chain* c = nullptr;
  check(et_chain_from_json(read_file(path).c_str(), &c), kBadInput);
  return ChainPtr(c, et_chain_free);
}

nlohmann::json describe(const et_curve* c, std::uint64_t seed) {
  char* s = nullptr;
  check(et_curve_describe(c, seed, &s));
  return nlohmann::json::parse(take(s));
}

void cmd_gen_curve(unsigned bits, std::uint64_t seed, const std::string& out) {
  et_curve* raw = nullptr;
  check(et_curve_generate(bits, seed, &raw));
  CurvePtr c(raw, et_curve_free);
  char* text = nullptr;
  check(et_curve_to_json(c.get(), &text));
  write_file(out, take(text));
  auto d = describe(c.get(), seed);
  std::cout << "p = " << d["p"].get<std::string>() << "\n"
            << "j = " << d["j"][0].get<std::string>() << " + " << d["j"][1].get<std::string>() << "*i\n"
            << "group order = " << d["group_order"].get<std::string>() << "\n";
}

void cmd_gen_endo(const std::string& curve_path, unsigned length, std::uint64_t seed, const std::string& out) {
  auto c = load_curve(curve_path);
  auto d = describe(c.get(), seed);
  if (!d["supersingular"].get<bool>()) throw Failure{kBadInput, "curve is not supersingular"};
  std::cerr << "note: supersingularity of " << curve_path << " was checked on random points only\n";
  et_chain* raw = nullptr;
  check(et_chain_generate(c.get(), length, seed, &raw), kBadInput);
  ChainPtr ch(raw, et_chain_free);
  char* text = nullptr;
  check(et_chain_to_json(ch.get(), &text));
  write_file(out, take(text));
  std::cout << "steps = " << et_chain_length(ch.get()) << "\n"
            << "degree = 2^" << et_chain_length(ch.get()) << " (" << et_chain_degree_bits(ch.get()) << " bits)\n";
}

void cmd_trace(const std::string& chain_path, const std::string& method, std::uint64_t seed, bool as_json) {
  auto ch = load_chain(chain_path);
  et_trace_result* raw = nullptr;
  check(et_trace(ch.get(), method.c_str(), seed, &raw));
  ResultPtr r(raw, et_trace_result_free);
  char* s = nullptr;
  if (as_json) {
    check(et_trace_result_to_json(r.get(), &s));
    std::cout << take(s);
  } else {
    check(et_trace_result_value(r.get(), &s));
    std::cout << take(s) << "\n";
  }
}

int cmd_verify(const std::string& chain_path, std::uint64_t seed) {
  auto ch = load_chain(chain_path);
  char* report = nullptr;
  et_status st = et_verify(ch.get(), seed, &report);
  if (st != ET_OK && st != ET_E_VERIFY_FAILED) check(st);
  auto checks = nlohmann::json::parse(take(report));
  for (const auto& c : checks)
    std::cout << (c["ok"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": "
              << c["detail"].get<std::string>() << "\n";
  return st == ET_OK ? kOk : kFailure;
}

struct BenchRow {
  std::string method;
  unsigned bits;
  std::uint64_t seed;
  std::size_t steps, degree_bits;
  double ms;
  std::string trace;
};

void cmd_bench(unsigned lo, unsigned hi, unsigned reps, const std::string& out, std::uint64_t seed,
               const std::vector<std::string>& methods) {
  {
    std::ofstream probe(out, std::ios::binary);
    if (!probe) throw Failure{kUnwritable, "cannot write " + out};
  }
  std::vector<BenchRow> rows;
  for (unsigned bits = lo; bits <= hi; ++bits) {
    for (unsigned r = 0; r < reps; ++r) {
      std::uint64_t s = seed + r;
      et_curve* cr = nullptr;
      check(et_curve_generate(bits, s, &cr));
      CurvePtr c(cr, et_curve_free);
      et_chain* chr = nullptr;
      check(et_chain_generate(c.get(), 0, s, &chr));
      ChainPtr ch(chr, et_chain_free);
      for (const auto& m : methods) {
        et_trace_result* rr = nullptr;
        check(et_trace(ch.get(), m.c_str(), s, &rr));
        ResultPtr res(rr, et_trace_result_free);
        char* t = nullptr;
        check(et_trace_result_value(res.get(), &t));
        rows.push_back(BenchRow{m, bits, s, et_chain_length(ch.get()), et_chain_degree_bits(ch.get()),
                                et_trace_result_time_ms(res.get()), take(t)});
        std::cerr << m << " p_bits=" << bits << " seed=" << s << " " << rows.back().ms << " ms\n";
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
    return std::tie(a.method, a.bits, a.seed) < std::tie(b.method, b.bits, b.seed);
  });
  std::ostringstream csv;
  csv << "method,p_bits,seed,L,degree_bits,time_ms,trace\n";
  for (const auto& r : rows) {
    char ms[64];
    std::snprintf(ms, sizeof ms, "%.3f", r.ms);
    csv << r.method << ',' << r.bits << ',' << r.seed << ',' << r.steps << ',' << r.degree_bits << ',' << ms << ','
        << r.trace << '\n';
  }
  write_file(out, csv.str());
}

// "a..b"
bool parse_range(const std::string& s, unsigned& lo, unsigned& hi) {
  auto dots = s.find("..");
  if (dots == std::string::npos) return false;
  try {
    std::size_t n1 = 0, n2 = 0;
    lo = static_cast<unsigned>(std::stoul(s.substr(0, dots), &n1));
    hi = static_cast<unsigned>(std::stoul(s.substr(dots + 2), &n2));
    return n1 == dots && n2 == s.size() - dots - 2 && lo <= hi;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace of endomorphisms of supersingular elliptic curves"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;

  unsigned bits = 0;
  std::string out;
  auto* gen_curve = app.add_subcommand("gen-curve", "generate a supersingular curve over Fp2");
  gen_curve->add_option("--p-bits", bits, "bit length of p")->required()->check(CLI::Range(kMinBits, kMaxBits));
  gen_curve->add_option("--seed", seed, "random seed");
  gen_curve->add_option("--out", out, "output file")->required();

  std::string curve_path;
  unsigned length = 0;
  auto* gen_endo = app.add_subcommand("gen-endo", "generate an endomorphism as a cycle of 2-isogenies");
  gen_endo->add_option("--curve", curve_path, "curve file")->required();
  gen_endo->add_option("--length", length, "minimum number of steps (default 4*ceil(log2 p))")
      ->check(CLI::Range(2U, 100000U));
  gen_endo->add_option("--seed", seed, "random seed");
  gen_endo->add_option("--out", out, "output file")->required();

  std::string chain_path, method = "sea+p";
  bool as_json = false;
  auto* trace = app.add_subcommand("trace", "compute the trace of an endomorphism");
  trace->add_option("chain", chain_path, "chain file")->required();
  trace->add_option("--method", method, "schoof, sea, sea+p or sea+p+points")
      ->check(CLI::IsMember({"schoof", "sea", "sea+p", "sea+p+points"}));
  trace->add_option("--seed", seed, "random seed");
  trace->add_flag("--json", as_json, "print the full result as JSON");

  std::string range, bench_out;
  unsigned reps = 1;
  std::vector<std::string> methods{"schoof", "sea", "sea+p", "sea+p+points"};
  auto* bench = app.add_subcommand("bench", "time the four methods on generated instances");
  bench->add_option("--p-bits-range", range, "bit lengths a..b")->required();
  bench->add_option("--reps", reps, "instances per bit length")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "CSV output file")->required();
  bench->add_option("--seed", seed, "first instance seed");
  bench->add_option("--methods", methods, "subset of methods")
      ->check(CLI::IsMember({"schoof", "sea", "sea+p", "sea+p+points"}));

  auto* verify = app.add_subcommand("verify", "check a chain file and its trace");
  verify->add_option("chain", chain_path, "chain file")->required();
  verify->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_curve) cmd_gen_curve(bits, seed, out);
    if (*gen_endo) cmd_gen_endo(curve_path, length, seed, out);
    if (*trace) cmd_trace(chain_path, method, seed, as_json);
    if (*verify) return cmd_verify(chain_path, seed);
    if (*bench) {
      unsigned lo = 0, hi = 0;
      if (!parse_range(range, lo, hi) || lo < kMinBits || hi > kMaxBits) {
        std::cerr << "--p-bits-range must be a..b within " << kMinBits << ".." << kMaxBits << "\n";
        return kUsage;
      }
      cmd_bench(lo, hi, reps, bench_out, seed, methods);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return kOk;
}
