#include "endotrace/endotrace.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "endotrace/endgen.hpp"
#include "endotrace/serialize.hpp"

using namespace endotrace;

struct et_curve {
  Fp2Curve E;
};
struct et_chain {
  Chain chain;
};
struct et_trace_result {
  TraceResult result;
  double time_ms;
};

namespace {

thread_local std::string last_error;

et_status from_code(ErrorCode c) { return static_cast<et_status>(static_cast<int>(c) + 1); }

template <class Fn>
et_status guarded(Fn fn) {
  try {
    last_error.clear();
    fn();
    return ET_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return from_code(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return ET_E_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* et_status_name(et_status status) {
  switch (status) {
    case ET_OK: return "Ok";
    case ET_E_VERIFY_FAILED: return "VerifyFailed";
    case ET_E_INTERNAL: return "Internal";
    default: break;
  }
  if (status > ET_OK && status < ET_E_VERIFY_FAILED) return error_code_name(static_cast<ErrorCode>(status - 1));
  return "Unknown";
}

const char* et_last_error(void) { return last_error.c_str(); }

void et_string_free(char* s) { std::free(s); }

et_status et_curve_generate(unsigned p_bits, uint64_t seed, et_curve** out) {
  return guarded([&] {
    require(out, "out");
    if (p_bits < 4 || p_bits > 62) throw Error(ErrorCode::InvalidArgument, "p_bits must lie in [4, 62]");
    auto p = random_prime_3mod4(p_bits, seed);
    *out = new et_curve{random_supersingular_curve(p, seed)};
  });
}

et_status et_curve_from_json(const char* text, et_curve** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new et_curve{curve_from_json(text)};
  });
}

et_status et_curve_to_json(const et_curve* curve, char** out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    *out = copy_string(curve_to_json(curve->E));
  });
}

et_status et_curve_describe(const et_curve* curve, uint64_t seed, char** out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    const auto& E = curve->E;
    const auto& f = E.field();
    std::vector<std::uint64_t> j;
    f.coords(E.j_invariant(), j);
    nlohmann::ordered_json d;
    d["p"] = std::to_string(f.characteristic());
    d["j"] = {std::to_string(j[0]), std::to_string(j[1])};
    bool ss = is_supersingular(E, 8, seed);
    d["supersingular"] = ss;
    d["group_order"] = ss ? group_order_supersingular(E, seed).get_str() : std::string();
    *out = copy_string(d.dump());
  });
}

void et_curve_free(et_curve* curve) { delete curve; }

et_status et_chain_generate(const et_curve* curve, unsigned length, uint64_t seed, et_chain** out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    int L = static_cast<int>(length);
    if (L == 0) {
      BigInt pm1(static_cast<unsigned long>(curve->E.field().characteristic() - 1));
      L = 4 * static_cast<int>(mpz_sizeinbase(pm1.get_mpz_t(), 2));  // 4 * ceil(log2 p)
    }
    *out = new et_chain{random_cycle(curve->E, L, seed)};
  });
}

et_status et_chain_identity(const et_curve* curve, et_chain** out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    *out = new et_chain{Chain{curve->E, {}}};
  });
}

et_status et_chain_from_json(const char* text, et_chain** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new et_chain{chain_from_json(text)};
  });
}

et_status et_chain_to_json(const et_chain* chain, char** out) {
  return guarded([&] {
    require(chain, "chain");
    require(out, "out");
    *out = copy_string(chain_to_json(chain->chain));
  });
}

size_t et_chain_length(const et_chain* chain) { return chain ? chain->chain.steps.size() : 0; }

size_t et_chain_degree_bits(const et_chain* chain) {
  if (!chain) return 0;
  BigInt d = chain_degree(chain->chain);
  return mpz_sizeinbase(d.get_mpz_t(), 2);
}

void et_chain_free(et_chain* chain) { delete chain; }

et_status et_trace(const et_chain* chain, const char* method, uint64_t seed, et_trace_result** out) {
  return guarded([&] {
    require(chain, "chain");
    require(method, "method");
    require(out, "out");
    auto m = parse_method(method);
    if (!m) throw Error(ErrorCode::InvalidArgument, std::string("unknown method ") + method);
    auto t0 = std::chrono::steady_clock::now();
    auto r = compute_trace(chain->chain, *m, seed);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    *out = new et_trace_result{std::move(r), ms};
  });
}

et_status et_trace_result_value(const et_trace_result* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    *out = copy_string(result->result.trace.get_str());
  });
}

double et_trace_result_time_ms(const et_trace_result* result) { return result ? result->time_ms : 0.0; }

et_status et_trace_result_to_json(const et_trace_result* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    *out = copy_string(trace_result_to_json(result->result));
  });
}

void et_trace_result_free(et_trace_result* result) { delete result; }

et_status et_verify(const et_chain* chain, uint64_t seed, char** report) {
  bool all_ok = true;
  et_status st = guarded([&] {
    require(chain, "chain");
    require(report, "report");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : verify_chain(chain->chain, seed)) {
      arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
      all_ok = all_ok && c.ok;
    }
    *report = copy_string(arr.dump(2) + "\n");
  });
  if (st == ET_OK && !all_ok) {
    last_error = "verification failed";
    return ET_E_VERIFY_FAILED;
  }
  return st;
}

}  // extern "C"
