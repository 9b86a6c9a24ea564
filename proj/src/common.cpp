#include "lovx/common.hpp"

#include <cstdlib>
#include <thread>

namespace lovx {

std::uint64_t pow3(int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

std::uint64_t pair_code(const SetPair& p, int n) {
  std::uint64_t code = 0, base = 1;
  for (int e = 0; e < n; ++e, base *= 3) {
    if (p.pos >> e & 1)
      code += base;
    else if (p.neg >> e & 1)
      code += 2 * base;
  }
  return code;
}

SetPair pair_from_code(std::uint64_t code, int n) {
  SetPair p;
  for (int e = 0; e < n; ++e) {
    switch (code % 3) {
      case 1: p.pos |= SubsetId{1} << e; break;
      case 2: p.neg |= SubsetId{1} << e; break;
      default: break;
    }
    code /= 3;
  }
  return p;
}

std::vector<int> subset_vertices(SubsetId a, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (a >> i & 1) out.push_back(i);
  return out;
}

std::string subset_to_string(SubsetId a, int n) {
  std::string s = "{";
  bool first = true;
  for (int i : subset_vertices(a, n)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

std::string tuple_to_string(const SetTuple& t, int n) {
  std::string s = "(";
  for (int i = 0; i < t.k(); ++i) {
    if (i) s += "; ";
    s += subset_to_string(t.parts[i].pos, n);
    if (t.parts[i].neg) s += "-" + subset_to_string(t.parts[i].neg, n);
  }
  return s + ")";
}

int thread_budget() {
  if (const char* env = std::getenv("LOVX_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace lovx
