#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace betainv {

enum class Verdict { hold, fail, undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::hold: return "hold";
    case Verdict::fail: return "fail";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

struct Detail {
  std::string key;
  std::variant<std::int64_t, bool, std::string> value;
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::undecided;
  std::string reason;
  std::vector<Detail> details;

  CheckResult& add(std::string key, std::uint64_t v) { return add(std::move(key), static_cast<std::int64_t>(v)); }
  CheckResult& add(std::string key, int v) { return add(std::move(key), static_cast<std::int64_t>(v)); }
  CheckResult& add(std::string key, std::int64_t v) {
    details.push_back({std::move(key), v});
    return *this;
  }
  CheckResult& add(std::string key, bool v) {
    details.push_back({std::move(key), v});
    return *this;
  }
  CheckResult& add(std::string key, const char* v) { return add(std::move(key), std::string(v)); }
  CheckResult& add(std::string key, std::string v) {
    details.push_back({std::move(key), std::move(v)});
    return *this;
  }
  CheckResult& set(Verdict v, std::string why) {
    verdict = v;
    reason = std::move(why);
    return *this;
  }
};

/// Worst verdict wins: fail > undecided > hold.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::undecided || b == Verdict::undecided) return Verdict::undecided;
  return Verdict::hold;
}

}  // namespace betainv
