#include "opchain/chains/sigma.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include "opchain/core/error.hpp"

namespace opchain::chains {

SigmaSpec shift_sigma(Index step) {
  if (step == 0) return table_sigma({}, 0, 0);
  SigmaSpec s;
  s.label = "n+" + std::to_string(step);
  s.forward = [step](Index n) { return n + step; };
  s.inverse = [step](Index m) -> std::optional<Index> {
    if (m < step) return std::nullopt;
    return m - step;
  };
  s.surjective = Surjectivity::No;
  s.n0 = 0;
  s.displacement = std::make_pair(Index{0}, step);
  return s;
}

SigmaSpec affine_sigma(Index a, Index b) {
  if (a == 0) throw Error(ErrorCode::InvalidSpec, "affine sigma needs a >= 1");
  if (a == 1) return shift_sigma(b);
  SigmaSpec s;
  s.label = std::to_string(a) + "n+" + std::to_string(b);
  s.forward = [a, b](Index n) { return a * n + b; };
  s.inverse = [a, b](Index m) -> std::optional<Index> {
    if (m < b || (m - b) % a != 0) return std::nullopt;
    return (m - b) / a;
  };
  s.surjective = Surjectivity::No;
  // b itself is hit by n = 0, so pick the first value that is not.
  s.n0 = b == 0 ? 1 : 0;
  return s;
}

SigmaSpec swap_sigma(Index p, Index q) {
  if (p == q) throw Error(ErrorCode::InvalidSpec, "swap needs two distinct points");
  SigmaSpec s;
  s.label = "swap(" + std::to_string(p) + "," + std::to_string(q) + ")";
  s.forward = [p, q](Index n) { return n == p ? q : (n == q ? p : n); };
  s.inverse = [p, q](Index m) -> std::optional<Index> { return m == p ? q : (m == q ? p : m); };
  s.surjective = Surjectivity::Yes;
  s.n0 = p;
  const Index d = p > q ? p - q : q - p;
  s.displacement = std::make_pair(d, d);
  return s;
}

SigmaSpec table_sigma(std::vector<Index> table, Index tail_shift, std::optional<Index> n0) {
  const Index len = table.size();
  std::unordered_map<Index, Index> preimage;
  for (Index n = 0; n < len; ++n) {
    if (!preimage.emplace(table[n], n).second) {
      throw Error(ErrorCode::InvalidSpec, "table sigma repeats value " + std::to_string(table[n]), n);
    }
    if (table[n] >= len + tail_shift) {
      throw Error(ErrorCode::InvalidSpec,
                  "table value " + std::to_string(table[n]) + " collides with the shifted tail", n);
    }
  }
  bool onto = tail_shift == 0;
  for (Index v = 0; onto && v < len; ++v) onto = preimage.count(v) != 0;
  SigmaSpec s;
  s.label = "table[" + std::to_string(len) + "]+tail(n+" + std::to_string(tail_shift) + ")";
  auto shared = std::make_shared<std::vector<Index>>(std::move(table));
  auto inv = std::make_shared<std::unordered_map<Index, Index>>(std::move(preimage));
  s.forward = [shared, len, tail_shift](Index n) { return n < len ? (*shared)[n] : n + tail_shift; };
  s.inverse = [inv, len, tail_shift](Index m) -> std::optional<Index> {
    if (auto it = inv->find(m); it != inv->end()) return it->second;
    if (m >= len + tail_shift) return m - tail_shift;
    return std::nullopt;
  };
  s.surjective = onto ? Surjectivity::Yes : Surjectivity::No;
  if (n0) {
    s.n0 = *n0;
  } else if (onto) {
    s.n0 = 0;
  } else {
    Index v = 0;
    while (s.inverse(v)) ++v;
    s.n0 = v;
  }
  if (!onto && s.inverse(s.n0)) {
    throw Error(ErrorCode::InvalidSpec, "n0 = " + std::to_string(s.n0) + " has a preimage under a non-surjective sigma");
  }
  return s;
}

SigmaSpec parse_sigma(std::string_view text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  std::smatch m;
  static const std::regex shift_re(R"(n\+(\d+))");
  static const std::regex affine_re(R"((\d+)\*?n(?:\+(\d+))?)");
  static const std::regex swap_re(R"(swap\((\d+),(\d+)\))");
  if (std::regex_match(t, m, shift_re)) return shift_sigma(std::stoull(m[1]));
  if (std::regex_match(t, m, affine_re)) {
    return affine_sigma(std::stoull(m[1]), m[2].matched ? std::stoull(m[2]) : 0);
  }
  if (std::regex_match(t, m, swap_re)) return swap_sigma(std::stoull(m[1]), std::stoull(m[2]));
  throw Error(ErrorCode::ParseError, "unrecognised sigma '" + std::string(text) +
                                         "' (expected n+c, an+b, swap(p,q) or a table file)");
}

SigmaSpec load_sigma_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open sigma table '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    std::vector<Index> forward = j.at("forward").get<std::vector<Index>>();
    const Index tail = j.value("tail_shift", Index{0});
    std::optional<Index> n0;
    if (j.contains("n0")) n0 = j["n0"].get<Index>();
    auto s = table_sigma(std::move(forward), tail, n0);
    s.label = "file:" + path;
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "bad sigma table '" + path + "': " + e.what());
  }
}

void validate(const SigmaSpec& spec, Index bound) {
  std::unordered_set<Index> seen;
  for (Index n = 0; n <= bound; ++n) {
    if (!seen.insert(spec(n)).second) {
      throw Error(ErrorCode::InvalidSpec, spec.label + " is not injective at " + std::to_string(n), n);
    }
  }
  if (spec.surjective == Surjectivity::No) {
    for (Index m = 0; m <= spec.spotcheck_bound; ++m) {
      if (spec(m) == spec.n0) {
        throw Error(ErrorCode::InvalidSpec,
                    "n0 = " + std::to_string(spec.n0) + " is hit by sigma(" + std::to_string(m) + ")", m);
      }
    }
  }
  if (spec.surjective == Surjectivity::Yes && !spec.has_inverse()) {
    throw Error(ErrorCode::InvalidSpec, spec.label + ": a surjective sigma needs an inverse oracle");
  }
}

}  // namespace opchain::chains
