#include "krf/modes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace krf {

std::vector<ModeIndex> level_set(const CartanData& c, int level) {
  std::vector<ModeIndex> out;
  for (int a = 0; a < c.rank(); ++a)
    for (int m = 1; m <= c.t(a) * level; ++m) out.push_back({a, m});
  return out;
}

std::int64_t ModeMap::get(ModeIndex am) const {
  auto it = entries_.find(am);
  return it == entries_.end() ? 0 : it->second;
}

void ModeMap::set(ModeIndex am, std::int64_t value) {
  if (am.a < 0 || am.m < 1) throw std::invalid_argument("mode index out of range");
  if (value == 0) entries_.erase(am);
  else entries_[am] = value;
}

std::vector<ModeIndex> ModeMap::support() const {
  std::vector<ModeIndex> s;
  s.reserve(entries_.size());
  for (const auto& [am, v] : entries_) s.push_back(am);
  return s;
}

bool ModeMap::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second >= 0; });
}

std::int64_t ModeMap::total() const {
  std::int64_t s = 0;
  for (const auto& [am, v] : entries_) s += v;
  return s;
}

std::int64_t ModeMap::weighted_degree(int a) const {
  std::int64_t s = 0;
  for (const auto& [am, v] : entries_)
    if (am.a == a) s += std::int64_t(am.m) * v;
  return s;
}

int ModeMap::max_color() const {
  int r = -1;
  for (const auto& [am, v] : entries_) r = std::max(r, am.a);
  return r;
}

ModeMap& ModeMap::operator+=(const ModeMap& o) {
  for (const auto& [am, v] : o.entries_) add(am, v);
  return *this;
}

ModeMap ModeMap::unit(ModeIndex am, std::int64_t value) {
  ModeMap n;
  n.set(am, value);
  return n;
}

nlohmann::json ModeMap::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [am, v] : entries_) arr.push_back({{"a", am.a + 1}, {"m", am.m}, {"mult", v}});
  return arr;
}

ModeMap ModeMap::from_json(const nlohmann::json& j, int rank) {
  if (!j.is_array()) throw std::invalid_argument("mode map must be a JSON array");
  ModeMap n;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("a") || !e.contains("m") || !e.contains("mult")) {
      throw std::invalid_argument("mode map entry needs a, m, mult: " + e.dump());
    }
    if (!e["a"].is_number_integer() || !e["m"].is_number_integer() || !e["mult"].is_number_integer()) {
      throw std::invalid_argument("mode map fields must be integers: " + e.dump());
    }
    const int a = e["a"].get<int>();
    const int m = e["m"].get<int>();
    const std::int64_t mult = e["mult"].get<std::int64_t>();
    if (a < 1 || a > rank) throw std::invalid_argument("color out of range: " + e.dump());
    if (m < 1) throw std::invalid_argument("string length must be positive: " + e.dump());
    if (mult < 1) throw std::invalid_argument("multiplicity must be positive: " + e.dump());
    n.add({a - 1, m}, mult);
  }
  return n;
}

ModeMap ModeMap::parse_compact(const std::string& text, int rank) {
  nlohmann::json arr = nlohmann::json::array();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::vector<std::int64_t> parts;
    std::stringstream is(item);
    std::string field;
    while (std::getline(is, field, ':')) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(field, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad mode entry '" + item + "'");
      }
      if (used != field.size()) throw std::invalid_argument("bad mode entry '" + item + "'");
      parts.push_back(v);
    }
    if (parts.size() != 3) throw std::invalid_argument("mode entry must be a:m:mult, got '" + item + "'");
    arr.push_back({{"a", parts[0]}, {"m", parts[1]}, {"mult", parts[2]}});
  }
  return from_json(arr, rank);
}

std::string ModeMap::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [am, v] : entries_) {
    if (!first) os << ", ";
    first = false;
    os << "(" << am.a + 1 << "," << am.m << "):" << v;
  }
  os << "}";
  return os.str();
}

}  // namespace krf
