#ifndef QLAB_IO_HPP
#define QLAB_IO_HPP

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "qlab/audit.hpp"

namespace qlab {

// ---- files --------------------------------------------------------------------

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::io_error, "write failed for " + path.string());
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, what + ": " + e.what());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- lattices -----------------------------------------------------------------

inline json lattice_to_json(const Lattice& l) {
  json covers = json::array();
  for (auto [lo, hi] : l.poset().covers()) covers.push_back({lo, hi});
  return {{"name", l.name()}, {"n", l.size()}, {"covers", covers}};
}

/// Rebuilds a lattice from its JSON form, keeping the file's numbering.
inline LatticePtr lattice_from_json(const json& j, const std::string& fallback_name = "lattice",
                                    const Limits& limits = {}) {
  std::size_t n = 0;
  std::vector<Cover> covers;
  std::string name = fallback_name;
  try {
    n = j.at("n").get<std::size_t>();
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw Error(Errc::invalid_lattice, "a cover must be a pair [lower, upper]");
      const auto lo = c[0].get<std::int64_t>(), hi = c[1].get<std::int64_t>();
      if (lo < 0 || hi < 0 || static_cast<std::uint64_t>(lo) >= n || static_cast<std::uint64_t>(hi) >= n)
        throw Error(Errc::invalid_lattice, "cover [" + std::to_string(lo) + "," + std::to_string(hi) + "] outside 0.." +
                                               std::to_string(n == 0 ? 0 : n - 1));
      covers.emplace_back(static_cast<Elem>(lo), static_cast<Elem>(hi));
    }
    if (j.contains("name")) name = j.at("name").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_lattice, std::string("malformed lattice JSON: ") + e.what());
  }
  if (n == 0) throw Error(Errc::invalid_lattice, "a lattice needs at least one element");
  LatticePtr l;
  try {
    l = Lattice::from_poset(Poset::from_covers(n, covers), name, limits);
  } catch (const Error& e) {
    if (e.code() == Errc::size_limit_exceeded) throw;
    throw Error(Errc::invalid_lattice, std::string(e.what()), e.witness());
  }
  if (!l->is_lattice()) throw Error(Errc::invalid_lattice, name + " is a poset but not a lattice");
  return l;
}

inline LatticePtr load_lattice(const std::filesystem::path& path, const Limits& limits = {}) {
  return lattice_from_json(parse_json(read_file(path), path.string()), path.stem().string(), limits);
}

/// Lattices named by the generators: "chain(N)", "boolean(K)", "m3", "n5".
inline LatticePtr lattice_by_generator_name(const std::string& name, const Limits& limits = {}) {
  static const std::regex re(R"((chain|boolean)\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, re)) {
    const auto k = std::stoul(m[2]);
    return m[1] == "chain" ? chain(k, limits) : boolean(k, limits);
  }
  if (name == "m3") return diamond_m3();
  if (name == "n5") return pentagon_n5();
  return nullptr;
}

// ---- relations and maps -------------------------------------------------------

inline json relation_to_json(const WedgeRelation& w) {
  json pairs = json::array();
  for (auto [x, y] : w.pairs()) pairs.push_back({x, y});
  return {{"lattice", w.lattice()->name()},
          {"kind", std::string(to_string(w.kind()))},
          {"method", std::string(to_string(w.method()))},
          {"pairs", pairs}};
}

inline json map_to_json(const MonotoneMap& f) {
  if (f.dom() == f.cod() || f.dom()->name() == f.cod()->name())
    return {{"lattice", f.dom()->name()}, {"image", f.image()}};
  return {{"dom", f.dom()->name()}, {"cod", f.cod()->name()}, {"image", f.image()}};
}

/// Reads `{"lattice", "image"}` or `{"dom", "cod", "image"}`; `resolve` maps
/// a lattice name to the lattice.
template <class Resolve>
MonotoneMap map_from_json(const json& j, Resolve&& resolve) {
  try {
    auto image = j.at("image").get<std::vector<Elem>>();
    LatticePtr dom, cod;
    if (j.contains("lattice")) {
      dom = cod = resolve(j.at("lattice").get<std::string>());
    } else {
      dom = resolve(j.at("dom").get<std::string>());
      cod = resolve(j.at("cod").get<std::string>());
    }
    for (Elem v : image)
      if (v >= cod->size()) throw Error(Errc::index_out_of_range, "image value " + std::to_string(v) + " outside codomain");
    return make_map(dom, cod, std::move(image));
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("malformed map JSON: ") + e.what());
  }
}

// ---- witnesses, counterexamples, reports --------------------------------------

inline json value_to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonotoneMap>) {
          return {{"type", "map"}, {"value", map_to_json(x)}};
        } else if constexpr (std::is_same_v<T, MapFamily>) {
          json arr = json::array();
          for (const auto& f : x) arr.push_back(map_to_json(f));
          return {{"type", "maps"}, {"value", arr}};
        } else if constexpr (std::is_same_v<T, Elem>) {
          return {{"type", "element"}, {"value", x}};
        } else {
          return {{"type", "elements"}, {"value", x}};
        }
      },
      v);
}

inline Value value_from_json(const json& j, const Env& env) {
  auto resolve = [&env](const std::string& name) { return env.by_name(name); };
  try {
    const auto type = j.at("type").get<std::string>();
    const json& v = j.at("value");
    if (type == "map") return map_from_json(v, resolve);
    if (type == "maps") {
      MapFamily fam;
      for (const auto& f : v) fam.push_back(map_from_json(f, resolve));
      return fam;
    }
    if (type == "element") return v.get<Elem>();
    if (type == "elements") return v.get<ElemFamily>();
    throw Error(Errc::io_error, "unknown witness type '" + type + "'");
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("malformed witness JSON: ") + e.what());
  }
}

inline json counterexample_to_json(const Counterexample& cx) {
  json w = json::array();
  for (const auto& x : cx.witnesses) {
    json e = value_to_json(x.value);
    e["name"] = x.name;
    w.push_back(std::move(e));
  }
  return {{"law", cx.law},
          {"params", cx.params},
          {"witnesses", w},
          {"lhs", cx.lhs ? value_to_json(*cx.lhs) : json(nullptr)},
          {"rhs", cx.rhs ? value_to_json(*cx.rhs) : json(nullptr)},
          {"relation", cx.relation},
          {"note", cx.note}};
}

inline Counterexample counterexample_from_json(const json& j, const Env& env) {
  try {
    Counterexample cx;
    cx.law = j.at("law").get<std::string>();
    cx.params = j.at("params");
    for (const auto& w : j.at("witnesses")) cx.witnesses.push_back({w.at("name").get<std::string>(), value_from_json(w, env)});
    if (!j.at("lhs").is_null()) cx.lhs = value_from_json(j.at("lhs"), env);
    if (!j.at("rhs").is_null()) cx.rhs = value_from_json(j.at("rhs"), env);
    cx.relation = j.value("relation", "");
    cx.note = j.value("note", "");
    return cx;
  } catch (const json::exception& e) {
    throw Error(Errc::io_error, std::string("malformed counterexample JSON: ") + e.what());
  }
}

inline json report_to_json(const ClaimReport& r) {
  json mode = {{"kind", std::string(to_string(r.mode))}, {"seed", r.seed}};
  if (r.mode == SearchMode::sampled) mode["samples"] = r.samples;
  json j = {{"claim_id", r.claim_id},
            {"lattice", r.lattice},
            {"expected", std::string(to_string(r.expected))},
            {"mode", mode},
            {"verdict", std::string(to_string(r.verdict))},
            {"instances", r.instances}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (!r.note.empty()) j["note"] = r.note;
  if (r.counterexample) j["counterexample"] = counterexample_to_json(*r.counterexample);
  return j;
}

inline json reports_to_json(const std::vector<ClaimReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

inline std::string image_string(const MonotoneMap& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f(static_cast<Elem>(i)));
  return s + "]";
}

inline std::string value_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MonotoneMap>) {
          return image_string(x);
        } else if constexpr (std::is_same_v<T, MapFamily>) {
          std::string s = "{";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + image_string(x[i]);
          return s + "}";
        } else if constexpr (std::is_same_v<T, Elem>) {
          return std::to_string(x);
        } else {
          std::string s = "{";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
          return s + "}";
        }
      },
      v);
}

inline std::string report_to_text(const ClaimReport& r) {
  std::ostringstream s;
  std::string verdict(to_string(r.verdict));
  for (auto& c : verdict) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  s << r.claim_id << ": " << verdict << " (" << to_string(r.expected) << ", " << r.instances << " instances)";
  if (!r.reason.empty()) s << " " << r.reason;
  s << "\n";
  if (r.counterexample) {
    const auto& cx = *r.counterexample;
    s << "    " << cx.law;
    for (const auto& w : cx.witnesses) s << " " << w.name << "=" << value_string(w.value);
    if (cx.lhs) s << " | lhs=" << value_string(*cx.lhs);
    if (cx.rhs) s << " rhs=" << value_string(*cx.rhs);
    if (!cx.relation.empty()) s << " | expected " << cx.relation;
    if (!cx.note.empty()) s << " (" << cx.note << ")";
    s << "\n";
  }
  return s.str();
}

}  // namespace qlab

#endif  // QLAB_IO_HPP
