#include "uag/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "uag/error.hpp"

namespace uag::io {

  namespace {
    std::string slurp(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw InputError("cannot open \"" + path + "\"");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    Json parse_json(std::string const& text) {
      try {
        return Json::parse(text);
      } catch (nlohmann::json::parse_error const& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
      }
    }

    std::size_t as_size(Json const& j, std::string const& what) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw InputError(what + " must be a nonnegative integer");
      }
      return j.get<std::size_t>();
    }

    // Flattens a nested table of the given depth in row-major order.
    void flatten(Json const&        j,
                 std::size_t        depth,
                 std::size_t        n,
                 std::vector<Elem>& out,
                 std::string const& what) {
      if (depth == 0) {
        std::size_t e = as_size(j, what + " entry");
        if (e >= n) {
          throw InputError(what + " entry " + std::to_string(e) + " outside {0.."
                           + std::to_string(n - 1) + "}");
        }
        out.push_back(static_cast<Elem>(e));
        return;
      }
      if (!j.is_array() || j.size() != n) {
        throw InputError(what + " must be a nested array with " + std::to_string(n)
                         + " entries per level");
      }
      for (auto const& row : j) {
        flatten(row, depth - 1, n, out, what);
      }
    }

    Json nest(OpTable const& t, std::size_t n, std::size_t depth, std::size_t& pos) {
      if (depth == 0) {
        return t.entries()[pos++];
      }
      Json arr = Json::array();
      for (std::size_t i = 0; i < n; ++i) {
        arr.push_back(nest(t, n, depth - 1, pos));
      }
      return arr;
    }

    Identity parse_identity(std::string const& text, Signature const& sig) {
      auto eq = text.find('=');
      if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos) {
        throw InputError("identity \"" + text + "\" must have the form lhs = rhs");
      }
      // variables are unrestricted in identities
      constexpr std::size_t many = 1'000;
      return Identity{parse_term(text.substr(0, eq), sig, many),
                      parse_term(text.substr(eq + 1), sig, many)};
    }
  }  // namespace

  AlgebraFile parse_algebra_file(std::string const& text) {
    Json const j = parse_json(text);
    if (!j.is_object()) {
      throw InputError("algebra file must be a JSON object");
    }
    if (!j.contains("signature") || !j["signature"].is_array()) {
      throw InputError("algebra file needs a \"signature\" array");
    }
    std::vector<Symbol> symbols;
    for (auto const& s : j["signature"]) {
      if (!s.is_object() || !s.contains("name") || !s["name"].is_string()
          || !s.contains("arity")) {
        throw InputError("signature entries need \"name\" and \"arity\"");
      }
      symbols.push_back(Symbol{s["name"].get<std::string>(), as_size(s["arity"], "arity")});
    }
    AlgebraFile result;
    result.signature = Signature(std::move(symbols));
    Signature const& sig = result.signature;
    if (!j.contains("algebras") || !j["algebras"].is_array()) {
      throw InputError("algebra file needs an \"algebras\" array");
    }
    std::set<std::string> names;
    for (auto const& a : j["algebras"]) {
      if (!a.is_object() || !a.contains("name") || !a["name"].is_string()) {
        throw InputError("every algebra needs a \"name\"");
      }
      auto const name = a["name"].get<std::string>();
      if (!names.insert(name).second) {
        throw InputError("duplicate algebra name \"" + name + "\"");
      }
      if (!a.contains("size")) {
        throw InputError("algebra \"" + name + "\" has no \"size\"");
      }
      std::size_t const n = as_size(a["size"], "size of \"" + name + "\"");
      if (n == 0) {
        throw InputError("algebra \"" + name + "\" is empty");
      }
      if (!a.contains("ops") || !a["ops"].is_object()) {
        throw InputError("algebra \"" + name + "\" has no \"ops\" object");
      }
      for (auto const& [key, _] : a["ops"].items()) {
        if (!sig.find(key)) {
          throw InputError("algebra \"" + name + "\": unknown operation \"" + key + "\"");
        }
      }
      std::vector<OpTable> tables;
      for (std::size_t w = 0; w < sig.size(); ++w) {
        auto const& sym = sig[w];
        if (!a["ops"].contains(sym.name)) {
          throw InputError("algebra \"" + name + "\" has no table for \"" + sym.name + "\"");
        }
        std::vector<Elem> entries;
        flatten(a["ops"][sym.name], sym.arity, n, entries,
                "table \"" + sym.name + "\" of \"" + name + "\"");
        tables.emplace_back(sym.arity, n, std::move(entries));
      }
      result.algebras.emplace_back(name, sig, n, std::move(tables));
    }
    if (j.contains("identities")) {
      if (!j["identities"].is_array()) {
        throw InputError("\"identities\" must be an array of strings");
      }
      for (auto const& s : j["identities"]) {
        if (!s.is_string()) {
          throw InputError("\"identities\" must be an array of strings");
        }
        result.identities.push_back(parse_identity(s.get<std::string>(), sig));
      }
    }
    return result;
  }

  AlgebraFile read_algebra_file(std::string const& path) {
    try {
      return parse_algebra_file(slurp(path));
    } catch (Error const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  Variety read_variety(std::string const& path, std::size_t cap) {
    auto f = read_algebra_file(path);
    if (f.algebras.empty()) {
      throw InputError(path + ": a variety needs at least one generator");
    }
    return Variety(std::move(f.algebras), std::move(f.identities), cap);
  }

  WordSystem parse_words(std::string const& text, Signature const& sig) {
    Json const j = parse_json(text);
    if (!j.is_object() || !j.contains("words") || !j["words"].is_object()) {
      throw InputError("word system file needs a \"words\" object");
    }
    auto const& words = j["words"];
    for (auto const& [key, _] : words.items()) {
      if (!sig.find(key)) {
        throw InputError("word system: unknown symbol \"" + key + "\"");
      }
    }
    std::vector<Term> terms;
    for (std::size_t w = 0; w < sig.size(); ++w) {
      if (!words.contains(sig[w].name) || !words[sig[w].name].is_string()) {
        throw InputError("word system: no word for \"" + sig[w].name + "\"");
      }
      try {
        terms.push_back(parse_term(words[sig[w].name].get<std::string>(), sig, sig[w].arity));
      } catch (ParseError const& e) {
        throw InputError("word for \"" + sig[w].name + "\": " + e.what());
      }
    }
    return WordSystem(sig, std::move(terms));
  }

  WordSystem read_words(std::string const& path, Signature const& sig) {
    try {
      return parse_words(slurp(path), sig);
    } catch (Error const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Output
  ////////////////////////////////////////////////////////////////////////

  Json to_json(FiniteAlgebra const& A) {
    Json ops = Json::object();
    for (std::size_t w = 0; w < A.signature().size(); ++w) {
      std::size_t pos = 0;
      ops[A.signature()[w].name]
          = nest(A.table(w), A.size(), A.signature()[w].arity, pos);
    }
    return Json{{"name", A.name()}, {"size", A.size()}, {"ops", std::move(ops)}};
  }

  Json algebra_file_json(Signature const&                  sig,
                         std::vector<FiniteAlgebra> const& algebras) {
    Json s = Json::array();
    for (std::size_t w = 0; w < sig.size(); ++w) {
      s.push_back(Json{{"name", sig[w].name}, {"arity", sig[w].arity}});
    }
    Json a = Json::array();
    for (auto const& A : algebras) {
      a.push_back(to_json(A));
    }
    return Json{{"signature", std::move(s)}, {"algebras", std::move(a)}};
  }

  Json to_json(WordSystem const& ws) {
    Json words = Json::object();
    for (std::size_t w = 0; w < ws.signature().size(); ++w) {
      words[ws.signature()[w].name] = ws.word(w).to_string(ws.signature());
    }
    return words;
  }

  Json to_json(FreeAlgebra const& B) {
    Json elements = Json::array();
    for (std::size_t b = 0; b < B.size(); ++b) {
      elements.push_back(Json{{"index", b},
                              {"witness", B.witness(static_cast<Elem>(b)).to_string(B.signature())}});
    }
    Json gens = Json::array();
    for (Elem g : B.generators()) {
      gens.push_back(g);
    }
    return Json{{"rank", B.rank()},
                {"size", B.size()},
                {"variety", B.variety_fingerprint()},
                {"generators", std::move(gens)},
                {"elements", std::move(elements)}};
  }

  Json to_json(Congruence const& c, FreeAlgebra const& B) {
    Json blocks = Json::array();
    for (auto const& block : c.blocks()) {
      Json terms = Json::array();
      for (Elem e : block) {
        terms.push_back(B.witness(e).to_string(B.signature()));
      }
      blocks.push_back(std::move(terms));
    }
    return blocks;
  }

  Json lattice_json(ClosedLattice const& L, PointSpace const& S) {
    Json elems = Json::array();
    for (std::size_t i = 0; i < L.size(); ++i) {
      auto const& e = L.elements[i];
      elems.push_back(Json{{"index", i},
                           {"partition", e.partition.encode()},
                           {"points", e.points.size()},
                           {"blocks", to_json(e.partition, S.free_algebra())}});
    }
    Json edges = Json::array();
    for (auto [a, b] : hasse_edges(L)) {
      edges.push_back(Json::array({a, b}));
    }
    return Json{{"algebra", S.target().name()},
                {"rank", S.free_algebra().rank()},
                {"free_size", S.free_algebra().size()},
                {"size", L.size()},
                {"id", 0},
                {"elements", std::move(elems)},
                {"hasse", std::move(edges)}};
  }

  std::string lattice_dot(ClosedLattice const& L, PointSpace const& S) {
    std::ostringstream out;
    out << "digraph \"Cl_" << S.target().name() << "_W" << S.free_algebra().rank()
        << "\" {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < L.size(); ++i) {
      std::string label;
      for (auto const& block : L.elements[i].partition.blocks()) {
        label += "{";
        for (std::size_t j = 0; j < block.size(); ++j) {
          label += (j ? "," : "")
                   + S.free_algebra().witness(block[j]).to_string(S.free_algebra().signature());
        }
        label += "}";
      }
      out << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    for (auto [a, b] : hasse_edges(L)) {
      out << "  n" << a << " -> n" << b << ";\n";
    }
    out << "}\n";
    return out.str();
  }

  Json to_json(EquivalenceCertificate const& cert, Variety const& v) {
    Json j;
    j["verdict"] = to_string(cert.verdict);
    j["bounds"]  = Json{{"n_max", cert.n_max}, {"depth_max", cert.depth_max}};
    j["variety"] = v.fingerprint();
    if (cert.word_system) {
      j["word_system"] = to_json(*cert.word_system);
      j["match"]       = cert.match;
      j["op2"]         = "verified up to n_max";
    }
    Json lattices = Json::array();
    for (auto const& c : cert.lattices) {
      lattices.push_back(Json{{"rank", c.rank},
                              {"size1", c.size1},
                              {"size2", c.size2},
                              {"equal", c.equal()},
                              {"fingerprint1", c.fingerprint1},
                              {"fingerprint2", c.fingerprint2}});
    }
    j["lattices"] = std::move(lattices);
    if (cert.witness) {
      auto const B = v.free(cert.witness->rank);
      j["witness"] = Json{{"rank", cert.witness->rank},
                          {"partition", cert.witness->congruence.encode()},
                          {"blocks", to_json(cert.witness->congruence, *B)},
                          {"closed_for", cert.witness->closed_for_first ? "first" : "second"}};
    }
    if (cert.size_refutation_rank) {
      j["size_refutation"] = Json{{"rank", *cert.size_refutation_rank}};
    }
    if (cert.candidates != 0) {
      j["candidates"] = Json{{"enumerated", cert.candidates},
                             {"op2_passed", cert.candidates_op2},
                             {"capped", cert.candidates_capped}};
    }
    return j;
  }

  Json to_json(Op2Result const& r, WordSystem const& ws, Variety const& v) {
    Json j;
    j["words"]  = to_json(ws);
    j["op1"]    = check_op1(ws);
    j["op2"]    = r.passed();
    j["n_max"]  = r.n_max;
    j["verified_ranks"] = Json::array();
    for (auto const& [k, _] : r.sigma) {
      j["verified_ranks"].push_back(k);
    }
    if (r.failure) {
      Json f{{"rank", r.failure->rank},
             {"stage", to_string(r.failure->stage)},
             {"detail", r.failure->detail}};
      if (r.failure->identity) {
        auto const& sig = v.signature();
        f["identity"]   = r.failure->identity->lhs.to_string(sig) + " = "
                        + r.failure->identity->rhs.to_string(sig);
      }
      j["failure"] = std::move(f);
    }
    return j;
  }

  std::string dump(Json const& j) {
    return j.dump(2) + "\n";
  }

}  // namespace uag::io
