// uag: command line front end.
//
// Exit codes: 0 success/true, 1 false/refuted, 2 inconclusive/exhausted,
// 3 input or resource error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "uag/corpus.hpp"
#include "uag/equivalence.hpp"
#include "uag/error.hpp"
#include "uag/geometry.hpp"
#include "uag/io.hpp"
#include "uag/verbal.hpp"
#include "uag/verify.hpp"

using namespace uag;

namespace {

  enum Exit { ok = 0, refuted = 1, inconclusive = 2, input_error = 3 };

  struct Config {
    std::string variety;
    std::string algebras;
    std::string words;
    std::string out;
    std::string format = "json";
    std::string h1, h2, algebra;
    std::size_t nmax  = 0;  // 0: default for the signature
    std::size_t depth = 1;
    std::size_t rank  = 2;
    std::size_t cap   = Variety::default_cap;
  };

  void emit(Config const& cfg, std::string const& text) {
    if (cfg.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      throw InputError("cannot write \"" + cfg.out + "\"");
    }
    f << text;
  }

  Variety variety(Config const& cfg) {
    if (cfg.variety.empty()) {
      throw InputError("--variety is required");
    }
    return io::read_variety(cfg.variety, cfg.cap);
  }

  std::vector<FiniteAlgebra> algebras(Config const& cfg, Variety const& v) {
    if (cfg.algebras.empty()) {
      return {v.generators().begin(), v.generators().end()};
    }
    auto f = io::read_algebra_file(cfg.algebras);
    if (!(f.signature == v.signature())) {
      throw InputError(cfg.algebras + ": signature differs from the variety");
    }
    return f.algebras;
  }

  FiniteAlgebra pick(std::vector<FiniteAlgebra> const& as,
                     std::string const&                name,
                     std::size_t                       fallback) {
    if (name.empty()) {
      if (fallback >= as.size()) {
        throw InputError("not enough algebras in the input");
      }
      return as[fallback];
    }
    for (auto const& a : as) {
      if (a.name() == name) {
        return a;
      }
    }
    throw InputError("no algebra named \"" + name + "\"");
  }

  std::size_t nmax(Config const& cfg, Variety const& v) {
    return cfg.nmax != 0 ? cfg.nmax : default_n_max(v.signature());
  }

  int cmd_free(Config const& cfg) {
    auto v = variety(cfg);
    emit(cfg, io::dump(io::to_json(*v.free(cfg.rank))));
    return ok;
  }

  int cmd_lattice(Config const& cfg) {
    auto       v = variety(cfg);
    auto const H = pick(algebras(cfg, v), cfg.algebra, 0);
    PointSpace S(v.free(cfg.rank), H, cfg.cap);
    auto const L = closed_lattice(S, cfg.cap);
    if (cfg.format == "dot") {
      emit(cfg, io::lattice_dot(L, S));
    } else {
      emit(cfg, io::dump(io::lattice_json(L, S)));
    }
    return ok;
  }

  int cmd_check_words(Config const& cfg) {
    auto v = variety(cfg);
    if (cfg.words.empty()) {
      throw InputError("--words is required");
    }
    auto const ws = io::read_words(cfg.words, v.signature());
    if (!check_op1(ws)) {
      io::Json j{{"words", io::to_json(ws)}, {"op1", false}, {"op2", false}};
      emit(cfg, io::dump(j));
      return refuted;
    }
    try {
      auto const r = check_op2(ws, v, nmax(cfg, v));
      emit(cfg, io::dump(io::to_json(r, ws, v)));
      return r.passed() ? ok : refuted;
    } catch (CapExceeded const& e) {
      io::Json j{{"words", io::to_json(ws)},
                 {"op1", true},
                 {"op2", "inconclusive"},
                 {"reason", e.what()}};
      emit(cfg, io::dump(j));
      return inconclusive;
    }
  }

  int cmd_geom_eq(Config const& cfg) {
    auto       v  = variety(cfg);
    auto const as = algebras(cfg, v);
    auto const H1 = pick(as, cfg.h1, 0);
    auto const H2 = pick(as, cfg.h2, 1);
    EquivalenceOptions opts;
    opts.point_cap = cfg.cap;
    auto const cert = geom_certificate(H1, H2, v, nmax(cfg, v), opts);
    auto       j    = io::to_json(cert, v);
    j["h1"]         = H1.name();
    j["h2"]         = H2.name();
    emit(cfg, io::dump(j));
    return cert.verdict == Verdict::geometric ? ok : refuted;
  }

  int cmd_auto_eq(Config const& cfg) {
    auto       v  = variety(cfg);
    auto const as = algebras(cfg, v);
    auto const H1 = pick(as, cfg.h1, 0);
    auto const H2 = pick(as, cfg.h2, 1);
    EquivalenceOptions opts;
    opts.point_cap  = cfg.cap;
    auto const cert = auto_equivalent_search(H1, H2, v, cfg.depth, nmax(cfg, v), opts);
    auto       j    = io::to_json(cert, v);
    j["h1"]         = H1.name();
    j["h2"]         = H2.name();
    emit(cfg, io::dump(j));
    if (cert.verdict == Verdict::automorphic) {
      return ok;
    }
    return cert.size_refutation_rank ? refuted : inconclusive;
  }

  int cmd_verify(Config const& cfg) {
    std::vector<corpus::Suite> suites;
    if (cfg.variety.empty()) {
      suites = corpus::builtin();
    } else {
      auto v  = variety(cfg);
      auto as = algebras(cfg, v);
      if (as.empty()) {
        throw InputError("empty corpus");
      }
      std::vector<WordSystem> systems;
      if (!cfg.words.empty()) {
        systems.push_back(io::read_words(cfg.words, v.signature()));
      }
      std::size_t const n = nmax(cfg, v);
      suites.push_back(corpus::Suite{cfg.variety, std::move(v), std::move(as), n,
                                     cfg.depth, std::move(systems), true});
    }
    auto const report = run_verification(suites);
    emit(cfg, cfg.format == "json" ? io::dump(to_json(report)) : to_text(report));
    return report.ok() ? ok : refuted;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Universal algebraic geometry over finite algebras"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--variety", cfg.variety, "variety file (generators)");
    sub->add_option("--algebras", cfg.algebras, "algebra file");
    sub->add_option("--words", cfg.words, "word system file");
    sub->add_option("--nmax", cfg.nmax, "largest free algebra rank")->check(CLI::PositiveNumber);
    sub->add_option("--depth", cfg.depth, "word search depth");
    sub->add_option("--cap", cfg.cap, "size cap for free algebras, points and lattices")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json, dot or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
  };

  auto* free = app.add_subcommand("free", "dump the free algebra W(rank)");
  common(free);
  free->add_option("--rank", cfg.rank, "rank");
  auto* lattice = app.add_subcommand("lattice", "closed congruence lattice of W(rank)");
  common(lattice);
  lattice->add_option("--rank", cfg.rank, "rank");
  lattice->add_option("--algebra", cfg.algebra, "algebra name (default: first)");
  auto* words = app.add_subcommand("check-words", "check Op1 and Op2");
  common(words);
  auto* geom = app.add_subcommand("geom-eq", "geometric equivalence");
  common(geom);
  geom->add_option("--h1", cfg.h1, "first algebra (default: first in file)");
  geom->add_option("--h2", cfg.h2, "second algebra (default: second in file)");
  auto* autoeq = app.add_subcommand("auto-eq", "search for an automorphic equivalence");
  common(autoeq);
  autoeq->add_option("--h1", cfg.h1, "first algebra (default: first in file)");
  autoeq->add_option("--h2", cfg.h2, "second algebra (default: second in file)");
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  common(verify);

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return input_error;
  }

  try {
    if (*free) {
      return cmd_free(cfg);
    }
    if (*lattice) {
      return cmd_lattice(cfg);
    }
    if (*words) {
      return cmd_check_words(cfg);
    }
    if (*geom) {
      return cmd_geom_eq(cfg);
    }
    if (*autoeq) {
      return cmd_auto_eq(cfg);
    }
    if (*verify) {
      if (cfg.format == "json" && verify->count("--format") == 0) {
        cfg.format = "text";
      }
      return cmd_verify(cfg);
    }
  } catch (std::exception const& e) {
    std::cerr << "uag: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}
