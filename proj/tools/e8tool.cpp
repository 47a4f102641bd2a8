// Command-line front end: factorization, pi(E8(q)), the nu(E8(q)) order
// list, spectrum membership, Gruenberg-Kegel graphs, pairwise exclusion
// checks, and the full verification sweep.
//
// Exit codes: 0 success, 1 computational failure, 2 usage error.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "e8v/cyclotomic.hpp"
#include "e8v/factor_cache.hpp"
#include "e8v/factorizer.hpp"
#include "e8v/primegraph.hpp"
#include "e8v/report_io.hpp"
#include "e8v/spectrum.hpp"
#include "e8v/verifier.hpp"

namespace {

using e8v::Nat;

struct Options {
  std::string cache_path;
  std::string format = "text";
  std::string pphi_table_path;
  std::string classes = "0,1,4";
  unsigned jobs = std::thread::hardware_concurrency();
  bool verbose = false;
};

std::string resolve_cache_path(const Options& opt) {
  if (!opt.cache_path.empty()) return opt.cache_path;
  if (const char* env = std::getenv("E8V_CACHE")) return env;
  return "factor-cache.json";
}

std::set<unsigned> parse_classes(const std::string& spec) {
  std::set<unsigned> classes;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const unsigned long v = std::stoul(item);
    if (v > 4) throw CLI::ValidationError("--classes", "residues must be 0..4");
    classes.insert(static_cast<unsigned>(v));
  }
  if (classes.empty()) throw CLI::ValidationError("--classes", "no residues given");
  return classes;
}

Nat parse_nat(const std::string& text) {
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw CLI::ValidationError("expected a decimal integer, got '" + text + "'");
  return Nat(text);
}

e8v::PPhiTable load_pphi(const Options& opt) {
  if (opt.pphi_table_path.empty()) return e8v::PPhiTable();
  return e8v::PPhiTable::load(opt.pphi_table_path);
}

// Prime-power validation with the factorization shown on rejection.
e8v::PrimePowerQ require_prime_power(const Nat& q, e8v::FactorCache* cache) {
  auto parsed = e8v::PrimePowerQ::parse(q);
  if (!parsed) {
    std::ostringstream msg;
    msg << "q = " << q << " is not a prime power";
    if (q >= 2) msg << " (q = " << e8v::factor(q, cache).to_string() << ")";
    throw CLI::ValidationError(msg.str());
  }
  return *parsed;
}

nlohmann::json factorization_json(const e8v::Factorization& f) {
  nlohmann::json j;
  j["value"] = f.value.str();
  j["factors"] = nlohmann::json::array();
  for (const auto& [p, e] : f.factors) j["factors"].push_back({p.str(), e});
  return j;
}

void emit(const Options& opt, const nlohmann::json& j, const std::string& text) {
  if (opt.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_factor(const Options& opt, const std::string& n_text) {
  const Nat n = parse_nat(n_text);
  e8v::FactorCache cache = e8v::FactorCache::load(resolve_cache_path(opt));
  const auto f = e8v::factor(n, &cache);
  cache.save_if_dirty();
  std::ostringstream text;
  text << n << " = " << f.to_string() << "\n";
  emit(opt, factorization_json(f), text.str());
  return 0;
}

int cmd_pi(const Options& opt, const std::string& q_text) {
  const Nat q = parse_nat(q_text);
  e8v::FactorCache cache = e8v::FactorCache::load(resolve_cache_path(opt));
  const auto qq = require_prime_power(q, &cache);

  nlohmann::json j;
  j["q"] = q.str();
  j["characteristic"] = qq.s.str();
  j["t"] = qq.t;
  j["phi"] = nlohmann::json::object();
  std::ostringstream text;
  text << "pi(E8(" << q << ")), characteristic " << qq.s << "^" << qq.t << "\n";
  for (unsigned d : e8v::kE8CyclotomicIndices) {
    const Nat value = e8v::phi_value(d, q);
    const auto f = e8v::factor(value, &cache, d);
    j["phi"][std::to_string(d)] = factorization_json(f);
    text << "  Phi_" << d << "(q) = " << value << " = " << f.to_string() << "\n";
  }
  const auto pi = e8v::pi_e8(qq, &cache);
  j["primes"] = nlohmann::json::array();
  text << "primes (" << pi.size() << "):";
  for (const Nat& p : pi) {
    j["primes"].push_back(p.str());
    text << " " << p;
  }
  text << "\n";
  cache.save_if_dirty();
  emit(opt, j, text.str());
  return 0;
}

int cmd_spectrum(const Options& opt, const std::string& q_text) {
  const Nat q = parse_nat(q_text);
  e8v::FactorCache cache = e8v::FactorCache::load(resolve_cache_path(opt));
  const auto qq = require_prime_power(q, &cache);
  const auto nu = e8v::nu_e8(qq, load_pphi(opt));
  const auto mu = e8v::mu_e8(qq, load_pphi(opt));

  nlohmann::json j;
  j["q"] = q.str();
  j["entries"] = nlohmann::json::array();
  std::ostringstream text;
  text << "nu(E8(" << q << ")): " << nu.size() << " entries\n";
  for (const auto& e : nu) {
    j["entries"].push_back(
        {{"family", e.family}, {"expr", e.expr}, {"value", e.value.str()}});
    text << "  (" << e.family << ") " << e.expr << " = " << e.value << "\n";
  }
  j["maximal"] = nlohmann::json::array();
  text << "divisibility-maximal (" << mu.size() << "):\n";
  for (const Nat& m : mu) {
    j["maximal"].push_back(m.str());
    text << "  " << m << "\n";
  }
  emit(opt, j, text.str());
  return 0;
}

int cmd_member(const Options& opt, const std::string& q_text, const std::string& m_text) {
  const Nat q = parse_nat(q_text);
  const Nat m = parse_nat(m_text);
  e8v::FactorCache cache = e8v::FactorCache::load(resolve_cache_path(opt));
  const auto qq = require_prime_power(q, &cache);
  const bool member = e8v::in_spectrum(qq, m, load_pphi(opt));
  nlohmann::json j{{"q", q.str()}, {"m", m.str()}, {"in_spectrum", member}};
  std::ostringstream text;
  text << m << (member ? " divides an element order of E8(" : " is not in the spectrum of E8(")
       << q << ")\n";
  emit(opt, j, text.str());
  return 0;
}

int cmd_gk(const Options& opt, const std::string& q_text, bool adjacency) {
  const Nat q = parse_nat(q_text);
  e8v::FactorCache cache = e8v::FactorCache::load(resolve_cache_path(opt));
  const auto qq = require_prime_power(q, &cache);
  const auto graph = e8v::gk_e8(qq, load_pphi(opt), &cache);
  cache.save_if_dirty();

  nlohmann::json j;
  j["q"] = q.str();
  j["vertices"] = nlohmann::json::array();
  for (const Nat& v : graph.vertices) j["vertices"].push_back(v.str());
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : graph.edges) j["edges"].push_back({a.str(), b.str()});
  j["components"] = nlohmann::json::array();
  for (const auto& comp : graph.components) {
    nlohmann::json c = nlohmann::json::array();
    for (const Nat& v : comp) c.push_back(v.str());
    j["components"].push_back(std::move(c));
  }

  std::ostringstream text;
  text << "GK(E8(" << q << ")): " << graph.vertices.size() << " vertices, "
       << graph.edges.size() << " edges, components: " << graph.component_count()
       << "\n";
  for (const auto& comp : graph.components) {
    text << "  {";
    for (std::size_t i = 0; i < comp.size(); ++i)
      text << (i ? ", " : " ") << comp[i];
    text << " }\n";
  }
  if (adjacency) {
    std::map<Nat, std::vector<Nat>> adj;
    for (const auto& [a, b] : graph.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (const Nat& v : graph.vertices) {
      text << v << ":";
      for (const Nat& w : adj[v]) text << " " << w;
      text << "\n";
    }
  }
  emit(opt, j, text.str());
  return 0;
}

int cmd_lemma5(const Options& opt, const std::string& p_text, const std::string& q_text) {
  const Nat p = parse_nat(p_text);
  const Nat q = parse_nat(q_text);
  const auto result = e8v::lemma5_check(p, q, load_pphi(opt));
  nlohmann::json j{{"p", p.str()},
                   {"q", q.str()},
                   {"witness", result.witness.str()},
                   {"excluded", result.excluded}};
  std::ostringstream text;
  text << "T = (q^2+1)(q^6-1) = " << result.witness << "\n";
  if (result.excluded) {
    text << "excluded: T is not in the spectrum of E8(" << p << ")\n";
  } else {
    text << "FINDING: T lies in the spectrum of E8(" << p
         << "); the exclusion argument fails for this pair\n";
  }
  emit(opt, j, text.str());
  return 0;
}

int cmd_verify(const Options& opt, e8v::u64 bound, bool slow, bool resume,
               const std::string& report_path) {
  if (slow) bound = 10000;
  if (bound > 2000 && !slow) {
    throw CLI::ValidationError(
        "--bound above 2000 can run for a long time; pass --slow to confirm");
  }
  const std::string cache_path = resolve_cache_path(opt);
  if (resume && !std::filesystem::exists(cache_path))
    throw CLI::ValidationError("--resume requires an existing cache at " + cache_path);
  e8v::FactorCache cache = e8v::FactorCache::load(cache_path);
  const auto classes = parse_classes(opt.classes);

  // Periodic flush so long sweeps survive interruption.
  std::atomic<bool> done{false};
  std::thread flusher([&] {
    int ticks = 0;
    while (!done.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      if (++ticks % 150 == 0) cache.save_if_dirty();
    }
  });

  e8v::Report report;
  try {
    report = e8v::run(bound, std::max(1u, opt.jobs), cache, classes);
  } catch (...) {
    done.store(true);
    flusher.join();
    cache.save_if_dirty();
    throw;
  }
  done.store(true);
  flusher.join();
  cache.save_if_dirty();

  std::ostringstream text;
  text << "verified " << report.prime_count << " candidate primes below " << bound
       << " against " << report.prime_power_count << " prime powers\n";
  text << "exceptional (" << report.exceptional.size() << "):";
  for (const Nat& r : report.exceptional) text << " " << r;
  text << "\ntotal " << report.total_ms / 1000.0 << " s, cache "
       << report.cache_stats.entries << " entries\n";
  if (opt.verbose) {
    for (const auto& rec : report.records) {
      if (rec.valid) continue;
      text << "  r = " << rec.r << " fails via "
           << (rec.witness == e8v::VerificationRecord::Witness::kJ4
                   ? std::string("pi(J4)")
                   : "theta = " + rec.witness_theta.str())
           << "\n";
    }
  }

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error("cannot write report: " + report_path);
    if (opt.format == "csv")
      e8v::write_csv(out, report);
    else
      out << e8v::to_json(report).dump(2) << "\n";
  }
  if (opt.format == "csv")
    e8v::write_csv(std::cout, report);
  else
    emit(opt, e8v::to_json(report), text.str());
  return 0;
}

int cmd_cache(const Options& opt, const std::string& action) {
  const std::string path = resolve_cache_path(opt);
  e8v::FactorCache cache = e8v::FactorCache::load(path);
  const auto stats = cache.stats();
  if (action == "stats") {
    nlohmann::json j{{"path", path},
                     {"entries", stats.entries},
                     {"rejected_on_load", stats.rejected_on_load}};
    std::ostringstream text;
    text << path << ": " << stats.entries << " entries, "
         << stats.rejected_on_load << " rejected on load\n";
    emit(opt, j, text.str());
    return 0;
  }
  // action == "verify"
  const std::size_t bad = cache.verify_all();
  nlohmann::json j{{"path", path},
                   {"entries", stats.entries},
                   {"rejected_on_load", stats.rejected_on_load},
                   {"invalid", bad}};
  std::ostringstream text;
  text << path << ": " << stats.entries << " entries verified, " << bad
       << " invalid, " << stats.rejected_on_load << " rejected on load\n";
  emit(opt, j, text.str());
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime graphs, order spectra and verification sweeps for E8(q)"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--cache", opt.cache_path,
                 "factor cache file (default: $E8V_CACHE or ./factor-cache.json)");
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--jobs", opt.jobs, "worker threads for the verify sweep");
  app.add_option("--classes", opt.classes, "residue classes mod 5, e.g. 0,1,4");
  app.add_option("--pphi-table", opt.pphi_table_path, "p(Phi) override table (JSON)");
  app.add_flag("--verbose", opt.verbose, "more detail in text output");

  std::string arg_n, arg_q, arg_m, arg_p, cache_action = "stats";
  bool adjacency = false, slow = false, resume = false;
  e8v::u64 bound = 500;
  std::string report_path;

  auto* factor_cmd = app.add_subcommand("factor", "factor an integer completely");
  factor_cmd->add_option("n", arg_n, "integer to factor")->required();

  auto* pi_cmd = app.add_subcommand("pi", "prime divisors of |E8(q)| with per-Phi factorizations");
  pi_cmd->add_option("q", arg_q, "prime power")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "the 67-entry order list nu(E8(q))");
  spectrum_cmd->add_option("q", arg_q, "prime power")->required();

  auto* member_cmd = app.add_subcommand("member", "test spectrum membership of m in E8(q)");
  member_cmd->add_option("q", arg_q, "prime power")->required();
  member_cmd->add_option("m", arg_m, "order to test")->required();

  auto* gk_cmd = app.add_subcommand("gk", "Gruenberg-Kegel graph of E8(q)");
  gk_cmd->add_option("q", arg_q, "prime power")->required();
  gk_cmd->add_flag("--adjacency", adjacency, "also print an adjacency list");

  auto* lemma5_cmd = app.add_subcommand("lemma5", "exclusion witness check for p < q");
  lemma5_cmd->add_option("p", arg_p, "prime")->required();
  lemma5_cmd->add_option("q", arg_q, "prime power, q > p")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run the verification sweep");
  verify_cmd->add_option("--bound", bound, "sweep bound (default 500)");
  verify_cmd->add_flag("--slow", slow, "full bound-10000 reproduction");
  verify_cmd->add_flag("--resume", resume, "require and reuse the existing cache");
  verify_cmd->add_option("--report", report_path, "write the full report to a file");

  auto* cache_cmd = app.add_subcommand("cache", "inspect or verify the factor cache");
  cache_cmd->add_option("action", cache_action, "stats or verify")
      ->check(CLI::IsMember({"stats", "verify"}));

  try {
    app.parse(argc, argv);
    if (factor_cmd->parsed()) return cmd_factor(opt, arg_n);
    if (pi_cmd->parsed()) return cmd_pi(opt, arg_q);
    if (spectrum_cmd->parsed()) return cmd_spectrum(opt, arg_q);
    if (member_cmd->parsed()) return cmd_member(opt, arg_q, arg_m);
    if (gk_cmd->parsed()) return cmd_gk(opt, arg_q, adjacency);
    if (lemma5_cmd->parsed()) return cmd_lemma5(opt, arg_p, arg_q);
    if (verify_cmd->parsed()) return cmd_verify(opt, bound, slow, resume, report_path);
    if (cache_cmd->parsed()) return cmd_cache(opt, cache_action);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
