#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "equiloc/builtins.hpp"
#include "equiloc/document.hpp"
#include "equiloc/quantize.hpp"
#include "equiloc/witten.hpp"
#include "json.hpp"

using namespace equiloc;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInputError = 2, kInconsistent = 3 };

struct RunConfig {
  std::string builtin;
  std::string input;
  std::string m_spec;
  std::string format = "text";
  std::uint64_t seed = 20240611;
  double abs_tol = 1e-10;
  double max_exponent = -3.0;
  std::string out_dir;
};

std::vector<long> parse_m_list(const std::string& spec) {
  std::vector<long> out;
  std::stringstream ss(spec);
  std::string item;
  auto to_long = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (...) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw InputError("bad value '" + s + "' in --m");
    if (v < 0) throw InputError("--m values must be >= 0");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_long(item));
    } else {
      long a = to_long(item.substr(0, dots)), b = to_long(item.substr(dots + 2));
      if (b < a) throw InputError("empty range '" + item + "' in --m");
      for (long m = a; m <= b; ++m) out.push_back(m);
    }
  }
  if (out.empty()) throw InputError("--m is empty");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Loaded {
  ManifoldPresentation p;
  const Builtin* builtin = nullptr;
};

std::vector<Loaded> load(const RunConfig& cfg, bool allow_all) {
  if (cfg.builtin.empty() == cfg.input.empty())
    throw InputError("exactly one of --builtin or --input is required");
  std::vector<Loaded> out;
  if (!cfg.input.empty()) {
    out.push_back({parse_document(read_file(cfg.input)), nullptr});
  } else if (cfg.builtin == "all" && allow_all) {
    for (const auto& b : builtins()) out.push_back({b.build(), &b});
  } else {
    const Builtin& b = find_builtin(cfg.builtin);
    out.push_back({b.build(), &b});
  }
  return out;
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json rational_json(const Rational& q) { return to_string(q); }

std::string laurent_text(const LaurentPolynomial& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p) {
    bool neg = sgn(c) < 0;
    Rational mag = neg ? Rational(-c) : c;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string zpart = e == 0 ? "" : (e == 1 ? "z" : "z^" + std::to_string(e));
    if (zpart.empty())
      out += to_string(mag);
    else if (mag == 1)
      out += zpart;
    else
      out += to_string(mag) + "*" + zpart;
  }
  return out;
}

json laurent_json(const LaurentPolynomial& p) {
  json j = json::object();
  for (const auto& [e, c] : p) j[std::to_string(e)] = is_integer(c) ? integer_json(c.get_num()) : rational_json(c);
  return j;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_rr(const RunConfig& cfg) {
  auto ms = parse_m_list(cfg.m_spec.empty() ? "1" : cfg.m_spec);
  const auto L = load(cfg, false).front();
  json arr = json::array();
  std::string text;
  for (long m : ms) {
    Integer inv = rr_invariant(L.p, m), tot = rr_total(L.p, m);
    arr.push_back({{"m", m}, {"rr_invariant", integer_json(inv)}, {"rr_total", integer_json(tot)}});
    text += "m=" + std::to_string(m) + " rr_invariant=" + to_string(inv) + " rr_total=" + to_string(tot) + "\n";
  }
  emit(cfg, arr, text);
  return kOk;
}

int cmd_character(const RunConfig& cfg) {
  auto ms = parse_m_list(cfg.m_spec.empty() ? "1" : cfg.m_spec);
  const auto L = load(cfg, false).front();
  json arr = json::array();
  std::string text;
  for (long m : ms) {
    auto chi = character(L.p, m);
    arr.push_back({{"m", m}, {"character", laurent_json(chi)}});
    text += (ms.size() > 1 ? "m=" + std::to_string(m) + " " : "") + laurent_text(chi) + "\n";
  }
  emit(cfg, arr, text);
  return kOk;
}

json report_json(const MainFormulaReport& r) {
  json res = json::array();
  for (const auto& e : r.residues)
    res.push_back({{"component", e.component},
                   {"classification", to_string(e.classification)},
                   {"prescription", prescription(e.classification)},
                   {"value", rational_json(e.value)}});
  json exc = json::array();
  for (const auto& e : r.exceptional) exc.push_back({{"component", e.component}, {"value", rational_json(e.value)}});
  json j = {{"m", r.m},
            {"rr_invariant", integer_json(r.rr_invariant)},
            {"residue_terms", res},
            {"exceptional_terms", exc},
            {"regular_term",
             {{"value", rational_json(r.regular.value)},
              {"tag", to_string(r.regular.tag)},
              {"source", r.regular.source}}}};
  if (r.balance) j["balance"] = *r.balance;
  return j;
}

int cmd_main_formula(const RunConfig& cfg) {
  auto ms = parse_m_list(cfg.m_spec.empty() ? "1" : cfg.m_spec);
  const auto L = load(cfg, false).front();
  json arr = json::array();
  std::string text;
  bool ok = true;
  for (long m : ms) {
    auto r = main_formula_report(L.p, m);
    arr.push_back(report_json(r));
    if (r.balance && !*r.balance) ok = false;
    text += "m=" + std::to_string(m) + " rr_invariant=" + to_string(r.rr_invariant) +
            " residues=" + to_string(r.residue_sum()) + " exceptional=" + to_string(r.exceptional_sum()) +
            " regular=" + to_string(r.regular.value) + " (" + to_string(r.regular.tag) + ")";
    if (r.balance) text += std::string(" balance=") + (*r.balance ? "true" : "false");
    text += "\n";
  }
  emit(cfg, arr, text);
  return ok ? kOk : kVerifyFailed;
}

int cmd_witten_check(const RunConfig& cfg) {
  auto ms = parse_m_list(cfg.m_spec.empty() ? "8,16,32,64" : cfg.m_spec);
  const auto L = load(cfg, false).front();
  WittenOptions opts;
  opts.abs_tol = cfg.abs_tol;
  auto r = decay_check(L.p, default_bump(), ms, {}, opts);
  json lhs = json::array(), rhs = json::array(), dev = json::array();
  std::ostringstream text;
  text.precision(12);
  for (std::size_t i = 0; i < r.m.size(); ++i) {
    lhs.push_back(complex_json(r.lhs[i]));
    rhs.push_back(complex_json(r.rhs[i]));
    dev.push_back(r.deviation[i]);
    text << "m=" << r.m[i] << " lhs=" << r.lhs[i] << " rhs=" << r.rhs[i] << " deviation=" << r.deviation[i] << "\n";
  }
  const bool pass = r.exponent <= cfg.max_exponent;
  text << "exponent=" << r.exponent << " floor=" << r.floor << (pass ? " PASS" : " FAIL") << "\n";
  json j = {{"m", r.m}, {"lhs", lhs},      {"rhs", rhs},  {"deviation", dev},
            {"floor", r.floor}, {"exponent", r.exponent}, {"pass", pass}};
  emit(cfg, j, text.str());
  return pass ? kOk : kVerifyFailed;
}

struct CheckLog {
  json items = json::array();
  std::string text;
  bool ok = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    ok = ok && pass;
    items.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
    text += std::string(pass ? "PASS " : "FAIL ") + name + (detail.empty() ? "" : ": " + detail) + "\n";
  }

  template <class F>
  void run(const std::string& name, F&& f) {
    try {
      std::string detail;
      bool pass = f(detail);
      add(name, pass, detail);
    } catch (const NotAPolynomial& e) {
      add(name, false, std::string("pole cancellation failed: ") + e.what());
    } catch (const Error& e) {
      add(name, false, e.what());
    }
  }
};

void verify_one(const Loaded& L, std::mt19937_64& rng, CheckLog& log) {
  const ManifoldPresentation& p = L.p;
  const std::string tag = p.name + ": ";
  log.run(tag + "validate", [&](std::string& d) {
    auto diags = validate(p);
    for (const auto& x : diags) d += x.code + " ";
    return diags.empty();
  });
  log.run(tag + "pole_cancellation", [&](std::string&) {
    for (long m = 0; m <= 8; ++m) character(p, m);
    return true;
  });
  if (L.builtin) {
    log.run(tag + "oracle", [&](std::string& d) {
      for (long m = 0; m <= 8; ++m) {
        auto want = to_laurent(L.builtin->oracle(m));
        auto got = character(p, m);
        if (got != want) {
          d = "m=" + std::to_string(m) + " got " + laurent_text(got) + " want " + laurent_text(want);
          return false;
        }
      }
      return true;
    });
  }
  log.run(tag + "weight_support", [&](std::string& d) {
    long lo = p.moment(0), hi = p.moment(0);
    for (std::size_t i = 0; i < p.components.size(); ++i) {
      lo = std::min(lo, p.moment(i));
      hi = std::max(hi, p.moment(i));
    }
    for (long m = 0; m <= 8; ++m)
      for (const auto& [e, c] : character(p, m))
        if (e < m * lo || e > m * hi) {
          d = "weight " + std::to_string(e) + " outside the moment image at m=" + std::to_string(m);
          return false;
        }
    return true;
  });
  log.run(tag + "kirillov", [&](std::string& d) {
    double worst = 0.0;
    for (long m = 1; m <= 4; ++m) worst = std::max(worst, kirillov_check(p, m, {0.05, 0.1, 0.2}));
    std::ostringstream os;
    os << "max deviation " << std::scientific << std::setprecision(2) << worst;
    d = os.str();
    return worst < 1e-8;
  });
  log.run(tag + "main_formula_balance", [&](std::string& d) {
    for (long m = 0; m <= 8; ++m) {
      auto r = main_formula_report(p, m);
      if (r.balance && !*r.balance) {
        d = "imbalance at m=" + std::to_string(m);
        return false;
      }
    }
    return true;
  });
  if (p.free_on_regular) {
    log.run(tag + "polynomiality", [&](std::string& d) {
      auto fit = polynomiality_check(p, 1, 10);
      if (!fit.exact()) d = "nonzero residual";
      return fit.exact();
    });
  }
  std::uniform_int_distribution<int> shift_dist(-3, 3), power_dist(2, 3), m_dist(0, 4);
  log.run(tag + "random_moment_shift", [&](std::string& d) {
    for (int t = 0; t < 3; ++t) {
      int s = shift_dist(rng);
      long m = m_dist(rng);
      auto shifted = with_moment_shift(p, s);
      LaurentPolynomial want;
      for (const auto& [e, c] : character(p, m)) want[e + static_cast<int>(m * s)] = c;
      if (character(shifted, m) != want) {
        d = "shift " + std::to_string(s) + " m=" + std::to_string(m);
        return false;
      }
    }
    return true;
  });
  log.run(tag + "random_bundle_power", [&](std::string& d) {
    for (int t = 0; t < 2; ++t) {
      int k = power_dist(rng);
      long m = m_dist(rng);
      if (rr_invariant(bundle_power(p, k), m) != rr_invariant(p, k * m)) {
        d = "power " + std::to_string(k) + " m=" + std::to_string(m);
        return false;
      }
    }
    return true;
  });
  if (p.dim > 0) {
    log.run(tag + "volume_free_cancellation", [&](std::string& d) {
      auto s = localized_series(p, constant_class(p, 1), 0, 4);
      for (const auto& c : s)
        if (sgn(c) != 0) d = "nonzero coefficient";
      return d.empty();
    });
  }
}

int cmd_verify(const RunConfig& cfg) {
  auto all = load(cfg, true);
  std::mt19937_64 rng(cfg.seed);
  CheckLog log;
  for (const auto& L : all) verify_one(L, rng, log);
  json j = {{"seed", cfg.seed}, {"checks", log.items}, {"pass", log.ok}};
  emit(cfg, j, log.text + (log.ok ? "verify: all checks passed\n" : "verify: FAILED\n"));
  return log.ok ? kOk : kVerifyFailed;
}

int cmd_export(const RunConfig& cfg) {
  auto all = load(cfg, true);
  for (const auto& L : all) {
    std::string doc = serialize_document(L.p);
    if (cfg.out_dir.empty()) {
      std::cout << doc;
    } else {
      std::filesystem::create_directories(cfg.out_dir);
      std::ofstream(std::filesystem::path(cfg.out_dir) / (L.p.name + ".json")) << doc;
    }
  }
  return kOk;
}

int cmd_list(const RunConfig& cfg) {
  json arr = json::array();
  std::string text;
  for (const auto& b : builtins()) {
    arr.push_back({{"name", b.name}, {"description", b.description}});
    text += b.name + "  " + b.description + "\n";
  }
  emit(cfg, arr, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant Riemann-Roch numbers from fixed-point data"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto add_common = [&](CLI::App* sub, bool with_m) {
    sub->add_option("--builtin", cfg.builtin, "builtin presentation (see list)");
    sub->add_option("--input", cfg.input, "presentation document");
    if (with_m) sub->add_option("--m", cfg.m_spec, "powers of L: 5, 1,2,3 or 0..8");
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> commands;
  auto* rr = app.add_subcommand("rr", "invariant and total Riemann-Roch numbers");
  add_common(rr, true);
  commands.emplace_back(rr, cmd_rr);
  auto* ch = app.add_subcommand("character", "character as a Laurent polynomial");
  add_common(ch, true);
  commands.emplace_back(ch, cmd_character);
  auto* mf = app.add_subcommand("main-formula", "term-by-term main formula report");
  add_common(mf, true);
  commands.emplace_back(mf, cmd_main_formula);
  auto* wc = app.add_subcommand("witten-check", "Witten integral against its asymptotic expansion");
  add_common(wc, true);
  wc->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
  wc->add_option("--max-exponent", cfg.max_exponent, "largest accepted decay exponent");
  commands.emplace_back(wc, cmd_witten_check);
  auto* vf = app.add_subcommand("verify", "run the invariant suite (--builtin all for every builtin)");
  add_common(vf, false);
  vf->add_option("--seed", cfg.seed, "seed for randomized checks");
  commands.emplace_back(vf, cmd_verify);
  auto* ex = app.add_subcommand("export", "write presentation documents");
  add_common(ex, false);
  ex->add_option("--out", cfg.out_dir, "directory for <name>.json files");
  commands.emplace_back(ex, cmd_export);
  auto* ls = app.add_subcommand("list", "list builtins");
  ls->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  commands.emplace_back(ls, cmd_list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    for (const auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(cfg);
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid presentation\n";
    for (const auto& d : e.diagnostics) std::cerr << "  " << d.code << " at " << d.where << ": " << d.message << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NotAPolynomial& e) {
    std::cerr << "error: fixed-point data is inconsistent: " << e.what() << "\n";
    return kInconsistent;
  } catch (const CancellationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconsistent;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
