#include "cusplink/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "cusplink/catalog.hpp"
#include "cusplink/hirzebruch.hpp"
#include "cusplink/lutzmori.hpp"
#include "cusplink/monodromy.hpp"
#include "cusplink/solgeom.hpp"

namespace cusplink::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<long> parse_longs(const std::string& text, const char* what) {
  std::vector<long> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      long v = std::stol(item, &pos);
      while (pos < item.size() && item[pos] == ' ') ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      fail("BadInput", std::string("cannot parse ") + what + ": " + text);
    }
  }
  if (vals.empty()) fail("BadInput", std::string("empty ") + what);
  return vals;
}

Triple parse_triple(const std::string& text) {
  auto v = parse_longs(text, "triple");
  if (v.size() != 3) fail("BadInput", "expected p,q,r");
  return Triple::make(v[0], v[1], v[2]);
}

ordered_json report_json(const Report& r) {
  ordered_json j;
  j["check"] = r.check;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["samples"] = r.samples;
  j["max_abs_error"] = format_double(r.max_abs_error);
  j["threshold"] = format_double(r.threshold);
  j["pass"] = r.pass;
  ordered_json details = ordered_json::array();
  for (const auto& [k, v] : r.details) {
    ordered_json d;
    d[k] = v;
    details.push_back(d);
  }
  j["details"] = details;
  return j;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("BadInput", "cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (!key.empty()) kv[key] = val;
  }
  return kv;
}

struct VerifyOptions {
  std::string what;
  std::string cycle = "3";
  std::string pqr;
  long samples = 1000;
  uint64_t seed = 42;
  double h = 1e-5;
  double tol = 0.0;
  bool has_tol = false;
  bool json = false;
};

std::vector<Report> run_verify(const VerifyOptions& opt) {
  BCycle cycle = opt.pqr.empty() ? BCycle::parse(opt.cycle)
                                 : matrix_to_cycle(monodromy_from_pqr(parse_triple(opt.pqr)));
  CuspModel model = build_cusp_model(cycle);
  SamplePlan plan;
  plan.seed = opt.seed;
  plan.n_samples = opt.samples;
  plan.h = opt.h;
  if (opt.has_tol) plan.tol_override = opt.tol;

  std::vector<Report> reports;
  auto append = [&reports](std::vector<Report> rs) {
    for (Report& r : rs) reports.push_back(std::move(r));
  };
  if (opt.what == "sol" || opt.what == "all") append(sol_suite(model.sol, plan));
  if (opt.what == "charts" || opt.what == "all") {
    append(phi_psi_checks(model, plan));
    append(chart_checks(model, plan));
  }
  if (opt.what == "levi" || opt.what == "all") append(levi_checks(model, plan));
  if (opt.what == "pullback" || opt.what == "all") append(link_checks(model, plan));
  if (opt.what == "lutz3" || opt.what == "all") append(lutz3_suite(plan));
  if (opt.what == "lutz5" || opt.what == "all") append(lutz5_suite(model.sol, plan));
  for (Report& r : reports) {
    r.params.insert(r.params.begin(),
                    {std::string("cycle"), cycle.to_string()});
    r.params.emplace_back("seed", std::to_string(opt.seed));
  }
  return reports;
}

ordered_json class_json(const ClassData& c) {
  ordered_json j;
  j["trace"] = c.trace.get_str();
  j["disc_radicand"] = c.disc_radicand.get_str();
  j["cycle"] = c.cycle_fwd.to_string();
  j["cycle_inverse"] = c.cycle_bwd.to_string();
  j["unit"] = c.unit_fwd.to_string();
  j["unit_inverse"] = c.unit_bwd.to_string();
  return j;
}

void print_class_text(const ClassData& c, const std::string& indent, std::ostream& out) {
  out << indent << "trace          " << c.trace.get_str() << "\n";
  out << indent << "disc radicand  " << c.disc_radicand.get_str() << "\n";
  out << indent << "cycle          " << c.cycle_fwd.to_string() << "\n";
  out << indent << "cycle(A^-1)    " << c.cycle_bwd.to_string() << "\n";
  out << indent << "unit           " << c.unit_fwd.to_string() << "\n";
  out << indent << "unit(A^-1)     " << c.unit_bwd.to_string() << "\n";
}

}  // namespace

void emit_reports(const std::vector<Report>& reports, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const Report& r : reports) arr.push_back(report_json(r));
    out << arr.dump(1) << "\n";
    return;
  }
  for (const Report& r : reports) {
    out << (r.pass ? "PASS" : "FAIL") << " " << r.check;
    for (const auto& [k, v] : r.params) out << " " << k << "=" << v;
    out << " samples=" << r.samples << " max_abs_error=" << format_double(r.max_abs_error)
        << " threshold=" << format_double(r.threshold);
    if (r.errored > 0) out << " errored=" << r.errored;
    out << "\n";
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact invariants and certified geometry of cusp-singularity links"};
  app.require_subcommand(1);
  // --h names the fd step, so the help flag stays long-form only.
  app.set_help_flag("--help", "print help");

  std::string pqr_str, cycle_str, matrix_str, range_str = "0,4", k_str, config_path;
  long m_val = 1;
  VerifyOptions vopt;
  bool json_flag = false;

  CLI::App* cmd_monodromy = app.add_subcommand("monodromy", "monodromy matrix of x^p+y^q+z^r+xyz");
  cmd_monodromy->add_option("--pqr", pqr_str, "exponents p,q,r")->required();
  cmd_monodromy->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_mori = app.add_subcommand("mori", "Mori matrix A_{m,k}");
  cmd_mori->add_option("--m", m_val, "number of blocks")->required();
  cmd_mori->add_option("--k", k_str, "twist exponents k1,...,km")->required();
  cmd_mori->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_cycle = app.add_subcommand("cycle", "minus-CF cycle of a hyperbolic matrix");
  cmd_cycle->add_option("--matrix", matrix_str, "entries a,b,c,d")->required();
  cmd_cycle->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_cf = app.add_subcommand("cf", "w_k, p_k, q_k, A_k data of a cycle");
  cmd_cf->add_option("--cycle", cycle_str, "cycle b0,b1,...")->required();
  cmd_cf->add_option("--range", range_str, "index range kmin,kmax");
  cmd_cf->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_unit = app.add_subcommand("unit", "fundamental unit A_r of a cycle");
  cmd_unit->add_option("--cycle", cycle_str, "cycle b0,b1,...")->required();
  cmd_unit->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_euler = app.add_subcommand("euler", "Euler characteristic of the Milnor fiber");
  cmd_euler->add_option("--m", m_val, "pattern index 1..3")->required();
  cmd_euler->add_option("--k", k_str, "twist exponents")->required();
  cmd_euler->add_flag("--json", json_flag, "JSON output");

  CLI::App* cmd_report = app.add_subcommand("report", "cycle/unit report for a triple");
  cmd_report->add_option("--pqr", pqr_str, "exponents p,q,r")->required();
  cmd_report->add_flag("--json", json_flag, "JSON output");

  for (CLI::App* sc : {cmd_monodromy, cmd_mori, cmd_cycle, cmd_cf, cmd_unit, cmd_euler, cmd_report})
    sc->set_help_flag("--help", "print help");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run a certification suite");
  cmd_verify->set_help_flag("--help", "print help");
  cmd_verify->add_option("what", vopt.what, "sol|pullback|charts|levi|lutz3|lutz5|all")
      ->required()
      ->check(CLI::IsMember({"sol", "pullback", "charts", "levi", "lutz3", "lutz5", "all"}));
  CLI::Option* o_cycle = cmd_verify->add_option("--cycle", vopt.cycle, "cycle b0,b1,...");
  CLI::Option* o_pqr = cmd_verify->add_option("--pqr", vopt.pqr, "triple p,q,r");
  CLI::Option* o_samples = cmd_verify->add_option("--samples", vopt.samples, "sample count");
  CLI::Option* o_seed = cmd_verify->add_option("--seed", vopt.seed, "RNG seed");
  CLI::Option* o_tol = cmd_verify->add_option("--tol", vopt.tol, "override all thresholds");
  CLI::Option* o_h = cmd_verify->add_option("--h", vopt.h, "finite-difference step");
  CLI::Option* o_json = cmd_verify->add_flag("--json", vopt.json, "JSON output");
  cmd_verify->add_option("--config", config_path, "key=value file; flags win");

  std::vector<const char*> argv;
  argv.push_back("cusplink");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_monodromy)) {
      Mat2Z a = monodromy_from_pqr(parse_triple(pqr_str));
      if (json_flag) {
        ordered_json j;
        j["matrix"] = a.to_string();
        j["trace"] = a.trace().get_str();
        j["det"] = a.det().get_str();
        out << j.dump() << "\n";
      } else {
        out << a.to_string() << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_mori)) {
      Mat2Z a = mori_matrix(m_val, parse_longs(k_str, "k"));
      if (json_flag) {
        ordered_json j;
        j["matrix"] = a.to_string();
        j["trace"] = a.trace().get_str();
        j["det"] = a.det().get_str();
        out << j.dump() << "\n";
      } else {
        out << a.to_string() << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_cycle)) {
      auto v = parse_longs(matrix_str, "matrix");
      if (v.size() != 4) fail("BadInput", "expected a,b,c,d");
      BCycle c = matrix_to_cycle(Mat2Z(v[0], v[1], v[2], v[3]));
      if (json_flag) {
        ordered_json j;
        j["cycle"] = c.to_string();
        out << j.dump() << "\n";
      } else {
        out << c.to_string() << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_cf)) {
      BCycle c = BCycle::parse(cycle_str);
      auto range = parse_longs(range_str, "range");
      if (range.size() != 2) fail("BadInput", "expected kmin,kmax");
      CFData cf = cf_sequence(c, range[0], range[1]);
      if (json_flag) {
        ordered_json j;
        j["cycle"] = c.to_string();
        j["kmin"] = range[0];
        j["kmax"] = range[1];
        ordered_json w = ordered_json::array();
        for (long k = 0; k < c.size(); ++k) w.push_back(cf.wk(k).to_string());
        j["w"] = w;
        j["unit"] = cf.unit().to_string();
        ordered_json rows = ordered_json::array();
        for (long k = range[0]; k <= range[1]; ++k) {
          ordered_json row;
          row["k"] = k;
          row["p"] = cf.pk(k).get_str();
          row["q"] = cf.qk(k).get_str();
          row["A"] = cf.Ak(k).to_string();
          row["A_decimal"] = cf.Ak(k).to_decimal(12);
          rows.push_back(row);
        }
        j["rows"] = rows;
        out << j.dump(1) << "\n";
      } else {
        out << "cycle " << c.to_string() << "\n";
        for (long k = 0; k < c.size(); ++k)
          out << "w_" << k << " = " << cf.wk(k).to_string() << " = " << cf.wk(k).to_decimal(12)
              << "\n";
        out << "unit A_r = " << cf.unit().to_string() << "\n";
        for (long k = range[0]; k <= range[1]; ++k)
          out << "k=" << k << " p=" << cf.pk(k).get_str() << " q=" << cf.qk(k).get_str()
              << " A=" << cf.Ak(k).to_string() << " (" << cf.Ak(k).to_decimal(12) << ")\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_unit)) {
      BCycle c = BCycle::parse(cycle_str);
      QuadElem u = fundamental_unit(c);
      if (json_flag) {
        ordered_json j;
        j["cycle"] = c.to_string();
        j["unit"] = u.to_string();
        j["norm"] = u.norm().get_str();
        j["decimal"] = u.to_decimal(17);
        out << j.dump() << "\n";
      } else {
        out << "A_r = " << u.to_string() << " = " << u.to_decimal(17) << " (norm "
            << u.norm().get_str() << ")\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_euler)) {
      long chi = euler_characteristic(m_val, parse_longs(k_str, "k"));
      if (json_flag) {
        ordered_json j;
        j["chi"] = chi;
        out << j.dump() << "\n";
      } else {
        out << "chi = " << chi << "\n";
      }
      return 0;
    }
    if (app.got_subcommand(cmd_report)) {
      PqrReport rep = pqr_cycle_report(parse_triple(pqr_str));
      if (json_flag) {
        ordered_json j;
        j["triple"] = rep.triple.to_string();
        j["matrix"] = rep.monodromy.to_string();
        j["class"] = class_json(rep.a_class);
        if (rep.mori_m) {
          ordered_json mj;
          mj["m"] = *rep.mori_m;
          ordered_json kk = ordered_json::array();
          for (long v : rep.mori_k) kk.push_back(v);
          mj["k"] = kk;
          mj["matrix"] = rep.mori->to_string();
          mj["class"] = class_json(*rep.mori_class);
          j["mori"] = mj;
        } else {
          j["mori"] = nullptr;
        }
        ordered_json f = ordered_json::array();
        for (const auto& [k, v] : rep.findings) {
          ordered_json e;
          e[k] = v;
          f.push_back(e);
        }
        j["findings"] = f;
        out << j.dump(1) << "\n";
      } else {
        out << "triple (" << rep.triple.to_string() << ")\n";
        out << "A = " << rep.monodromy.to_string() << "\n";
        print_class_text(rep.a_class, "  ", out);
        if (rep.mori_m) {
          out << "matched A_{" << *rep.mori_m << ",(";
          for (size_t i = 0; i < rep.mori_k.size(); ++i)
            out << (i ? "," : "") << rep.mori_k[i];
          out << ")} = " << rep.mori->to_string() << "\n";
          print_class_text(*rep.mori_class, "  ", out);
          for (const auto& [k, v] : rep.findings) out << "  " << k << ": " << v << "\n";
        }
      }
      return 0;
    }
    if (app.got_subcommand(cmd_verify)) {
      if (!config_path.empty()) {
        auto kv = read_config(config_path);
        auto maybe = [&kv](const CLI::Option* o, const char* key, auto setter) {
          if (o->count() == 0 && kv.count(key)) setter(kv.at(key));
        };
        maybe(o_cycle, "cycle", [&](const std::string& v) { vopt.cycle = v; });
        maybe(o_pqr, "pqr", [&](const std::string& v) { vopt.pqr = v; });
        maybe(o_samples, "samples", [&](const std::string& v) { vopt.samples = std::stol(v); });
        maybe(o_seed, "seed", [&](const std::string& v) { vopt.seed = std::stoull(v); });
        maybe(o_h, "h", [&](const std::string& v) { vopt.h = std::stod(v); });
        maybe(o_tol, "tol", [&](const std::string& v) {
          vopt.tol = std::stod(v);
          vopt.has_tol = true;
        });
        maybe(o_json, "json", [&](const std::string& v) { vopt.json = v == "true" || v == "1"; });
      }
      vopt.has_tol = vopt.has_tol || o_tol->count() > 0;
      std::vector<Report> reports = run_verify(vopt);
      emit_reports(reports, vopt.json ? OutputFormat::json : OutputFormat::text, out);
      for (const Report& r : reports)
        if (!r.pass) return 1;
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: BadInput: " << e.what() << "\n";
    return 2;
  }
  err << "error: BadInput: no subcommand\n";
  return 2;
}

}  // namespace cusplink::cli
