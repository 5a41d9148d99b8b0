// crepanto: command-line front end.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "crepanto/report.hpp"

using namespace crepanto;

namespace {

std::pair<long, long> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
  std::size_t used = 0;
  long a = std::stol(s.substr(0, dots), &used);
  if (used != dots) throw std::invalid_argument("malformed range: " + s);
  std::string rest = s.substr(dots + 2);
  long b = std::stol(rest, &used);
  if (used != rest.size()) throw std::invalid_argument("malformed range: " + s);
  return {a, b};
}

std::vector<long> parse_twists(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long x = std::stol(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed twists: " + s);
    out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("missing twists");
  return out;
}

long parse_long(const std::string& s) {
  std::size_t used = 0;
  long x = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument("malformed integer: " + s);
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crepant resolutions of Gorenstein cyclic quotient singularities"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  bool as_plain = false;
  auto* json_flag = app.add_flag("--json", "JSON output (default)");
  app.add_flag("--plain", as_plain, "key: value output")->excludes(json_flag);

  std::string l_arg, w_arg, scan_arg, mode_arg = "speedy", check_path, twist_arg;

  auto type_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("l", l_arg, "group order")->required();
    c->add_option("weights", w_arg, "comma-separated weights")->required();
    return c;
  };
  auto* analyze = type_cmd("analyze", "flags, junior points, criterion and cohomology");
  auto* hilbert = type_cmd("hilbert", "Hilbert basis of the orthant");
  auto* criterion = type_cmd("criterion", "necessary criterion for a basic crepant triangulation");
  auto* cohomology = type_cmd("cohomology", "cohomology dimensions of a crepant resolution");

  auto* series = app.add_subcommand("resolve-series", "resolution report for 1/l(1,...,1,l-(r-1))");
  std::vector<std::string> series_args;
  series->add_option("args", series_args, "<l> <r>, or <r> with --scan")->expected(1, 2)->required();
  series->add_option("--scan", scan_arg, "l range a..b");

  auto* fact = app.add_subcommand("factorize", "blow-up factorization of the series resolution");
  std::string fl, fr;
  fact->add_option("l", fl)->required();
  fact->add_option("r", fr)->required();
  fact->add_option("--mode", mode_arg, "speedy or stepwise")->check(CLI::IsMember({"speedy", "stepwise"}));

  auto* bundle = app.add_subcommand("bundle", "invariants of Y(r; lambda_1, ..., lambda_k)");
  std::string br;
  bundle->add_option("r", br)->required();
  bundle->add_option("twists", twist_arg, "comma-separated twists")->required();

  auto* tri = app.add_subcommand("triangulate", "check a triangulation file");
  tri->add_option("--check", check_path, "JSON file with l, weights, simplices")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Json report;
  try {
    if (analyze->parsed()) {
      auto t = parse_type(l_arg, w_arg);
      report = make_report("analyze", Json{{"type", t.to_string()}}, analyze_report(t));
    } else if (hilbert->parsed()) {
      auto t = parse_type(l_arg, w_arg);
      report = make_report("hilbert", Json{{"type", t.to_string()}}, hilbert_report(t));
    } else if (criterion->parsed()) {
      auto t = parse_type(l_arg, w_arg);
      report = make_report("criterion", Json{{"type", t.to_string()}}, criterion_report(t));
    } else if (cohomology->parsed()) {
      auto t = parse_type(l_arg, w_arg);
      report = make_report("cohomology", Json{{"type", t.to_string()}}, cohomology_report(t));
    } else if (series->parsed()) {
      if (!scan_arg.empty()) {
        if (series_args.size() != 1) throw std::invalid_argument("--scan takes a single <r>");
        long r = parse_long(series_args[0]);
        auto [a, b] = parse_range(scan_arg);
        unsigned threads = std::max(1U, std::thread::hardware_concurrency());
        report = make_report("resolve-series", Json{{"scan", scan_arg}, {"r", series_args[0]}},
                             series_scan_report(a, b, r, threads));
      } else {
        if (series_args.size() != 2) throw std::invalid_argument("resolve-series needs <l> <r>");
        SeriesType t(parse_long(series_args[0]), parse_long(series_args[1]));
        report = make_report("resolve-series", Json{{"l", series_args[0]}, {"r", series_args[1]}}, series_report(t));
      }
    } else if (fact->parsed()) {
      SeriesType t(parse_long(fl), parse_long(fr));
      auto mode = mode_arg == "speedy" ? FactorMode::Speedy : FactorMode::Stepwise;
      report = make_report("factorize", Json{{"l", fl}, {"r", fr}, {"mode", mode_arg}}, factorization_report(t, mode));
    } else if (bundle->parsed()) {
      long r = parse_long(br);
      report = make_report("bundle", Json{{"r", br}, {"twists", twist_arg}}, bundle_report(r, parse_twists(twist_arg)));
    } else if (tri->parsed()) {
      std::ifstream in(check_path);
      if (!in) throw std::invalid_argument("cannot open " + check_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
      }
      report = make_report("triangulate", Json{{"check", check_path}},
                           triangulation_check_report(triangulation_from_json(j)));
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: number out of range\n";
    return 2;
  }

  if (as_plain)
    std::cout << render_plain(report);
  else
    std::cout << report.dump(2) << "\n";
  return 0;
}
