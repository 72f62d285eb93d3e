#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include "app/config.hpp"
#include "app/results.hpp"
#include "app/runners.hpp"
#include "app/suites.hpp"
#include "app/vtk.hpp"
#include "xsbfem/error.hpp"

namespace fs = std::filesystem;
using namespace xsbfem;
using namespace xsbfem::app;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2, kBenchmark = 3 };

struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  // path, content

  void add(const fs::path& dir, const std::string& name, std::string content) {
    files.emplace_back((dir / name).string(), std::move(content));
  }

  // Everything is rendered before the first write.
  void commit() const {
    for (const auto& [path, content] : files) {
      write_file_atomic(path, content);
      std::cout << "wrote " << path << "\n";
    }
  }
};

void add_tables(Outputs& out, const fs::path& dir, const std::string& name, const ResultTable& t) {
  out.add(dir, name + ".csv", scalar_csv(t));
  for (const ResultSeries& s : t.series) out.add(dir, name + "_" + s.name + ".csv", series_csv(s, t.config_hash));
}

void print_rows(const ResultTable& t) {
  for (const ResultRow& r : t.rows) std::cout << "  " << r.case_name << " " << r.quantity << " = " << format_number(r.value) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cracks at bimaterial interfaces: coupled XFEM / scaled boundary analysis"};
  app.require_subcommand(1);
  std::string output_dir = ".";
  int threads = 1;
  std::optional<double> tolerance_override;
  app.add_option("--output-dir", output_dir, "Directory for output files")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for benchmark suites")->check(CLI::Range(1, 256));
  app.add_option("--tolerance-override", tolerance_override, "Replace every benchmark tolerance (testing)");

  std::string config_path;
  auto* analyze = app.add_subcommand("analyze", "Coupled analysis of one configured problem");
  analyze->add_option("config", config_path, "Configuration file")->required();
  auto* singularity = app.add_subcommand("singularity", "Orders of singularity of a stand-alone domain");
  singularity->add_option("config", config_path, "Configuration file")->required();
  auto* grow = app.add_subcommand("propagate", "Quasi-static crack growth");
  grow->add_option("config", config_path, "Configuration file")->required();

  std::string suite;
  std::string report_path;
  auto* bench = app.add_subcommand("benchmark", "Run a benchmark suite against reference values");
  bench->add_option("suite", suite, "Suite name")->required();
  bench->add_option("--report", report_path, "Write the pass/fail report here");
  app.add_subcommand("suites", "List benchmark suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const fs::path dir(output_dir);
    Outputs out;
    int code = kOk;

    if (app.got_subcommand("suites")) {
      for (const std::string& n : suite_names()) std::cout << n << "\n";
      return kOk;
    }

    if (app.got_subcommand(bench)) {
      if (suite.empty()) throw Error(ErrorKind::Config, "empty suite name");
      SuiteOptions opt;
      opt.threads = threads;
      opt.tolerance_override = tolerance_override;
      const SuiteReport rep = run_suite(suite, opt);
      ResultTable t = rep.table();
      t.config_hash = fnv1a("benchmark:" + suite + ":" + (tolerance_override ? format_number(*tolerance_override) : ""));
      if (!fs::is_directory(dir)) throw Error(ErrorKind::Config, "output directory '" + output_dir + "' does not exist");
      out.add(dir, "benchmark_" + suite + ".csv", scalar_csv(t));
      const std::string text = header_line(t.config_hash) + rep.text();
      if (!report_path.empty()) out.files.emplace_back(report_path, text);
      std::cout << rep.text();
      out.commit();
      code = rep.passed() ? kOk : kBenchmark;
    } else {
      const AnalysisConfig cfg = load_config(config_path);
      if (!fs::is_directory(dir)) throw Error(ErrorKind::Config, "output directory '" + output_dir + "' does not exist");
      std::optional<FieldOutput> field;
      ResultTable t;
      if (app.got_subcommand(analyze)) {
        t = run_analyze(cfg, cfg.vtk ? &field : nullptr);
      } else if (app.got_subcommand(singularity)) {
        t = run_singularity(cfg);
      } else {
        t = run_propagate(cfg, cfg.vtk ? &field : nullptr);
      }
      add_tables(out, dir, cfg.name, t);
      if (field) out.add(dir, cfg.name + ".vtk", vtk_legacy(field->model, field->solution, cfg.hash));
      print_rows(t);
      out.commit();
    }
    std::cout << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? kValidation : kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
