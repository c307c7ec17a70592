// bloofi-bench: runs the Bloofi / Flat-Bloofi / naive comparison over a grid
// of experiment settings and writes one CSV row per (setting, index).
//
// List-valued flags take comma-separated values; the grid is their cartesian
// product, e.g.
//
//   bloofi-bench --num-filters 100,1000,10000 --index all --output n.csv

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bloofi/bench/experiment.hpp"
#include "bloofi/errors.hpp"
#include "bloofi/filter_io.hpp"

namespace {

using bloofi::Metric;
using namespace bloofi::bench;

template <typename T, typename Parse>
std::vector<T> parse_all(const std::vector<std::string>& names, Parse parse, const char* flag) {
  std::vector<T> out;
  for (const auto& name : names) {
    auto v = parse(name);
    if (!v) throw bloofi::ParameterError(std::string("invalid value '") + name + "' for " + flag);
    out.push_back(*v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloom filter index benchmark (Bloofi, Flat-Bloofi, naive scan)"};

  std::vector<std::size_t> num_filters{1000};
  std::vector<std::size_t> orders{2};
  std::vector<std::uint64_t> expected{10000};
  std::vector<std::size_t> elements{100};
  std::vector<double> fpps{0.01};
  std::vector<std::string> construction_names{"iterative"};
  std::vector<std::string> metric_names{"hamming"};
  std::vector<std::string> distribution_names{"nonrandom"};
  std::string index_name = "all";
  std::vector<std::string> heuristics{"on"};
  std::vector<std::string> after_updates{"off"};
  ExperimentConfig base;
  std::string output;
  std::string load;
  std::string save;

  app.add_option("--num-filters", num_filters, "Number of Bloom filters N")->delimiter(',');
  app.add_option("--order", orders, "Bloofi order d (>= 2)")->delimiter(',');
  app.add_option("--expected-elements", expected, "Expected elements per filter (sizes m)")
      ->delimiter(',');
  app.add_option("--num-elements", elements, "Actual elements per filter n")->delimiter(',');
  app.add_option("--fpp", fpps, "Target false positive probability")->delimiter(',');
  app.add_option("--construction", construction_names, "iterative|bulk")
      ->delimiter(',')
      ->check(CLI::IsMember({"iterative", "bulk"}));
  app.add_option("--metric", metric_names, "hamming|jaccard|cosine")
      ->delimiter(',')
      ->check(CLI::IsMember({"hamming", "jaccard", "cosine"}));
  app.add_option("--distribution", distribution_names, "nonrandom|random")
      ->delimiter(',')
      ->check(CLI::IsMember({"nonrandom", "random"}));
  app.add_option("--index", index_name, "bloofi|flat|naive|all")
      ->check(CLI::IsMember({"bloofi", "flat", "naive", "all"}));
  app.add_option("--heuristic", heuristics, "No-split-all-ones heuristic: on|off")
      ->delimiter(',')
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--after-updates", after_updates,
                 "Build from half the elements and update in place: on|off")
      ->delimiter(',')
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--queries", base.queries, "Searches per measurement");
  app.add_option("--seed", base.seed, "PRNG seed");
  app.add_option("--repetitions", base.repetitions, "Timed repetitions (mean over last half)");
  app.add_option("--maintenance-ops", base.maintenance_ops,
                 "Filters deleted/re-inserted/updated per repetition (0 to skip)");
  app.add_option("--output", output, "CSV output path (default: stdout)");
  app.add_option("--load", load, "Index a saved filter collection instead of generating one");
  app.add_option("--save", save, "Write the generated filter population to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto constructions =
        parse_all<Construction>(construction_names, parse_construction, "--construction");
    const auto metrics = parse_all<Metric>(metric_names, bloofi::parse_metric, "--metric");
    const auto distributions =
        parse_all<Distribution>(distribution_names, parse_distribution, "--distribution");
    const auto index = *parse_index_kind(index_name);

    std::vector<ExperimentConfig> grid;
    for (auto n : num_filters)
      for (auto d : orders)
        for (auto ne : expected)
          for (auto el : elements)
            for (auto p : fpps)
              for (auto c : constructions)
                for (auto mt : metrics)
                  for (auto dist : distributions)
                    for (const auto& h : heuristics)
                      for (const auto& au : after_updates) {
                        auto cfg = base;
                        cfg.num_filters = n;
                        cfg.order = d;
                        cfg.expected_elements = ne;
                        cfg.num_elements = el;
                        cfg.fpp = p;
                        cfg.construction = c;
                        cfg.metric = mt;
                        cfg.distribution = dist;
                        cfg.index = index;
                        cfg.heuristic = h == "on";
                        cfg.after_updates = au == "on";
                        cfg.validate();
                        grid.push_back(cfg);
                      }

    std::optional<bloofi::FilterCollection> loaded;
    if (!load.empty()) loaded = bloofi::read_collection(load);

    if (!save.empty()) {
      if (loaded) throw bloofi::ParameterError("--save and --load are mutually exclusive");
      const auto population = generate_population(grid.front());
      const auto filters = population.filters();
      bloofi::write_collection(save, *population.family, filters);
    }

    std::vector<MetricsRecord> records;
    for (const auto& cfg : grid) {
      auto batch = loaded ? run_experiment(cfg, *loaded) : run_experiment(cfg);
      records.insert(records.end(), batch.begin(), batch.end());
    }

    if (output.empty()) {
      emit_csv(records, std::cout);
    } else {
      emit_csv(records, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "bloofi-bench: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
