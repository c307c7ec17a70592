#include <fstream>
#include <iomanip>
#include <ostream>

#include "bloofi/bench/experiment.hpp"
#include "bloofi/errors.hpp"

namespace bloofi::bench {

namespace {

constexpr const char* kHeader =
    "num_filters,order,expected_elements,num_elements,fpp,m,k,construction,metric,distribution,"
    "index,heuristic,queries,seed,repetitions,maintenance_ops,after_updates,"
    "search_bf_cost,search_time_ms,storage_bytes,insert_bf_cost,insert_time_ms,"
    "delete_bf_cost,delete_time_ms,update_bf_cost,update_time_ms,matches_per_query";

}  // namespace

void emit_csv(std::span<const MetricsRecord> records, std::ostream& out) {
  out << kHeader << '\n';
  out << std::setprecision(10);
  for (const auto& r : records) {
    const auto& c = r.config;
    out << c.num_filters << ',' << c.order << ',' << c.expected_elements << ',' << c.num_elements
        << ',' << c.fpp << ',' << r.m << ',' << r.k << ',' << to_string(c.construction) << ','
        << to_string(c.metric) << ',' << to_string(c.distribution) << ',' << to_string(r.index)
        << ',' << (c.heuristic ? "on" : "off") << ',' << c.queries << ',' << c.seed << ','
        << c.repetitions << ',' << c.maintenance_ops << ',' << (c.after_updates ? "on" : "off")
        << ',' << r.search_bf_cost << ',' << r.search_time_ms << ',' << r.storage_bytes << ','
        << r.insert_bf_cost << ',' << r.insert_time_ms << ',' << r.delete_bf_cost << ','
        << r.delete_time_ms << ',' << r.update_bf_cost << ',' << r.update_time_ms << ','
        << r.matches_per_query << '\n';
  }
}

void emit_csv(std::span<const MetricsRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  emit_csv(records, out);
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace bloofi::bench
