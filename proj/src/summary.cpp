#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "daam/errors.hpp"
#include "daam/experiment.hpp"

namespace daam {
namespace {

CellKey key_of(const TrialRecord& r) {
  return {r.n_students, r.n_colleges, r.generator, r.phi, r.mixture_size, r.capacity_method};
}

std::string describe(const CellKey& k) {
  char buf[160];
  if (k.mixture_size > 0) {
    std::snprintf(buf, sizeof buf, "%zux%zu %s(phi=%.3g,k=%zu) %s", k.n_students, k.n_colleges,
                  k.generator.c_str(), k.phi, k.mixture_size, k.capacity_method.c_str());
  } else {
    std::snprintf(buf, sizeof buf, "%zux%zu %s %s", k.n_students, k.n_colleges,
                  k.generator.c_str(), k.capacity_method.c_str());
  }
  return buf;
}

std::string percent(double v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * v);
  return buf;
}

}  // namespace

SummaryStats summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw MalformedInput("no trial records to summarize");

  struct Acc {
    std::size_t trials = 0, manipulable = 0;
    double college_share = 0.0;
  };
  std::map<std::pair<CellKey, Variant>, Acc> cells;
  std::map<CellKey, std::map<std::size_t, std::map<Variant, const TrialRecord*>>> by_trial;
  for (const TrialRecord& r : records) {
    Acc& acc = cells[{key_of(r), r.variant}];
    ++acc.trials;
    if (r.instance_manipulable) {
      ++acc.manipulable;
      acc.college_share += static_cast<double>(r.n_manipulable) / static_cast<double>(r.n_colleges);
    }
    by_trial[key_of(r)][r.trial][r.variant] = &r;
  }

  SummaryStats stats;
  for (const auto& [key, acc] : cells) {
    CellStats c;
    c.key = key.first;
    c.variant = key.second;
    c.trials = acc.trials;
    c.manipulable = acc.manipulable;
    c.fraction = static_cast<double>(acc.manipulable) / static_cast<double>(acc.trials);
    if (acc.manipulable > 0) {
      c.conditional_college_fraction = acc.college_share / static_cast<double>(acc.manipulable);
    }
    stats.cells.push_back(std::move(c));
  }

  for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
    PooledStats p;
    p.variant = v;
    p.min_fraction = 1.0;
    std::size_t conditional_cells = 0;
    for (const CellStats& c : stats.cells) {
      if (c.variant != v) continue;
      ++p.cells;
      p.min_fraction = std::min(p.min_fraction, c.fraction);
      p.max_fraction = std::max(p.max_fraction, c.fraction);
      p.mean_fraction += c.fraction;
      if (c.manipulable > 0) {
        ++conditional_cells;
        p.mean_conditional_fraction += c.conditional_college_fraction;
      }
    }
    if (p.cells == 0) continue;
    p.mean_fraction /= static_cast<double>(p.cells);
    if (conditional_cells > 0) {
      p.mean_conditional_fraction /= static_cast<double>(conditional_cells);
    }
    stats.pooled.push_back(p);
  }

  for (const auto& [key, trials] : by_trial) {
    VariantDelta d;
    d.key = key;
    long long net = 0;
    for (const auto& [trial, variants] : trials) {
      auto sp = variants.find(Variant::kStudentProposing);
      auto cp = variants.find(Variant::kCollegeProposing);
      if (sp == variants.end() || cp == variants.end()) continue;
      if (sp->second->profile_digest != cp->second->profile_digest) {
        throw MalformedInput("variants of " + describe(key) + " trial " + std::to_string(trial) +
                             " ran on different profiles");
      }
      ++d.pairs;
      const bool a = sp->second->instance_manipulable;
      const bool b = cp->second->instance_manipulable;
      d.only_student_proposing += a && !b;
      d.only_college_proposing += b && !a;
      net += static_cast<long long>(b) - static_cast<long long>(a);
    }
    if (d.pairs == 0) continue;
    d.fraction_delta = static_cast<double>(net) / static_cast<double>(d.pairs);
    stats.deltas.push_back(std::move(d));
  }
  return stats;
}

std::string format_summary(const SummaryStats& stats) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-40s %-17s %7s %10s %14s\n", "cell", "variant", "trials",
                "manip.", "colleges|manip");
  out << line;
  for (const CellStats& c : stats.cells) {
    std::snprintf(line, sizeof line, "%-40s %-17s %7zu %10s %14s\n", describe(c.key).c_str(),
                  to_string(c.variant), c.trials, percent(c.fraction).c_str(),
                  percent(c.conditional_college_fraction).c_str());
    out << line;
  }
  out << '\n';
  for (const PooledStats& p : stats.pooled) {
    std::snprintf(line, sizeof line,
                  "%-17s cells %zu  manipulable min %s mean %s max %s  colleges|manip mean %s\n",
                  to_string(p.variant), p.cells, percent(p.min_fraction).c_str(),
                  percent(p.mean_fraction).c_str(), percent(p.max_fraction).c_str(),
                  percent(p.mean_conditional_fraction).c_str());
    out << line;
  }
  if (!stats.deltas.empty()) {
    out << "\ncollegeProposing - studentProposing on matched profiles\n";
    for (const VariantDelta& d : stats.deltas) {
      std::snprintf(line, sizeof line, "%-40s pairs %5zu  delta %s  (cp only %zu, sp only %zu)\n",
                    describe(d.key).c_str(), d.pairs, percent(d.fraction_delta).c_str(),
                    d.only_college_proposing, d.only_student_proposing);
      out << line;
    }
  }
  return out.str();
}

void write_summary_csv(std::ostream& out, const SummaryStats& stats) {
  out << "nStudents,nColleges,generator,phi,mixtureSize,capacityMethod,variant,trials,"
         "manipulableInstances,manipulableFraction,conditionalCollegeFraction\n";
  for (const CellStats& c : stats.cells) {
    char buf[64];
    out << c.key.n_students << ',' << c.key.n_colleges << ',' << c.key.generator << ',';
    std::snprintf(buf, sizeof buf, "%.6g", c.key.phi);
    out << buf << ',' << c.key.mixture_size << ',' << c.key.capacity_method << ','
        << to_string(c.variant) << ',' << c.trials << ',' << c.manipulable << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", c.fraction, c.conditional_college_fraction);
    out << buf << '\n';
  }
}

}  // namespace daam
