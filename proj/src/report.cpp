#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "riscom/harness.hpp"

namespace riscom {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string num(double v) { return fmt("%.15g", v); }

// RFC 4180: quote fields holding separators, quotes or line breaks
std::string field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string xml_escape(std::string_view s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

}  // namespace

const char* const kResultsHeader =
    "experiment,scheme,sweep_value,seed,rate_relaxed,rate_extracted,gain,feasible,outer_iters,"
    "inner_iters_total,wall_time";

std::pair<double, double> mean_stderr(std::span<const double> x) {
  if (x.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  if (x.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  return {mean, sd / std::sqrt(static_cast<double>(x.size()))};
}

void check_unique(std::span<const SweepRow> rows) {
  std::set<std::tuple<std::string, std::string, double, std::uint64_t>> seen;
  for (const auto& r : rows)
    if (!seen.emplace(r.experiment, r.scheme, r.sweep_value, r.seed).second)
      throw DuplicateKey("duplicate row: " + r.experiment + "/" + r.scheme + " value " + num(r.sweep_value) +
                         " seed " + std::to_string(r.seed));
}

std::vector<SummaryRow> summarize(std::span<const SweepRow> rows) {
  std::map<std::tuple<std::string, std::string, double>, std::vector<const SweepRow*>> groups;
  for (const auto& r : rows) groups[{r.experiment, r.scheme, r.sweep_value}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, g] : groups) {
    SummaryRow s;
    std::tie(s.experiment, s.scheme, s.sweep_value) = key;
    s.n = static_cast<int>(g.size());
    std::vector<double> rr, re, gn;
    int feas = 0;
    for (const auto* r : g) {
      rr.push_back(r->rate_relaxed);
      re.push_back(r->rate_extracted);
      gn.push_back(r->gain);
      feas += r->feasible ? 1 : 0;
    }
    std::tie(s.mean_rate_relaxed, s.stderr_rate_relaxed) = mean_stderr(rr);
    std::tie(s.mean_rate_extracted, s.stderr_rate_extracted) = mean_stderr(re);
    std::tie(s.mean_gain, s.stderr_gain) = mean_stderr(gn);
    s.feasible_fraction = static_cast<double>(feas) / s.n;
    out.push_back(s);
  }
  return out;
}

void write_results_csv(std::span<const SweepRow> rows, std::ostream& out) {
  check_unique(rows);
  out << kResultsHeader << "\n";
  for (const auto& r : rows) {
    out << field(r.experiment) << ',' << field(r.scheme) << ',' << num(r.sweep_value) << ',' << r.seed << ','
        << num(r.rate_relaxed) << ',' << num(r.rate_extracted) << ',' << num(r.gain) << ','
        << (r.feasible ? "true" : "false") << ',' << r.outer_iters << ',' << r.inner_iters_total << ','
        << fmt("%.6f", r.wall_time) << "\n";
  }
}

void write_summary_csv(std::span<const SummaryRow> rows, std::ostream& out) {
  out << "experiment,scheme,sweep_value,n,mean_rate_relaxed,stderr_rate_relaxed,mean_rate_extracted,"
         "stderr_rate_extracted,mean_gain,stderr_gain,feasible_fraction\n";
  for (const auto& s : rows) {
    out << field(s.experiment) << ',' << field(s.scheme) << ',' << num(s.sweep_value) << ',' << s.n << ','
        << num(s.mean_rate_relaxed) << ',' << num(s.stderr_rate_relaxed) << ',' << num(s.mean_rate_extracted)
        << ',' << num(s.stderr_rate_extracted) << ',' << num(s.mean_gain) << ',' << num(s.stderr_gain) << ','
        << num(s.feasible_fraction) << "\n";
  }
}

std::vector<SweepRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) throw IoError("results.csv: unexpected header");
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_record(line);
    if (f.size() != 11) throw IoError("results.csv line " + std::to_string(lineno) + ": expected 11 fields");
    try {
      SweepRow r;
      r.experiment = f[0];
      r.scheme = f[1];
      r.sweep_value = std::stod(f[2]);
      r.seed = std::stoull(f[3]);
      r.rate_relaxed = std::stod(f[4]);
      r.rate_extracted = std::stod(f[5]);
      r.gain = std::stod(f[6]);
      r.feasible = f[7] == "true";
      r.outer_iters = std::stoi(f[8]);
      r.inner_iters_total = std::stoi(f[9]);
      r.wall_time = std::stod(f[10]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw IoError("results.csv line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

std::string svg_chart(std::string_view experiment, std::span<const SummaryRow> rows) {
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double x0 = 1e300, x1 = -1e300, y1 = 0.0;
  for (const auto& s : rows) {
    if (s.experiment != experiment) continue;
    series[s.scheme].emplace_back(s.sweep_value, s.mean_rate_extracted);
    x0 = std::min(x0, s.sweep_value);
    x1 = std::max(x1, s.sweep_value);
    y1 = std::max(y1, s.mean_rate_extracted);
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= 0.0) y1 = 1.0;
  y1 *= 1.1;

  const double W = 640, H = 420, ml = 60, mr = 150, mt = 30, mb = 50;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto py = [&](double y) { return H - mb - y / y1 * (H - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(experiment)
    << "</text>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double yv = y1 * i / 4.0, xv = x0 + (x1 - x0) * i / 4.0;
    o << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"10\">"
      << fmt("%.3g", yv) << "</text>\n";
    o << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
      << fmt("%.4g", xv) << "</text>\n";
  }
  o << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
    << "sweep value</text>\n";
  o << "<text x=\"14\" y=\"" << H / 2 << "\" transform=\"rotate(-90 14 " << H / 2
    << ")\" text-anchor=\"middle\" font-size=\"12\">mean sum rate (bit/s/Hz)</text>\n";
  int idx = 0;
  for (const auto& [name, pts] : series) {
    const char* c = colors[idx % 6];
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) o << fmt("%.2f", px(x)) << ',' << fmt("%.2f", py(y)) << ' ';
    o << "\"/>\n";
    for (const auto& [x, y] : pts)
      o << "<circle cx=\"" << fmt("%.2f", px(x)) << "\" cy=\"" << fmt("%.2f", py(y)) << "\" r=\"3\" fill=\"" << c
        << "\"/>\n";
    const double ly = mt + 20 + 18 * idx;
    o << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 30 << "\" y2=\"" << ly
      << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - mr + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << xml_escape(name)
      << "</text>\n";
    ++idx;
  }
  o << "</svg>\n";
  return o.str();
}

void emit(std::span<const SweepRow> rows, const std::filesystem::path& out_dir) {
  if (rows.empty()) throw IoError("emit: no rows to write to " + out_dir.string());
  check_unique(rows);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open " + p.string() + " for writing");
    return f;
  };
  auto close = [](std::ofstream& f, const std::filesystem::path& p) {
    f.close();
    if (!f) throw IoError("write failed for " + p.string());
  };

  const auto results = out_dir / "results.csv";
  auto f = open(results);
  write_results_csv(rows, f);
  close(f, results);

  const auto summary = summarize(rows);
  const auto spath = out_dir / "summary.csv";
  auto s = open(spath);
  write_summary_csv(summary, s);
  close(s, spath);

  std::set<std::string> experiments;
  for (const auto& r : rows) experiments.insert(r.experiment);
  for (const auto& e : experiments) {
    const auto p = out_dir / (e + ".svg");
    auto g = open(p);
    g << svg_chart(e, summary);
    close(g, p);
  }
}

}  // namespace riscom
